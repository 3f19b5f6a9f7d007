#include <geomlab/spinor.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace geomlab;
using namespace geomlab::spinor;

TEST_CASE("gamma operators satisfy the Clifford relations exactly") {
  for (int ell = 1; ell <= 4; ++ell) {
    auto rep = build_gamma(ell);
    REQUIRE(clifford_relation_residual(rep) < 1e-12);
  }
  REQUIRE_THROWS_AS(build_gamma(0), std::invalid_argument);
  REQUIRE_THROWS_AS(build_gamma(7), std::invalid_argument);
}

TEST_CASE("the representation is irreducible") {
  for (int ell = 2; ell <= 4; ++ell) REQUIRE(commutant_dimension(build_gamma(ell)) == 1);
}

TEST_CASE("the standard structure has the standard vacuum") {
  auto rep = build_gamma(3);
  VecC psi = vacuum_from_J(rep, jspace::standard_j(3));
  REQUIRE(std::abs(psi[0] - cplx(1, 0)) < 1e-10);
  REQUIRE(psi.norm() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("vacua of random isometric structures are unique lines") {
  auto rep = build_gamma(3);
  Rng rng(401);
  for (int t = 0; t < 50; ++t) {
    MatR J = jspace::random_isometric(3, (t % 2) ? 1 : -1, rng);
    VecC psi = vacuum_from_J(rep, J);  // throws unless the kernel is a line
    REQUIRE(psi.norm() == Catch::Approx(1.0).margin(1e-10));
    // phase freedom only: two runs give the same projector
    VecC psi2 = vacuum_from_J(rep, J);
    MatC pr1 = psi * psi.adjoint();
    MatC pr2 = psi2 * psi2.adjoint();
    REQUIRE(sup_abs(MatC(pr1 - pr2)) < 1e-10);
  }
}

TEST_CASE("vacuum rejects a non-isometric structure") {
  auto rep = build_gamma(2);
  Rng rng(402);
  REQUIRE_THROWS(vacuum_from_J(rep, jspace::random_any(2, rng)));
}

TEST_CASE("annihilator spaces are totally isotropic; vacua are simple") {
  auto rep = build_gamma(3);
  Rng rng(403);
  for (int t = 0; t < 20; ++t) {
    VecC psi(rep.dim());
    for (int i = 0; i < rep.dim(); ++i) psi[i] = gaussc(rng);
    auto ann = annihilator(rep, psi);
    REQUIRE(ann.isotropy < 1e-9);
  }
  MatR J = jspace::random_isometric(3, +1, rng);
  auto ann = annihilator(rep, vacuum_from_J(rep, J));
  REQUIRE(ann.simple);
  REQUIRE(static_cast<int>(ann.basis.cols()) == 3);
  REQUIRE_THROWS_AS(annihilator(rep, VecC(VecC::Zero(rep.dim()))), std::invalid_argument);
}

TEST_CASE("roundtrip between isometric structures and simple spinors") {
  auto rep = build_gamma(3);
  Rng rng(405);
  for (int t = 0; t < 50; ++t) {
    MatR J = jspace::random_isometric(3, (t % 2) ? 1 : -1, rng);
    VecC psi = vacuum_from_J(rep, J);
    MatR J2 = j_from_simple_spinor(rep, psi);
    REQUIRE(sup_abs(MatR(J2 - J)) < 1e-9);
  }
  // psi -> J -> psi spans the same direction
  MatR J = jspace::random_isometric(3, +1, rng);
  VecC psi = vacuum_from_J(rep, J);
  VecC psi2 = vacuum_from_J(rep, j_from_simple_spinor(rep, psi));
  REQUIRE(sup_abs(MatC(psi * psi.adjoint() - psi2 * psi2.adjoint())) < 1e-10);

  REQUIRE(sup_abs(MatR(j_from_simple_spinor(build_gamma(2), vacuum_from_J(build_gamma(2), jspace::standard_j(2))) -
                       jspace::standard_j(2))) < 1e-9);
}

TEST_CASE("spin equivariance of the correspondence") {
  auto rep = build_gamma(3);
  Rng rng(407);
  MatR J = jspace::random_isometric(3, +1, rng);
  VecC psi = vacuum_from_J(rep, J);
  for (int t = 0; t < 5; ++t) {
    MatR c = MatR::Zero(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) c(i, j) = 0.2 * gauss(rng);
    MatC U = spin_rotation(rep, c);
    REQUIRE(sup_abs(MatC(U * U.adjoint() - MatC::Identity(8, 8))) < 1e-10);
    MatR R = rotation_of_spin(rep, U);
    REQUIRE(sup_abs(MatR(R * R.transpose() - MatR::Identity(6, 6))) < 1e-9);
    MatR J2 = j_from_simple_spinor(rep, VecC(U * psi));
    REQUIRE(sup_abs(MatR(J2 - R * J * R.transpose())) < 1e-8);
    // simplicity is invariant under the spin action
    REQUIRE(annihilator(rep, VecC(U * psi)).simple);
  }
}

TEST_CASE("fock packing is the creation-operator map and an isometry") {
  const int ell = 2;
  auto rep = build_gamma(ell);
  MatR J = jspace::standard_j(ell);
  VecC vac = vacuum_from_J(rep, J);
  MatC alphabar = jspace::holomorphic_coframe(J).conjugate();
  FrameMetric eu = FrameMetric::euclidean(2 * ell);

  // orthonormal basis of the antiholomorphic algebra maps to an orthonormal
  // basis of C^4
  std::vector<VecC> images;
  for (int k = 0; k <= ell; ++k)
    for (const auto& subset : all_subsets(ell, k)) {
      ExteriorForm w = jspace::wedge_columns(alphabar, subset);
      images.push_back(fock_pack(rep, J, {w}, vac));
    }
  REQUIRE(images.size() == 4);
  for (std::size_t a = 0; a < images.size(); ++a)
    for (std::size_t b = 0; b < images.size(); ++b) {
      cplx g = images[a].adjoint() * images[b];
      REQUIRE(std::abs(g - (a == b ? cplx(1, 0) : cplx(0, 0))) < 1e-10);
    }

  // defining relation Phi(w ^ phi) = gamma(w) Phi(phi) / sqrt(2)
  Rng rng(409);
  for (int t = 0; t < 10; ++t) {
    VecC wc = VecC::Zero(2 * ell);
    VecC cc(ell);
    for (int i = 0; i < ell; ++i) cc[i] = gaussc(rng);
    for (int i = 0; i < ell; ++i) wc += cc[i] * alphabar.col(i);
    ExteriorForm w = jspace::one_form(wc);
    ExteriorForm phi = jspace::one_form(VecC(alphabar.col(0) * gaussc(rng))) ;
    VecC lhs = fock_pack(rep, J, {wedge(w, phi)}, vac);
    VecC rhs = (1.0 / std::sqrt(2.0)) * (rep.apply(wc) * fock_pack(rep, J, {phi}, vac));
    REQUIRE((lhs - rhs).norm() < 1e-10);
  }

  // norm preservation on an inhomogeneous form
  ExteriorForm f0 = scalar_form(2 * ell, 0);
  f0[0] = cplx(0.5, -0.25);
  ExteriorForm f1 = jspace::one_form(VecC(alphabar.col(0) * cplx(0.3, 0.4)));
  VecC packed = fock_pack(rep, J, {f0, f1}, vac);
  double expect2 = std::norm(f0[0]) + std::abs(hermitian_pairing(f1, f1, eu));
  REQUIRE(packed.squaredNorm() == Catch::Approx(expect2).margin(1e-10));

  // holomorphic components are rejected
  ExteriorForm bad = jspace::one_form(VecC(alphabar.col(0).conjugate()));
  REQUIRE_THROWS_AS(fock_pack(rep, J, {bad}, vac), std::invalid_argument);
}

TEST_CASE("canonical anticommutation relations for the ladder operators") {
  const int ell = 3;
  auto rep = build_gamma(ell);
  Rng rng(411);
  MatR J = jspace::random_isometric(ell, +1, rng);
  MatC alpha = jspace::holomorphic_coframe(J);
  for (int a = 0; a < ell; ++a)
    for (int b = 0; b < ell; ++b) {
      MatC ca = rep.apply(alpha.col(a)) / std::sqrt(2.0);
      MatC cb = rep.apply(alpha.col(b)) / std::sqrt(2.0);
      MatC zero = ca * cb + cb * ca;
      REQUIRE(sup_abs(zero) < 1e-10);
      MatC delta = ca.adjoint() * cb + cb * ca.adjoint();
      cplx pair = alpha.col(b).adjoint() * alpha.col(a);  // <w_b | w_a>
      REQUIRE(sup_abs(MatC(delta - pair * MatC::Identity(rep.dim(), rep.dim()))) < 1e-10);
    }
}

TEST_CASE("chirality split") {
  for (int ell = 2; ell <= 4; ++ell) {
    auto rep = build_gamma(ell);
    MatC C = chirality_operator(rep);
    REQUIRE(sup_abs(MatC(C * C - MatC::Identity(rep.dim(), rep.dim()))) < 1e-12);
    REQUIRE(std::abs(C.trace()) < 1e-12);  // dim S_+ = dim S_- = 2^{l-1}
    for (const auto& g : rep.gamma) REQUIRE(sup_abs(MatC(C * g + g * C)) < 1e-12);  // swaps chirality
  }

  // even-degree Fock images of the standard structure land in one chirality
  const int ell = 3;
  auto rep = build_gamma(ell);
  MatR J = jspace::standard_j(ell);
  VecC vac = vacuum_from_J(rep, J);
  MatC C = chirality_operator(rep);
  MatC alphabar = jspace::holomorphic_coframe(J).conjugate();
  REQUIRE((C * vac - vac).norm() < 1e-10);  // vacuum fixed +1 by normalization
  for (int k = 0; k <= ell; ++k)
    for (const auto& subset : all_subsets(ell, k)) {
      VecC img = fock_pack(rep, J, {jspace::wedge_columns(alphabar, subset)}, vac);
      double sign = (k % 2 == 0) ? 1.0 : -1.0;
      REQUIRE((C * img - sign * img).norm() < 1e-10);
    }
}

TEST_CASE("all chiral spinors are simple at l = 3 but not at l = 4") {
  Rng rng(413);
  {
    auto rep = build_gamma(3);
    MatC C = chirality_operator(rep);
    MatC Pplus = 0.5 * (MatC::Identity(8, 8) + C);
    int simple_count = 0;
    for (int t = 0; t < 100; ++t) {
      VecC psi(8);
      for (int i = 0; i < 8; ++i) psi[i] = gaussc(rng);
      psi = Pplus * psi;
      if (annihilator(rep, psi).simple) ++simple_count;
    }
    REQUIRE(simple_count == 100);
  }
  {
    auto rep = build_gamma(4);
    MatC C = chirality_operator(rep);
    MatC Pplus = 0.5 * (MatC::Identity(16, 16) + C);
    VecC psi(16);
    for (int i = 0; i < 16; ++i) psi[i] = gaussc(rng);
    psi = Pplus * psi;
    auto ann = annihilator(rep, psi);
    REQUIRE_FALSE(ann.simple);
    REQUIRE(ann.basis.cols() < 4);
    // while the Fock vacuum is simple
    VecC vac = vacuum_from_J(rep, jspace::standard_j(4));
    REQUIRE(annihilator(rep, vac).simple);
  }
}

TEST_CASE("the simple-spinor cone has the expected tangent rank at l = 4") {
  const int ell = 4;
  auto rep = build_gamma(ell);
  MatR J0 = jspace::standard_j(ell);
  VecC psi0 = vacuum_from_J(rep, J0);

  // basis of the tangent space {B antisymmetric : B J0 + J0 B = 0}
  std::vector<MatR> tangent;
  const int n = 2 * ell;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      MatR A = MatR::Zero(n, n);
      A(i, j) = 1;
      A(j, i) = -1;
      MatR B = A + J0 * A * J0;  // anticommuting part, antisymmetric
      if (sup_abs(B) < 1e-12) continue;
      bool dup = false;
      for (const auto& t : tangent)
        if (sup_abs(MatR(t - 0.5 * B)) < 1e-12 || sup_abs(MatR(t + 0.5 * B)) < 1e-12) dup = true;
      if (!dup) tangent.push_back(0.5 * B);
    }
  // prune to a linearly independent set
  {
    std::vector<MatR> indep;
    MatR flat(n * n, 0);
    for (const auto& t : tangent) {
      MatR trial(n * n, flat.cols() + 1);
      trial.leftCols(flat.cols()) = flat;
      for (int q = 0; q < n; ++q)
        for (int w = 0; w < n; ++w) trial(q * n + w, flat.cols()) = t(q, w);
      Eigen::FullPivLU<MatR> lu(trial);
      if (lu.rank() == trial.cols()) {
        flat = trial;
        indep.push_back(t);
      }
    }
    tangent = indep;
  }
  REQUIRE(static_cast<int>(tangent.size()) == ell * (ell - 1));  // 12

  // columns of the differential of (J, scale/phase) -> spinor
  auto gauge_vac = [&](const MatR& J) {
    VecC v = vacuum_from_J(rep, J);
    cplx overlap = psi0.adjoint() * v;
    return VecC(v * (std::conj(overlap) / std::abs(overlap)));
  };
  const double h = 1e-4;
  MatR diff(2 * rep.dim(), static_cast<int>(tangent.size()) + 2);
  for (std::size_t c = 0; c < tangent.size(); ++c) {
    // rotate J0 along the orbit direction [A, J0] = tangent[c]
    MatR A = 0.5 * jspace::standard_j(ell) * tangent[c];
    auto expm = [&](double t) {
      MatR K = t * A;
      MatR acc = MatR::Identity(n, n), term = acc;
      for (int k = 1; k <= 12; ++k) {
        term = term * K * (1.0 / k);
        acc += term;
      }
      return acc;
    };
    MatR Rp = expm(h), Rm = expm(-h);
    VecC dv = (gauge_vac(MatR(Rp * J0 * Rp.transpose())) - gauge_vac(MatR(Rm * J0 * Rm.transpose()))) /
              (2 * h);
    for (int i = 0; i < rep.dim(); ++i) {
      diff(2 * i, static_cast<int>(c)) = dv[i].real();
      diff(2 * i + 1, static_cast<int>(c)) = dv[i].imag();
    }
  }
  for (int i = 0; i < rep.dim(); ++i) {
    diff(2 * i, tangent.size()) = psi0[i].real();
    diff(2 * i + 1, tangent.size()) = psi0[i].imag();
    diff(2 * i, tangent.size() + 1) = -psi0[i].imag();
    diff(2 * i + 1, tangent.size() + 1) = psi0[i].real();
  }
  Eigen::JacobiSVD<MatR> svd(diff);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-6 * svd.singularValues()(0)) ++rank;
  REQUIRE(rank == 14);       // l(l-1) + 2
  REQUIRE(rank < 2 * 8);     // strictly below dim S_+ = 2^{l-1} complex
}
