#include <geomlab/jspace.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace geomlab;
using namespace geomlab::jspace;

TEST_CASE("orientation of the basic structures") {
  MatR ip = standard_j(1);
  REQUIRE(orientation(ip) == 1);
  REQUIRE(orientation(MatR(-ip)) == -1);
  for (int ell = 1; ell <= 3; ++ell) REQUIRE(orientation(standard_j(ell)) == 1);
  REQUIRE(orientation(MatR(-standard_j(2))) == 1);  // (-1)^l = +1 for l = 2
}

TEST_CASE("pfaffian sign agrees with the basis orientation for isometric J") {
  Rng rng(301);
  for (int ell = 2; ell <= 3; ++ell)
    for (int orient : {1, -1})
      for (int t = 0; t < 10; ++t) {
        MatR J = random_isometric(ell, orient, rng);
        check_isometric(J);
        REQUIRE(orientation(J) == orient);
        REQUIRE(orientation_pfaffian(J) == orient);
      }
}

TEST_CASE("conjugation preserves orientation iff det G > 0") {
  Rng rng(303);
  for (int t = 0; t < 10; ++t) {
    MatR J = random_any(2, rng);
    int o = orientation(J);
    MatR g(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = gauss(rng);
    if (std::abs(g.determinant()) < 1e-3) continue;
    MatR conj = g * J * g.inverse();
    int expected = g.determinant() > 0 ? o : -o;
    REQUIRE(orientation(conj) == expected);
  }
}

TEST_CASE("pure type projectors decompose the exterior algebra") {
  Rng rng(305);
  for (int ell : {2, 3}) {
    MatR J = random_isometric(ell, +1, rng);
    const int n = 2 * ell;
    for (int k = 1; k <= std::min(n, 3); ++k) {
      std::int64_t dim = binom(n, k);
      MatC sum = MatC::Zero(dim, dim);
      for (int r = 0; r <= k; ++r) {
        int s = k - r;
        if (r > ell || s > ell) continue;
        MatC P = pure_type_projector(J, r, s);
        REQUIRE(sup_abs(MatC(P * P - P)) < 1e-9);
        REQUIRE(sup_abs(MatC(P - P.adjoint())) < 1e-9);  // Hermitian for isometric J
        double rank = P.trace().real();
        REQUIRE(rank == Catch::Approx(double(binom(ell, r) * binom(ell, s))).margin(1e-7));
        sum += P;
      }
      REQUIRE(sup_abs(MatC(sum - MatC::Identity(dim, dim))) < 1e-9);
    }
  }
}

TEST_CASE("pure type projectors of a non-isometric structure still decompose") {
  Rng rng(306);
  MatR J = random_any(2, rng);
  MatC p10 = pure_type_projector(J, 1, 0);
  MatC p01 = pure_type_projector(J, 0, 1);
  REQUIRE(sup_abs(MatC(p10 * p10 - p10)) < 1e-8);
  REQUIRE(sup_abs(MatC(p10 + p01 - MatC::Identity(4, 4))) < 1e-8);
}

TEST_CASE("conjugating a form swaps the type projectors") {
  Rng rng(307);
  MatR J = random_isometric(2, +1, rng);
  MatC prs = pure_type_projector(J, 2, 0);
  MatC psr = pure_type_projector(J, 0, 2);
  ExteriorForm w = scalar_form(4, 2);
  for (std::int64_t i = 0; i < w.size(); ++i) w[i] = gaussc(rng);
  ExteriorForm lhs = apply_operator(prs, w).conjugate();
  ExteriorForm rhs = apply_operator(psr, w.conjugate());
  REQUIRE((lhs - rhs).sup_norm() < 1e-9);
}

TEST_CASE("top antiholomorphic projector has rank one") {
  Rng rng(309);
  for (int ell : {2, 3}) {
    MatR J = random_isometric(ell, +1, rng);
    MatC P = pure_type_projector(J, 0, ell);
    REQUIRE(P.trace().real() == Catch::Approx(1.0).margin(1e-8));
  }
}

TEST_CASE("self-duality vs pure type, l = 2 fixtures") {
  Rng rng(311);
  ExteriorForm asd = basis_form(4, {0, 1}) - basis_form(4, {2, 3});
  auto rep = selfduality_pure_equivalence(asd, 100, rng);
  REQUIRE(rep.minus_condition < 1e-12);  // Omega - i^2 * Omega = 0
  REQUIRE(rep.sup_minus < 1e-9);         // vanishing side: all J in H_-
  REQUIRE(rep.sup_plus > 0.1);           // witness in H_+

  ExteriorForm sd = basis_form(4, {0, 1}) + basis_form(4, {2, 3});
  auto rep2 = selfduality_pure_equivalence(sd, 100, rng);
  REQUIRE(rep2.plus_condition < 1e-12);
  REQUIRE(rep2.sup_plus < 1e-9);
  REQUIRE(rep2.sup_minus > 0.1);

  // both components present: violating J found on both sides
  ExteriorForm mixed = asd + sd * 0.7;
  auto rep3 = selfduality_pure_equivalence(mixed, 100, rng);
  REQUIRE(rep3.sup_plus > 0.05);
  REQUIRE(rep3.sup_minus > 0.05);

  ExteriorForm zero = scalar_form(4, 2);
  auto rep4 = selfduality_pure_equivalence(zero, 10, rng);
  REQUIRE(rep4.sup_plus == 0.0);
  REQUIRE(rep4.sup_minus == 0.0);

  REQUIRE_THROWS_AS(selfduality_pure_equivalence(basis_form(4, {0}), 1, rng),
                    std::invalid_argument);
}

TEST_CASE("self-duality vs pure type, l = 3 fixtures from coframes") {
  Rng rng(313);
  MatR Jp = random_isometric(3, +1, rng);
  MatC alpha = holomorphic_coframe(Jp);
  Index all = {0, 1, 2};
  ExteriorForm antitop = wedge_columns(MatC(alpha.conjugate()), all);
  auto rep = selfduality_pure_equivalence(antitop, 60, rng);
  REQUIRE(rep.minus_condition < 1e-9);
  REQUIRE(rep.sup_minus < 1e-9);
  REQUIRE(top_antiholomorphic_component(Jp, antitop) > 0.9);  // J_+ itself violates

  ExteriorForm top = wedge_columns(alpha, all);
  auto rep2 = selfduality_pure_equivalence(top, 60, rng);
  REQUIRE(rep2.plus_condition < 1e-9);
  REQUIRE(rep2.sup_plus < 1e-9);
}

TEST_CASE("polar retraction") {
  Rng rng(315);
  MatR jiso = random_isometric(2, +1, rng);
  auto pd = polar_decompose(jiso);
  REQUIRE(sup_abs(pd.log_stretch) < 1e-9);
  REQUIRE(sup_abs(MatR(pd.isometric - jiso)) < 1e-9);

  for (int t = 0; t < 10; ++t) {
    MatR J = random_any(2, rng);
    auto pd2 = polar_decompose(J);
    REQUIRE(sup_abs(MatR(pd2.log_stretch - pd2.log_stretch.transpose())) < 1e-10);
    REQUIRE(sup_abs(MatR(pd2.isometric * pd2.log_stretch + pd2.log_stretch * pd2.isometric)) < 1e-8);
    check_isometric(pd2.isometric, 1e-8);
    for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      MatR jt = polar_retract(J, tau);
      REQUIRE(sup_abs(MatR(jt * jt + MatR::Identity(4, 4))) < 1e-8);
    }
    REQUIRE(sup_abs(MatR(polar_retract(J, 1.0) - J)) < 1e-8);
    // continuity in tau: |dJ_tau/dtau| <= |S| e^{|S|} in operator norm
    Eigen::SelfAdjointEigenSolver<MatR> es(pd2.log_stretch);
    double snorm = es.eigenvalues().cwiseAbs().maxCoeff();
    double lipschitz = snorm * std::exp(snorm);
    double step = 0;
    MatR prev = polar_retract(J, 0.0);
    for (double tau = 0.1; tau <= 1.0; tau += 0.1) {
      MatR cur = polar_retract(J, tau);
      step = std::max(step, (cur - prev).operatorNorm());
      prev = cur;
    }
    REQUIRE(step <= 0.1 * lipschitz * 1.05 + 1e-12);
  }
}

TEST_CASE("sphere fibration decomposition") {
  Rng rng(317);
  for (int t = 0; t < 100; ++t) {
    MatR J = random_isometric(3, (t % 2) ? 1 : -1, rng);  // R^6
    auto parts = sphere_fibration_decompose(J);
    REQUIRE(parts.unit.norm() == Catch::Approx(1.0).margin(1e-12));
    REQUIRE((parts.reduced * parts.unit).norm() < 1e-12);
    REQUIRE((parts.reduced.transpose() * parts.unit).norm() < 1e-12);
    REQUIRE(sup_abs(MatR(parts.reduced + parts.reduced.transpose())) < 1e-12);
    MatR expect_gram = MatR::Identity(5, 5) - parts.unit * parts.unit.transpose();
    REQUIRE(sup_abs(MatR(parts.reduced.transpose() * parts.reduced - expect_gram)) < 1e-12);
    REQUIRE(sup_abs(MatR(fibration_rebuild(parts) - J)) < 1e-15);
  }
}

namespace {

// integrable field: pullback of the constant structure through a polynomial
// diffeomorphism, with exact derivatives
JField integrable_field(double eps = 0.15) {
  JField f;
  f.ell = 2;
  // phi(x) = x + eps (x0 x1, x2 x3, x0 x2, x1 x3): an honest diffeomorphism
  // on the probe box, so the pulled-back structure is integrable
  auto dphi = [eps](const VecR& x) {
    MatR m = MatR::Identity(4, 4);
    m(0, 0) += eps * x[1];
    m(0, 1) += eps * x[0];
    m(1, 2) += eps * x[3];
    m(1, 3) += eps * x[2];
    m(2, 0) += eps * x[2];
    m(2, 2) += eps * x[0];
    m(3, 1) += eps * x[3];
    m(3, 3) += eps * x[1];
    return m;
  };
  // d(dphi)/dx_a are constants
  auto ddphi = [eps](int a) {
    MatR m = MatR::Zero(4, 4);
    if (a == 0) {
      m(0, 1) = eps;
      m(2, 2) = eps;
    }
    if (a == 1) {
      m(0, 0) = eps;
      m(3, 3) = eps;
    }
    if (a == 2) {
      m(1, 3) = eps;
      m(2, 0) = eps;
    }
    if (a == 3) {
      m(1, 2) = eps;
      m(3, 1) = eps;
    }
    return m;
  };
  f.value = [dphi](const VecR& x) {
    MatR m = dphi(x);
    return MatR(m.inverse() * standard_j(2) * m);
  };
  f.partial = [dphi, ddphi](const VecR& x, int a) {
    MatR m = dphi(x);
    MatR mi = m.inverse();
    MatR e = ddphi(a);
    MatR j = mi * standard_j(2) * m;
    return MatR(-mi * e * j + mi * standard_j(2) * e);
  };
  return f;
}

JField interpolating_field(Rng& rng) {
  MatR r = random_rotation(4, rng);
  MatR ja = standard_j(2);
  MatR jb = r * ja * r.transpose();
  JField f;
  f.ell = 2;
  f.value = [ja, jb](const VecR& x) {
    double s = 0.5 + x[0];
    return nearest_complex_structure(MatR((1 - s) * ja + s * jb));
  };
  return f;
}

std::vector<VecR> probe_points(Rng& rng, int count, double box = 0.25) {
  std::vector<VecR> pts;
  std::uniform_real_distribution<double> u(-box, box);
  for (int i = 0; i < count; ++i) {
    VecR x(4);
    for (int a = 0; a < 4; ++a) x[a] = u(rng);
    pts.push_back(x);
  }
  return pts;
}

}  // namespace

TEST_CASE("nijenhuis tensor of a constant field vanishes") {
  JField f;
  f.ell = 2;
  f.value = [](const VecR&) { return standard_j(2); };
  Rng rng(319);
  REQUIRE(nijenhuis_sup(f, probe_points(rng, 5)) == 0.0);
}

TEST_CASE("nijenhuis vanishes on the integrable pullback fixture") {
  auto f = integrable_field();
  Rng rng(321);
  auto pts = probe_points(rng, 8);
  REQUIRE(nijenhuis_sup(f, pts) < 1e-9);  // exact derivatives
  auto fd = f;
  fd.partial = nullptr;  // finite differences only
  REQUIRE(nijenhuis_sup(fd, pts, 1.0 / 64) < 1e-4);
}

TEST_CASE("nijenhuis detects a non-integrable interpolation") {
  Rng rng(323);
  auto f = interpolating_field(rng);
  auto pts = probe_points(rng, 8);
  REQUIRE(nijenhuis_sup(f, pts, 1e-4) > 0.01);
}

TEST_CASE("N(X, JX) vanishes identically") {
  Rng rng(325);
  auto f = interpolating_field(rng);  // even for non-integrable fields
  for (const auto& x : probe_points(rng, 4)) {
    MatR N = nijenhuis_at(f, x, 1e-4);
    MatR J = f.value(x);
    for (int t = 0; t < 5; ++t) {
      VecR X(4);
      for (int a = 0; a < 4; ++a) X[a] = gauss(rng);
      VecR JX = J * X;
      VecR acc = VecR::Zero(4);
      for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu) acc += X[mu] * JX[nu] * N.col(mu * 4 + nu);
      REQUIRE(acc.cwiseAbs().maxCoeff() < 1e-6 * (1 + sup_abs(N)));
    }
  }
}

TEST_CASE("almost complex connection: flat and integrable cases") {
  JField constf;
  constf.ell = 2;
  constf.value = [](const VecR&) { return standard_j(2); };
  Rng rng(327);
  auto pts = probe_points(rng, 4);
  auto c0 = almost_complex_connection_check(constf, pts);
  REQUIRE(c0.nabla_j == 0.0);
  REQUIRE(c0.torsion_vs_n == 0.0);

  auto fi = integrable_field();
  auto c1 = almost_complex_connection_check(fi, pts);
  REQUIRE(c1.nabla_j < 1e-9);
  REQUIRE(c1.torsion_vs_n < 1e-9);
}

TEST_CASE("almost complex connection on a smooth perturbed field") {
  Rng rng(329);
  MatR b1 = MatR::Zero(4, 4), b2 = MatR::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      b1(i, j) = 0.2 * gauss(rng);
      b2(i, j) = 0.2 * gauss(rng);
    }
  JField f;
  f.ell = 2;
  f.value = [b1, b2](const VecR& x) {
    MatR m = standard_j(2) + x[0] * b1 + x[2] * b2 + 0.5 * x[1] * x[3] * b1;
    return nearest_complex_structure(m);
  };
  auto pts = probe_points(rng, 5, 0.2);
  auto c = almost_complex_connection_check(f, pts, 1.0 / 64);
  REQUIRE(c.nabla_j < 1e-3);
  REQUIRE(c.torsion_vs_n < 1e-3);
}

TEST_CASE("tangent space dimensions of I(E) and H(E)") {
  Rng rng(331);
  for (int ell : {2, 3}) {
    const int n = 2 * ell;
    MatR J = random_isometric(ell, +1, rng);
    // full tangent space {A : AJ + JA = 0}
    MatR op(n * n, n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double v = 0;
            if (i == k) v += J(l, j);
            if (j == l) v += J(i, k);
            op(i * n + j, k * n + l) = v;
          }
    Eigen::JacobiSVD<MatR> svd(op);
    int kernel = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
      if (svd.singularValues()(i) < 1e-9) ++kernel;
    REQUIRE(kernel == 2 * ell * ell);

    // antisymmetric representatives: basis E_{ij} - E_{ji}
    int m = n * (n - 1) / 2;
    MatR op2(n * n, m);
    int col = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++col) {
        MatR A = MatR::Zero(n, n);
        A(i, j) = 1;
        A(j, i) = -1;
        MatR r = A * J + J * A;
        for (int q = 0; q < n; ++q)
          for (int w = 0; w < n; ++w) op2(q * n + w, col) = r(q, w);
      }
    Eigen::JacobiSVD<MatR> svd2(op2);
    int kernel2 = 0;
    for (int i = 0; i < svd2.singularValues().size(); ++i)
      if (svd2.singularValues()(i) < 1e-9) ++kernel2;
    REQUIRE(kernel2 == ell * (ell - 1));
  }
}
