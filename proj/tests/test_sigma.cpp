#include <geomlab/sigma.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace geomlab;
using namespace geomlab::sigma;

namespace {

ProjectorField strip_closure(ProjectorField f) {
  f.closure.reset();
  return f;
}

ProjectorField constant_field(int n = 17) {
  ProjectorField f;
  f.h = 2.0 / (n - 1);
  f.x0 = f.y0 = -1;
  f.nx = f.ny = n;
  f.N = 2;
  f.p = 1;
  MatC P = MatC::Zero(2, 2);
  P(0, 0) = 1;
  f.values.assign(static_cast<std::size_t>(n) * n, P);
  return f;
}

}  // namespace

TEST_CASE("field invariants validate for the builtin fixtures") {
  for (const char* name : {"cp1-holomorphic", "cp1-antiholomorphic", "cp1-degree2",
                           "cp1-nonharmonic", "cp2-middle", "grassmann42"}) {
    auto f = builtin_fixture(name, 33);
    REQUIRE_NOTHROW(f.validate());
  }
}

TEST_CASE("constant fields are harmonic and classified as degenerate") {
  auto f = constant_field();
  REQUIRE(harmonic_residual(f) == 0.0);
  auto c = holomorphy_classify(f);
  REQUIRE(c.kind == Holomorphy::holomorphic);
  REQUIRE(c.degenerate);
  REQUIRE(stress_holomorphy(f).value == 0.0);
  REQUIRE(topological_charge(f).charge == 0.0);
}

TEST_CASE("holomorphic fields are harmonic") {
  auto exact = builtin_fixture("cp1-holomorphic", 65);
  REQUIRE(harmonic_residual(exact) < 1e-10);

  auto fd = strip_closure(builtin_fixture("cp1-holomorphic", 129));
  REQUIRE(harmonic_residual(fd) < 1e-3);
}

TEST_CASE("the non-harmonic witness is detected") {
  auto f = builtin_fixture("cp1-nonharmonic", 65);
  REQUIRE(harmonic_residual(f) > 0.01);
}

TEST_CASE("holomorphy classification of the chart fields") {
  auto holo = builtin_fixture("cp1-holomorphic", 65);
  auto anti = builtin_fixture("cp1-antiholomorphic", 65);
  auto c1 = holomorphy_classify(holo);
  auto c2 = holomorphy_classify(anti);
  REQUIRE(c1.kind == Holomorphy::holomorphic);
  REQUIRE_FALSE(c1.degenerate);
  REQUIRE(c2.kind == Holomorphy::antiholomorphic);
  // p = 1 cross-check: (dP)^2 vanishes exactly for a holomorphic line field
  REQUIRE(c1.square_sup < 1e-10);
  REQUIRE(c2.square_sup < 1e-10);
}

TEST_CASE("the middle Veronese map is harmonic but neither-holomorphic") {
  auto f = builtin_fixture("cp2-middle", 65);
  REQUIRE(harmonic_residual(f) < 1e-6);  // gate before using as a fixture
  auto c = holomorphy_classify(f);
  REQUIRE(c.kind == Holomorphy::neither);
  REQUIRE(c.residual_holo > 0.01);
  REQUIRE(c.residual_anti > 0.01);
  REQUIRE(stress_holomorphy(f).value < 1e-3);
  REQUIRE(nilpotency_order(f) == 3);
}

TEST_CASE("stress holomorphy separates harmonic from non-harmonic fields") {
  auto fd = builtin_fixture("cp2-middle", 129);
  auto rep = stress_holomorphy(fd);
  REQUIRE(rep.precondition_ok);
  REQUIRE(rep.value < 1e-3);

  auto bad = strip_closure(builtin_fixture("cp1-nonharmonic", 129));
  auto rep2 = stress_holomorphy(bad);
  REQUIRE_FALSE(rep2.precondition_ok);
  REQUIRE(rep2.value > 1e-2);
}

TEST_CASE("cubic identity for rank-one fields") {
  for (const char* name : {"cp1-holomorphic", "cp1-nonharmonic", "cp2-middle"}) {
    auto f = builtin_fixture(name, 33);
    REQUIRE(cubic_identity_residual(f, cplx(1, 0), cplx(0, 0)) < 1e-9);   // X = d/dz
    REQUIRE(cubic_identity_residual(f, cplx(1, 0), cplx(1, 0)) < 1e-9);   // X = d/dx
    REQUIRE(cubic_identity_residual(f, cplx(0.3, 0.7), cplx(-0.2, 0.1)) < 1e-9);
  }
  auto g = builtin_fixture("grassmann42", 17);
  REQUIRE_THROWS_AS(cubic_identity_residual(g, cplx(1, 0), cplx(0, 0)), std::invalid_argument);
}

TEST_CASE("nilpotency orders") {
  REQUIRE(nilpotency_order(builtin_fixture("cp1-holomorphic", 33)) == 2);
  REQUIRE(nilpotency_order(builtin_fixture("cp1-nonharmonic", 33)) == 3);  // N + 1
}

TEST_CASE("decay surrogate for the middle map on a large disc") {
  auto f = builtin_fixture("cp2-middle", 129, 30.0);
  double interior = 0, boundary = 0;
  for (int iy = 1; iy + 1 < f.ny; ++iy)
    for (int ix = 1; ix + 1 < f.nx; ++ix) {
      double d = f.dz(ix, iy).norm() + f.dzbar(ix, iy).norm();
      bool edge = ix <= 2 || iy <= 2 || ix >= f.nx - 3 || iy >= f.ny - 3;
      (edge ? boundary : interior) = std::max(edge ? boundary : interior, d);
    }
  REQUIRE(boundary < 1e-2 * interior);
}

TEST_CASE("topological charge of degree-one and degree-two maps") {
  auto f8 = builtin_fixture("cp1-holomorphic", 257, 8.0);
  auto f16 = builtin_fixture("cp1-holomorphic", 385, 16.0);
  auto q8 = topological_charge(f8);
  auto q16 = topological_charge(f16);
  REQUIRE(std::abs(q8.charge - 1.0) < 0.02);
  REQUIRE(std::abs(q16.charge - 1.0) < 0.02);
  REQUIRE(std::abs(q16.charge - 1.0) < std::abs(q8.charge - 1.0));

  auto g8 = builtin_fixture("cp1-degree2", 257, 8.0);
  auto g16 = builtin_fixture("cp1-degree2", 385, 16.0);
  REQUIRE(std::abs(topological_charge(g8).charge - 2.0) < 0.02);
  REQUIRE(std::abs(topological_charge(g16).charge - 2.0) < 0.02);
}

TEST_CASE("classification is invariant under global unitary conjugation") {
  Rng rng(211);
  MatC A = random_complex_matrix(2, 2, rng);
  Eigen::HouseholderQR<MatC> qr(A);
  MatC U = qr.householderQ();
  auto f = strip_closure(builtin_fixture("cp1-holomorphic", 65));
  auto g = f;
  for (auto& P : g.values) P = U * P * U.adjoint();
  auto c1 = holomorphy_classify(f);
  auto c2 = holomorphy_classify(g);
  REQUIRE(c1.kind == c2.kind);
  REQUIRE(std::abs(c1.residual_holo - c2.residual_holo) < 1e-12);
  REQUIRE(std::abs(c1.residual_anti - c2.residual_anti) < 1e-12);
  REQUIRE(std::abs(harmonic_residual(f) - harmonic_residual(g)) < 1e-12);
}

TEST_CASE("conjugating the field swaps the classification") {
  auto f = strip_closure(builtin_fixture("cp1-holomorphic", 65));
  auto g = f;
  for (auto& P : g.values) P = P.conjugate();
  REQUIRE(holomorphy_classify(f).kind == Holomorphy::holomorphic);
  REQUIRE(holomorphy_classify(g).kind == Holomorphy::antiholomorphic);
}

TEST_CASE("derivative splits off-diagonally with respect to P") {
  for (const char* name : {"cp1-holomorphic", "cp2-middle", "grassmann42"}) {
    auto f = builtin_fixture(name, 33);
    double worst = 0;
    for (int iy = 1; iy + 1 < f.ny; ++iy)
      for (int ix = 1; ix + 1 < f.nx; ++ix) {
        const MatC& P = f.at(ix, iy);
        MatC d = f.dz(ix, iy);
        MatC I = MatC::Identity(f.N, f.N);
        worst = std::max(worst, sup_abs(MatC(d - P * d * (I - P) - (I - P) * d * P)));
      }
    REQUIRE(worst < 1e-9);
  }
}

TEST_CASE("sigma report assembles for builtin fixtures") {
  auto rep = analyze("cp1-holomorphic", 65);
  REQUIRE(rep.classification.kind == Holomorphy::holomorphic);
  REQUIRE(rep.nilpotency == 2);
}
