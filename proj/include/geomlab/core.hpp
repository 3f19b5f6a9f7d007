// Shared scalar types, tolerances and small numeric helpers.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>

namespace geomlab {

using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;
using MatR = Eigen::MatrixXd;
using VecC = Eigen::VectorXcd;
using VecR = Eigen::VectorXd;

inline constexpr double kTolConstructor = 1e-10;  // exact-algebra invariants
inline constexpr double kTolDerived = 1e-9;       // identities derived by algebra
inline constexpr cplx kI{0.0, 1.0};

inline double sup_abs(const MatC& m) { return m.cwiseAbs().maxCoeff(); }
inline double sup_abs(const MatR& m) { return m.cwiseAbs().maxCoeff(); }

inline bool is_hermitian(const MatC& m, double tol = kTolConstructor) {
  return sup_abs(MatC(m - m.adjoint())) <= tol;
}

// Deterministic RNG: every stochastic routine takes an explicit engine so
// that suite runs are reproducible from a single seed.
using Rng = std::mt19937_64;

inline double gauss(Rng& rng) {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(rng);
}

inline cplx gaussc(Rng& rng) { return cplx(gauss(rng), gauss(rng)); }

inline MatC random_complex_matrix(int rows, int cols, Rng& rng) {
  MatC m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gaussc(rng);
  return m;
}

inline MatC random_hermitian(int n, Rng& rng) {
  MatC m = random_complex_matrix(n, n, rng);
  return 0.5 * (m + m.adjoint().eval());
}

// QR-based Haar-ish rotation with the sign fix that makes the
// distribution invariant.
inline MatR random_rotation(int n, Rng& rng) {
  MatR a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  Eigen::HouseholderQR<MatR> qr(a);
  MatR q = qr.householderQ();
  MatR r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace geomlab
