// Complex structures on R^{2l}: orientation, pure-type projectors on the
// complexified exterior algebra, the equivalence between (anti-)self-duality
// of l-forms and vanishing (0,l) parts over isometric structures, the polar
// retraction onto isometric structures, the sphere-fibration block
// decomposition, and Nijenhuis/connection checks for J-fields.
#pragma once

#include <geomlab/core.hpp>
#include <geomlab/exterior.hpp>

#include <functional>
#include <optional>

namespace geomlab::jspace {

inline void check_complex_structure(const MatR& J, double tol = kTolConstructor) {
  int n = static_cast<int>(J.rows());
  if (sup_abs(MatR(J * J + MatR::Identity(n, n))) > tol)
    throw std::invalid_argument("complex structure: J^2 != -1");
}

inline void check_isometric(const MatR& J, double tol = kTolConstructor) {
  check_complex_structure(J, tol);
  if (sup_abs(MatR(J.transpose() + J)) > tol)
    throw std::invalid_argument("complex structure: not antisymmetric");
}

// block convention (e_1..e_l, J e_1..J e_l)
inline MatR standard_j(int ell) {
  MatR J = MatR::Zero(2 * ell, 2 * ell);
  for (int i = 0; i < ell; ++i) {
    J(ell + i, i) = 1;
    J(i, ell + i) = -1;
  }
  return J;
}

// Pfaffian by expansion along the first row; fine for 2l <= 12.
inline double pfaffian(const MatR& a) {
  int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n % 2 == 1) return 0.0;
  if (n == 2) return a(0, 1);
  double acc = 0;
  for (int j = 1; j < n; ++j) {
    if (a(0, j) == 0.0) continue;
    MatR minor(n - 2, n - 2);
    int rr = 0;
    for (int r = 1; r < n; ++r) {
      if (r == j) continue;
      int cc = 0;
      for (int c = 1; c < n; ++c) {
        if (c == j) continue;
        minor(rr, cc++) = a(r, c);
      }
      ++rr;
    }
    double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * a(0, j) * pfaffian(minor);
  }
  return acc;
}

// Orientation of J: sign of det(v_1..v_l, J v_1..J v_l) for a greedily
// extracted complex basis.
inline int orientation(const MatR& J) {
  check_complex_structure(J, 1e-8);
  const int n = static_cast<int>(J.rows());
  const int ell = n / 2;
  MatR basis(n, n);
  int have = 0;
  Eigen::FullPivLU<MatR> lu;
  for (int cand = 0; cand < n && have < ell; ++cand) {
    MatR trial(n, 2 * (have + 1));
    for (int k = 0; k < have; ++k) {
      trial.col(2 * k) = basis.col(k);
      trial.col(2 * k + 1) = basis.col(ell + k);
    }
    VecR v = VecR::Zero(n);
    v[cand] = 1;
    trial.col(2 * have) = v;
    trial.col(2 * have + 1) = J * v;
    lu.compute(trial);
    if (lu.rank() == 2 * (have + 1)) {
      basis.col(have) = v;
      basis.col(ell + have) = J * v;
      ++have;
    }
  }
  if (have < ell) throw std::runtime_error("orientation: failed to extract a complex basis");
  double det = basis.determinant();
  return det > 0 ? 1 : -1;
}

// For isometric J the orientation equals the Pfaffian sign up to a fixed
// l-dependent anchor, frozen on the standard structure.
inline int orientation_pfaffian(const MatR& J) {
  const int ell = static_cast<int>(J.rows()) / 2;
  MatR J0 = standard_j(ell);
  double anchor = pfaffian(J0);  // orientation(J0) = +1 by convention
  double p = pfaffian(J);
  return (p * anchor) > 0 ? 1 : -1;
}

inline MatR random_isometric(int ell, int orient, Rng& rng) {
  MatR J = standard_j(ell);
  if (orient < 0) {
    MatR flip = MatR::Identity(2 * ell, 2 * ell);
    flip(0, 0) = -1;
    J = flip * J * flip;
  }
  MatR R = random_rotation(2 * ell, rng);
  return R * J * R.transpose();
}

inline MatR random_any(int ell, Rng& rng) {
  const int n = 2 * ell;
  while (true) {
    MatR g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    g = MatR::Identity(n, n) + 0.35 * g;
    Eigen::FullPivLU<MatR> lu(g);
    if (!lu.isInvertible()) continue;
    return g * standard_j(ell) * lu.inverse();
  }
}

// ---- pure types ----

// Basis of (1,0)-forms of J: eigenvectors of J^t with eigenvalue +i; for
// isometric J the basis is orthonormalized so the type projectors come out
// Hermitian.
inline MatC holomorphic_coframe(const MatR& J, double tol = 1e-8) {
  const int n = static_cast<int>(J.rows());
  const int ell = n / 2;
  Eigen::ComplexEigenSolver<MatC> es(MatC(J.transpose().cast<cplx>()));
  MatC basis(n, ell);
  int got = 0;
  for (int k = 0; k < n; ++k) {
    if (std::abs(es.eigenvalues()(k) - kI) < tol) {
      if (got == ell) throw std::runtime_error("holomorphic_coframe: too many +i eigenvalues");
      basis.col(got++) = es.eigenvectors().col(k);
    }
  }
  if (got != ell) throw std::runtime_error("holomorphic_coframe: eigenvalue +i multiplicity wrong");
  bool isometric = sup_abs(MatR(J.transpose() + J)) < 1e-9;
  if (isometric) {
    Eigen::HouseholderQR<MatC> qr(basis);
    MatC q = qr.householderQ();
    basis = q.leftCols(ell);
  }
  return basis;
}

inline ExteriorForm one_form(const VecC& coeffs) {
  ExteriorForm f = scalar_form(static_cast<int>(coeffs.size()), 1);
  for (int i = 0; i < coeffs.size(); ++i) f[i] = coeffs[i];
  return f;
}

inline ExteriorForm wedge_columns(const MatC& cols, const Index& which) {
  ExteriorForm acc = scalar_form(static_cast<int>(cols.rows()), 0);
  acc[0] = 1;
  for (int i : which) acc = wedge(acc, one_form(cols.col(i)));
  return acc;
}

// Projector onto Lambda^{r,s}_J inside Lambda^{r+s} of the complexified
// dual; idempotent always, Hermitian for isometric J.
inline MatC pure_type_projector(const MatR& J, int r, int s) {
  const int n = static_cast<int>(J.rows());
  const int ell = n / 2;
  if (r < 0 || s < 0 || r > ell || s > ell || r + s > n)
    throw std::invalid_argument("pure_type_projector: bidegree out of range");
  const int k = r + s;
  const std::int64_t dim = binom(n, k);
  MatC basis(dim, dim);
  std::vector<bool> selected(dim, false);
  MatC alpha = holomorphic_coframe(J);
  MatC alphabar = alpha.conjugate();
  std::int64_t col = 0;
  for (int a = 0; a <= ell && a <= k; ++a) {
    int b = k - a;
    if (b < 0 || b > ell) continue;
    for (const auto& ia : all_subsets(ell, a))
      for (const auto& ib : all_subsets(ell, b)) {
        ExteriorForm f = wedge(wedge_columns(alpha, ia), wedge_columns(alphabar, ib));
        for (std::int64_t q = 0; q < dim; ++q) basis(q, col) = f[q];
        if (a == r && b == s) selected[col] = true;
        ++col;
      }
  }
  if (col != dim) throw std::runtime_error("pure_type_projector: basis count mismatch");
  MatC diag = MatC::Zero(dim, dim);
  for (std::int64_t q = 0; q < dim; ++q)
    if (selected[q]) diag(q, q) = 1;
  return basis * diag * basis.inverse();
}

inline ExteriorForm apply_operator(const MatC& op, const ExteriorForm& w) {
  ExteriorForm out = w;
  for (std::int64_t i = 0; i < w.size(); ++i) {
    cplx acc = 0;
    for (std::int64_t j = 0; j < w.size(); ++j) acc += op(i, j) * w[j];
    out[i] = acc;
  }
  return out;
}

// |P^{0,l}_J w| using the rank-one structure of the top antiholomorphic type.
inline double top_antiholomorphic_component(const MatR& J, const ExteriorForm& w) {
  const int ell = static_cast<int>(J.rows()) / 2;
  MatC alphabar = holomorphic_coframe(J).conjugate();
  Index all(ell);
  for (int i = 0; i < ell; ++i) all[i] = i;
  ExteriorForm top = wedge_columns(alphabar, all);
  FrameMetric eu = FrameMetric::euclidean(2 * ell);
  cplx nrm2 = hermitian_pairing(top, top, eu);
  cplx overlap = hermitian_pairing(top, w, eu);
  return std::abs(overlap) / std::sqrt(std::abs(nrm2));
}

struct SelfdualityReport {
  double plus_condition = 0;   // |w + c_l * w|, vanishing over H_+
  double minus_condition = 0;  // |w - c_l * w|, vanishing over H_-
  double sup_plus = 0;         // sup over sampled J in H_+ of |P^{0,l} w|
  double sup_minus = 0;        // sup over H_-
  MatR witness_plus;           // maximizer in H_+
  MatR witness_minus;
};

// With the orientation convention (e_1..e_l, J e_1..J e_l) the prefactor
// pairing the vanishing side with H_+ is c_l = (-i)^l; it agrees with i^l in
// even half-dimension and was frozen on the top-antiholomorphic fixtures.
inline SelfdualityReport selfduality_pure_equivalence(const ExteriorForm& w, int samples, Rng& rng) {
  const int n = w.dim();
  if (n % 2 == 1) throw std::invalid_argument("selfduality: odd dimension");
  const int ell = n / 2;
  if (w.degree() != ell) throw std::invalid_argument("selfduality: need a middle-degree form");
  FrameMetric eu = FrameMetric::euclidean(n);
  cplx il = std::pow(-kI, ell);
  SelfdualityReport rep;
  ExteriorForm sw = hodge_star(w, eu);
  rep.plus_condition = (w + sw * il).sup_norm();
  rep.minus_condition = (w - sw * il).sup_norm();
  for (int t = 0; t < samples; ++t) {
    MatR jp = random_isometric(ell, +1, rng);
    MatR jm = random_isometric(ell, -1, rng);
    double vp = top_antiholomorphic_component(jp, w);
    double vm = top_antiholomorphic_component(jm, w);
    if (vp >= rep.sup_plus) {
      rep.sup_plus = vp;
      rep.witness_plus = jp;
    }
    if (vm >= rep.sup_minus) {
      rep.sup_minus = vm;
      rep.witness_minus = jm;
    }
  }
  return rep;
}

// ---- polar retraction ----

struct PolarDecomposition {
  MatR isometric;  // J_0
  MatR log_stretch;  // S, symmetric, anticommutes with J_0
};

inline PolarDecomposition polar_decompose(const MatR& J) {
  check_complex_structure(J, 1e-8);
  const int n = static_cast<int>(J.rows());
  Eigen::SelfAdjointEigenSolver<MatR> es(MatR(J.transpose() * J));
  if (es.eigenvalues().minCoeff() <= 0)
    throw std::runtime_error("polar_decompose: J^t J not positive definite");
  VecR lam = es.eigenvalues();
  MatR V = es.eigenvectors();
  VecR loghalf(n);
  for (int i = 0; i < n; ++i) loghalf[i] = 0.5 * std::log(lam[i]);
  MatR S = V * loghalf.asDiagonal() * V.transpose();
  VecR expm(n);
  for (int i = 0; i < n; ++i) expm[i] = std::exp(-loghalf[i]);
  MatR J0 = J * (V * expm.asDiagonal() * V.transpose());
  return {J0, S};
}

inline MatR polar_retract(const MatR& J, double tau) {
  auto pd = polar_decompose(J);
  Eigen::SelfAdjointEigenSolver<MatR> es(pd.log_stretch);
  VecR e = es.eigenvalues();
  VecR ex(e.size());
  for (int i = 0; i < e.size(); ++i) ex[i] = std::exp(tau * e[i]);
  return pd.isometric * (es.eigenvectors() * ex.asDiagonal() * es.eigenvectors().transpose());
}

// ---- sphere fibration ----

struct FibrationParts {
  VecR unit;     // u in R^{2l+1}
  MatR reduced;  // J~ on u-perp, stored as the (2l+1) x (2l+1) block
};

inline FibrationParts sphere_fibration_decompose(const MatR& J) {
  check_isometric(J, 1e-9);
  const int n = static_cast<int>(J.rows());
  FibrationParts parts;
  parts.unit = J.col(n - 1).head(n - 1);
  parts.reduced = J.topLeftCorner(n - 1, n - 1);
  return parts;
}

inline MatR fibration_rebuild(const FibrationParts& parts) {
  const int m = static_cast<int>(parts.unit.size());
  MatR J(m + 1, m + 1);
  J.topLeftCorner(m, m) = parts.reduced;
  J.col(m).head(m) = parts.unit;
  J.row(m).head(m) = -parts.unit.transpose();
  J(m, m) = 0;
  return J;
}

// ---- J-fields ----

struct JField {
  int ell = 0;
  std::function<MatR(const VecR&)> value;
  std::function<MatR(const VecR&, int)> partial;  // optional exact dJ/dx_a
};

// Project a near-complex-structure matrix onto I(E): M (-M^2)^{-1/2}.
inline MatR nearest_complex_structure(const MatR& M) {
  Eigen::ComplexEigenSolver<MatC> es(M.cast<cplx>());
  MatC V = es.eigenvectors();
  VecC lam = es.eigenvalues();
  VecC f(lam.size());
  for (int i = 0; i < lam.size(); ++i) f[i] = lam[i] / std::sqrt(-lam[i] * lam[i]);
  MatC J = V * f.asDiagonal() * V.inverse();
  return J.real();
}

namespace detail {

inline MatR field_partial(const JField& f, const VecR& x, int a, double h) {
  if (f.partial) return f.partial(x, a);
  VecR xp = x, xm = x;
  xp[a] += h;
  xm[a] -= h;
  return (f.value(xp) - f.value(xm)) / (2 * h);
}

}  // namespace detail

// N(X,Y) = 2([JX,JY] - [X,Y] - J[X,JY] - J[JX,Y]) at a point, for constant
// probe vectors, via the coordinate formula.
inline MatR nijenhuis_at(const JField& f, const VecR& x, double h = 1e-4) {
  const int n = 2 * f.ell;
  MatR J = f.value(x);
  std::vector<MatR> dJ(n);
  for (int a = 0; a < n; ++a) dJ[a] = detail::field_partial(f, x, a, h);
  // components N^k_{mu nu}; returned as a matrix of column-stacked (mu,nu)
  MatR N(n, n * n);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = 0; nu < n; ++nu) {
      VecR acc = VecR::Zero(n);
      for (int a = 0; a < n; ++a) {
        acc += J(a, mu) * dJ[a].col(nu) - J(a, nu) * dJ[a].col(mu);
      }
      // - J (d_mu J) e_nu + J (d_nu J) e_mu
      acc -= J * (dJ[mu].col(nu) - dJ[nu].col(mu));
      N.col(mu * n + nu) = 2 * acc;
    }
  return N;
}

inline double nijenhuis_sup(const JField& f, const std::vector<VecR>& points, double h = 1e-4) {
  double worst = 0;
  for (const auto& x : points) worst = std::max(worst, sup_abs(nijenhuis_at(f, x, h)));
  return worst;
}

// Connection Q from the torsion construction: 4 Q(X,Y) = (D_{JY} J) X +
// J (D_Y J) X + 2 J (D_X J) Y with the flat background derivative D.
struct ConnectionCheck {
  double nabla_j = 0;    // sup |(nabla J)(X,Y)|
  double torsion_vs_n = 0;  // sup |T(X,Y) - N(X,Y)/8|
};

inline ConnectionCheck almost_complex_connection_check(const JField& f,
                                                       const std::vector<VecR>& points,
                                                       double h = 1e-4) {
  const int n = 2 * f.ell;
  ConnectionCheck out;
  for (const auto& x : points) {
    MatR J = f.value(x);
    std::vector<MatR> dJ(n);
    for (int a = 0; a < n; ++a) dJ[a] = detail::field_partial(f, x, a, h);
    auto dirJ = [&](const VecR& z) {  // (D_Z J)
      MatR m = MatR::Zero(n, n);
      for (int a = 0; a < n; ++a) m += z[a] * dJ[a];
      return m;
    };
    auto Q = [&](const VecR& X, const VecR& Y) {
      VecR r = dirJ(J * Y) * X + J * (dirJ(Y) * X) + 2 * (J * (dirJ(X) * Y));
      return VecR(0.25 * r);
    };
    MatR Nmat = nijenhuis_at(f, x, h);
    for (int mu = 0; mu < n; ++mu)
      for (int nu = 0; nu < n; ++nu) {
        VecR X = VecR::Zero(n), Y = VecR::Zero(n);
        X[mu] = 1;
        Y[nu] = 1;
        // (nabla_X J) Y = (D_X J) Y - Q(X, J Y) + J Q(X, Y)
        VecR nj = dirJ(X) * Y - Q(X, VecR(J * Y)) + J * Q(X, Y);
        out.nabla_j = std::max(out.nabla_j, nj.cwiseAbs().maxCoeff());
        VecR torsion = Q(Y, X) - Q(X, Y);
        VecR diff = torsion - Nmat.col(mu * n + nu) / 8.0;
        out.torsion_vs_n = std::max(out.torsion_vs_n, diff.cwiseAbs().maxCoeff());
      }
  }
  return out;
}

}  // namespace geomlab::jspace
