// Projector model of complex projective spaces and Grassmannians: charts,
// tangent projection, the almost-complex operator -i[P,.], Kahler potential,
// fundamental 2-form closure and Ricci from the potential.
#pragma once

#include <geomlab/core.hpp>
#include <geomlab/grid.hpp>

#include <functional>

namespace geomlab::projgeo {

struct HermitianProjector {
  MatC matrix;
  int p = 0;

  int N() const { return static_cast<int>(matrix.rows()); }

  static HermitianProjector adopt(const MatC& m, double tol = kTolConstructor) {
    HermitianProjector pr;
    pr.matrix = m;
    double trace = m.trace().real();
    pr.p = static_cast<int>(std::lround(trace));
    if (sup_abs(MatC(m - m.adjoint())) > tol)
      throw std::invalid_argument("projector: not Hermitian");
    if (sup_abs(MatC(m * m - m)) > tol)
      throw std::invalid_argument("projector: not idempotent");
    if (std::abs(trace - pr.p) > 1e-8) throw std::invalid_argument("projector: non-integer trace");
    return pr;
  }
};

// P = (1; Z) (1 + Z^+ Z)^{-1} (1, Z^+) for an (N-p) x p chart matrix Z.
inline MatC projector_from_chart(const MatC& Z) {
  const int p = static_cast<int>(Z.cols());
  const int N = p + static_cast<int>(Z.rows());
  MatC B(N, p);
  B.topRows(p) = MatC::Identity(p, p);
  B.bottomRows(N - p) = Z;
  MatC M = (MatC::Identity(p, p) + Z.adjoint() * Z).inverse();
  return B * M * B.adjoint();
}

// Inverse chart: the unique basis of range(P) of the form (1; Z). Rejects
// projectors outside the standard chart.
inline MatC chart_of(const MatC& P, int p, double tol = 1e-8) {
  const int N = static_cast<int>(P.rows());
  MatC cols = P.leftCols(p);
  MatC top = cols.topRows(p);
  Eigen::JacobiSVD<MatC> svd(top);
  if (svd.singularValues()(p - 1) < tol)
    throw std::invalid_argument("chart_of: projector outside the standard chart");
  return cols.bottomRows(N - p) * top.inverse();
}

// Orthogonal projection of a Hermitian matrix onto the tangent space at P,
// A -> [P,[P,A]].
inline MatC tangent_project(const MatC& P, const MatC& A, double tol = kTolConstructor) {
  if (!is_hermitian(A, tol)) throw std::invalid_argument("tangent_project: input not Hermitian");
  MatC inner = P * A - A * P;
  return P * inner - inner * P;
}

inline bool is_tangent(const MatC& P, const MatC& A, double tol = kTolDerived) {
  return sup_abs(MatC(tangent_project(P, A) - A)) <= tol;
}

// J_P(A) = -i [P, A]
inline MatC almost_complex(const MatC& P, const MatC& A, double tol = kTolDerived) {
  if (!is_tangent(P, A, std::max(tol, 1e-9 * (1 + sup_abs(A)))))
    throw std::invalid_argument("almost_complex: input not tangent at P");
  return -kI * (P * A - A * P);
}

// P = H (H^+ H)^{-1} H^+ on a Gaussian frame
inline MatC random_projector(int N, int p, Rng& rng) {
  MatC H = random_complex_matrix(N, p, rng);
  return H * (H.adjoint() * H).inverse() * H.adjoint();
}

inline MatC random_tangent(const MatC& P, Rng& rng) {
  MatC A = random_hermitian(static_cast<int>(P.rows()), rng);
  return tangent_project(P, A);
}

inline double kahler_potential(const MatC& Z) {
  const int p = static_cast<int>(Z.cols());
  MatC M = MatC::Identity(p, p) + Z.adjoint() * Z;
  return std::log(std::abs(Eigen::PartialPivLU<MatC>(M).determinant()));
}

// ---- potentials on charts ----

// Real potential F on a chart of C^m, with an optional exact Hermitian
// Hessian G_{a b-bar}(z).
struct PotentialClosure {
  int m = 1;
  std::function<double(const VecC&)> value;
  std::function<MatC(const VecC&)> hessian;  // optional
};

namespace detail {

inline VecC shift(const VecC& z, int axis, double dx, double dy) {
  VecC w = z;
  w[axis] += cplx(dx, dy);
  return w;
}

}  // namespace detail

// G_{a b-bar} = d^2 F / dz^a dzbar^b by central differences on the real
// coordinates (x_a, y_a).
inline MatC potential_hessian_fd(const PotentialClosure& F, const VecC& z, double h = 1e-3) {
  const int m = F.m;
  MatC G(m, m);
  auto f = [&](const VecC& w) { return F.value(w); };
  for (int a = 0; a < m; ++a) {
    // diagonal: 1/4 (F_xx + F_yy)
    double fxx = (f(detail::shift(z, a, h, 0)) - 2 * f(z) + f(detail::shift(z, a, -h, 0))) / (h * h);
    double fyy = (f(detail::shift(z, a, 0, h)) - 2 * f(z) + f(detail::shift(z, a, 0, -h))) / (h * h);
    G(a, a) = 0.25 * (fxx + fyy);
    for (int b = a + 1; b < m; ++b) {
      auto mixed = [&](double dxa, double dya, double dxb, double dyb) {
        VecC w = z;
        w[a] += cplx(dxa, dya);
        w[b] += cplx(dxb, dyb);
        return F.value(w);
      };
      auto cross = [&](bool ya, bool yb) {
        double s = 0;
        for (int sa : {1, -1})
          for (int sb : {1, -1}) {
            double v = mixed(ya ? 0 : sa * h, ya ? sa * h : 0, yb ? 0 : sb * h, yb ? sb * h : 0);
            s += sa * sb * v;
          }
        return s / (4 * h * h);
      };
      double xx = cross(false, false), xy = cross(false, true);
      double yx = cross(true, false), yy = cross(true, true);
      // 1/4 (d_xa - i d_ya)(d_xb + i d_yb)
      G(a, b) = 0.25 * cplx(xx + yy, xy - yx);
      G(b, a) = std::conj(G(a, b));
    }
  }
  return G;
}

inline MatC potential_hessian(const PotentialClosure& F, const VecC& z, double h = 1e-3) {
  if (F.hessian) return F.hessian(z);
  return potential_hessian_fd(F, z, h);
}

// R_{a b-bar} = -d^2/dz^a dzbar^b log det G, by nested finite differences on
// log det G (outer step) with G exact when the closure provides it.
inline MatC ricci_from_potential(const PotentialClosure& F, const VecC& z, double h_outer = 1e-3,
                                 double h_inner = 1e-3) {
  {
    MatC G0 = potential_hessian(F, z, h_inner);
    Eigen::SelfAdjointEigenSolver<MatC> es(G0);
    if (es.eigenvalues().minCoeff() <= 0)
      throw std::invalid_argument("ricci_from_potential: Hessian not positive definite");
  }
  PotentialClosure logdet;
  logdet.m = F.m;
  logdet.value = [&F, h_inner](const VecC& w) {
    MatC G = potential_hessian(F, w, h_inner);
    return std::log(std::abs(Eigen::PartialPivLU<MatC>(G).determinant()));
  };
  return -potential_hessian_fd(logdet, z, h_outer);
}

// ---- fundamental form over parameter families ----

// Assemble psi = Tr(dP [P, dP]) over a sampled family and measure |d psi|.
struct FundamentalFormReport {
  double dpsi_sup = 0;              // sup over the interior margin
  double alt_expression_factor = 0; // measured ratio against 2 Tr(P dP ^ dP)
};

inline FundamentalFormReport fundamental_form_closure(
    const std::function<MatC(const VecR&)>& family, int params, int nodes_per_axis,
    double half_width = 0.5, int margin = 2) {
  if (params < 3)
    throw std::invalid_argument("fundamental_form_closure: need at least 3 parameters for d(psi)");
  std::vector<std::array<double, 2>> box(params, {-half_width, half_width});
  std::vector<int> shape(params, nodes_per_axis);
  GridField<MatC> pf(box, shape, family(VecR::Zero(params)));
  for (std::int64_t i = 0; i < pf.node_count(); ++i) pf.flat(i) = family(pf.coords(pf.unflatten(i)));

  GridField<ExteriorForm> psi(box, shape, scalar_form(params, 2));
  GridField<ExteriorForm> psi_alt = psi;
  for (std::int64_t i = 0; i < pf.node_count(); ++i) {
    auto idx = pf.unflatten(i);
    const MatC& P = pf.flat(i);
    std::vector<MatC> D(params);
    for (int a = 0; a < params; ++a) D[a] = pf.partial(idx, a);
    ExteriorForm w = scalar_form(params, 2);
    ExteriorForm w2 = w;
    for (int a = 0; a < params; ++a)
      for (int b = a + 1; b < params; ++b) {
        MatC com = P * D[b] - D[b] * P;
        MatC com_a = P * D[a] - D[a] * P;
        cplx val = (D[a] * com).trace() - (D[b] * com_a).trace();
        w.set({a, b}, val);
        cplx alt = 2.0 * ((P * D[a] * D[b]).trace() - (P * D[b] * D[a]).trace());
        w2.set({a, b}, alt);
      }
    psi.flat(i) = w;
    psi_alt.flat(i) = w2;
  }

  FundamentalFormReport rep;
  // measured proportionality against the second expression
  double best = 0;
  for (std::int64_t i = 0; i < psi.node_count(); ++i) {
    if (!psi.is_interior(psi.unflatten(i), margin)) continue;
    for (std::int64_t c = 0; c < psi.flat(i).size(); ++c) {
      cplx alt = psi_alt.flat(i)[c];
      if (std::abs(alt) > best) {
        best = std::abs(alt);
        rep.alt_expression_factor = (psi.flat(i)[c] / alt).real();
      }
    }
  }
  auto dpsi = exterior_derivative(psi);
  rep.dpsi_sup = dpsi.sup_norm([](const ExteriorForm& f) { return f.sup_norm(); }, margin);
  return rep;
}

}  // namespace geomlab::projgeo
