// Numerical d-bar solvers: the Cauchy transform g with dg/dzbar = f, the
// Neumann gauge iteration producing G with A = G^{-1} dG/dzbar under a
// contraction bound K < 1/2, and the two-variable recursion (inverse gauge
// transformation followed by a correction solve in the second variable).
//
// Quadrature: the kernel 1/(xi - z) is integrated exactly over every source
// cell (corner antiderivative of the rectangle integral), so the transform
// is the exact integral of the piecewise-constant interpolant. The cell
// containing the target integrates to zero by symmetry.
#pragma once

#include <geomlab/core.hpp>
#include <geomlab/grid.hpp>

#include <cmath>
#include <memory>
#include <vector>

namespace geomlab::dbar {

struct ContractionFailure : std::runtime_error {
  double k_estimate;
  explicit ContractionFailure(double k)
      : std::runtime_error("gauge_solve: contraction bound K >= 1/2 (K = " + std::to_string(k) + ")"),
        k_estimate(k) {}
};

struct CompatibilityViolation : std::runtime_error {
  double residual;
  explicit CompatibilityViolation(double r)
      : std::runtime_error("multivariable_solve: compatibility residual " + std::to_string(r)),
        residual(r) {}
};

// Matrix-valued function on a uniform cell-centered grid over a square
// domain in C.
struct ComplexGridFunction {
  double x0 = 0, y0 = 0;  // first node
  double h = 0;           // spacing, equal in both axes
  int nx = 0, ny = 0;
  int N = 1;
  std::vector<MatC> v;  // index iy * nx + ix

  static ComplexGridFunction zeros(double radius, int n, int N) {
    ComplexGridFunction f;
    f.h = 2 * radius / n;
    f.x0 = -radius + f.h / 2;
    f.y0 = -radius + f.h / 2;
    f.nx = f.ny = n;
    f.N = N;
    f.v.assign(static_cast<std::size_t>(n) * n, MatC::Zero(N, N));
    return f;
  }

  cplx z(int ix, int iy) const { return {x0 + ix * h, y0 + iy * h}; }
  MatC& at(int ix, int iy) { return v[static_cast<std::size_t>(iy) * nx + ix]; }
  const MatC& at(int ix, int iy) const { return v[static_cast<std::size_t>(iy) * nx + ix]; }
  double radius() const { return 0.5 * h * std::max(nx, ny); }
  cplx center() const { return {x0 + (nx - 1) * h / 2, y0 + (ny - 1) * h / 2}; }

  template <class F>
  void fill(F&& fn) {
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix) at(ix, iy) = fn(z(ix, iy));
  }

  void check_finite() const {
    if (v.empty()) throw std::invalid_argument("dbar: empty domain");
    for (const auto& m : v)
      if (!m.allFinite()) throw std::invalid_argument("dbar: non-finite input value");
  }

  double sup_norm() const {
    double s = 0;
    for (const auto& m : v) s = std::max(s, m.template lpNorm<Eigen::Infinity>());
    return s;
  }
};

// Smooth radial bump: 1 on |z| <= plateau, 0 outside support, quintic
// smoothstep between.
struct CauchyQuadrature {
  enum class Rule { cell_exclusion, exact_cells } rule = Rule::exact_cells;
  double plateau_fraction = 0.6;
  double support_fraction = 0.95;

  double chi(const cplx& z, double domain_radius) const {
    double r = std::abs(z);
    double r1 = plateau_fraction * domain_radius, r2 = support_fraction * domain_radius;
    if (r <= r1) return 1.0;
    if (r >= r2) return 0.0;
    double s = (r2 - r) / (r2 - r1);
    return s * s * s * (10 + s * (-15 + 6 * s));
  }
};

namespace detail {

// integral of 1/(u+iv) over [a1,a2] x [b1,b2] via F(w) = w log w - w,
// splitting rectangles that straddle the negative real axis.
inline cplx rect_kernel_integral(double a1, double a2, double b1, double b2) {
  if (b1 < 0 && b2 > 0 && a1 < 0)
    return rect_kernel_integral(a1, a2, b1, 0) + rect_kernel_integral(a1, a2, 0, b2);
  bool lower = b1 < 0 || (b1 == 0 && b2 <= 0);
  auto F = [lower](double u, double v) -> cplx {
    if (u == 0 && v == 0) return {0, 0};
    double r = std::hypot(u, v);
    double arg = std::atan2(v, u);
    if (v == 0 && u < 0 && lower) arg = -arg;  // approach the cut from below
    cplx w(u, v);
    cplx logw(std::log(r), arg);
    return w * logw - w;
  };
  cplx s = F(a2, b2) - F(a2, b1) - F(a1, b2) + F(a1, b1);
  return cplx(0, -1) * s;
}

// Translation-invariant table of per-cell kernel integrals for source cells
// at offset (dx, dy) * h from the target.
class KernelTable {
 public:
  KernelTable(int nx, int ny, double h, CauchyQuadrature::Rule rule) : nx_(nx), ny_(ny) {
    w_.assign(static_cast<std::size_t>(2 * ny - 1) * (2 * nx - 1), cplx(0, 0));
    for (int dy = -(ny - 1); dy <= ny - 1; ++dy)
      for (int dx = -(nx - 1); dx <= nx - 1; ++dx) {
        cplx val;
        if (dx == 0 && dy == 0) {
          val = 0;  // odd kernel over a centered square
        } else if (rule == CauchyQuadrature::Rule::exact_cells) {
          val = rect_kernel_integral(dx * h - h / 2, dx * h + h / 2, dy * h - h / 2, dy * h + h / 2);
        } else {
          val = h * h / cplx(dx * h, dy * h);
        }
        (*this)(dx, dy) = val;
      }
  }

  cplx& operator()(int dx, int dy) {
    return w_[static_cast<std::size_t>(dy + ny_ - 1) * (2 * nx_ - 1) + (dx + nx_ - 1)];
  }
  const cplx& operator()(int dx, int dy) const {
    return w_[static_cast<std::size_t>(dy + ny_ - 1) * (2 * nx_ - 1) + (dx + nx_ - 1)];
  }

  // dst_j = -(1/pi) sum_k src_k W(k - j), per scalar plane
  void convolve(const std::vector<cplx>& src, std::vector<cplx>& dst) const {
    const double c = -1.0 / M_PI;
    dst.assign(src.size(), cplx(0, 0));
    for (int jy = 0; jy < ny_; ++jy)
      for (int ky = 0; ky < ny_; ++ky) {
        const cplx* wrow = &w_[static_cast<std::size_t>(ky - jy + ny_ - 1) * (2 * nx_ - 1) + (nx_ - 1)];
        const cplx* srow = &src[static_cast<std::size_t>(ky) * nx_];
        cplx* drow = &dst[static_cast<std::size_t>(jy) * nx_];
        for (int jx = 0; jx < nx_; ++jx) {
          cplx acc(0, 0);
          const cplx* woff = wrow - jx;
          for (int kx = 0; kx < nx_; ++kx) acc += srow[kx] * woff[kx];
          drow[jx] += c * acc;
        }
      }
  }

  // max_j (1/pi) sum_k m_k |W(k - j)| for a nonnegative scalar field m
  double bound(const std::vector<double>& m) const {
    double best = 0;
    for (int jy = 0; jy < ny_; ++jy)
      for (int jx = 0; jx < nx_; ++jx) {
        double acc = 0;
        for (int ky = 0; ky < ny_; ++ky) {
          const cplx* wrow = &w_[static_cast<std::size_t>(ky - jy + ny_ - 1) * (2 * nx_ - 1) + (nx_ - 1) - jx];
          const double* mrow = &m[static_cast<std::size_t>(ky) * nx_];
          for (int kx = 0; kx < nx_; ++kx) acc += mrow[kx] * std::abs(wrow[kx]);
        }
        best = std::max(best, acc / M_PI);
      }
    return best;
  }

 private:
  int nx_, ny_;
  std::vector<cplx> w_;
};

inline double spectral_norm(const MatC& m) {
  if (m.rows() == 1) return std::abs(m(0, 0));
  return m.jacobiSvd().singularValues()(0);
}

}  // namespace detail

// g(z) = (2 pi i)^{-1} int f(xi)/(xi - z) dxi ^ dxibar, so dg/dzbar = f.
inline ComplexGridFunction cauchy_transform(const ComplexGridFunction& f, const CauchyQuadrature& q) {
  f.check_finite();
  detail::KernelTable table(f.nx, f.ny, f.h, q.rule);
  ComplexGridFunction g = f;
  const std::size_t nodes = f.v.size();
  std::vector<cplx> src(nodes), dst(nodes);
  for (int a = 0; a < f.N; ++a)
    for (int b = 0; b < f.N; ++b) {
      for (std::size_t k = 0; k < nodes; ++k) src[k] = f.v[k](a, b);
      table.convolve(src, dst);
      for (std::size_t k = 0; k < nodes; ++k) g.v[k](a, b) = dst[k];
    }
  return g;
}

// dbar by central differences; one-sided second order on faces.
inline ComplexGridFunction dbar_fd(const ComplexGridFunction& g) {
  ComplexGridFunction d = g;
  auto dx = [&](int ix, int iy) -> MatC {
    if (ix > 0 && ix < g.nx - 1) return (g.at(ix + 1, iy) - g.at(ix - 1, iy)) / (2 * g.h);
    if (ix == 0) return (-3 * g.at(0, iy) + 4 * g.at(1, iy) - g.at(2, iy)) / (2 * g.h);
    return (3 * g.at(ix, iy) - 4 * g.at(ix - 1, iy) + g.at(ix - 2, iy)) / (2 * g.h);
  };
  auto dy = [&](int ix, int iy) -> MatC {
    if (iy > 0 && iy < g.ny - 1) return (g.at(ix, iy + 1) - g.at(ix, iy - 1)) / (2 * g.h);
    if (iy == 0) return (-3 * g.at(ix, 0) + 4 * g.at(ix, 1) - g.at(ix, 2)) / (2 * g.h);
    return (3 * g.at(ix, iy) - 4 * g.at(ix, iy - 1) + g.at(ix, iy - 2)) / (2 * g.h);
  };
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) d.at(ix, iy) = 0.5 * (dx(ix, iy) + kI * dy(ix, iy));
  return d;
}

struct GaugeSolveResult {
  ComplexGridFunction G;
  std::vector<double> iterate_norms;  // sup spectral norm of F_n, n >= 1
  double k_bound = 0;                 // exact discrete contraction bound
  int shrinks = 0;
};

namespace detail {

inline ComplexGridFunction central_window(const ComplexGridFunction& f) {
  int nx = f.nx / 2, ny = f.ny / 2;
  ComplexGridFunction g;
  g.h = f.h;
  g.nx = nx;
  g.ny = ny;
  g.N = f.N;
  int ox = f.nx / 4, oy = f.ny / 4;
  g.x0 = f.x0 + ox * f.h;
  g.y0 = f.y0 + oy * f.h;
  g.v.resize(static_cast<std::size_t>(nx) * ny);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) g.at(ix, iy) = f.at(ix + ox, iy + oy);
  return g;
}

}  // namespace detail

inline GaugeSolveResult gauge_solve(ComplexGridFunction A, const CauchyQuadrature& q,
                                    double k_target = 0.5, int max_shrink = 3,
                                    double stop_norm = 1e-12, int max_iter = 60) {
  A.check_finite();
  GaugeSolveResult res;
  detail::KernelTable* table = nullptr;
  std::vector<double> mass;
  std::unique_ptr<detail::KernelTable> owned;

  for (int attempt = 0;; ++attempt) {
    owned = std::make_unique<detail::KernelTable>(A.nx, A.ny, A.h, q.rule);
    table = owned.get();
    const double domain_radius = A.radius();
    mass.resize(A.v.size());
    for (int iy = 0; iy < A.ny; ++iy)
      for (int ix = 0; ix < A.nx; ++ix)
        mass[static_cast<std::size_t>(iy) * A.nx + ix] =
            detail::spectral_norm(A.at(ix, iy)) * q.chi(A.z(ix, iy) - A.center(), domain_radius);
    res.k_bound = table->bound(mass);
    if (res.k_bound < k_target && res.k_bound < 0.5) break;
    // refuse to shrink below a window where the discrete bound is meaningful
    if (attempt >= max_shrink || A.nx < 16 || A.ny < 16) throw ContractionFailure(res.k_bound);
    A = detail::central_window(A);
    ++res.shrinks;
  }

  const double domain_radius = A.radius();
  ComplexGridFunction U = A;  // A * chi
  for (int iy = 0; iy < A.ny; ++iy)
    for (int ix = 0; ix < A.nx; ++ix) U.at(ix, iy) *= q.chi(A.z(ix, iy) - A.center(), domain_radius);

  const std::size_t nodes = A.v.size();
  ComplexGridFunction F = A, G = A, P = A;
  for (auto& m : F.v) m = MatC::Identity(A.N, A.N);
  for (auto& m : G.v) m = MatC::Identity(A.N, A.N);

  std::vector<cplx> src(nodes), dst(nodes);
  int stall = 0;
  for (int n = 1; n <= max_iter; ++n) {
    for (std::size_t k = 0; k < nodes; ++k) P.v[k] = F.v[k] * U.v[k];
    for (int a = 0; a < A.N; ++a)
      for (int b = 0; b < A.N; ++b) {
        for (std::size_t k = 0; k < nodes; ++k) src[k] = P.v[k](a, b);
        table->convolve(src, dst);
        for (std::size_t k = 0; k < nodes; ++k) F.v[k](a, b) = dst[k];
      }
    double norm = 0;
    for (const auto& m : F.v) norm = std::max(norm, detail::spectral_norm(m));
    double prev = res.iterate_norms.empty() ? 1.0 : res.iterate_norms.back();
    res.iterate_norms.push_back(norm);
    for (std::size_t k = 0; k < nodes; ++k) G.v[k] += F.v[k];
    if (norm < stop_norm) break;
    stall = (norm >= 0.5 * prev) ? stall + 1 : 0;
    if (stall >= 5) throw ContractionFailure(norm / prev);
  }

  for (const auto& m : G.v) {
    Eigen::PartialPivLU<MatC> lu(m);
    if (std::abs(lu.determinant()) == 0.0) throw std::runtime_error("gauge_solve: singular G");
  }
  res.G = std::move(G);
  return res;
}

// sup of |dG/dzbar - G A| over plateau nodes (one-node margin for the
// central stencil).
inline double gauge_residual(const ComplexGridFunction& G, const ComplexGridFunction& A,
                             const CauchyQuadrature& q) {
  ComplexGridFunction d = dbar_fd(G);
  const double domain_radius = A.radius();
  double worst = 0;
  for (int iy = 1; iy + 1 < G.ny; ++iy)
    for (int ix = 1; ix + 1 < G.nx; ++ix) {
      if (q.chi(G.z(ix, iy) - G.center(), domain_radius) < 1.0) continue;
      MatC r = d.at(ix, iy) - G.at(ix, iy) * A.at(ix, iy);
      worst = std::max(worst, r.template lpNorm<Eigen::Infinity>());
    }
  return worst;
}

// ---- two complex variables ----

// Fields over a tensor grid in C^2: an outer grid in z2, each entry a field
// over the z1 plane. Geometry shared across slices.
struct ComplexGridFunction2 {
  ComplexGridFunction geom1;  // geometry prototype for z1 slices (values unused)
  ComplexGridFunction geom2;  // geometry prototype for z2 slices
  int N = 1;
  // index: ((i2y * n2x + i2x) * n1y + i1y) * n1x + i1x
  std::vector<MatC> v;

  static ComplexGridFunction2 zeros(double r1, int n1, double r2, int n2, int N) {
    ComplexGridFunction2 f;
    f.geom1 = ComplexGridFunction::zeros(r1, n1, 1);
    f.geom2 = ComplexGridFunction::zeros(r2, n2, 1);
    f.N = N;
    f.v.assign(static_cast<std::size_t>(n1) * n1 * n2 * n2, MatC::Zero(N, N));
    return f;
  }

  std::size_t idx(int i1x, int i1y, int i2x, int i2y) const {
    return ((static_cast<std::size_t>(i2y) * geom2.nx + i2x) * geom1.ny + i1y) * geom1.nx + i1x;
  }
  MatC& at(int i1x, int i1y, int i2x, int i2y) { return v[idx(i1x, i1y, i2x, i2y)]; }
  const MatC& at(int i1x, int i1y, int i2x, int i2y) const { return v[idx(i1x, i1y, i2x, i2y)]; }

  template <class F>
  void fill(F&& fn) {
    for (int i2y = 0; i2y < geom2.ny; ++i2y)
      for (int i2x = 0; i2x < geom2.nx; ++i2x)
        for (int i1y = 0; i1y < geom1.ny; ++i1y)
          for (int i1x = 0; i1x < geom1.nx; ++i1x)
            at(i1x, i1y, i2x, i2y) = fn(geom1.z(i1x, i1y), geom2.z(i2x, i2y));
  }

  ComplexGridFunction slice1(int i2x, int i2y) const {  // field over z1 at fixed z2
    ComplexGridFunction s = geom1;
    s.N = N;
    s.v.resize(static_cast<std::size_t>(geom1.nx) * geom1.ny);
    for (int i1y = 0; i1y < geom1.ny; ++i1y)
      for (int i1x = 0; i1x < geom1.nx; ++i1x) s.at(i1x, i1y) = at(i1x, i1y, i2x, i2y);
    return s;
  }
  ComplexGridFunction slice2(int i1x, int i1y) const {  // field over z2 at fixed z1
    ComplexGridFunction s = geom2;
    s.N = N;
    s.v.resize(static_cast<std::size_t>(geom2.nx) * geom2.ny);
    for (int i2y = 0; i2y < geom2.ny; ++i2y)
      for (int i2x = 0; i2x < geom2.nx; ++i2x) s.at(i2x, i2y) = at(i1x, i1y, i2x, i2y);
    return s;
  }
  void set_slice1(int i2x, int i2y, const ComplexGridFunction& s) {
    for (int i1y = 0; i1y < geom1.ny; ++i1y)
      for (int i1x = 0; i1x < geom1.nx; ++i1x) at(i1x, i1y, i2x, i2y) = s.at(i1x, i1y);
  }
  void set_slice2(int i1x, int i1y, const ComplexGridFunction& s) {
    for (int i2y = 0; i2y < geom2.ny; ++i2y)
      for (int i2x = 0; i2x < geom2.nx; ++i2x) at(i1x, i1y, i2x, i2y) = s.at(i2x, i2y);
  }
};

// max residual of the compatibility condition
// dA2/dz1bar - dA1/dz2bar + [A1, A2] over interior nodes.
inline double compatibility_residual(const ComplexGridFunction2& a1, const ComplexGridFunction2& a2) {
  double worst = 0;
  const auto& g1 = a1.geom1;
  const auto& g2 = a1.geom2;
  for (int i2y = 1; i2y + 1 < g2.ny; ++i2y)
    for (int i2x = 1; i2x + 1 < g2.nx; ++i2x)
      for (int i1y = 1; i1y + 1 < g1.ny; ++i1y)
        for (int i1x = 1; i1x + 1 < g1.nx; ++i1x) {
          MatC d1a2 = 0.5 * ((a2.at(i1x + 1, i1y, i2x, i2y) - a2.at(i1x - 1, i1y, i2x, i2y)) / (2 * g1.h) +
                             kI * (a2.at(i1x, i1y + 1, i2x, i2y) - a2.at(i1x, i1y - 1, i2x, i2y)) / (2 * g1.h));
          MatC d2a1 = 0.5 * ((a1.at(i1x, i1y, i2x + 1, i2y) - a1.at(i1x, i1y, i2x - 1, i2y)) / (2 * g2.h) +
                             kI * (a1.at(i1x, i1y, i2x, i2y + 1) - a1.at(i1x, i1y, i2x, i2y - 1)) / (2 * g2.h));
          const MatC& A1 = a1.at(i1x, i1y, i2x, i2y);
          const MatC& A2 = a2.at(i1x, i1y, i2x, i2y);
          MatC r = d1a2 - d2a1 + A1 * A2 - A2 * A1;
          worst = std::max(worst, r.template lpNorm<Eigen::Infinity>());
        }
  return worst;
}

// Solve dG/dz_alpha_bar = G A_alpha for alpha = 1, 2 by the recursion:
// solve in z1 per z2 slice, gauge-transform A2 into A2' (holomorphic in z1
// when compatibility holds), then solve in z2 per z1 node.
inline ComplexGridFunction2 multivariable_solve(const ComplexGridFunction2& a1,
                                                const ComplexGridFunction2& a2,
                                                const CauchyQuadrature& q, double tol_compat = -1) {
  const auto& g1 = a1.geom1;
  const auto& g2 = a1.geom2;
  if (tol_compat < 0) tol_compat = 10 * std::max(g1.h, g2.h);
  double compat = compatibility_residual(a1, a2);
  if (compat > tol_compat) throw CompatibilityViolation(compat);

  ComplexGridFunction2 gt = a1;  // Gtilde
  for (int i2y = 0; i2y < g2.ny; ++i2y)
    for (int i2x = 0; i2x < g2.nx; ++i2x) {
      auto res = gauge_solve(a1.slice1(i2x, i2y), q, 0.5, 0);
      gt.set_slice1(i2x, i2y, res.G);
    }

  // inverse gauge transformation: A2' = Gt A2 Gt^{-1} - (d2bar Gt) Gt^{-1}
  ComplexGridFunction2 a2p = a2;
  for (int i2y = 0; i2y < g2.ny; ++i2y)
    for (int i2x = 0; i2x < g2.nx; ++i2x)
      for (int i1y = 0; i1y < g1.ny; ++i1y)
        for (int i1x = 0; i1x < g1.nx; ++i1x) {
          auto d2 = [&](int dx, int dy) { return gt.at(i1x, i1y, i2x + dx, i2y + dy); };
          MatC dgx, dgy;
          if (i2x > 0 && i2x < g2.nx - 1)
            dgx = (d2(1, 0) - d2(-1, 0)) / (2 * g2.h);
          else if (i2x == 0)
            dgx = (-3 * d2(0, 0) + 4 * d2(1, 0) - d2(2, 0)) / (2 * g2.h);
          else
            dgx = (3 * d2(0, 0) - 4 * d2(-1, 0) + d2(-2, 0)) / (2 * g2.h);
          if (i2y > 0 && i2y < g2.ny - 1)
            dgy = (d2(0, 1) - d2(0, -1)) / (2 * g2.h);
          else if (i2y == 0)
            dgy = (-3 * d2(0, 0) + 4 * d2(0, 1) - d2(0, 2)) / (2 * g2.h);
          else
            dgy = (3 * d2(0, 0) - 4 * d2(0, -1) + d2(0, -2)) / (2 * g2.h);
          MatC dbar2_gt = 0.5 * (dgx + kI * dgy);
          const MatC& G = gt.at(i1x, i1y, i2x, i2y);
          MatC ginv = G.inverse();
          a2p.at(i1x, i1y, i2x, i2y) = G * a2.at(i1x, i1y, i2x, i2y) * ginv - dbar2_gt * ginv;
        }

  ComplexGridFunction2 out = a1;
  for (int i1y = 0; i1y < g1.ny; ++i1y)
    for (int i1x = 0; i1x < g1.nx; ++i1x) {
      auto res = gauge_solve(a2p.slice2(i1x, i1y), q, 0.5, 0);
      // G = G' Gtilde
      ComplexGridFunction combined = res.G;
      for (int i2y = 0; i2y < g2.ny; ++i2y)
        for (int i2x = 0; i2x < g2.nx; ++i2x)
          combined.at(i2x, i2y) = res.G.at(i2x, i2y) * gt.at(i1x, i1y, i2x, i2y);
      out.set_slice2(i1x, i1y, combined);
    }
  return out;
}

// residuals |dG/dz_alpha_bar - G A_alpha| over the joint plateau interior
inline std::pair<double, double> multivariable_residuals(const ComplexGridFunction2& g,
                                                         const ComplexGridFunction2& a1,
                                                         const ComplexGridFunction2& a2,
                                                         const CauchyQuadrature& q) {
  const auto& g1 = g.geom1;
  const auto& g2 = g.geom2;
  double w1 = 0, w2 = 0;
  for (int i2y = 1; i2y + 1 < g2.ny; ++i2y)
    for (int i2x = 1; i2x + 1 < g2.nx; ++i2x) {
      if (q.chi(g2.z(i2x, i2y) - g2.center(), g2.radius()) < 1.0) continue;
      for (int i1y = 1; i1y + 1 < g1.ny; ++i1y)
        for (int i1x = 1; i1x + 1 < g1.nx; ++i1x) {
          if (q.chi(g1.z(i1x, i1y) - g1.center(), g1.radius()) < 1.0) continue;
          MatC d1 = 0.5 * ((g.at(i1x + 1, i1y, i2x, i2y) - g.at(i1x - 1, i1y, i2x, i2y)) / (2 * g1.h) +
                           kI * (g.at(i1x, i1y + 1, i2x, i2y) - g.at(i1x, i1y - 1, i2x, i2y)) / (2 * g1.h));
          MatC d2 = 0.5 * ((g.at(i1x, i1y, i2x + 1, i2y) - g.at(i1x, i1y, i2x - 1, i2y)) / (2 * g2.h) +
                           kI * (g.at(i1x, i1y, i2x, i2y + 1) - g.at(i1x, i1y, i2x, i2y - 1)) / (2 * g2.h));
          const MatC& G = g.at(i1x, i1y, i2x, i2y);
          w1 = std::max(w1, (d1 - G * a1.at(i1x, i1y, i2x, i2y)).template lpNorm<Eigen::Infinity>());
          w2 = std::max(w2, (d2 - G * a2.at(i1x, i1y, i2x, i2y)).template lpNorm<Eigen::Infinity>());
        }
    }
  return {w1, w2};
}

}  // namespace geomlab::dbar
