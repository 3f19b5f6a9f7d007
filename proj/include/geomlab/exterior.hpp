// Exterior algebra over R^n with complexified coefficients, Hodge duality
// against a diagonal frame metric, and the p-form inner product used by the
// gauge-field action. Coefficients may be complex scalars or complex
// matrices (algebra-valued forms); wedge multiplies coefficients in order.
#pragma once

#include <geomlab/core.hpp>
#include <geomlab/multiindex.hpp>

#include <functional>
#include <vector>

namespace geomlab {

namespace coeff {

inline cplx zero_like(const cplx&) { return cplx(0, 0); }
inline MatC zero_like(const MatC& m) { return MatC::Zero(m.rows(), m.cols()); }
inline cplx conj(const cplx& c) { return std::conj(c); }
inline MatC conj(const MatC& m) { return m.conjugate(); }
inline double norm(const cplx& c) { return std::abs(c); }
inline double norm(const MatC& m) { return m.norm(); }

}  // namespace coeff

// Diagonal pseudo-Euclidean metric on the frame: s entries +1 then n-s
// entries -1, plus an orientation sign for the volume form.
struct FrameMetric {
  int n = 0;
  int positive = 0;      // number of +1 entries
  int orientation = 1;   // sign of (e_1,...,e_n)

  static FrameMetric euclidean(int n) { return {n, n, 1}; }
  static FrameMetric lorentzian(int n) { return {n, 1, 1}; }  // diag(+,-,...,-)

  double eta(int i) const { return i < positive ? 1.0 : -1.0; }
  double eta_product(const Index& idx) const {
    double p = 1.0;
    for (int i : idx) p *= eta(i);
    return p;
  }
};

template <class Coeff>
class Form {
 public:
  Form() = default;
  Form(int dim, int degree, const Coeff& proto)
      : dim_(dim), degree_(degree), proto_(coeff::zero_like(proto)),
        coeffs_(binom(dim, degree), coeff::zero_like(proto)) {}

  static Form zero(int dim, int degree, const Coeff& proto) { return Form(dim, degree, proto); }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  std::int64_t size() const { return static_cast<std::int64_t>(coeffs_.size()); }

  const Coeff& operator[](std::int64_t i) const { return coeffs_[i]; }
  Coeff& operator[](std::int64_t i) { return coeffs_[i]; }

  const Coeff& at(const Index& idx) const { return coeffs_[subset_rank(idx, dim_)]; }
  void set(const Index& idx, const Coeff& v) { coeffs_[subset_rank(idx, dim_)] = v; }

  const Coeff& proto() const { return proto_; }

  Form& operator+=(const Form& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_same(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Form operator+(const Form& o) const { Form r = *this; r += o; return r; }
  Form operator-(const Form& o) const { Form r = *this; r -= o; return r; }
  Form operator*(const cplx& s) const {
    Form r = *this;
    for (auto& c : r.coeffs_) c = c * s;
    return r;
  }
  Form operator-() const { return *this * cplx(-1, 0); }

  Form conjugate() const {
    Form r = *this;
    for (auto& c : r.coeffs_) c = coeff::conj(c);
    return r;
  }

  double sup_norm() const {
    double m = 0;
    for (const auto& c : coeffs_) m = std::max(m, coeff::norm(c));
    return m;
  }

 private:
  void check_same(const Form& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_)
      throw DimensionMismatch("form dimension/degree mismatch");
  }

  int dim_ = 0;
  int degree_ = 0;
  Coeff proto_{};
  std::vector<Coeff> coeffs_;
};

using ExteriorForm = Form<cplx>;   // scalar-valued
using AlgebraForm = Form<MatC>;    // Lie-algebra-valued

inline ExteriorForm scalar_form(int dim, int degree) { return ExteriorForm(dim, degree, cplx()); }

inline ExteriorForm basis_form(int dim, const Index& idx) {
  ExteriorForm f(dim, static_cast<int>(idx.size()), cplx());
  f.set(idx, cplx(1, 0));
  return f;
}

template <class Coeff>
Form<Coeff> wedge(const Form<Coeff>& a, const Form<Coeff>& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge: ambient dimension mismatch");
  if (a.degree() + b.degree() > a.dim())
    throw DimensionMismatch("wedge: degree exceeds ambient dimension");
  Coeff proto = coeff::zero_like(a.size() ? a[0] : a.proto());
  Form<Coeff> out(a.dim(), a.degree() + b.degree(), proto);
  const auto ia = all_subsets(a.dim(), a.degree());
  const auto ib = all_subsets(b.dim(), b.degree());
  Index merged;
  for (std::int64_t p = 0; p < a.size(); ++p) {
    if (coeff::norm(a[p]) == 0.0) continue;
    for (std::int64_t q = 0; q < b.size(); ++q) {
      int sign = merge_sign(ia[p], ib[q], merged);
      if (sign == 0) continue;
      out[subset_rank(merged, a.dim())] += double(sign) * (a[p] * b[q]);
    }
  }
  return out;
}

// Hodge dual fixed by the defining property a ^ *b = (a,b) vol, with
// (e^I, e^J) = delta_IJ prod eta and vol = e^1 ^ ... ^ e^n for a positively
// oriented orthonormal frame.
template <class Coeff>
Form<Coeff> hodge_star(const Form<Coeff>& w, const FrameMetric& eta) {
  if (w.dim() != eta.n) throw DimensionMismatch("hodge_star: metric dimension mismatch");
  Coeff proto = coeff::zero_like(w.size() ? w[0] : w.proto());
  Form<Coeff> out(w.dim(), w.dim() - w.degree(), proto);
  const auto idx = all_subsets(w.dim(), w.degree());
  Index comp;
  for (std::int64_t p = 0; p < w.size(); ++p) {
    if (coeff::norm(w[p]) == 0.0) continue;
    int sign = complement_sign(idx[p], w.dim(), comp);
    double factor = sign * eta.eta_product(idx[p]) * eta.orientation;
    out[subset_rank(comp, w.dim())] += factor * w[p];
  }
  return out;
}

inline ExteriorForm volume_form(const FrameMetric& eta) {
  ExteriorForm one = scalar_form(eta.n, 0);
  one[0] = cplx(1, 0);
  return hodge_star(one, eta);
}

// Bilinear pairing (a,b) on p-forms: complex-bilinear extension of the frame
// metric, no conjugation.
inline cplx bilinear_pairing(const ExteriorForm& a, const ExteriorForm& b, const FrameMetric& eta) {
  if (a.dim() != b.dim() || a.degree() != b.degree())
    throw DimensionMismatch("bilinear_pairing: degree mismatch");
  const auto idx = all_subsets(a.dim(), a.degree());
  cplx s = 0;
  for (std::int64_t p = 0; p < a.size(); ++p) s += eta.eta_product(idx[p]) * a[p] * b[p];
  return s;
}

inline cplx hermitian_pairing(const ExteriorForm& a, const ExteriorForm& b, const FrameMetric& eta) {
  return bilinear_pairing(a.conjugate(), b, eta);
}

// Inner product of algebra-valued p-forms: (H,H') = 1/p! sum over components
// with all indices raised by eta and the algebra paired by k. Over increasing
// indices the 1/p! cancels against the p! equal unordered terms.
inline double form_inner_product(const AlgebraForm& h, const AlgebraForm& hp, const FrameMetric& eta,
                                 const std::function<double(const MatC&, const MatC&)>& k) {
  if (h.dim() != hp.dim() || h.degree() != hp.degree())
    throw DimensionMismatch("form_inner_product: degree mismatch");
  const auto idx = all_subsets(h.dim(), h.degree());
  double s = 0;
  for (std::int64_t p = 0; p < h.size(); ++p) s += eta.eta_product(idx[p]) * k(h[p], hp[p]);
  return s;
}

inline double form_inner_product(const ExteriorForm& h, const ExteriorForm& hp, const FrameMetric& eta) {
  return bilinear_pairing(h, hp, eta).real();
}

// k(E,F) = -Tr(EF), the invariant form used for anti-Hermitian structure
// algebras.
inline double minus_trace_form(const MatC& e, const MatC& f) { return -(e * f).trace().real(); }

}  // namespace geomlab
