// Uniform rectangular lattices of values (scalars, matrices, forms) with
// second-order finite differences and the numerical exterior derivative.
// A field may carry an analytic closure (value and first/second partials);
// differentiation prefers the closure when asked for the analytic scheme.
#pragma once

#include <geomlab/exterior.hpp>

#include <array>
#include <functional>
#include <numeric>
#include <vector>

#include <json.hpp>

namespace geomlab {

template <class T>
struct Closure {
  std::function<T(const VecR&)> value;
  std::function<T(const VecR&, int)> partial;             // d/dx_a, space axis a
  std::function<T(const VecR&, int, int)> second;         // d2/dx_a dx_b
  bool has_value() const { return static_cast<bool>(value); }
  bool has_partial() const { return static_cast<bool>(partial); }
  bool has_second() const { return static_cast<bool>(second); }
};

enum class DerivativeScheme { central, analytic };

template <class T>
class GridField {
 public:
  GridField() = default;
  GridField(std::vector<std::array<double, 2>> box, std::vector<int> shape, const T& proto)
      : box_(std::move(box)), shape_(std::move(shape)), proto_(proto) {
    if (box_.size() != shape_.size()) throw DimensionMismatch("grid: box/shape mismatch");
    std::int64_t total = 1;
    for (int s : shape_) {
      if (s < 1) throw DimensionMismatch("grid: empty axis");
      total *= s;
    }
    values_.assign(total, proto);
    axis_map_.resize(shape_.size());
    std::iota(axis_map_.begin(), axis_map_.end(), 0);
  }

  int grid_dims() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  const std::vector<std::array<double, 2>>& box() const { return box_; }
  std::int64_t node_count() const { return static_cast<std::int64_t>(values_.size()); }

  // Map grid axes onto space coordinates when the field lives in a higher
  // dimensional space but varies only along some axes.
  void set_axis_map(std::vector<int> m) { axis_map_ = std::move(m); }
  const std::vector<int>& axis_map() const { return axis_map_; }

  double spacing(int axis) const {
    if (shape_[axis] < 2) return 0.0;
    return (box_[axis][1] - box_[axis][0]) / (shape_[axis] - 1);
  }

  std::int64_t flat_index(const std::vector<int>& idx) const {
    std::int64_t f = 0;
    for (int a = 0; a < grid_dims(); ++a) f = f * shape_[a] + idx[a];
    return f;
  }

  std::vector<int> unflatten(std::int64_t f) const {
    std::vector<int> idx(grid_dims());
    for (int a = grid_dims() - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(f % shape_[a]);
      f /= shape_[a];
    }
    return idx;
  }

  VecR coords(const std::vector<int>& idx) const {
    VecR x(grid_dims());
    for (int a = 0; a < grid_dims(); ++a) x[a] = box_[a][0] + idx[a] * spacing(a);
    return x;
  }

  const T& at(const std::vector<int>& idx) const { return values_[flat_index(idx)]; }
  T& at(const std::vector<int>& idx) { return values_[flat_index(idx)]; }
  const T& flat(std::int64_t f) const { return values_[f]; }
  T& flat(std::int64_t f) { return values_[f]; }
  const std::vector<T>& values() const { return values_; }
  std::vector<T>& values() { return values_; }

  Closure<T>& closure() { return closure_; }
  const Closure<T>& closure() const { return closure_; }

  bool boundary_one_sided() const { return boundary_one_sided_; }
  void set_boundary_one_sided(bool b) { boundary_one_sided_ = b; }

  void fill_from_closure() {
    for (std::int64_t f = 0; f < node_count(); ++f) values_[f] = closure_.value(coords(unflatten(f)));
  }

  bool is_interior(const std::vector<int>& idx, int margin) const {
    for (int a = 0; a < grid_dims(); ++a)
      if (idx[a] < margin || idx[a] >= shape_[a] - margin) return false;
    return true;
  }

  template <class NormFn>
  double sup_norm(NormFn&& nrm, int margin = 0) const {
    double m = 0;
    for (std::int64_t f = 0; f < node_count(); ++f) {
      if (margin > 0 && !is_interior(unflatten(f), margin)) continue;
      m = std::max(m, nrm(values_[f]));
    }
    return m;
  }

  // Second-order partial along a grid axis: central in the interior,
  // one-sided three-point stencils on the faces.
  T partial(const std::vector<int>& idx, int axis) const {
    if (shape_[axis] < 3) throw DimensionMismatch("grid: need >= 3 nodes per axis for differences");
    const double h = spacing(axis);
    std::vector<int> a = idx, b = idx, c = idx;
    const int i = idx[axis];
    if (i > 0 && i < shape_[axis] - 1) {
      a[axis] = i + 1;
      b[axis] = i - 1;
      return (at(a) - at(b)) * (1.0 / (2 * h));
    }
    if (i == 0) {
      a[axis] = 0; b[axis] = 1; c[axis] = 2;
      return (at(a) * (-3.0) + at(b) * 4.0 - at(c)) * (1.0 / (2 * h));
    }
    a[axis] = i; b[axis] = i - 1; c[axis] = i - 2;
    return (at(a) * 3.0 - at(b) * 4.0 + at(c)) * (1.0 / (2 * h));
  }

  // Partial along a space coordinate; zero along coordinates the grid does
  // not sample (declared static axes).
  T partial_space(const std::vector<int>& idx, int space_axis) const {
    for (int a = 0; a < grid_dims(); ++a)
      if (axis_map_[a] == space_axis) return partial(idx, a);
    return coeff_zero();
  }

 private:
  T coeff_zero() const {
    T z = proto_;
    z = z * 0.0;
    return z;
  }

  std::vector<std::array<double, 2>> box_;
  std::vector<int> shape_;
  std::vector<int> axis_map_;
  T proto_{};
  std::vector<T> values_;
  Closure<T> closure_;
  bool boundary_one_sided_ = false;
};

// Numerical exterior derivative of a form-valued field. The form dimension
// may exceed the grid dimension; partials along unsampled coordinates vanish.
template <class Coeff>
GridField<Form<Coeff>> exterior_derivative(const GridField<Form<Coeff>>& field,
                                           DerivativeScheme scheme = DerivativeScheme::central) {
  const Form<Coeff>& proto = field.flat(0);
  const int n = proto.dim();
  const int p = proto.degree();
  if (p >= n)
    throw DimensionMismatch("exterior_derivative: input already has top degree");
  Form<Coeff> out_proto(n, p + 1, coeff::zero_like(proto.proto()));
  GridField<Form<Coeff>> out(field.box(), field.shape(), out_proto);
  out.set_axis_map(field.axis_map());

  const auto out_idx = all_subsets(n, p + 1);
  const bool analytic = scheme == DerivativeScheme::analytic;
  if (analytic && !field.closure().has_partial())
    throw std::invalid_argument("exterior_derivative: analytic scheme needs a partial closure");

  std::vector<Form<Coeff>> partials(n, proto);
  for (std::int64_t f = 0; f < field.node_count(); ++f) {
    const auto idx = field.unflatten(f);
    for (int a = 0; a < n; ++a) {
      if (analytic)
        partials[a] = field.closure().partial(field.coords(idx), a);
      else
        partials[a] = field.partial_space(idx, a);
    }
    Form<Coeff> val = out_proto;
    for (std::int64_t K = 0; K < val.size(); ++K) {
      const Index& k = out_idx[K];
      Coeff acc = coeff::zero_like(proto.proto());
      Index rest;
      for (std::size_t j = 0; j < k.size(); ++j) {
        rest = k;
        rest.erase(rest.begin() + j);
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        acc += sign * partials[k[j]].at(rest);
      }
      val[K] = acc;
    }
    out.flat(f) = val;
  }
  if (!analytic) out.set_boundary_one_sided(true);

  // Derive closures for the result so that a second analytic derivative
  // stays at closure accuracy.
  if (analytic) {
    auto cl = field.closure();
    auto assemble = [out_proto, out_idx](const std::vector<Form<Coeff>>& parts) {
      Form<Coeff> val = out_proto;
      for (std::int64_t K = 0; K < val.size(); ++K) {
        const Index& k = out_idx[K];
        Index rest;
        for (std::size_t j = 0; j < k.size(); ++j) {
          rest = k;
          rest.erase(rest.begin() + j);
          double sign = (j % 2 == 0) ? 1.0 : -1.0;
          val[K] += sign * parts[k[j]].at(rest);
        }
      }
      return val;
    };
    out.closure().value = [cl, assemble, n](const VecR& x) {
      std::vector<Form<Coeff>> parts;
      parts.reserve(n);
      for (int a = 0; a < n; ++a) parts.push_back(cl.partial(x, a));
      return assemble(parts);
    };
    if (cl.has_second()) {
      out.closure().partial = [cl, assemble, n](const VecR& x, int b) {
        std::vector<Form<Coeff>> parts;
        parts.reserve(n);
        for (int a = 0; a < n; ++a) parts.push_back(cl.second(x, a, b));
        return assemble(parts);
      };
    }
  }
  return out;
}

// ---- JSON serialization: {box, shape, degree, payload, values} ----

namespace detail {
inline void put_value(nlohmann::json& arr, double v) { arr.push_back(v); }
inline void put_value(nlohmann::json& arr, const cplx& v) { arr.push_back({v.real(), v.imag()}); }
inline void put_value(nlohmann::json& arr, const MatC& m) {
  nlohmann::json jm = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) jm.push_back({m(i, j).real(), m(i, j).imag()});
  arr.push_back(jm);
}
inline void put_value(nlohmann::json& arr, const ExteriorForm& f) {
  nlohmann::json jf = nlohmann::json::array();
  for (std::int64_t i = 0; i < f.size(); ++i) jf.push_back({f[i].real(), f[i].imag()});
  arr.push_back(jf);
}
inline const char* payload_kind(const double&) { return "scalar"; }
inline const char* payload_kind(const cplx&) { return "complex"; }
inline const char* payload_kind(const MatC&) { return "cmatrix"; }
inline const char* payload_kind(const ExteriorForm&) { return "form"; }
}  // namespace detail

template <class T>
nlohmann::json grid_to_json(const GridField<T>& g) {
  nlohmann::json j;
  j["box"] = nlohmann::json::array();
  for (auto& b : g.box()) j["box"].push_back({b[0], b[1]});
  j["shape"] = g.shape();
  j["payload"] = detail::payload_kind(g.flat(0));
  if constexpr (std::is_same_v<T, ExteriorForm>) {
    j["degree"] = g.flat(0).degree();
    j["space_dim"] = g.flat(0).dim();
  } else {
    j["degree"] = 0;
  }
  if constexpr (std::is_same_v<T, MatC>) j["matrix_size"] = {g.flat(0).rows(), g.flat(0).cols()};
  nlohmann::json vals = nlohmann::json::array();
  for (std::int64_t f = 0; f < g.node_count(); ++f) detail::put_value(vals, g.flat(f));
  j["values"] = std::move(vals);
  return j;
}

inline GridField<MatC> cmatrix_grid_from_json(const nlohmann::json& j) {
  std::vector<std::array<double, 2>> box;
  for (auto& b : j.at("box")) box.push_back({b[0].get<double>(), b[1].get<double>()});
  std::vector<int> shape = j.at("shape").get<std::vector<int>>();
  if (j.at("payload").get<std::string>() != "cmatrix")
    throw std::invalid_argument("grid json: expected cmatrix payload");
  auto msz = j.at("matrix_size");
  int rows = msz[0].get<int>(), cols = msz[1].get<int>();
  GridField<MatC> g(box, shape, MatC::Zero(rows, cols));
  const auto& vals = j.at("values");
  for (std::int64_t f = 0; f < g.node_count(); ++f) {
    MatC m(rows, cols);
    const auto& jm = vals.at(f);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const auto& e = jm.at(i * cols + k);
        m(i, k) = cplx(e[0].get<double>(), e[1].get<double>());
      }
    g.flat(f) = m;
  }
  return g;
}

}  // namespace geomlab
