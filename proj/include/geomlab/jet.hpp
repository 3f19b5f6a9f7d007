// Forward-mode truncated Taylor scalars ("jets") in NV variables up to a
// fixed order. Evaluating a closed-form fixture on jets yields its exact
// partial derivatives to that order, which keeps analytic-derivative paths
// free of hand-coded differentiation.
#pragma once

#include <geomlab/core.hpp>

#include <array>
#include <cmath>
#include <vector>

namespace geomlab {

namespace jetdet {
constexpr int nterms(int nv, int order) {
  // number of monomials of degree <= order in nv variables
  int total = 0;
  for (int d = 0; d <= order; ++d) {
    int c = 1;
    for (int i = 1; i <= d; ++i) c = c * (nv + i - 1) / i;
    total += c;
  }
  return total;
}
}  // namespace jetdet

// Monomial exponent tables per (NV, Order), built once.
template <int NV, int Order>
struct JetTable {
  static constexpr int N = jetdet::nterms(NV, Order);
  std::array<std::array<int, NV>, N> expo{};
  // product index table: prod[i][j] = index of expo[i]+expo[j], or -1 if the
  // degree exceeds Order
  std::vector<std::vector<int>> prod;

  JetTable() {
    int pos = 0;
    std::array<int, NV> cur{};
    // enumerate by total degree, lexicographic within a degree
    for (int d = 0; d <= Order; ++d) enumerate(d, 0, d, cur, pos);
    prod.assign(N, std::vector<int>(N, -1));
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        std::array<int, NV> s{};
        int deg = 0;
        for (int v = 0; v < NV; ++v) {
          s[v] = expo[i][v] + expo[j][v];
          deg += s[v];
        }
        if (deg <= Order) prod[i][j] = index_of(s);
      }
  }

  void enumerate(int remaining, int var, int, std::array<int, NV>& cur, int& pos) {
    if (var == NV - 1) {
      cur[var] = remaining;
      expo[pos++] = cur;
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[var] = e;
      enumerate(remaining - e, var + 1, 0, cur, pos);
    }
  }

  int index_of(const std::array<int, NV>& e) const {
    for (int i = 0; i < N; ++i)
      if (expo[i] == e) return i;
    return -1;
  }

  static const JetTable& instance() {
    static JetTable t;
    return t;
  }
};

template <class T, int NV, int Order>
class Jet {
 public:
  using Table = JetTable<NV, Order>;
  static constexpr int N = Table::N;

  Jet() { c_.fill(T{}); }
  Jet(const T& value) {  // NOLINT: implicit constant lift is intended
    c_.fill(T{});
    c_[0] = value;
  }

  static Jet variable(const T& value, int var) {
    Jet j(value);
    if constexpr (Order >= 1) {
      std::array<int, NV> e{};
      e[var] = 1;
      j.c_[Table::instance().index_of(e)] = T(1);
    }
    return j;
  }

  const T& value() const { return c_[0]; }

  // first partial d/dx_v
  T d1(int v) const {
    static_assert(Order >= 1);
    std::array<int, NV> e{};
    e[v] = 1;
    return c_[Table::instance().index_of(e)];
  }

  // second partial d^2/dx_a dx_b (symmetric)
  T d2(int a, int b) const {
    static_assert(Order >= 2);
    std::array<int, NV> e{};
    e[a] += 1;
    e[b] += 1;
    T coef = c_[Table::instance().index_of(e)];
    return (a == b) ? T(2) * coef : coef;
  }

  // third partial
  T d3(int a, int b, int c) const {
    static_assert(Order >= 3);
    std::array<int, NV> e{};
    e[a] += 1;
    e[b] += 1;
    e[c] += 1;
    double mult = 1;
    for (int v = 0; v < NV; ++v)
      for (int k = 2; k <= e[v]; ++k) mult *= k;
    return T(mult) * c_[Table::instance().index_of(e)];
  }

  Jet operator-() const {
    Jet r;
    for (int i = 0; i < N; ++i) r.c_[i] = -c_[i];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (int i = 0; i < N; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i < N; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const auto& tab = Table::instance();
    Jet r;
    for (int i = 0; i < N; ++i) {
      if (a.c_[i] == T{}) continue;
      for (int j = 0; j < N; ++j) {
        int k = tab.prod[i][j];
        if (k >= 0) r.c_[k] += a.c_[i] * b.c_[j];
      }
    }
    return r;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }

  // reciprocal by Taylor recursion: r * x = 1 truncated
  Jet reciprocal() const {
    Jet x = *this;
    T v0 = x.c_[0];
    Jet r(T(1) / v0);
    // Newton iteration r <- r(2 - x r); converges past Order in log2 steps
    for (int it = 0; it < 6; ++it) r = r * (Jet(T(2)) - x * r);
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

  friend Jet sqrt(const Jet& x) {
    using std::sqrt;
    T v0 = sqrt(x.c_[0]);
    Jet r(v0);
    Jet half(T(0.5));
    for (int it = 0; it < 6; ++it) r = half * (r + x / r);
    return r;
  }

 private:
  std::array<T, N> c_;
};

using Jet2 = Jet<double, 4, 2>;
using Jet3 = Jet<double, 4, 3>;
using CJet1 = Jet<cplx, 4, 1>;
using CJet2 = Jet<cplx, 4, 2>;
using CJet3 = Jet<cplx, 4, 3>;

// Small dense matrices with jet entries; enough linear algebra for frames
// and gauge fields (multiply, add, inverse via Gauss-Jordan, trace, exp).
template <class J>
class JetMat {
 public:
  JetMat() = default;
  JetMat(int rows, int cols) : rows_(rows), cols_(cols), d_(rows * cols) {}
  static JetMat identity(int n) {
    JetMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = J(1.0);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  J& operator()(int i, int j) { return d_[i * cols_ + j]; }
  const J& operator()(int i, int j) const { return d_[i * cols_ + j]; }

  JetMat operator+(const JetMat& o) const {
    JetMat r = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] += o.d_[i];
    return r;
  }
  JetMat operator-(const JetMat& o) const {
    JetMat r = *this;
    for (std::size_t i = 0; i < d_.size(); ++i) r.d_[i] -= o.d_[i];
    return r;
  }
  JetMat operator*(const JetMat& o) const {
    JetMat r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const J& a = (*this)(i, k);
        for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }
  JetMat operator*(const J& s) const {
    JetMat r = *this;
    for (auto& x : r.d_) x *= s;
    return r;
  }

  J trace() const {
    J t{};
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  JetMat inverse() const {
    int n = rows_;
    JetMat a = *this, r = identity(n);
    for (int col = 0; col < n; ++col) {
      // pivot by largest value magnitude
      int piv = col;
      double best = std::abs(value_mag(a(col, col)));
      for (int i = col + 1; i < n; ++i) {
        double m = std::abs(value_mag(a(i, col)));
        if (m > best) {
          best = m;
          piv = i;
        }
      }
      if (piv != col)
        for (int j = 0; j < n; ++j) {
          std::swap(a(col, j), a(piv, j));
          std::swap(r(col, j), r(piv, j));
        }
      J inv = a(col, col).reciprocal();
      for (int j = 0; j < n; ++j) {
        a(col, j) = a(col, j) * inv;
        r(col, j) = r(col, j) * inv;
      }
      for (int i = 0; i < n; ++i) {
        if (i == col) continue;
        J f = a(i, col);
        for (int j = 0; j < n; ++j) {
          a(i, j) -= f * a(col, j);
          r(i, j) -= f * r(col, j);
        }
      }
    }
    return r;
  }

  // exp by plain series; fixtures keep the norm O(1)
  JetMat exponential() const {
    int n = rows_;
    JetMat acc = identity(n), term = identity(n);
    for (int k = 1; k <= 24; ++k) {
      term = term * (*this);
      term = term * J(1.0 / k);
      acc = acc + term;
    }
    return acc;
  }

 private:
  static double value_mag(const J& j) {
    if constexpr (std::is_same_v<decltype(j.value()), const cplx&>)
      return std::abs(j.value());
    else
      return std::abs(static_cast<double>(j.value()));
  }

  int rows_ = 0, cols_ = 0;
  std::vector<J> d_;
};

}  // namespace geomlab
