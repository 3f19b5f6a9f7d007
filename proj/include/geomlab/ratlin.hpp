// Dense exact linear algebra over the rationals: reduced row echelon form,
// rank, nullspace and span membership. Sized for the small systems that
// arise from prolongations; no pivoting heuristics needed since arithmetic
// is exact.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace geomlab {

using Rat = mpq_class;

class RatMat {
 public:
  RatMat() = default;
  RatMat(std::int64_t rows, std::int64_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  Rat& operator()(std::int64_t i, std::int64_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::int64_t i, std::int64_t j) const { return data_[i * cols_ + j]; }

  RatMat transposed() const {
    RatMat t(cols_, rows_);
    for (std::int64_t i = 0; i < rows_; ++i)
      for (std::int64_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

 private:
  std::int64_t rows_ = 0, cols_ = 0;
  std::vector<Rat> data_;
};

struct Rref {
  RatMat mat;
  std::vector<std::int64_t> pivot_cols;
  std::int64_t rank() const { return static_cast<std::int64_t>(pivot_cols.size()); }
};

inline Rref rref(RatMat m) {
  Rref out;
  std::int64_t lead = 0;
  for (std::int64_t r = 0; r < m.rows() && lead < m.cols(); ++r) {
    std::int64_t pivot = -1;
    while (lead < m.cols()) {
      for (std::int64_t i = r; i < m.rows(); ++i)
        if (m(i, lead) != 0) {
          pivot = i;
          break;
        }
      if (pivot >= 0) break;
      ++lead;
    }
    if (pivot < 0) break;
    if (pivot != r)
      for (std::int64_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(pivot, j));
    Rat inv = 1 / m(r, lead);
    for (std::int64_t j = lead; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::int64_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, lead) == 0) continue;
      Rat f = m(i, lead);
      for (std::int64_t j = lead; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    out.pivot_cols.push_back(lead);
    ++lead;
  }
  out.mat = std::move(m);
  return out;
}

inline std::int64_t rank(const RatMat& m) { return rref(m).rank(); }

// Basis of {x : m x = 0}, one column vector per basis element.
inline std::vector<std::vector<Rat>> nullspace(const RatMat& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::int64_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(m.cols(), Rat(0));
    v[free] = 1;
    for (std::size_t p = 0; p < r.pivot_cols.size(); ++p) v[r.pivot_cols[p]] = -r.mat(p, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incremental span membership: reduce new vectors against an accumulated
// echelon basis.
class SpanTracker {
 public:
  explicit SpanTracker(std::int64_t dim) : dim_(dim) {}

  // returns true if v was independent (and absorbs it)
  bool add(std::vector<Rat> v) {
    reduce(v);
    std::int64_t lead = leading(v);
    if (lead < 0) return false;
    Rat inv = 1 / v[lead];
    for (auto& x : v) x *= inv;
    rows_.push_back(std::move(v));
    leads_.push_back(lead);
    return true;
  }

  bool contains(std::vector<Rat> v) const {
    reduce(v);
    return leading(v) < 0;
  }

  std::int64_t rank() const { return static_cast<std::int64_t>(rows_.size()); }

 private:
  void reduce(std::vector<Rat>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Rat f = v[leads_[k]];
      if (f == 0) continue;
      for (std::int64_t j = 0; j < dim_; ++j) v[j] -= f * rows_[k][j];
    }
  }
  std::int64_t leading(const std::vector<Rat>& v) const {
    for (std::int64_t j = 0; j < dim_; ++j)
      if (v[j] != 0) return j;
    return -1;
  }

  std::int64_t dim_;
  std::vector<std::vector<Rat>> rows_;
  std::vector<std::int64_t> leads_;
};

}  // namespace geomlab
