// Polynomials in (z, zbar) with complex coefficients and exact Wirtinger
// derivatives, plus matrices of them. Rational projector fields P = N/D
// built from these give sigma-model fixtures with exact first and mixed
// second derivatives.
#pragma once

#include <geomlab/core.hpp>

#include <vector>

namespace geomlab {

class ZPoly {
 public:
  ZPoly() : deg_(0), c_(1, cplx(0, 0)) {}
  explicit ZPoly(cplx constant) : deg_(0), c_(1, constant) {}

  static ZPoly z() {
    ZPoly p;
    p.resize(1);
    p.coef(1, 0) = 1;
    return p;
  }
  static ZPoly zbar() {
    ZPoly p;
    p.resize(1);
    p.coef(0, 1) = 1;
    return p;
  }

  int degree() const { return deg_; }
  cplx& coef(int i, int j) { return c_[i * (deg_ + 1) + j]; }
  const cplx& coef(int i, int j) const { return c_[i * (deg_ + 1) + j]; }

  ZPoly operator+(const ZPoly& o) const {
    ZPoly r;
    r.resize(std::max(deg_, o.deg_));
    for (int i = 0; i <= r.deg_; ++i)
      for (int j = 0; j <= r.deg_; ++j) r.coef(i, j) = get(i, j) + o.get(i, j);
    return r;
  }
  ZPoly operator-(const ZPoly& o) const {
    ZPoly r;
    r.resize(std::max(deg_, o.deg_));
    for (int i = 0; i <= r.deg_; ++i)
      for (int j = 0; j <= r.deg_; ++j) r.coef(i, j) = get(i, j) - o.get(i, j);
    return r;
  }
  ZPoly operator*(const ZPoly& o) const {
    ZPoly r;
    r.resize(deg_ + o.deg_);
    for (int i = 0; i <= deg_; ++i)
      for (int j = 0; j <= deg_; ++j) {
        if (get(i, j) == cplx(0, 0)) continue;
        for (int k = 0; k <= o.deg_; ++k)
          for (int l = 0; l <= o.deg_; ++l) r.coef(i + k, j + l) += get(i, j) * o.get(k, l);
      }
    return r;
  }
  ZPoly operator*(cplx s) const {
    ZPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  ZPoly operator-() const { return *this * cplx(-1, 0); }

  // complex conjugate: z <-> zbar with conjugated coefficients
  ZPoly conj() const {
    ZPoly r;
    r.resize(deg_);
    for (int i = 0; i <= deg_; ++i)
      for (int j = 0; j <= deg_; ++j) r.coef(j, i) = std::conj(get(i, j));
    return r;
  }

  ZPoly dz() const {
    ZPoly r;
    r.resize(std::max(0, deg_ - 1));
    for (int i = 1; i <= deg_; ++i)
      for (int j = 0; j <= deg_; ++j)
        if (get(i, j) != cplx(0, 0)) r.coef(i - 1, j) += double(i) * get(i, j);
    return r;
  }
  ZPoly dzbar() const {
    ZPoly r;
    r.resize(std::max(0, deg_ - 1));
    for (int i = 0; i <= deg_; ++i)
      for (int j = 1; j <= deg_; ++j)
        if (get(i, j) != cplx(0, 0)) r.coef(i, j - 1) += double(j) * get(i, j);
    return r;
  }

  cplx eval(cplx z) const {
    cplx zb = std::conj(z);
    cplx acc = 0;
    for (int i = deg_; i >= 0; --i) {
      cplx row = 0;
      for (int j = deg_; j >= 0; --j) row = row * zb + get(i, j);
      acc = acc * z + row;
    }
    return acc;
  }

 private:
  cplx get(int i, int j) const {
    if (i > deg_ || j > deg_) return {0, 0};
    return c_[i * (deg_ + 1) + j];
  }
  void resize(int deg) {
    std::vector<cplx> nc((deg + 1) * (deg + 1), cplx(0, 0));
    for (int i = 0; i <= deg_ && i <= deg; ++i)
      for (int j = 0; j <= deg_ && j <= deg; ++j) nc[i * (deg + 1) + j] = c_[i * (deg_ + 1) + j];
    deg_ = deg;
    c_ = std::move(nc);
  }

  int deg_;
  std::vector<cplx> c_;
};

// dense matrix of ZPoly
class MatZ {
 public:
  MatZ() = default;
  MatZ(int rows, int cols) : rows_(rows), cols_(cols), d_(rows * cols) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  ZPoly& operator()(int i, int j) { return d_[i * cols_ + j]; }
  const ZPoly& operator()(int i, int j) const { return d_[i * cols_ + j]; }

  MatZ operator*(const MatZ& o) const {
    MatZ r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < o.cols_; ++j) {
        ZPoly acc;
        for (int k = 0; k < cols_; ++k) acc = acc + (*this)(i, k) * o(k, j);
        r(i, j) = acc;
      }
    return r;
  }
  MatZ operator+(const MatZ& o) const {
    MatZ r = *this;
    for (int i = 0; i < rows_ * cols_; ++i) r.d_[i] = r.d_[i] + o.d_[i];
    return r;
  }
  MatZ operator-(const MatZ& o) const {
    MatZ r = *this;
    for (int i = 0; i < rows_ * cols_; ++i) r.d_[i] = r.d_[i] - o.d_[i];
    return r;
  }
  MatZ scale(const ZPoly& s) const {
    MatZ r = *this;
    for (auto& p : r.d_) p = p * s;
    return r;
  }

  MatZ adjoint() const {
    MatZ r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j).conj();
    return r;
  }

  ZPoly trace() const {
    ZPoly acc;
    for (int i = 0; i < rows_; ++i) acc = acc + (*this)(i, i);
    return acc;
  }

  MatZ map(ZPoly (ZPoly::*op)() const) const {
    MatZ r = *this;
    for (auto& p : r.d_) p = (p.*op)();
    return r;
  }

  MatC eval(cplx z) const {
    MatC m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).eval(z);
    return m;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<ZPoly> d_;
};

// P(z) = N(z)/D(z) with exact derivatives up to the mixed second order.
struct RationalMatrixFn {
  MatZ num;
  ZPoly den;

  MatC value(cplx z) const { return num.eval(z) / den.eval(z); }

  MatC dz(cplx z) const {
    cplx d = den.eval(z), dz_ = den.dz().eval(z);
    return num.map(&ZPoly::dz).eval(z) / d - num.eval(z) * (dz_ / (d * d));
  }
  MatC dzbar(cplx z) const {
    cplx d = den.eval(z), dzb = den.dzbar().eval(z);
    return num.map(&ZPoly::dzbar).eval(z) / d - num.eval(z) * (dzb / (d * d));
  }
  MatC dz_dzbar(cplx z) const {
    cplx d = den.eval(z);
    cplx dz_ = den.dz().eval(z), dzb = den.dzbar().eval(z);
    cplx dzzb = den.dz().dzbar().eval(z);
    MatC n = num.eval(z);
    MatC nz = num.map(&ZPoly::dz).eval(z);
    MatC nzb = num.map(&ZPoly::dzbar).eval(z);
    MatC nzzb = num.map(&ZPoly::dz).map(&ZPoly::dzbar).eval(z);
    return nzzb / d - nz * (dzb / (d * d)) - nzb * (dz_ / (d * d)) - n * (dzzb / (d * d)) +
           n * (2.0 * dz_ * dzb / (d * d * d));
  }
};

}  // namespace geomlab
