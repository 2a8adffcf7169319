#pragma once

// Exact matrices. Intertwiners have entries in Z[i] and are kept as GaussInt
// matrices; anything carrying a normalization lives over Q(zeta_8).

#include "weil2/cyc.hpp"
#include "weil2/errors.hpp"

#include <cstdlib>
#include <string>
#include <vector>

namespace weil2 {

struct GaussInt {
  long re = 0, im = 0;

  static GaussInt i_pow(int e) {
    switch (e & 3) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      default: return {0, -1};
    }
  }
  bool is_zero() const { return re == 0 && im == 0; }
  GaussInt conj() const { return {re, -im}; }
  long norm() const { return re * re + im * im; }
  CycNum to_cyc() const { return CycNum(Rational(re), 0, Rational(im), 0); }

  friend bool operator==(const GaussInt&, const GaussInt&) = default;
  friend GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator*(GaussInt a, GaussInt b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  GaussInt& operator+=(GaussInt b) { return *this = *this + b; }
  GaussInt pow(int e) const {
    GaussInt acc{1, 0};
    for (int k = 0; k < e; ++k) acc = acc * *this;
    return acc;
  }
};

inline CycNum gauss_ratio(GaussInt a, GaussInt b) {
  if (b.is_zero()) throw DivisionByZero();
  GaussInt num = a * b.conj();
  Rational den(b.norm());
  return CycNum(Rational(num.re) / den, 0, Rational(num.im) / den, 0);
}

template <class T>
struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  T& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  friend bool operator==(const Matrix&, const Matrix&) = default;
};

using ZiMat = Matrix<GaussInt>;
using CycMat = Matrix<CycNum>;

template <>
inline ZiMat ZiMat::identity(std::size_t n) {
  ZiMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = {1, 0};
  return m;
}

inline bool is_zero(const GaussInt& x) { return x.is_zero(); }
inline bool is_zero(const CycNum& x) { return x.is_zero(); }

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
  if (x.cols != y.rows) throw InvalidInput("weil2: matrix shape mismatch");
  Matrix<T> out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t t = 0; t < x.cols; ++t) {
      const T& xv = x(i, t);
      if (is_zero(xv)) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        if (!is_zero(y(t, j))) out(i, j) += xv * y(t, j);
      }
    }
  }
  return out;
}

inline CycMat to_cyc(const ZiMat& m) {
  CycMat out(m.rows, m.cols);
  for (std::size_t k = 0; k < m.a.size(); ++k) out.a[k] = m.a[k].to_cyc();
  return out;
}

inline CycMat scaled(const CycNum& c, CycMat m) {
  for (auto& x : m.a) x = c * x;
  return m;
}

template <class T>
Matrix<T> kron(const Matrix<T>& x, const Matrix<T>& y) {
  Matrix<T> out(x.rows * y.rows, x.cols * y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) {
      if (is_zero(x(i, j))) continue;
      for (std::size_t k = 0; k < y.rows; ++k) {
        for (std::size_t l = 0; l < y.cols; ++l) out(i * y.rows + k, j * y.cols + l) = x(i, j) * y(k, l);
      }
    }
  }
  return out;
}

template <class T>
Matrix<T> kron_power(const Matrix<T>& x, int p) {
  Matrix<T> out = x;
  for (int k = 1; k < p; ++k) out = kron(out, x);
  return out;
}

/// c with x = c * y, checked on every entry by cross-multiplication.
inline CycNum proportionality(const ZiMat& x, const ZiMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw InvalidInput("weil2: proportionality of different shapes");
  std::size_t p = 0;
  while (p < y.a.size() && y.a[p].is_zero()) ++p;
  if (p == y.a.size()) throw InconsistentScalar("weil2: proportionality against a zero operator");
  for (std::size_t k = 0; k < x.a.size(); ++k) {
    if (!(x.a[k] * y.a[p] == x.a[p] * y.a[k])) throw InconsistentScalar("weil2: operators are not proportional");
  }
  return gauss_ratio(x.a[p], y.a[p]);
}

inline CycNum proportionality(const CycMat& x, const CycMat& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw InvalidInput("weil2: proportionality of different shapes");
  std::size_t p = 0;
  while (p < y.a.size() && y.a[p].is_zero()) ++p;
  if (p == y.a.size()) throw InconsistentScalar("weil2: proportionality against a zero operator");
  CycNum c = x.a[p] / y.a[p];
  for (std::size_t k = 0; k < x.a.size(); ++k) {
    if (x.a[k] != c * y.a[k]) throw InconsistentScalar("weil2: operators are not proportional");
  }
  return c;
}

/// Gauss-Jordan inverse over Q(zeta_8).
inline CycMat inverse(CycMat m) {
  const std::size_t n = m.rows;
  if (m.cols != n) throw InvalidInput("weil2: inverse of a non-square matrix");
  CycMat inv = CycMat::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c).is_zero()) ++p;
    if (p == n) throw InvalidInput("weil2: singular operator");
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(m(c, j), m(p, j));
      std::swap(inv(c, j), inv(p, j));
    }
    CycNum u = m(c, c).inv();
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) *= u;
      inv(c, j) *= u;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c).is_zero()) continue;
      CycNum f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!m(c, j).is_zero()) m(i, j) -= f * m(c, j);
        if (!inv(c, j).is_zero()) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Rank over Q(zeta_8) by row reduction.
inline std::size_t rank(CycMat m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols && r < m.rows; ++c) {
    std::size_t p = r;
    while (p < m.rows && m(p, c).is_zero()) ++p;
    if (p == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(r, j), m(p, j));
    CycNum u = m(r, c).inv();
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) *= u;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      CycNum f = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j) {
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
      }
    }
    ++r;
  }
  return r;
}

}  // namespace weil2
