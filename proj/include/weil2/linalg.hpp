#pragma once

// Dense linear algebra over the residue field k and over the local ring R.
// Over R every elimination uses unit pivots; a column with no unit pivot
// means the matrix is singular mod 2.

#include "weil2/galois_ring.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace weil2 {

using VecF = std::vector<FieldElem>;
using MatF = std::vector<VecF>;
using VecR = std::vector<RingElem>;
using MatR = std::vector<VecR>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<int> rref(const GaloisRing& k, MatF& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (m[i][c].code != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    FieldElem inv = k.finv(m[r][c]);
    for (auto& x : m[r]) x = k.fmul(x, inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c].code == 0) continue;
      FieldElem f = m[i][c];
      for (int j = 0; j < cols; ++j) m[i][j] = k.fadd(m[i][j], k.fmul(f, m[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

inline int rank(const GaloisRing& k, MatF m) { return static_cast<int>(rref(k, m).size()); }

/// Some solution of a x = b over k (free variables set to zero), if any.
inline std::optional<VecF> solve(const GaloisRing& k, const MatF& a, const VecF& b) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  MatF aug(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    aug[i] = a[i];
    aug[i].push_back(b[i]);
  }
  auto piv = rref(k, aug);
  VecF x(cols);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    if (static_cast<std::size_t>(piv[r]) == cols) return std::nullopt;
    x[piv[r]] = aug[r][cols];
  }
  return x;
}

inline MatR identity_r(std::size_t n) {
  MatR m(n, VecR(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = {1};
  return m;
}

inline MatR matmul(const GaloisRing& R, const MatR& a, const MatR& b) {
  const std::size_t n = a.size(), inner = b.size(), m = b.empty() ? 0 : b[0].size();
  MatR out(n, VecR(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < inner; ++t) {
      if (a[i][t].code == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] = R.add(out[i][j], R.mul(a[i][t], b[t][j]));
    }
  }
  return out;
}

inline MatR transpose(const MatR& a) {
  if (a.empty()) return {};
  MatR t(a[0].size(), VecR(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

/// Inverse over R, or nullopt when the matrix is not invertible.
inline std::optional<MatR> inverse(const GaloisRing& R, MatR a) {
  const std::size_t n = a.size();
  MatR inv = identity_r(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i) {
      if (R.is_unit(a[i][c])) {
        p = i;
        break;
      }
    }
    if (p == n) return std::nullopt;
    std::swap(a[c], a[p]);
    std::swap(inv[c], inv[p]);
    RingElem u = R.inv(a[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = R.mul(a[c][j], u);
      inv[c][j] = R.mul(inv[c][j], u);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a[i][c].code == 0) continue;
      RingElem f = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] = R.sub(a[i][j], R.mul(f, a[c][j]));
        inv[i][j] = R.sub(inv[i][j], R.mul(f, inv[c][j]));
      }
    }
  }
  return inv;
}

namespace detail {

inline RingElem det_laplace(const GaloisRing& R, const MatR& a) {
  const std::size_t n = a.size();
  if (n == 0) return R.one();
  if (n == 1) return a[0][0];
  RingElem acc = R.zero();
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].code == 0) continue;
    MatR minor(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t c = 0; c < n; ++c) {
        if (c != j) minor[i - 1].push_back(a[i][c]);
      }
    }
    RingElem term = R.mul(a[0][j], det_laplace(R, minor));
    acc = (j % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
  }
  return acc;
}

}  // namespace detail

/// Exact determinant over R. Unit pivots first; whatever block has no unit
/// pivot left is expanded by cofactors.
inline RingElem det(const GaloisRing& R, MatR a) {
  const std::size_t n = a.size();
  RingElem acc = R.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i) {
      if (R.is_unit(a[i][c])) {
        p = i;
        break;
      }
    }
    if (p == n) {
      MatR rest(n - c);
      for (std::size_t i = c; i < n; ++i) rest[i - c].assign(a[i].begin() + static_cast<long>(c), a[i].end());
      return R.mul(acc, detail::det_laplace(R, rest));
    }
    if (p != c) {
      std::swap(a[c], a[p]);
      acc = R.neg(acc);
    }
    acc = R.mul(acc, a[c][c]);
    RingElem u = R.inv(a[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].code == 0) continue;
      RingElem f = R.mul(a[i][c], u);
      for (std::size_t j = c; j < n; ++j) a[i][j] = R.sub(a[i][j], R.mul(f, a[c][j]));
    }
  }
  return acc;
}

}  // namespace weil2
