#pragma once

// Symmetric bilinear spaces over Z/4 and over R, the Gauss character, the
// canonical decomposition into [1], [-1], H = [[0,1],[1,0]] and
// M4 = [[2,1],[1,2]], and the class in GW = Z/8.

#include "weil2/cyc.hpp"
#include "weil2/linalg.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace weil2 {

/// Symmetric Gram matrix over Z/4, row-major, entries in [0,4).
struct SymForm {
  int rank = 0;
  std::vector<int> g;

  SymForm() = default;
  SymForm(int r, std::vector<int> entries) : rank(r), g(std::move(entries)) {
    for (auto& x : g) x = detail::mod4(x);
  }
  static SymForm from_rows(const std::vector<std::vector<int>>& rows) {
    SymForm f;
    f.rank = static_cast<int>(rows.size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != f.rank) throw InvalidInput("weil2: Gram matrix must be square");
      for (int x : r) f.g.push_back(detail::mod4(x));
    }
    return f;
  }
  int at(int i, int j) const { return g[i * rank + j]; }
  bool symmetric() const {
    for (int i = 0; i < rank; ++i) {
      for (int j = 0; j < rank; ++j) {
        if (at(i, j) != at(j, i)) return false;
      }
    }
    return true;
  }
  /// B(x, y) for integer vectors.
  int pair(const std::vector<int>& x, const std::vector<int>& y) const {
    long s = 0;
    for (int i = 0; i < rank; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < rank; ++j) s += static_cast<long>(x[i]) * at(i, j) * y[j];
    }
    return detail::mod4(s);
  }
  friend bool operator==(const SymForm&, const SymForm&) = default;
};

inline const GaloisRing& z4() {
  static const GaloisRing ring(1);
  return ring;
}

inline MatR to_mat(const SymForm& f) {
  MatR m(f.rank, VecR(f.rank));
  for (int i = 0; i < f.rank; ++i) {
    for (int j = 0; j < f.rank; ++j) m[i][j] = {static_cast<std::uint16_t>(f.at(i, j))};
  }
  return m;
}

inline int det_mod4(const SymForm& f) { return det(z4(), to_mat(f)).code; }

inline bool nondegenerate(const SymForm& f) { return f.symmetric() && (det_mod4(f) & 1) == 1; }

inline void require_nondegenerate(const SymForm& f) {
  if (!nondegenerate(f)) throw InvalidInput("weil2: degenerate or non-symmetric form");
}

inline SymForm direct_sum(const SymForm& a, const SymForm& b) {
  SymForm out;
  out.rank = a.rank + b.rank;
  out.g.assign(static_cast<std::size_t>(out.rank) * out.rank, 0);
  for (int i = 0; i < a.rank; ++i) {
    for (int j = 0; j < a.rank; ++j) out.g[i * out.rank + j] = a.at(i, j);
  }
  for (int i = 0; i < b.rank; ++i) {
    for (int j = 0; j < b.rank; ++j) out.g[(a.rank + i) * out.rank + a.rank + j] = b.at(i, j);
  }
  return out;
}

inline SymForm multiple(int k, const SymForm& a) {
  SymForm out;
  for (int i = 0; i < k; ++i) out = direct_sum(out, a);
  return out;
}

inline SymForm negate(const SymForm& a) {
  SymForm out = a;
  for (auto& x : out.g) x = detail::mod4(-x);
  return out;
}

/// +1 or -1: det modulo squares of (Z/4)^x = {1, 3}.
inline int discriminant(const SymForm& f) {
  require_nondegenerate(f);
  return det_mod4(f) == 1 ? 1 : -1;
}

/// Counts of v in {0,1}^rank by the value B(v, v).
inline std::array<long, 4> gauss_counts(const SymForm& f) {
  if (f.rank > 24) throw CapExceeded("weil2: Gauss sum over too many vectors");
  std::array<long, 4> cnt{};
  // Gray-code walk, keeping w = B v and q = B(v, v).
  const int r = f.rank;
  std::vector<int> w(r, 0);
  std::vector<char> v(r, 0);
  int q = 0;
  cnt[0] = 1;
  for (std::uint32_t m = 1; m < (1u << r); ++m) {
    int k = __builtin_ctz(m);
    int sign = v[k] ? -1 : 1;
    q = detail::mod4(q + sign * 2 * w[k] + f.at(k, k));
    for (int i = 0; i < r; ++i) w[i] = detail::mod4(w[i] + sign * f.at(i, k));
    v[k] = static_cast<char>(!v[k]);
    ++cnt[q];
  }
  return cnt;
}

/// G([V,B]) = sum over V/2V of i^{B(v,v)}.
inline CycNum gauss(const SymForm& f) {
  auto c = gauss_counts(f);
  return CycNum(Rational(c[0] - c[2]), 0, Rational(c[1] - c[3]), 0);
}

struct CanonicalForm {
  int n1 = 0, n2 = 0, n3 = 0, n4 = 0;
  int rank() const { return n1 + n2 + 2 * n3 + 2 * n4; }
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline SymForm canonical_gram(const CanonicalForm& c) {
  SymForm out;
  for (int i = 0; i < c.n1; ++i) out = direct_sum(out, SymForm(1, {1}));
  for (int i = 0; i < c.n2; ++i) out = direct_sum(out, SymForm(1, {3}));
  for (int i = 0; i < c.n3; ++i) out = direct_sum(out, SymForm(2, {0, 1, 1, 0}));
  for (int i = 0; i < c.n4; ++i) out = direct_sum(out, SymForm(2, {2, 1, 1, 2}));
  return out;
}

using IntMat = std::vector<std::vector<int>>;  // columns

/// U^t B U with U given by its columns.
inline SymForm pullback(const SymForm& f, const IntMat& cols) {
  SymForm out;
  out.rank = static_cast<int>(cols.size());
  out.g.resize(static_cast<std::size_t>(out.rank) * out.rank);
  for (int i = 0; i < out.rank; ++i) {
    for (int j = 0; j < out.rank; ++j) out.g[i * out.rank + j] = f.pair(cols[i], cols[j]);
  }
  return out;
}

struct Decomposition {
  CanonicalForm form;
  IntMat U;  // columns: the [1] vectors, then [-1], then H pairs, then M4 pairs
};

/// Splits off [+-1] whenever some {0,1}-combination has odd square; otherwise
/// splits off a plane U = <e, f> with B(e,f) = 1 using the matching idempotent
/// projector onto U-perp.
inline Decomposition canonical_decompose(const SymForm& f) {
  require_nondegenerate(f);
  const int r = f.rank;
  auto add = [](const std::vector<int>& a, const std::vector<int>& b, int c) {
    std::vector<int> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = detail::mod4(a[i] + c * b[i]);
    return out;
  };
  std::vector<std::vector<int>> W;
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    W.push_back(e);
  }
  std::vector<std::vector<int>> ones, minus_ones;
  std::vector<std::pair<std::vector<int>, std::vector<int>>> hyper, m4;
  while (!W.empty()) {
    const int w = static_cast<int>(W.size());
    bool split = false;
    for (std::uint32_t m = 1; m < (1u << w) && !split; ++m) {
      std::vector<int> v(r, 0);
      for (int i = 0; i < w; ++i) {
        if ((m >> i) & 1u) v = add(v, W[i], 1);
      }
      int q = f.pair(v, v);
      if (q % 2 == 0) continue;
      int u = 0;
      while (!((m >> u) & 1u)) ++u;
      std::vector<std::vector<int>> rest;
      for (int i = 0; i < w; ++i) {
        if (i == u) continue;
        rest.push_back(add(W[i], v, -f.pair(W[i], v) * q));
      }
      (q == 1 ? ones : minus_ones).push_back(v);
      W = std::move(rest);
      split = true;
    }
    if (split) continue;
    int ie = -1, jf = -1;
    for (int i = 0; i < w && ie < 0; ++i) {
      for (int j = i + 1; j < w; ++j) {
        if (f.pair(W[i], W[j]) % 2 == 1) {
          ie = i;
          jf = j;
          break;
        }
      }
    }
    if (ie < 0) throw InvalidInput("weil2: degenerate form in decomposition");
    std::vector<int> e = W[ie], fv = W[jf];
    if (f.pair(e, fv) == 3) fv = add(std::vector<int>(r, 0), fv, 3);
    int be = f.pair(e, e), bf = f.pair(fv, fv);
    if (be == 0 && bf == 2) std::swap(e, fv);
    be = f.pair(e, e);
    bf = f.pair(fv, fv);
    auto project = [&](const std::vector<int>& v) {
      int ve = f.pair(v, e), vf = f.pair(v, fv);
      std::vector<int> p = add(add(v, fv, -ve), e, -vf);
      if (be == 2 && bf == 2) p = add(add(p, e, 2 * ve), fv, 2 * vf);
      if (be == 2 && bf == 0) p = add(p, fv, 2 * vf);
      return p;
    };
    std::vector<std::vector<int>> rest;
    for (int i = 0; i < w; ++i) {
      if (i != ie && i != jf) rest.push_back(project(W[i]));
    }
    if (be == 2 && bf == 2) {
      m4.emplace_back(e, fv);
    } else if (be == 2) {
      hyper.emplace_back(add(e, fv, 1), fv);
    } else {
      hyper.emplace_back(e, fv);
    }
    W = std::move(rest);
  }
  Decomposition out;
  out.form = {static_cast<int>(ones.size()), static_cast<int>(minus_ones.size()), static_cast<int>(hyper.size()),
              static_cast<int>(m4.size())};
  for (auto& v : ones) out.U.push_back(v);
  for (auto& v : minus_ones) out.U.push_back(v);
  for (auto& [a, b] : hyper) {
    out.U.push_back(a);
    out.U.push_back(b);
  }
  for (auto& [a, b] : m4) {
    out.U.push_back(a);
    out.U.push_back(b);
  }
  return out;
}

inline int gw_class(const CanonicalForm& c) { return (c.n1 + 7 * c.n2 + 4 * c.n4) % 8; }

inline int gw_class(const SymForm& f) { return gw_class(canonical_decompose(f).form); }

inline int discriminant(const CanonicalForm& c) { return ((c.n2 + c.n3 + c.n4) % 2 == 0) ? 1 : -1; }

/// Column-by-column backtracking for U with U^t A U = B.
inline std::optional<IntMat> find_isometry(const SymForm& a, const SymForm& b, int max_rank = 4) {
  if (a.rank != b.rank) return std::nullopt;
  if (!size_caps_disabled() && a.rank > max_rank) throw CapExceeded("weil2: isometry search refused above the rank cap");
  require_nondegenerate(a);
  require_nondegenerate(b);
  const int r = a.rank;
  std::vector<std::vector<int>> cands;
  for (std::uint32_t m = 0; m < (1u << (2 * r)); ++m) {
    std::vector<int> v(r);
    for (int i = 0; i < r; ++i) v[i] = static_cast<int>((m >> (2 * i)) & 3u);
    cands.push_back(v);
  }
  IntMat cols;
  std::function<bool()> rec = [&]() -> bool {
    const int j = static_cast<int>(cols.size());
    if (j == r) return true;
    for (const auto& v : cands) {
      if (a.pair(v, v) != b.at(j, j)) continue;
      bool ok = true;
      for (int i = 0; i < j && ok; ++i) ok = a.pair(cols[i], v) == b.at(i, j);
      if (!ok) continue;
      cols.push_back(v);
      if (rec()) return true;
      cols.pop_back();
    }
    return false;
  };
  if (rec()) return cols;
  return std::nullopt;
}

inline bool is_isometric(const SymForm& a, const SymForm& b, int max_rank = 4) {
  return find_isometry(a, b, max_rank).has_value();
}

/// Every nondegenerate symmetric Gram matrix of the given rank, in code order.
inline std::vector<SymForm> enumerate_forms(int rank) {
  if (rank > 4) throw CapExceeded("weil2: form enumeration refused above rank 4");
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < rank; ++i) {
    for (int j = i; j < rank; ++j) slots.emplace_back(i, j);
  }
  std::vector<SymForm> out;
  for (std::uint32_t m = 0; m < (1u << (2 * slots.size())); ++m) {
    SymForm f;
    f.rank = rank;
    f.g.assign(static_cast<std::size_t>(rank) * rank, 0);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      int x = static_cast<int>((m >> (2 * s)) & 3u);
      f.g[slots[s].first * rank + slots[s].second] = x;
      f.g[slots[s].second * rank + slots[s].first] = x;
    }
    if (nondegenerate(f)) out.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Forms over R

struct SymFormR {
  RingPtr ring;
  int rank = 0;
  std::vector<RingElem> g;
  RingElem at(int i, int j) const { return g[i * rank + j]; }
};

inline RingElem det(const SymFormR& f) {
  MatR m(f.rank, VecR(f.rank));
  for (int i = 0; i < f.rank; ++i) {
    for (int j = 0; j < f.rank; ++j) m[i][j] = f.at(i, j);
  }
  return det(*f.ring, m);
}

/// Smallest code in the coset u * (R^x)^2.
inline RingElem square_class(const GaloisRing& R, RingElem u) {
  if (!R.is_unit(u)) throw NonUnit("weil2: square class of a non-unit");
  RingElem best = u;
  for (RingElem x : R.units()) {
    RingElem c = R.mul(u, R.mul(x, x));
    if (c.code < best.code) best = c;
  }
  return best;
}

inline RingElem discriminant(const SymFormR& f) {
  RingElem dt = det(f);
  if (!f.ring->is_unit(dt)) throw InvalidInput("weil2: degenerate form over R");
  return square_class(*f.ring, dt);
}

/// The Z/4 form tr(B(x, y)) on the basis x^j e_i (index i*d + j).
inline SymForm trace_form(const SymFormR& f) {
  const GaloisRing& R = *f.ring;
  const int d = R.degree();
  std::vector<RingElem> xp(2 * d);
  xp[0] = R.one();
  for (int j = 1; j < 2 * d; ++j) xp[j] = R.mul(xp[j - 1], R.gen());
  SymForm out;
  out.rank = f.rank * d;
  out.g.resize(static_cast<std::size_t>(out.rank) * out.rank);
  for (int i = 0; i < f.rank; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int i2 = 0; i2 < f.rank; ++i2) {
        for (int j2 = 0; j2 < d; ++j2) {
          out.g[(i * d + j) * out.rank + i2 * d + j2] = R.trace(R.mul(xp[j + j2], f.at(i, i2)));
        }
      }
    }
  }
  return out;
}

/// [R, tr]: the trace form of the rank-one form (1).
inline SymForm trace_form_of_ring(const RingPtr& R) {
  SymFormR one{R, 1, {R->one()}};
  return trace_form(one);
}

inline std::string to_string(const CanonicalForm& c) {
  return "(" + std::to_string(c.n1) + "," + std::to_string(c.n2) + "," + std::to_string(c.n3) + "," +
         std::to_string(c.n4) + ")";
}

inline std::string to_string(const SymForm& f) {
  std::string s = "[";
  for (int i = 0; i < f.rank; ++i) {
    if (i) s += ",";
    s += "[";
    for (int j = 0; j < f.rank; ++j) {
      if (j) s += ",";
      s += std::to_string(f.at(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace weil2
