#pragma once

// The symplectic module V~ = R^{2n} with its reduction V = k^{2n}.
//
// A vector of V is packed into one integer: coordinate i occupies bits
// [d*i, d*(i+1)) and holds a FieldElem code. Coordinates 0..n-1 are the
// e-block, n..2n-1 the f-block. Addition in V is XOR. Vectors of V~ are
// plain VecR.

#include "weil2/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace weil2 {

using VecV = std::uint32_t;

class SympSpace {
 public:
  SympSpace(RingPtr ring, int n) : ring_(std::move(ring)), n_(n) {
    if (n_ < 1) throw InvalidInput("weil2: n must be positive");
    d_ = ring_->degree();
    if (2 * n_ * d_ > 24) throw CapExceeded("weil2: |V| too large to index");
    mask_ = (1u << d_) - 1;
  }

  const GaloisRing& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  int n() const { return n_; }
  int d() const { return d_; }
  int dim() const { return 2 * n_; }
  /// |V| = 2^{2dn}.
  std::uint32_t size() const { return 1u << (2 * n_ * d_); }

  FieldElem coord(VecV v, int i) const { return {static_cast<std::uint16_t>((v >> (d_ * i)) & mask_)}; }
  VecV with_coord(VecV v, int i, FieldElem a) const {
    v &= ~(mask_ << (d_ * i));
    return v | (static_cast<VecV>(a.code) << (d_ * i));
  }
  /// e_i for i < n, f_{i-n} otherwise.
  VecV unit(int i) const { return VecV{1} << (d_ * i); }
  VecV make(const VecF& c) const {
    VecV v = 0;
    for (int i = 0; i < dim(); ++i) v = with_coord(v, i, c[i]);
    return v;
  }
  VecF coords(VecV v) const {
    VecF c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = coord(v, i);
    return c;
  }
  VecV scale(FieldElem a, VecV v) const {
    VecV out = 0;
    for (int i = 0; i < dim(); ++i) out = with_coord(out, i, ring_->fmul(a, coord(v, i)));
    return out;
  }

  FieldElem omega_bar(VecV v, VecV w) const {
    FieldElem s{0};
    for (int i = 0; i < n_; ++i) {
      s = ring_->fadd(s, ring_->fmul(coord(v, i), coord(w, n_ + i)));
      s = ring_->fadd(s, ring_->fmul(coord(v, n_ + i), coord(w, i)));
    }
    return s;
  }
  /// The k-valued splitting form <l1, m2>.
  FieldElem beta_bar(VecV v, VecV w) const {
    FieldElem s{0};
    for (int i = 0; i < n_; ++i) s = ring_->fadd(s, ring_->fmul(coord(v, i), coord(w, n_ + i)));
    return s;
  }
  /// omega = 2 omega~ and beta = 2 beta~, valued in 2R.
  RingElem omega(VecV v, VecV w) const { return ring_->two_times(omega_bar(v, w)); }
  RingElem beta(VecV v, VecV w) const { return ring_->two_times(beta_bar(v, w)); }

  RingElem omega_t(const VecR& x, const VecR& y) const {
    RingElem s = ring_->zero();
    for (int i = 0; i < n_; ++i) {
      s = ring_->add(s, ring_->mul(x[i], y[n_ + i]));
      s = ring_->sub(s, ring_->mul(x[n_ + i], y[i]));
    }
    return s;
  }
  RingElem beta_t(const VecR& x, const VecR& y) const {
    RingElem s = ring_->zero();
    for (int i = 0; i < n_; ++i) s = ring_->add(s, ring_->mul(x[i], y[n_ + i]));
    return s;
  }

  VecR lift(VecV v) const {
    VecR x(dim());
    for (int i = 0; i < dim(); ++i) x[i] = ring_->lift(coord(v, i));
    return x;
  }
  VecV reduce(const VecR& x) const {
    VecV v = 0;
    for (int i = 0; i < dim(); ++i) v = with_coord(v, i, ring_->reduce(x[i]));
    return v;
  }
  VecR zero_t() const { return VecR(dim()); }
  VecR add_t(const VecR& a, const VecR& b) const {
    VecR c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = ring_->add(a[i], b[i]);
    return c;
  }
  VecR sub_t(const VecR& a, const VecR& b) const {
    VecR c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = ring_->sub(a[i], b[i]);
    return c;
  }
  VecR scale_t(RingElem u, const VecR& a) const {
    VecR c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = ring_->mul(u, a[i]);
    return c;
  }

  /// {x^j v : v in kbasis, j < d}, an F2-basis of the k-span.
  std::vector<VecV> f2_basis(const std::vector<VecV>& kbasis) const {
    std::vector<VecV> out;
    for (VecV v : kbasis) {
      for (int j = 0; j < d_; ++j) out.push_back(scale({static_cast<std::uint16_t>(1u << j)}, v));
    }
    return out;
  }
  /// Element with F2-coordinates given by the bits of mask.
  static VecV combine(const std::vector<VecV>& f2basis, std::uint32_t mask) {
    VecV v = 0;
    for (std::size_t q = 0; q < f2basis.size(); ++q) {
      if ((mask >> q) & 1u) v ^= f2basis[q];
    }
    return v;
  }
  std::vector<VecV> span(const std::vector<VecV>& f2basis) const {
    std::vector<VecV> out(std::size_t{1} << f2basis.size());
    for (std::uint32_t m = 0; m < out.size(); ++m) out[m] = combine(f2basis, m);
    return out;
  }
  std::vector<VecV> standard_f2_basis() const {
    std::vector<VecV> units;
    for (int i = 0; i < dim(); ++i) units.push_back(unit(i));
    return f2_basis(units);
  }

 private:
  RingPtr ring_;
  int n_ = 0, d_ = 0;
  VecV mask_ = 0;
};

// ---------------------------------------------------------------------------
// Lagrangian subspaces of V

struct Lagrangian {
  std::vector<VecV> basis;   // reduced row echelon rows
  std::vector<int> pivots;
  std::vector<VecV> f2basis;
  std::vector<VecV> members;  // ascending
  std::vector<VecV> reps;     // the complement spanned by non-pivot units, ascending
  std::vector<int> rep_index;  // over V, -1 off the complement
  std::vector<char> member_flag;

  bool contains(VecV v) const { return member_flag[v] != 0; }
  std::size_t dim_model() const { return reps.size(); }
  /// The L-part of v = l + t with t in the complement.
  VecV component(const SympSpace& s, VecV v) const {
    VecV l = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) l ^= s.scale(s.coord(v, pivots[i]), basis[i]);
    return l;
  }
  friend bool operator==(const Lagrangian& a, const Lagrangian& b) { return a.basis == b.basis; }
};

using LagPtr = std::shared_ptr<const Lagrangian>;

/// Builds the Lagrangian spanned by the given vectors; throws unless it is one.
inline LagPtr make_lagrangian(const SympSpace& s, const std::vector<VecV>& spanning) {
  const GaloisRing& k = s.ring();
  MatF m;
  for (VecV v : spanning) m.push_back(s.coords(v));
  auto piv = rref(k, m);
  if (static_cast<int>(piv.size()) != s.n()) throw InvalidInput("weil2: span is not n-dimensional");
  auto L = std::make_shared<Lagrangian>();
  L->pivots = piv;
  for (auto& row : m) L->basis.push_back(s.make(row));
  for (VecV a : L->basis) {
    for (VecV b : L->basis) {
      if (s.omega_bar(a, b).code != 0) throw InvalidInput("weil2: subspace is not isotropic");
    }
  }
  L->f2basis = s.f2_basis(L->basis);
  L->members = s.span(L->f2basis);
  std::sort(L->members.begin(), L->members.end());
  L->member_flag.assign(s.size(), 0);
  for (VecV v : L->members) L->member_flag[v] = 1;
  L->rep_index.assign(s.size(), -1);
  for (VecV v = 0; v < s.size(); ++v) {
    bool ok = true;
    for (int p : piv) ok = ok && s.coord(v, p).code == 0;
    if (ok) {
      L->rep_index[v] = static_cast<int>(L->reps.size());
      L->reps.push_back(v);
    }
  }
  return L;
}

inline bool transversal(const Lagrangian& a, const Lagrangian& b) {
  for (VecV v : a.members) {
    if (v != 0 && b.contains(v)) return false;
  }
  return true;
}

inline void check_enumeration_cap(const SympSpace& s) {
  if (!size_caps_disabled() && s.d() * s.n() > 4) {
    throw CapExceeded("weil2: exhaustive enumeration refused for d*n > 4");
  }
}

/// All Lagrangian subspaces, ordered by pivot set (lexicographic) and then by
/// free entries; the standard span(e_1..e_n) comes first.
inline std::vector<LagPtr> enumerate_lagrangians(const SympSpace& s) {
  check_enumeration_cap(s);
  const int n = s.n(), dim = s.dim();
  const std::uint32_t q = 1u << s.d();
  std::vector<LagPtr> out;
  std::vector<int> piv(n);
  for (int i = 0; i < n; ++i) piv[i] = i;
  while (true) {
    std::vector<std::pair<int, int>> free;
    for (int i = 0; i < n; ++i) {
      for (int c = piv[i] + 1; c < dim; ++c) {
        if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(i, c);
      }
    }
    std::uint64_t total = 1;
    for (std::size_t f = 0; f < free.size(); ++f) total *= q;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<VecV> rows(n, 0);
      for (int i = 0; i < n; ++i) rows[i] = s.unit(piv[i]);
      std::uint64_t r = idx;
      for (auto [i, c] : free) {
        rows[i] = s.with_coord(rows[i], c, {static_cast<std::uint16_t>(r % q)});
        r /= q;
      }
      bool iso = true;
      for (int i = 0; i < n && iso; ++i) {
        for (int j = i + 1; j < n && iso; ++j) iso = s.omega_bar(rows[i], rows[j]).code == 0;
      }
      if (iso) out.push_back(make_lagrangian(s, rows));
    }
    int i = n - 1;
    while (i >= 0 && piv[i] == dim - n + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int j = i + 1; j < n; ++j) piv[j] = piv[j - 1] + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enhanced Lagrangians

struct EnhancedLagrangian {
  LagPtr L;
  std::vector<RingElem> alpha;  // indexed by V, zero off L

  RingElem operator()(VecV l) const { return alpha[l]; }
  friend bool operator==(const EnhancedLagrangian& a, const EnhancedLagrangian& b) {
    return *a.L == *b.L && a.alpha == b.alpha;
  }
};

/// alpha(l1 + l2) - alpha(l1) - alpha(l2) = beta(l1, l2) on L.
inline bool is_enhancement(const SympSpace& s, const Lagrangian& L, const std::vector<RingElem>& alpha) {
  const GaloisRing& R = s.ring();
  if (alpha[0].code != 0) return false;
  for (VecV a : L.members) {
    for (VecV b : L.members) {
      if (R.sub(R.sub(alpha[a ^ b], alpha[a]), alpha[b]) != s.beta(a, b)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Free Lagrangian submodules of V~ and orientations

/// Basis rows in canonical form: the identity on the pivot columns of the
/// reduction mod 2.
struct FreeLagrangian {
  std::vector<VecR> basis;
  std::vector<int> pivots;
  friend bool operator==(const FreeLagrangian& a, const FreeLagrangian& b) { return a.basis == b.basis; }
};

struct OrientedLagrangian {
  FreeLagrangian sub;
  RingElem unit;  // o = unit * b_1 ^ ... ^ b_n
  friend bool operator==(const OrientedLagrangian& a, const OrientedLagrangian& b) {
    return a.sub == b.sub && a.unit == b.unit;
  }
};

/// Canonical form of the submodule spanned by the rows. If det_out is given it
/// receives det(B_P), so that b_1^...^b_n = det(B_P) * (canonical wedge).
inline FreeLagrangian make_free(const SympSpace& s, const std::vector<VecR>& rows, RingElem* det_out = nullptr) {
  const GaloisRing& R = s.ring();
  const int n = s.n();
  if (static_cast<int>(rows.size()) != n) throw InvalidInput("weil2: need n basis vectors");
  MatF red;
  for (const auto& r : rows) red.push_back(s.coords(s.reduce(r)));
  auto piv = rref(R, red);
  if (static_cast<int>(piv.size()) != n) throw InvalidInput("weil2: submodule is not a free direct summand of rank n");
  MatR bp(n, VecR(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) bp[i][j] = rows[i][piv[j]];
  }
  auto inv = inverse(R, bp);
  FreeLagrangian out;
  out.pivots = piv;
  MatR rowsm(rows.begin(), rows.end());
  MatR canon = matmul(R, *inv, rowsm);
  out.basis.assign(canon.begin(), canon.end());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (s.omega_t(out.basis[i], out.basis[j]).code != 0) throw InvalidInput("weil2: submodule is not isotropic");
    }
  }
  if (det_out) *det_out = det(R, bp);
  return out;
}

inline OrientedLagrangian make_oriented(const SympSpace& s, const std::vector<VecR>& rows, RingElem unit) {
  if (!s.ring().is_unit(unit)) throw NonUnit("weil2: orientation scalar must be a unit");
  RingElem dt;
  FreeLagrangian f = make_free(s, rows, &dt);
  return {std::move(f), s.ring().mul(unit, dt)};
}

inline LagPtr reduce_free(const SympSpace& s, const FreeLagrangian& f) {
  std::vector<VecV> rows;
  for (const auto& b : f.basis) rows.push_back(s.reduce(b));
  return make_lagrangian(s, rows);
}

/// The element of L~ with coordinates lift(l_{p_i}) in the canonical basis; it lies over l.
inline VecR element_over(const SympSpace& s, const FreeLagrangian& f, VecV l) {
  const GaloisRing& R = s.ring();
  VecR x = s.zero_t();
  for (std::size_t i = 0; i < f.basis.size(); ++i) {
    x = s.add_t(x, s.scale_t(R.lift(s.coord(l, f.pivots[i])), f.basis[i]));
  }
  return x;
}

/// A free Lagrangian lift of L: lifted echelon rows b~_i corrected by 2x_i,
/// where x_i lies in the complement and omega(x_i, b_j) = c_ij for j > i.
inline FreeLagrangian lift_lagrangian(const SympSpace& s, const Lagrangian& L) {
  const GaloisRing& R = s.ring();
  const int n = s.n(), dim = s.dim();
  std::vector<VecR> rows;
  for (VecV b : L.basis) rows.push_back(s.lift(b));
  std::vector<VecR> fixed = rows;
  for (int i = 0; i < n; ++i) {
    MatF a;
    VecF rhs;
    for (int j = 0; j < n; ++j) {
      // omega_bar(x, b_j) as a linear form in x: swap halves of b_j.
      VecF form(dim);
      for (int t = 0; t < n; ++t) {
        form[t] = s.coord(L.basis[j], n + t);
        form[n + t] = s.coord(L.basis[j], t);
      }
      a.push_back(form);
      rhs.push_back(j > i ? R.halve(s.omega_t(rows[i], rows[j])) : FieldElem{0});
    }
    for (int p : L.pivots) {
      VecF e(dim);
      e[p] = {1};
      a.push_back(e);
      rhs.push_back({0});
    }
    auto x = solve(R, a, rhs);
    if (!x) throw Error("weil2: Lagrangian lift correction has no solution");
    fixed[i] = s.add_t(rows[i], s.scale_t(R.from_int(2), s.lift(s.make(*x))));
  }
  return make_free(s, fixed);
}

/// Free lifts over L are the rows c_i + 2x_i of the canonical lift c, with x_i in the
/// complement and omega_bar(x_i, b_j) = S_ij for a symmetric S; upper lists S_ij, i <= j.
inline FreeLagrangian free_lift_from_symmetric(const SympSpace& s, const Lagrangian& L, const std::vector<FieldElem>& upper) {
  const GaloisRing& R = s.ring();
  const int n = s.n(), dim = s.dim();
  if (static_cast<int>(upper.size()) != n * (n + 1) / 2) throw InvalidInput("weil2: need n(n+1)/2 entries");
  auto sym = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    return upper[static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i))];
  };
  FreeLagrangian c = lift_lagrangian(s, L);
  for (int i = 0; i < n; ++i) {
    MatF a;
    VecF rhs;
    for (int j = 0; j < n; ++j) {
      VecF form(dim);
      for (int t = 0; t < n; ++t) {
        form[t] = s.coord(L.basis[j], n + t);
        form[n + t] = s.coord(L.basis[j], t);
      }
      a.push_back(form);
      rhs.push_back(sym(i, j));
    }
    for (int p : L.pivots) {
      VecF e(dim);
      e[p] = {1};
      a.push_back(e);
      rhs.push_back({0});
    }
    auto x = solve(R, a, rhs);
    if (!x) throw Error("weil2: free lift correction has no solution");
    c.basis[i] = s.add_t(c.basis[i], s.scale_t(R.from_int(2), s.lift(s.make(*x))));
  }
  return c;
}

/// alpha(l) = beta~(l~, l~) for any lift l~ in L~.
inline EnhancedLagrangian enhance_from_lift(const SympSpace& s, const FreeLagrangian& f) {
  EnhancedLagrangian e;
  e.L = reduce_free(s, f);
  e.alpha.assign(s.size(), RingElem{});
  for (VecV l : e.L->members) {
    VecR x = element_over(s, f, l);
    e.alpha[l] = s.beta_t(x, x);
  }
  return e;
}

inline EnhancedLagrangian enhance_from_lift(const SympSpace& s, const OrientedLagrangian& o) {
  return enhance_from_lift(s, o.sub);
}

/// Number of group homomorphisms L -> R, i.e. F2-linear maps into 2R.
inline std::uint64_t enhancement_count(const SympSpace& s) {
  return std::uint64_t{1} << (s.d() * s.d() * s.n());
}

/// Adds the character sigma, given by its values (in k, via 2R) on the F2-basis of L.
inline EnhancedLagrangian twist(const SympSpace& s, const EnhancedLagrangian& e, const std::vector<FieldElem>& sigma_on_basis) {
  const GaloisRing& R = s.ring();
  EnhancedLagrangian out = e;
  const auto& fb = e.L->f2basis;
  for (std::uint32_t m = 0; m < (1u << fb.size()); ++m) {
    FieldElem acc{0};
    for (std::size_t q = 0; q < fb.size(); ++q) {
      if ((m >> q) & 1u) acc = R.fadd(acc, sigma_on_basis[q]);
    }
    VecV l = SympSpace::combine(fb, m);
    out.alpha[l] = R.add(out.alpha[l], R.two_times(acc));
  }
  return out;
}

/// Sigma number idx in mixed radix 2^d over the F2-basis of L.
inline std::vector<FieldElem> sigma_from_index(const SympSpace& s, std::uint64_t idx) {
  const std::size_t len = static_cast<std::size_t>(s.d() * s.n());
  const std::uint64_t q = 1u << s.d();
  std::vector<FieldElem> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    out[i] = {static_cast<std::uint16_t>(idx % q)};
    idx /= q;
  }
  return out;
}

/// All of Sigma_L: the lift enhancement plus every character, lift first.
inline std::vector<EnhancedLagrangian> enumerate_enhancements(const SympSpace& s, const LagPtr& L) {
  EnhancedLagrangian base = enhance_from_lift(s, lift_lagrangian(s, *L));
  base.L = L;
  const std::uint64_t total = enhancement_count(s);
  std::vector<EnhancedLagrangian> out;
  out.reserve(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) out.push_back(twist(s, base, sigma_from_index(s, idx)));
  return out;
}

inline std::vector<EnhancedLagrangian> enumerate_enhanced(const SympSpace& s, const std::vector<LagPtr>& lags) {
  std::vector<EnhancedLagrangian> out;
  for (const auto& L : lags) {
    auto e = enumerate_enhancements(s, L);
    out.insert(out.end(), e.begin(), e.end());
  }
  return out;
}

/// All free Lagrangian submodules over L, in order of the 2y corrections of
/// the lifted free entries.
inline std::vector<FreeLagrangian> free_lifts(const SympSpace& s, const Lagrangian& L) {
  const GaloisRing& R = s.ring();
  const int n = s.n(), dim = s.dim();
  std::vector<std::pair<int, int>> free;
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < dim; ++c) {
      if (std::find(L.pivots.begin(), L.pivots.end(), c) == L.pivots.end()) free.emplace_back(i, c);
    }
  }
  const std::uint64_t q = R.field_size();
  std::uint64_t total = 1;
  for (std::size_t f = 0; f < free.size(); ++f) total *= q;
  std::vector<FreeLagrangian> out;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::vector<VecR> rows;
    for (VecV b : L.basis) rows.push_back(s.lift(b));
    std::uint64_t r = idx;
    for (auto [i, c] : free) {
      rows[i][c] = R.add(rows[i][c], R.two_times({static_cast<std::uint16_t>(r % q)}));
      r /= q;
    }
    bool iso = true;
    for (int i = 0; i < n && iso; ++i) {
      for (int j = i + 1; j < n && iso; ++j) iso = s.omega_t(rows[i], rows[j]).code == 0;
    }
    if (iso) {
      FreeLagrangian f;
      f.basis = rows;
      f.pivots = L.pivots;
      out.push_back(std::move(f));
    }
  }
  return out;
}

inline constexpr std::uint64_t kOrientedCap = std::uint64_t{1} << 17;

/// Every oriented Lagrangian: Lagrangians in enumeration order, free lifts in
/// correction order, then all units in code order.
inline std::vector<OrientedLagrangian> enumerate_oriented(const SympSpace& s, const std::vector<LagPtr>& lags) {
  const GaloisRing& R = s.ring();
  std::vector<OrientedLagrangian> out;
  auto units = R.units();
  for (const auto& L : lags) {
    for (auto& f : free_lifts(s, *L)) {
      for (RingElem u : units) {
        out.push_back({f, u});
        if (!size_caps_disabled() && out.size() > kOrientedCap) throw CapExceeded("weil2: too many oriented Lagrangians");
      }
    }
  }
  return out;
}

inline bool transversal(const SympSpace& s, const FreeLagrangian& a, const FreeLagrangian& b) {
  return transversal(*reduce_free(s, a), *reduce_free(s, b));
}

// ---------------------------------------------------------------------------
// r-maps and the wedge pairing

/// Table over V of the N-component along L (V = N + L). Restricted to M it is r^L.
inline std::vector<VecV> r_table(const SympSpace& s, const Lagrangian& N, const Lagrangian& L) {
  if (!transversal(N, L)) throw NotTransversal("weil2: r-map needs N + L = V");
  std::vector<VecV> t(s.size());
  for (VecV a : N.members) {
    for (VecV b : L.members) t[a ^ b] = a;
  }
  return t;
}

/// r^{L~}: the N~-component along L~ of V~ = N~ + L~.
class RTilde {
 public:
  RTilde(const SympSpace& s, const FreeLagrangian& N, const FreeLagrangian& L) : s_(&s), N_(N.basis) {
    const int dim = s.dim(), n = s.n();
    MatR p(dim, VecR(dim));
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < dim; ++i) {
        p[i][j] = N.basis[j][i];
        p[i][n + j] = L.basis[j][i];
      }
    }
    auto inv = inverse(s.ring(), p);
    if (!inv) throw NotTransversal("weil2: r-map needs N~ + L~ = V~");
    inv_ = std::move(*inv);
  }

  VecR operator()(const VecR& m) const {
    const GaloisRing& R = s_->ring();
    VecR out = s_->zero_t();
    for (int j = 0; j < s_->n(); ++j) {
      RingElem c = R.zero();
      for (int i = 0; i < s_->dim(); ++i) c = R.add(c, R.mul(inv_[j][i], m[i]));
      out = s_->add_t(out, s_->scale_t(c, N_[j]));
    }
    return out;
  }

 private:
  const SympSpace* s_;
  std::vector<VecR> N_;
  MatR inv_;
};

/// det[omega~(x_i, y_j)], the pairing of x_1^...^x_n with y_1^...^y_n.
inline RingElem wedge_det(const SympSpace& s, const std::vector<VecR>& xs, const std::vector<VecR>& ys) {
  MatR m(xs.size(), VecR(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) m[i][j] = s.omega_t(xs[i], ys[j]);
  }
  return det(s.ring(), m);
}

inline RingElem wedge_pairing(const SympSpace& s, const OrientedLagrangian& a, const OrientedLagrangian& b) {
  const GaloisRing& R = s.ring();
  RingElem w = R.mul(R.mul(a.unit, b.unit), wedge_det(s, a.sub.basis, b.sub.basis));
  if (!R.is_unit(w)) throw NotTransversal("weil2: wedge pairing of a non-transversal pair");
  return w;
}

}  // namespace weil2
