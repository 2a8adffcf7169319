#pragma once

// The Galois ring R = GR(4,d) = Z/4[x]/(f) and its residue field k = F_{2^d}.
//
// Elements are stored by code: a RingElem with coordinates (c_0..c_{d-1}) in
// the power basis 1, x, ..., x^{d-1} has code sum c_i 4^i; a FieldElem with
// bits (b_0..b_{d-1}) has code sum b_i 2^i. Addition and multiplication go
// through precomputed tables, which bounds d to kMaxDegree.

#include "weil2/cyc.hpp"
#include "weil2/errors.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace weil2 {

struct RingElem {
  std::uint16_t code = 0;
  friend auto operator<=>(const RingElem&, const RingElem&) = default;
};

struct FieldElem {
  std::uint16_t code = 0;
  friend auto operator<=>(const FieldElem&, const FieldElem&) = default;
};

/// Coefficients of a polynomial over Z/4, lowest degree first.
using Poly4 = std::vector<int>;

namespace detail {

inline int mod4(long v) { return static_cast<int>(((v % 4) + 4) % 4); }

// Irreducibility of a polynomial over F2 given as a bitmask (bit i = coeff of x^i).
inline int degree2(unsigned p) {
  int d = -1;
  while (p >> (d + 1)) ++d;
  return d;
}

inline unsigned polymod2(unsigned a, unsigned b) {
  int db = degree2(b);
  while (degree2(a) >= db) a ^= b << (degree2(a) - db);
  return a;
}

inline bool irreducible2(unsigned p) {
  int d = degree2(p);
  if (d <= 0) return false;
  for (unsigned q = 2; degree2(q) <= d / 2; ++q) {
    if (polymod2(p, q) == 0) return false;
  }
  return true;
}

}  // namespace detail

/// Default irreducible polynomials over F2, as bitmasks, for d = 1..6.
inline unsigned default_f2_modulus(int d) {
  switch (d) {
    case 1: return 0b11;        // x + 1
    case 2: return 0b111;       // x^2 + x + 1
    case 3: return 0b1011;      // x^3 + x + 1
    case 4: return 0b10011;     // x^4 + x + 1
    case 5: return 0b100101;    // x^5 + x^2 + 1
    case 6: return 0b1000011;   // x^6 + x + 1
    default: throw InvalidInput("weil2: no default modulus for d=" + std::to_string(d));
  }
}

/// Graeffe lift of an F2 polynomial g to Z/4: f(x^2) = +-(e(x)^2 - o(x)^2) where
/// g = e + o splits into even and odd parts. The roots of f are Teichmuller
/// lifts of the roots of g, so x itself is a root of unity of order 2^d - 1.
inline Poly4 graeffe_lift(unsigned g) {
  int d = detail::degree2(g);
  std::vector<long> e(d + 1, 0), o(d + 1, 0);
  for (int i = 0; i <= d; ++i) {
    if ((g >> i) & 1u) (i % 2 == 0 ? e : o)[i] = 1;
  }
  std::vector<long> h(2 * d + 1, 0);
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) h[i + j] += e[i] * e[j] - o[i] * o[j];
  }
  long sign = (h[2 * d] % 4 + 4) % 4 == 1 ? 1 : -1;
  Poly4 f(d + 1);
  for (int i = 0; i <= d; ++i) f[i] = detail::mod4(sign * h[2 * i]);
  return f;
}

class GaloisRing {
 public:
  static constexpr int kMaxDegree = 5;

  /// The ring with the Graeffe-lifted default modulus.
  explicit GaloisRing(int d) : GaloisRing(graeffe_lift(default_f2_modulus(d))) {}

  /// Any monic lift of an irreducible polynomial over F2; f has degree d.
  explicit GaloisRing(Poly4 modulus) : mod_(std::move(modulus)) {
    d_ = static_cast<int>(mod_.size()) - 1;
    if (d_ < 1 || d_ > kMaxDegree) {
      throw InvalidInput("weil2: ring degree must be in [1," + std::to_string(kMaxDegree) + "]");
    }
    for (auto& c : mod_) c = detail::mod4(c);
    if (mod_[d_] != 1) throw InvalidInput("weil2: modulus must be monic");
    unsigned red = 0;
    for (int i = 0; i <= d_; ++i) red |= static_cast<unsigned>(mod_[i] & 1) << i;
    if (!detail::irreducible2(red)) throw InvalidInput("weil2: modulus is not irreducible mod 2");
    build_tables();
  }

  int degree() const { return d_; }
  const Poly4& modulus() const { return mod_; }
  std::size_t size() const { return size_; }          // 4^d
  std::size_t field_size() const { return fsize_; }   // 2^d
  std::size_t unit_count() const { return size_ - fsize_; }

  RingElem zero() const { return {0}; }
  RingElem one() const { return {1}; }
  RingElem from_int(long v) const { return {static_cast<std::uint16_t>(detail::mod4(v))}; }
  /// The class of x, the generator of the power basis.
  RingElem gen() const { return d_ == 1 ? from_coords({detail::mod4(-mod_[0])}) : RingElem{4}; }

  std::vector<int> coords(RingElem a) const {
    std::vector<int> c(d_);
    for (int i = 0; i < d_; ++i) c[i] = (a.code >> (2 * i)) & 3;
    return c;
  }
  RingElem from_coords(const std::vector<int>& c) const {
    unsigned code = 0;
    for (int i = 0; i < d_ && i < static_cast<int>(c.size()); ++i) code |= static_cast<unsigned>(detail::mod4(c[i])) << (2 * i);
    return {static_cast<std::uint16_t>(code)};
  }

  RingElem add(RingElem a, RingElem b) const { return {add_[a.code * size_ + b.code]}; }
  RingElem neg(RingElem a) const { return {neg_[a.code]}; }
  RingElem sub(RingElem a, RingElem b) const { return add(a, neg(b)); }
  RingElem mul(RingElem a, RingElem b) const { return {mul_[a.code * size_ + b.code]}; }
  RingElem twice(RingElem a) const { return add(a, a); }

  bool is_unit(RingElem a) const { return reduce(a).code != 0; }
  RingElem inv(RingElem a) const {
    if (!is_unit(a)) throw NonUnit("weil2: inverse of a non-unit in R");
    return {inv_[a.code]};
  }

  RingElem frobenius(RingElem a) const { return {frob_[a.code]}; }
  /// Trace to the prime ring Z/4, as an integer in [0,4).
  int trace(RingElem a) const { return trace_[a.code]; }
  /// Norm of a unit to (Z/4)^x = {1,3}.
  int norm(RingElem a) const {
    if (!is_unit(a)) throw NonUnit("weil2: norm of a non-unit");
    RingElem p = one(), c = a;
    for (int i = 0; i < d_; ++i) {
      p = mul(p, c);
      c = frobenius(c);
    }
    auto cs = coords(p);
    for (int i = 1; i < d_; ++i) {
      if (cs[i] != 0) throw Error("weil2: norm left the prime ring");
    }
    return cs[0];
  }

  /// psi(z) = i^{tr z}.
  CycNum psi(RingElem a) const { return CycNum::i_pow(trace(a)); }

  FieldElem reduce(RingElem a) const {
    unsigned code = 0;
    for (int i = 0; i < d_; ++i) code |= ((a.code >> (2 * i)) & 1u) << i;
    return {static_cast<std::uint16_t>(code)};
  }
  /// The {0,1}-coordinate section k -> R (not a ring map).
  RingElem lift(FieldElem a) const {
    unsigned code = 0;
    for (int i = 0; i < d_; ++i) code |= ((a.code >> i) & 1u) << (2 * i);
    return {static_cast<std::uint16_t>(code)};
  }
  /// The isomorphism k -> 2R, a -> 2*lift(a).
  RingElem two_times(FieldElem a) const { return twice(lift(a)); }
  /// Inverse of two_times on the ideal 2R.
  FieldElem halve(RingElem a) const {
    if (reduce(a).code != 0) throw InvalidInput("weil2: halve() needs an element of 2R");
    unsigned code = 0;
    for (int i = 0; i < d_; ++i) code |= ((a.code >> (2 * i + 1)) & 1u) << i;
    return {static_cast<std::uint16_t>(code)};
  }

  FieldElem fadd(FieldElem a, FieldElem b) const { return {static_cast<std::uint16_t>(a.code ^ b.code)}; }
  FieldElem fmul(FieldElem a, FieldElem b) const { return {fmul_[a.code * fsize_ + b.code]}; }
  FieldElem finv(FieldElem a) const {
    if (a.code == 0) throw NonUnit("weil2: inverse of zero in k");
    return {finv_[a.code]};
  }
  /// Absolute trace k -> F2.
  int ftrace(FieldElem a) const { return trace(lift(a)) & 1; }

  std::vector<RingElem> elements() const {
    std::vector<RingElem> out(size_);
    for (std::size_t c = 0; c < size_; ++c) out[c] = {static_cast<std::uint16_t>(c)};
    return out;
  }
  std::vector<RingElem> units() const {
    std::vector<RingElem> out;
    for (auto a : elements()) {
      if (is_unit(a)) out.push_back(a);
    }
    return out;
  }

  std::string modulus_string() const {
    std::string s;
    for (int i = d_; i >= 0; --i) {
      if (mod_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      if (i == 0 || mod_[i] != 1) s += std::to_string(mod_[i]);
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

 private:
  std::vector<int> polymul(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> prod(2 * d_ - 1, 0);
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j < d_; ++j) prod[i + j] += a[i] * b[j];
    }
    for (int k = 2 * d_ - 2; k >= d_; --k) {
      int c = detail::mod4(prod[k]);
      prod[k] = 0;
      for (int i = 0; i < d_; ++i) prod[k - d_ + i] -= c * mod_[i];
    }
    prod.resize(d_);
    for (auto& c : prod) c = detail::mod4(c);
    return prod;
  }

  void build_tables() {
    size_ = std::size_t{1} << (2 * d_);
    fsize_ = std::size_t{1} << d_;
    add_.resize(size_ * size_);
    mul_.resize(size_ * size_);
    neg_.resize(size_);
    std::vector<std::vector<int>> cs(size_);
    for (std::size_t a = 0; a < size_; ++a) cs[a] = coords({static_cast<std::uint16_t>(a)});
    for (std::size_t a = 0; a < size_; ++a) {
      std::vector<int> n(d_);
      for (int i = 0; i < d_; ++i) n[i] = -cs[a][i];
      neg_[a] = from_coords(n).code;
      for (std::size_t b = 0; b < size_; ++b) {
        std::vector<int> s(d_);
        for (int i = 0; i < d_; ++i) s[i] = cs[a][i] + cs[b][i];
        add_[a * size_ + b] = from_coords(s).code;
        mul_[a * size_ + b] = from_coords(polymul(cs[a], cs[b])).code;
      }
    }
    inv_.assign(size_, 0);
    for (std::size_t a = 0; a < size_; ++a) {
      for (std::size_t b = 0; b < size_; ++b) {
        if (mul_[a * size_ + b] == 1) inv_[a] = static_cast<std::uint16_t>(b);
      }
    }
    fmul_.resize(fsize_ * fsize_);
    finv_.assign(fsize_, 0);
    for (std::size_t a = 0; a < fsize_; ++a) {
      for (std::size_t b = 0; b < fsize_; ++b) {
        RingElem p = mul(lift({static_cast<std::uint16_t>(a)}), lift({static_cast<std::uint16_t>(b)}));
        fmul_[a * fsize_ + b] = reduce(p).code;
        if (reduce(p).code == 1) finv_[a] = static_cast<std::uint16_t>(b);
      }
    }
    build_frobenius();
  }

  // Frobenius is pinned down by the image y of x: the unique root of the
  // modulus congruent to x^2 mod 2.
  void build_frobenius() {
    RingElem x = gen();
    FieldElem xbar_sq = fmul(reduce(x), reduce(x));
    std::vector<RingElem> roots;
    for (std::size_t w = 0; w < fsize_; ++w) {
      RingElem y = add(lift(xbar_sq), two_times({static_cast<std::uint16_t>(w)}));
      RingElem val = zero();
      for (int i = d_; i >= 0; --i) val = add(mul(val, y), from_int(mod_[i]));
      if (val.code == 0) roots.push_back(y);
    }
    if (roots.size() != 1) throw Error("weil2: Hensel lift of the Frobenius root is not unique");
    std::vector<RingElem> ypow(d_);
    ypow[0] = one();
    for (int i = 1; i < d_; ++i) ypow[i] = mul(ypow[i - 1], roots[0]);
    frob_.resize(size_);
    for (std::size_t a = 0; a < size_; ++a) {
      auto c = coords({static_cast<std::uint16_t>(a)});
      RingElem s = zero();
      for (int i = 0; i < d_; ++i) s = add(s, mul(from_int(c[i]), ypow[i]));
      frob_[a] = s.code;
    }
    trace_.resize(size_);
    for (std::size_t a = 0; a < size_; ++a) {
      RingElem s = zero(), c{static_cast<std::uint16_t>(a)};
      for (int i = 0; i < d_; ++i) {
        s = add(s, c);
        c = frobenius(c);
      }
      if (s.code > 3) throw Error("weil2: trace left the prime ring");
      trace_[a] = static_cast<std::uint8_t>(s.code);
    }
  }

  int d_ = 0;
  Poly4 mod_;
  std::size_t size_ = 0, fsize_ = 0;
  std::vector<std::uint16_t> add_, mul_, neg_, inv_, frob_, fmul_, finv_;
  std::vector<std::uint8_t> trace_;
};

using RingPtr = std::shared_ptr<const GaloisRing>;

inline RingPtr make_ring(int d) { return std::make_shared<const GaloisRing>(d); }

}  // namespace weil2
