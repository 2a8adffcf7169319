#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_8).
//
// An element is a0 + a1*z + a2*z^2 + a3*z^3 with z = exp(2*pi*i/8), so that
// z^4 = -1, z^2 = i and sqrt(2) = z + z^-1 = z - z^3. Coefficients are GMP
// rationals, so nothing here ever rounds.

#include <gmpxx.h>

#include <array>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace weil2 {

using Rational = mpq_class;

class DivisionByZero : public std::domain_error {
 public:
  DivisionByZero() : std::domain_error("weil2: division by zero in Q(zeta_8)") {}
};

/// Fourth roots of unity, as returned by CycNum::mu4().
enum class Mu4 { One, I, MinusOne, MinusI };

class CycNum {
 public:
  CycNum() = default;
  CycNum(long v) : c_{Rational(v), 0, 0, 0} {}  // NOLINT: implicit on purpose
  CycNum(const Rational& v) : c_{v, 0, 0, 0} {}  // NOLINT
  CycNum(Rational a0, Rational a1, Rational a2, Rational a3) : c_{std::move(a0), std::move(a1), std::move(a2), std::move(a3)} {
    for (auto& x : c_) x.canonicalize();
  }

  static CycNum zeta() { return {0, 1, 0, 0}; }
  static CycNum i() { return {0, 0, 1, 0}; }
  static CycNum sqrt2() { return {0, 1, 0, -1}; }

  /// z^k for any integer k.
  static CycNum zeta_pow(long k) {
    long r = ((k % 8) + 8) % 8;
    CycNum out;
    out.c_[r % 4] = (r < 4) ? 1 : -1;
    return out;
  }

  /// i^k for any integer k; the value of the additive character on Z/4.
  static CycNum i_pow(long k) { return zeta_pow(2 * k); }

  /// 2^(e/2) for any integer e, the positive real square root when e is odd.
  static CycNum sqrt2_pow(long e) {
    long q = e >= 0 ? e / 2 : -((-e + 1) / 2);
    long r = e - 2 * q;
    Rational p = 1;
    if (q >= 0) {
      mpz_class t = 1;
      t <<= static_cast<unsigned long>(q);
      p = Rational(t);
    } else {
      mpz_class t = 1;
      t <<= static_cast<unsigned long>(-q);
      p = Rational(1, 1) / Rational(t);
    }
    CycNum out(p);
    if (r == 1) out *= sqrt2();
    return out;
  }

  const Rational& operator[](std::size_t k) const { return c_[k]; }
  const std::array<Rational, 4>& coeffs() const { return c_; }

  bool is_zero() const {
    return sgn(c_[0]) == 0 && sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0;
  }
  bool is_rational() const { return sgn(c_[1]) == 0 && sgn(c_[2]) == 0 && sgn(c_[3]) == 0; }

  friend bool operator==(const CycNum& a, const CycNum& b) { return a.c_ == b.c_; }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  CycNum operator-() const {
    CycNum out;
    for (int k = 0; k < 4; ++k) out.c_[k] = -c_[k];
    return out;
  }
  CycNum& operator+=(const CycNum& o) {
    for (int k = 0; k < 4; ++k) c_[k] += o.c_[k];
    return *this;
  }
  CycNum& operator-=(const CycNum& o) {
    for (int k = 0; k < 4; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  CycNum& operator*=(const CycNum& o) {
    *this = *this * o;
    return *this;
  }
  CycNum& operator/=(const CycNum& o) {
    *this = *this * o.inv();
    return *this;
  }
  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inv(); }

  friend CycNum operator*(const CycNum& a, const CycNum& b) {
    CycNum out;
    Rational t;
    for (int p = 0; p < 4; ++p) {
      if (sgn(a.c_[p]) == 0) continue;
      for (int q = 0; q < 4; ++q) {
        if (sgn(b.c_[q]) == 0) continue;
        t = a.c_[p] * b.c_[q];
        int k = p + q;
        if (k < 4) {
          out.c_[k] += t;
        } else {
          out.c_[k - 4] -= t;
        }
      }
    }
    return out;
  }

  /// Field automorphism z -> z^k for odd k.
  CycNum galois(int k) const {
    CycNum out;
    for (int p = 0; p < 4; ++p) {
      int e = ((p * k) % 8 + 8) % 8;
      if (e < 4) {
        out.c_[e] += c_[p];
      } else {
        out.c_[e - 4] -= c_[p];
      }
    }
    return out;
  }

  /// Complex conjugation: (a0,a1,a2,a3) -> (a0,-a3,-a2,-a1).
  CycNum conj() const { return {c_[0], -c_[3], -c_[2], -c_[1]}; }

  /// x * conj(x), a nonnegative element of Q(sqrt 2).
  CycNum abs2() const { return *this * conj(); }

  /// Norm down to Q: product of the four Galois conjugates.
  Rational norm() const {
    CycNum p = *this * galois(3) * galois(5) * galois(7);
    return p[0];
  }

  CycNum inv() const {
    if (is_zero()) throw DivisionByZero();
    CycNum rest = galois(3) * galois(5) * galois(7);
    Rational n = (*this * rest)[0];
    CycNum out;
    for (int k = 0; k < 4; ++k) out.c_[k] = rest.c_[k] / n;
    return out;
  }

  CycNum pow(long e) const {
    if (e < 0) return inv().pow(-e);
    CycNum base = *this;
    CycNum acc = 1;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  /// Exact membership test in mu_4.
  std::optional<Mu4> mu4() const {
    if (sgn(c_[1]) != 0 || sgn(c_[3]) != 0) return std::nullopt;
    if (sgn(c_[2]) == 0) {
      if (c_[0] == 1) return Mu4::One;
      if (c_[0] == -1) return Mu4::MinusOne;
      return std::nullopt;
    }
    if (sgn(c_[0]) != 0) return std::nullopt;
    if (c_[2] == 1) return Mu4::I;
    if (c_[2] == -1) return Mu4::MinusI;
    return std::nullopt;
  }

  /// If x = z^k for some k, returns k in [0,8).
  std::optional<int> mu8_exponent() const {
    for (int k = 0; k < 8; ++k) {
      if (*this == zeta_pow(k)) return k;
    }
    return std::nullopt;
  }

  std::string to_string() const {
    std::string s = "[";
    for (int k = 0; k < 4; ++k) {
      if (k) s += ",";
      s += c_[k].get_str();
    }
    return s + "]";
  }

  friend std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.to_string(); }

 private:
  std::array<Rational, 4> c_{0, 0, 0, 0};
};

inline const char* to_string(Mu4 m) {
  switch (m) {
    case Mu4::One: return "1";
    case Mu4::I: return "i";
    case Mu4::MinusOne: return "-1";
    case Mu4::MinusI: return "-i";
  }
  return "?";
}

/// Classification helper used by the CLI and reports.
inline std::string mu4_classify(const CycNum& x) {
  auto m = x.mu4();
  return m ? to_string(*m) : "not-a-4th-root";
}

}  // namespace weil2
