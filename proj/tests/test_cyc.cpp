#include "weil2/cyc.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <random>

using weil2::CycNum;
using weil2::Rational;
using C = std::complex<double>;

namespace {

C numeric(const CycNum& x) {
  const C z = std::polar(1.0, M_PI / 4);
  C out = 0;
  for (int k = 0; k < 4; ++k) out += x[k].get_d() * std::pow(z, k);
  return out;
}

CycNum random_cyc(std::mt19937& g) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  return {Rational(num(g), den(g)), Rational(num(g), den(g)), Rational(num(g), den(g)), Rational(num(g), den(g))};
}

void expect_close(C a, C b) {
  EXPECT_NEAR(a.real(), b.real(), 1e-9);
  EXPECT_NEAR(a.imag(), b.imag(), 1e-9);
}

}  // namespace

TEST(Cyc, ArithmeticAgreesWithComplexDoubles) {
  std::mt19937 g(3);
  for (int t = 0; t < 300; ++t) {
    CycNum a = random_cyc(g), b = random_cyc(g);
    expect_close(numeric(a + b), numeric(a) + numeric(b));
    expect_close(numeric(a * b), numeric(a) * numeric(b));
    expect_close(numeric(a.conj()), std::conj(numeric(a)));
    expect_close(numeric(a.abs2()), std::norm(numeric(a)));
    if (!b.is_zero()) {
      expect_close(numeric(a / b), numeric(a) / numeric(b));
      EXPECT_EQ((a / b) * b, a);
    }
  }
}

TEST(Cyc, RootsOfUnity) {
  EXPECT_EQ(CycNum::zeta().pow(8), CycNum(1));
  EXPECT_NE(CycNum::zeta().pow(4), CycNum(1));
  EXPECT_EQ(CycNum::i() * CycNum::i(), CycNum(-1));
  EXPECT_EQ(CycNum::sqrt2() * CycNum::sqrt2(), CycNum(2));
  EXPECT_EQ(CycNum::sqrt2_pow(3), CycNum::sqrt2() * CycNum(2));
  EXPECT_EQ(CycNum::sqrt2_pow(-2), CycNum(Rational(1, 2)));
  for (int k = 0; k < 8; ++k) {
    expect_close(numeric(CycNum::zeta_pow(k)), std::polar(1.0, k * M_PI / 4));
    ASSERT_TRUE(CycNum::zeta_pow(k).mu8_exponent().has_value());
    EXPECT_EQ(*CycNum::zeta_pow(k).mu8_exponent(), k);
    EXPECT_EQ(CycNum::zeta_pow(k).mu4().has_value(), k % 2 == 0);
  }
}

TEST(Cyc, GaloisActionIsMultiplicative) {
  std::mt19937 g(5);
  for (int t = 0; t < 50; ++t) {
    CycNum a = random_cyc(g), b = random_cyc(g);
    for (int k : {1, 3, 5, 7}) EXPECT_EQ((a * b).galois(k), a.galois(k) * b.galois(k));
  }
  EXPECT_EQ(CycNum(1, 1, 0, 0).norm(), Rational(2));
  EXPECT_FALSE(CycNum(1, 1, 0, 0).abs2().is_rational());
  EXPECT_EQ(CycNum(1, 0, 1, 0).abs2(), CycNum(2));
}

TEST(Cyc, DivisionByZeroThrows) { EXPECT_THROW(CycNum(0).inv(), weil2::DivisionByZero); }
