#include "weil2/galois_ring.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace weil2;

namespace {

// GR(4,2) by hand: a0 + a1 x with x^2 = -x - 1.
std::pair<int, int> hand_mul(std::pair<int, int> a, std::pair<int, int> b) {
  int c0 = a.first * b.first, c1 = a.first * b.second + a.second * b.first, c2 = a.second * b.second;
  return {((c0 - c2) % 4 + 4) % 4, ((c1 - c2) % 4 + 4) % 4};
}

}  // namespace

TEST(GaloisRing, DegreeTwoMatchesHandModel) {
  GaloisRing R(2);
  ASSERT_EQ(R.modulus_string(), "x^2 + x + 1");
  for (RingElem a : R.elements()) {
    auto ca = R.coords(a);
    // tr(a0 + a1 x) = 2 a0 + a1 (x + x^2) = 2 a0 - a1.
    EXPECT_EQ(R.trace(a), ((2 * ca[0] - ca[1]) % 4 + 4) % 4);
    for (RingElem b : R.elements()) {
      auto cb = R.coords(b);
      auto [p0, p1] = hand_mul({ca[0], ca[1]}, {cb[0], cb[1]});
      EXPECT_EQ(R.coords(R.mul(a, b)), (std::vector<int>{p0, p1}));
      EXPECT_EQ(R.coords(R.add(a, b)), (std::vector<int>{(ca[0] + cb[0]) % 4, (ca[1] + cb[1]) % 4}));
    }
  }
}

TEST(GaloisRing, SizesAndUnits) {
  for (int d = 1; d <= 4; ++d) {
    GaloisRing R(d);
    EXPECT_EQ(R.size(), std::size_t{1} << (2 * d));
    EXPECT_EQ(R.field_size(), std::size_t{1} << d);
    EXPECT_EQ(R.unit_count(), (std::size_t{1} << (2 * d)) - (std::size_t{1} << d));
    EXPECT_EQ(R.units().size(), R.unit_count());
    for (RingElem u : R.units()) EXPECT_EQ(R.mul(u, R.inv(u)), R.one());
  }
  EXPECT_THROW(GaloisRing(0), InvalidInput);
  EXPECT_THROW(GaloisRing(6), InvalidInput);
}

TEST(GaloisRing, TraceIsLinearAndSurjective) {
  for (int d = 1; d <= 4; ++d) {
    GaloisRing R(d);
    std::set<int> image;
    for (RingElem a : R.elements()) {
      image.insert(R.trace(a));
      EXPECT_EQ(R.trace(R.mul(R.from_int(3), a)), (3 * R.trace(a)) % 4);
    }
    EXPECT_EQ(image.size(), 4u) << d;
    if (d <= 2) {
      for (RingElem a : R.elements()) {
        for (RingElem b : R.elements()) {
          EXPECT_EQ(R.trace(R.add(a, b)), (R.trace(a) + R.trace(b)) % 4);
          EXPECT_EQ(R.psi(R.add(a, b)), R.psi(a) * R.psi(b));
        }
      }
    }
  }
}

TEST(GaloisRing, FrobeniusIsAnAutomorphismOfOrderD) {
  for (int d = 1; d <= 4; ++d) {
    GaloisRing R(d);
    for (RingElem a : R.elements()) {
      RingElem f = a;
      for (int k = 0; k < d; ++k) f = R.frobenius(f);
      EXPECT_EQ(f, a);
      // Trace is the sum of the conjugates.
      RingElem sum = R.zero(), c = a;
      for (int k = 0; k < d; ++k) {
        sum = R.add(sum, c);
        c = R.frobenius(c);
      }
      EXPECT_EQ(sum, R.from_int(R.trace(a)));
    }
    if (d <= 2) {
      for (RingElem a : R.elements()) {
        for (RingElem b : R.elements()) {
          EXPECT_EQ(R.frobenius(R.mul(a, b)), R.mul(R.frobenius(a), R.frobenius(b)));
          EXPECT_EQ(R.frobenius(R.add(a, b)), R.add(R.frobenius(a), R.frobenius(b)));
        }
      }
    }
  }
}

TEST(GaloisRing, ReductionAndHalving) {
  GaloisRing R(3);
  for (RingElem a : R.elements()) {
    EXPECT_EQ(R.reduce(R.lift(R.reduce(a))), R.reduce(a));
    EXPECT_EQ(R.halve(R.twice(a)), R.reduce(a));
    for (RingElem b : R.elements()) EXPECT_EQ(R.reduce(R.mul(a, b)), R.fmul(R.reduce(a), R.reduce(b)));
  }
  EXPECT_THROW(R.halve(R.one()), InvalidInput);
  EXPECT_THROW(R.inv(R.from_int(2)), NonUnit);
}
