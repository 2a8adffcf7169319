#include "weil2/symplectic.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace weil2;

namespace {

// Number of Lagrangians in k^{2n}, |k| = q: prod_{i=1}^n (q^i + 1).
std::size_t lagrangian_count(std::size_t q, int n) {
  std::size_t out = 1, p = 1;
  for (int i = 1; i <= n; ++i) {
    p *= q;
    out *= p + 1;
  }
  return out;
}

}  // namespace

TEST(Symplectic, FormIsAlternatingAndNondegenerate) {
  SympSpace s(make_ring(2), 1);
  for (VecV v = 0; v < s.size(); ++v) {
    EXPECT_EQ(s.omega_bar(v, v).code, 0);
    bool radical = v != 0;
    for (VecV w = 0; w < s.size(); ++w) {
      if (s.omega_bar(v, w).code != 0) radical = false;
      EXPECT_EQ(s.omega_bar(v, w), s.omega_bar(w, v));
    }
    EXPECT_FALSE(radical);
  }
}

TEST(Symplectic, LagrangianCounts) {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}, {4, 1}, {1, 3}, {1, 4}}) {
    SympSpace s(make_ring(d), n);
    auto lags = enumerate_lagrangians(s);
    EXPECT_EQ(lags.size(), lagrangian_count(std::size_t{1} << d, n)) << d << "," << n;
    for (const auto& L : lags) {
      EXPECT_EQ(L->members.size(), std::size_t{1} << (d * n));
      for (VecV a : L->members) {
        for (VecV b : L->members) EXPECT_EQ(s.omega_bar(a, b).code, 0);
      }
    }
  }
}

TEST(Symplectic, EnumerationCapRefusesLargeShapes) {
  if (size_caps_disabled()) GTEST_SKIP();
  SympSpace s(make_ring(5), 1);
  EXPECT_THROW(enumerate_lagrangians(s), CapExceeded);
}

TEST(Symplectic, EnhancementCountMatchesBruteForce) {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}}) {
    SympSpace s(make_ring(d), n);
    const GaloisRing& R = s.ring();
    for (const auto& L : enumerate_lagrangians(s)) {
      // Brute force over alpha on the F2-basis; alpha is then forced on L by the defining relation.
      const auto& fb = L->f2basis;
      std::uint64_t total = 1;
      for (std::size_t k = 0; k < fb.size(); ++k) total *= R.size();
      std::uint64_t found = 0;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<RingElem> alpha(s.size());
        std::vector<RingElem> vals(fb.size());
        std::uint64_t r = idx;
        for (auto& v : vals) {
          v = {static_cast<std::uint16_t>(r % R.size())};
          r /= R.size();
        }
        // Fill all of L by Gray-code style accumulation over subsets.
        for (std::uint32_t m = 1; m < (1u << fb.size()); ++m) {
          int low = __builtin_ctz(m);
          std::uint32_t rest = m & (m - 1);
          VecV x = SympSpace::combine(fb, rest), y = fb[low];
          alpha[x ^ y] = R.add(R.add(alpha[x], vals[low]), s.beta(x, y));
        }
        if (is_enhancement(s, *L, alpha)) ++found;
      }
      EXPECT_EQ(found, enhancement_count(s)) << d << "," << n;
      EXPECT_EQ(enumerate_enhancements(s, L).size(), enhancement_count(s));
    }
    EXPECT_EQ(enhancement_count(s), std::uint64_t{1} << (d * d * n));
  }
}

TEST(Symplectic, FreeLiftsFromSymmetricMatricesAreExactlyTheFreeLifts) {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {1, 3}}) {
    SympSpace s(make_ring(d), n);
    const std::size_t m = static_cast<std::size_t>(n * (n + 1) / 2);
    const std::uint64_t q = s.ring().field_size();
    for (const auto& L : enumerate_lagrangians(s)) {
      auto all = free_lifts(s, *L);
      std::set<std::vector<VecR>> expected;
      for (const auto& f : all) expected.insert(make_free(s, f.basis).basis);
      std::set<std::vector<VecR>> got;
      std::uint64_t total = 1;
      for (std::size_t k = 0; k < m; ++k) total *= q;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<FieldElem> upper(m);
        std::uint64_t r = idx;
        for (auto& u : upper) {
          u = {static_cast<std::uint16_t>(r % q)};
          r /= q;
        }
        FreeLagrangian f = free_lift_from_symmetric(s, *L, upper);
        EXPECT_EQ(*reduce_free(s, f), *L);
        got.insert(make_free(s, f.basis).basis);
      }
      EXPECT_EQ(got.size(), total);
      EXPECT_EQ(got, expected);
    }
  }
}

TEST(Symplectic, EnhancementFromLiftPolarizesBeta) {
  SympSpace s(make_ring(1), 2);
  for (const auto& L : enumerate_lagrangians(s)) {
    for (const auto& f : free_lifts(s, *L)) EXPECT_TRUE(is_enhancement(s, *L, enhance_from_lift(s, f).alpha));
  }
}

TEST(Symplectic, TransversalityIsSymmetric) {
  SympSpace s(make_ring(1), 2);
  auto lags = enumerate_lagrangians(s);
  for (const auto& a : lags) {
    EXPECT_FALSE(transversal(*a, *a));
    for (const auto& b : lags) {
      EXPECT_EQ(transversal(*a, *b), transversal(*b, *a));
      std::size_t meet = 0;
      for (VecV v : a->members) meet += b->contains(v);
      EXPECT_EQ(transversal(*a, *b), meet == 1);
    }
  }
}
