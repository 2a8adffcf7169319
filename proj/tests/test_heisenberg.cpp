#include "weil2/heisenberg.hpp"

#include <gtest/gtest.h>

using namespace weil2;

TEST(Heisenberg, GroupLaw) {
  SympSpace s(make_ring(2), 1);
  const GaloisRing& R = s.ring();
  std::vector<HeisElem> hs;
  for (VecV v = 0; v < s.size(); v += 3) {
    for (RingElem z : R.elements()) hs.push_back({v, z});
  }
  for (const auto& a : hs) {
    HeisElem e = h_mul(s, a, h_inv(s, a));
    EXPECT_EQ(e.v, 0u);
    EXPECT_EQ(e.z, R.zero());
  }
  for (std::size_t i = 0; i < hs.size(); i += 7) {
    for (std::size_t j = 0; j < hs.size(); j += 5) {
      for (std::size_t k = 0; k < hs.size(); k += 11) {
        HeisElem x = h_mul(s, h_mul(s, hs[i], hs[j]), hs[k]);
        HeisElem y = h_mul(s, hs[i], h_mul(s, hs[j], hs[k]));
        EXPECT_EQ(x.v, y.v);
        EXPECT_EQ(x.z, y.z);
      }
    }
  }
}

TEST(Heisenberg, SymplecticGroupOrders) {
  SympSpace s(make_ring(1), 1);
  EXPECT_EQ(enumerate_sp(s).size(), 6u);
  EXPECT_EQ(enumerate_sp_tilde(s).size(), 48u);
  SympSpace s2(make_ring(2), 1);
  EXPECT_EQ(enumerate_sp(s2).size(), 60u);  // |SL2(F4)|
  SympSpace s3(make_ring(1), 2);
  EXPECT_EQ(enumerate_sp(s3).size(), 720u);  // |Sp4(F2)|
}

TEST(Heisenberg, AffineSymplecticGroup) {
  SympSpace s(make_ring(1), 1);
  auto all = enumerate_asp(s);
  EXPECT_EQ(all.size(), 24u);
  for (const auto& a : all) EXPECT_TRUE(is_valid(s, a));
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(asp_mul(s, all[i], asp_inverse(s, all[i])), asp_identity(s));
    for (std::size_t j = 0; j < all.size(); j += 5) {
      for (std::size_t k = 0; k < all.size(); k += 7) {
        EXPECT_EQ(asp_mul(s, asp_mul(s, all[i], all[j]), all[k]), asp_mul(s, all[i], asp_mul(s, all[j], all[k])));
      }
    }
  }
}

TEST(Heisenberg, AspActsByAutomorphisms) {
  SympSpace s(make_ring(1), 1);
  const GaloisRing& R = s.ring();
  for (const auto& a : enumerate_asp(s)) {
    for (VecV v = 0; v < s.size(); ++v) {
      for (VecV w = 0; w < s.size(); ++w) {
        for (RingElem z : R.elements()) {
          HeisElem x{v, z}, y{w, R.zero()};
          HeisElem lhs = asp_apply(s, a, h_mul(s, x, y));
          HeisElem rhs = h_mul(s, asp_apply(s, a, x), asp_apply(s, a, y));
          EXPECT_EQ(lhs.v, rhs.v);
          EXPECT_EQ(lhs.z, rhs.z);
        }
      }
    }
  }
}

TEST(Heisenberg, LiftIsMultiplicative) {
  SympSpace s(make_ring(1), 1);
  auto sp = enumerate_sp_tilde(s);
  for (const auto& g : sp) {
    for (const auto& h : sp) EXPECT_EQ(lift_sp(s, compose(s, g, h)), asp_mul(s, lift_sp(s, g), lift_sp(s, h)));
  }
}

TEST(Heisenberg, TransvectionsAreSymplectic) {
  SympSpace s(make_ring(2), 2);
  for (VecV v = 1; v < s.size(); v += 17) {
    for (std::uint16_t a = 1; a < 4; ++a) EXPECT_TRUE(is_symplectic(s, transvection(s, v, {a})));
  }
}

TEST(Heisenberg, PseudoSymplecticIsOrthogonal) {
  SympSpace s(make_ring(1), 1);
  int solvable = 0;
  for (const auto& g : enumerate_sp(s)) {
    bool p = pseudo_symplectic_solvable(s, g);
    EXPECT_EQ(p, in_orthogonal_group(s, g));
    solvable += p;
  }
  EXPECT_EQ(solvable, 2);
}

TEST(Heisenberg, AffineGroupOrderByBruteForce) {
  // Every g in Sp(V) paired with every function alpha: V -> R, kept when alpha is in Sigma_g.
  SympSpace s(make_ring(1), 1);
  const GaloisRing& R = s.ring();
  std::size_t total = 0;
  for (const auto& g : enumerate_sp(s)) {
    std::vector<VecV> table(s.size());
    for (VecV v = 0; v < s.size(); ++v) table[v] = apply(s, g, v);
    for (std::uint32_t code = 0; code < 256; ++code) {
      std::vector<RingElem> alpha(s.size());
      for (VecV v = 0; v < s.size(); ++v) alpha[v] = R.from_int((code >> (2 * v)) & 3u);
      total += in_sigma_g(s, table, alpha);
    }
  }
  EXPECT_EQ(total, 24u);
  EXPECT_EQ(total, enumerate_asp(s).size());
}
