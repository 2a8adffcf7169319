#include "weil2/weil_rep.hpp"

#include <gtest/gtest.h>

using namespace weil2;

TEST(WeilRep, CanonicalRoot) {
  // (1+i)^4 = -4, and zeta * sqrt2 = 1 + i.
  EXPECT_EQ(canonical_root(CycNum(-4), 4), CycNum(1, 0, 1, 0));
  EXPECT_EQ(canonical_root(CycNum(1), 4), CycNum(1));
  EXPECT_EQ(canonical_root(CycNum(Rational(1, 16)), 4), CycNum(Rational(1, 2)));
  EXPECT_EQ(canonical_root(CycNum(0, 0, Rational(1, 2), 0), 2).pow(2), CycNum(0, 0, Rational(1, 2), 0));
  EXPECT_THROW(canonical_root(CycNum(3), 2), InvalidInput);
  EXPECT_EQ(canonical_root(CycNum(2), 2), CycNum::sqrt2());
  EXPECT_THROW(canonical_root(CycNum(2), 4), InconsistentScalar);
  EXPECT_THROW(canonical_root(CycNum::zeta(), 2), InconsistentScalar);
  EXPECT_THROW(canonical_root(CycNum(1, 1, 0, 0), 2), InconsistentScalar);
}

TEST(WeilRep, IdentityActsTrivially) {
  SympSpace s(make_ring(1), 2);
  Context ctx(s);
  GerbeObject obj{ctx.base_enhanced(0), {}};
  CycMat W = weil_operator(ctx, obj, asp_identity(s));
  EXPECT_TRUE(W == CycMat::identity(4));
}

TEST(WeilRep, CommutantIsScalar) {
  SympSpace s(make_ring(2), 1);
  Context ctx(s);
  for (int id : ctx.register_all_enhanced()) EXPECT_EQ(commutant_dimension(s, ctx.model(id)), 1u);
}

TEST(WeilRep, EgorovAndMu4OnSampledElements) {
  SympSpace s(make_ring(1), 2);
  Context ctx(s);
  const int L0 = ctx.base_enhanced(0);
  GerbeObject obj{L0, {}};
  auto gens = heisenberg_generators(s);
  std::vector<AspElem> elems;
  auto sp = enumerate_sp(s);
  for (std::size_t k = 0; k < sp.size(); k += sp.size() / 9) {
    MatRt gt = lift_to_sp_tilde(s, sp[k]);
    elems.push_back(asp_mul(s, lift_sp(s, gt), translation(s, translation_sigma(s, (7 * k) % translation_count(s)))));
  }
  for (const auto& a : elems) EXPECT_TRUE(egorov_holds(ctx, L0, weil_operator(ctx, obj, a), a, gens));
  for (const auto& a : elems) {
    for (const auto& b : elems) EXPECT_TRUE(proj_cocycle(ctx, obj, a, b).mu4().has_value());
  }
}

TEST(WeilRep, SplitCocycleIsASign) {
  SympSpace s(make_ring(1), 1);
  Context ctx(s);
  SplitGerbeObject obj{ctx.oid({ctx.canonical_lift(0), s.ring().one()}), {}};
  auto sp = enumerate_sp_tilde(s);
  for (std::size_t i = 0; i < sp.size(); i += 5) {
    for (std::size_t j = 0; j < sp.size(); j += 3) {
      CycNum c = split_cocycle(ctx, obj, sp[i], sp[j]);
      EXPECT_TRUE(c == CycNum(1) || c == CycNum(-1));
    }
  }
}

TEST(WeilRep, ActionOnEnhancedLagrangiansIsAnAction) {
  SympSpace s(make_ring(1), 1);
  Context ctx(s);
  auto ids = ctx.register_all_enhanced();
  auto all = enumerate_asp(s);
  for (const auto& a : all) {
    for (const auto& b : all) {
      for (int id : ids) {
        EXPECT_EQ(act(s, asp_mul(s, a, b), ctx.enhanced(id)), act(s, a, act(s, b, ctx.enhanced(id))));
      }
    }
  }
}

TEST(WeilRep, SignCoboundarySolver) {
  SympSpace s(make_ring(1), 1);
  auto G = enumerate_sp_tilde(s);
  auto idx = [&](const MatRt& g) { return static_cast<std::size_t>(std::find(G.begin(), G.end(), g) - G.begin()); };
  std::vector<int> f(G.size());
  for (std::size_t k = 0; k < G.size(); ++k) f[k] = (k * 7 + k / 3) % 5 < 2 ? -1 : 1;
  std::vector<std::vector<int>> c(G.size(), std::vector<int>(G.size()));
  for (std::size_t a = 0; a < G.size(); ++a) {
    for (std::size_t b = 0; b < G.size(); ++b) c[a][b] = f[a] * f[b] * f[idx(compose(s, G[a], G[b]))];
  }
  auto sol = sign_coboundary(s, G, c);
  ASSERT_TRUE(sol.has_value());
  for (std::size_t a = 0; a < G.size(); ++a) {
    for (std::size_t b = 0; b < G.size(); ++b) EXPECT_EQ(c[a][b], (*sol)[a] * (*sol)[b] * (*sol)[idx(compose(s, G[a], G[b]))]);
  }
  // c(1, 1) = f(1) is forced by c(1, g) = f(1); flipping it alone breaks solvability.
  std::size_t e = idx(identity_rt(s));
  c[e][e] = -c[e][e];
  EXPECT_FALSE(sign_coboundary(s, G, c).has_value());
}
