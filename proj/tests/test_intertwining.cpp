#include "weil2/intertwining.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace weil2;

namespace {

std::vector<HeisElem> all_heisenberg(const SympSpace& s) {
  std::vector<HeisElem> out;
  for (VecV v = 0; v < s.size(); ++v) {
    for (RingElem z : s.ring().elements()) out.push_back({v, z});
  }
  return out;
}

}  // namespace

TEST(Intertwining, ModelIsARepresentation) {
  for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
    SympSpace s(make_ring(d), n);
    Context ctx(s);
    auto hs = all_heisenberg(s);
    for (int id : ctx.register_all_enhanced()) {
      const Model& m = ctx.model(id);
      EXPECT_EQ(m.dim(), std::size_t{1} << (d * n));
      for (std::size_t i = 0; i < hs.size(); i += 3) {
        for (std::size_t j = 0; j < hs.size(); j += 5) {
          ZiMat lhs = pi_matrix(s, m, h_mul(s, hs[i], hs[j]));
          ZiMat rhs = pi_matrix(s, m, hs[i]) * pi_matrix(s, m, hs[j]);
          EXPECT_TRUE(lhs == rhs);
        }
      }
      // The centre acts by the character psi.
      for (RingElem z : s.ring().elements()) {
        EXPECT_TRUE(to_cyc(pi_matrix(s, m, {0, z})) == scaled(s.ring().psi(z), CycMat::identity(m.dim())));
      }
    }
  }
}

TEST(Intertwining, FIntertwinesTransversalModels) {
  SympSpace s(make_ring(1), 2);
  Context ctx(s);
  auto ids = ctx.register_all_enhanced();
  auto gens = heisenberg_generators(s);
  int checked = 0;
  for (std::size_t a = 0; a < ids.size(); a += 7) {
    for (std::size_t b = 0; b < ids.size(); b += 3) {
      const Model &M = ctx.model(ids[a]), &L = ctx.model(ids[b]);
      if (!ctx.transversal(ids[a], ids[b])) {
        EXPECT_THROW(F_matrix(s, M, L), NotTransversal);
        continue;
      }
      ZiMat F = F_matrix(s, M, L);
      for (const auto& x : F.a) EXPECT_TRUE(x.is_zero() || x.norm() == 1);
      for (const auto& h : gens) EXPECT_TRUE(F * pi_matrix(s, L, h) == pi_matrix(s, M, h) * F);
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(Intertwining, CocycleFourthPowerAtRankOne) {
  SympSpace s(make_ring(1), 1);
  Context ctx(s);
  auto ids = ctx.register_all_enhanced();
  EXPECT_EQ(ids.size(), 6u);
  int triples = 0;
  for (int N : ids) {
    for (int M : ids) {
      for (int L : ids) {
        if (!(ctx.transversal(N, M) && ctx.transversal(M, L) && ctx.transversal(N, L))) continue;
        CycNum c = cocycle_C(ctx, N, M, L);
        EXPECT_EQ(c.pow(4), CycNum(-4));
        EXPECT_EQ(c, cocycle_C_formula(ctx, N, M, L));
        ++triples;
      }
    }
  }
  EXPECT_EQ(triples, 48);
}

TEST(Intertwining, SplitNormalizationValues) {
  SympSpace s(make_ring(1), 1);
  Context ctx(s);
  auto ids = ctx.register_all_oriented();
  std::set<std::string> seen;
  for (int a : ids) {
    for (int b : ids) {
      if (!ctx.otransversal(a, b)) continue;
      // B = [w], w a unit of Z/4: G([1])^2 = 2i, G([3])^2 = -2i.
      CycNum A = ctx.A_split(a, b);
      EXPECT_TRUE(A == CycNum(0, 0, 2, 0) || A == CycNum(0, 0, -2, 0));
      seen.insert(A.to_string());
      Transport t = ctx.S(a, b);
      EXPECT_EQ(t.scalar * CycNum(4), A);
      EXPECT_EQ(t.power, 2);
    }
  }
  EXPECT_EQ(seen.size(), 2u);
}

TEST(Intertwining, TrivializationScalar) {
  SympSpace s(make_ring(1), 1);
  Context ctx(s);
  EXPECT_EQ(ctx.A_T(), CycNum(Rational(-1, 4)));
  SympSpace s2(make_ring(1), 2);
  Context ctx2(s2);
  EXPECT_EQ(ctx2.A_T(), CycNum(Rational(1, 16)));
  auto ids = ctx.register_all_enhanced();
  for (int M : ids) {
    for (int L : ids) {
      Transport t = ctx.T(M, L);
      EXPECT_EQ(t.dst(), M);
      EXPECT_EQ(t.src(), L);
      EXPECT_EQ(t.power, 4);
    }
  }
}
