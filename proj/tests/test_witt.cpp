#include "weil2/witt.hpp"

#include <gtest/gtest.h>

#include <complex>

using namespace weil2;

namespace {

// Sum over v in {0,1}^r of i^{v^t B v}, straight from the definition.
std::complex<long> gauss_oracle(const SymForm& f) {
  const std::complex<long> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  std::complex<long> out = 0;
  for (std::uint32_t m = 0; m < (1u << f.rank); ++m) {
    long q = 0;
    for (int a = 0; a < f.rank; ++a) {
      for (int b = 0; b < f.rank; ++b) q += ((m >> a) & 1) * ((m >> b) & 1) * f.at(a, b);
    }
    out += ipow[q % 4];
  }
  return out;
}

std::complex<long> as_gaussian(const CycNum& x) {
  EXPECT_EQ(sgn(x[1]), 0);
  EXPECT_EQ(sgn(x[3]), 0);
  return {x[0].get_num().get_si(), x[2].get_num().get_si()};
}

const SymForm kOne(1, {1});
const SymForm kH(2, {0, 1, 1, 0});
const SymForm kM4(2, {2, 1, 1, 2});

}  // namespace

TEST(Witt, GaussAgreesWithDefinition) {
  for (int r = 1; r <= 3; ++r) {
    for (const auto& f : enumerate_forms(r)) EXPECT_EQ(as_gaussian(gauss(f)), gauss_oracle(f)) << to_string(f);
  }
}

TEST(Witt, NamedValues) {
  EXPECT_EQ(gauss(kOne), CycNum(1, 0, 1, 0));
  EXPECT_EQ(gauss(kOne).pow(8), CycNum(16));
  EXPECT_EQ(gauss(kH), CycNum(2));
  EXPECT_EQ(gauss(kM4), CycNum(-2));
  EXPECT_EQ(gw_class(kM4), 4);
  EXPECT_EQ(gw_class(kH), 0);
  EXPECT_EQ(gw_class(multiple(8, kOne)), 0);
  for (int k = 1; k < 8; ++k) EXPECT_NE(gw_class(multiple(k, kOne)), 0);
}

TEST(Witt, NondegenerateFormCounts) {
  // Symmetric r x r over Z/4 with odd determinant; brute force on entries.
  long rank2 = 0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) rank2 += ((a * c - b * b) % 2 != 0);
    }
  }
  EXPECT_EQ(enumerate_forms(1).size(), 2u);
  EXPECT_EQ(static_cast<long>(enumerate_forms(2).size()), rank2);
}

TEST(Witt, DecompositionWitness) {
  for (int r = 1; r <= 3; ++r) {
    for (const auto& f : enumerate_forms(r)) {
      auto dec = canonical_decompose(f);
      EXPECT_EQ(pullback(f, dec.U).g, canonical_gram(dec.form).g) << to_string(f);
      EXPECT_EQ(dec.form.rank(), r);
      EXPECT_EQ(discriminant(dec.form), discriminant(f));
    }
  }
}

TEST(Witt, IsometryClassesOfSmallRank) {
  for (auto [r, classes] : std::vector<std::pair<int, std::size_t>>{{1, 2}, {2, 5}}) {
    std::vector<SymForm> reps;
    for (const auto& f : enumerate_forms(r)) {
      bool found = false;
      for (const auto& g : reps) {
        if (is_isometric(f, g)) {
          EXPECT_EQ(gw_class(f), gw_class(g));
          EXPECT_EQ(discriminant(f), discriminant(g));
          found = true;
          break;
        }
      }
      if (!found) reps.push_back(f);
    }
    EXPECT_EQ(reps.size(), classes) << r;
  }
}

TEST(Witt, Relations) {
  EXPECT_TRUE(is_isometric(direct_sum(kM4, kM4), direct_sum(kH, kH)));
  EXPECT_TRUE(is_isometric(multiple(3, kOne), direct_sum(SymForm(1, {3}), kM4)));
  EXPECT_TRUE(is_isometric(multiple(3, SymForm(1, {3})), direct_sum(kOne, kM4)));
  EXPECT_FALSE(is_isometric(kH, kM4));
}

TEST(Witt, DegenerateInputRejected) {
  EXPECT_THROW(canonical_decompose(SymForm(1, {2})), InvalidInput);
  EXPECT_THROW(discriminant(SymForm(2, {1, 1, 1, 1})), InvalidInput);
}

TEST(Witt, TraceFormOfRingIsNondegenerateWithTrivialDiscriminant) {
  for (int d = 1; d <= 4; ++d) {
    SymForm t = trace_form_of_ring(make_ring(d));
    EXPECT_EQ(t.rank, d);
    EXPECT_TRUE(nondegenerate(t));
    EXPECT_EQ(discriminant(t), 1) << d;
  }
}
