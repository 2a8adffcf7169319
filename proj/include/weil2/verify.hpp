#pragma once

// Verification sweeps. Each check counts the cases it visited and keeps the
// first counterexample it met; a sweep passes when every check has count > 0
// and no failures.

#include "weil2/weil_rep.hpp"
#include "weil2/witt.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace weil2 {

struct CheckResult {
  CheckResult() = default;
  CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  long count = 0;
  long failures = 0;
  std::string first_counterexample;

  bool ok() const { return count > 0 && failures == 0; }

  template <class Describe>
  void record(bool ok, Describe&& describe) {
    ++count;
    if (ok) return;
    if (failures++ == 0) first_counterexample = describe();
  }
  /// Records a case whose evaluation may throw; the exception text is the counterexample.
  template <class Test, class Describe>
  void guarded(Test&& test, Describe&& describe) {
    try {
      record(test(), describe);
    } catch (const std::exception& e) {
      record(false, [&] { return describe() + " threw: " + e.what(); });
    }
  }
};

inline bool all_ok(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) {
    if (!r.ok()) return false;
  }
  return true;
}

inline constexpr const char* kRngName = "mt19937_64 with rejection sampling";

/// Seeded generator with an explicit uniform draw, so samples do not depend on the standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InvalidInput("weil2: empty sampling range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

 private:
  std::mt19937_64 eng_;
};

struct Sampling {
  bool exhaustive = true;
  long count = 200;
  Rng* rng = nullptr;
};

namespace detail {

inline std::string ids3(int a, int b, int c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}
inline std::string ids2(int a, int b) { return "(" + std::to_string(a) + "," + std::to_string(b) + ")"; }

inline SymForm diag(std::initializer_list<int> xs) {
  SymForm f;
  for (int x : xs) f = direct_sum(f, SymForm(1, {x}));
  return f;
}

inline const SymForm& hyperbolic() {
  static const SymForm h(2, {0, 1, 1, 0});
  return h;
}
inline const SymForm& m4() {
  static const SymForm m(2, {2, 1, 1, 2});
  return m;
}

inline bool pure(const CycNum& g, int rank) {
  Rational expect = 1;
  for (int k = 0; k < rank; ++k) expect *= 2;
  return g.abs2() == expect;
}

/// A random enhanced Lagrangian, registered in ctx.
inline int random_enhanced(Context& ctx, Rng& rng) {
  const SympSpace& s = ctx.space();
  int lid = static_cast<int>(rng.below(ctx.lagrangians().size()));
  auto sig = sigma_from_index(s, rng.below(enhancement_count(s)));
  return ctx.id(twist(s, ctx.enhanced(ctx.base_enhanced(lid)), sig));
}

/// A uniformly random free Lagrangian over Lagrangian lid.
inline FreeLagrangian random_lift(Context& ctx, int lid, Rng& rng) {
  const SympSpace& s = ctx.space();
  std::vector<FieldElem> upper(static_cast<std::size_t>(s.n() * (s.n() + 1) / 2));
  for (auto& x : upper) x = {static_cast<std::uint16_t>(rng.below(s.ring().field_size()))};
  return free_lift_from_symmetric(s, *ctx.lagrangians()[lid], upper);
}

inline int random_oriented(Context& ctx, Rng& rng) {
  const SympSpace& s = ctx.space();
  int lid = static_cast<int>(rng.below(ctx.lagrangians().size()));
  FreeLagrangian f = random_lift(ctx, lid, rng);
  auto units = s.ring().units();
  return ctx.oid({f, units[rng.below(units.size())]});
}

/// Visits triples (exhaustive over ids, or count random draws). The predicate
/// filters triples; in sampled mode draws are rejected until it holds.
/// A product of 2 dim random transvections, lifted to Sp(V~).
inline MatRt random_sp_tilde(const SympSpace& s, Rng& rng) {
  MatK g = identity_k(s);
  for (int t = 0; t < 2 * s.dim(); ++t) {
    VecV v = static_cast<VecV>(1 + rng.below(s.size() - 1));
    FieldElem a{static_cast<std::uint16_t>(1 + rng.below(s.ring().field_size() - 1))};
    g = compose(s, transvection(s, v, a), g);
  }
  return lift_to_sp_tilde(s, g);
}

inline void for_triples(const std::vector<int>& ids, const Sampling& smp, const std::function<int()>& draw,
                        const std::function<bool(int, int, int)>& keep,
                        const std::function<void(int, int, int)>& visit) {
  if (smp.exhaustive) {
    for (int a : ids) {
      for (int b : ids) {
        for (int c : ids) {
          if (keep(a, b, c)) visit(a, b, c);
        }
      }
    }
    return;
  }
  for (long k = 0; k < smp.count; ++k) {
    for (int attempt = 0;; ++attempt) {
      if (attempt > 100000) throw Error("weil2: sampling could not find a suitable triple");
      int a = draw(), b = draw(), c = draw();
      if (keep(a, b, c)) {
        visit(a, b, c);
        break;
      }
    }
  }
}

inline void for_pairs(const std::vector<int>& ids, const Sampling& smp, const std::function<int()>& draw,
                      const std::function<void(int, int)>& visit) {
  if (smp.exhaustive) {
    for (int a : ids) {
      for (int b : ids) visit(a, b);
    }
    return;
  }
  for (long k = 0; k < smp.count; ++k) {
    int a = draw();
    visit(a, draw());
  }
}

inline void require_exhaustive_ok(const SympSpace& s, const Sampling& smp) {
  if (smp.exhaustive && !size_caps_disabled() && s.d() * s.n() > 2) {
    throw CapExceeded("weil2: exhaustive triple sweeps are limited to d*n <= 2; use sampled mode");
  }
  if (!smp.exhaustive && smp.rng == nullptr) throw InvalidInput("weil2: sampled mode needs a generator");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Witt monoid over Z/4

/// Columns of explicit isometries: rel1 pulls M4 + M4 back to H + H, rel2 and rel3
/// pull diag(1,1,1) and diag(3,3,3) back to [3] + M4 and [1] + M4.
inline IntMat rel1_isometry() { return {{3, 3, 2, 3}, {2, 1, 2, 3}, {1, 0, 1, 0}, {3, 0, 3, 1}}; }
inline IntMat rel2_isometry() { return {{1, 1, 1}, {1, 2, 1}, {1, 1, 2}}; }
inline IntMat rel3_isometry() { return {{1, 1, 1}, {1, 2, 1}, {3, 3, 2}}; }

inline std::vector<CheckResult> witt_checks(int max_rank = 3) {
  CheckResult purity{"witt.purity"}, cls{"witt.gauss_matches_class"}, wit{"witt.decomposition_witness"},
      conj{"witt.conjugation_symmetry"}, rels{"witt.relations_explicit"}, relb{"witt.relations_search"},
      g1{"witt.gauss_of_one"};
  for (int r = 1; r <= max_rank; ++r) {
    for (const auto& f : enumerate_forms(r)) {
      CycNum g = gauss(f);
      purity.record(detail::pure(g, r), [&] { return to_string(f); });
      cls.record(g == CycNum::sqrt2_pow(r) * CycNum::zeta_pow(gw_class(f)), [&] { return to_string(f); });
      auto dec = canonical_decompose(f);
      SymForm c = canonical_gram(dec.form);
      SymForm pulled = pullback(f, dec.U);
      wit.record(pulled.g == c.g && pulled.rank == c.rank && discriminant(f) == discriminant(dec.form) &&
                     gauss(c) == g,
                 [&] { return to_string(f) + " -> " + to_string(dec.form); });
      conj.record(g == gauss(negate(f)).conj(), [&] { return to_string(f); });
    }
  }
  const SymForm one = detail::diag({1}), three = detail::diag({3});
  struct Rel {
    SymForm lhs, rhs;
    IntMat phi;
  };
  std::vector<Rel> relations = {
      {direct_sum(detail::m4(), detail::m4()), direct_sum(detail::hyperbolic(), detail::hyperbolic()), rel1_isometry()},
      {detail::diag({1, 1, 1}), direct_sum(three, detail::m4()), rel2_isometry()},
      {detail::diag({3, 3, 3}), direct_sum(one, detail::m4()), rel3_isometry()},
  };
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const auto& rel = relations[k];
    SymForm p = pullback(rel.lhs, rel.phi);
    rels.record(p.g == rel.rhs.g, [&] { return "rel" + std::to_string(k + 1) + " gives " + to_string(p); });
    relb.record(is_isometric(rel.lhs, rel.rhs), [&] { return "rel" + std::to_string(k + 1); });
  }
  CycNum G1 = gauss(one);
  g1.record(G1 == CycNum(1, 0, 1, 0), [&] { return G1.to_string(); });
  g1.record(G1.pow(8) == CycNum(16), [&] { return G1.pow(8).to_string(); });
  return {purity, cls, wit, conj, rels, relb, g1};
}

/// Canonical tuples of rank <= max_rank.
inline std::vector<CanonicalForm> canonical_tuples(int max_rank) {
  std::vector<CanonicalForm> out;
  for (int n1 = 0; n1 <= max_rank; ++n1) {
    for (int n2 = 0; n1 + n2 <= max_rank; ++n2) {
      for (int n3 = 0; n1 + n2 + 2 * n3 <= max_rank; ++n3) {
        for (int n4 = 0; n1 + n2 + 2 * n3 + 2 * n4 <= max_rank; ++n4) {
          CanonicalForm c{n1, n2, n3, n4};
          if (c.rank() > 0) out.push_back(c);
        }
      }
    }
  }
  return out;
}

inline std::vector<CheckResult> gw_checks() {
  CheckResult add{"gw.additive"}, order{"gw.order_of_one"}, m4c{"gw.class_of_m4"}, cor{"gw.gauss_of_four_times"},
      van{"gw.vanishing"};
  std::vector<SymForm> small;
  for (int r = 1; r <= 2; ++r) {
    for (auto& f : enumerate_forms(r)) small.push_back(f);
  }
  for (const auto& a : small) {
    for (const auto& b : small) {
      add.record(gw_class(direct_sum(a, b)) == (gw_class(a) + gw_class(b)) % 8,
                 [&] { return to_string(a) + " + " + to_string(b); });
    }
    CycNum g4 = gauss(multiple(4, a));
    CycNum expect = CycNum(a.rank % 2 == 0 ? 1 : -1) * CycNum(1L << (2 * a.rank));
    cor.record(g4 == expect && gauss(a).pow(4) == expect, [&] { return to_string(a); });
  }
  const SymForm one = detail::diag({1});
  for (int k = 1; k <= 8; ++k) {
    int c = gw_class(multiple(k, one));
    order.record((k < 8) == (c != 0), [&] { return std::to_string(k) + "[1] has class " + std::to_string(c); });
  }
  m4c.record(gw_class(detail::m4()) == 4, [] { return std::string("[[2,1],[1,2]]"); });
  for (const auto& c : canonical_tuples(8)) {
    if (c.rank() % 4 != 0 || discriminant(c) != 1) continue;
    SymForm x = canonical_gram(c);
    SymForm twice = direct_sum(x, x);
    CycNum g = gauss(twice);
    van.record(gw_class(twice) == 0 && g == CycNum::sqrt2_pow(twice.rank),
               [&] { return to_string(c) + " G(2X) = " + g.to_string(); });
  }
  return {add, order, m4c, cor, van};
}

// ---------------------------------------------------------------------------
// The cocycle C

inline std::vector<CheckResult> cocycle_checks(Context& ctx, const Sampling& smp) {
  const SympSpace& s = ctx.space();
  detail::require_exhaustive_ok(s, smp);
  CheckResult routes{"cocycle.three_routes"}, power{"cocycle.power"}, expl{"cocycle.oriented_gauss"};
  const long m = ctx.lag_size();
  const CycNum expect = CycNum(ctx.dn() % 2 == 0 ? 1 : -1) * CycNum(m * m);

  std::vector<int> ids;
  if (smp.exhaustive) ids = ctx.register_all_enhanced();
  auto draw = [&] { return detail::random_enhanced(ctx, *smp.rng); };
  auto keep = [&](int N, int M, int L) { return ctx.transversal(N, M) && ctx.transversal(M, L) && ctx.transversal(N, L); };
  detail::for_triples(ids, smp, draw, keep, [&](int N, int M, int L) {
    auto where = [&] { return detail::ids3(N, M, L); };
    routes.guarded(
        [&] {
          CycNum a = cocycle_C(ctx, N, M, L);
          return a == cocycle_C_formula(ctx, N, M, L) && a == cocycle_C_simplified(ctx, N, M, L).value;
        },
        where);
    power.guarded([&] { return cocycle_C_formula(ctx, N, M, L).pow(4) == expect; }, where);
  });

  // Oriented triples: the value only depends on the free submodules. In
  // sampled mode a lift is chosen only once its triple is accepted.
  std::vector<int> flid;
  std::vector<std::optional<FreeLagrangian>> ffree;
  if (smp.exhaustive) {
    for (std::size_t lid = 0; lid < ctx.lagrangians().size(); ++lid) {
      for (const auto& f : ctx.lifts_of(static_cast<int>(lid))) {
        flid.push_back(static_cast<int>(lid));
        ffree.emplace_back(f);
      }
    }
  }
  std::vector<int> fidx(flid.size());
  for (std::size_t k = 0; k < flid.size(); ++k) fidx[k] = static_cast<int>(k);
  auto free_at = [&](int k) -> const FreeLagrangian& {
    if (!ffree[k]) ffree[k] = detail::random_lift(ctx, flid[k], *smp.rng);
    return *ffree[k];
  };
  std::map<int, int> pi_of;
  auto pi_id = [&](int k) {
    auto it = pi_of.find(k);
    if (it != pi_of.end()) return it->second;
    int id = ctx.id(enhance_from_lift(s, free_at(k)));
    pi_of.emplace(k, id);
    return id;
  };
  auto draw_free = [&] {
    flid.push_back(static_cast<int>(smp.rng->below(ctx.lagrangians().size())));
    ffree.emplace_back();
    return static_cast<int>(flid.size()) - 1;
  };
  auto keep_free = [&](int a, int b, int c) {
    const auto& L = ctx.lagrangians();
    const auto& A = *L[flid[a]];
    const auto& B = *L[flid[b]];
    const auto& C = *L[flid[c]];
    return transversal(A, B) && transversal(B, C) && transversal(A, C);
  };
  detail::for_triples(fidx, smp, draw_free, keep_free, [&](int a, int b, int c) {
    expl.guarded(
        [&] {
          CycNum lhs = cocycle_C_formula(ctx, pi_id(a), pi_id(b), pi_id(c));
          return lhs == gauss(trace_form(omega_tilde_form(s, free_at(a), free_at(b), free_at(c))));
        },
        [&] { return "free lifts " + detail::ids3(a, b, c); });
  });
  return {routes, power, expl};
}

// ---------------------------------------------------------------------------
// T and S

/// scalar * (product of tensor powers of the F's in the chain), materialized.
struct LiteralTransport {
  CycNum scalar;
  ZiMat m;
};

inline LiteralTransport materialize(Context& ctx, const Transport& t) {
  ZiMat acc = kron_power(ZiMat::identity(ctx.model(t.src()).dim()), t.power);
  for (std::size_t i = t.chain.size() - 1; i > 0; --i) acc = kron_power(ctx.F(t.chain[i - 1], t.chain[i]), t.power) * acc;
  return {t.scalar, acc};
}

inline bool literal_equal(const LiteralTransport& x, const LiteralTransport& y) {
  if (x.m.rows != y.m.rows || x.m.cols != y.m.cols) return false;
  for (std::size_t k = 0; k < x.m.a.size(); ++k) {
    if (x.scalar * x.m.a[k].to_cyc() != y.scalar * y.m.a[k].to_cyc()) return false;
  }
  return true;
}

inline std::vector<CheckResult> trivialization_checks(Context& ctx, const Sampling& smp) {
  const SympSpace& s = ctx.space();
  detail::require_exhaustive_ok(s, smp);
  CheckResult mult{"trivialization.multiplicative"}, aux{"trivialization.auxiliary_independent"},
      book{"trivialization.scalar_bookkeeping"}, ident{"trivialization.identity"},
      lit{"trivialization.literal_tensor"};
  std::vector<int> ids;
  if (smp.exhaustive) ids = ctx.register_all_enhanced();
  auto draw = [&] { return detail::random_enhanced(ctx, *smp.rng); };
  const bool literal = ctx.dn() == 1;
  detail::for_triples(ids, smp, draw, [](int, int, int) { return true; }, [&](int N, int M, int L) {
    auto where = [&] { return detail::ids3(N, M, L); };
    mult.guarded([&] { return ctx.equal(compose(ctx.T(N, M), ctx.T(M, L)), ctx.T(N, L)); }, where);
    if (ctx.transversal(N, M) && ctx.transversal(M, L) && ctx.transversal(N, L)) {
      book.guarded(
          [&] { return ctx.A_T() * ctx.A_T() * cocycle_C_formula(ctx, N, M, L).pow(4) == ctx.A_T(); }, where);
    }
    if (literal) {
      lit.guarded(
          [&] {
            auto a = materialize(ctx, ctx.T(N, M));
            auto b = materialize(ctx, ctx.T(M, L));
            LiteralTransport prod{a.scalar * b.scalar, a.m * b.m};
            return literal_equal(prod, materialize(ctx, ctx.T(N, L))) &&
                   literal_equal(prod, materialize(ctx, ctx.normalize(compose(ctx.T(N, M), ctx.T(M, L)))));
          },
          where);
    }
  });
  detail::for_pairs(ids, smp, draw, [&](int M, int L) {
    Transport t = ctx.T(M, L);
    if (M == L) {
      ident.record(t.scalar == CycNum(1) && t.chain.size() == 1, [&] { return detail::ids2(M, L); });
      return;
    }
    std::vector<int> ks;
    if (smp.exhaustive) {
      ks = ids;
    } else {
      for (int k = 0; k < 4; ++k) ks.push_back(draw());
    }
    for (int K : ks) {
      if (!ctx.transversal(M, K) || !ctx.transversal(K, L)) continue;
      aux.guarded([&] { return ctx.equal(ctx.T_via(M, K, L), t); }, [&] { return detail::ids3(M, K, L); });
    }
  });
  std::vector<CheckResult> out = {mult, aux, book};
  if (smp.exhaustive) out.push_back(ident);
  if (literal) out.push_back(lit);
  return out;
}

inline std::vector<CheckResult> splitting_checks(Context& ctx, const Sampling& smp) {
  const SympSpace& s = ctx.space();
  detail::require_exhaustive_ok(s, smp);
  CheckResult thm{"splitting.normalization_cocycle"}, mult{"splitting.multiplicative"},
      sq{"splitting.square_is_T"}, pur{"splitting.normalization_purity"}, lit{"splitting.literal_square"};
  std::vector<int> ids;
  if (smp.exhaustive) ids = ctx.register_all_oriented();
  auto draw = [&] { return detail::random_oriented(ctx, *smp.rng); };
  const bool literal = ctx.dn() == 1;
  detail::for_triples(ids, smp, draw, [](int, int, int) { return true; }, [&](int N, int M, int L) {
    mult.guarded([&] { return ctx.equal(compose(ctx.S(N, M), ctx.S(M, L)), ctx.S(N, L)); },
                 [&] { return detail::ids3(N, M, L); });
  });
  auto keep = [&](int N, int M, int L) { return ctx.otransversal(N, M) && ctx.otransversal(M, L) && ctx.otransversal(N, L); };
  detail::for_triples(ids, smp, draw, keep, [&](int N, int M, int L) {
    thm.guarded(
        [&] {
          SymFormR w = omega_tilde_form(s, ctx.oriented(N).sub, ctx.oriented(M).sub, ctx.oriented(L).sub);
          CycNum g = gauss(negate(trace_form(w)));
          return ctx.A_split(N, M) * ctx.A_split(M, L) == g * g * ctx.A_split(N, L);
        },
        [&] { return detail::ids3(N, M, L); });
  });
  Rational full = 1;
  for (int k = 0; k < 2 * ctx.dn(); ++k) full *= 2;
  detail::for_pairs(ids, smp, draw, [&](int M, int L) {
    auto where = [&] { return detail::ids2(M, L); };
    sq.guarded(
        [&] {
          Transport a = ctx.normalize(ctx.S(M, L));
          Transport b = ctx.normalize(ctx.T(ctx.pi(M), ctx.pi(L)));
          return a.chain == b.chain && a.scalar * a.scalar == b.scalar;
        },
        where);
    if (!ctx.otransversal(M, L)) return;
    pur.guarded([&] { return ctx.A_split(M, L).abs2() == full; }, where);
    if (literal) {
      lit.guarded(
          [&] {
            auto sm = materialize(ctx, ctx.S(M, L));
            auto tm = materialize(ctx, ctx.T(ctx.pi(M), ctx.pi(L)));
            CycMat smat = scaled(sm.scalar, to_cyc(sm.m));
            return kron(smat, smat) == scaled(tm.scalar, to_cyc(tm.m));
          },
          where);
    }
  });
  std::vector<CheckResult> out = {thm, mult, sq, pur};
  if (literal) out.push_back(lit);
  return out;
}

// ---------------------------------------------------------------------------
// Discriminants

struct DiscTerms {
  SymForm x;      // [M~, tr omega~_L~] + [tr B_{N,M}] + [tr B_{M,L}] + [-tr B_{N,L}]
  SymForm x_alt;  // the same with [-tr B_{M,L}] as the last term
  RingElem x_prime_disc;
};

inline DiscTerms disc_terms(Context& ctx, int N, int M, int L) {
  const SympSpace& s = ctx.space();
  SymFormR w = omega_tilde_form(s, ctx.oriented(N).sub, ctx.oriented(M).sub, ctx.oriented(L).sub);
  SymFormR bnm = ctx.B_form(N, M), bml = ctx.B_form(M, L), bnl = ctx.B_form(N, L);
  DiscTerms out;
  SymForm head = direct_sum(direct_sum(trace_form(w), trace_form(bnm)), trace_form(bml));
  out.x = direct_sum(head, negate(trace_form(bnl)));
  out.x_alt = direct_sum(head, negate(trace_form(bml)));
  const GaloisRing& R = s.ring();
  RingElem dnl = s.n() % 2 == 0 ? det(bnl) : R.neg(det(bnl));  // det(-B) = (-1)^n det(B)
  RingElem dp = R.mul(R.mul(det(w), det(bnm)), R.mul(det(bml), dnl));
  out.x_prime_disc = square_class(R, dp);
  return out;
}

/// omega~_wedge(r_wedge(o_M), o_M) against (-1)^n w(L,M) w(M,N) / w(L,N).
inline bool wedge_identity(Context& ctx, int N, int M, int L) {
  const SympSpace& s = ctx.space();
  const GaloisRing& R = s.ring();
  const auto& oN = ctx.oriented(N);
  const auto& oM = ctx.oriented(M);
  const auto& oL = ctx.oriented(L);
  RTilde r(s, oN.sub, oL.sub);
  std::vector<VecR> rm;
  for (const auto& b : oM.sub.basis) rm.push_back(r(b));
  RingElem lhs = R.mul(R.mul(oM.unit, oM.unit), wedge_det(s, rm, oM.sub.basis));
  RingElem rhs = R.mul(wedge_pairing(s, oL, oM), wedge_pairing(s, oM, oN));
  rhs = R.mul(rhs, R.inv(wedge_pairing(s, oL, oN)));
  if (s.n() % 2 == 1) rhs = R.neg(rhs);
  return lhs == rhs;
}

inline std::vector<CheckResult> disc_checks(const Sampling& smp) {
  CheckResult tr{"disc.trace_form"}, wedge{"disc.wedge_identity"}, dx{"disc.combination"},
      dxp{"disc.combination_over_R"};
  for (int d = 1; d <= 4; ++d) {
    auto R = make_ring(d);
    tr.record(discriminant(trace_form_of_ring(R)) == 1, [&] { return "d=" + std::to_string(d); });
  }
  for (int n = 1; n <= 2; ++n) {
    SympSpace s(make_ring(1), n);
    Context ctx(s);
    auto ids = ctx.register_all_oriented();
    Sampling ex;
    detail::for_triples(ids, ex, nullptr, [&](int a, int b, int c) {
      return ctx.otransversal(a, b) && ctx.otransversal(b, c) && ctx.otransversal(a, c);
    }, [&](int N, int M, int L) {
      wedge.guarded([&] { return wedge_identity(ctx, N, M, L); },
                    [&] { return "n=" + std::to_string(n) + " " + detail::ids3(N, M, L); });
    });
  }
  if (smp.rng == nullptr) throw InvalidInput("weil2: discriminant sweep needs a generator");
  for (auto [d, n] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}}) {
    SympSpace s(make_ring(d), n);
    Context ctx(s);
    Sampling sm{false, smp.exhaustive ? 200 : smp.count, smp.rng};
    auto draw = [&] { return detail::random_oriented(ctx, *smp.rng); };
    detail::for_triples({}, sm, draw, [&](int a, int b, int c) {
      return ctx.otransversal(a, b) && ctx.otransversal(b, c) && ctx.otransversal(a, c);
    }, [&](int N, int M, int L) {
      auto where = [&] { return "d=" + std::to_string(d) + " n=" + std::to_string(n) + " " + detail::ids3(N, M, L); };
      dx.guarded(
          [&] {
            auto t = disc_terms(ctx, N, M, L);
            return t.x.rank == 4 * d * n && discriminant(t.x) == 1;
          },
          where);
      dxp.guarded([&] { return disc_terms(ctx, N, M, L).x_prime_disc == s.ring().one(); }, where);
    });
  }
  return {tr, wedge, dx, dxp};
}

// ---------------------------------------------------------------------------
// Weil operators

namespace detail {

struct AspKey {
  std::vector<VecV> cols;
  std::vector<std::uint16_t> alpha;
  auto operator<=>(const AspKey&) const = default;
};

inline AspKey asp_key(const AspElem& a) {
  AspKey k{a.g.cols, {}};
  for (RingElem x : a.alpha) k.alpha.push_back(x.code);
  return k;
}

}  // namespace detail

/// W(a) for a fixed object, memoized by element.
class WeilCache {
 public:
  WeilCache(Context& ctx, GerbeObject& obj) : ctx_(ctx), obj_(obj) {}
  const CycMat& operator()(const AspElem& a) {
    auto k = detail::asp_key(a);
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, weil_operator(ctx_, obj_, a)).first;
    return it->second;
  }
  CycNum cocycle(const AspElem& a, const AspElem& b) {
    return proportionality((*this)(a) * (*this)(b), (*this)(asp_mul(ctx_.space(), a, b)));
  }

 private:
  Context& ctx_;
  GerbeObject& obj_;
  std::map<detail::AspKey, CycMat> cache_;
};

inline bool is_mu4(const CycNum& x) { return x.mu4().has_value(); }
inline bool is_mu2(const CycNum& x) { return x == CycNum(1) || x == CycNum(-1); }

inline std::vector<CheckResult> weil_checks(Context& ctx, const Sampling& smp) {
  const SympSpace& s = ctx.space();
  if (!smp.exhaustive && smp.rng == nullptr) throw InvalidInput("weil2: sampled mode needs a generator");
  if (smp.exhaustive && !size_caps_disabled() && s.d() * s.n() > 1) {
    throw CapExceeded("weil2: exhaustive Weil sweeps are limited to n = d = 1; use sampled mode");
  }
  CheckResult comm{"weil.commutant"}, roots{"weil.object_roots"}, egorov{"weil.egorov"}, mu4{"weil.cocycle_mu4"},
      unit{"weil.cocycle_normalized"}, assoc{"weil.cocycle_identity"}, minus{"weil.minus_identity"},
      liftm{"weil.lift_multiplicative"}, spi{"weil.split_object_action"}, segorov{"weil.split_egorov"},
      mu2{"weil.split_cocycle_mu2"}, compat{"weil.split_compatible"}, indep{"weil.object_independence"};

  const int L0 = ctx.base_enhanced(0);
  std::vector<int> probe;
  if (smp.exhaustive) {
    probe = ctx.register_all_enhanced();
  } else {
    probe = {L0};
    for (int k = 0; k < 3; ++k) probe.push_back(detail::random_enhanced(ctx, *smp.rng));
  }
  for (int id : probe) {
    comm.record(commutant_dimension(s, ctx.model(id)) == 1, [&] { return std::to_string(id); });
  }
  GerbeObject obj = smp.exhaustive ? build_object(ctx, L0) : GerbeObject{L0, {}};

  // Elements: all of ASp(V) at n = d = 1, otherwise random products of
  // transvections, lifted, times random translations.
  std::vector<AspElem> elems;
  std::vector<MatRt> tildes;
  const auto gens = heisenberg_generators(s);
  if (smp.exhaustive) {
    elems = enumerate_asp(s);
    tildes = enumerate_sp_tilde(s);
  } else {
    const long m = std::min<long>(smp.count, 12);
    for (long k = 0; k < m; ++k) {
      MatRt gt = detail::random_sp_tilde(s, *smp.rng);
      tildes.push_back(gt);
      elems.push_back(asp_mul(s, lift_sp(s, gt), translation(s, translation_sigma(s, smp.rng->below(translation_count(s))))));
    }
  }
  WeilCache W(ctx, obj);
  for (const auto& a : elems) {
    egorov.guarded([&] { return egorov_holds(ctx, L0, W(a), a, gens); }, [&] { return std::string("element"); });
  }
  auto pick = [&](std::size_t k) -> const AspElem& { return elems[k % elems.size()]; };
  const AspElem one = asp_identity(s);
  std::map<std::pair<std::size_t, std::size_t>, CycNum> ctab;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < elems.size(); ++j) {
      mu4.guarded(
          [&] {
            CycNum c = W.cocycle(elems[i], elems[j]);
            ctab.emplace(std::make_pair(i, j), c);
            return is_mu4(c);
          },
          [&] { return detail::ids2(static_cast<int>(i), static_cast<int>(j)); });
    }
    unit.guarded([&] { return W.cocycle(one, elems[i]) == CycNum(1) && W.cocycle(elems[i], one) == CycNum(1); },
                 [&] { return std::to_string(i); });
  }
  const long triples = smp.exhaustive ? static_cast<long>(elems.size() * elems.size() * elems.size()) : smp.count;
  for (long t = 0; t < triples; ++t) {
    const AspElem *a, *b, *c;
    if (smp.exhaustive) {
      std::size_t n = elems.size();
      a = &pick(t / (n * n));
      b = &pick((t / n) % n);
      c = &pick(t % n);
    } else {
      a = &pick(smp.rng->below(elems.size()));
      b = &pick(smp.rng->below(elems.size()));
      c = &pick(smp.rng->below(elems.size()));
    }
    assoc.guarded(
        [&] {
          return W.cocycle(*a, *b) * W.cocycle(asp_mul(s, *a, *b), *c) ==
                 W.cocycle(*b, *c) * W.cocycle(*a, asp_mul(s, *b, *c));
        },
        [&] { return "triple " + std::to_string(t); });
  }
  {
    MatRt m = identity_rt(s);
    for (auto& col : m.cols) col = s.scale_t(s.ring().from_int(-1), col);
    minus.guarded(
        [&] {
          const CycMat& w = W(lift_sp(s, m));
          CycNum c = proportionality(w, CycMat::identity(w.rows));
          return is_mu4(c);
        },
        [] { return std::string("-1"); });
  }

  // Split side, based at the canonical lift of the same Lagrangian.
  const int Lt0 = ctx.oid({ctx.canonical_lift(0), s.ring().one()});
  SplitGerbeObject sobj{Lt0, {}};
  std::vector<CycMat> Ws;
  std::vector<CycNum> f;  // W^s(g~) = f W(lift_sp(g~))
  for (const auto& g : tildes) {
    AspElem a = lift_sp(s, g);
    spi.guarded(
        [&] {
          int gL = ctx.oid(act(s, g, ctx.oriented(Lt0)));
          return ctx.pi(gL) == ctx.id(act(s, a, ctx.enhanced(L0)));
        },
        [] { return std::string("element"); });
    Ws.push_back(split_weil_operator(ctx, sobj, g));
    segorov.guarded([&] { return egorov_holds(ctx, L0, Ws.back(), a, gens); }, [] { return std::string("element"); });
    f.push_back(proportionality(Ws.back(), W(a)));
    compat.record(is_mu4(f.back()), [&] { return "f = " + f.back().to_string(); });
  }
  for (std::size_t i = 0; i < tildes.size(); ++i) {
    const auto& gi = tildes[i];
    liftm.record(lift_sp(s, compose(s, gi, gi)) == asp_mul(s, lift_sp(s, gi), lift_sp(s, gi)),
                 [] { return std::string("square"); });
    for (std::size_t j = 0; j < tildes.size(); ++j) {
      const auto& gj = tildes[j];
      MatRt gh = compose(s, gi, gj);
      AspElem a = lift_sp(s, gi), b = lift_sp(s, gj);
      liftm.record(lift_sp(s, gh) == asp_mul(s, a, b), [&] { return detail::ids2(static_cast<int>(i), static_cast<int>(j)); });
      mu2.guarded(
          [&] {
            CycNum cs = proportionality(Ws[i] * Ws[j], split_weil_operator(ctx, sobj, gh));
            CycNum fgh = proportionality(split_weil_operator(ctx, sobj, gh), W(asp_mul(s, a, b)));
            bool ok_compat = cs == W.cocycle(a, b) * f[i] * f[j] / fgh;
            compat.record(ok_compat, [&] { return "pair " + detail::ids2(static_cast<int>(i), static_cast<int>(j)); });
            return is_mu2(cs);
          },
          [&] { return detail::ids2(static_cast<int>(i), static_cast<int>(j)); });
    }
  }

  // A second object based elsewhere: W'(a) = f(a) P W(a) P^{-1}, c'/c = df.
  {
    const int L1 = smp.exhaustive ? probe.back() : probe[1];
    GerbeObject obj1 = build_object(ctx, L1);
    WeilCache W1(ctx, obj1);
    CycMat P = to_cyc(ctx.chain_matrix(ctx.canonical_chain(L1, L0)));
    CycMat Pi = inverse(P);
    std::vector<CycNum> fa;
    for (const auto& a : elems) fa.push_back(proportionality(W1(a), P * W(a) * Pi));
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = 0; j < elems.size(); ++j) {
        indep.guarded(
            [&] {
              AspElem ab = asp_mul(s, elems[i], elems[j]);
              CycNum fab = proportionality(W1(ab), P * W(ab) * Pi);
              return W1.cocycle(elems[i], elems[j]) * fab == W.cocycle(elems[i], elems[j]) * fa[i] * fa[j];
            },
            [&] { return detail::ids2(static_cast<int>(i), static_cast<int>(j)); });
      }
    }
  }
  for (const auto& [id, lam] : obj.lambdas) {
    roots.guarded([&] { return lam.pow(4) == ctx.normalize(ctx.T(id, L0)).scalar; }, [&] { return std::to_string(id); });
  }
  roots.record(object_lambda(ctx, obj, L0) == CycNum(1), [] { return std::string("base"); });
  for (const auto& [id, mu] : sobj.mus) {
    roots.guarded([&] { return mu.pow(2) == ctx.normalize(ctx.S(id, Lt0)).scalar; }, [&] { return "oriented " + std::to_string(id); });
  }
  return {comm, roots, egorov, mu4, unit, assoc, minus, liftm, spi, segorov, mu2, compat, indep};
}

/// Sp(V) at n = d = 1: solvability of the pseudo-symplectic equation against O(Q), and Sigma_g nonempty.
inline std::vector<CheckResult> pseudo_symplectic_checks() {
  CheckResult match{"intro.pseudo_symplectic_is_orthogonal"}, cnt{"intro.pseudo_symplectic_count"},
      nonempty{"intro.sigma_nonempty"};
  SympSpace s(make_ring(1), 1);
  auto sp = enumerate_sp(s);
  int solvable = 0;
  for (const auto& g : sp) {
    bool ps = pseudo_symplectic_solvable(s, g);
    solvable += ps;
    match.record(ps == in_orthogonal_group(s, g), [] { return std::string("g"); });
    nonempty.record(is_valid(s, lift_sp(s, lift_to_sp_tilde(s, g))), [] { return std::string("g"); });
  }
  cnt.record(sp.size() == 6 && solvable == 2,
             [&] { return std::to_string(solvable) + " of " + std::to_string(sp.size()); });
  return {match, cnt, nonempty};
}

}  // namespace weil2
