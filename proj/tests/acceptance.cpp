// Acceptance run: one PASS/FAIL line per criterion, with timings.

#include "weil2/report.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>

using namespace weil2;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;
};

void require(Outcome& o, bool cond, const std::string& what) {
  if (!cond && o.ok) o.note = what;
  o.ok = o.ok && cond;
}

void require_all(Outcome& o, const std::vector<CheckResult>& rs) {
  for (const auto& r : rs) {
    std::string detail = r.name + " count=" + std::to_string(r.count) + " failures=" + std::to_string(r.failures);
    if (!r.first_counterexample.empty()) detail += " first=" + r.first_counterexample;
    require(o, r.ok(), detail);
  }
}

const CheckResult* find(const std::vector<CheckResult>& rs, const std::string& name) {
  for (const auto& r : rs) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

long count_of(const std::vector<CheckResult>& rs, const std::string& name) {
  const CheckResult* r = find(rs, name);
  return r ? r->count : -1;
}

std::vector<CheckResult> run_shape(int d, int n, bool exhaustive, long count,
                                   const std::function<std::vector<CheckResult>(Context&, const Sampling&)>& f) {
  SympSpace s(make_ring(d), n);
  Context ctx(s);
  Rng rng(1);
  return f(ctx, Sampling{exhaustive, count, &rng});
}

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("threw: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.ok && secs > limit_s) o = {false, "over time budget"};
  if (!o.ok) ++failures;
  std::printf("%s %d %s (%.2f s, budget %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title.c_str(), secs, limit_s,
              o.note.empty() ? "" : ": ", o.note.c_str());
  std::fflush(stdout);
}

}  // namespace

int main() {
  criterion(1, "witt suite, rank <= 3", 5, [] {
    Outcome o;
    auto rs = witt_checks(3);
    require_all(o, rs);
    require(o, count_of(rs, "witt.purity") == 1826, "rank <= 3 form count");
    require(o, count_of(rs, "witt.relations_explicit") == 3 && count_of(rs, "witt.relations_search") == 3, "relations");
    require(o, gauss(SymForm(1, {1})) == CycNum(1, 0, 1, 0), "G([1])");
    require(o, gauss(SymForm(1, {1})).pow(8) == CycNum(16), "G([1])^8");
    return o;
  });

  criterion(2, "GW group", 1, [] {
    Outcome o;
    auto rs = gw_checks();
    require_all(o, rs);
    require(o, gw_class(SymForm(2, {2, 1, 1, 2})) == 4, "class of M4");
    return o;
  });

  criterion(3, "cocycle suite, n = d = 1", 10, [] {
    Outcome o;
    SympSpace s(make_ring(1), 1);
    Context ctx(s);
    Rng rng(1);
    auto rs = cocycle_checks(ctx, Sampling{true, 200, &rng});
    require_all(o, rs);
    require(o, ctx.register_all_enhanced().size() == 6, "six enhanced Lagrangians");
    require(o, count_of(rs, "cocycle.three_routes") == 48, "48 transversal triples");
    return o;
  });

  criterion(4, "cocycle suite, dn = 2 exhaustive and dn = 4 sampled", 300, [] {
    Outcome o;
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 1}, {1, 2}}) {
      auto rs = run_shape(d, n, true, 200, cocycle_checks);
      require_all(o, rs);
    }
    for (auto [d, n] : std::vector<std::pair<int, int>>{{4, 1}, {2, 2}, {1, 4}}) {
      auto rs = run_shape(d, n, false, 200, cocycle_checks);
      require_all(o, rs);
      require(o, count_of(rs, "cocycle.power") >= 200, "at least 200 sampled triples");
      require(o, count_of(rs, "cocycle.oriented_gauss") >= 200, "at least 200 sampled oriented triples");
    }
    return o;
  });

  criterion(5, "trivialization, n = d = 1", 60, [] {
    Outcome o;
    auto rs = run_shape(1, 1, true, 200, trivialization_checks);
    require_all(o, rs);
    require(o, find(rs, "trivialization.literal_tensor") != nullptr, "materialized tensor check ran");
    return o;
  });

  criterion(6, "splitting, n = d = 1 exhaustive and dn = 2 sampled", 120, [] {
    Outcome o;
    require_all(o, run_shape(1, 1, true, 200, splitting_checks));
    for (auto [d, n] : std::vector<std::pair<int, int>>{{2, 1}, {1, 2}}) require_all(o, run_shape(d, n, false, 200, splitting_checks));
    auto witt = witt_checks(3);
    const CheckResult* conj = find(witt, "witt.conjugation_symmetry");
    require(o, conj != nullptr && conj->ok(), "conjugation symmetry");
    return o;
  });

  criterion(7, "discriminant lemmas", 30, [] {
    Outcome o;
    Rng rng(1);
    auto rs = disc_checks(Sampling{false, 200, &rng});
    require_all(o, rs);
    require(o, count_of(rs, "disc.trace_form") == 4, "d = 1..4");
    return o;
  });

  criterion(8, "representation suite, n = d = 1", 120, [] {
    Outcome o;
    auto rs = run_shape(1, 1, true, 200, weil_checks);
    require_all(o, rs);
    require(o, count_of(rs, "weil.egorov") == 24, "Egorov over all of ASp(V)");
    require(o, count_of(rs, "weil.split_cocycle_mu2") == 2304, "all pairs in Sp2(Z/4)");
    require(o, count_of(rs, "weil.lift_multiplicative") >= 2304, "lift over all pairs");
    return o;
  });

  criterion(9, "pseudo-symplectic elements", 1, [] {
    Outcome o;
    require_all(o, pseudo_symplectic_checks());
    return o;
  });

  criterion(10, "determinism of the full default report", 600, [] {
    Outcome o;
    JobConfig cfg;
    auto a = run_suites("all", cfg);
    auto b = run_suites("all", cfg);
    require(o, passed(a), "default run passes");
    require(o, report_json(cfg, a).dump(2) == report_json(cfg, b).dump(2), "byte-identical reports");
    JobConfig sampled{2, 2, 7, true, 200};
    require(o, report_json(sampled, run_suites("cocycle", sampled)).dump(2) ==
                   report_json(sampled, run_suites("cocycle", sampled)).dump(2),
            "byte-identical sampled reports");
    return o;
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
