#pragma once

// JSON reports and corpus records. Everything emitted here is a pure
// function of the job configuration, so equal configs give equal bytes.

#include "weil2/verify.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace weil2 {

inline constexpr int kSchemaVersion = 1;

struct JobConfig {
  int d = 1;
  int n = 1;
  std::uint64_t seed = 1;
  bool sampled = false;
  long sample_count = 200;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"witt", "cocycle", "trivialization", "splitting", "weil"};
  return names;
}

inline nlohmann::ordered_json to_json(const CheckResult& r) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["count"] = r.count;
  j["failures"] = r.failures;
  j["passed"] = r.ok();
  j["first_counterexample"] = r.first_counterexample;
  return j;
}

inline nlohmann::ordered_json header(const JobConfig& cfg) {
  nlohmann::ordered_json h;
  h["schema_version"] = kSchemaVersion;
  h["rng"] = kRngName;
  h["d"] = cfg.d;
  h["n"] = cfg.n;
  h["ring_modulus"] = make_ring(cfg.d)->modulus_string();
  h["seed"] = cfg.seed;
  h["mode"] = cfg.sampled ? "sampled" : "exhaustive";
  h["sample_count"] = cfg.sample_count;
  return h;
}

/// Runs one suite. Suites that do not depend on (d, n) ignore them.
inline std::vector<CheckResult> run_suite(const std::string& suite, const JobConfig& cfg) {
  Rng rng(cfg.seed);
  Sampling smp{!cfg.sampled, cfg.sample_count, &rng};
  if (suite == "witt") {
    auto a = witt_checks(3);
    auto b = gw_checks();
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  SympSpace s(make_ring(cfg.d), cfg.n);
  Context ctx(s);
  if (suite == "cocycle") return cocycle_checks(ctx, smp);
  if (suite == "trivialization") return trivialization_checks(ctx, smp);
  if (suite == "splitting") {
    auto a = splitting_checks(ctx, smp);
    auto b = disc_checks(smp);
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  if (suite == "weil") {
    auto a = weil_checks(ctx, smp);
    auto b = pseudo_symplectic_checks();
    a.insert(a.end(), b.begin(), b.end());
    return a;
  }
  throw InvalidInput("weil2: unknown suite " + suite);
}

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
};

inline std::vector<SuiteReport> run_suites(const std::string& which, const JobConfig& cfg) {
  std::vector<SuiteReport> out;
  if (which == "all") {
    for (const auto& name : suite_names()) out.push_back({name, run_suite(name, cfg)});
  } else {
    out.push_back({which, run_suite(which, cfg)});
  }
  return out;
}

inline bool passed(const std::vector<SuiteReport>& rs) {
  for (const auto& r : rs) {
    if (!all_ok(r.checks)) return false;
  }
  return true;
}

inline nlohmann::ordered_json report_json(const JobConfig& cfg, const std::vector<SuiteReport>& rs) {
  nlohmann::ordered_json j;
  j["header"] = header(cfg);
  nlohmann::ordered_json suites = nlohmann::ordered_json::array();
  for (const auto& r : rs) {
    nlohmann::ordered_json sj;
    sj["suite"] = r.suite;
    sj["passed"] = all_ok(r.checks);
    sj["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) sj["checks"].push_back(to_json(c));
    suites.push_back(sj);
  }
  j["suites"] = suites;
  j["passed"] = passed(rs);
  return j;
}

inline std::string report_csv(const std::vector<SuiteReport>& rs) {
  std::string out = "suite,check,count,failures,passed,first_counterexample\n";
  for (const auto& r : rs) {
    for (const auto& c : r.checks) {
      std::string ce = c.first_counterexample;
      for (auto& ch : ce) {
        if (ch == '"') ch = '\'';
      }
      out += r.suite + "," + c.name + "," + std::to_string(c.count) + "," + std::to_string(c.failures) + "," +
             (c.ok() ? "true" : "false") + ",\"" + ce + "\"\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Records

/// "span{b1 b2}; alpha{a(m1) a(m2) ...}" with members in increasing order.
inline std::string describe(const EnhancedLagrangian& e) {
  std::string out = "span{";
  for (std::size_t k = 0; k < e.L->basis.size(); ++k) {
    if (k) out += " ";
    out += std::to_string(e.L->basis[k]);
  }
  out += "} alpha{";
  for (std::size_t k = 0; k < e.L->members.size(); ++k) {
    if (k) out += " ";
    out += std::to_string(e.alpha[e.L->members[k]].code);
  }
  return out + "}";
}

inline nlohmann::ordered_json to_json(const OrientedLagrangian& o) {
  nlohmann::ordered_json j;
  j["basis"] = nlohmann::ordered_json::array();
  for (const auto& b : o.sub.basis) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (RingElem x : b) row.push_back(x.code);
    j["basis"].push_back(row);
  }
  j["unit"] = o.unit.code;
  return j;
}

inline nlohmann::ordered_json to_json(const CycMat& m) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < m.cols; ++k) row.push_back(m(i, k).to_string());
    j.push_back(row);
  }
  return j;
}

struct CocycleRow {
  int N, M, L;
  CycNum C, C4, expected;
  bool pass;
};

/// C over every pairwise-transversal triple (or sampled ones), by the composition route.
inline std::vector<CocycleRow> cocycle_table(Context& ctx, const Sampling& smp) {
  detail::require_exhaustive_ok(ctx.space(), smp);
  std::vector<int> ids;
  if (smp.exhaustive) ids = ctx.register_all_enhanced();
  const long m = ctx.lag_size();
  const CycNum expect = CycNum(ctx.dn() % 2 == 0 ? 1 : -1) * CycNum(m * m);
  std::vector<CocycleRow> rows;
  detail::for_triples(
      ids, smp, [&] { return detail::random_enhanced(ctx, *smp.rng); },
      [&](int N, int M, int L) { return ctx.transversal(N, M) && ctx.transversal(M, L) && ctx.transversal(N, L); },
      [&](int N, int M, int L) {
        CycNum c = cocycle_C(ctx, N, M, L);
        CycNum c4 = c.pow(4);
        rows.push_back({N, M, L, c, c4, expect, c4 == expect});
      });
  return rows;
}

inline std::string cocycle_table_csv(Context& ctx, const std::vector<CocycleRow>& rows) {
  std::string out = "N,M,L,C,C4,expected,pass\n";
  auto q = [](const std::string& x) { return "\"" + x + "\""; };
  for (const auto& r : rows) {
    out += q(describe(ctx.enhanced(r.N))) + "," + q(describe(ctx.enhanced(r.M))) + "," +
           q(describe(ctx.enhanced(r.L))) + "," + q(r.C.to_string()) + "," + q(r.C4.to_string()) + "," +
           q(r.expected.to_string()) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

inline nlohmann::ordered_json cocycle_table_json(Context& ctx, const std::vector<CocycleRow>& rows) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json x;
    x["N"] = describe(ctx.enhanced(r.N));
    x["M"] = describe(ctx.enhanced(r.M));
    x["L"] = describe(ctx.enhanced(r.L));
    x["C"] = r.C.to_string();
    x["C4"] = r.C4.to_string();
    x["expected"] = r.expected.to_string();
    x["pass"] = r.pass;
    j.push_back(x);
  }
  return j;
}

inline nlohmann::ordered_json witt_record(const SymForm& f) {
  nlohmann::ordered_json j;
  auto dec = canonical_decompose(f);
  j["gram"] = to_string(f);
  j["rank"] = f.rank;
  j["canonical"] = to_string(dec.form);
  j["gw_class"] = gw_class(dec.form);
  j["discriminant"] = discriminant(f);
  j["gauss"] = gauss(f).to_string();
  return j;
}

}  // namespace weil2
