#include "weil2/report.hpp"

#include <gtest/gtest.h>

using namespace weil2;

TEST(Report, SameConfigSameBytes) {
  JobConfig cfg;
  auto a = report_json(cfg, run_suites("cocycle", cfg)).dump(2);
  auto b = report_json(cfg, run_suites("cocycle", cfg)).dump(2);
  EXPECT_EQ(a, b);
  JobConfig sampled{1, 2, 7, true, 50};
  EXPECT_EQ(report_json(sampled, run_suites("cocycle", sampled)).dump(),
            report_json(sampled, run_suites("cocycle", sampled)).dump());
}

TEST(Report, HeaderIsSelfDescribing) {
  JobConfig cfg{2, 1, 9, true, 17};
  auto h = header(cfg);
  EXPECT_EQ(h["schema_version"], kSchemaVersion);
  EXPECT_EQ(h["ring_modulus"], "x^2 + x + 1");
  EXPECT_EQ(h["mode"], "sampled");
  EXPECT_EQ(h["seed"], 9);
  EXPECT_EQ(h["rng"], kRngName);
}

TEST(Report, CocycleTableAtRankOne) {
  SympSpace s(make_ring(1), 1);
  Context ctx(s);
  Rng rng(1);
  Sampling smp{true, 200, &rng};
  auto rows = cocycle_table(ctx, smp);
  EXPECT_EQ(rows.size(), 48u);
  for (const auto& r : rows) EXPECT_TRUE(r.pass);
  auto csv = cocycle_table_csv(ctx, rows);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 49);
  EXPECT_EQ(ctx.enhanced_count(), 6u);
}

TEST(Report, FailureFlipsVerdict) {
  CheckResult bad{"x"};
  bad.record(false, [] { return std::string("witness"); });
  std::vector<SuiteReport> rs{{"s", {bad}}};
  EXPECT_FALSE(passed(rs));
  auto j = report_json(JobConfig{}, rs);
  EXPECT_EQ(j["suites"][0]["checks"][0]["first_counterexample"], "witness");
  EXPECT_FALSE(j["passed"]);
  CheckResult empty{"y"};
  EXPECT_FALSE(empty.ok());
}

TEST(Report, ExhaustiveCapIsEnforced) {
  if (size_caps_disabled()) GTEST_SKIP();
  JobConfig cfg{1, 5, 1, false, 200};
  EXPECT_THROW(run_suite("cocycle", cfg), CapExceeded);
}
