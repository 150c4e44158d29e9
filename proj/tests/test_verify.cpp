#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>

#include "steinerlab/steinerlab.hpp"

using namespace steinerlab;

TEST(Verify, RegistryNamesAreRunnable) {
  auto names = suite_names();
  EXPECT_GE(names.size(), 12u);
  EXPECT_THROW(run_suite("no-such-suite", {}), GeometryError);
}

TEST(Verify, WorkedExamplesPass) {
  InequalityReport r = run_suite("worked-examples", {});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.suite, "worked-examples");
  for (const char* c : {"fiber-p1", "fiber-p2", "graph-rectangles", "chord-p0", "chord-inf"}) {
    ASSERT_NE(r.check(c), nullptr) << c;
    EXPECT_TRUE(r.check(c)->pass()) << c;
  }
}

TEST(Verify, CounterexampleIsDetected) {
  InequalityReport r = run_suite("counterexample", {});
  EXPECT_TRUE(r.pass);
  ASSERT_NE(r.check("nonconvexity-detected"), nullptr);
}

TEST(Verify, ReportSchema) {
  TrialConfig cfg;
  cfg.trials = 2;
  json j = report_to_json(run_suite("minkowski-det", cfg));
  for (const char* k : {"suite", "trials", "worst_slack", "tol", "pass", "witness_path", "checks"}) EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_TRUE(j["pass"].is_boolean());
}

TEST(Verify, ReportsAreIndependentOfWorkerCount) {
  TrialConfig cfg;
  cfg.trials = 4;
  setenv("STEINERLAB_THREADS", "1", 1);
  std::string a = report_to_json(run_suite("chord-mfi", cfg)).dump();
  setenv("STEINERLAB_THREADS", "4", 1);
  std::string b = report_to_json(run_suite("chord-mfi", cfg)).dump();
  unsetenv("STEINERLAB_THREADS");
  EXPECT_EQ(a, b);
}

TEST(Verify, SeedChangesTrials) {
  TrialConfig a, b;
  a.trials = b.trials = 3;
  b.seed = 8;
  EXPECT_NE(report_to_json(run_suite("chord-bmi", a)).dump(), report_to_json(run_suite("chord-bmi", b)).dump());
}

TEST(Verify, WitnessIsWritten) {
  auto dir = std::filesystem::temp_directory_path() / "steinerlab-witness-test";
  std::filesystem::create_directories(dir);
  TrialConfig cfg;
  cfg.trials = 2;
  cfg.witness_dir = dir.string();
  InequalityReport r = run_suite("chord-bmi", cfg);
  EXPECT_FALSE(r.witness_path.empty());
  EXPECT_TRUE(std::filesystem::exists(r.witness_path));
  std::filesystem::remove_all(dir);
}

TEST(Verify, ToleranceOverrideIsReported) {
  TrialConfig cfg;
  cfg.trials = 2;
  cfg.tol = 0.5;
  InequalityReport r = run_suite("chord-mfi", cfg);
  EXPECT_DOUBLE_EQ(r.tol, 0.5);
}
