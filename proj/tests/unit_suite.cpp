#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "yqn/suite.hpp"

using namespace yqn;

TEST(Suite, ValidateRejectsBadConfig) {
  RunConfig c;
  EXPECT_NO_THROW(c.validate());
  c.points = {"1/0"};
  EXPECT_THROW(c.validate(), ParseError);
  c = RunConfig{};
  c.N = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.points.clear();
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = RunConfig{};
  c.module_points = {"2", "x"};
  EXPECT_THROW(c.validate(), ParseError);
}

TEST(Suite, CheckKeys) {
  auto k = suite_checks("drinfeld");
  EXPECT_NE(std::find(k.begin(), k.end(), "prop52"), k.end());
  EXPECT_NE(std::find(k.begin(), k.end(), "irreducible"), k.end());
  EXPECT_THROW(suite_checks("nope"), std::invalid_argument);
  EXPECT_EQ(suite_names().size(), 5u);
}

TEST(Suite, SelectedChecksOnly) {
  RunConfig c;
  c.checks = {"qybe"};
  auto r = run("rmatrix", c);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].name, "rmatrix/qybe/N=1");
  EXPECT_TRUE(all_ok(r));
}

TEST(Suite, NegativeControlsExpectedToFail) {
  RunConfig c;
  c.checks = {"qybe", "cybe"};
  c.negative_controls = true;
  auto r = run("rmatrix", c);
  size_t controls = 0;
  for (auto& x : r)
    if (x.expect_fail) {
      ++controls;
      EXPECT_EQ(x.status, Status::Fail);
    }
  EXPECT_EQ(controls, 1u);
  EXPECT_TRUE(all_ok(r));
}

TEST(Suite, ReportIsDeterministicWithoutTimings) {
  RunConfig c;
  c.checks = {"rtt", "eta"};
  c.negative_controls = true;
  auto a = report_json(run("yangian", c), c, "yangian");
  auto b = report_json(run("yangian", c), c, "yangian");
  EXPECT_EQ(a, b);
  auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["schema"], kReportSchema);
  ASSERT_EQ(j["records"].size(), 6u);
  for (auto& rec : j["records"]) {
    for (auto key : {"name", "paper_anchor", "status", "witness", "wall_time", "config", "version"})
      EXPECT_TRUE(rec.contains(key)) << key;
    EXPECT_EQ(rec["wall_time"], 0.0);
  }
  EXPECT_EQ(j["summary"]["not_ok"], 0);
}

TEST(Suite, WriteAtomic) {
  auto dir = std::filesystem::temp_directory_path() / "yqn_suite_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "r.json").string();
  write_atomic(path, "one\n");
  write_atomic(path, "two\n");
  std::ifstream f(path);
  std::string s((std::istreambuf_iterator<char>(f)), {});
  EXPECT_EQ(s, "two\n");
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  EXPECT_THROW(write_atomic((dir / "missing" / "r.json").string(), "x"), std::exception);
  std::filesystem::remove_all(dir);
}
