#pragma once
// named check suites, run configuration and JSON reports

#include <set>
#include <string>
#include <vector>

#include "yqn/check.hpp"
#include "yqn/scalar.hpp"

namespace yqn {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchema = 1;

struct RunConfig {
  int N = 1;
  int n = 2;
  std::vector<std::string> points{"1", "2"};
  int max_degree = 2;
  int smax = 3;
  uint64_t seed = 1;
  std::set<std::string> checks;  // empty: all
  std::string report;
  bool negative_controls = false;
  std::vector<std::string> module_points;  // drinfeld: principal series at these points instead of --points/--n
  bool timings = false;  // off: wall times written as 0 so reports compare byte for byte

  std::vector<GaussRat> parsed_points() const;  // throws ParseError
  // throws std::invalid_argument / ParseError with a readable message
  void validate() const;
};

// subcommands in run order
const std::vector<std::string>& suite_names();
// check keys a suite understands (for --checks)
std::vector<std::string> suite_checks(const std::string& suite);

std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg);
// "all" runs every suite
std::vector<CheckResult> run(const std::string& suite, const RunConfig& cfg);

std::string report_json(const std::vector<CheckResult>& results, const RunConfig& cfg, const std::string& suite);
// write to path via a temporary file in the same directory and rename
void write_atomic(const std::string& path, const std::string& text);

bool all_ok(const std::vector<CheckResult>& results);

}  // namespace yqn
