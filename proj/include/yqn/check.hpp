#pragma once
// outcome of a single verification

#include <chrono>
#include <functional>
#include <string>

namespace yqn {

enum class Status { Pass, Fail, Inconclusive };
inline const char* status_str(Status s) {
  return s == Status::Pass ? "pass" : s == Status::Fail ? "fail" : "inconclusive";
}

struct CheckResult {
  std::string name;
  std::string anchor;  // formula the check is about
  Status status = Status::Inconclusive;
  std::string witness;  // first failure, or a short note
  double wall_ms = 0;
  bool expect_fail = false;  // negative controls
  bool ok() const { return expect_fail ? status == Status::Fail : status == Status::Pass; }
};

struct Verdict {
  bool ok;
  std::string witness;
};

inline CheckResult run_check(const std::string& name, const std::string& anchor, const std::function<Verdict()>& f) {
  CheckResult r;
  r.name = name;
  r.anchor = anchor;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Verdict v = f();
    r.status = v.ok ? Status::Pass : Status::Fail;
    r.witness = v.witness;
  } catch (const std::exception& e) {
    r.status = Status::Inconclusive;
    r.witness = std::string("error: ") + e.what();
  }
  r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CheckResult negative_control(CheckResult r) {
  r.expect_fail = true;
  r.name = "negative_control/" + r.name;
  return r;
}

}  // namespace yqn
