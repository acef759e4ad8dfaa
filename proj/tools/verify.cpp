// batch runner: verify <suite> [flags]
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "yqn/suite.hpp"

using namespace yqn;

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// key=value lines, '#' comments; keys are the long flag names
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read config " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto key = trim(line.substr(0, eq));
    if (key.empty()) throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

int to_int(const std::string& key, const std::string& v) {
  size_t pos = 0;
  int x = 0;
  try {
    x = std::stoi(v, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos == 0 || pos != v.size()) throw std::invalid_argument("config " + key + ": not an integer: " + v);
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("config " + key + ": not a boolean: " + v);
}

void apply_config(RunConfig& cfg, const std::map<std::string, std::string>& kv) {
  for (auto& [k, v] : kv) {
    if (k == "N") cfg.N = to_int(k, v);
    else if (k == "n") cfg.n = to_int(k, v);
    else if (k == "points") cfg.points = split(v, ',');
    else if (k == "max-degree" || k == "degree") cfg.max_degree = to_int(k, v);
    else if (k == "smax") cfg.smax = to_int(k, v);
    else if (k == "seed") cfg.seed = (uint64_t)to_int(k, v);
    else if (k == "report") cfg.report = v;
    else if (k == "checks") {
      auto c = split(v, ',');
      cfg.checks = {c.begin(), c.end()};
    } else if (k == "negative-controls") cfg.negative_controls = to_bool(k, v);
    else if (k == "timings") cfg.timings = to_bool(k, v);
    else if (k == "module") cfg.module_points.clear(), cfg.module_points.push_back(v);
    else throw std::invalid_argument("config: unknown key " + k);
  }
}

// principal:z=2  or  principal:z=2,-3,5
std::vector<std::string> parse_module(const std::string& text) {
  const std::string head = "principal:z=";
  if (text.rfind(head, 0) != 0) throw std::invalid_argument("module: expected principal:z=<points>, got " + text);
  auto pts = split(text.substr(head.size()), ',');
  if (pts.empty()) throw std::invalid_argument("module: no points in " + text);
  return pts;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact checks for the queer Yangian, its dual and the Drinfeld functor"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string config_path, points, checks, module, report;
  int N = 0, n = 0, max_degree = -1, smax = 0;
  long long seed = -1;
  bool negative = false, timings = false;

  app.add_option("--config", config_path, "key=value file; command-line flags win");
  app.add_option("--N", N, "size of the super vector space C^{N|N}");
  app.add_option("--n", n, "number of tensor factors / rank of the affine Sergeev algebra");
  app.add_option("--points", points, "comma separated evaluation points, e.g. 1,2 or 1/2,3+i");
  app.add_option("--max-degree,--degree", max_degree, "degree bound for pairing and PBW checks");
  app.add_option("--smax", smax, "highest generator index s");
  app.add_option("--seed", seed, "seed of the randomized tests");
  app.add_option("--checks", checks, "comma separated check keys (default: all of the suite)");
  app.add_option("--module", module, "drinfeld input, principal:z=<points>");
  app.add_option("--report", report, "write a JSON report here (atomically)");
  app.add_flag("--negative-controls", negative, "also run mutated inputs that must fail");
  app.add_flag("--timings", timings, "record wall times (reports then differ between runs)");

  for (auto& s : suite_names()) app.add_subcommand(s, "run the " + s + " checks");
  app.add_subcommand("all", "run every suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string suite = app.get_subcommands().front()->get_name();
  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config(cfg, read_config(config_path));
    if (app.count("--N")) cfg.N = N;
    if (app.count("--n")) cfg.n = n;
    if (app.count("--points")) cfg.points = split(points, ',');
    if (app.count("--max-degree")) cfg.max_degree = max_degree;
    if (app.count("--smax")) cfg.smax = smax;
    if (app.count("--seed")) cfg.seed = (uint64_t)seed;
    if (app.count("--report")) cfg.report = report;
    if (app.count("--checks")) {
      auto c = split(checks, ',');
      cfg.checks = {c.begin(), c.end()};
    }
    if (negative) cfg.negative_controls = true;
    if (timings) cfg.timings = true;
    if (app.count("--module")) cfg.module_points = parse_module(module);
    else if (cfg.module_points.size() == 1 && cfg.module_points[0].find(':') != std::string::npos)
      cfg.module_points = parse_module(cfg.module_points[0]);
    cfg.validate();

    std::set<std::string> known;
    for (auto& s : suite == "all" ? suite_names() : std::vector<std::string>{suite})
      for (auto& k : suite_checks(s)) known.insert(k);
    for (auto& c : cfg.checks)
      if (!known.count(c)) throw std::invalid_argument("unknown check '" + c + "' for " + suite);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  auto results = run(suite, cfg);
  size_t bad = 0;
  for (auto& r : results) {
    std::cout << (r.ok() ? "ok   " : "FAIL ") << r.name << " [" << status_str(r.status)
              << (r.expect_fail ? ", expected fail" : "") << "]";
    if (!r.ok() || r.expect_fail) std::cout << "  " << r.witness;
    std::cout << "\n";
    bad += !r.ok();
  }
  std::cout << results.size() - bad << "/" << results.size() << " ok\n";

  if (!cfg.report.empty()) {
    try {
      write_atomic(cfg.report, report_json(results, cfg, suite));
    } catch (const std::exception& e) {
      std::cerr << "report: " << e.what() << "\n";
      return 2;
    }
  }
  return bad ? 1 : 0;
}
