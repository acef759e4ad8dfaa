#include "yqn/suite.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "yqn/drinfeld.hpp"
#include "yqn/dual_pairing.hpp"
#include "yqn/rmatrix.hpp"
#include "yqn/sergeev.hpp"
#include "yqn/yangian.hpp"

namespace yqn {

std::vector<GaussRat> RunConfig::parsed_points() const {
  std::vector<GaussRat> out;
  for (auto& p : points) out.push_back(GaussRat::parse(p));
  return out;
}

void RunConfig::validate() const {
  if (N < 1 || N > 4) throw std::invalid_argument("N must be in 1..4");
  if (n < 1 || n > 4) throw std::invalid_argument("n must be in 1..4");
  if (smax < 1) throw std::invalid_argument("smax must be positive");
  if (max_degree < 0) throw std::invalid_argument("max-degree must be non-negative");
  if (points.empty()) throw std::invalid_argument("at least one evaluation point is needed");
  for (auto& p : points) {
    try {
      GaussRat::parse(p);
    } catch (const std::exception& e) {
      throw ParseError("bad point '" + p + "': " + e.what());
    }
  }
  if (module_points.size() > 4) throw std::invalid_argument("module: at most 4 points");
  for (auto& p : module_points) {
    try {
      GaussRat::parse(p);
    } catch (const std::exception& e) {
      throw ParseError("bad module point '" + p + "': " + e.what());
    }
  }
  for (auto& c : checks)
    if (c.empty()) throw std::invalid_argument("empty check name");
}

namespace {

struct Ctx {
  const RunConfig& cfg;
  std::vector<GaussRat> pts;
  std::vector<CheckResult>& out;

  GaussRat p(size_t k) const {
    if (k < pts.size()) return pts[k];
    return pts.back() + GaussRat((long long)(k - pts.size() + 1));
  }
  std::vector<GaussRat> zs(int count) const {
    std::vector<GaussRat> z;
    for (int k = 0; k < count; ++k) z.push_back(p(k));
    return z;
  }
  void add(CheckResult r) { out.push_back(std::move(r)); }
  void neg(CheckResult r) {
    if (cfg.negative_controls) out.push_back(negative_control(std::move(r)));
  }
  bool negatives() const { return cfg.negative_controls; }
};

using Step = std::function<void(Ctx&)>;
struct Entry {
  std::string key;
  Step run;
};

std::vector<Entry> rmatrix_entries() {
  return {
      {"forms", [](Ctx& c) { c.add(check_R_forms(c.cfg.N)); }},
      {"qybe",
       [](Ctx& c) {
         c.add(check_qybe(c.cfg.N));
         if (c.negatives()) c.neg(check_qybe(c.cfg.N, RVariant::FlippedSecond));
       }},
      {"unitarity", [](Ctx& c) { c.add(check_unitarity(c.cfg.N)); }},
      {"rbar", [](Ctx& c) { c.add(check_rbar(c.cfg.N)); }},
      {"eta", [](Ctx& c) { c.add(check_eta_covariance(c.cfg.N)); }},
      {"classical", [](Ctx& c) { c.add(check_classical_r(c.cfg.N)); }},
      {"cybe",
       [](Ctx& c) {
         c.add(check_cybe(c.cfg.N));
         c.add(check_cybe(c.cfg.N, false));
       }},
      {"cosuper", [](Ctx& c) { c.add(check_cosupercommutator(c.cfg.N, c.cfg.smax)); }},
  };
}

std::vector<Entry> yangian_entries() {
  return {
      {"eval", [](Ctx& c) { c.add(check_eval_formula(c.cfg.N, c.p(0), c.cfg.smax)); }},
      {"symmetry",
       [](Ctx& c) {
         c.add(check_table_symmetry(eval_rep(c.cfg.N, c.p(0), c.cfg.smax)));
         c.add(check_table_symmetry(multi_eval_rep(c.cfg.N, c.pts, c.cfg.smax)));
       }},
      {"comult", [](Ctx& c) { c.add(check_comultiplication(c.cfg.N, c.pts, c.cfg.smax)); }},
      {"counit", [](Ctx& c) { c.add(check_counit(c.cfg.N, c.cfg.smax)); }},
      {"rtt",
       [](Ctx& c) {
         c.add(check_rtt(eval_rep(c.cfg.N, c.p(0), c.cfg.smax)));
         c.add(check_rtt(multi_eval_rep(c.cfg.N, c.pts, c.cfg.smax)));
         if (c.negatives()) c.neg(check_rtt(eval_rep(c.cfg.N, c.p(0), c.cfg.smax, RVariant::FlippedSecond)));
       }},
      {"eta",
       [](Ctx& c) {
         c.add(check_eta_T(eval_rep(c.cfg.N, c.p(0), c.cfg.smax)));
         c.add(check_eta_T(multi_eval_rep(c.cfg.N, c.pts, c.cfg.smax)));
         if (c.negatives()) c.neg(check_eta_T(eval_rep(c.cfg.N, c.p(0), c.cfg.smax, RVariant::NoPlusTerm)));
       }},
      {"centre",
       [](Ctx& c) {
         int L = c.cfg.smax + 1;
         for (auto rep : {eval_rep(c.cfg.N, c.p(0), c.cfg.smax), multi_eval_rep(c.cfg.N, c.pts, c.cfg.smax)}) {
           c.add(check_centre_structure(rep));
           c.add(check_antipode_relation(rep));
           c.add(check_centre_even(rep));
           c.add(check_centrality(rep, L));
         }
         c.add(check_centre_derivative(eval_rep(c.cfg.N, c.p(0), c.cfg.smax)));
         c.add(check_group_like(c.cfg.N, c.p(0), c.p(1)));
         c.add(check_centre_images(c.cfg.N));
       }},
      {"loop", [](Ctx& c) { c.add(check_loop_relations(c.cfg.N, c.cfg.smax)); }},
      {"copoisson", [](Ctx& c) { c.add(check_copoisson(c.cfg.N, std::min(c.cfg.smax, 4))); }},
  };
}

std::vector<Entry> pairing_entries() {
  // the pairing cache is shared by the entries of one run
  auto P = std::make_shared<std::optional<Pairing>>();
  auto get = [P](Ctx& c) -> Pairing& {
    if (!*P) P->emplace(c.cfg.N);
    return **P;
  };
  return {
      {"unit", [](Ctx& c) { c.add(check_pairing_unit(c.cfg.N)); }},
      {"support", [](Ctx& c) { c.add(check_pairing_support(c.cfg.N, 2 * c.cfg.max_degree)); }},
      {"parity", [](Ctx& c) { c.add(check_parity_pairing(c.cfg.N, c.cfg.max_degree)); }},
      {"counit", [](Ctx& c) { c.add(check_counit_pairing(c.cfg.N, c.cfg.max_degree)); }},
      {"dual",
       [](Ctx& c) {
         c.add(check_dual_table(c.cfg.N, c.p(0), c.cfg.smax));
         c.add(check_dual_rtt(c.cfg.N));
         c.add(check_dual_eta(c.cfg.N));
       }},
      {"gram", [](Ctx& c) { c.add(check_gram(c.cfg.N, c.cfg.max_degree)); }},
      {"hopf", [](Ctx& c) { c.add(check_hopf_pairing(c.cfg.N, c.cfg.max_degree)); }},
      {"universal",
       [get](Ctx& c) {
         for (int D = 0; D <= c.cfg.max_degree; ++D) c.add(check_universal_R_image(get(c), D, c.p(0)));
         c.add(check_universal_R_coproducts(get(c), c.cfg.max_degree, c.p(0), c.p(1)));
       }},
      {"double",
       [](Ctx& c) {
         c.add(check_double_relation(c.cfg.N));
         c.add(check_double_relation_twofold(c.cfg.N));
         if (c.negatives()) c.neg(check_double_relation(c.cfg.N, RVariant::NoPlusTerm));
       }},
  };
}

std::vector<Entry> sergeev_entries() {
  return {
      {"hn", [](Ctx& c) { c.add(check_hn_relations(c.cfg.n)); }},
      {"relations",
       [](Ctx& c) {
         c.add(check_an_relations(c.cfg.n));
         c.add(check_an_associative(c.cfg.n, 2, 40, c.cfg.seed));
       }},
      {"y", [](Ctx& c) { c.add(check_y_relations(c.cfg.n)); }},
      {"gamma",
       [](Ctx& c) {
         for (int m = 0; m <= 2; ++m) c.add(check_gamma_relations(m, c.cfg.n));
         c.add(check_gamma0_y(c.cfg.n));
         c.add(check_gamma_homomorphism(1, c.cfg.n, 2, 20, c.cfg.seed));
       }},
      {"matrix", [](Ctx& c) { c.add(check_hn_matrix_rep(c.cfg.N, c.cfg.n)); }},
      {"pbw", [](Ctx& c) { c.add(check_pbw_independence(c.cfg.n, c.cfg.max_degree)); }},
  };
}

std::vector<Entry> drinfeld_entries() {
  struct Cache {
    std::optional<AnModule> U;
    std::optional<DrinfeldModule> D;
  };
  auto C = std::make_shared<Cache>();
  auto mod = [C](Ctx& c) -> const AnModule& {
    if (!C->U) {
      if (c.cfg.module_points.empty()) {
        C->U = principal_series(c.zs(c.cfg.n));
      } else {
        std::vector<GaussRat> z;
        for (auto& p : c.cfg.module_points) z.push_back(GaussRat::parse(p));
        C->U = principal_series(z);
      }
    }
    return *C->U;
  };
  auto drin = [C, mod](Ctx& c) -> const DrinfeldModule& {
    if (!C->D) C->D = functor_apply(c.cfg.N, mod(c), c.cfg.smax);
    return *C->D;
  };
  return {
      {"module",
       [mod](Ctx& c) {
         c.add(check_an_module(mod(c)));
         c.add(check_odot_principal(c.p(0), c.p(1)));
       }},
      {"coinvariants",
       [mod](Ctx& c) {
         c.add(check_coinvariants(c.cfg.N, mod(c)));
         c.add(check_generators_suffice(c.cfg.N, principal_series(c.zs(std::min(c.cfg.n, 2)))));
         c.add(check_functor_dim(c.cfg.N, c.p(0)));
       }},
      {"functor",
       [drin](Ctx& c) {
         auto& D = drin(c);
         c.add(check_functor_table(D));
         c.add(check_table_symmetry(D.rep));
         c.add(check_rtt(D.rep));
         c.add(check_eta_T(D.rep));
         c.add(check_eval_match(c.cfg.N, c.p(0), c.cfg.smax));
       }},
      {"prop52",
       [drin](Ctx& c) {
         auto& D = drin(c);
         c.add(check_left_ideal(D));
         c.add(check_commutation(D, c.cfg.smax));
         if (c.negatives() && D.U.n >= 2) c.neg(check_left_ideal_with_x(D));
       }},
      {"prop53",
       [](Ctx& c) {
         c.add(check_tensor_product(c.cfg.N, principal_series({c.p(0)}), principal_series({c.p(1)}), c.cfg.smax));
       }},
      {"functoriality", [mod](Ctx& c) { c.add(check_functoriality(c.cfg.N, mod(c), c.cfg.seed)); }},
      {"irreducible",
       [](Ctx& c) {
         int it = 10;
         auto V = functor_apply(c.cfg.N, principal_series({c.p(0)}), c.cfg.smax).rep;
         c.add(check_irreducible(V, c.cfg.smax, it, c.cfg.seed));
         c.add(check_centre_scalars(V, c.cfg.smax + 1));
         c.add(check_reducible_control(direct_sum(V, V), c.cfg.smax, it, c.cfg.seed));
         auto U2 = irreducible_quotient(principal_series({c.p(0), c.p(1)}), it, c.cfg.seed);
         auto W = functor_apply(c.cfg.N, U2, c.cfg.smax).rep;
         c.add(check_irreducible(W, c.cfg.smax, it, c.cfg.seed));
         c.add(check_rtt(W));
         if (c.negatives()) c.neg(check_irreducible(direct_sum(V, V), c.cfg.smax, it, c.cfg.seed));
       }},
  };
}

const std::map<std::string, std::function<std::vector<Entry>()>>& registry() {
  static const std::map<std::string, std::function<std::vector<Entry>()>> r{
      {"rmatrix", rmatrix_entries}, {"yangian", yangian_entries}, {"pairing", pairing_entries},
      {"sergeev", sergeev_entries}, {"drinfeld", drinfeld_entries},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"rmatrix", "yangian", "pairing", "sergeev", "drinfeld"};
  return names;
}

std::vector<std::string> suite_checks(const std::string& suite) {
  auto it = registry().find(suite);
  if (it == registry().end()) throw std::invalid_argument("unknown suite " + suite);
  std::vector<std::string> keys;
  for (auto& e : it->second()) keys.push_back(e.key);
  return keys;
}

std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg) {
  auto it = registry().find(suite);
  if (it == registry().end()) throw std::invalid_argument("unknown suite " + suite);
  std::vector<CheckResult> out;
  Ctx ctx{cfg, cfg.parsed_points(), out};
  for (auto& e : it->second()) {
    if (!cfg.checks.empty() && !cfg.checks.count(e.key)) continue;
    try {
      e.run(ctx);
    } catch (const std::exception& ex) {
      // a failure while building inputs is reported, the run goes on
      CheckResult r;
      r.name = suite + "/" + e.key;
      r.anchor = "setup";
      r.status = Status::Inconclusive;
      r.witness = std::string("error: ") + ex.what();
      out.push_back(r);
    }
  }
  return out;
}

std::vector<CheckResult> run(const std::string& suite, const RunConfig& cfg) {
  if (suite != "all") return run_suite(suite, cfg);
  std::vector<CheckResult> out;
  for (auto& s : suite_names()) {
    auto r = run_suite(s, cfg);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

bool all_ok(const std::vector<CheckResult>& results) {
  for (auto& r : results)
    if (!r.ok()) return false;
  return true;
}

std::string report_json(const std::vector<CheckResult>& results, const RunConfig& cfg, const std::string& suite) {
  using nlohmann::ordered_json;
  ordered_json conf;
  conf["suite"] = suite;
  conf["N"] = cfg.N;
  conf["n"] = cfg.n;
  conf["points"] = cfg.points;
  conf["max_degree"] = cfg.max_degree;
  conf["smax"] = cfg.smax;
  conf["seed"] = cfg.seed;
  conf["checks"] = std::vector<std::string>(cfg.checks.begin(), cfg.checks.end());
  conf["module_points"] = cfg.module_points;
  conf["negative_controls"] = cfg.negative_controls;
  conf["timings"] = cfg.timings;
  ordered_json recs = ordered_json::array();
  size_t passed = 0;
  for (auto& r : results) {
    ordered_json j;
    j["name"] = r.name;
    j["paper_anchor"] = r.anchor;
    j["status"] = status_str(r.status);
    j["expected"] = r.expect_fail ? "fail" : "pass";
    j["ok"] = r.ok();
    j["witness"] = r.witness;
    j["wall_time"] = cfg.timings ? std::round(r.wall_ms * 1000) / 1e6 : 0.0;  // seconds
    j["config"] = conf;
    j["version"] = kVersion;
    recs.push_back(j);
    passed += r.ok();
  }
  ordered_json rep;
  rep["schema"] = kReportSchema;
  rep["version"] = kVersion;
  rep["config"] = conf;
  rep["summary"] = {{"records", results.size()}, {"ok", passed}, {"not_ok", results.size() - passed}};
  rep["records"] = recs;
  return rep.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

}  // namespace yqn
