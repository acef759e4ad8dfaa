#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "yqn/drinfeld.hpp"
#include "yqn/rmatrix.hpp"
#include "yqn/suite.hpp"
#include "yqn/yangian.hpp"

namespace py = pybind11;
using namespace yqn;

namespace {

RunConfig make_config(int N, int n, std::vector<std::string> points, int max_degree, int smax, uint64_t seed,
                      std::vector<std::string> checks, bool negative_controls, std::vector<std::string> module) {
  RunConfig c;
  c.N = N;
  c.n = n;
  c.points = std::move(points);
  c.max_degree = max_degree;
  c.smax = smax;
  c.seed = seed;
  c.checks = {checks.begin(), checks.end()};
  c.negative_controls = negative_controls;
  c.module_points = std::move(module);
  c.validate();
  return c;
}

}  // namespace

PYBIND11_MODULE(_yqn, m) {
  m.attr("__version__") = kVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::enum_<Status>(m, "Status").value("PASS", Status::Pass).value("FAIL", Status::Fail).value("INCONCLUSIVE", Status::Inconclusive);

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("anchor", &CheckResult::anchor)
      .def_readonly("status", &CheckResult::status)
      .def_readonly("witness", &CheckResult::witness)
      .def_readonly("wall_ms", &CheckResult::wall_ms)
      .def_readonly("expect_fail", &CheckResult::expect_fail)
      .def_property_readonly("ok", &CheckResult::ok)
      .def("__repr__", [](const CheckResult& r) {
        return "<CheckResult " + r.name + " " + status_str(r.status) + (r.expect_fail ? " (control)" : "") + ">";
      });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init(&make_config), py::arg("N") = 1, py::arg("n") = 2,
           py::arg("points") = std::vector<std::string>{"1", "2"}, py::arg("max_degree") = 2, py::arg("smax") = 3,
           py::arg("seed") = 1, py::arg("checks") = std::vector<std::string>{}, py::arg("negative_controls") = false,
           py::arg("module") = std::vector<std::string>{})
      .def_readonly("N", &RunConfig::N)
      .def_readonly("n", &RunConfig::n)
      .def_readonly("points", &RunConfig::points)
      .def_readonly("smax", &RunConfig::smax)
      .def_readonly("max_degree", &RunConfig::max_degree);

  m.def("suite_names", &suite_names);
  m.def("suite_checks", &suite_checks, py::arg("suite"));
  m.def("run", &run, py::arg("suite"), py::arg("config"), py::call_guard<py::gil_scoped_release>());
  m.def("report_json", &report_json, py::arg("results"), py::arg("config"), py::arg("suite"));

  // a few direct entry points
  m.def("check_qybe", [](int N) { return check_qybe(N); }, py::arg("N"));
  m.def("check_qybe_mutated", [](int N) { return check_qybe(N, RVariant::FlippedSecond); }, py::arg("N"));
  m.def("check_rtt_eval", [](int N, const std::string& z, int smax) {
    return check_rtt(eval_rep(N, GaussRat::parse(z), smax));
  }, py::arg("N"), py::arg("z"), py::arg("smax") = 3);
  m.def("functor_dimension", [](int N, std::vector<std::string> z) {
    std::vector<GaussRat> zs;
    for (auto& s : z) zs.push_back(GaussRat::parse(s));
    return coinvariants(N, principal_series(zs)).dim;
  }, py::arg("N"), py::arg("z"));
  m.def("check_irreducible_principal", [](int N, const std::string& z, int smax, uint64_t seed) {
    auto V = functor_apply(N, principal_series({GaussRat::parse(z)}), smax).rep;
    return check_irreducible(V, smax, 10, seed);
  }, py::arg("N"), py::arg("z"), py::arg("smax") = 3, py::arg("seed") = 1);
}
