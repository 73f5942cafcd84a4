#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "relaxlab/analysis/linear_theory.hpp"
#include "relaxlab/cli/config.hpp"
#include "relaxlab/cli/results.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/harness/experiments.hpp"
#include "relaxlab/harness/oracles.hpp"
#include "relaxlab/harness/rate_fit.hpp"

namespace py = pybind11;
using namespace relaxlab;

namespace {

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

py::dict fit_dict(const harness::RateFit& f) {
  py::dict d;
  d["exponent"] = f.exponent;
  d["stderr"] = f.stderr_exponent;
  d["intercept"] = f.intercept;
  d["window"] = py::make_tuple(f.window_lo, f.window_hi);
  d["r_squared"] = f.r_squared;
  d["points"] = f.points;
  d["power_law"] = f.power_law;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral experiments for the diffusively scaled Jin-Xin relaxation system";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_IndexError);

  m.def("threshold_J", &analysis::threshold_J, py::arg("eps"), py::arg("k0") = 0);
  m.def("decay_rate_omega", py::overload_cast<double, double>(&analysis::decay_rate_omega), py::arg("S"),
        py::arg("eps"));
  m.def(
      "eigenvalues",
      [](const std::vector<double>& xi, double eps, const std::vector<double>& a) {
        return analysis::eigenvalues(xi, eps, a).eigenvalues;
      },
      py::arg("xi"), py::arg("eps"), py::arg("a"));
  m.def(
      "linear_symbol",
      [](const std::vector<double>& xi, double eps, const std::vector<double>& a) {
        return analysis::linear_symbol(xi, eps, a);
      },
      py::arg("xi"), py::arg("eps"), py::arg("a"));
  m.def(
      "exact_linear_propagator",
      [](const std::vector<double>& xi, double eps, const std::vector<double>& a, double t) {
        return analysis::exact_linear_propagator(xi, eps, a, t);
      },
      py::arg("xi"), py::arg("eps"), py::arg("a"), py::arg("t"));
  m.def(
      "overdamping_curve",
      [](double S, const std::vector<double>& inv_eps) {
        std::vector<std::tuple<double, double, std::string>> out;
        for (const auto& p : analysis::overdamping_curve(S, inv_eps))
          out.emplace_back(p.inv_eps, p.omega, analysis::regime_name(p.regime));
        return out;
      },
      py::arg("S"), py::arg("inv_eps"));

  m.def(
      "fit_rate",
      [](const std::vector<double>& x, const std::vector<double>& y, double lo, double hi, const std::string& variable,
         std::size_t min_points) {
        if (variable != "time" && variable != "eps") throw py::value_error("variable must be 'time' or 'eps'");
        const auto v = variable == "time" ? harness::FitVariable::time : harness::FitVariable::eps;
        return fit_dict(harness::fit_rate(x, y, lo, hi, v, min_points));
      },
      py::arg("x"), py::arg("y"), py::arg("lo"), py::arg("hi"), py::arg("variable") = "time",
      py::arg("min_points") = 5);

  m.def(
      "spectral_selftest",
      [](int N, int d, int fields, std::uint64_t seed) {
        const auto s = harness::spectral_selftest(N, d, fields, seed);
        py::dict out;
        out["partition_defect"] = s.partition_defect;
        out["reconstruction_defect"] = s.reconstruction_defect;
        out["disjointness_defect"] = s.disjointness_defect;
        out["bernstein2"] = py::make_tuple(s.bernstein2_min, s.bernstein2_max);
        out["bernstein_inf"] = py::make_tuple(s.bernstein_inf_min, s.bernstein_inf_max);
        out["hermitian_defect"] = s.hermitian_defect;
        out["transform_defect"] = s.transform_defect;
        return out;
      },
      py::arg("N") = 64, py::arg("d") = 1, py::arg("fields") = 5, py::arg("seed") = 1);

  m.def("preset_names", &cli::preset_names);
  m.def(
      "preset_json", [](const std::string& name) { return cli::preset(name).dump(); }, py::arg("name"));
  m.def(
      "normalize_config_json", [](const std::string& text) { return cli::serialize_config(cli::parse_config(parse(text))).dump(); },
      py::arg("config"));
  m.def(
      "config_hash", [](const std::string& text) { return cli::config_hash(cli::parse_config(parse(text))); },
      py::arg("config"));
  m.def(
      "run_json",
      [](const std::string& text, bool write) {
        const auto config = cli::parse_config(parse(text));
        harness::Report report;
        {
          py::gil_scoped_release release;
          report = harness::run_experiment(config.spec);
        }
        py::dict out;
        out["fits"] = cli::fits_json(report);
        out["norms"] = cli::norms_csv(report);
        out["table"] = report.table_csv;
        out["directory"] = write ? cli::write_results(config, report).string() : std::string();
        return out;
      },
      py::arg("config"), py::arg("write") = false);
}
