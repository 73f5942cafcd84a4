#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "relaxlab/analysis/linear_theory.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/harness/experiments.hpp"
#include "relaxlab/harness/functional.hpp"
#include "relaxlab/harness/initial_data.hpp"
#include "relaxlab/harness/oracles.hpp"
#include "relaxlab/harness/parallel.hpp"
#include "relaxlab/harness/rate_fit.hpp"
#include "relaxlab/spectral/dyadic.hpp"

using namespace relaxlab::harness;
using relaxlab::models::Flux;
using relaxlab::spectral::Grid;
using relaxlab::spectral::SpectralField;

constexpr double kPi = std::numbers::pi;

TEST_CASE("rate fits") {
  std::vector<double> t, y;
  for (double s = 1.0; s <= 1000.0; s *= 1.2) {
    t.push_back(s);
    y.push_back(std::pow(1.0 + s, -0.25));
  }
  const auto fit = fit_rate(t, y, 1.0, 1000.0, FitVariable::time);
  CHECK(fit.exponent == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0));
  CHECK(fit.power_law);

  const std::vector<double> eps{0.02, 0.05, 0.1, 0.2};
  const std::vector<double> lin{0.06, 0.15, 0.3, 0.6};
  CHECK(fit_rate(eps, lin, 0.0, 1.0, FitVariable::eps, 3).exponent == doctest::Approx(1.0));
  CHECK_THROWS(fit_rate(eps, lin, 0.0, 1.0, FitVariable::eps));
  CHECK_THROWS(fit_rate(eps, lin, 0.3, 1.0, FitVariable::eps, 3));
  std::vector<double> neg = lin;
  neg[1] = -1.0;
  CHECK_THROWS(fit_rate(eps, neg, 0.0, 1.0, FitVariable::eps, 3));

  SUBCASE("an exponential is flagged as not a power law") {
    std::vector<double> te, ye;
    for (double s = 1.0; s <= 100.0; s *= 1.1) {
      te.push_back(s);
      ye.push_back(std::exp(-s));
    }
    const auto e = fit_rate(te, ye, 1.0, 100.0, FitVariable::time);
    CHECK_FALSE(e.power_law);
    CHECK(e.r_squared == doctest::Approx(0.803).epsilon(0.01));
    CHECK(exponential_rate(te, ye, 1.0, 100.0) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("initial data") {
  const Grid g(1, 64, 2.0 * kPi);
  const double a[] = {1.0};
  SUBCASE("Darcy-prepared data has Z = 0") {
    InitialDataSpec spec;
    spec.amplitude = 0.2;
    const auto d = make_initial_data(spec, g, Flux::burgers1d(), a, 0.3);
    const relaxlab::models::JinXinModel model{Flux::burgers1d(), {1.0}, 0.3};
    CHECK(effective_Z(model, d.state).max_abs() < 1e-10);
    CHECK(testing::max_diff(d.state.u, d.limit.u) == 0.0);
  }
  SUBCASE("ill-prepared v is scaled in sup norm") {
    InitialDataSpec spec;
    spec.preparation = Preparation::ill_prepared;
    spec.v_scale = 0.5;
    spec.v_eps_power = 1.0;
    const auto d = make_initial_data(spec, g, Flux::burgers1d(), a, 0.25);
    CHECK(relaxlab::spectral::lp_norm(d.state.v, std::numeric_limits<double>::infinity()) ==
          doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("single mode sits in one block") {
    InitialDataSpec spec;
    spec.kind = DataKind::single_mode;
    spec.mode = {6};
    spec.amplitude = 0.1;
    const auto d = make_initial_data(spec, g, Flux::zero(1, 1), a, 1.0);
    const double m = relaxlab::spectral::lp_norm(d.state.u, 2.0);
    CHECK(m == doctest::Approx(0.1 * std::sqrt(kPi)));
    CHECK(relaxlab::spectral::besov_norm(d.state.u, 1.0, 2.0, 1.0).value == doctest::Approx(4.0 * m));
  }
  SUBCASE("random spectrum is flat across the low window") {
    const Grid big(1, 4096, 200.0 * kPi);
    InitialDataSpec spec;
    spec.kind = DataKind::random_spectrum;
    spec.sigma1 = -0.5;
    spec.seed = 7;
    spec.amplitude = 0.05;
    const auto d = make_initial_data(spec, big, Flux::burgers1d(), a, 0.5);
    const auto flat = low_window_flatness(d.state.u, -0.5, relaxlab::analysis::threshold_J(0.5));
    CHECK(flat.ratio <= 2.0);
    double top = 0.0;
    for (double v : flat.weighted_norms) top = std::max(top, v);
    CHECK(top == doctest::Approx(0.05).epsilon(1e-12));
  }
  SUBCASE("decay sigma1 window") {
    CHECK_NOTHROW(require_decay_sigma1(-0.5, 1, 2.0));
    CHECK_THROWS_AS(require_decay_sigma1(0.0, 1, 2.0), relaxlab::ConfigError);
    CHECK_THROWS_AS(require_decay_sigma1(-1.5, 2, 2.0), relaxlab::ConfigError);
  }
  CHECK(parse_data_kind(data_kind_name(DataKind::random_spectrum)) == DataKind::random_spectrum);
  CHECK_THROWS(parse_preparation("half"));
}

TEST_CASE("functional X") {
  const Grid g(1, 64, 8.0 * kPi);
  const relaxlab::models::JinXinModel model{Flux::burgers1d(), {1.0}, 0.5};
  relaxlab::integrators::StepperConfig cfg;
  cfg.t_end = 2.0;
  const auto trackers = functional_trackers(1, 2.0);
  SUBCASE("zero trajectory") {
    const auto traj = relaxlab::integrators::evolve(model, {SpectralField(g, 1), SpectralField(g, 1), 0.0}, cfg,
                                                    trackers);
    const auto X = functional_X(traj, model.eps, 2.0);
    CHECK(X.terms.size() == 8);
    CHECK(X.total == 0.0);
  }
  SUBCASE("terms sum to the total and the history never decreases") {
    InitialDataSpec spec;
    spec.amplitude = 0.1;
    auto d = make_initial_data(spec, g, model.flux, model.a, model.eps);
    const auto traj = relaxlab::integrators::evolve(model, std::move(d.state), cfg, trackers);
    const auto X = functional_X(traj, model.eps, 2.0);
    double sum = 0.0;
    for (const auto& t : X.terms) {
      CHECK(t.value >= 0.0);
      CHECK(t.value == doctest::Approx(t.weight * t.norm));
      sum += t.value;
    }
    CHECK(X.total == doctest::Approx(sum));
    CHECK(X.ratio == doctest::Approx(X.total / X.initial));
    const auto history = functional_X_history(traj, model.eps, 2.0);
    for (std::size_t k = 1; k < history.size(); ++k) CHECK(history[k] >= history[k - 1]);
    CHECK(history.back() == doctest::Approx(X.total));
  }
  SUBCASE("missing trackers are named") {
    const relaxlab::integrators::TrackerSpec only{"u"};
    const auto traj = relaxlab::integrators::evolve(model, {SpectralField(g, 1), SpectralField(g, 1), 0.0}, cfg,
                                                    std::span(&only, 1));
    CHECK_THROWS_WITH_AS(functional_X(traj, model.eps, 2.0), doctest::Contains("needs trackers"),
                         std::invalid_argument);
  }
}

TEST_CASE("parallel_for runs every index once and rethrows") {
  std::vector<std::atomic<int>> hits(20);
  parallel_for(hits.size(), 3, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) CHECK(h == 1);
  CHECK_THROWS_WITH(parallel_for(5, 2,
                                 [](std::size_t i) {
                                   if (i >= 2) throw std::runtime_error("index " + std::to_string(i));
                                 }),
                    "index 2");
}

TEST_CASE("report helpers") {
  Report r;
  r.add_check("a", true, "");
  CHECK(r.passed());
  r.add_check("b", false, "too large");
  r.add_check("c", false, "");
  CHECK_FALSE(r.passed());
  CHECK(r.first_failure() == "b: too large");
  r.experiment = "x";
  CHECK(r.summary_line().find("1/3 checks passed") != std::string::npos);
  r.scalars.push_back({"s", 2.0});
  CHECK(*r.scalar("s") == 2.0);
  CHECK(r.scalar("t") == nullptr);
  CHECK(r.fit("f") == nullptr);
}

TEST_CASE("experiment helpers") {
  const auto grid = overdamping_grid(1.0, 20);
  CHECK(grid.size() == 20);
  CHECK(grid[8] == doctest::Approx(2.0));
  ExperimentSpec spec;
  spec.model.a = {2.0};
  spec.grid.L = 200.0 * kPi;
  CHECK(decay_cutoff_time(spec) == doctest::Approx(0.05 * 1e4 / 2.0));
}

TEST_CASE("analytic spectrum experiment passes its shape check") {
  ExperimentSpec spec;
  spec.experiment = "spectrum";
  const auto report = run_experiment(spec);
  CHECK(report.passed());
  CHECK(report.table_csv.rfind("inv_eps,omega,regime", 0) == 0);
}

TEST_CASE("frozen oracle values") {
  const auto s = spectral_selftest(64, 1, 5, 3);
  CHECK(s.partition_defect <= 1e-15);
  CHECK(s.reconstruction_defect <= 1e-14);
  CHECK(s.disjointness_defect <= 1e-15);
  CHECK(s.bernstein2_min >= 0.75);
  CHECK(s.bernstein2_max <= 8.0 / 3.0);
  CHECK(s.bernstein_inf_min >= 0.25);
  CHECK(s.bernstein_inf_max <= 4.0);
  CHECK(s.hermitian_defect <= 1e-14);
  CHECK(s.transform_defect <= 1e-13);

  const auto p = propagator_oracle(100, 5);
  CHECK(p.charpoly_residual <= 1e-14);
  CHECK(p.semigroup_defect <= 1e-12);
  CHECK(p.defective_semigroup_defect <= 1e-12);
  CHECK(p.rk4_defect <= 1e-13);

  CHECK(conservation_drift(200, 1) <= 1e-14);
}

TEST_CASE("selftest experiment") {
  const auto report = run_selftest(1);
  CHECK(report.checks.size() == 27);
  CHECK(report.passed());
}
