#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "helpers.hpp"
#include "relaxlab/analysis/linear_theory.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/harness/oracles.hpp"
#include "relaxlab/integrators/evolve.hpp"

using namespace relaxlab::integrators;
using relaxlab::models::Flux;
using relaxlab::models::LimitModel;
using relaxlab::spectral::Grid;
using testing::max_diff;
using testing::random_field;
using testing::sample;

constexpr double kPi = std::numbers::pi;

TEST_CASE("stepper config validation") {
  StepperConfig c;
  CHECK_NOTHROW(c.validate());
  c.cfl = 1.5;
  CHECK_THROWS(c.validate());
  c = {};
  c.dt_min = 1.0;
  c.dt_max = 0.1;
  CHECK_THROWS(c.validate());
  c = {};
  c.layer_span = 10.0;
  CHECK_THROWS(c.validate());
  c.layer_factor = 0.5;
  CHECK_NOTHROW(c.validate());
  CHECK(parse_scheme(scheme_name(Scheme::if_rk2)) == Scheme::if_rk2);
  CHECK_THROWS(parse_scheme("rk4"));
}

TEST_CASE("relaxation steps") {
  const Grid g(1, 32, 2.0 * kPi);
  const JinXinModel model{Flux::burgers1d(), {1.0}, 0.1};
  StepperConfig cfg;
  const double dt = hyperbolic_dt_limit(model, g, cfg.cfl);
  CHECK(dt == doctest::Approx(0.5 * 0.1 * 2.0 * kPi / 32));

  SUBCASE("equilibrium is a fixed point") {
    const auto u = sample(g, 1, [](int, auto) { return 0.4; });
    const auto v = sample(g, 1, [](int, auto) { return 0.08; });
    for (auto scheme : {Scheme::imex_euler, Scheme::imex_ssp2}) {
      cfg.scheme = scheme;
      const auto next = step_jinxin(model, {u, v, 0.0}, dt, cfg);
      CHECK(max_diff(next.u, u) < 1e-14);
      CHECK(max_diff(next.v, v) < 1e-14);
      CHECK(next.t == dt);
    }
  }
  SUBCASE("CFL violation proposes the admissible step") {
    const JinXinState s{random_field(g, 1, 1), random_field(g, 1, 2), 0.0};
    try {
      step_jinxin(model, s, 2.0 * dt, cfg);
      FAIL("expected CflError");
    } catch (const relaxlab::CflError& e) {
      CHECK(e.admissible_dt() == doctest::Approx(dt));
    }
    cfg.scheme = Scheme::if_rk2;
    CHECK_THROWS(step_jinxin(model, s, dt, cfg));
  }
  SUBCASE("mean of u is conserved") {
    auto u = random_field(g, 1, 3);
    u *= 0.2;
    u.at(0, 0) = 0.3;
    JinXinState s{u, random_field(g, 1, 4), 0.0};
    for (int n = 0; n < 200; ++n) s = step_jinxin(model, s, dt, cfg);
    CHECK(std::abs(s.u.mean(0) - 0.3) <= 1e-15);
  }
  SUBCASE("one imex_euler step agrees with forward Euler to O(dt^2)") {
    const JinXinModel m1{Flux::burgers1d(), {1.0}, 1.0};
    auto u = random_field(g, 1, 5);
    u *= 0.1;
    auto v = random_field(g, 1, 6);
    v *= 0.1;
    cfg.scheme = Scheme::imex_euler;
    double prev = 0.0;
    for (double h : {0.02, 0.01, 0.005}) {
      const auto next = step_jinxin(m1, {u, v, 0.0}, h, cfg);
      const auto r = relaxlab::models::jinxin_rhs(m1, {u, v, 0.0});
      auto fu = u, fv = v;
      fu.axpy(h, r.du);
      fv.axpy(h, r.dv);
      const double err = std::max(max_diff(next.u, fu), max_diff(next.v, fv));
      if (prev > 0.0) CHECK(prev / err == doctest::Approx(4.0).epsilon(0.15));
      prev = err;
    }
  }
  SUBCASE("stiff limit drives Z toward zero") {
    const JinXinModel stiff{Flux::burgers1d(), {1.0}, 1e-3};
    auto u = random_field(g, 1, 7);
    u *= 0.1;
    const JinXinState s{u, random_field(g, 1, 8), 0.0};
    const double h = hyperbolic_dt_limit(stiff, g, cfg.cfl);
    cfg.scheme = Scheme::imex_euler;
    const auto next = step_jinxin(stiff, s, h, cfg);
    const double before = effective_Z(stiff, s).max_abs();
    const double after = effective_Z(stiff, next).max_abs();
    const double e2 = stiff.eps * stiff.eps;
    CHECK(after <= e2 / (e2 + h) * before + 10.0 * h);
  }
  SUBCASE("odd Burgers data stays odd") {
    const auto u = sample(g, 1, [](int, auto x) { return 0.3 * std::sin(x[0]) + 0.1 * std::sin(2 * x[0]); });
    JinXinState s{u, relaxlab::models::darcy_velocity(model.flux, model.a, u), 0.0};
    for (int n = 0; n < 100; ++n) s = step_jinxin(model, s, dt, cfg);
    double even = 0.0;
    for (const auto& c : s.u.coeffs()) even = std::max(even, std::abs(c.real()));
    CHECK(even <= 1e-10);
  }
}

TEST_CASE("imex_ssp2 is second order on a linear mode") {
  for (double eps : {1.0, 0.1}) {
    const auto study = relaxlab::harness::imex_order_study(eps);
    CHECK(study.order >= 1.9);
    CHECK(study.min_pair_order >= 1.9);
  }
  const auto euler = relaxlab::harness::imex_order_study(1.0, "imex_euler");
  CHECK(euler.order == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("limit steps") {
  const double L = 2.0 * kPi;
  const Grid g(1, 64, L);
  const double a[] = {0.7};
  StepperConfig cfg;
  cfg.scheme = Scheme::if_rk2;
  SUBCASE("heat factor is exact on one mode") {
    const auto u = sample(g, 1, [](int, auto x) { return std::cos(3 * x[0]); });
    const auto next = step_limit(Flux::zero(1, 1), a, {u, 0.0}, 0.25, cfg);
    CHECK(max_diff(next.u, std::exp(-0.7 * 9 * 0.25) * u) < 1e-16);
  }
  SUBCASE("constant state is unchanged") {
    const auto u = sample(g, 1, [](int, auto) { return 0.2; });
    const auto next = step_limit(Flux::burgers1d(), a, {u, 0.0}, 0.1, cfg);
    CHECK(max_diff(next.u, u) < 1e-16);
  }
  SUBCASE("advective CFL") {
    const auto u = sample(g, 1, [](int, auto x) { return std::sin(x[0]); });
    CHECK(advective_dt_limit(Flux::burgers1d(), u, 0.5) == doctest::Approx(0.5 * L / 64));
    CHECK_THROWS_AS(step_limit(Flux::burgers1d(), a, {u, 0.0}, 0.1, cfg), relaxlab::CflError);
    cfg.scheme = Scheme::imex_ssp2;
    CHECK_THROWS(step_limit(Flux::burgers1d(), a, {u, 0.0}, 0.01, cfg));
  }
  SUBCASE("second-order self-convergence on Burgers") {
    const auto study = relaxlab::harness::limit_order_study();
    CHECK(study.order >= 1.9);
  }
}

TEST_CASE("step schedules and sampling") {
  CHECK(step_plan(1.0, 0.3) == std::pair<std::size_t, double>{4, 0.25});
  CHECK(step_plan(1.0, 0.25).first == 4);

  const Grid g(1, 32, 2.0 * kPi);
  const JinXinModel model{Flux::burgers1d(), {1.0}, 0.1};
  StepperConfig cfg;
  cfg.t_end = 1.0;
  cfg.layer_factor = 0.1;
  const auto uniform = jinxin_schedule(model, g, cfg);
  CHECK(uniform.size() == 1000);
  cfg.layer_span = 20.0;
  const auto two = jinxin_schedule(model, g, cfg);
  double t = 0.0;
  for (double h : two) t += h;
  CHECK(t == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(two.front() == doctest::Approx(1e-3));
  CHECK(two.back() == doctest::Approx(1.0 / std::ceil(0.8 / hyperbolic_dt_limit(model, g, cfg.cfl)) * 0.8));
  CHECK(two.size() == 200 + static_cast<std::size_t>(std::ceil(0.8 / hyperbolic_dt_limit(model, g, cfg.cfl))));

  StepperConfig s;
  s.sample_every = 3;
  CHECK(sample_steps(10, 0.1, s) == std::vector<std::size_t>{0, 3, 6, 9, 10});
  s.sample_ratio = 2.0;
  s.dense_until = 0.2;
  CHECK(sample_steps(10, 0.1, s) == std::vector<std::size_t>{0, 1, 2, 4, 8, 10});
}

TEST_CASE("evolve") {
  const double L = 2.0 * kPi;
  const Grid g(1, 32, L);
  const TrackerSpec u2{"u", 0.0, 2.0, 1.0, relaxlab::spectral::Window::Kind::full};
  StepperConfig cfg;
  cfg.t_end = 0.5;
  SUBCASE("zero data stays zero") {
    const JinXinModel model{Flux::burgers1d(), {1.0}, 0.5};
    const auto traj = evolve(model, {SpectralField(g, 1), SpectralField(g, 1), 0.0}, cfg, std::span(&u2, 1));
    for (double v : traj.values(u2)) CHECK(v == 0.0);
    CHECK(traj.max_u_linf == 0.0);
  }
  SUBCASE("linear mode follows the exact propagator") {
    const double eps = 0.5;
    const JinXinModel model{Flux::zero(1, 1), {1.0}, eps};
    const auto u = sample(g, 1, [](int, auto x) { return std::cos(2 * x[0]); });
    const TrackerSpec linf{"u", 0.0, std::numeric_limits<double>::infinity(), 1.0,
                           relaxlab::spectral::Window::Kind::full};
    cfg.dt_max = 2e-4;
    const auto traj = evolve(model, {u, SpectralField(g, 1), 0.0}, cfg, std::span(&linf, 1));
    const double xi[] = {2.0}, a[] = {1.0};
    const auto values = traj.values(linf);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
      const double expect = std::abs(relaxlab::analysis::exact_linear_propagator(xi, eps, a, traj.times[k])(0, 0));
      CHECK(values[k] == doctest::Approx(expect).epsilon(1e-6));
    }
  }
  SUBCASE("heat run is monotone") {
    const LimitModel model{Flux::zero(1, 1), {1.0}};
    cfg.scheme = Scheme::if_rk2;
    cfg.t_end = 2.0;
    cfg.dt_max = 0.05;
    const TrackerSpec us{"ustar", 0.0, 2.0, 1.0, relaxlab::spectral::Window::Kind::full};
    const auto traj = evolve_limit(model, {random_field(g, 1, 3), 0.0}, cfg, std::span(&us, 1), 2);
    const auto values = traj.values(us);
    for (std::size_t k = 1; k < values.size(); ++k) CHECK(values[k] <= values[k - 1]);
  }
  SUBCASE("unknown trackers are rejected") {
    const JinXinModel model{Flux::burgers1d(), {1.0}, 0.5};
    const TrackerSpec bad{"ustar"};
    CHECK_THROWS(evolve(model, {SpectralField(g, 1), SpectralField(g, 1), 0.0}, cfg, std::span(&bad, 1)));
  }
  SUBCASE("summary json") {
    const JinXinModel model{Flux::burgers1d(), {1.0}, 0.5};
    cfg.t_end = 0.05;
    const auto traj = evolve(model, {random_field(g, 1, 2), SpectralField(g, 1), 0.0}, cfg, std::span(&u2, 1));
    const auto json = trajectory_summary_json(traj, std::span(&u2, 1), "abc", false);
    CHECK(json.find("\"config_hash\": \"abc\"") != std::string::npos);
    CHECK(json.find("wall_time") == std::string::npos);
    CHECK(json.find(u2.label()) != std::string::npos);
  }
}

TEST_CASE("co-evolution shares sampling instants") {
  const Grid g(1, 32, 2.0 * kPi);
  const JinXinModel model{Flux::burgers1d(), {1.0}, 0.2};
  auto u = random_field(g, 1, 9);
  u *= 0.1;
  StepperConfig cfg;
  cfg.t_end = 0.2;
  cfg.layer_factor = 0.5;
  cfg.layer_span = 5.0;
  const TrackerSpec du{"du", 0.0, 2.0, 1.0, relaxlab::spectral::Window::Kind::full};
  const auto traj = co_evolve(model, {u, relaxlab::models::darcy_velocity(model.flux, model.a, u), 0.0}, {u, 0.0}, cfg,
                              std::span(&du, 1));
  CHECK(traj.values(du).front() == 0.0);
  CHECK(traj.values(du).back() > 0.0);
  CHECK(traj.final_state->t == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(traj.final_limit->t == doctest::Approx(0.2).epsilon(1e-14));
}
