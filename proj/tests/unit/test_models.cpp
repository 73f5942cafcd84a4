#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/models/jinxin.hpp"

using namespace relaxlab::models;
using relaxlab::spectral::Grid;
using testing::max_diff;
using testing::random_field;
using testing::sample;

constexpr double kPi = std::numbers::pi;

TEST_CASE("built-in fluxes") {
  const auto b2 = Flux::burgers2d();
  const double u[] = {1.0, 2.0};
  const auto f = b2.evaluate(u);
  CHECK(f == std::vector<double>{1.0, 2.0, 2.0, 4.0});
  const double three[] = {3.0};
  CHECK(Flux::burgers1d().evaluate(three)[0] == 4.5);
  const auto z = Flux::zero(2, 2);
  CHECK(z.is_zero());
  CHECK(z.evaluate(u) == std::vector<double>(4, 0.0));
  CHECK_THROWS(make_builtin_flux("burgers2d", 1, 1));
  CHECK_THROWS(make_builtin_flux("euler", 1, 1));
  CHECK(make_builtin_flux("zero", 3, 2).components() == 3);
}

TEST_CASE("burgers2d Jacobian") {
  const auto b2 = Flux::burgers2d();
  const double u[] = {1.5, -0.5};
  std::vector<double> jac(8);
  b2.jacobian(u, jac);
  // f_1 = (u1^2, u1 u2), f_2 = (u2 u1, u2^2)
  const std::vector<double> expect{3.0, 0.0, -0.5, 1.5, -0.5, 1.5, 0.0, -1.0};
  for (int i = 0; i < 8; ++i) CHECK(jac[i] == doctest::Approx(expect[i]));
}

TEST_CASE("polynomial fluxes reject constant and linear parts") {
  CHECK_THROWS(Flux::polynomial(1, 1, {{0, 0, {1}, 2.0}}));
  CHECK_THROWS(Flux::polynomial(1, 1, {{0, 0, {0}, 2.0}}));
  CHECK_THROWS(Flux::polynomial(1, 1, {{1, 0, {2}, 2.0}}));
  const auto cubic = Flux::polynomial(1, 1, {{0, 0, {3}, 1.0 / 3.0}});
  const double u[] = {2.0};
  CHECK(cubic.evaluate(u)[0] == doctest::Approx(8.0 / 3.0));
  double j = 0;
  cubic.jacobian(u, std::span(&j, 1));
  CHECK(j == doctest::Approx(4.0));
}

TEST_CASE("flux field matches pointwise evaluation") {
  const Grid g(2, 16, 2.0 * kPi);
  const auto u = sample(g, 2, [](int c, auto x) { return c == 0 ? 0.3 * std::sin(x[0]) : 0.2 * std::cos(x[1]); });
  const auto f = flux_field(Flux::burgers2d(), u);
  const auto expect = sample(g, 4, [](int c, auto x) {
    const double u1 = 0.3 * std::sin(x[0]), u2 = 0.2 * std::cos(x[1]);
    const double v[] = {u1 * u1, u1 * u2, u2 * u1, u2 * u2};
    return v[c];
  });
  CHECK(max_diff(f, expect) < 1e-15);
  CHECK(max_characteristic_speed(Flux::burgers2d(), u) == doctest::Approx(0.6));
  CHECK_THROWS_AS(flux_field(Flux::burgers1d(), u), relaxlab::GridMismatch);
}

TEST_CASE("relaxation right-hand side") {
  const Grid g(1, 32, 2.0 * kPi);
  const JinXinModel model{Flux::burgers1d(), {1.5}, 0.3};
  SUBCASE("zero state") {
    const JinXinState s{SpectralField(g, 1), SpectralField(g, 1), 0.0};
    const auto r = jinxin_rhs(model, s);
    CHECK(r.du.max_abs() == 0.0);
    CHECK(r.dv.max_abs() == 0.0);
  }
  SUBCASE("homogeneous equilibrium") {
    const double c = 0.7;
    const auto u = sample(g, 1, [&](int, auto) { return c; });
    const auto v = sample(g, 1, [&](int, auto) { return 0.5 * c * c; });
    const auto r = jinxin_rhs(model, {u, v, 0.0});
    CHECK(r.du.max_abs() < 1e-16);
    CHECK(r.dv.max_abs() < 1e-14);
  }
  SUBCASE("random state against a physical-space oracle") {
    const auto u = sample(g, 1, [](int, auto x) { return 0.2 * std::sin(x[0]) + 0.1 * std::cos(3 * x[0]); });
    const auto v = sample(g, 1, [](int, auto x) { return 0.4 * std::cos(2 * x[0]); });
    const auto r = jinxin_rhs(model, {u, v, 0.0});
    const auto du = sample(g, 1, [](int, auto x) { return 0.8 * std::sin(2 * x[0]); });
    const double e2 = model.eps * model.eps;
    const auto dv = sample(g, 1, [&](int, auto x) {
      const double uu = 0.2 * std::sin(x[0]) + 0.1 * std::cos(3 * x[0]);
      const double ux = 0.2 * std::cos(x[0]) - 0.3 * std::sin(3 * x[0]);
      return (-1.5 * ux - 0.4 * std::cos(2 * x[0]) + 0.5 * uu * uu) / e2;
    });
    CHECK(max_diff(r.du, du) < 1e-14);
    CHECK(max_diff(r.dv, dv) < 1e-13);
  }
  SUBCASE("non-finite state is reported with its time") {
    auto u = sample(g, 1, [](int, auto) { return 0.0; });
    u.at(0, 1) = std::nan("");
    try {
      jinxin_rhs(model, {u, SpectralField(g, 1), 2.5});
      FAIL("expected DivergenceError");
    } catch (const relaxlab::DivergenceError& e) {
      CHECK(e.time() == 2.5);
    }
  }
}

TEST_CASE("limit right-hand side") {
  const double L = 4.0 * kPi, k = 2.0 * kPi / L * 3;
  const Grid g(2, 16, L);
  const double a[] = {1.0, 2.0};
  const auto u = sample(g, 1, [&](int, auto x) { return std::cos(k * x[1]); });
  const auto rate = limit_rhs(Flux::zero(1, 2), a, {u, 0.0});
  CHECK(max_diff(rate, (-2.0 * k * k) * u) < 1e-13);
  const auto c = sample(g, 2, [](int, auto) { return 0.25; });
  CHECK(limit_rhs(Flux::burgers2d(), a, {c, 0.0}).max_abs() < 1e-16);
}

TEST_CASE("Darcy velocity and effective unknowns") {
  const double L = 6.0, k = 2.0 * kPi / L;
  const Grid g(2, 16, L);
  const double a[] = {1.0, 3.0};
  SUBCASE("constant u*") {
    const auto u = sample(g, 2, [](int c, auto) { return c == 0 ? 0.5 : -1.0; });
    const auto v = darcy_velocity(Flux::burgers2d(), a, u);
    const auto expect = sample(g, 4, [](int c, auto) {
      const double f[] = {0.25, -0.5, -0.5, 1.0};
      return f[c];
    });
    CHECK(max_diff(v, expect) < 1e-15);
  }
  SUBCASE("zero flux, sine along each axis") {
    for (int i = 0; i < 2; ++i) {
      const auto u = sample(g, 1, [&](int, auto x) { return std::sin(k * x[i]); });
      const auto v = darcy_velocity(Flux::zero(1, 2), a, u);
      const auto expect = sample(g, 2, [&](int c, auto x) { return c == i ? -a[i] * k * std::cos(k * x[i]) : 0.0; });
      CHECK(max_diff(v, expect) < 1e-13);
    }
  }
  const JinXinModel model{Flux::burgers2d(), {1.0, 3.0}, 0.2};
  const auto u = random_field(g, 2, 1);
  SUBCASE("z vanishes for v = -a grad u") {
    auto v = scaled_gradient(u, a);
    v *= -1.0;
    CHECK(effective_z(model, {u, v, 0.0}).max_abs() < 1e-14);
  }
  SUBCASE("z = v when u = 0") {
    const auto v = random_field(g, 4, 2);
    CHECK(max_diff(effective_z(model, {SpectralField(g, 2), v, 0.0}), v) == 0.0);
  }
  SUBCASE("Z vanishes on Darcy data and equals z for a zero flux") {
    auto small = u;
    small *= 0.1;
    const auto v = darcy_velocity(model.flux, model.a, small);
    CHECK(effective_Z(model, {small, v, 0.0}).max_abs() < 1e-10);
    const JinXinModel linear{Flux::zero(2, 2), model.a, 0.2};
    const auto w = random_field(g, 4, 3);
    CHECK(max_diff(effective_Z(linear, {u, w, 0.0}), effective_z(linear, {u, w, 0.0})) == 0.0);
  }
  SUBCASE("Z against a componentwise oracle") {
    const auto v = random_field(g, 4, 4);
    auto expect = scaled_gradient(u, a);
    expect += v;
    expect -= flux_field(model.flux, u);
    CHECK(max_diff(effective_Z(model, {u, v, 0.0}), expect) < 1e-15);
  }
}

TEST_CASE("divergence of stacked blocks") {
  const double L = 2.0 * kPi;
  const Grid g(2, 16, L);
  const auto w = sample(g, 2, [](int c, auto x) { return c == 0 ? std::sin(x[0]) : std::sin(2 * x[1]); });
  const auto expect = sample(g, 1, [](int, auto x) { return std::cos(x[0]) + 2 * std::cos(2 * x[1]); });
  CHECK(max_diff(divergence(w, 1), expect) < 1e-14);
  CHECK_THROWS_AS(divergence(w, 2), relaxlab::GridMismatch);
}

TEST_CASE("model validation") {
  JinXinModel m{Flux::burgers1d(), {1.0}, 0.5};
  CHECK_NOTHROW(m.validate());
  m.a = {-1.0};
  CHECK_THROWS(m.validate());
  m.a = {1.0, 1.0};
  CHECK_THROWS(m.validate());
  m.a = {1.0};
  m.eps = 0.0;
  CHECK_THROWS(m.validate());
}
