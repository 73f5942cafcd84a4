#include <doctest.h>

#include <cmath>
#include <sstream>

#include "relaxlab/analysis/linear_theory.hpp"

using namespace relaxlab::analysis;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("eigenvalues in closed form") {
  SUBCASE("xi = 0 carries the conserved mode") {
    const double xi[] = {0.0}, a[] = {1.0};
    const auto s = eigenvalues(xi, 1.0, a);
    REQUIRE(s.eigenvalues.size() == 2);
    CHECK(std::abs(s.eigenvalues[0]) < 1e-15);
    CHECK(std::abs(s.eigenvalues[1] - Complex(-1.0)) < 1e-15);
  }
  SUBCASE("defective point has the double root -1/2") {
    const double xi[] = {0.5}, a[] = {1.0};
    const auto s = eigenvalues(xi, 1.0, a);
    for (const auto& l : s.eigenvalues) CHECK(std::abs(l - Complex(-0.5)) < 1e-12);
  }
  SUBCASE("d = 2, xi = (1, 1)") {
    const double xi[] = {1.0, 1.0}, a[] = {1.0, 1.0};
    const auto s = eigenvalues(xi, 1.0, a);
    REQUIRE(s.eigenvalues.size() == 3);
    CHECK(s.S == doctest::Approx(2.0));
    CHECK(std::abs(s.eigenvalues[0] - Complex(-1.0)) < 1e-14);
    const Complex root(-0.5, std::sqrt(7.0) / 2.0);
    const bool pair = std::abs(s.eigenvalues[1] - root) < 1e-14 && std::abs(s.eigenvalues[2] - std::conj(root)) < 1e-14;
    const bool swapped = std::abs(s.eigenvalues[2] - root) < 1e-14 && std::abs(s.eigenvalues[1] - std::conj(root)) < 1e-14;
    CHECK((pair || swapped));
  }
  SUBCASE("characteristic polynomial residual") {
    const double xi[] = {0.7, -1.3}, a[] = {0.5, 2.0};
    const double eps = 0.3;
    const auto s = eigenvalues(xi, eps, a);
    const auto A = linear_symbol(xi, eps, a);
    const double scale = 1.0 + std::pow(A.cwiseAbs().rowwise().sum().maxCoeff(), 3.0);
    for (const auto& l : s.eigenvalues) {
      const Eigen::MatrixXcd M = A - l * Eigen::MatrixXcd::Identity(3, 3);
      CHECK(std::abs(M.determinant()) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("overdamping rate") {
  CHECK(decay_rate_omega(1.0, 0.5) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(decay_rate_omega(1.0, 1e-4) - 1.0) <= 1e-6);
  CHECK(decay_rate_omega(1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(decay_rate_omega(0.0, 0.3) == 0.0);
  const double xi[] = {1.0, 0.0}, a[] = {1.0, 3.0};
  CHECK(decay_rate_omega(xi, 0.5, a) == doctest::Approx(2.0));

  SUBCASE("shape: rises to 2S at 1/eps = 2 sqrt(S), then falls") {
    const double S = 2.5, peak = 2.0 * std::sqrt(S);
    std::vector<double> inv;
    for (int i = 0; i < 100; ++i) inv.push_back(peak * std::pow(2.0, (i - 40) / 15.0));
    const auto curve = overdamping_curve(S, inv);
    double best = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i) {
      if (curve[i].inv_eps <= peak) CHECK(curve[i].omega >= curve[i - 1].omega);
      if (curve[i - 1].inv_eps >= peak) CHECK(curve[i].omega <= curve[i - 1].omega);
      best = std::max(best, curve[i].omega);
    }
    CHECK(best <= 2.0 * S * (1.0 + 1e-14));
    CHECK(decay_rate_omega(S, 1.0 / peak) == doctest::Approx(2.0 * S));
  }
}

TEST_CASE("threshold J uses base 2 and floor") {
  CHECK(threshold_J(0.125) == 3);
  CHECK(threshold_J(1.0, 2) == 2);
  CHECK(threshold_J(0.1) == 4);
  CHECK(threshold_J(0.5) == 1);
  CHECK(threshold_J(2.0) == -1);
  for (double eps : {0.3, 0.07, 0.0123}) {
    const double p = std::ldexp(1.0, threshold_J(eps));
    CHECK(p >= 1.0 / eps);
    CHECK(p < 2.0 / eps);
  }
}

TEST_CASE("regime labels") {
  const double a[] = {1.0};
  const double low[] = {0.1}, high[] = {10.0}, edge[] = {0.5};
  CHECK(classify_regime(low, 1.0, a).regime == Regime::low);
  CHECK(classify_regime(high, 1.0, a).regime == Regime::high);
  CHECK(classify_regime(edge, 1.0, a).regime == Regime::transitional);
  const auto s = eigenvalues(high, 1.0, a);
  CHECK(s.eigenvalues[0].real() == doctest::Approx(-0.5));
  CHECK(s.eigenvalues[1].real() == doctest::Approx(-0.5));
  CHECK(classify_regime(low, 1.0, a).discriminant == doctest::Approx(0.96));
  CHECK(regime_name(Regime::transitional) == "transitional");
}

TEST_CASE("exact propagator") {
  const double a[] = {1.0};
  SUBCASE("identity at t = 0") {
    const double xi[] = {2.3};
    const auto P = exact_linear_propagator(xi, 0.4, a, 0.0);
    CHECK(max_abs(P - Eigen::MatrixXcd::Identity(2, 2)) < 1e-15);
  }
  SUBCASE("decoupled damping at xi = 0") {
    const double xi[] = {0.0, 0.0}, a2[] = {1.0, 2.0};
    const double eps = 0.5, t = 0.3;
    const auto P = exact_linear_propagator(xi, eps, a2, t);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(3, 3);
    expect(0, 0) = 1.0;
    expect(1, 1) = expect(2, 2) = std::exp(-t / (eps * eps));
    CHECK(max_abs(P - expect) < 1e-15);
  }
  SUBCASE("semigroup across the defective point") {
    for (double x : {0.5, 0.5 + 1e-9, 0.5 - 1e-6, 3.0}) {
      const double xi[] = {x};
      const Eigen::MatrixXcd P = exact_linear_propagator(xi, 1.0, a, 0.7) * exact_linear_propagator(xi, 1.0, a, 1.1);
      const auto Q = exact_linear_propagator(xi, 1.0, a, 1.8);
      CHECK(max_abs(P - Q) <= 1e-9 * max_abs(Q));
    }
  }
  SUBCASE("RK4 on dw/dt = A w at xi = 1") {
    const double xi[] = {1.0};
    const auto A = linear_symbol(xi, 1.0, a);
    Eigen::MatrixXcd W = Eigen::MatrixXcd::Identity(2, 2);
    const double h = 1e-4;
    for (int n = 0; n < 10000; ++n) {
      const Eigen::MatrixXcd k1 = A * W;
      const Eigen::MatrixXcd k2 = A * (W + 0.5 * h * k1);
      const Eigen::MatrixXcd k3 = A * (W + 0.5 * h * k2);
      const Eigen::MatrixXcd k4 = A * (W + h * k3);
      W += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    CHECK(max_abs(W - exact_linear_propagator(xi, 1.0, a, 1.0)) <= 1e-8);
  }
  SUBCASE("decay of the propagator norm follows omega") {
    const double xi[] = {0.3};
    const double eps = 0.8, omega = decay_rate_omega(xi, eps, a);
    const double t0 = 50.0 / omega, t1 = 100.0 / omega;
    const double n0 = exact_linear_propagator(xi, eps, a, t0).norm();
    const double n1 = exact_linear_propagator(xi, eps, a, t1).norm();
    CHECK(-std::log(n1 / n0) / (t1 - t0) == doctest::Approx(omega).epsilon(0.02));
  }
}

TEST_CASE("overdamping CSV") {
  const double inv[] = {1.0, 2.0};
  const auto curve = overdamping_curve(1.0, inv);
  std::ostringstream out;
  write_overdamping_csv(out, curve);
  CHECK(out.str().rfind("inv_eps,omega,regime\n", 0) == 0);
  CHECK(out.str().find("2,2,transitional") != std::string::npos);
}
