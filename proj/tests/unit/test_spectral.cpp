#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "helpers.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/spectral/dyadic.hpp"
#include "relaxlab/spectral/io.hpp"
#include "relaxlab/spectral/norm_series.hpp"

using namespace relaxlab::spectral;
using testing::max_diff;
using testing::random_field;
using testing::sample;

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("grid validates its shape") {
  CHECK_THROWS_AS(Grid(1, 12, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(1, 16, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid(4, 16, 1.0), std::invalid_argument);
  const Grid g(2, 16, 4.0 * kPi);
  CHECK(g.size() == 256);
  CHECK(g.kappa_fundamental() == doctest::Approx(0.5));
  CHECK(g.kappa_nyquist() == doctest::Approx(4.0));
  const int modes[] = {-3, 5};
  const auto flat = g.flat_index(modes);
  CHECK(g.mode_of(flat, 0) == -3);
  CHECK(g.mode_of(flat, 1) == 5);
  CHECK(g.kappa(0)[flat] == doctest::Approx(-1.5));
  CHECK(g.kappa(1)[flat] == doctest::Approx(2.5));
}

TEST_CASE("transforms round-trip real fields") {
  const Grid g(2, 16, 3.0);
  const auto f = random_field(g, 3, 11);
  const auto back = from_physical(g, 3, to_physical(f));
  CHECK(max_diff(f, back) < 1e-15);
  CHECK(f.hermitian_defect() < 1e-15);
}

TEST_CASE("derivative of a sine is the scaled cosine") {
  const double L = 10.0, k = 2.0 * kPi / L;
  const Grid g(1, 32, L);
  const auto u = sample(g, 1, [&](int, auto x) { return std::sin(k * x[0]); });
  const auto expect = sample(g, 1, [&](int, auto x) { return k * std::cos(k * x[0]); });
  CHECK(max_diff(derivative(u, 0), expect) < 1e-12);
  const auto c = sample(g, 1, [](int, auto) { return 3.0; });
  CHECK(derivative(c, 0).max_abs() == 0.0);
  CHECK_THROWS_AS(derivative(u, 1), relaxlab::RangeError);
}

TEST_CASE("nonlinear product") {
  const Grid g(1, 32, 2.0 * kPi);
  const auto b = random_field(g, 1, 5);
  const auto one = sample(g, 1, [](int, auto) { return 1.0; });
  CHECK(max_diff(nonlinear_product(one, b), b) < 1e-14);

  SUBCASE("sum mode inside the mask survives") {
    const auto a = sample(g, 1, [](int, auto x) { return std::cos(4 * x[0]); });
    const auto c = sample(g, 1, [](int, auto x) { return std::cos(5 * x[0]); });
    const auto expect = sample(g, 1, [](int, auto x) { return 0.5 * (std::cos(9 * x[0]) + std::cos(x[0])); });
    CHECK(max_diff(nonlinear_product(a, c), expect) < 1e-14);
  }
  SUBCASE("sum mode outside the mask is removed") {
    const auto a = sample(g, 1, [](int, auto x) { return std::cos(6 * x[0]); });
    const auto c = sample(g, 1, [](int, auto x) { return std::cos(7 * x[0]); });
    const auto expect = sample(g, 1, [](int, auto x) { return 0.5 * std::cos(x[0]); });
    CHECK(max_diff(nonlinear_product(a, c), expect) < 1e-14);
  }
  SUBCASE("L2 of a product is bounded by sup times L2") {
    const auto a = random_field(g, 1, 6);
    const auto p = nonlinear_product(a, b);
    CHECK(lp_norm(p, 2.0) <= lp_norm(a, kInf) * lp_norm(b, 2.0) * (1.0 + 1e-12));
  }
}

TEST_CASE("dealias zeroes modes beyond N/3") {
  const Grid g(2, 16, 1.0);
  SpectralField f(g, 1);
  for (auto& c : f.coeffs()) c = 1.0;
  dealias(f);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const bool keep = std::abs(g.mode_of(k, 0)) <= 5 && std::abs(g.mode_of(k, 1)) <= 5;
    CHECK(std::abs(f.at(0, k)) == (keep ? 1.0 : 0.0));
  }
}

TEST_CASE("lp norms by quadrature") {
  const double L = 2.0 * kPi;
  const Grid g(1, 64, L);
  const auto u = sample(g, 1, [](int, auto x) { return std::sin(x[0]); });
  CHECK(lp_norm(u, 2.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(lp_norm(u, kInf) == doctest::Approx(1.0).epsilon(1e-13));
  // rectangle rule on |sin|: (2 pi / N) * 2 cot(pi / N)
  CHECK(lp_norm(u, 1.0) == doctest::Approx(4.0 * kPi / 64 / std::tan(kPi / 64)).epsilon(1e-13));
  CHECK_THROWS(lp_norm(u, 0.5));
}

TEST_CASE("chi and phi profiles") {
  CHECK(chi_profile(0.0) == 1.0);
  CHECK(chi_profile(0.75) == 1.0);
  CHECK(chi_profile(4.0 / 3.0) == 0.0);
  double prev = 1.0;
  for (double r = 0.0; r < 2.0; r += 0.01) {
    CHECK(chi_profile(r) <= prev);
    prev = chi_profile(r);
  }
  CHECK(phi_profile(0.7) == 0.0);
  CHECK(phi_profile(2.7) == 0.0);
  CHECK(phi_profile(1.4) == 1.0);
}

TEST_CASE("dyadic blocks") {
  const Grid g(1, 64, 2.0 * kPi);
  const auto& scheme = DyadicScheme::for_grid(g);
  // |kappa| = 6 sits where phi(2^-2 .) = 1 and phi(2^-5 .) = 0
  const auto f = sample(g, 1, [](int, auto x) { return std::cos(6 * x[0]); });
  CHECK(max_diff(dyadic_block(f, 2), f) < 1e-12);
  CHECK(dyadic_block(f, 5).max_abs() < 1e-12);
  CHECK_THROWS_AS(dyadic_block(f, scheme.j_max() + 1), relaxlab::RangeError);
  CHECK_THROWS_AS(dyadic_block(f, scheme.j_min() - 1), relaxlab::RangeError);

  SUBCASE("blocks plus base reconstruct the field") {
    const auto r = random_field(g, 2, 3);
    auto sum = base_block(r);
    for (int j = scheme.j_min(); j <= scheme.j_max(); ++j) sum += dyadic_block(r, j);
    CHECK(max_diff(sum, r) <= 1e-12 * r.max_abs());
  }
  SUBCASE("partition of unity on every lattice point") {
    for (std::size_t k = 0; k < g.size(); ++k) {
      double s = scheme.base_multiplier()[k];
      for (int j = scheme.j_min(); j <= scheme.j_max(); ++j) s += scheme.multiplier(j)[k];
      CHECK(std::abs(s - 1.0) <= 1e-12);
    }
  }
  SUBCASE("blocks two apart are disjoint") {
    const auto r = random_field(g, 1, 4);
    for (int j = scheme.j_min(); j + 2 <= scheme.j_max(); ++j)
      CHECK(dyadic_block(dyadic_block(r, j), j + 2).max_abs() <= 1e-12 * r.max_abs());
  }
  SUBCASE("low cutoff") {
    const auto r = random_field(g, 1, 8);
    CHECK(max_diff(lowfreq_cutoff(r, scheme.j_max() + 1), r) < 1e-15);
    for (int J = scheme.j_min(); J <= scheme.j_max(); ++J) {
      auto sum = lowfreq_cutoff(r, J);
      for (int j = J; j <= scheme.j_max(); ++j) sum += dyadic_block(r, j);
      CHECK(max_diff(sum, r) < 1e-12);
    }
    // band-limited above 2^{J+1}: kappa = 20 against J = 2
    const auto high = sample(g, 1, [](int, auto x) { return std::sin(20 * x[0]); });
    CHECK(lowfreq_cutoff(high, 2).max_abs() < 1e-12);
  }
}

TEST_CASE("Bernstein bounds on random blocks") {
  const Grid g(2, 32, 2.0 * kPi);
  const auto& scheme = DyadicScheme::for_grid(g);
  const auto r = random_field(g, 1, 21);
  for (int j = scheme.j_min() + 1; j <= scheme.j_max(); ++j) {
    const auto b = dyadic_block(r, j);
    for (double p : {2.0, kInf}) {
      const double ratio = lp_norm(derivative(b, 0), p) / (std::ldexp(1.0, j) * lp_norm(b, p));
      CHECK(ratio >= 0.25);
      CHECK(ratio <= 4.0);
    }
  }
}

TEST_CASE("Besov norms") {
  const Grid g(1, 64, 2.0 * kPi);
  const auto f = sample(g, 1, [](int, auto x) { return std::cos(6 * x[0]); });
  const double m = lp_norm(f, 2.0);
  for (double s : {-0.5, 0.0, 1.0})
    for (double r : {1.0, 2.0, kInf}) CHECK(besov_norm(f, s, 2.0, r).value == doctest::Approx(std::pow(4.0, s) * m));

  const auto r = random_field(g, 1, 2);
  const double ratio = besov_norm(r, 0.0, 2.0, 2.0) / lp_norm(r, 2.0);
  CHECK(ratio >= 0.7);
  CHECK(ratio <= 1.0);
  CHECK(besov_norm(-3.0 * r, 0.5, 2.0, 1.0).value == doctest::Approx(3.0 * besov_norm(r, 0.5, 2.0, 1.0)).epsilon(1e-12));

  SUBCASE("the mean is excluded") {
    auto shifted = r;
    shifted.at(0, 0) = 5.0;
    CHECK(besov_norm(shifted, 0.0, 2.0, 1.0).value == doctest::Approx(besov_norm(r, 0.0, 2.0, 1.0).value));
  }
  SUBCASE("windows overlap on J - 1 and J") {
    const int J = 3;
    const auto& s = DyadicScheme::for_grid(g);
    const auto blocks = block_norms(r, 2.0);
    double low = 0, high = 0, full = 0;
    for (int j = s.j_min(); j <= s.j_max(); ++j) {
      const double v = blocks[j - s.j_min()];
      full += v;
      if (j <= J) low += v;
      if (j >= J - 1) high += v;
    }
    CHECK(besov_norm(r, 0.0, 2.0, 1.0, Window::low(J)).value == doctest::Approx(low));
    CHECK(besov_norm(r, 0.0, 2.0, 1.0, Window::high(J)).value == doctest::Approx(high));
    CHECK(besov_norm(r, 0.0, 2.0, 1.0).value == doctest::Approx(full));
    const auto empty = besov_norm(r, 0.0, 2.0, 1.0, Window::low(s.j_min() - 5));
    CHECK(empty.empty_window);
    CHECK(empty.value == 0.0);
  }
  SUBCASE("block norms for p = inf transform each block") {
    const auto& s = DyadicScheme::for_grid(g);
    const auto blocks = block_norms(r, kInf);
    for (int j = s.j_min(); j <= s.j_max(); ++j)
      CHECK(blocks[j - s.j_min()] == doctest::Approx(lp_norm(dyadic_block(r, j), kInf)).epsilon(1e-12));
  }
}

TEST_CASE("norm series and Chemin-Lerner norms") {
  NormSeries series(0, 2, 2.0);
  CHECK_THROWS(series.append(0.0, {1.0, 2.0}));
  CHECK_THROWS(series.append(0.0, {1.0, -2.0, 0.0}));
  series.append(0.0, {0.0, 3.0, 0.0});
  CHECK_THROWS(series.append(0.0, {0.0, 3.0, 0.0}));
  CHECK_THROWS(chemin_lerner_norm(series, 1.0, 0.0, 1.0));
  series.append(1.0, {0.0, 3.0, 0.0});
  CHECK(chemin_lerner_norm(series, kInf, 1.0, 1.0).value == doctest::Approx(6.0));
  CHECK(chemin_lerner_norm(series, kInf, 1.0, 1.0).value == doctest::Approx(series.besov_at(1, 1.0, 1.0, Window::full()).value));

  SUBCASE("exponential single block integrates to 1 - e^-T") {
    NormSeries e(1, 1, 2.0);
    const double T = 20.0;
    const int n = 4000;
    for (int i = 0; i <= n; ++i) {
      const double t = T * i / n;
      e.append(t, {std::exp(-t)});
    }
    const double expect = 2.0 * (1.0 - std::exp(-T));
    CHECK(chemin_lerner_norm(e, 1.0, 1.0, 1.0).value == doctest::Approx(expect).epsilon(1e-5));
    CHECK(lebesgue_besov_norm(e, 1.0, 1.0, 1.0) == doctest::Approx(expect).epsilon(1e-5));
  }
  SUBCASE("Chemin-Lerner dominates Lebesgue-Besov for rho = inf, r = 1") {
    NormSeries t(0, 1, 2.0);
    t.append(0.0, {1.0, 0.0});
    t.append(1.0, {0.0, 1.0});
    CHECK(chemin_lerner_norm(t, kInf, 0.0, 1.0).value == doctest::Approx(2.0));
    CHECK(lebesgue_besov_norm(t, kInf, 0.0, 1.0) == doctest::Approx(1.0));
  }
}

TEST_CASE("field container round-trips") {
  const Grid g(2, 8, 3.5);
  const auto f = random_field(g, 2, 9);
  std::stringstream buf;
  write_field(buf, f);
  const auto back = read_field(buf);
  CHECK(back.grid() == g);
  CHECK(back.components() == 2);
  CHECK(max_diff(back, f) == 0.0);
  std::stringstream bad("XXXX");
  CHECK_THROWS(read_field(bad));

  std::ostringstream csv;
  const double blocks[] = {1.0, 0.5};
  write_block_norms_csv(csv, blocks, -1);
  CHECK(csv.str().rfind("j,two_pow_j_physical,norm\n-1,0.5,1\n", 0) == 0);
}

TEST_CASE("field arithmetic checks compatibility") {
  const Grid a(1, 16, 1.0), b(1, 16, 2.0);
  SpectralField x(a, 1), y(b, 1), z(a, 2);
  CHECK_THROWS_AS(x += y, relaxlab::GridMismatch);
  CHECK_THROWS_AS(x += z, relaxlab::GridMismatch);
  CHECK_THROWS(SpectralField(a, 0));
}
