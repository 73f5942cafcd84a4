#include "relaxlab/harness/oracles.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>

#include "relaxlab/analysis/linear_theory.hpp"
#include "relaxlab/harness/initial_data.hpp"
#include "relaxlab/harness/rate_fit.hpp"
#include "relaxlab/integrators/evolve.hpp"
#include "relaxlab/spectral/dyadic.hpp"
#include "relaxlab/spectral/ops.hpp"
#include "relaxlab/spectral/transform.hpp"

namespace relaxlab::harness {

using spectral::Complex;
using spectral::Grid;
using spectral::SpectralField;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

/// Random Hermitian field with modes |k_axis| <= kmax.
SpectralField random_field(const Grid& grid, int components, int kmax, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  SpectralField u(grid, components);
  for (int c = 0; c < components; ++c)
    for (std::size_t k = 0; k < grid.size(); ++k) {
      bool inside = true;
      for (int i = 0; i < grid.dim(); ++i) inside = inside && std::abs(grid.mode_of(k, i)) <= kmax;
      if (inside) u.at(c, k) = {normal(rng), normal(rng)};
    }
  u.symmetrize();
  return u;
}

/// Sup norm on a grid refined by `factor` per axis (zero padding).
double oversampled_sup(const SpectralField& u, int factor) {
  const Grid& g = u.grid();
  const Grid fine(g.dim(), g.points_per_axis() * factor, g.length());
  SpectralField f(fine, u.components());
  std::vector<int> modes(g.dim());
  for (std::size_t k = 0; k < g.size(); ++k) {
    bool nyquist = false;
    for (int i = 0; i < g.dim(); ++i) {
      modes[i] = g.mode_of(k, i);
      nyquist = nyquist || modes[i] == -g.points_per_axis() / 2;
    }
    if (nyquist) continue;
    const std::size_t fk = fine.flat_index(modes);
    for (int c = 0; c < u.components(); ++c) f.at(c, fk) = u.at(c, k);
  }
  return spectral::lp_norm(f, kInf);
}

SpectralField gradient(const SpectralField& u) {
  std::vector<SpectralField> parts;
  for (int i = 0; i < u.grid().dim(); ++i) parts.push_back(spectral::derivative(u, i));
  return SpectralField::stack(parts);
}

/// Dense DFT of the physical samples, Fourier-series normalization.
double dense_transform_defect(const SpectralField& u) {
  const Grid& g = u.grid();
  const auto phys = spectral::to_physical(u);
  double worst = 0.0, scale = u.max_abs();
  for (std::size_t k = 0; k < g.size(); ++k) {
    Complex acc{};
    for (std::size_t x = 0; x < g.size(); ++x) {
      double phase = 0.0;
      for (int i = 0; i < g.dim(); ++i) phase += g.kappa(i)[k] * spectral::coordinate(g, x, i);
      acc += phys[x] * std::polar(1.0, -phase);
    }
    acc /= static_cast<double>(g.size());
    worst = std::max(worst, std::abs(acc - u.at(0, k)));
  }
  return worst / scale;
}

/// The linear symbol, assembled here independently of the analysis module.
Eigen::MatrixXcd symbol_matrix(const std::vector<double>& xi, double eps, const std::vector<double>& a) {
  const int d = static_cast<int>(xi.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  for (int i = 0; i < d; ++i) {
    m(0, 1 + i) = Complex(0.0, -xi[i] / eps);
    m(1 + i, 0) = Complex(0.0, -a[i] * xi[i] / eps);
    m(1 + i, 1 + i) = -1.0 / (eps * eps);
  }
  return m;
}

Eigen::MatrixXcd rk4_exponential(const Eigen::MatrixXcd& A, double t, double h) {
  const int steps = static_cast<int>(std::llround(t / h));
  h = t / steps;
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Identity(A.rows(), A.cols());
  for (int s = 0; s < steps; ++s) {
    const Eigen::MatrixXcd k1 = A * w;
    const Eigen::MatrixXcd k2 = A * (w + 0.5 * h * k1);
    const Eigen::MatrixXcd k3 = A * (w + 0.5 * h * k2);
    const Eigen::MatrixXcd k4 = A * (w + h * k3);
    w += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return w;
}

double inf_norm(const Eigen::MatrixXcd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

double relative(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(b.cwiseAbs().maxCoeff(), 1e-300);
}

/// State (u, eps v) advanced by the exact propagator mode by mode.
models::JinXinState exact_linear_solution(const models::JinXinState& s, double eps, const std::vector<double>& a,
                                          double t) {
  const Grid& g = s.u.grid();
  const int d = g.dim();
  models::JinXinState out = s;
  std::vector<double> xi(d);
  for (std::size_t k = 0; k < g.size(); ++k) {
    for (int i = 0; i < d; ++i) xi[i] = g.kappa(i)[k];
    const auto P = analysis::exact_linear_propagator(xi, eps, a, t);
    Eigen::VectorXcd w(d + 1);
    w(0) = s.u.at(0, k);
    for (int i = 0; i < d; ++i) w(1 + i) = eps * s.v.at(i, k);
    const Eigen::VectorXcd r = P * w;
    out.u.at(0, k) = r(0);
    for (int i = 0; i < d; ++i) out.v.at(i, k) = r(1 + i) / eps;
  }
  out.t = s.t + t;
  return out;
}

double scaled_error(const models::JinXinState& a, const models::JinXinState& b, double eps) {
  auto du = a.u - b.u;
  auto dv = a.v - b.v;
  dv *= eps;
  const SpectralField parts[] = {du, dv};
  return spectral::lp_norm(SpectralField::stack(parts), 2.0);
}

std::pair<double, double> order_of(const std::vector<double>& dt, const std::vector<double>& err) {
  double mx = 0, my = 0;
  const std::size_t n = dt.size();
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(dt[i]);
    my += std::log(err[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (std::log(dt[i]) - mx) * (std::log(dt[i]) - mx);
    sxy += (std::log(dt[i]) - mx) * (std::log(err[i]) - my);
  }
  double pair = kInf;
  for (std::size_t i = 0; i + 1 < n; ++i) pair = std::min(pair, std::log(err[i] / err[i + 1]) / std::log(dt[i] / dt[i + 1]));
  return {sxy / sxx, pair};
}

}  // namespace

SpectralSelftest spectral_selftest(int N, int d, int fields, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  SpectralSelftest out;
  out.fields = fields;
  const Grid grid(d, N, 2.0 * kPi);
  const auto& scheme = spectral::DyadicScheme::for_grid(grid);

  for (std::size_t k = 0; k < grid.size(); ++k) {
    double sum = scheme.base_multiplier()[k];
    for (int j = scheme.j_min(); j <= scheme.j_max(); ++j) sum += scheme.multiplier(j)[k];
    out.partition_defect = std::max(out.partition_defect, std::abs(sum - 1.0));
    for (int j = scheme.j_min(); j <= scheme.j_max(); ++j)
      for (int l = j + 2; l <= scheme.j_max(); ++l)
        out.disjointness_defect =
            std::max(out.disjointness_defect, scheme.multiplier(j)[k] * scheme.multiplier(l)[k]);
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> band(2, N / 3);
  out.bernstein2_min = out.bernstein_inf_min = kInf;
  const int oversample = d == 1 ? 8 : 4;
  for (int f = 0; f < fields; ++f) {
    const auto u = random_field(grid, 1, band(rng), rng);
    const double scale = u.max_abs();
    auto rebuilt = spectral::base_block(u);
    for (int j = scheme.j_min(); j <= scheme.j_max(); ++j) {
      const auto block = spectral::dyadic_block(u, j);
      rebuilt += block;
      const double n2 = spectral::lp_norm(block, 2.0);
      if (n2 <= 1e-10 * spectral::lp_norm(u, 2.0)) continue;
      const auto grad = gradient(block);
      const double r2 = spectral::lp_norm(grad, 2.0) / (std::ldexp(1.0, j) * n2);
      out.bernstein2_min = std::min(out.bernstein2_min, r2);
      out.bernstein2_max = std::max(out.bernstein2_max, r2);
      const double rinf = oversampled_sup(grad, oversample) / (std::ldexp(1.0, j) * oversampled_sup(block, oversample));
      out.bernstein_inf_min = std::min(out.bernstein_inf_min, rinf);
      out.bernstein_inf_max = std::max(out.bernstein_inf_max, rinf);
      out.hermitian_defect = std::max(out.hermitian_defect, block.hermitian_defect() / scale);
      out.hermitian_defect = std::max(out.hermitian_defect, grad.hermitian_defect() / scale / std::ldexp(1.0, j + 2));
    }
    rebuilt -= u;
    out.reconstruction_defect = std::max(out.reconstruction_defect, rebuilt.max_abs() / scale);
    const auto prod = spectral::nonlinear_product(u, u);
    out.hermitian_defect = std::max(out.hermitian_defect, prod.hermitian_defect() / (scale * scale * grid.size()));
    const auto low = spectral::lowfreq_cutoff(u, scheme.j_min() + scheme.block_count() / 2);
    out.hermitian_defect = std::max(out.hermitian_defect, low.hermitian_defect() / scale);
    if (f < 3 && grid.size() <= 4096) out.transform_defect = std::max(out.transform_defect, dense_transform_defect(u));
  }
  out.seconds = seconds_since(start);
  return out;
}

PropagatorOracle propagator_oracle(int samples, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  PropagatorOracle out;
  out.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int s = 0; s < samples; ++s) {
    const int d = 1 + s % 3;
    std::vector<double> xi(d), a(d);
    for (int i = 0; i < d; ++i) {
      xi[i] = -10.0 + 20.0 * uni(rng);
      a[i] = 0.2 + 4.8 * uni(rng);
    }
    const double eps = std::pow(10.0, -2.0 + 2.5 * uni(rng));
    const auto A = symbol_matrix(xi, eps, a);
    const auto spec = analysis::eigenvalues(xi, eps, a);
    const double normA = inf_norm(A);
    for (const auto& lambda : spec.eigenvalues) {
      const Eigen::MatrixXcd shifted = A - lambda * Eigen::MatrixXcd::Identity(d + 1, d + 1);
      const double det = std::abs(shifted.partialPivLu().determinant());
      out.charpoly_residual = std::max(out.charpoly_residual, det / (1.0 + std::pow(normA, d + 1)));
    }
    const Complex l1 = spec.eigenvalues[d - 1], l2 = spec.eigenvalues[d];
    const double inv_e2 = 1.0 / (eps * eps);
    out.vieta_defect = std::max(out.vieta_defect, std::abs(l1 + l2 + inv_e2) / inv_e2);
    if (spec.S > 0.0) out.vieta_defect = std::max(out.vieta_defect, std::abs(l1 * l2 - spec.S * inv_e2) / (spec.S * inv_e2));

    const double t1 = uni(rng), t2 = uni(rng);
    const auto P1 = analysis::exact_linear_propagator(xi, eps, a, t1);
    const auto P2 = analysis::exact_linear_propagator(xi, eps, a, t2);
    const auto P12 = analysis::exact_linear_propagator(xi, eps, a, t1 + t2);
    out.semigroup_defect = std::max(out.semigroup_defect, relative(P1 * P2, P12));

    if (s % 10 == 0) {
      // mildly stiff sample for the dense ODE comparison
      std::vector<double> xs(d), as(d);
      for (int i = 0; i < d; ++i) {
        xs[i] = -3.0 + 6.0 * uni(rng);
        as[i] = 0.5 + 1.5 * uni(rng);
      }
      const double es = 0.3 + 1.7 * uni(rng);
      const auto ref = rk4_exponential(symbol_matrix(xs, es, as), 1.0, 1e-3);
      out.rk4_random_defect = std::max(out.rk4_random_defect, relative(analysis::exact_linear_propagator(xs, es, as, 1.0), ref));
    }
  }
  {
    const std::vector<double> xi{0.5}, a{1.0};
    for (auto [t1, t2] : {std::pair{0.7, 1.9}, {0.01, 3.3}, {2.5, 2.5}, {1e-4, 0.3}}) {
      const Eigen::MatrixXcd P = analysis::exact_linear_propagator(xi, 1.0, a, t1) * analysis::exact_linear_propagator(xi, 1.0, a, t2);
      out.defective_semigroup_defect =
          std::max(out.defective_semigroup_defect, relative(P, analysis::exact_linear_propagator(xi, 1.0, a, t1 + t2)));
    }
  }
  {
    const std::vector<double> xi{1.0}, a{1.0};
    const auto ref = rk4_exponential(symbol_matrix(xi, 1.0, a), 1.0, 1e-4);
    out.rk4_defect = (analysis::exact_linear_propagator(xi, 1.0, a, 1.0) - ref).cwiseAbs().maxCoeff();
  }
  out.seconds = seconds_since(start);
  return out;
}

OrderStudy imex_order_study(double eps, const std::string& scheme) {
  const Grid grid(1, 8, 2.0 * kPi);
  const std::vector<double> a{1.0};
  models::JinXinModel model{models::Flux::zero(1, 1), a, eps};
  models::JinXinState init{SpectralField(grid, 1), SpectralField(grid, 1), 0.0};
  // u = cos x, Darcy velocity v = -u_x = sin x
  const std::size_t k1 = 1, km = grid.size() - 1;
  init.u.at(0, k1) = init.u.at(0, km) = 0.5;
  init.v.at(0, k1) = Complex(0.0, -0.5);
  init.v.at(0, km) = Complex(0.0, 0.5);
  const auto exact = exact_linear_solution(init, eps, a, 1.0);

  integrators::StepperConfig cfg;
  cfg.scheme = integrators::parse_scheme(scheme);
  cfg.cfl = 1.0;
  OrderStudy out;
  for (int m = 6; m <= 10; ++m) {
    const auto [n, dt] = integrators::step_plan(1.0, std::ldexp(eps, -m));
    auto s = init;
    for (std::size_t i = 0; i < n; ++i) s = integrators::step_jinxin(model, s, dt, cfg);
    out.dt.push_back(dt);
    out.error.push_back(scaled_error(s, exact, eps));
  }
  std::tie(out.order, out.min_pair_order) = order_of(out.dt, out.error);
  return out;
}

OrderStudy limit_order_study() {
  const Grid grid(1, 64, 2.0 * kPi);
  const std::vector<double> a{1.0};
  const auto flux = models::Flux::burgers1d();
  std::vector<double> values(grid.size());
  for (std::size_t x = 0; x < grid.size(); ++x) {
    const double X = spectral::coordinate(grid, x, 0);
    values[x] = 0.5 * std::sin(X) + 0.2 * std::cos(2.0 * X);
  }
  const models::LimitState init{spectral::dealiased(spectral::from_physical(grid, 1, values)), 0.0};
  auto run = [&](double dt) {
    const auto [n, h] = integrators::step_plan(1.0, dt);
    const integrators::LimitStepper stepper(flux, a, grid, h, 1.0);
    auto s = init;
    for (std::size_t i = 0; i < n; ++i) s = stepper.step(s);
    return std::pair{s, h};
  };
  const auto reference = run(std::ldexp(1.0, -8) / 64.0).first;
  OrderStudy out;
  for (int m = 4; m <= 8; ++m) {
    const auto [s, h] = run(std::ldexp(1.0, -m));
    out.dt.push_back(h);
    out.error.push_back(spectral::lp_norm(s.u - reference.u, 2.0));
  }
  std::tie(out.order, out.min_pair_order) = order_of(out.dt, out.error);
  return out;
}

double conservation_drift(int steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Grid grid(1, 64, 2.0 * kPi);
  const std::vector<double> a{1.0};
  auto u = random_field(grid, 1, 10, rng);
  u *= 0.05 / spectral::lp_norm(u, kInf);
  u.at(0, 0) = 0.1;
  auto v = random_field(grid, 1, 10, rng);
  v *= 0.05 / spectral::lp_norm(v, kInf);
  models::JinXinModel model{models::Flux::burgers1d(), a, 0.1};
  integrators::StepperConfig cfg;
  const double dt = integrators::hyperbolic_dt_limit(model, grid, cfg.cfl);
  models::JinXinState s{u, v, 0.0};
  const integrators::LimitStepper stepper(model.flux, a, grid, dt, 0.5);
  models::LimitState l{u, 0.0};
  for (int i = 0; i < steps; ++i) {
    s = integrators::step_jinxin(model, s, dt, cfg);
    l = stepper.step(l);
  }
  return std::max(std::abs(s.u.mean(0) - u.mean(0)), std::abs(l.u.mean(0) - u.mean(0)));
}

Report run_selftest(std::uint64_t seed) {
  Report report;
  report.experiment = "selftest";
  const auto sp = spectral_selftest(64, 1, 10, seed);
  report.add_check("partition of unity", sp.partition_defect <= 1e-12, sci(sp.partition_defect));
  report.add_check("block reconstruction", sp.reconstruction_defect <= 1e-12, sci(sp.reconstruction_defect));
  report.add_check("block disjointness", sp.disjointness_defect <= 1e-12, sci(sp.disjointness_defect));
  report.add_check("Bernstein p=2", sp.bernstein2_min >= 0.75 - 1e-12 && sp.bernstein2_max <= 8.0 / 3.0 + 1e-12,
                   "[" + sci(sp.bernstein2_min) + ", " + sci(sp.bernstein2_max) + "]");
  report.add_check("Bernstein p=inf", sp.bernstein_inf_min >= 0.25 && sp.bernstein_inf_max <= 8.0 / 3.0 * 1.01,
                   "[" + sci(sp.bernstein_inf_min) + ", " + sci(sp.bernstein_inf_max) + "]");
  report.add_check("Hermitian symmetry preserved", sp.hermitian_defect <= 1e-12, sci(sp.hermitian_defect));
  report.add_check("FFT vs dense DFT", sp.transform_defect <= 1e-12, sci(sp.transform_defect));
  const auto sp2 = spectral_selftest(16, 2, 3, seed + 1);
  report.add_check("partition of unity, d=2", sp2.partition_defect <= 1e-12, sci(sp2.partition_defect));
  report.add_check("Bernstein p=2, d=2", sp2.bernstein2_min >= 0.75 - 1e-12 && sp2.bernstein2_max <= 8.0 / 3.0 + 1e-12,
                   "[" + sci(sp2.bernstein2_min) + ", " + sci(sp2.bernstein2_max) + "]");

  const auto po = propagator_oracle(200, seed);
  report.add_check("characteristic polynomial residual", po.charpoly_residual <= 1e-8, sci(po.charpoly_residual));
  report.add_check("Vieta relations", po.vieta_defect <= 1e-10, sci(po.vieta_defect));
  report.add_check("propagator semigroup", po.semigroup_defect <= 1e-9, sci(po.semigroup_defect));
  report.add_check("semigroup at the defective point", po.defective_semigroup_defect <= 1e-9,
                   sci(po.defective_semigroup_defect));
  report.add_check("propagator vs RK4", po.rk4_defect <= 1e-8, sci(po.rk4_defect));
  report.add_check("propagator vs RK4, random", po.rk4_random_defect <= 1e-8, sci(po.rk4_random_defect));
  {
    const std::vector<double> xi{0.0, 0.0}, a{1.0, 2.0};
    const auto P = analysis::exact_linear_propagator(xi, 0.5, a, 0.3);
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
    D(0, 0) = 1.0;
    D(1, 1) = D(2, 2) = std::exp(-0.3 / 0.25);
    report.add_check("propagator at xi = 0", (P - D).cwiseAbs().maxCoeff() <= 1e-15, "");
  }

  for (double eps : {1.0, 0.1}) {
    const auto o = imex_order_study(eps);
    report.scalars.push_back({"imex_ssp2_order[eps=" + sci(eps) + "]", o.order});
    report.add_check("imex_ssp2 order at eps=" + sci(eps), o.order >= 1.9, sci(o.order));
  }
  const auto lo = limit_order_study();
  report.scalars.push_back({"if_rk2_order", lo.order});
  report.add_check("if_rk2 order", lo.order >= 1.9, sci(lo.order));

  const double drift = conservation_drift(1000, seed);
  report.add_check("mass conservation", drift <= 1e-13, sci(drift));

  {
    // per-mode action of the rhs equals the symbol on (u, eps v)
    std::mt19937_64 rng(seed + 7);
    const Grid g(2, 16, 2.0 * kPi);
    const std::vector<double> a{0.7, 1.3};
    const double eps = 0.3;
    auto u = random_field(g, 1, 4, rng);
    auto v = random_field(g, 2, 4, rng);
    models::JinXinModel model{models::Flux::zero(1, 2), a, eps};
    const auto rates = models::jinxin_rhs(model, {u, v, 0.0});
    double worst = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto A = symbol_matrix({g.kappa(0)[k], g.kappa(1)[k]}, eps, a);
      Eigen::VectorXcd w(3), r(3);
      w << u.at(0, k), eps * v.at(0, k), eps * v.at(1, k);
      r << rates.du.at(0, k), eps * rates.dv.at(0, k), eps * rates.dv.at(1, k);
      if (!g.dealias_mask()[k]) continue;
      worst = std::max(worst, (A * w - r).cwiseAbs().maxCoeff() / std::max(1.0, (A * w).cwiseAbs().maxCoeff()));
    }
    report.add_check("rhs matches the linear symbol", worst <= 1e-12, sci(worst));
  }
  {
    // 2D Burgers limit rate for u = (sin x1, 0): -(sin 2x1, 0) - (sin x1, 0)
    const Grid g(2, 16, 2.0 * kPi);
    std::vector<double> values(2 * g.size(), 0.0), expect(2 * g.size(), 0.0);
    for (std::size_t x = 0; x < g.size(); ++x) {
      const double x1 = spectral::coordinate(g, x, 0);
      values[x] = std::sin(x1);
      expect[x] = -std::sin(2.0 * x1) - std::sin(x1);
    }
    const std::vector<double> a{1.0, 1.0};
    const auto rate = models::limit_rhs(models::Flux::burgers2d(), a, {spectral::from_physical(g, 2, values), 0.0});
    const auto phys = spectral::to_physical(rate);
    double worst = 0.0;
    for (std::size_t i = 0; i < phys.size(); ++i) worst = std::max(worst, std::abs(phys[i] - expect[i]));
    report.add_check("2D Burgers limit rhs vs closed form", worst <= 1e-12, sci(worst));
  }
  {
    // Darcy velocity and Z for 1D Burgers against pointwise evaluation
    std::mt19937_64 rng(seed + 11);
    const Grid g(1, 64, 2.0 * kPi);
    const std::vector<double> a{1.5};
    auto u = random_field(g, 1, 10, rng);
    u *= 0.3 / spectral::lp_norm(u, kInf);
    auto v = random_field(g, 1, 10, rng);
    const auto ux = spectral::to_physical(spectral::derivative(u, 0));
    const auto up = spectral::to_physical(u);
    const auto vp = spectral::to_physical(v);
    const auto darcy = spectral::to_physical(models::darcy_velocity(models::Flux::burgers1d(), a, u));
    models::JinXinModel model{models::Flux::burgers1d(), a, 0.2};
    const auto Z = spectral::to_physical(models::effective_Z(model, {u, v, 0.0}));
    double wd = 0.0, wz = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x) {
      wd = std::max(wd, std::abs(darcy[x] - (-a[0] * ux[x] + 0.5 * up[x] * up[x])));
      wz = std::max(wz, std::abs(Z[x] - (a[0] * ux[x] + vp[x] - 0.5 * up[x] * up[x])));
    }
    report.add_check("Darcy velocity vs pointwise oracle", wd <= 1e-10, sci(wd));
    report.add_check("effective Z vs pointwise oracle", wz <= 1e-10, sci(wz));
  }
  report.add_check("threshold J(0.1) = 4", analysis::threshold_J(0.1, 0) == 4, std::to_string(analysis::threshold_J(0.1, 0)));
  {
    std::vector<double> t, y;
    for (int i = 0; i <= 60; ++i) {
      t.push_back(std::pow(100.0, i / 60.0));
      y.push_back(std::exp(-t.back()));
    }
    const auto fit = fit_rate(t, y, 1.0, 100.0, FitVariable::time);
    report.add_check("exponential data flagged as non power law", !fit.power_law, "R^2 = " + sci(fit.r_squared));
  }
  {
    const Grid g(1, 4096, 200.0 * kPi);
    InitialDataSpec spec;
    spec.kind = DataKind::random_spectrum;
    spec.sigma1 = -0.5;
    spec.seed = 7;
    spec.amplitude = 0.05;
    const std::vector<double> a{1.0};
    const auto data = make_initial_data(spec, g, models::Flux::burgers1d(), a, 0.5, 0);
    const auto flat = low_window_flatness(data.state.u, -0.5, analysis::threshold_J(0.5, 0));
    report.add_check("random spectrum flat within factor 2", flat.ratio <= 2.0, sci(flat.ratio));
  }
  return report;
}

}  // namespace relaxlab::harness
