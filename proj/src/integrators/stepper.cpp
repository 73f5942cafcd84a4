#include "relaxlab/integrators/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "relaxlab/analysis/linear_theory.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/spectral/ops.hpp"

namespace relaxlab::integrators {

namespace {

// Pareschi-Russo IMEX-SSP2(2,2,2) implicit diagonal.
const double kGamma = 1.0 - 1.0 / std::sqrt(2.0);

/// f(u) - a grad u, the value v relaxes to for frozen u.
SpectralField relaxation_target(const JinXinModel& model, const SpectralField& u) {
  auto target = models::flux_field(model.flux, u);
  target -= models::scaled_gradient(u, model.a);
  spectral::dealias(target);
  return target;
}

/// Solves V = base + h (target - V) / eps^2 for V.
SpectralField implicit_relax(const SpectralField& base, const SpectralField& target, double h, double eps) {
  const double w = h / (eps * eps);
  SpectralField v = base;
  v.axpy(w, target);
  v *= 1.0 / (1.0 + w);
  return v;
}

JinXinState imex_euler(const JinXinModel& model, const JinXinState& s, double dt) {
  const int n = model.components();
  JinXinState out{s.u, s.v, s.t + dt};
  out.u.axpy(-dt, models::divergence(s.v, n));
  spectral::dealias(out.u);
  // (eps^2 v - dt a grad u + dt f(u)) / (eps^2 + dt)
  out.v = implicit_relax(s.v, relaxation_target(model, out.u), dt, model.eps);
  spectral::dealias(out.v);
  return out;
}

JinXinState imex_ssp2(const JinXinModel& model, const JinXinState& s, double dt) {
  const int n = model.components();
  const double eps = model.eps;
  const double h = dt * kGamma;

  // Stage 1: U1 = u_n
  auto v1 = implicit_relax(s.v, relaxation_target(model, s.u), h, eps);
  auto g1 = v1 - s.v;
  g1 *= 1.0 / h;
  auto div1 = models::divergence(v1, n);

  // Stage 2: U2 = u_n + dt F(U1, V1)
  auto u2 = s.u;
  u2.axpy(-dt, div1);
  spectral::dealias(u2);
  auto base2 = s.v;
  base2.axpy(dt * (1.0 - 2.0 * kGamma), g1);
  auto v2 = implicit_relax(base2, relaxation_target(model, u2), h, eps);
  auto g2 = v2 - base2;
  g2 *= 1.0 / h;
  auto div2 = models::divergence(v2, n);

  JinXinState out{s.u, s.v, s.t + dt};
  out.u.axpy(-0.5 * dt, div1);
  out.u.axpy(-0.5 * dt, div2);
  out.v.axpy(0.5 * dt, g1);
  out.v.axpy(0.5 * dt, g2);
  spectral::dealias(out.u);
  spectral::dealias(out.v);
  return out;
}

JinXinState exact_linear(const JinXinModel& model, const JinXinState& s, double dt) {
  if (!model.flux.is_zero()) throw std::invalid_argument("exact_linear scheme requires the zero flux");
  const auto& grid = s.u.grid();
  const int d = grid.dim();
  const int n = model.components();
  const double eps = model.eps;
  JinXinState out{s.u, s.v, s.t + dt};
  std::vector<double> xi(d);
  Eigen::VectorXcd w(d + 1);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    bool active = false;
    for (int c = 0; c < n && !active; ++c) {
      active = s.u.at(c, k) != spectral::Complex{};
      for (int i = 0; i < d && !active; ++i) active = s.v.at(i * n + c, k) != spectral::Complex{};
    }
    if (!active) continue;
    for (int i = 0; i < d; ++i) xi[i] = grid.kappa(i)[k];
    const auto P = analysis::exact_linear_propagator(xi, eps, model.a, dt);
    for (int c = 0; c < n; ++c) {
      w(0) = s.u.at(c, k);
      for (int i = 0; i < d; ++i) w(i + 1) = eps * s.v.at(i * n + c, k);
      const Eigen::VectorXcd r = P * w;
      out.u.at(c, k) = r(0);
      for (int i = 0; i < d; ++i) out.v.at(i * n + c, k) = r(i + 1) / eps;
    }
  }
  return out;
}

}  // namespace

Scheme parse_scheme(const std::string& name) {
  if (name == "imex_euler") return Scheme::imex_euler;
  if (name == "imex_ssp2") return Scheme::imex_ssp2;
  if (name == "if_rk2") return Scheme::if_rk2;
  if (name == "exact_linear") return Scheme::exact_linear;
  throw std::invalid_argument("unknown scheme '" + name + "' (imex_euler | imex_ssp2 | if_rk2 | exact_linear)");
}

std::string scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::imex_euler:
      return "imex_euler";
    case Scheme::imex_ssp2:
      return "imex_ssp2";
    case Scheme::if_rk2:
      return "if_rk2";
    case Scheme::exact_linear:
      break;
  }
  return "exact_linear";
}

void StepperConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("cfl must lie in (0, 1]");
  if (!(dt_min > 0.0 && dt_min <= dt_max)) throw std::invalid_argument("0 < dt_min <= dt_max required");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end > 0 required");
  if (sample_every < 1) throw std::invalid_argument("sample_every >= 1 required");
  if (sample_ratio != 0.0 && !(sample_ratio > 1.0)) throw std::invalid_argument("sample_ratio must be 0 or > 1");
  if (dense_until < 0.0) throw std::invalid_argument("dense_until >= 0 required");
  if (layer_factor < 0.0) throw std::invalid_argument("layer_factor >= 0 required");
  if (layer_span < 0.0) throw std::invalid_argument("layer_span >= 0 required");
  if (layer_span > 0.0 && layer_factor == 0.0) throw std::invalid_argument("layer_span needs layer_factor > 0");
}

double hyperbolic_dt_limit(const JinXinModel& model, const spectral::Grid& grid, double cfl) {
  const double amax = *std::max_element(model.a.begin(), model.a.end());
  return cfl * model.eps * grid.spacing() / std::sqrt(amax);
}

double jinxin_time_step(const JinXinModel& model, const spectral::Grid& grid, const StepperConfig& cfg) {
  double dt = std::min(cfg.dt_max, hyperbolic_dt_limit(model, grid, cfg.cfl));
  if (cfg.layer_factor > 0.0) dt = std::min(dt, cfg.layer_factor * model.eps * model.eps);
  if (dt < cfg.dt_min) throw CflError("time step below dt_min", dt);
  return dt;
}

void append_steps(std::vector<double>& steps, double span, double dt_bound) {
  if (!(dt_bound > 0.0)) throw std::invalid_argument("positive step bound required");
  const auto n = static_cast<std::size_t>(std::ceil(span / dt_bound * (1.0 - 1e-12)));
  const std::size_t count = std::max<std::size_t>(n, 1);
  steps.insert(steps.end(), count, span / static_cast<double>(count));
}

std::vector<double> jinxin_schedule(const JinXinModel& model, const spectral::Grid& grid, const StepperConfig& cfg,
                                    double cap) {
  std::vector<double> steps;
  auto capped = cfg;
  capped.dt_max = std::min(cfg.dt_max, cap);
  const double fine = jinxin_time_step(model, grid, capped);
  const double t_layer = cfg.layer_span * model.eps * model.eps;
  if (cfg.layer_span == 0.0 || t_layer >= cfg.t_end) {
    append_steps(steps, cfg.t_end, fine);
    return steps;
  }
  auto coarse_cfg = capped;
  coarse_cfg.layer_factor = 0.0;
  append_steps(steps, t_layer, fine);
  append_steps(steps, cfg.t_end - t_layer, jinxin_time_step(model, grid, coarse_cfg));
  return steps;
}

double advective_dt_limit(const models::Flux& flux, const SpectralField& u, double cfl) {
  const double speed = models::max_characteristic_speed(flux, u);
  if (speed == 0.0) return std::numeric_limits<double>::infinity();
  return cfl * u.grid().spacing() / speed;
}

JinXinState step_jinxin(const JinXinModel& model, const JinXinState& state, double dt, const StepperConfig& cfg) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt > 0 required");
  const double limit = hyperbolic_dt_limit(model, state.u.grid(), cfg.cfl);
  if (dt > limit * (1.0 + 1e-12)) throw CflError("dt exceeds cfl * eps * dx / max sqrt(a_i)", limit);
  JinXinState next = [&] {
    switch (cfg.scheme) {
      case Scheme::imex_euler:
        return imex_euler(model, state, dt);
      case Scheme::imex_ssp2:
        return imex_ssp2(model, state, dt);
      case Scheme::exact_linear:
        return exact_linear(model, state, dt);
      case Scheme::if_rk2:
        break;
    }
    throw std::invalid_argument("if_rk2 applies to the limit equation only");
  }();
  models::require_finite(next.u, next.t, "u");
  models::require_finite(next.v, next.t, "v");
  return next;
}

LimitStepper::LimitStepper(const models::Flux& flux, std::span<const double> a, const spectral::Grid& grid,
                           double dt, double cfl)
    : flux_(flux), a_(a.begin(), a.end()), dt_(dt), cfl_(cfl), factor_(grid.size()) {
  if (static_cast<int>(a_.size()) != grid.dim()) throw GridMismatch("one coefficient per direction required");
  if (!(dt > 0.0)) throw std::invalid_argument("dt > 0 required");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    double S = 0.0;
    for (int i = 0; i < grid.dim(); ++i) S += a_[i] * grid.kappa(i)[k] * grid.kappa(i)[k];
    factor_[k] = std::exp(-S * dt);
  }
}

SpectralField LimitStepper::nonlinear(const SpectralField& u, double t) const {
  auto out = models::divergence(models::flux_field(flux_, u), flux_.components());
  out *= -1.0;
  spectral::dealias(out);
  models::require_finite(out, t, "du*/dt");
  return out;
}

LimitState LimitStepper::step(const LimitState& state) const {
  if (!flux_.is_zero()) {
    const double limit = advective_dt_limit(flux_, state.u, cfl_);
    if (dt_ > limit * (1.0 + 1e-12)) throw CflError("dt exceeds cfl * dx / max |df/du|", limit);
  }
  const int n = state.u.components();
  const std::size_t size = state.u.grid().size();
  auto apply_factor = [&](SpectralField& f) {
    for (int c = 0; c < n; ++c) {
      auto comp = f.component(c);
      for (std::size_t k = 0; k < size; ++k) comp[k] *= factor_[k];
    }
  };
  if (flux_.is_zero()) {
    LimitState out{state.u, state.t + dt_};
    apply_factor(out.u);
    return out;
  }
  const auto a = nonlinear(state.u, state.t);
  auto u1 = state.u;
  u1.axpy(dt_, a);
  apply_factor(u1);
  const auto b = nonlinear(u1, state.t + dt_);
  LimitState out{state.u, state.t + dt_};
  out.u.axpy(0.5 * dt_, a);
  apply_factor(out.u);
  out.u.axpy(0.5 * dt_, b);
  spectral::dealias(out.u);
  models::require_finite(out.u, out.t, "u*");
  return out;
}

LimitState step_limit(const models::Flux& flux, std::span<const double> a, const LimitState& state, double dt,
                      const StepperConfig& cfg) {
  if (cfg.scheme != Scheme::if_rk2) throw std::invalid_argument("the limit equation is advanced with if_rk2");
  return LimitStepper(flux, a, state.u.grid(), dt, cfg.cfl).step(state);
}

}  // namespace relaxlab::integrators
