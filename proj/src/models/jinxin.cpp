#include "relaxlab/models/jinxin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "relaxlab/errors.hpp"
#include "relaxlab/spectral/ops.hpp"

namespace relaxlab::models {

using spectral::Complex;

namespace {

void validate_coefficients(const Flux& flux, const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != flux.directions())
    throw std::invalid_argument("need one coefficient a_i per direction (" + std::to_string(flux.directions()) + ")");
  for (double ai : a)
    if (!(ai > 0.0) || !std::isfinite(ai)) throw std::invalid_argument("a_i > 0 required");
}

void require_shape(const Flux& flux, const SpectralField& u) {
  if (u.components() != flux.components()) throw GridMismatch("state component count differs from flux");
  if (u.grid().dim() != flux.directions()) throw GridMismatch("grid dimension differs from flux directions");
}

}  // namespace

void JinXinModel::validate() const {
  validate_coefficients(flux, a);
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps > 0 required");
}

void LimitModel::validate() const { validate_coefficients(flux, a); }

void require_finite(const SpectralField& field, double t, const char* what) {
  if (!field.all_finite()) throw DivergenceError(std::string("non-finite coefficients in ") + what, t);
}

SpectralField divergence(const SpectralField& w, int n) {
  const int d = w.components() / n;
  if (d * n != w.components() || d != w.grid().dim()) throw GridMismatch("divergence needs d blocks of n components");
  const auto& grid = w.grid();
  const double nyquist = grid.kappa_fundamental() * (-grid.points_per_axis() / 2);
  SpectralField out(grid, n);
  for (int i = 0; i < d; ++i) {
    const auto kappa = grid.kappa(i);
    for (int c = 0; c < n; ++c) {
      const auto src = w.component(i * n + c);
      auto dst = out.component(c);
      for (std::size_t k = 0; k < src.size(); ++k) {
        if (kappa[k] == nyquist) continue;
        dst[k] += Complex{-kappa[k] * src[k].imag(), kappa[k] * src[k].real()};
      }
    }
  }
  return out;
}

SpectralField scaled_gradient(const SpectralField& u, std::span<const double> a) {
  const int d = u.grid().dim();
  if (static_cast<int>(a.size()) != d) throw GridMismatch("one coefficient per direction required");
  const auto& grid = u.grid();
  const int n = u.components();
  const double nyquist = grid.kappa_fundamental() * (-grid.points_per_axis() / 2);
  SpectralField out(grid, d * n);
  for (int i = 0; i < d; ++i) {
    const auto kappa = grid.kappa(i);
    for (int c = 0; c < n; ++c) {
      const auto src = u.component(c);
      auto dst = out.component(i * n + c);
      for (std::size_t k = 0; k < src.size(); ++k) {
        if (kappa[k] == nyquist) continue;
        const double m = a[i] * kappa[k];
        dst[k] = Complex{-m * src[k].imag(), m * src[k].real()};
      }
    }
  }
  return out;
}

JinXinRates jinxin_rhs(const JinXinModel& model, const JinXinState& state) {
  require_shape(model.flux, state.u);
  require_finite(state.u, state.t, "u");
  require_finite(state.v, state.t, "v");
  const int n = model.components();
  auto du = divergence(state.v, n);
  du *= -1.0;
  // (1/eps^2)(-A_i d_i u - v_i + f_i(u))
  auto dv = flux_field(model.flux, state.u);
  dv -= scaled_gradient(state.u, model.a);
  dv -= state.v;
  dv *= 1.0 / (model.eps * model.eps);
  spectral::dealias(du);
  spectral::dealias(dv);
  require_finite(du, state.t, "du/dt");
  require_finite(dv, state.t, "dv/dt");
  return {std::move(du), std::move(dv)};
}

SpectralField limit_rhs(const Flux& flux, std::span<const double> a, const LimitState& state) {
  require_shape(flux, state.u);
  require_finite(state.u, state.t, "u*");
  auto rate = spectral::weighted_laplacian(state.u, a);
  rate -= divergence(flux_field(flux, state.u), flux.components());
  spectral::dealias(rate);
  require_finite(rate, state.t, "du*/dt");
  return rate;
}

SpectralField darcy_velocity(const Flux& flux, std::span<const double> a, const SpectralField& u_star) {
  require_shape(flux, u_star);
  auto v = flux_field(flux, u_star);
  v -= scaled_gradient(u_star, a);
  return v;
}

SpectralField effective_z(const JinXinModel& model, const JinXinState& state) {
  require_shape(model.flux, state.u);
  auto z = scaled_gradient(state.u, model.a);
  z += state.v;
  return z;
}

SpectralField effective_Z(const JinXinModel& model, const JinXinState& state) {
  auto Z = effective_z(model, state);
  Z -= flux_field(model.flux, state.u);
  return Z;
}

}  // namespace relaxlab::models
