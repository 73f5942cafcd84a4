#pragma once

#include <span>
#include <vector>

#include "relaxlab/models/flux.hpp"
#include "relaxlab/spectral/field.hpp"

namespace relaxlab::models {

using spectral::SpectralField;

/// Diffusively scaled relaxation system
///   du/dt + sum_i d_i v_i = 0,
///   eps^2 dv_i/dt + a_i d_i u = -(v_i - f_i(u)),
/// with A_i = a_i I_n.
struct JinXinModel {
  Flux flux;
  std::vector<double> a;
  double eps = 1.0;

  int components() const noexcept { return flux.components(); }
  int directions() const noexcept { return flux.directions(); }
  /// Throws std::invalid_argument unless a_i > 0, eps > 0 and shapes agree.
  void validate() const;
};

/// Viscous conservation law du*/dt + sum_i d_i f_i(u*) = sum_i d_i (a_i d_i u*).
struct LimitModel {
  Flux flux;
  std::vector<double> a;

  void validate() const;
};

/// One time level of the relaxation system. `v` stacks the d blocks v_1..v_d,
/// n components each (direction-major).
struct JinXinState {
  SpectralField u;
  SpectralField v;
  double t = 0.0;

  int directions() const noexcept { return v.components() / u.components(); }
  SpectralField v_block(int i) const { return v.slice(i * u.components(), u.components()); }
};

struct LimitState {
  SpectralField u;
  double t = 0.0;
};

struct JinXinRates {
  SpectralField du;
  SpectralField dv;
};

/// sum_i d_i w_i for w stacked as d blocks of n components.
SpectralField divergence(const SpectralField& w, int n);
/// Stacked blocks (a_i d_i u)_i.
SpectralField scaled_gradient(const SpectralField& u, std::span<const double> a);

JinXinRates jinxin_rhs(const JinXinModel& model, const JinXinState& state);
SpectralField limit_rhs(const Flux& flux, std::span<const double> a, const LimitState& state);
/// v*_i = -a_i d_i u* + f_i(u*)
SpectralField darcy_velocity(const Flux& flux, std::span<const double> a, const SpectralField& u_star);
/// z_i = a_i d_i u + v_i
SpectralField effective_z(const JinXinModel& model, const JinXinState& state);
/// Z_i = a_i d_i u + v_i - f_i(u); vanishes on the Darcy manifold.
SpectralField effective_Z(const JinXinModel& model, const JinXinState& state);

/// Throws DivergenceError if any coefficient is NaN/Inf.
void require_finite(const SpectralField& field, double t, const char* what);

}  // namespace relaxlab::models
