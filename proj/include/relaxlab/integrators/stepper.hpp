#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "relaxlab/models/jinxin.hpp"

namespace relaxlab::integrators {

using models::JinXinModel;
using models::JinXinState;
using models::LimitState;
using spectral::SpectralField;

enum class Scheme { imex_euler, imex_ssp2, if_rk2, exact_linear };

Scheme parse_scheme(const std::string& name);
std::string scheme_name(Scheme scheme);

struct StepperConfig {
  Scheme scheme = Scheme::imex_ssp2;
  double cfl = 0.5;
  double dt_max = 1e-2;
  double dt_min = 1e-12;
  double t_end = 1.0;
  /// Sample every k steps once past dense_until (ignored when sample_ratio > 1).
  int sample_every = 1;
  /// Geometric cadence t_{k+1} >= ratio * t_k after dense_until; 0 disables.
  double sample_ratio = 0.0;
  /// Every step is sampled while t <= dense_until.
  double dense_until = 0.0;
  /// Extra bound dt <= layer_factor * eps^2 resolving the initial layer; 0 disables.
  double layer_factor = 0.0;
  /// The layer bound holds only while t <= layer_span * eps^2; 0 keeps it for the whole run.
  double layer_span = 0.0;

  /// Throws std::invalid_argument on dt_min > dt_max, cfl outside (0, 1], etc.
  void validate() const;
};

/// cfl * eps * dx / max_i sqrt(a_i)
double hyperbolic_dt_limit(const JinXinModel& model, const spectral::Grid& grid, double cfl);
/// Fixed step for a relaxation run: min(dt_max, hyperbolic limit, layer_factor eps^2).
double jinxin_time_step(const JinXinModel& model, const spectral::Grid& grid, const StepperConfig& cfg);
/// Step sizes covering [0, t_end]: the layer-resolving step up to layer_span eps^2,
/// then min(dt_max, hyperbolic limit). A single uniform phase when layer_span is 0.
/// Every step is also bounded by `cap`.
std::vector<double> jinxin_schedule(const JinXinModel& model, const spectral::Grid& grid, const StepperConfig& cfg,
                                    double cap = std::numeric_limits<double>::infinity());
/// Appends ceil(span / dt_bound) equal steps covering `span`.
void append_steps(std::vector<double>& steps, double span, double dt_bound);
/// cfl * dx / max|df/du| (infinite for a vanishing flux speed).
double advective_dt_limit(const models::Flux& flux, const SpectralField& u, double cfl);

/// One step of the relaxation system. Throws CflError when dt exceeds the
/// hyperbolic limit, DivergenceError on non-finite values.
JinXinState step_jinxin(const JinXinModel& model, const JinXinState& state, double dt, const StepperConfig& cfg);

/// Integrating-factor RK2 for the limit equation, factors cached for one dt.
class LimitStepper {
 public:
  LimitStepper(const models::Flux& flux, std::span<const double> a, const spectral::Grid& grid, double dt,
               double cfl);

  double dt() const noexcept { return dt_; }
  /// Checks the advective CFL bound against the current state.
  LimitState step(const LimitState& state) const;

 private:
  SpectralField nonlinear(const SpectralField& u, double t) const;

  models::Flux flux_;
  std::vector<double> a_;
  double dt_;
  double cfl_;
  std::vector<double> factor_;  // exp(-S(kappa) dt)
};

LimitState step_limit(const models::Flux& flux, std::span<const double> a, const LimitState& state, double dt,
                      const StepperConfig& cfg);

}  // namespace relaxlab::integrators
