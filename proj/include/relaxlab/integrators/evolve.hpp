#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relaxlab/integrators/stepper.hpp"
#include "relaxlab/spectral/norm_series.hpp"

namespace relaxlab::integrators {

/// One monitored quantity: the Besov norm of `field` at (s, p, r) over a
/// frequency window. Low/high windows use the trajectory's threshold J.
///
/// Fields: u, v, w = (u, eps v), z, Z for the relaxation system; ustar and
/// vstar for the limit; du, dv, dw for co-evolved differences.
struct TrackerSpec {
  std::string field = "u";
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;
  spectral::Window::Kind window = spectral::Window::Kind::full;

  std::string label() const;
};

spectral::Window::Kind parse_window(const std::string& name);
std::string window_name(spectral::Window::Kind kind);
std::vector<std::string> relaxation_fields();
std::vector<std::string> limit_fields();
std::vector<std::string> difference_fields();

struct Trajectory {
  std::vector<double> times;
  /// Block-norm tables keyed by series_key(field, p).
  std::map<std::string, spectral::NormSeries> series;
  std::size_t steps = 0;
  /// Final (largest) step size.
  double dt = 0.0;
  int J = 0;
  double wall_seconds = 0.0;
  /// max over samples of ||u||_{L^inf} (relaxation u, or u* for limit runs).
  double max_u_linf = 0.0;
  std::optional<JinXinState> final_state;
  std::optional<LimitState> final_limit;

  bool has(const std::string& field, double p) const;
  /// Throws std::invalid_argument naming the missing tracker.
  const spectral::NormSeries& at(const std::string& field, double p) const;
  spectral::Window window(spectral::Window::Kind kind) const;
  /// Tracked Besov value at every sample.
  std::vector<double> values(const TrackerSpec& tracker) const;
};

std::string series_key(const std::string& field, double p);

/// Step indices to sample for a run of n_steps steps of size dt.
std::vector<std::size_t> sample_steps(std::size_t n_steps, double dt, const StepperConfig& cfg);
/// Same, for a nonuniform step sequence given by its sample times (times[0] = 0).
std::vector<std::size_t> sample_steps(std::span<const double> times, const StepperConfig& cfg);
/// n = ceil(t_end / dt_bound), dt = t_end / n.
std::pair<std::size_t, double> step_plan(double t_end, double dt_bound);

Trajectory evolve(const JinXinModel& model, JinXinState initial, const StepperConfig& cfg,
                  std::span<const TrackerSpec> trackers, int k0 = 0);

/// `J` sets the low/high threshold for windowed trackers.
Trajectory evolve_limit(const models::LimitModel& model, LimitState initial, const StepperConfig& cfg,
                        std::span<const TrackerSpec> trackers, int J);

/// Marches both systems with one step size and shared sampling instants.
/// The limit uses if_rk2 regardless of cfg.scheme.
Trajectory co_evolve(const JinXinModel& model, JinXinState initial, LimitState initial_limit,
                     const StepperConfig& cfg, std::span<const TrackerSpec> trackers, int k0 = 0);

/// {config_hash, dt, step_count, t, norms: {label: [...]}, [wall_time]}
std::string trajectory_summary_json(const Trajectory& trajectory, std::span<const TrackerSpec> trackers,
                                    const std::string& config_hash, bool include_wall_time);

}  // namespace relaxlab::integrators
