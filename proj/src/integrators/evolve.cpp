#include "relaxlab/integrators/evolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "relaxlab/analysis/linear_theory.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/spectral/ops.hpp"

namespace relaxlab::integrators {

using spectral::NormSeries;
using spectral::Window;

namespace {

std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

bool contains(const std::vector<std::string>& names, const std::string& name) {
  return std::find(names.begin(), names.end(), name) != names.end();
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

void check_fields(std::span<const TrackerSpec> trackers, const std::vector<std::string>& allowed) {
  for (const auto& t : trackers)
    if (!contains(allowed, t.field))
      throw std::invalid_argument("tracker field '" + t.field + "' unavailable here (allowed: " + join(allowed) + ")");
}

SpectralField eps_stack(const SpectralField& u, const SpectralField& v, double eps) {
  auto ev = v;
  ev *= eps;
  const SpectralField parts[] = {u, ev};
  return SpectralField::stack(parts);
}

using FieldSource = std::function<SpectralField(const std::string&)>;

/// Shared marching loop: `advance` moves the state(s) by one step, `source`
/// materializes named fields for the current state.
Trajectory march(const spectral::Grid& grid, std::span<const double> steps, const StepperConfig& cfg,
                 std::span<const TrackerSpec> trackers, int J, const std::function<void(double)>& advance,
                 const FieldSource& source, const std::function<double()>& current_time,
                 const std::function<SpectralField()>& primary_u) {
  const auto start = std::chrono::steady_clock::now();
  Trajectory traj;
  traj.dt = steps.empty() ? 0.0 : steps.back();
  traj.J = J;
  const auto& scheme = spectral::DyadicScheme::for_grid(grid);

  std::set<std::pair<std::string, double>> wanted;
  for (const auto& t : trackers) wanted.insert({t.field, t.p});
  for (const auto& [field, p] : wanted) traj.series.emplace(series_key(field, p), NormSeries(scheme.j_min(), scheme.j_max(), p));

  const std::size_t n_steps = steps.size();
  std::vector<double> times(n_steps + 1, 0.0);
  for (std::size_t m = 0; m < n_steps; ++m) times[m + 1] = times[m] + steps[m];
  const auto samples = sample_steps(times, cfg);
  std::size_t next = 0;
  auto record = [&] {
    const double t = current_time();
    traj.times.push_back(t);
    std::string cached_name;
    std::optional<SpectralField> cached;
    for (const auto& [field, p] : wanted) {
      if (cached_name != field) {
        cached = source(field);
        cached_name = field;
      }
      traj.series.at(series_key(field, p)).append(t, spectral::block_norms(*cached, p));
    }
    traj.max_u_linf = std::max(traj.max_u_linf, spectral::lp_norm(primary_u(), std::numeric_limits<double>::infinity()));
  };
  for (std::size_t m = 0; m <= n_steps; ++m) {
    if (m > 0) advance(steps[m - 1]);
    if (next < samples.size() && samples[next] == m) {
      record();
      ++next;
    }
  }
  traj.steps = n_steps;
  traj.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return traj;
}

SpectralField relaxation_field(const JinXinModel& model, const JinXinState& s, const std::string& name) {
  if (name == "u") return s.u;
  if (name == "v") return s.v;
  if (name == "w") return eps_stack(s.u, s.v, model.eps);
  if (name == "z") return models::effective_z(model, s);
  if (name == "Z") return models::effective_Z(model, s);
  throw std::invalid_argument("unknown relaxation field '" + name + "'");
}

}  // namespace

std::string TrackerSpec::label() const {
  return field + "[s=" + format_number(s) + ",p=" + format_number(p) + ",r=" + format_number(r) + "," +
         window_name(window) + "]";
}

Window::Kind parse_window(const std::string& name) {
  if (name == "full") return Window::Kind::full;
  if (name == "low") return Window::Kind::low;
  if (name == "high") return Window::Kind::high;
  throw std::invalid_argument("unknown window '" + name + "' (full | low | high)");
}

std::string window_name(Window::Kind kind) {
  switch (kind) {
    case Window::Kind::full:
      return "full";
    case Window::Kind::low:
      return "low";
    case Window::Kind::high:
      break;
  }
  return "high";
}

std::vector<std::string> relaxation_fields() { return {"u", "v", "w", "z", "Z"}; }
std::vector<std::string> limit_fields() { return {"ustar", "vstar"}; }
std::vector<std::string> difference_fields() { return {"du", "dv", "dw"}; }

std::string series_key(const std::string& field, double p) { return field + "@p=" + format_number(p); }

bool Trajectory::has(const std::string& field, double p) const { return series.count(series_key(field, p)) > 0; }

const NormSeries& Trajectory::at(const std::string& field, double p) const {
  auto it = series.find(series_key(field, p));
  if (it == series.end()) throw std::invalid_argument("missing tracker: field " + field + " with p = " + format_number(p));
  return it->second;
}

Window Trajectory::window(Window::Kind kind) const { return Window{kind, J}; }

std::vector<double> Trajectory::values(const TrackerSpec& tracker) const {
  const auto& s = at(tracker.field, tracker.p);
  std::vector<double> out(s.samples());
  for (std::size_t i = 0; i < s.samples(); ++i) out[i] = s.besov_at(i, tracker.s, tracker.r, window(tracker.window));
  return out;
}

std::pair<std::size_t, double> step_plan(double t_end, double dt_bound) {
  if (!(dt_bound > 0.0)) throw std::invalid_argument("positive step bound required");
  const auto n = static_cast<std::size_t>(std::ceil(t_end / dt_bound * (1.0 - 1e-12)));
  const std::size_t steps = std::max<std::size_t>(n, 1);
  return {steps, t_end / static_cast<double>(steps)};
}

std::vector<std::size_t> sample_steps(std::size_t n_steps, double dt, const StepperConfig& cfg) {
  std::vector<double> times(n_steps + 1);
  for (std::size_t m = 0; m <= n_steps; ++m) times[m] = static_cast<double>(m) * dt;
  return sample_steps(times, cfg);
}

std::vector<std::size_t> sample_steps(std::span<const double> times, const StepperConfig& cfg) {
  std::vector<std::size_t> out{0};
  const std::size_t n_steps = times.empty() ? 0 : times.size() - 1;
  double last_t = 0.0;
  std::size_t last_m = 0;
  for (std::size_t m = 1; m <= n_steps; ++m) {
    const double t = times[m];
    bool take = m == n_steps || t <= cfg.dense_until * (1.0 + 1e-12);
    if (!take) {
      if (cfg.sample_ratio > 1.0)
        take = t >= cfg.sample_ratio * last_t;
      else
        take = m - last_m >= static_cast<std::size_t>(cfg.sample_every);
    }
    if (take) {
      out.push_back(m);
      last_t = t;
      last_m = m;
    }
  }
  return out;
}

Trajectory evolve(const JinXinModel& model, JinXinState initial, const StepperConfig& cfg,
                  std::span<const TrackerSpec> trackers, int k0) {
  model.validate();
  cfg.validate();
  check_fields(trackers, relaxation_fields());
  const spectral::Grid grid = initial.u.grid();
  const auto steps = jinxin_schedule(model, grid, cfg);
  JinXinState state = std::move(initial);
  auto traj = march(
      grid, steps, cfg, trackers, analysis::threshold_J(model.eps, k0),
      [&](double dt) { state = step_jinxin(model, state, dt, cfg); },
      [&](const std::string& name) { return relaxation_field(model, state, name); }, [&] { return state.t; },
      [&] { return state.u; });
  traj.final_state = std::move(state);
  return traj;
}

Trajectory evolve_limit(const models::LimitModel& model, LimitState initial, const StepperConfig& cfg,
                        std::span<const TrackerSpec> trackers, int J) {
  model.validate();
  cfg.validate();
  check_fields(trackers, limit_fields());
  const spectral::Grid grid = initial.u.grid();
  double bound = std::min(cfg.dt_max, advective_dt_limit(model.flux, initial.u, cfg.cfl));
  std::vector<double> steps;
  append_steps(steps, cfg.t_end, bound);
  if (steps.back() < cfg.dt_min) throw CflError("time step below dt_min", steps.back());
  const LimitStepper stepper(model.flux, model.a, grid, steps.back(), cfg.cfl);
  LimitState state = std::move(initial);
  auto source = [&](const std::string& name) {
    if (name == "ustar") return state.u;
    return models::darcy_velocity(model.flux, model.a, state.u);
  };
  auto traj = march(
      grid, steps, cfg, trackers, J, [&](double) { state = stepper.step(state); }, source, [&] { return state.t; },
      [&] { return state.u; });
  traj.final_limit = std::move(state);
  return traj;
}

Trajectory co_evolve(const JinXinModel& model, JinXinState initial, LimitState initial_limit,
                     const StepperConfig& cfg, std::span<const TrackerSpec> trackers, int k0) {
  model.validate();
  cfg.validate();
  auto allowed = relaxation_fields();
  for (auto names : {limit_fields(), difference_fields()}) allowed.insert(allowed.end(), names.begin(), names.end());
  check_fields(trackers, allowed);
  if (!(initial.u.grid() == initial_limit.u.grid())) throw GridMismatch("co-evolved systems need one grid");
  const spectral::Grid grid = initial.u.grid();
  const auto steps = jinxin_schedule(model, grid, cfg, advective_dt_limit(model.flux, initial_limit.u, cfg.cfl));
  // one integrating-factor stepper per distinct step size
  std::map<double, LimitStepper> steppers;
  for (double h : steps)
    if (!steppers.count(h)) steppers.emplace(h, LimitStepper(model.flux, model.a, grid, h, cfg.cfl));
  JinXinState state = std::move(initial);
  LimitState limit = std::move(initial_limit);

  auto source = [&](const std::string& name) -> SpectralField {
    if (name == "ustar") return limit.u;
    if (name == "vstar") return models::darcy_velocity(model.flux, model.a, limit.u);
    if (name == "du") return state.u - limit.u;
    if (name == "dv") return state.v - models::darcy_velocity(model.flux, model.a, limit.u);
    if (name == "dw")
      return eps_stack(state.u - limit.u, state.v - models::darcy_velocity(model.flux, model.a, limit.u), model.eps);
    return relaxation_field(model, state, name);
  };
  auto traj = march(
      grid, steps, cfg, trackers, analysis::threshold_J(model.eps, k0),
      [&](double dt) {
        state = step_jinxin(model, state, dt, cfg);
        limit = steppers.at(dt).step(limit);
      },
      source, [&] { return state.t; }, [&] { return state.u; });
  traj.final_state = std::move(state);
  traj.final_limit = std::move(limit);
  return traj;
}

std::string trajectory_summary_json(const Trajectory& trajectory, std::span<const TrackerSpec> trackers,
                                    const std::string& config_hash, bool include_wall_time) {
  nlohmann::ordered_json j;
  j["config_hash"] = config_hash;
  j["dt"] = trajectory.dt;
  j["step_count"] = trajectory.steps;
  j["t"] = trajectory.times;
  nlohmann::ordered_json norms = nlohmann::ordered_json::object();
  for (const auto& t : trackers) norms[t.label()] = trajectory.values(t);
  j["norms"] = std::move(norms);
  if (include_wall_time) j["wall_time"] = trajectory.wall_seconds;
  return j.dump(2);
}

}  // namespace relaxlab::integrators
