#include "relaxlab/harness/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "relaxlab/analysis/linear_theory.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/harness/functional.hpp"
#include "relaxlab/harness/oracles.hpp"
#include "relaxlab/harness/parallel.hpp"
#include "relaxlab/spectral/norm_series.hpp"

namespace relaxlab::harness {

using integrators::StepperConfig;
using integrators::TrackerSpec;
using integrators::Trajectory;
using spectral::Window;

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string fixed(double x, int digits = 4) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

spectral::Grid make_grid(const ExperimentSpec& spec) {
  return spectral::Grid(spec.model.d, spec.grid.N, spec.grid.L);
}

std::string run_label(const ExperimentSpec& spec, std::size_t data_index, double eps) {
  std::string label = "eps=" + num(eps);
  if (spec.data.size() > 1) label += ",data=" + std::to_string(data_index);
  return label;
}

InitialDataSpec seeded(const ExperimentSpec& spec, std::size_t index) {
  InitialDataSpec d = spec.data.at(index);
  if (d.seed == 0) d.seed = spec.seed + index;
  return d;
}

void append_rows(Report& report, const std::string& prefix, const Trajectory& traj,
                 std::span<const TrackerSpec> trackers) {
  for (const auto& tr : trackers) {
    const auto values = traj.values(tr);
    for (std::size_t k = 0; k < values.size(); ++k)
      report.norms.push_back({traj.times[k], prefix + "/" + tr.field, tr.s, tr.p, tr.r,
                              integrators::window_name(tr.window), values[k]});
  }
}

std::vector<TrackerSpec> merge_trackers(std::vector<TrackerSpec> base, std::span<const TrackerSpec> extra) {
  for (const auto& t : extra) {
    const bool present = std::any_of(base.begin(), base.end(), [&](const TrackerSpec& b) {
      return b.field == t.field && b.s == t.s && b.p == t.p && b.r == t.r && b.window == t.window;
    });
    if (!present) base.push_back(t);
  }
  return base;
}

/// Log-linear interpolation of (t, y) at time x (y > 0).
double interpolate_log(std::span<const double> t, std::span<const double> y, double x) {
  auto it = std::lower_bound(t.begin(), t.end(), x);
  if (it == t.begin()) return y.front();
  if (it == t.end()) return y.back();
  const std::size_t i = static_cast<std::size_t>(it - t.begin());
  const double w = (x - t[i - 1]) / (t[i] - t[i - 1]);
  return std::exp((1.0 - w) * std::log(y[i - 1]) + w * std::log(y[i]));
}

void apply_expectations(const ExperimentSpec& spec, Report& report) {
  for (const auto& e : spec.expect) {
    double value = std::numeric_limits<double>::quiet_NaN();
    if (const auto* f = report.fit(e.name))
      value = f->exponent;
    else if (const auto* s = report.scalar(e.name))
      value = *s;
    if (std::isnan(value)) {
      report.add_check("expect " + e.name, false, "no fit or scalar named '" + e.name + "'");
      continue;
    }
    const bool ok = value >= e.min && value <= e.max;
    report.add_check("expect " + e.name, ok, num(value) + " in [" + num(e.min) + ", " + num(e.max) + "]");
  }
}

}  // namespace

double mode_symbol(const ExperimentSpec& spec) {
  const int d = spec.model.d;
  auto mode = spec.study.mode;
  mode.resize(d, 0);
  double S = 0.0;
  const double kf = 2.0 * std::numbers::pi / spec.grid.L;
  for (int i = 0; i < d; ++i) S += spec.model.a.at(i) * std::pow(kf * mode[i], 2);
  return S;
}

double decay_cutoff_time(const ExperimentSpec& spec) {
  const double amin = *std::min_element(spec.model.a.begin(), spec.model.a.end());
  const double r = spec.grid.L / (2.0 * std::numbers::pi);
  return spec.study.cutoff_factor * r * r / amin;
}

std::vector<double> overdamping_grid(double S, int points) {
  if (points < 2) throw std::invalid_argument("overdamping grid needs at least 2 points");
  const int peak = static_cast<int>(std::floor(0.4 * points));
  const double base = S > 0.0 ? 2.0 * std::sqrt(S) : 1.0;
  std::vector<double> out;
  for (int i = 0; i < points; ++i) out.push_back(base * std::exp2((i - peak) / 3.0));
  return out;
}

Report run_simulate(const ExperimentSpec& spec) {
  Report report;
  report.experiment = "simulate";
  const auto grid = make_grid(spec);
  const auto flux = spec.model.make_flux();
  const double p = spec.study.p;
  auto trackers = spec.trackers;
  if (spec.study.functional || spec.study.uniformity) trackers = merge_trackers(functional_trackers(spec.model.d, p), trackers);
  if (trackers.empty()) trackers.push_back(TrackerSpec{});

  const std::size_t n_eps = spec.model.eps.size();
  const std::size_t runs = spec.data.size() * n_eps;
  std::vector<std::optional<Trajectory>> trajs(runs);
  parallel_for(runs, spec.jobs, [&](std::size_t i) {
    const std::size_t di = i / n_eps;
    const double eps = spec.model.eps[i % n_eps];
    auto data = make_initial_data(seeded(spec, di), grid, flux, spec.model.a, eps, spec.model.k0);
    trajs[i] = integrators::evolve(spec.model.model(eps), std::move(data.state), spec.stepper, trackers, spec.model.k0);
  });

  std::vector<std::vector<double>> ratios(spec.data.size());
  for (std::size_t i = 0; i < runs; ++i) {
    const std::size_t di = i / n_eps;
    const double eps = spec.model.eps[i % n_eps];
    const auto& traj = *trajs[i];
    const auto label = run_label(spec, di, eps);
    append_rows(report, label, traj, trackers);
    report.scalars.push_back({label + "/max_u_inf", traj.max_u_linf});
    report.add_check(label + " small data", traj.max_u_linf <= spec.data[di].eta,
                     "max ||u||_inf = " + num(traj.max_u_linf) + ", eta = " + num(spec.data[di].eta));
    if (spec.study.functional || spec.study.uniformity) {
      const auto X = functional_X(traj, eps, p);
      const auto hist = functional_X_history(traj, eps, p);
      for (std::size_t k = 0; k < hist.size(); ++k)
        report.norms.push_back({traj.times[k], label + "/X", 0.0, p, 1.0, "full", hist[k]});
      for (const auto& term : X.terms) report.scalars.push_back({label + "/X/" + term.name, term.value});
      report.scalars.push_back({label + "/X0", X.initial});
      report.scalars.push_back({label + "/X_ratio", X.ratio});
      ratios[di].push_back(X.ratio);
      Curve c{label, {}, {}};
      for (std::size_t k = 0; k < hist.size(); ++k) {
        c.x.push_back(traj.times[k]);
        c.y.push_back(hist[k] / X.initial);
      }
      report.curves.push_back(std::move(c));
      if (spec.study.uniformity) {
        const auto it = std::lower_bound(traj.times.begin(), traj.times.end(), spec.study.growth_after);
        if (it != traj.times.end()) {
          const double base = hist[static_cast<std::size_t>(it - traj.times.begin())];
          const double growth = hist.back() / base - 1.0;
          report.scalars.push_back({label + "/X_growth_after", growth});
          report.add_check(label + " X growth after t=" + num(spec.study.growth_after),
                           growth <= spec.study.growth_tolerance,
                           "growth " + fixed(100 * growth, 3) + "% (limit " + num(100 * spec.study.growth_tolerance) + "%)");
        }
      }
    } else {
      const auto values = traj.values(trackers.front());
      report.curves.push_back({label, traj.times, values});
    }
    if (spec.study.dump_fields && traj.final_state) {
      report.fields.push_back({label + "_u", traj.final_state->u});
      report.fields.push_back({label + "_v", traj.final_state->v});
    }
  }
  if (spec.study.uniformity) {
    for (std::size_t di = 0; di < ratios.size(); ++di) {
      const auto [lo, hi] = std::minmax_element(ratios[di].begin(), ratios[di].end());
      const double spread = *hi / *lo;
      const std::string tag = spec.data.size() > 1 ? "data=" + std::to_string(di) + " " : "";
      report.scalars.push_back({tag + "X_ratio_spread", spread});
      report.add_check(tag + "X ratio spread across eps", spread < spec.study.ratio_spread,
                       "max/min of X(t_end)/X0 = " + fixed(spread) + " (limit " + num(spec.study.ratio_spread) + ")");
    }
    report.y_label = "X_p(t) / X_p0";
  } else {
    report.y_label = trackers.front().label();
  }
  report.loglog = false;
  return report;
}

Report run_epsilon_convergence(const ExperimentSpec& spec) {
  Report report;
  report.experiment = "epsilon-convergence";
  const auto grid = make_grid(spec);
  const auto flux = spec.model.make_flux();
  const double p = spec.study.p;
  const int d = spec.model.d;
  const TrackerSpec du{"du", d / p - 1.0, p, 1.0, Window::Kind::full};
  const TrackerSpec dv{"dv", d / p, p, 1.0, Window::Kind::full};
  const TrackerSpec Zl{"Z", d / p, p, 1.0, Window::Kind::low};
  const auto trackers = merge_trackers({du, dv, Zl}, spec.trackers);
  const auto& eps_list = spec.model.eps;
  if (eps_list.size() < 3) throw ConfigError("model.eps", "an eps sweep needs at least 3 values");

  std::vector<std::optional<Trajectory>> trajs(eps_list.size());
  std::vector<std::string> failures(eps_list.size());
  parallel_for(eps_list.size(), spec.jobs, [&](std::size_t i) {
    const double eps = eps_list[i];
    auto data = make_initial_data(seeded(spec, 0), grid, flux, spec.model.a, eps, spec.model.k0);
    try {
      trajs[i] = integrators::co_evolve(spec.model.model(eps), std::move(data.state), std::move(data.limit),
                                        spec.stepper, trackers, spec.model.k0);
    } catch (const DivergenceError& e) {
      failures[i] = e.what();
    } catch (const CflError& e) {
      failures[i] = e.what();
    }
  });

  // a diverged run aborts the sweep; the finished runs are still reported
  std::vector<double> eps_done, sup_du, int_dv, int_Z;
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    const auto label = run_label(spec, 0, eps_list[i]);
    if (!trajs[i]) {
      report.add_check(label + " run", false, failures[i]);
      continue;
    }
    const auto& traj = *trajs[i];
    eps_done.push_back(eps_list[i]);
    append_rows(report, label, traj, trackers);
    sup_du.push_back(spectral::time_norm(traj.times, traj.values(du), INFINITY));
    int_dv.push_back(spectral::time_norm(traj.times, traj.values(dv), 1.0));
    int_Z.push_back(spectral::time_norm(traj.times, traj.values(Zl), 1.0));
    report.scalars.push_back({label + "/sup_du", sup_du.back()});
    report.scalars.push_back({label + "/int_dv", int_dv.back()});
    report.scalars.push_back({label + "/int_Z_low", int_Z.back()});
    report.scalars.push_back({label + "/max_u_inf", traj.max_u_linf});
  }
  if (eps_done.size() < eps_list.size()) return report;
  const auto [lo, hi] = std::minmax_element(eps_list.begin(), eps_list.end());
  auto fit = [&](const char* name, const std::vector<double>& y) {
    try {
      report.fits.push_back({name, fit_rate(eps_list, y, *lo, *hi, FitVariable::eps, 3)});
    } catch (const std::invalid_argument& e) {
      report.add_check(std::string("fit ") + name, false, e.what());
    }
  };
  fit("sup_du", sup_du);
  fit("int_dv", int_dv);
  fit("int_Z_low", int_Z);
  report.curves = {{"sup_t ||u-u*||", eps_list, sup_du}, {"int ||v-v*||", eps_list, int_dv}, {"int ||Z^l||", eps_list, int_Z}};
  report.x_label = "eps";
  report.y_label = "difference";
  report.loglog = true;
  return report;
}

Report run_decay_study(const ExperimentSpec& spec) {
  Report report;
  report.experiment = "decay";
  if (spec.model.eps.size() != 1) throw ConfigError("model.eps", "decay is a single-eps experiment");
  const double eps = spec.model.eps.front();
  const double p = spec.study.p;
  const int d = spec.model.d;
  const auto& data0 = spec.data.at(0);
  if (data0.kind == DataKind::random_spectrum) require_decay_sigma1(data0.sigma1, d, p);
  const double cutoff = decay_cutoff_time(spec);
  if (spec.study.fit_hi > cutoff * (1.0 + 1e-12))
    throw ConfigError("study.fit_hi", "fit window ends after the torus cutoff time t_c = " + num(cutoff) +
                                          " = " + num(spec.study.cutoff_factor) + " (L/2pi)^2 / min a");
  if (spec.stepper.t_end < spec.study.fit_hi) throw ConfigError("stepper.t_end", "must reach study.fit_hi");
  if (!(spec.study.fit_lo < spec.study.fit_hi)) throw ConfigError("study.fit_lo", "must be below study.fit_hi");

  std::vector<TrackerSpec> base;
  for (double s : spec.study.sigma) base.push_back({"u", s, p, 1.0, Window::Kind::full});
  const TrackerSpec high{"u", 0.5 * d, 2.0, 1.0, Window::Kind::high};
  base.push_back(high);
  if (spec.study.difference)
    for (double s : spec.study.sigma) base.push_back({"du", s, p, 1.0, Window::Kind::full});
  const auto trackers = merge_trackers(base, spec.trackers);

  const auto grid = make_grid(spec);
  const auto flux = spec.model.make_flux();
  std::vector<double> eps_runs{eps};
  if (spec.study.half_eps_check) {
    if (!spec.study.difference) throw ConfigError("study.half_eps_check", "requires study.difference");
    eps_runs.push_back(0.5 * eps);
  }
  std::vector<std::optional<Trajectory>> trajs(eps_runs.size());
  parallel_for(eps_runs.size(), spec.jobs, [&](std::size_t i) {
    auto data = make_initial_data(seeded(spec, 0), grid, flux, spec.model.a, eps_runs[i], spec.model.k0);
    const auto model = spec.model.model(eps_runs[i]);
    if (spec.study.difference)
      trajs[i] = integrators::co_evolve(model, std::move(data.state), std::move(data.limit), spec.stepper, trackers,
                                        spec.model.k0);
    else
      trajs[i] = integrators::evolve(model, std::move(data.state), spec.stepper, trackers, spec.model.k0);
  });

  const auto& traj = *trajs[0];
  for (std::size_t i = 0; i < eps_runs.size(); ++i) append_rows(report, run_label(spec, 0, eps_runs[i]), *trajs[i], trackers);
  report.scalars.push_back({"cutoff_time", cutoff});
  report.scalars.push_back({"max_u_inf", traj.max_u_linf});
  report.add_check("small data", traj.max_u_linf <= data0.eta,
                   "max ||u||_inf = " + num(traj.max_u_linf) + ", eta = " + num(data0.eta));

  const double lo = spec.study.fit_lo, hi = spec.study.fit_hi;
  for (double s : spec.study.sigma) {
    const TrackerSpec t{"u", s, p, 1.0, Window::Kind::full};
    const auto values = traj.values(t);
    report.fits.push_back({"u[sigma=" + num(s) + "]", fit_rate(traj.times, values, lo, hi, FitVariable::time)});
    report.curves.push_back({"||u||_B^" + num(s), traj.times, values});
    if (spec.study.difference) {
      const TrackerSpec td{"du", s, p, 1.0, Window::Kind::full};
      const auto dvals = traj.values(td);
      report.fits.push_back({"du[sigma=" + num(s) + "]", fit_rate(traj.times, dvals, lo, hi, FitVariable::time)});
      report.curves.push_back({"||u-u*||_B^" + num(s), traj.times, dvals});
      if (spec.study.half_eps_check) {
        const auto& half = *trajs[1];
        const auto hvals = half.values(td);
        double acc = 0.0;
        std::size_t count = 0;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
          if (traj.times[k] < lo || traj.times[k] > hi) continue;
          acc += std::log(dvals[k] / interpolate_log(half.times, hvals, traj.times[k]));
          ++count;
        }
        const double ratio = count ? std::exp(acc / count) : 0.0;
        report.scalars.push_back({"half_eps_level_ratio[sigma=" + num(s) + "]", ratio});
        report.add_check("halving eps halves the difference level", std::abs(ratio / 2.0 - 1.0) <= spec.study.half_eps_tolerance,
                         "level ratio " + fixed(ratio) + " (target 2 within " + num(100 * spec.study.half_eps_tolerance) + "%)");
        report.curves.push_back({"||u-u*|| at eps/2", half.times, hvals});
      }
    }
  }
  const auto hvals = traj.values(high);
  report.curves.push_back({"||u^h||_B^{d/2}", traj.times, hvals});
  try {
    report.fits.push_back({"u_high", fit_rate(traj.times, hvals, lo, hi, FitVariable::time)});
  } catch (const std::invalid_argument&) {
    report.scalars.push_back({"u_high_vanished", 1.0});
  }
  report.x_label = "t";
  report.y_label = "norm";
  report.loglog = true;
  return report;
}

Report run_overdamping_scan(const ExperimentSpec& spec) {
  Report report;
  report.experiment = "overdamping";
  const int d = spec.model.d;
  const spectral::Grid grid(d, spec.study.overdamping_N, spec.grid.L);
  const double S = mode_symbol(spec);
  const auto inv_eps = overdamping_grid(S, spec.study.points);
  const auto flux = models::Flux::zero(spec.model.n, d);
  const int peak_index = static_cast<int>(std::floor(0.4 * spec.study.points));

  std::vector<double> measured(inv_eps.size()), analytic(inv_eps.size());
  parallel_for(inv_eps.size(), spec.jobs, [&](std::size_t i) {
    const double eps = 1.0 / inv_eps[i];
    const double omega = analysis::decay_rate_omega(S, eps);
    analytic[i] = omega;
    InitialDataSpec data;
    data.kind = DataKind::single_mode;
    data.mode = spec.study.mode;
    data.amplitude = 1.0;
    data.preparation = Preparation::ill_prepared;
    data.v_scale = 0.0;
    data.eta = 2.0;
    auto init = make_initial_data(data, grid, flux, spec.model.a, eps, 0);
    StepperConfig cfg = spec.stepper;
    const double t_lo = omega > 0.0 ? spec.study.window_lo / omega : spec.study.window_lo;
    const double t_hi = omega > 0.0 ? spec.study.window_hi / omega : spec.study.window_hi;
    cfg.t_end = t_hi;
    cfg.dt_max = 1.0 / (spec.study.steps_per_time * std::max(omega, std::sqrt(S) / eps));
    cfg.dt_min = std::min(cfg.dt_min, cfg.dt_max);
    cfg.layer_factor = 0.0;
    cfg.dense_until = 0.0;
    cfg.sample_ratio = 0.0;
    const auto plan = integrators::step_plan(cfg.t_end, integrators::jinxin_time_step(spec.model.model(eps), grid, cfg));
    cfg.sample_every = static_cast<int>(std::max<std::size_t>(1, plan.first / 400));
    const TrackerSpec w{"w", 0.0, 2.0, 1.0, Window::Kind::full};
    const double mean0 = std::abs(init.state.u.mean(0));
    const auto traj = integrators::evolve(spec.model.model(eps), std::move(init.state), cfg, std::span(&w, 1), 0);
    if (S > 0.0) {
      measured[i] = exponential_rate(traj.times, traj.values(w), t_lo, t_hi);
    } else {
      // the homogeneous norms ignore the mean; the zero mode is read off directly
      measured[i] = -std::log(std::abs(traj.final_state->u.mean(0)) / mean0) / traj.times.back();
    }
  });

  std::ostringstream csv;
  csv.precision(17);
  csv << "inv_eps,omega_measured,omega_analytic,regime\n";
  double worst = 0.0;
  for (std::size_t i = 0; i < inv_eps.size(); ++i) {
    const double disc = inv_eps[i] * inv_eps[i] - 4.0 * S;
    const double scale = std::max(std::pow(inv_eps[i], 4), 16.0 * S * S);
    const auto regime = std::abs(disc) <= 1e-12 * scale ? analysis::Regime::transitional
                                                          : (disc > 0 ? analysis::Regime::low : analysis::Regime::high);
    csv << inv_eps[i] << ',' << measured[i] << ',' << analytic[i] << ',' << analysis::regime_name(regime) << '\n';
    if (analytic[i] > 0.0) worst = std::max(worst, std::abs(measured[i] / analytic[i] - 1.0));
  }
  report.table_name = "overdamping.csv";
  report.table_csv = csv.str();
  report.curves = {{"measured", inv_eps, measured}, {"analytic", inv_eps, analytic}};
  report.x_label = "1/eps";
  report.y_label = "omega";
  report.loglog = false;
  report.scalars.push_back({"S", S});
  if (S > 0.0) {
    report.scalars.push_back({"max_rel_error", worst});
    report.add_check("measured omega within 2% of analytic", worst <= 0.02, "worst relative error " + fixed(100 * worst, 3) + "%");
    const double peak = measured[peak_index];
    const double peak_err = std::abs(peak / (2.0 * S) - 1.0);
    report.scalars.push_back({"peak_inv_eps", inv_eps[peak_index]});
    report.scalars.push_back({"peak_omega", peak});
    report.add_check("peak omega at 1/eps = 2 sqrt(S) equals 2S", peak_err <= 0.02,
                     "omega " + fixed(peak, 5) + " vs " + fixed(2 * S, 5));
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i + 1 < inv_eps.size(); ++i)
      if ((measured[i + 1] > measured[i]) != (analytic[i + 1] > analytic[i])) ++mismatches;
    report.add_check("measured omega rises then falls like the analytic curve", mismatches == 0,
                     std::to_string(mismatches) + " monotonicity mismatches");
  } else {
    double rate = 0.0;
    for (double m : measured) rate = std::max(rate, std::abs(m));
    report.scalars.push_back({"max_abs_rate", rate});
    report.add_check("conserved mode does not decay", rate <= 1e-10, "rate " + num(rate));
  }
  return report;
}

Report run_spectrum(const ExperimentSpec& spec) {
  Report report;
  report.experiment = "spectrum";
  const double S = mode_symbol(spec);
  if (!(S > 0.0)) throw ConfigError("study.mode", "spectrum needs a nonzero mode");
  const int points = std::max(spec.study.points, 100) | 1;  // odd, so the midpoint is the peak
  std::vector<double> inv_eps;
  const double peak = 2.0 * std::sqrt(S);
  for (int i = 0; i < points; ++i) inv_eps.push_back(peak * std::exp2(-4.0 + 8.0 * i / (points - 1)));
  const auto curve = analysis::overdamping_curve(S, inv_eps);
  std::ostringstream csv;
  analysis::write_overdamping_csv(csv, curve);
  report.table_name = "overdamping.csv";
  report.table_csv = csv.str();

  Curve c{"omega", {}, {}};
  bool shape = true;
  double max_omega = 0.0;
  for (std::size_t i = 0; i < curve.size(); ++i) {
    c.x.push_back(curve[i].inv_eps);
    c.y.push_back(curve[i].omega);
    max_omega = std::max(max_omega, curve[i].omega);
    if (i == 0) continue;
    const double prev = curve[i - 1].omega, cur = curve[i].omega;
    const double tol = 1e-12 * std::max(1.0, cur);
    if (curve[i].inv_eps <= peak && cur < prev - tol) shape = false;
    if (curve[i - 1].inv_eps >= peak && cur > prev + tol) shape = false;
  }
  report.curves.push_back(std::move(c));
  report.add_check("omega nondecreasing up to 2 sqrt(S), nonincreasing after", shape, "S = " + num(S));
  report.add_check("max omega equals 2S", std::abs(max_omega / (2.0 * S) - 1.0) <= 1e-12,
                   "max " + num(max_omega) + " vs " + num(2 * S));
  report.scalars.push_back({"S", S});
  report.scalars.push_back({"peak_omega", analysis::decay_rate_omega(S, 1.0 / peak)});
  report.scalars.push_back({"small_eps_omega", analysis::decay_rate_omega(S, 1e-4)});
  report.x_label = "1/eps";
  report.y_label = "omega";
  report.loglog = false;
  return report;
}

Report run_experiment(const ExperimentSpec& spec) {
  Report report = [&] {
    if (spec.experiment == "simulate") return run_simulate(spec);
    if (spec.experiment == "epsilon-convergence") return run_epsilon_convergence(spec);
    if (spec.experiment == "decay") return run_decay_study(spec);
    if (spec.experiment == "overdamping") return run_overdamping_scan(spec);
    if (spec.experiment == "spectrum") return run_spectrum(spec);
    if (spec.experiment == "selftest") return run_selftest(spec.seed);
    throw ConfigError("experiment", "unknown experiment '" + spec.experiment + "'");
  }();
  apply_expectations(spec, report);
  return report;
}

}  // namespace relaxlab::harness
