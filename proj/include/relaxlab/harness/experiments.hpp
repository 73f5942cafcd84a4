#pragma once

#include <vector>

#include "relaxlab/harness/report.hpp"
#include "relaxlab/harness/setup.hpp"

namespace relaxlab::harness {

/// Plain trajectories over data x eps; optional uniform-functional checks.
Report run_simulate(const ExperimentSpec& spec);

/// Co-runs relaxation and limit for every eps on one datum; records
/// sup_t ||u - u*||_{B^{d/p-1}_{p,1}}, int ||v - v*||_{B^{d/p}_{p,1}} dt and
/// int ||Z^l||_{B^{d/p}_{p,1}} dt and fits each against eps.
Report run_epsilon_convergence(const ExperimentSpec& spec);

/// Power-law decay fits on [fit_lo, fit_hi] for one eps.
Report run_decay_study(const ExperimentSpec& spec);

/// Measured vs analytic decay rate of one linear mode over a 1/eps sweep.
Report run_overdamping_scan(const ExperimentSpec& spec);

/// Analytic overdamping curve and its shape check.
Report run_spectrum(const ExperimentSpec& spec);

/// Dispatches on spec.experiment (selftest included) and applies spec.expect.
Report run_experiment(const ExperimentSpec& spec);

/// cutoff_factor * (L / 2 pi)^2 / min a_i
double decay_cutoff_time(const ExperimentSpec& spec);

/// 2 sqrt(S) 2^{(i - i_peak)/3}, i = 0..points-1, i_peak = floor(0.4 points);
/// the peak abscissa is always on the grid.
std::vector<double> overdamping_grid(double S, int points);

/// S(kappa) of the configured single mode.
double mode_symbol(const ExperimentSpec& spec);

}  // namespace relaxlab::harness
