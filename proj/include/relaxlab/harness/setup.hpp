#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "relaxlab/harness/initial_data.hpp"
#include "relaxlab/integrators/evolve.hpp"

namespace relaxlab::harness {

struct ModelSetup {
  /// burgers1d | burgers2d | zero | polynomial
  std::string flux = "burgers1d";
  std::vector<models::Monomial> terms;  // polynomial only
  int n = 1;
  int d = 1;
  std::vector<double> a{1.0};
  std::vector<double> eps{1.0};
  int k0 = 0;

  models::Flux make_flux() const;
  models::JinXinModel model(double eps_value) const;
  models::LimitModel limit() const;
};

struct GridSetup {
  int N = 64;
  double L = 2.0 * std::numbers::pi;
};

/// Experiment-specific knobs; each experiment reads the subset it needs.
struct StudySetup {
  double p = 2.0;
  // decay
  std::vector<double> sigma{0.0};
  double fit_lo = 5.0;
  double fit_hi = 500.0;
  double cutoff_factor = 0.05;
  bool difference = false;
  bool half_eps_check = false;
  double half_eps_tolerance = 0.25;
  // overdamping / spectrum
  std::vector<int> mode{1};
  int points = 20;
  double window_lo = 50.0;  // in units of 1/omega
  double window_hi = 100.0;
  double steps_per_time = 50.0;  // dt = 1 / (steps_per_time * max(omega, sqrt(S)/eps))
  int overdamping_N = 8;
  // simulate
  bool functional = false;
  bool uniformity = false;
  double growth_after = 1.0;
  double growth_tolerance = 0.05;
  double ratio_spread = 3.0;
  bool dump_fields = false;
};

/// Bounds on a named fit exponent or scalar in the report.
struct Expectation {
  std::string name;
  double min = -std::numeric_limits<double>::infinity();
  double max = std::numeric_limits<double>::infinity();
};

struct ExperimentSpec {
  std::string experiment = "simulate";
  ModelSetup model;
  GridSetup grid;
  std::vector<InitialDataSpec> data{InitialDataSpec{}};
  integrators::StepperConfig stepper;
  std::vector<integrators::TrackerSpec> trackers;
  StudySetup study;
  std::vector<Expectation> expect;
  std::uint64_t seed = 1;
  int jobs = 1;
};

}  // namespace relaxlab::harness
