#pragma once

#include <string>
#include <vector>

#include "relaxlab/integrators/evolve.hpp"

namespace relaxlab::harness {

struct FunctionalTerm {
  std::string name;
  double weight = 0.0;
  double norm = 0.0;
  double value = 0.0;  // weight * norm
};

/// The eight weighted Chemin-Lerner terms of the uniform energy functional
/// X_p(t) plus the initial functional X_{p,0}. Low terms use L^p blocks over
/// j <= J, high terms use L^2 blocks over j >= J - 1.
struct FunctionalX {
  std::vector<FunctionalTerm> terms;
  double total = 0.0;
  double initial = 0.0;
  double ratio = 0.0;  // total / initial
};

/// Trackers the functional needs: u and v at p and at 2.
std::vector<integrators::TrackerSpec> functional_trackers(int d, double p);

/// Evaluated over the whole trajectory. Throws std::invalid_argument listing
/// the required trackers when a series is missing.
FunctionalX functional_X(const integrators::Trajectory& trajectory, double eps, double p);

/// X_p(t_k) at every sample instant (running maxima and trapezoid integrals).
std::vector<double> functional_X_history(const integrators::Trajectory& trajectory, double eps, double p);

}  // namespace relaxlab::harness
