#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "relaxlab/harness/report.hpp"

namespace relaxlab::harness {

struct SpectralSelftest {
  double partition_defect = 0.0;     // max |chi_base + sum_j phi_j - 1| over the lattice
  double reconstruction_defect = 0.0;  // max |u - (base + sum_j Delta_j u)| / max |u|
  double disjointness_defect = 0.0;  // max |phi_j phi_k| for |j - k| >= 2
  double bernstein2_min = 0.0, bernstein2_max = 0.0;
  double bernstein_inf_min = 0.0, bernstein_inf_max = 0.0;
  double hermitian_defect = 0.0;     // relative, after derivative/product/blocks
  double transform_defect = 0.0;     // FFT vs dense DFT, relative
  int fields = 0;
  double seconds = 0.0;
};

/// Partition, disjointness, Bernstein ratios ||grad Delta_j u||_p / (2^j ||Delta_j u||_p)
/// for p in {2, inf} over `fields` random band-limited fields, Hermitian
/// preservation and a dense-DFT transform check.
SpectralSelftest spectral_selftest(int N, int d, int fields, std::uint64_t seed);

struct PropagatorOracle {
  double charpoly_residual = 0.0;  // max |det(A - lambda I)| / (1 + ||A||^{d+1})
  double vieta_defect = 0.0;       // relative
  double semigroup_defect = 0.0;   // relative, random samples
  double defective_semigroup_defect = 0.0;  // d = 1, a = 1, eps = 1, |xi| = 1/2
  double rk4_defect = 0.0;         // d = 1, a = 1, eps = 1, xi = 1, t = 1
  double rk4_random_defect = 0.0;  // mildly stiff random samples, relative
  int samples = 0;
  double seconds = 0.0;
};

PropagatorOracle propagator_oracle(int samples, std::uint64_t seed);

struct OrderStudy {
  std::vector<double> dt;
  std::vector<double> error;
  double order = 0.0;          // least-squares slope of log error vs log dt
  double min_pair_order = 0.0; // smallest log2(e(dt)/e(dt/2))
};

/// imex_ssp2 (or imex_euler) on one linear mode (d = 1, a = 1, kappa = 1,
/// f = 0, Darcy data) against the exact propagator at T = 1 with
/// dt = 2^{-6..-10} eps; error measured on (u, eps v).
OrderStudy imex_order_study(double eps, const std::string& scheme = "imex_ssp2");

/// if_rk2 self-convergence on 1D Burgers (smooth data, N = 64) against a
/// run with dt/64 of the finest step.
OrderStudy limit_order_study();

/// Relative drift of the mean of u over `steps` steps of both systems.
double conservation_drift(int steps, std::uint64_t seed);

/// Full property suite (selftest experiment).
Report run_selftest(std::uint64_t seed);

}  // namespace relaxlab::harness
