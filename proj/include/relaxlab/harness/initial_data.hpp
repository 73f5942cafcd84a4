#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "relaxlab/models/jinxin.hpp"

namespace relaxlab::harness {

enum class DataKind { gaussian_bump, random_spectrum, single_mode };
enum class Preparation { darcy_prepared, ill_prepared };

DataKind parse_data_kind(const std::string& name);
std::string data_kind_name(DataKind kind);
Preparation parse_preparation(const std::string& name);
std::string preparation_name(Preparation prep);

struct InitialDataSpec {
  DataKind kind = DataKind::gaussian_bump;
  /// gaussian_bump, single_mode: peak value of u_0.
  /// random_spectrum: sup_j 2^{j sigma1} ||Delta_j u_0||_{L^2} over the low window.
  double amplitude = 0.1;
  double sigma1 = -0.5;
  std::uint64_t seed = 1;
  /// single_mode integer wavevector (one entry per axis; missing entries are 0).
  std::vector<int> mode{1};
  /// gaussian_bump standard deviation in physical units.
  double width = 1.0;
  Preparation preparation = Preparation::darcy_prepared;
  /// ill_prepared: ||v_0||_{L^inf} = v_scale * eps^{-v_eps_power}.
  double v_scale = 0.0;
  double v_eps_power = 0.0;
  /// Small-data guard: ||u_0||_{L^inf} must not exceed eta.
  double eta = 1.0;
};

struct InitialData {
  models::JinXinState state;
  models::LimitState limit;
};

/// Builds (u_0, v_0) and the matching limit datum u*_0 = u_0.
///
/// darcy_prepared sets v_0 = -a grad u_0 + f(u_0). ill_prepared draws v_0
/// from an independent profile of the same kind (shifted bump, quarter-period
/// shifted mode, or a second random draw), scaled in L^inf.
/// random_spectrum fills |c(kappa)| ~ |kappa|^{-(sigma1 + d/2)} with random
/// Hermitian phases, tapered by chi(2^{-(J+2)} |kappa|) so every low-window
/// block is complete, and clipped at the dealiasing limit.
InitialData make_initial_data(const InitialDataSpec& spec, const spectral::Grid& grid, const models::Flux& flux,
                              std::span<const double> a, double eps, int k0 = 0);

/// Raw u_0 profile (n components) for a spec.
spectral::SpectralField make_profile(const InitialDataSpec& spec, const spectral::Grid& grid, int components,
                                     double eps, int k0, std::uint64_t stream);

/// Throws ConfigError unless -d/p <= sigma1 <= d/p - 1.
void require_decay_sigma1(double sigma1, int d, double p);

/// 2^{j sigma1} ||Delta_j u||_{L^2} for j = j_min..J, plus the max/min ratio
/// over blocks whose annulus lies above the fundamental shell.
struct FlatnessReport {
  std::vector<int> blocks;
  std::vector<double> weighted_norms;
  double ratio = 0.0;
};
FlatnessReport low_window_flatness(const spectral::SpectralField& u, double sigma1, int J);

}  // namespace relaxlab::harness
