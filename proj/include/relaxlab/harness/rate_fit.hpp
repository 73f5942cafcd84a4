#pragma once

#include <span>
#include <string>

namespace relaxlab::harness {

enum class FitVariable { time, eps };

/// Least-squares slope of log y against log x~, x~ = 1 + t for time fits and
/// x~ = eps for eps fits.
struct RateFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double r_squared = 0.0;
  double stderr_exponent = 0.0;
  std::size_t points = 0;
  /// r_squared >= kPowerLawR2; a low value flags data that is not a power law.
  bool power_law = false;

  static constexpr double kPowerLawR2 = 0.99;
};

/// Uses the samples with lo <= x <= hi. Throws std::invalid_argument with
/// fewer than `min_points` points in the window or a nonpositive y there.
RateFit fit_rate(std::span<const double> x, std::span<const double> y, double lo, double hi, FitVariable variable,
                 std::size_t min_points = 5);

/// -d log y / dt by least squares over lo <= t <= hi (exponential decay rate).
double exponential_rate(std::span<const double> t, std::span<const double> y, double lo, double hi);

std::string describe(const RateFit& fit);

}  // namespace relaxlab::harness
