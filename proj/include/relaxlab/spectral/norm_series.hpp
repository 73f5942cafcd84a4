#pragma once

#include <span>
#include <vector>

#include "relaxlab/spectral/dyadic.hpp"

namespace relaxlab::spectral {

/// Time-indexed table of per-block L^p norms ||Delta_j w(t)||_{L^p} for one
/// tracked field. Rows are sample instants (strictly increasing), columns
/// are dyadic indices j_min..j_max.
class NormSeries {
 public:
  NormSeries(int j_min, int j_max, double p);

  void append(double t, std::vector<double> block_values);

  int j_min() const noexcept { return j_min_; }
  int j_max() const noexcept { return j_max_; }
  double p() const noexcept { return p_; }
  std::size_t samples() const noexcept { return times_.size(); }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> row(std::size_t sample) const { return rows_.at(sample); }

  /// Besov value of one sample row.
  WindowedNorm besov_at(std::size_t sample, double s, double r, const Window& window) const;
  /// Series truncated to the first `count` samples.
  NormSeries prefix(std::size_t count) const;

 private:
  int j_min_;
  int j_max_;
  double p_;
  std::vector<double> times_;
  std::vector<std::vector<double>> rows_;
};

/// || t -> g(t) ||_{L^rho(0,T)} on the sample instants, trapezoid rule for
/// finite rho, maximum for rho = infinity.
double time_norm(std::span<const double> times, std::span<const double> values, double rho);

/// Chemin-Lerner norm || {2^{js} ||Delta_j w||_{L^rho_T(L^p)}}_j ||_{l^r}.
/// Needs at least two samples when rho is finite.
WindowedNorm chemin_lerner_norm(const NormSeries& series, double rho, double s, double r,
                                const Window& window = Window::full());

/// Ordinary Lebesgue-Besov norm || ||w(t)||_{B^s_{p,r}} ||_{L^rho_T}.
double lebesgue_besov_norm(const NormSeries& series, double rho, double s, double r,
                           const Window& window = Window::full());

}  // namespace relaxlab::spectral
