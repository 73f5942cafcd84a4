#pragma once

#include <span>
#include <string>
#include <vector>

#include "relaxlab/spectral/field.hpp"

namespace relaxlab::spectral {

/// Smooth radial cutoff: 1 on |xi| <= 3/4, 0 on |xi| >= 4/3, monotone and
/// C-infinity in between (logistic gluing of exp(-1/s) bumps).
double chi_profile(double r) noexcept;
/// phi(r) = chi(r/2) - chi(r); supported in 3/4 <= r <= 8/3.
double phi_profile(double r) noexcept;

/// Frequency window of a Besov sum. Low keeps j <= threshold, high keeps
/// j >= threshold - 1; the two overlap on {threshold - 1, threshold}.
struct Window {
  enum class Kind { full, low, high };
  Kind kind = Kind::full;
  int threshold = 0;

  static Window full() { return {Kind::full, 0}; }
  static Window low(int j) { return {Kind::low, j}; }
  static Window high(int j) { return {Kind::high, j}; }
  bool contains(int j) const noexcept;
  std::string name() const;
};

/// Homogeneous Littlewood-Paley decomposition on a grid's frequency lattice.
///
/// Dyadic indices refer to physical wavenumbers, so block j lives on
/// (3/4) 2^j <= |kappa| <= (8/3) 2^j. j_min is the first block whose annulus
/// reaches the lowest lattice shell 2*pi/L; j_max is the first block for which
/// chi(2^{-j_max-1} kappa) = 1 on the whole lattice, which makes
/// chi(2^{-j_min} .) + sum_j phi(2^{-j} .) an exact partition of unity on
/// every lattice wavevector.
class DyadicScheme {
 public:
  explicit DyadicScheme(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  int j_min() const noexcept { return j_min_; }
  int j_max() const noexcept { return j_max_; }
  int block_count() const noexcept { return j_max_ - j_min_ + 1; }
  bool in_range(int j) const noexcept { return j >= j_min_ && j <= j_max_; }

  /// phi(2^{-j} kappa) per flat index.
  std::span<const double> multiplier(int j) const;
  /// chi(2^{-j_min} kappa) per flat index (non-zero only on the mean mode).
  std::span<const double> base_multiplier() const noexcept { return base_; }

  /// Per-mode view: the mode belongs to blocks first_block[k] and
  /// first_block[k] + 1 with weights weight_first/weight_second.
  std::span<const int> first_block() const noexcept { return first_block_; }
  std::span<const double> weight_first() const noexcept { return weight_first_; }
  std::span<const double> weight_second() const noexcept { return weight_second_; }

  /// Shared scheme for a grid (cached; thread-safe).
  static const DyadicScheme& for_grid(const Grid& grid);

 private:
  Grid grid_;
  int j_min_;
  int j_max_;
  std::vector<std::vector<double>> multipliers_;
  std::vector<double> base_;
  std::vector<int> first_block_;
  std::vector<double> weight_first_;
  std::vector<double> weight_second_;
};

/// Delta_j field.
SpectralField dyadic_block(const SpectralField& field, int j);
/// S_J field = sum_{j <= J-1} Delta_j field (base block included);
/// J may equal j_max + 1.
SpectralField lowfreq_cutoff(const SpectralField& field, int J);
/// The base cutoff chi(2^{-j_min} kappa) field (carries only the mean mode).
SpectralField base_block(const SpectralField& field);

/// ||Delta_j field||_{L^p} for j = j_min..j_max. p = 2 takes an O(size)
/// Parseval fast path; other p transform each block.
std::vector<double> block_norms(const SpectralField& field, double p);

/// Result of a windowed norm; `empty_window` flags a window with no blocks.
struct WindowedNorm {
  double value = 0.0;
  bool empty_window = false;
  operator double() const noexcept { return value; }
};

/// || {2^{js} m_j}_j ||_{l^r} over the window, with m_j indexed from j_min.
WindowedNorm besov_from_blocks(std::span<const double> block_values, int j_min, double s, double r,
                               const Window& window);

/// Homogeneous Besov (semi)norm; the mean mode is excluded.
WindowedNorm besov_norm(const SpectralField& field, double s, double p, double r,
                        const Window& window = Window::full());

}  // namespace relaxlab::spectral
