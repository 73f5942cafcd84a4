#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace relaxlab::spectral {

/// Uniform periodic grid on the box [0, L)^d with N points per axis.
///
/// Wavevectors are stored in FFT order along each axis: index i maps to the
/// integer mode k = i for i < N/2 and k = i - N otherwise; the physical
/// wavenumber is 2*pi*k/L. Flat indices are row-major with axis 0 slowest.
/// Per-mode tables (|kappa|, components, dealias mask) are computed once and
/// shared between copies.
class Grid {
 public:
  Grid(int dim, int points_per_axis, double box_length);

  int dim() const noexcept { return dim_; }
  int points_per_axis() const noexcept { return n_; }
  double length() const noexcept { return length_; }
  std::size_t size() const noexcept { return size_; }
  double spacing() const noexcept { return length_ / n_; }
  double cell_volume() const noexcept;
  double volume() const noexcept;

  /// Integer mode number for an axis index in FFT order.
  int mode(int axis_index) const noexcept { return axis_index < n_ / 2 ? axis_index : axis_index - n_; }
  /// Integer mode along `axis` of the flat index.
  int mode_of(std::size_t flat, int axis) const noexcept;
  std::size_t flat_index(std::span<const int> modes) const;

  /// 2*pi/L, the smallest nonzero wavenumber magnitude.
  double kappa_fundamental() const noexcept;
  /// pi*N/L, the largest per-axis wavenumber magnitude.
  double kappa_nyquist() const noexcept;
  /// Largest |kappa| over the lattice (corner of the box in d > 1).
  double kappa_max_magnitude() const noexcept;

  std::span<const double> kappa(int axis) const noexcept;
  std::span<const double> kappa_norm() const noexcept;
  /// 1 where every |k_axis| <= N/3, 0 elsewhere.
  std::span<const unsigned char> dealias_mask() const noexcept;
  /// Flat index of the wavevector -k (Hermitian partner).
  std::span<const std::size_t> partner() const noexcept;

  bool operator==(const Grid& other) const noexcept;

 private:
  struct Tables;
  int dim_;
  int n_;
  double length_;
  std::size_t size_;
  std::shared_ptr<const Tables> tables_;
};

}  // namespace relaxlab::spectral
