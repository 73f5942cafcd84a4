#pragma once

#include <complex>
#include <span>
#include <vector>

#include "relaxlab/spectral/grid.hpp"

namespace relaxlab::spectral {

using Complex = std::complex<double>;

/// n-component field stored as Fourier coefficients on a periodic grid.
///
/// Coefficients are Fourier-series amplitudes, u(x) = sum_k c_k exp(i kappa.x),
/// laid out component-major, then flat wavevector index (see Grid). Real
/// physical fields have Hermitian coefficients, c(-k) = conj(c(k)).
class SpectralField {
 public:
  SpectralField(Grid grid, int components);

  const Grid& grid() const noexcept { return grid_; }
  int components() const noexcept { return components_; }

  std::span<Complex> coeffs() noexcept { return coeffs_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> component(int c) noexcept;
  std::span<const Complex> component(int c) const noexcept;

  Complex& at(int c, std::size_t flat) noexcept { return coeffs_[c * grid_.size() + flat]; }
  const Complex& at(int c, std::size_t flat) const noexcept { return coeffs_[c * grid_.size() + flat]; }

  /// Mean (k = 0) coefficient of component c.
  Complex mean(int c) const noexcept { return at(c, 0); }

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double scale) noexcept;
  SpectralField& operator*=(Complex scale) noexcept;
  /// this += alpha * x
  SpectralField& axpy(double alpha, const SpectralField& x);

  void set_zero() noexcept;
  bool all_finite() const noexcept;
  double max_abs() const noexcept;
  /// Largest |c(-k) - conj(c(k))| over all modes and components.
  double hermitian_defect() const noexcept;
  /// Projects onto Hermitian fields: c(k) <- (c(k) + conj(c(-k)))/2.
  void symmetrize() noexcept;

  /// Copy of components [first, first + count).
  SpectralField slice(int first, int count) const;
  /// Concatenates component lists of fields sharing one grid.
  static SpectralField stack(std::span<const SpectralField> parts);

 private:
  void require_compatible(const SpectralField& other) const;

  Grid grid_;
  int components_;
  std::vector<Complex> coeffs_;
};

SpectralField operator+(SpectralField lhs, const SpectralField& rhs);
SpectralField operator-(SpectralField lhs, const SpectralField& rhs);
SpectralField operator*(double scale, SpectralField field);

}  // namespace relaxlab::spectral
