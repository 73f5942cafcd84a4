#pragma once

#include <functional>

#include "relaxlab/spectral/field.hpp"

namespace relaxlab::spectral {

/// Zeroes every mode with some |k_axis| > N/3 (2/3 rule).
void dealias(SpectralField& field) noexcept;
SpectralField dealiased(SpectralField field) noexcept;

/// d/dx_axis: multiplies coefficients by i*kappa_axis. The Nyquist mode is
/// sent to zero so the result stays Hermitian.
SpectralField derivative(const SpectralField& field, int axis);

/// Multiplies every component by a real radial-or-not symbol m(kappa vector).
SpectralField apply_symbol(const SpectralField& field, const std::function<double(std::size_t flat)>& symbol);

/// sum_i a_i d^2/dx_i^2
SpectralField weighted_laplacian(const SpectralField& field, std::span<const double> weights);

/// Dealiased pointwise product. Component counts must match, or one side
/// must be scalar (broadcast).
SpectralField nonlinear_product(const SpectralField& a, const SpectralField& b);

/// L^p norm of the physical field by rectangle-rule quadrature; the pointwise
/// magnitude is the Euclidean norm across components. p = 2 uses Parseval.
/// p = infinity is passed as std::numeric_limits<double>::infinity().
double lp_norm(const SpectralField& field, double p);

}  // namespace relaxlab::spectral
