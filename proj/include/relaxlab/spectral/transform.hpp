#pragma once

#include <span>
#include <vector>

#include "relaxlab/spectral/field.hpp"

namespace relaxlab::spectral {

/// Physical values -> Fourier-series amplitudes (scaled by 1/N^d).
void forward_transform(const Grid& grid, std::span<const Complex> physical, std::span<Complex> spectral);
/// Fourier-series amplitudes -> physical values.
void inverse_transform(const Grid& grid, std::span<const Complex> spectral, std::span<Complex> physical);

/// Real physical values, component-major (components * grid.size()).
///
/// Components are transformed two at a time packed as re + i*im, which is
/// exact for Hermitian input.
std::vector<double> to_physical(const SpectralField& field);
SpectralField from_physical(const Grid& grid, int components, std::span<const double> values);

/// Physical sample coordinates x_axis for a flat index.
double coordinate(const Grid& grid, std::size_t flat, int axis);

}  // namespace relaxlab::spectral
