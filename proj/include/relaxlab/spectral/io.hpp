#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "relaxlab/spectral/field.hpp"

namespace relaxlab::spectral {

/// Layout tag written into every field container.
inline constexpr const char* kFieldLayout = "complex interleaved, row-major wavevector";

/// Binary field container, little-endian:
///   "RLXF" | u32 version(1) | u32 d | u32 n | u32 N | f64 L |
///   u32 layout length | layout bytes | n*N^d pairs (f64 re, f64 im)
/// Coefficients are component-major, wavevectors row-major in FFT order.
void write_field(std::ostream& out, const SpectralField& field);
SpectralField read_field(std::istream& in);
void save_field(const std::string& path, const SpectralField& field);
SpectralField load_field(const std::string& path);

/// CSV with columns j, two_pow_j_physical, norm.
void write_block_norms_csv(std::ostream& out, std::span<const double> block_values, int j_min);

}  // namespace relaxlab::spectral
