#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "relaxlab/spectral/field.hpp"
#include "relaxlab/spectral/ops.hpp"
#include "relaxlab/spectral/transform.hpp"

namespace testing {

using relaxlab::spectral::Grid;
using relaxlab::spectral::SpectralField;

/// Field sampled from f(component, x) on the grid points.
inline SpectralField sample(const Grid& grid, int comps, const std::function<double(int, std::span<const double>)>& f) {
  std::vector<double> values(static_cast<std::size_t>(comps) * grid.size());
  std::vector<double> x(grid.dim());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    for (int a = 0; a < grid.dim(); ++a) x[a] = relaxlab::spectral::coordinate(grid, k, a);
    for (int c = 0; c < comps; ++c) values[c * grid.size() + k] = f(c, x);
  }
  return relaxlab::spectral::from_physical(grid, comps, values);
}

/// Dealiased random real field with mean zero.
inline SpectralField random_field(const Grid& grid, int comps, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> values(static_cast<std::size_t>(comps) * grid.size());
  for (auto& v : values) v = normal(rng);
  auto f = relaxlab::spectral::from_physical(grid, comps, values);
  relaxlab::spectral::dealias(f);
  for (int c = 0; c < comps; ++c) f.at(c, 0) = 0.0;
  return f;
}

inline double max_diff(const SpectralField& a, const SpectralField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) m = std::max(m, std::abs(a.coeffs()[i] - b.coeffs()[i]));
  return m;
}

}  // namespace testing
