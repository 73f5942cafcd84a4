#include "relaxlab/spectral/ops.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "relaxlab/errors.hpp"
#include "relaxlab/spectral/transform.hpp"

namespace relaxlab::spectral {

void dealias(SpectralField& field) noexcept {
  const auto mask = field.grid().dealias_mask();
  for (int c = 0; c < field.components(); ++c) {
    auto comp = field.component(c);
    for (std::size_t k = 0; k < comp.size(); ++k)
      if (!mask[k]) comp[k] = Complex{};
  }
}

SpectralField dealiased(SpectralField field) noexcept {
  dealias(field);
  return field;
}

SpectralField derivative(const SpectralField& field, int axis) {
  const Grid& grid = field.grid();
  if (axis < 0 || axis >= grid.dim()) throw RangeError("derivative axis out of range");
  const auto kappa = grid.kappa(axis);
  const double nyquist = grid.kappa_fundamental() * (-grid.points_per_axis() / 2);
  SpectralField out(grid, field.components());
  for (int c = 0; c < field.components(); ++c) {
    const auto src = field.component(c);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < src.size(); ++k) {
      if (kappa[k] == nyquist) continue;
      dst[k] = Complex{-kappa[k] * src[k].imag(), kappa[k] * src[k].real()};
    }
  }
  return out;
}

SpectralField apply_symbol(const SpectralField& field, const std::function<double(std::size_t)>& symbol) {
  SpectralField out(field.grid(), field.components());
  const std::size_t size = field.grid().size();
  std::vector<double> m(size);
  for (std::size_t k = 0; k < size; ++k) m[k] = symbol(k);
  for (int c = 0; c < field.components(); ++c) {
    const auto src = field.component(c);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < size; ++k) dst[k] = m[k] * src[k];
  }
  return out;
}

SpectralField weighted_laplacian(const SpectralField& field, std::span<const double> weights) {
  const Grid& grid = field.grid();
  if (static_cast<int>(weights.size()) != grid.dim()) throw GridMismatch("one weight per axis required");
  return apply_symbol(field, [&](std::size_t k) {
    double s = 0.0;
    for (int a = 0; a < grid.dim(); ++a) s += weights[a] * grid.kappa(a)[k] * grid.kappa(a)[k];
    return -s;
  });
}

SpectralField nonlinear_product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("product operands live on different grids");
  const int na = a.components();
  const int nb = b.components();
  if (na != nb && na != 1 && nb != 1) throw GridMismatch("product needs equal component counts or a scalar factor");
  const Grid& grid = a.grid();
  const std::size_t size = grid.size();
  const int n = std::max(na, nb);

  const auto pa = to_physical(dealiased(a));
  const auto pb = to_physical(dealiased(b));
  std::vector<double> prod(static_cast<std::size_t>(n) * size);
  for (int c = 0; c < n; ++c) {
    const double* xa = pa.data() + (na == 1 ? 0 : c) * size;
    const double* xb = pb.data() + (nb == 1 ? 0 : c) * size;
    double* dst = prod.data() + c * size;
    for (std::size_t k = 0; k < size; ++k) dst[k] = xa[k] * xb[k];
  }
  auto out = from_physical(grid, n, prod);
  dealias(out);
  return out;
}

double lp_norm(const SpectralField& field, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponent must be >= 1");
  const Grid& grid = field.grid();
  if (p == 2.0) {
    double s = 0.0;
    for (const auto& c : field.coeffs()) s += std::norm(c);
    return std::sqrt(s * grid.volume());
  }
  const auto values = to_physical(field);
  const std::size_t size = grid.size();
  const int comps = field.components();
  double acc = 0.0;
  for (std::size_t k = 0; k < size; ++k) {
    double m2 = 0.0;
    for (int c = 0; c < comps; ++c) m2 += values[c * size + k] * values[c * size + k];
    const double m = std::sqrt(m2);
    if (std::isinf(p))
      acc = std::max(acc, m);
    else
      acc += std::pow(m, p);
  }
  if (std::isinf(p)) return acc;
  return std::pow(acc * grid.cell_volume(), 1.0 / p);
}

}  // namespace relaxlab::spectral
