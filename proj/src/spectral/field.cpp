#include "relaxlab/spectral/field.hpp"

#include <algorithm>
#include <cmath>

#include "relaxlab/errors.hpp"

namespace relaxlab::spectral {

SpectralField::SpectralField(Grid grid, int components)
    : grid_(std::move(grid)), components_(components) {
  if (components < 1) throw std::invalid_argument("field needs at least one component");
  coeffs_.assign(static_cast<std::size_t>(components) * grid_.size(), Complex{});
}

std::span<Complex> SpectralField::component(int c) noexcept {
  return std::span<Complex>(coeffs_).subspan(c * grid_.size(), grid_.size());
}

std::span<const Complex> SpectralField::component(int c) const noexcept {
  return std::span<const Complex>(coeffs_).subspan(c * grid_.size(), grid_.size());
}

void SpectralField::require_compatible(const SpectralField& other) const {
  if (!(grid_ == other.grid_)) throw GridMismatch("fields live on different grids");
  if (components_ != other.components_) throw GridMismatch("fields have different component counts");
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_compatible(other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double scale) noexcept {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField& SpectralField::operator*=(Complex scale) noexcept {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

SpectralField& SpectralField::axpy(double alpha, const SpectralField& x) {
  require_compatible(x);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += alpha * x.coeffs_[i];
  return *this;
}

void SpectralField::set_zero() noexcept { std::fill(coeffs_.begin(), coeffs_.end(), Complex{}); }

bool SpectralField::all_finite() const noexcept {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](const Complex& c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); });
}

double SpectralField::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double SpectralField::hermitian_defect() const noexcept {
  const auto partner = grid_.partner();
  double worst = 0.0;
  for (int c = 0; c < components_; ++c) {
    const auto comp = component(c);
    for (std::size_t k = 0; k < comp.size(); ++k)
      worst = std::max(worst, std::abs(comp[partner[k]] - std::conj(comp[k])));
  }
  return worst;
}

void SpectralField::symmetrize() noexcept {
  const auto partner = grid_.partner();
  for (int c = 0; c < components_; ++c) {
    auto comp = component(c);
    for (std::size_t k = 0; k < comp.size(); ++k) {
      const std::size_t p = partner[k];
      if (p < k) continue;
      const Complex avg = 0.5 * (comp[k] + std::conj(comp[p]));
      comp[k] = avg;
      comp[p] = std::conj(avg);
    }
  }
}

SpectralField SpectralField::slice(int first, int count) const {
  if (first < 0 || count < 1 || first + count > components_) throw RangeError("component slice out of range");
  SpectralField out(grid_, count);
  std::copy_n(coeffs_.begin() + first * grid_.size(), count * grid_.size(), out.coeffs_.begin());
  return out;
}

SpectralField SpectralField::stack(std::span<const SpectralField> parts) {
  if (parts.empty()) throw std::invalid_argument("cannot stack an empty field list");
  int total = 0;
  for (const auto& p : parts) {
    if (!(p.grid() == parts.front().grid())) throw GridMismatch("stacked fields live on different grids");
    total += p.components();
  }
  SpectralField out(parts.front().grid(), total);
  auto dst = out.coeffs_.begin();
  for (const auto& p : parts) dst = std::copy(p.coeffs_.begin(), p.coeffs_.end(), dst);
  return out;
}

SpectralField operator+(SpectralField lhs, const SpectralField& rhs) { return lhs += rhs; }

SpectralField operator-(SpectralField lhs, const SpectralField& rhs) { return lhs -= rhs; }

SpectralField operator*(double scale, SpectralField field) { return field *= scale; }

}  // namespace relaxlab::spectral
