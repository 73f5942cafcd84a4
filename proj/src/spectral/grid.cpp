#include "relaxlab/spectral/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace relaxlab::spectral {

struct Grid::Tables {
  std::vector<std::vector<double>> kappa;  // per axis, per flat index
  std::vector<double> kappa_norm;
  std::vector<unsigned char> dealias;
  std::vector<std::size_t> partner;
};

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(int dim, int points_per_axis, double box_length)
    : dim_(dim), n_(points_per_axis), length_(box_length) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dimension must be 1, 2 or 3");
  if (!is_power_of_two(points_per_axis) || points_per_axis < 8)
    throw std::invalid_argument("points per axis must be a power of two >= 8, got " +
                                std::to_string(points_per_axis));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("box length must be positive and finite");

  size_ = 1;
  for (int a = 0; a < dim_; ++a) size_ *= static_cast<std::size_t>(n_);

  auto tables = std::make_shared<Tables>();
  tables->kappa.assign(dim_, std::vector<double>(size_));
  tables->kappa_norm.resize(size_);
  tables->dealias.resize(size_);
  tables->partner.resize(size_);

  const double k0 = kappa_fundamental();
  for (std::size_t flat = 0; flat < size_; ++flat) {
    double norm2 = 0.0;
    bool keep = true;
    std::size_t rest = flat;
    std::size_t stride = size_;
    std::size_t partner = 0;
    for (int a = 0; a < dim_; ++a) {
      stride /= static_cast<std::size_t>(n_);
      const int idx = static_cast<int>(rest / stride);
      rest %= stride;
      const int k = mode(idx);
      const double kap = k0 * k;
      tables->kappa[a][flat] = kap;
      norm2 += kap * kap;
      if (3 * std::abs(k) > n_) keep = false;
      const int pidx = (n_ - idx) % n_;
      partner += static_cast<std::size_t>(pidx) * stride;
    }
    tables->kappa_norm[flat] = std::sqrt(norm2);
    tables->dealias[flat] = keep ? 1 : 0;
    tables->partner[flat] = partner;
  }
  tables_ = std::move(tables);
}

double Grid::cell_volume() const noexcept { return std::pow(spacing(), dim_); }

double Grid::volume() const noexcept { return std::pow(length_, dim_); }

int Grid::mode_of(std::size_t flat, int axis) const noexcept {
  std::size_t stride = 1;
  for (int a = dim_ - 1; a > axis; --a) stride *= static_cast<std::size_t>(n_);
  return mode(static_cast<int>((flat / stride) % static_cast<std::size_t>(n_)));
}

std::size_t Grid::flat_index(std::span<const int> modes) const {
  if (static_cast<int>(modes.size()) != dim_) throw std::invalid_argument("mode vector has wrong dimension");
  std::size_t flat = 0;
  for (int a = 0; a < dim_; ++a) {
    const int k = modes[a];
    if (k < -n_ / 2 || k >= n_ / 2) throw std::out_of_range("mode outside [-N/2, N/2)");
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>((k + n_) % n_);
  }
  return flat;
}

double Grid::kappa_fundamental() const noexcept { return 2.0 * std::numbers::pi / length_; }

double Grid::kappa_nyquist() const noexcept { return std::numbers::pi * n_ / length_; }

double Grid::kappa_max_magnitude() const noexcept { return kappa_nyquist() * std::sqrt(double(dim_)); }

std::span<const double> Grid::kappa(int axis) const noexcept { return tables_->kappa[axis]; }

std::span<const double> Grid::kappa_norm() const noexcept { return tables_->kappa_norm; }

std::span<const unsigned char> Grid::dealias_mask() const noexcept { return tables_->dealias; }

std::span<const std::size_t> Grid::partner() const noexcept { return tables_->partner; }

bool Grid::operator==(const Grid& other) const noexcept {
  return dim_ == other.dim_ && n_ == other.n_ && length_ == other.length_;
}

}  // namespace relaxlab::spectral
