#include "relaxlab/spectral/dyadic.hpp"

#include <climits>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "relaxlab/errors.hpp"
#include "relaxlab/spectral/ops.hpp"
#include "relaxlab/spectral/transform.hpp"

namespace relaxlab::spectral {

namespace {

constexpr double kInner = 0.75;
constexpr double kOuter = 4.0 / 3.0;
constexpr int kNoBlock = INT_MIN;

double smooth_step_down(double s) noexcept {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / (1.0 - s));
  const double b = std::exp(-1.0 / s);
  return a / (a + b);
}

std::string range_message(int j, const DyadicScheme& scheme) {
  return "dyadic index " + std::to_string(j) + " outside resolvable window [" + std::to_string(scheme.j_min()) +
         ", " + std::to_string(scheme.j_max()) + "]";
}

}  // namespace

double chi_profile(double r) noexcept { return smooth_step_down((std::abs(r) - kInner) / (kOuter - kInner)); }

double phi_profile(double r) noexcept { return chi_profile(0.5 * r) - chi_profile(r); }

bool Window::contains(int j) const noexcept {
  switch (kind) {
    case Kind::low:
      return j <= threshold;
    case Kind::high:
      return j >= threshold - 1;
    case Kind::full:
      break;
  }
  return true;
}

std::string Window::name() const {
  switch (kind) {
    case Kind::low:
      return "low";
    case Kind::high:
      return "high";
    case Kind::full:
      break;
  }
  return "full";
}

DyadicScheme::DyadicScheme(const Grid& grid) : grid_(grid) {
  const double k_low = grid.kappa_fundamental();
  const double k_high = grid.kappa_max_magnitude();

  j_min_ = static_cast<int>(std::floor(std::log2(k_low * 3.0 / 8.0))) - 2;
  while (!(std::ldexp(8.0 / 3.0, j_min_) > k_low)) ++j_min_;
  while (std::ldexp(8.0 / 3.0, j_min_ - 1) > k_low) --j_min_;

  j_max_ = static_cast<int>(std::ceil(std::log2(k_high / 1.5))) - 2;
  while (std::ldexp(1.5, j_max_) < k_high) ++j_max_;

  const auto kappa = grid.kappa_norm();
  const std::size_t size = grid.size();
  multipliers_.assign(block_count(), std::vector<double>(size));
  for (int j = j_min_; j <= j_max_; ++j) {
    auto& m = multipliers_[j - j_min_];
    for (std::size_t k = 0; k < size; ++k) m[k] = phi_profile(std::ldexp(kappa[k], -j));
  }
  base_.resize(size);
  for (std::size_t k = 0; k < size; ++k) base_[k] = chi_profile(std::ldexp(kappa[k], -j_min_));

  first_block_.assign(size, kNoBlock);
  weight_first_.assign(size, 0.0);
  weight_second_.assign(size, 0.0);
  for (std::size_t k = 0; k < size; ++k) {
    for (int j = j_min_; j <= j_max_; ++j) {
      const double w = multipliers_[j - j_min_][k];
      if (w == 0.0) continue;
      if (first_block_[k] == kNoBlock) {
        first_block_[k] = j;
        weight_first_[k] = w;
      } else {
        weight_second_[k] = w;
      }
    }
  }
}

std::span<const double> DyadicScheme::multiplier(int j) const {
  if (!in_range(j)) throw RangeError(range_message(j, *this));
  return multipliers_[j - j_min_];
}

const DyadicScheme& DyadicScheme::for_grid(const Grid& grid) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::unique_ptr<DyadicScheme>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(grid.dim(), grid.points_per_axis(), grid.length());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, std::make_unique<DyadicScheme>(grid)).first;
  return *it->second;
}

namespace {

SpectralField multiply(const SpectralField& field, std::span<const double> m) {
  SpectralField out(field.grid(), field.components());
  for (int c = 0; c < field.components(); ++c) {
    const auto src = field.component(c);
    auto dst = out.component(c);
    for (std::size_t k = 0; k < src.size(); ++k) dst[k] = m[k] * src[k];
  }
  return out;
}

}  // namespace

SpectralField dyadic_block(const SpectralField& field, int j) {
  const auto& scheme = DyadicScheme::for_grid(field.grid());
  return multiply(field, scheme.multiplier(j));
}

SpectralField lowfreq_cutoff(const SpectralField& field, int J) {
  const auto& scheme = DyadicScheme::for_grid(field.grid());
  if (J < scheme.j_min() || J > scheme.j_max() + 1)
    throw RangeError("cutoff index " + std::to_string(J) + " outside [" + std::to_string(scheme.j_min()) + ", " +
                     std::to_string(scheme.j_max() + 1) + "]");
  std::vector<double> m(scheme.base_multiplier().begin(), scheme.base_multiplier().end());
  for (int j = scheme.j_min(); j < J; ++j) {
    const auto phi = scheme.multiplier(j);
    for (std::size_t k = 0; k < m.size(); ++k) m[k] += phi[k];
  }
  return multiply(field, m);
}

SpectralField base_block(const SpectralField& field) {
  return multiply(field, DyadicScheme::for_grid(field.grid()).base_multiplier());
}

std::vector<double> block_norms(const SpectralField& field, double p) {
  const auto& scheme = DyadicScheme::for_grid(field.grid());
  const Grid& grid = field.grid();
  std::vector<double> out(scheme.block_count(), 0.0);
  if (p == 2.0) {
    const auto first = scheme.first_block();
    const auto w1 = scheme.weight_first();
    const auto w2 = scheme.weight_second();
    const int j0 = scheme.j_min();
    for (int c = 0; c < field.components(); ++c) {
      const auto comp = field.component(c);
      for (std::size_t k = 0; k < comp.size(); ++k) {
        if (first[k] == kNoBlock) continue;
        const double e = std::norm(comp[k]);
        out[first[k] - j0] += w1[k] * w1[k] * e;
        if (w2[k] != 0.0) out[first[k] - j0 + 1] += w2[k] * w2[k] * e;
      }
    }
    for (auto& v : out) v = std::sqrt(v * grid.volume());
    return out;
  }
  for (int j = scheme.j_min(); j <= scheme.j_max(); ++j) out[j - scheme.j_min()] = lp_norm(dyadic_block(field, j), p);
  return out;
}

WindowedNorm besov_from_blocks(std::span<const double> block_values, int j_min, double s, double r,
                               const Window& window) {
  if (!(r >= 1.0)) throw std::invalid_argument("summation exponent must be >= 1");
  WindowedNorm result;
  double acc = 0.0;
  int used = 0;
  for (std::size_t i = 0; i < block_values.size(); ++i) {
    const int j = j_min + static_cast<int>(i);
    if (!window.contains(j)) continue;
    ++used;
    const double term = std::exp2(j * s) * block_values[i];
    if (std::isinf(r))
      acc = std::max(acc, term);
    else if (r == 1.0)
      acc += term;
    else
      acc += std::pow(term, r);
  }
  result.empty_window = used == 0;
  result.value = (std::isinf(r) || r == 1.0) ? acc : std::pow(acc, 1.0 / r);
  return result;
}

WindowedNorm besov_norm(const SpectralField& field, double s, double p, double r, const Window& window) {
  const auto& scheme = DyadicScheme::for_grid(field.grid());
  return besov_from_blocks(block_norms(field, p), scheme.j_min(), s, r, window);
}

}  // namespace relaxlab::spectral
