#include "relaxlab/harness/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "relaxlab/analysis/linear_theory.hpp"
#include "relaxlab/errors.hpp"
#include "relaxlab/spectral/dyadic.hpp"
#include "relaxlab/spectral/ops.hpp"
#include "relaxlab/spectral/transform.hpp"

namespace relaxlab::harness {

using spectral::Complex;
using spectral::Grid;
using spectral::SpectralField;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Periodized Gaussian exp(-|x - c|^2 / (2 w^2)) summed over neighbouring images.
SpectralField gaussian_bump(const Grid& grid, int components, double width, double shift) {
  const int d = grid.dim();
  const double L = grid.length();
  std::vector<double> values(static_cast<std::size_t>(components) * grid.size());
  for (std::size_t x = 0; x < grid.size(); ++x) {
    double g = 1.0;
    for (int i = 0; i < d; ++i) {
      const double c = 0.5 * L + (i == 0 ? shift : 0.0);
      double axis_sum = 0.0;
      for (int image = -2; image <= 2; ++image) {
        const double dx = spectral::coordinate(grid, x, i) - c + image * L;
        axis_sum += std::exp(-dx * dx / (2.0 * width * width));
      }
      g *= axis_sum;
    }
    for (int c = 0; c < components; ++c) values[c * grid.size() + x] = g / (c + 1);
  }
  return spectral::from_physical(grid, components, values);
}

/// cos(kappa . x + phase), component c scaled by 1/(c + 1).
SpectralField single_mode(const Grid& grid, int components, std::vector<int> mode, double phase) {
  mode.resize(grid.dim(), 0);
  const int half = grid.points_per_axis() / 2;
  for (int m : mode)
    if (std::abs(m) >= half) throw std::invalid_argument("single_mode wavevector beyond the grid's Nyquist index");
  SpectralField out(grid, components);
  std::vector<int> neg(mode.size());
  for (std::size_t i = 0; i < mode.size(); ++i) neg[i] = -mode[i];
  const std::size_t k = grid.flat_index(mode);
  const std::size_t kn = grid.flat_index(neg);
  for (int c = 0; c < components; ++c) {
    const double amp = 1.0 / (c + 1);
    if (k == kn) {
      out.at(c, k) = amp * std::cos(phase);
    } else {
      out.at(c, k) = 0.5 * amp * std::polar(1.0, phase);
      out.at(c, kn) = 0.5 * amp * std::polar(1.0, -phase);
    }
  }
  return out;
}

SpectralField random_spectrum(const Grid& grid, int components, double sigma1, int J, std::uint64_t seed) {
  const int d = grid.dim();
  const auto kappa = grid.kappa_norm();
  const auto mask = grid.dealias_mask();
  const auto partner = grid.partner();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  SpectralField out(grid, components);
  for (int c = 0; c < components; ++c) {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const std::size_t p = partner[k];
      if (p < k || kappa[k] == 0.0 || !mask[k]) continue;
      const double taper = spectral::chi_profile(std::ldexp(kappa[k], -(J + 2)));
      if (taper == 0.0) continue;
      const double mag = taper * std::pow(kappa[k], -(sigma1 + 0.5 * d));
      const double theta = angle(rng);
      if (p == k) {
        out.at(c, k) = mag * (std::cos(theta) >= 0.0 ? 1.0 : -1.0);
      } else {
        out.at(c, k) = std::polar(mag, theta);
        out.at(c, p) = std::polar(mag, -theta);
      }
    }
  }
  return out;
}

double sup_weighted_low(const SpectralField& u, double sigma1, int J) {
  const auto report = low_window_flatness(u, sigma1, J);
  double m = 0.0;
  for (double w : report.weighted_norms) m = std::max(m, w);
  return m;
}

}  // namespace

DataKind parse_data_kind(const std::string& name) {
  if (name == "gaussian_bump") return DataKind::gaussian_bump;
  if (name == "random_spectrum") return DataKind::random_spectrum;
  if (name == "single_mode") return DataKind::single_mode;
  throw std::invalid_argument("unknown data kind '" + name + "' (gaussian_bump | random_spectrum | single_mode)");
}

std::string data_kind_name(DataKind kind) {
  switch (kind) {
    case DataKind::gaussian_bump:
      return "gaussian_bump";
    case DataKind::random_spectrum:
      return "random_spectrum";
    case DataKind::single_mode:
      break;
  }
  return "single_mode";
}

Preparation parse_preparation(const std::string& name) {
  if (name == "darcy_prepared") return Preparation::darcy_prepared;
  if (name == "ill_prepared") return Preparation::ill_prepared;
  throw std::invalid_argument("unknown preparation '" + name + "' (darcy_prepared | ill_prepared)");
}

std::string preparation_name(Preparation prep) {
  return prep == Preparation::darcy_prepared ? "darcy_prepared" : "ill_prepared";
}

void require_decay_sigma1(double sigma1, int d, double p) {
  const double lo = -d / p;
  const double hi = d / p - 1.0;
  if (sigma1 < lo - 1e-14 || sigma1 > hi + 1e-14)
    throw ConfigError("data.sigma1", "decay data need -d/p <= sigma1 <= d/p - 1, i.e. sigma1 in [" +
                                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

FlatnessReport low_window_flatness(const SpectralField& u, double sigma1, int J) {
  const auto& grid = u.grid();
  const auto& scheme = spectral::DyadicScheme::for_grid(grid);
  const auto norms = spectral::block_norms(u, 2.0);
  const double k_dealias = grid.kappa_fundamental() * std::floor(grid.points_per_axis() / 3.0);
  FlatnessReport report;
  double lo = kInf, hi = 0.0;
  for (int j = scheme.j_min(); j <= std::min(J, scheme.j_max()); ++j) {
    const double w = std::pow(2.0, j * sigma1) * norms[j - scheme.j_min()];
    report.blocks.push_back(j);
    report.weighted_norms.push_back(w);
    const bool resolved = std::ldexp(0.75, j) >= grid.kappa_fundamental() && std::ldexp(8.0 / 3.0, j) <= k_dealias;
    if (resolved) {
      lo = std::min(lo, w);
      hi = std::max(hi, w);
    }
  }
  report.ratio = (hi > 0.0 && lo < kInf) ? hi / lo : kInf;
  return report;
}

SpectralField make_profile(const InitialDataSpec& spec, const Grid& grid, int components, double eps, int k0,
                           std::uint64_t stream) {
  SpectralField u(grid, components);
  const double L = grid.length();
  switch (spec.kind) {
    case DataKind::gaussian_bump: {
      if (!(spec.width > 0.0)) throw ConfigError("data.width", "must be positive");
      u = gaussian_bump(grid, components, spec.width, stream == 0 ? 0.0 : 0.25 * L);
      break;
    }
    case DataKind::single_mode:
      u = single_mode(grid, components, spec.mode, stream == 0 ? 0.0 : -0.5 * std::numbers::pi);
      break;
    case DataKind::random_spectrum: {
      const int J = analysis::threshold_J(eps, k0);
      u = random_spectrum(grid, components, spec.sigma1, J, spec.seed + 0x9e3779b97f4a7c15ULL * stream);
      break;
    }
  }
  spectral::dealias(u);
  u.symmetrize();
  return u;
}

InitialData make_initial_data(const InitialDataSpec& spec, const Grid& grid, const models::Flux& flux,
                              std::span<const double> a, double eps, int k0) {
  if (!(eps > 0.0)) throw ConfigError("model.eps", "eps > 0 required");
  if (!(spec.amplitude >= 0.0)) throw ConfigError("data.amplitude", "must be nonnegative");
  const int n = flux.components();
  const int d = flux.directions();
  if (grid.dim() != d) throw GridMismatch("grid dimension differs from flux directions");

  auto u = make_profile(spec, grid, n, eps, k0, 0);
  if (spec.kind == DataKind::random_spectrum) {
    const double m = sup_weighted_low(u, spec.sigma1, analysis::threshold_J(eps, k0));
    if (m > 0.0) u *= spec.amplitude / m;
  } else {
    const double m = spectral::lp_norm(u, kInf);
    if (m > 0.0) u *= spec.amplitude / m;
  }
  const double sup = spectral::lp_norm(u, kInf);
  if (sup > spec.eta)
    throw ConfigError("data.amplitude", "||u_0||_inf = " + std::to_string(sup) + " exceeds the small-data bound eta = " +
                                            std::to_string(spec.eta));

  SpectralField v(grid, d * n);
  if (spec.preparation == Preparation::darcy_prepared) {
    v = models::darcy_velocity(flux, a, u);
  } else {
    std::vector<SpectralField> blocks;
    for (int i = 0; i < d; ++i) blocks.push_back(make_profile(spec, grid, n, eps, k0, 1 + i));
    v = SpectralField::stack(blocks);
    const double m = spectral::lp_norm(v, kInf);
    const double target = spec.v_scale * std::pow(eps, -spec.v_eps_power);
    if (m > 0.0) v *= target / m;
  }
  spectral::dealias(v);
  return {models::JinXinState{u, v, 0.0}, models::LimitState{u, 0.0}};
}

}  // namespace relaxlab::harness
