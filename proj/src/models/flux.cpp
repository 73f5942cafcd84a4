#include "relaxlab/models/flux.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "relaxlab/errors.hpp"
#include "relaxlab/spectral/ops.hpp"
#include "relaxlab/spectral/transform.hpp"

namespace relaxlab::models {

using spectral::SpectralField;

Flux::Flux(std::string id, int n, int d, std::vector<Monomial> terms)
    : id_(std::move(id)), n_(n), d_(d), terms_(std::move(terms)) {}

Flux Flux::zero(int n, int d) {
  if (n < 1 || n > kMaxComponents || d < 1) throw std::invalid_argument("zero flux: bad shape");
  return Flux("zero", n, d, {});
}

Flux Flux::burgers1d() { return Flux("burgers1d", 1, 1, {{0, 0, {2}, 0.5}}); }

Flux Flux::burgers2d() {
  std::vector<Monomial> terms = {
      {0, 0, {2, 0}, 1.0},  // f_1 = (u1 u1, u1 u2)
      {0, 1, {1, 1}, 1.0},
      {1, 0, {1, 1}, 1.0},  // f_2 = (u2 u1, u2 u2)
      {1, 1, {0, 2}, 1.0},
  };
  return Flux("burgers2d", 2, 2, std::move(terms));
}

Flux Flux::polynomial(int n, int d, std::vector<Monomial> terms, std::string id) {
  if (n < 1 || n > kMaxComponents) throw std::invalid_argument("flux component count must be in [1, 4]");
  if (d < 1 || d > 3) throw std::invalid_argument("flux direction count must be in [1, 3]");
  for (const auto& t : terms) {
    if (t.direction < 0 || t.direction >= d) throw std::invalid_argument("monomial direction out of range");
    if (t.component < 0 || t.component >= n) throw std::invalid_argument("monomial component out of range");
    if (static_cast<int>(t.exponents.size()) != n) throw std::invalid_argument("monomial needs one exponent per component");
    if (std::any_of(t.exponents.begin(), t.exponents.end(), [](int e) { return e < 0; }))
      throw std::invalid_argument("monomial exponents must be nonnegative");
    const int degree = std::accumulate(t.exponents.begin(), t.exponents.end(), 0);
    if (degree < 2 && t.coefficient != 0.0)
      throw std::invalid_argument(
          "flux must satisfy f_i(0) = 0 and d f_i/d u_k (0) = 0: monomial of degree " + std::to_string(degree) +
          " rejected");
  }
  std::erase_if(terms, [](const Monomial& t) { return t.coefficient == 0.0; });
  return Flux(std::move(id), n, d, std::move(terms));
}

void Flux::evaluate(std::span<const double> u, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& t : terms_) {
    double m = t.coefficient;
    for (int k = 0; k < n_; ++k)
      for (int e = 0; e < t.exponents[k]; ++e) m *= u[k];
    out[t.direction * n_ + t.component] += m;
  }
}

std::vector<double> Flux::evaluate(std::span<const double> u) const {
  if (static_cast<int>(u.size()) != n_) throw std::invalid_argument("flux argument has wrong length");
  std::vector<double> out(static_cast<std::size_t>(n_) * d_);
  evaluate(u, out);
  return out;
}

void Flux::jacobian(std::span<const double> u, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& t : terms_) {
    for (int k = 0; k < n_; ++k) {
      if (t.exponents[k] == 0) continue;
      double m = t.coefficient * t.exponents[k];
      for (int q = 0; q < n_; ++q) {
        const int e = t.exponents[q] - (q == k ? 1 : 0);
        for (int r = 0; r < e; ++r) m *= u[q];
      }
      out[(t.direction * n_ + t.component) * n_ + k] += m;
    }
  }
}

std::vector<std::string> builtin_flux_ids() { return {"burgers1d", "burgers2d", "zero"}; }

Flux make_builtin_flux(const std::string& id, int n, int d) {
  Flux f = [&] {
    if (id == "burgers1d") return Flux::burgers1d();
    if (id == "burgers2d") return Flux::burgers2d();
    if (id == "zero") return Flux::zero(n, d);
    throw std::invalid_argument("unknown flux id '" + id + "'");
  }();
  if (f.components() != n || f.directions() != d)
    throw std::invalid_argument("flux '" + id + "' has shape n=" + std::to_string(f.components()) +
                                ", d=" + std::to_string(f.directions()));
  return f;
}

SpectralField flux_field(const Flux& flux, const SpectralField& u) {
  const int n = flux.components();
  const int d = flux.directions();
  if (u.components() != n) throw GridMismatch("flux and field component counts differ");
  if (u.grid().dim() != d) throw GridMismatch("flux direction count differs from grid dimension");
  const auto& grid = u.grid();
  const std::size_t size = grid.size();
  if (flux.is_zero()) return SpectralField(grid, d * n);

  const auto phys = spectral::to_physical(spectral::dealiased(u));
  std::vector<double> values(static_cast<std::size_t>(d * n) * size);
  double point[Flux::kMaxComponents];
  std::vector<double> f(static_cast<std::size_t>(d * n));
  for (std::size_t x = 0; x < size; ++x) {
    for (int c = 0; c < n; ++c) point[c] = phys[c * size + x];
    flux.evaluate(std::span<const double>(point, n), f);
    for (int q = 0; q < d * n; ++q) values[q * size + x] = f[q];
  }
  auto out = spectral::from_physical(grid, d * n, values);
  spectral::dealias(out);
  return out;
}

double max_characteristic_speed(const Flux& flux, const SpectralField& u) {
  if (flux.is_zero()) return 0.0;
  const int n = flux.components();
  const int d = flux.directions();
  const std::size_t size = u.grid().size();
  const auto phys = spectral::to_physical(u);
  std::vector<double> jac(static_cast<std::size_t>(d * n * n));
  double point[Flux::kMaxComponents];
  double speed = 0.0;
  for (std::size_t x = 0; x < size; ++x) {
    for (int c = 0; c < n; ++c) point[c] = phys[c * size + x];
    flux.jacobian(std::span<const double>(point, n), jac);
    for (int i = 0; i < d; ++i)
      for (int c = 0; c < n; ++c) {
        double row = 0.0;
        for (int k = 0; k < n; ++k) row += std::abs(jac[(i * n + c) * n + k]);
        speed = std::max(speed, row);
      }
  }
  return speed;
}

}  // namespace relaxlab::models
