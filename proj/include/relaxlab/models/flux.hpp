#pragma once

#include <span>
#include <string>
#include <vector>

#include "relaxlab/spectral/field.hpp"

namespace relaxlab::models {

/// coefficient * prod_k u_k^exponents[k], contributing to component
/// `component` of f_direction.
struct Monomial {
  int direction = 0;
  int component = 0;
  std::vector<int> exponents;
  double coefficient = 0.0;
};

/// Polynomial flux f = (f_1, ..., f_d), f_i : R^n -> R^n, vanishing to second
/// order at the origin. All built-in fluxes are polynomial, so Jacobians are
/// exact.
class Flux {
 public:
  static constexpr int kMaxComponents = 4;

  static Flux zero(int n, int d);
  /// f(u) = u^2 / 2, n = d = 1.
  static Flux burgers1d();
  /// f_1(u) = u_1 u, f_2(u) = u_2 u, n = d = 2.
  static Flux burgers2d();
  /// Rejects monomials of total degree < 2 (constant or linear parts).
  static Flux polynomial(int n, int d, std::vector<Monomial> terms, std::string id = "polynomial");

  const std::string& id() const noexcept { return id_; }
  int components() const noexcept { return n_; }
  int directions() const noexcept { return d_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::span<const Monomial> terms() const noexcept { return terms_; }

  /// out[i * n + c] = f_i(u)_c
  void evaluate(std::span<const double> u, std::span<double> out) const;
  std::vector<double> evaluate(std::span<const double> u) const;
  /// out[(i * n + c) * n + k] = d f_i(u)_c / d u_k
  void jacobian(std::span<const double> u, std::span<double> out) const;

 private:
  Flux(std::string id, int n, int d, std::vector<Monomial> terms);

  std::string id_;
  int n_;
  int d_;
  std::vector<Monomial> terms_;
};

std::vector<std::string> builtin_flux_ids();
/// burgers1d | burgers2d | zero. `n`, `d` size the zero flux and are checked
/// against the fixed shapes of the others.
Flux make_builtin_flux(const std::string& id, int n, int d);

/// Dealiased physical-space evaluation: returns d*n components, direction-major.
spectral::SpectralField flux_field(const Flux& flux, const spectral::SpectralField& u);

/// max over grid points and directions of the infinity-norm of df_i/du.
double max_characteristic_speed(const Flux& flux, const spectral::SpectralField& u);

}  // namespace relaxlab::models
