#pragma once

#include <Eigen/Dense>

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace relaxlab::analysis {

using Complex = std::complex<double>;

/// S(xi) = sum_i a_i xi_i^2
double symbol_S(std::span<const double> xi, std::span<const double> a);

/// Eigenvalues of the linearized symbol acting on (u, eps v_1, ..., eps v_d).
struct ModeSpectrum {
  std::vector<double> xi;
  double eps = 1.0;
  std::vector<double> a;
  double S = 0.0;
  /// lambda_1..lambda_{d-1} = -1/eps^2, then the slow root lambda_d and the
  /// fast root lambda_{d+1} of lambda^2 + lambda/eps^2 + S/eps^2.
  std::vector<Complex> eigenvalues;
};

ModeSpectrum eigenvalues(std::span<const double> xi, double eps, std::span<const double> a);

/// omega = -Re lambda_d: 2S/(1 + sqrt(1 - 4 eps^2 S)) when 1/eps >= 2 sqrt(S),
/// 1/(2 eps^2) otherwise, 0 when S = 0.
double decay_rate_omega(double S, double eps);
double decay_rate_omega(std::span<const double> xi, double eps, std::span<const double> a);

/// J_eps = -floor(log2 eps) + k0, so 2^{J - k0} lies in [1/eps, 2/eps).
int threshold_J(double eps, int k0 = 0);

enum class Regime { low, high, transitional };
std::string regime_name(Regime regime);

struct RegimeLabel {
  Regime regime = Regime::low;
  /// 1/eps^2 - 4S
  double discriminant = 0.0;
  /// floor(log2 |xi|); INT_MIN for xi = 0
  int dyadic_index = 0;
  bool below_threshold = true;
};

RegimeLabel classify_regime(std::span<const double> xi, double eps, std::span<const double> a, int k0 = 0);

/// The (d+1)x(d+1) symbol matrix of the linearized system.
Eigen::MatrixXcd linear_symbol(std::span<const double> xi, double eps, std::span<const double> a);

/// exp(t * symbol) acting on (u, eps v_1, ..., eps v_d).
///
/// The symbol leaves span{e_0, (0, c)} invariant (c = first column) and acts
/// as -1/eps^2 on its complement {(0, y) : b.y = 0}, b = first row. On the
/// 2x2 block the exponential is e^{mu t}[cosh(delta t) I + sinh(delta t)/delta (M - mu I)],
/// mu = -1/(2 eps^2), delta^2 = mu^2 - S/eps^2, evaluated through even power
/// series near delta t = 0 so the defective point needs no special casing.
Eigen::MatrixXcd exact_linear_propagator(std::span<const double> xi, double eps, std::span<const double> a,
                                         double t);

struct OverdampingPoint {
  double inv_eps = 0.0;
  double omega = 0.0;
  Regime regime = Regime::low;
};

std::vector<OverdampingPoint> overdamping_curve(double S, std::span<const double> inv_eps_values);
/// Columns inv_eps, omega, regime.
void write_overdamping_csv(std::ostream& out, std::span<const OverdampingPoint> curve);

}  // namespace relaxlab::analysis
