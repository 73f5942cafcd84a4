#include "relaxlab/analysis/linear_theory.hpp"

#include <climits>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace relaxlab::analysis {

namespace {

void require_parameters(std::span<const double> xi, double eps, std::span<const double> a) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps > 0 required");
  if (xi.size() != a.size() || xi.empty()) throw std::invalid_argument("xi and a must have the same positive length");
  for (double ai : a)
    if (!(ai > 0.0)) throw std::invalid_argument("a_i > 0 required");
}

/// Roots of lambda^2 + lambda/eps^2 + S/eps^2, slow root first, avoiding
/// cancellation in the slow root when both are real.
std::pair<Complex, Complex> slow_fast_roots(double S, double eps) {
  const double inv_e2 = 1.0 / (eps * eps);
  const double disc = inv_e2 - 4.0 * S;  // (1/eps^2)(1/eps^2 - 4S) scaled by eps^2
  const Complex root = std::sqrt(Complex(disc, 0.0)) / (2.0 * eps);
  const Complex fast = -0.5 * inv_e2 - root;
  if (disc > 0.0) {
    const Complex slow = fast == Complex{} ? Complex{} : Complex(S * inv_e2, 0.0) / fast;
    return {slow, fast};
  }
  return {-0.5 * inv_e2 + root, fast};
}

// cosh(z) and sinh(z)/z as power series in w = z^2; |z| < 0.5 keeps 12 terms far
// below rounding.
void even_series(Complex w, Complex& cosh_z, Complex& sinhc_z) {
  Complex term_c{1.0, 0.0};
  Complex term_s{1.0, 0.0};
  cosh_z = term_c;
  sinhc_z = term_s;
  for (int k = 1; k <= 12; ++k) {
    term_c *= w / double((2 * k - 1) * (2 * k));
    term_s *= w / double((2 * k) * (2 * k + 1));
    cosh_z += term_c;
    sinhc_z += term_s;
  }
}

}  // namespace

double symbol_S(std::span<const double> xi, std::span<const double> a) {
  if (xi.size() != a.size()) throw std::invalid_argument("xi and a must have the same length");
  double s = 0.0;
  for (std::size_t i = 0; i < xi.size(); ++i) s += a[i] * xi[i] * xi[i];
  return s;
}

ModeSpectrum eigenvalues(std::span<const double> xi, double eps, std::span<const double> a) {
  require_parameters(xi, eps, a);
  ModeSpectrum out;
  out.xi.assign(xi.begin(), xi.end());
  out.a.assign(a.begin(), a.end());
  out.eps = eps;
  out.S = symbol_S(xi, a);
  const std::size_t d = xi.size();
  for (std::size_t i = 0; i + 1 < d; ++i) out.eigenvalues.emplace_back(-1.0 / (eps * eps), 0.0);
  auto [slow, fast] = slow_fast_roots(out.S, eps);
  out.eigenvalues.push_back(slow);
  out.eigenvalues.push_back(fast);
  return out;
}

double decay_rate_omega(double S, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps > 0 required");
  if (S <= 0.0) return 0.0;
  const double q = 1.0 - 4.0 * eps * eps * S;
  if (q >= 0.0) return 2.0 * S / (1.0 + std::sqrt(q));
  return 1.0 / (2.0 * eps * eps);
}

double decay_rate_omega(std::span<const double> xi, double eps, std::span<const double> a) {
  require_parameters(xi, eps, a);
  return decay_rate_omega(symbol_S(xi, a), eps);
}

int threshold_J(double eps, int k0) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps > 0 required");
  int e = 0;
  std::frexp(eps, &e);  // eps = m 2^e, m in [1/2, 1), so floor(log2 eps) = e - 1
  return -(e - 1) + k0;
}

std::string regime_name(Regime regime) {
  switch (regime) {
    case Regime::low:
      return "low";
    case Regime::high:
      return "high";
    case Regime::transitional:
      break;
  }
  return "transitional";
}

RegimeLabel classify_regime(std::span<const double> xi, double eps, std::span<const double> a, int k0) {
  require_parameters(xi, eps, a);
  const double S = symbol_S(xi, a);
  RegimeLabel label;
  label.discriminant = 1.0 / (eps * eps) - 4.0 * S;
  const double scale = std::max(1.0 / std::pow(eps, 4), 16.0 * S * S);
  if (std::abs(label.discriminant) <= 1e-12 * scale)
    label.regime = Regime::transitional;
  else
    label.regime = label.discriminant > 0.0 ? Regime::low : Regime::high;
  double norm2 = 0.0;
  for (double x : xi) norm2 += x * x;
  if (norm2 == 0.0) {
    label.dyadic_index = INT_MIN;
    label.below_threshold = true;
  } else {
    label.dyadic_index = static_cast<int>(std::floor(std::log2(std::sqrt(norm2))));
    label.below_threshold = label.dyadic_index <= threshold_J(eps, k0);
  }
  return label;
}

Eigen::MatrixXcd linear_symbol(std::span<const double> xi, double eps, std::span<const double> a) {
  require_parameters(xi, eps, a);
  const int d = static_cast<int>(xi.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  for (int i = 0; i < d; ++i) {
    m(0, i + 1) = Complex(0.0, -xi[i] / eps);
    m(i + 1, 0) = Complex(0.0, -a[i] * xi[i] / eps);
    m(i + 1, i + 1) = -1.0 / (eps * eps);
  }
  return m;
}

Eigen::MatrixXcd exact_linear_propagator(std::span<const double> xi, double eps, std::span<const double> a,
                                         double t) {
  require_parameters(xi, eps, a);
  if (!(t >= 0.0)) throw std::invalid_argument("t >= 0 required");
  const int d = static_cast<int>(xi.size());
  const double inv_e2 = 1.0 / (eps * eps);
  const double damp = std::exp(-t * inv_e2);
  const double S = symbol_S(xi, a);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d + 1, d + 1);
  if (S == 0.0) {
    out(0, 0) = 1.0;
    for (int i = 1; i <= d; ++i) out(i, i) = damp;
    return out;
  }

  // b = first row, c = first column of the symbol (v-parts only).
  Eigen::VectorXcd b(d), c(d);
  for (int i = 0; i < d; ++i) {
    b(i) = Complex(0.0, -xi[i] / eps);
    c(i) = Complex(0.0, -a[i] * xi[i] / eps);
  }
  const Complex bc = (b.array() * c.array()).sum();  // -S/eps^2

  const double mu = -0.5 * inv_e2;
  const double delta2 = mu * mu - S * inv_e2;
  Complex e0, e1;  // e^{mu t} cosh(delta t), e^{mu t} sinh(delta t)/delta
  const Complex z2 = delta2 * t * t;
  if (std::abs(z2) < 0.25) {
    Complex ch, shc;
    even_series(z2, ch, shc);
    const double g = std::exp(mu * t);
    e0 = g * ch;
    e1 = g * t * shc;
  } else {
    auto [slow, fast] = slow_fast_roots(S, eps);
    const Complex ep = std::exp(slow * t);
    const Complex em = std::exp(fast * t);
    const Complex two_delta = slow - fast;
    e0 = 0.5 * (ep + em);
    e1 = (ep - em) / two_delta;
  }
  // exp(tM) on basis {e0, chat}, M - mu I = [[1/(2eps^2), -S/eps^2], [1, -1/(2eps^2)]].
  const Complex p00 = e0 + e1 * (0.5 * inv_e2);
  const Complex p01 = e1 * (-S * inv_e2);
  const Complex p10 = e1;
  const Complex p11 = e0 - e1 * (0.5 * inv_e2);

  for (int col = 0; col <= d; ++col) {
    Complex w0 = col == 0 ? Complex(1.0) : Complex(0.0);
    Eigen::VectorXcd wv = Eigen::VectorXcd::Zero(d);
    if (col > 0) wv(col - 1) = 1.0;
    Complex bw = 0.0;
    for (int i = 0; i < d; ++i) bw += b(i) * wv(i);
    const Complex alpha = bw / bc;
    const Eigen::VectorXcd y = wv - alpha * c;
    const Complex beta0 = p00 * w0 + p01 * alpha;
    const Complex beta1 = p10 * w0 + p11 * alpha;
    out(0, col) = beta0;
    for (int i = 0; i < d; ++i) out(i + 1, col) = beta1 * c(i) + damp * y(i);
  }
  return out;
}

std::vector<OverdampingPoint> overdamping_curve(double S, std::span<const double> inv_eps_values) {
  std::vector<OverdampingPoint> curve;
  curve.reserve(inv_eps_values.size());
  for (double inv_eps : inv_eps_values) {
    if (!(inv_eps > 0.0)) throw std::invalid_argument("1/eps must be positive");
    const double eps = 1.0 / inv_eps;
    OverdampingPoint pt;
    pt.inv_eps = inv_eps;
    pt.omega = decay_rate_omega(S, eps);
    const double disc = inv_eps * inv_eps - 4.0 * S;
    const double scale = std::max(std::pow(inv_eps, 4), 16.0 * S * S);
    pt.regime = std::abs(disc) <= 1e-12 * scale ? Regime::transitional : (disc > 0 ? Regime::low : Regime::high);
    curve.push_back(pt);
  }
  return curve;
}

void write_overdamping_csv(std::ostream& out, std::span<const OverdampingPoint> curve) {
  out << "inv_eps,omega,regime\n" << std::setprecision(17);
  for (const auto& p : curve) out << p.inv_eps << ',' << p.omega << ',' << regime_name(p.regime) << '\n';
}

}  // namespace relaxlab::analysis
