#include "relaxlab/harness/rate_fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace relaxlab::harness {

RateFit fit_rate(std::span<const double> x, std::span<const double> y, double lo, double hi, FitVariable variable,
                 std::size_t min_points) {
  if (x.size() != y.size()) throw std::invalid_argument("fit_rate: x and y lengths differ");
  if (!(lo <= hi)) throw std::invalid_argument("fit_rate: degenerate window");
  std::vector<double> X, Y;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lo || x[i] > hi) continue;
    if (!(y[i] > 0.0) || !std::isfinite(y[i]))
      throw std::invalid_argument("fit_rate: y must be positive on the window (x = " + std::to_string(x[i]) + ")");
    const double xt = variable == FitVariable::time ? 1.0 + x[i] : x[i];
    if (!(xt > 0.0)) throw std::invalid_argument("fit_rate: abscissa must be positive");
    X.push_back(std::log(xt));
    Y.push_back(std::log(y[i]));
  }
  const std::size_t n = X.size();
  if (n < std::max<std::size_t>(min_points, 3))
    throw std::invalid_argument("fit_rate: degenerate window, need at least " + std::to_string(min_points) +
                                " points (got " + std::to_string(n) + ")");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += X[i];
    my += Y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (X[i] - mx) * (X[i] - mx);
    sxy += (X[i] - mx) * (Y[i] - my);
    syy += (Y[i] - my) * (Y[i] - my);
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit_rate: degenerate window, abscissae coincide");
  RateFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = Y[i] - fit.intercept - fit.exponent * X[i];
    sse += res * res;
  }
  fit.r_squared = syy > 0.0 ? std::clamp(1.0 - sse / syy, 0.0, 1.0) : 1.0;
  fit.stderr_exponent = n > 2 ? std::sqrt(sse / static_cast<double>(n - 2) / sxx) : 0.0;
  fit.window_lo = lo;
  fit.window_hi = hi;
  fit.points = n;
  fit.power_law = fit.r_squared >= RateFit::kPowerLawR2;
  return fit;
}

double exponential_rate(std::span<const double> t, std::span<const double> y, double lo, double hi) {
  std::vector<double> T, Y;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < lo || t[i] > hi) continue;
    if (!(y[i] > 0.0)) throw std::invalid_argument("exponential_rate: y must be positive on the window");
    T.push_back(t[i]);
    Y.push_back(std::log(y[i]));
  }
  if (T.size() < 3) throw std::invalid_argument("exponential_rate: need at least 3 samples in the window");
  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    mt += T[i];
    my += Y[i];
  }
  mt /= T.size();
  my /= T.size();
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    stt += (T[i] - mt) * (T[i] - mt);
    sty += (T[i] - mt) * (Y[i] - my);
  }
  if (!(stt > 0.0)) throw std::invalid_argument("exponential_rate: degenerate window");
  return -sty / stt;
}

std::string describe(const RateFit& fit) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "exponent %.4f +/- %.4f (R^2 %.4f, %zu points)", fit.exponent, fit.stderr_exponent,
                fit.r_squared, fit.points);
  return buf;
}

}  // namespace relaxlab::harness
