#include "relaxlab/spectral/norm_series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaxlab::spectral {

NormSeries::NormSeries(int j_min, int j_max, double p) : j_min_(j_min), j_max_(j_max), p_(p) {
  if (j_max < j_min) throw std::invalid_argument("empty dyadic range");
}

void NormSeries::append(double t, std::vector<double> block_values) {
  if (!times_.empty() && !(t > times_.back())) throw std::invalid_argument("sample times must increase strictly");
  if (block_values.size() != static_cast<std::size_t>(j_max_ - j_min_ + 1))
    throw std::invalid_argument("block row has wrong length");
  for (double v : block_values)
    if (!(v >= 0.0)) throw std::invalid_argument("block norms must be nonnegative");
  times_.push_back(t);
  rows_.push_back(std::move(block_values));
}

WindowedNorm NormSeries::besov_at(std::size_t sample, double s, double r, const Window& window) const {
  return besov_from_blocks(rows_.at(sample), j_min_, s, r, window);
}

NormSeries NormSeries::prefix(std::size_t count) const {
  NormSeries out(j_min_, j_max_, p_);
  count = std::min(count, times_.size());
  out.times_.assign(times_.begin(), times_.begin() + count);
  out.rows_.assign(rows_.begin(), rows_.begin() + count);
  return out;
}

double time_norm(std::span<const double> times, std::span<const double> values, double rho) {
  if (times.size() != values.size()) throw std::invalid_argument("time/value length mismatch");
  if (std::isinf(rho)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  if (times.size() < 2) throw std::invalid_argument("time integral needs at least two samples");
  double acc = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double a = rho == 1.0 ? std::abs(values[i - 1]) : std::pow(std::abs(values[i - 1]), rho);
    const double b = rho == 1.0 ? std::abs(values[i]) : std::pow(std::abs(values[i]), rho);
    acc += 0.5 * (times[i] - times[i - 1]) * (a + b);
  }
  return rho == 1.0 ? acc : std::pow(acc, 1.0 / rho);
}

WindowedNorm chemin_lerner_norm(const NormSeries& series, double rho, double s, double r, const Window& window) {
  if (!std::isinf(rho) && series.samples() < 2)
    throw std::invalid_argument("Chemin-Lerner norm with finite rho needs at least two samples");
  const int blocks = series.j_max() - series.j_min() + 1;
  std::vector<double> per_block(blocks, 0.0);
  std::vector<double> column(series.samples());
  for (int b = 0; b < blocks; ++b) {
    if (!window.contains(series.j_min() + b)) continue;
    for (std::size_t i = 0; i < series.samples(); ++i) column[i] = series.row(i)[b];
    per_block[b] = time_norm(series.times(), column, rho);
  }
  return besov_from_blocks(per_block, series.j_min(), s, r, window);
}

double lebesgue_besov_norm(const NormSeries& series, double rho, double s, double r, const Window& window) {
  std::vector<double> values(series.samples());
  for (std::size_t i = 0; i < series.samples(); ++i) values[i] = series.besov_at(i, s, r, window).value;
  return time_norm(series.times(), values, rho);
}

}  // namespace relaxlab::spectral
