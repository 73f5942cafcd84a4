#include "relaxlab/harness/functional.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace relaxlab::harness {

using integrators::TrackerSpec;
using integrators::Trajectory;
using spectral::NormSeries;
using spectral::Window;

namespace {

/// Running Chemin-Lerner norm sum_{j in window} 2^{js} ||Delta_j w||_{L^rho(0, t_k)} for every k.
std::vector<double> running_cl(const NormSeries& series, double rho, double s, const Window& window) {
  const std::size_t n = series.samples();
  const int blocks = series.j_max() - series.j_min() + 1;
  std::vector<double> acc(blocks, 0.0);
  std::vector<double> out(n, 0.0);
  const auto times = series.times();
  for (std::size_t k = 0; k < n; ++k) {
    const auto row = series.row(k);
    double total = 0.0;
    for (int b = 0; b < blocks; ++b) {
      const int j = series.j_min() + b;
      if (std::isinf(rho)) {
        acc[b] = std::max(acc[b], row[b]);
      } else if (k > 0) {
        acc[b] += 0.5 * (times[k] - times[k - 1]) * (row[b] + series.row(k - 1)[b]);
      }
      if (window.contains(j)) total += std::pow(2.0, j * s) * acc[b];
    }
    out[k] = total;
  }
  return out;
}

struct TermSpec {
  std::string name;
  std::string field;
  double p;
  double rho;
  std::vector<double> s;
  Window window;
  double weight;
};

std::vector<TermSpec> term_specs(int d, double p, double eps, int J) {
  const double dp = d / p;
  const double inf = INFINITY;
  const Window low = Window::low(J);
  const Window high = Window::high(J);
  return {
      {"u_low_Linf", "u", p, inf, {dp - 1, dp}, low, 1.0},
      {"u_low_L1", "u", p, 1.0, {dp + 1, dp + 2}, low, 1.0},
      {"u_high_Linf", "u", 2.0, inf, {0.5 * d}, high, 1.0 + eps},
      {"u_high_L1", "u", 2.0, 1.0, {0.5 * d}, high, 1.0 / eps + 1.0 / (eps * eps)},
      {"v_low_Linf", "v", p, inf, {dp, dp + 1}, low, eps * eps},
      {"v_low_L1", "v", p, 1.0, {dp, dp + 1}, low, 1.0},
      {"v_high_Linf", "v", 2.0, inf, {0.5 * d}, high, eps + eps * eps},
      {"v_high_L1", "v", 2.0, 1.0, {0.5 * d}, high, 1.0 + 1.0 / eps},
  };
}

void require_series(const Trajectory& traj, double p) {
  for (const char* f : {"u", "v"})
    for (double q : {p, 2.0})
      if (!traj.has(f, q))
        throw std::invalid_argument("functional X needs trackers u@p=" + std::to_string(p) + ", u@p=2, v@p=" +
                                    std::to_string(p) + ", v@p=2; missing " + integrators::series_key(f, q));
}

double initial_value(const Trajectory& traj, int d, double p, double eps) {
  const int J = traj.J;
  const double dp = d / p;
  auto at0 = [&](const char* f, double q, double s, const Window& w) {
    return static_cast<double>(traj.at(f, q).besov_at(0, s, 1.0, w));
  };
  const Window low = Window::low(J), high = Window::high(J);
  return at0("u", p, dp - 1, low) + at0("u", p, dp, low) + eps * eps * (at0("v", p, dp, low) + at0("v", p, dp + 1, low)) +
         (1.0 + eps) * at0("u", 2.0, 0.5 * d, high) + eps * (1.0 + eps) * at0("v", 2.0, 0.5 * d, high);
}

int grid_dim(const Trajectory& traj) {
  if (traj.final_state) return traj.final_state->u.grid().dim();
  throw std::invalid_argument("functional X needs a relaxation trajectory");
}

}  // namespace

std::vector<TrackerSpec> functional_trackers(int d, double p) {
  std::vector<TrackerSpec> out;
  for (const char* f : {"u", "v"}) {
    out.push_back({f, d / p, p, 1.0, Window::Kind::low});
    if (p != 2.0) out.push_back({f, 0.5 * d, 2.0, 1.0, Window::Kind::high});
  }
  return out;
}

FunctionalX functional_X(const Trajectory& trajectory, double eps, double p) {
  require_series(trajectory, p);
  const int d = grid_dim(trajectory);
  FunctionalX out;
  for (const auto& spec : term_specs(d, p, eps, trajectory.J)) {
    const auto& series = trajectory.at(spec.field, spec.p);
    double norm = 0.0;
    for (double s : spec.s) norm += running_cl(series, spec.rho, s, spec.window).back();
    out.terms.push_back({spec.name, spec.weight, norm, spec.weight * norm});
    out.total += spec.weight * norm;
  }
  out.initial = initial_value(trajectory, d, p, eps);
  out.ratio = out.initial > 0.0 ? out.total / out.initial : 0.0;
  return out;
}

std::vector<double> functional_X_history(const Trajectory& trajectory, double eps, double p) {
  require_series(trajectory, p);
  const int d = grid_dim(trajectory);
  std::vector<double> total(trajectory.times.size(), 0.0);
  for (const auto& spec : term_specs(d, p, eps, trajectory.J)) {
    const auto& series = trajectory.at(spec.field, spec.p);
    for (double s : spec.s) {
      const auto run = running_cl(series, spec.rho, s, spec.window);
      for (std::size_t k = 0; k < total.size(); ++k) total[k] += spec.weight * run[k];
    }
  }
  return total;
}

}  // namespace relaxlab::harness
