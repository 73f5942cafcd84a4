#pragma once

#include <string>
#include <utility>
#include <vector>

#include "relaxlab/harness/rate_fit.hpp"
#include "relaxlab/spectral/field.hpp"

namespace relaxlab::harness {

/// One row of norms.csv.
struct NormRow {
  double t = 0.0;
  std::string name;
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;
  std::string window = "full";
  double value = 0.0;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Curve {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

/// Everything an experiment produces; the CLI persists it.
struct Report {
  std::string experiment;
  std::vector<NormRow> norms;
  std::vector<std::pair<std::string, RateFit>> fits;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<Check> checks;
  std::vector<Curve> curves;
  std::string x_label = "t";
  std::string y_label = "value";
  bool loglog = true;
  /// Extra CSV table (e.g. the overdamping curve) and its file name.
  std::string table_name;
  std::string table_csv;
  std::vector<std::pair<std::string, spectral::SpectralField>> fields;

  bool passed() const;
  /// First failing check, or empty.
  std::string first_failure() const;
  const RateFit* fit(const std::string& name) const;
  const double* scalar(const std::string& name) const;
  void add_check(std::string name, bool passed, std::string detail);
  std::string summary_line() const;
};

}  // namespace relaxlab::harness
