#pragma once

#include <string>
#include <vector>

#include "relaxlab/harness/report.hpp"

namespace relaxlab::cli {

enum class PlotKind { loglog, linear, overdamping };

PlotKind parse_plot_kind(const std::string& name);

/// Standalone SVG (axes, tick labels, one polyline per curve, legend).
/// Log axes drop nonpositive points. Byte-identical for identical input.
std::string render_svg(const std::vector<harness::Curve>& curves, const std::string& x_label,
                       const std::string& y_label, bool loglog);

/// Curves from CSV text. A norms.csv-shaped table (columns t, name, ..., value)
/// yields one curve per series; otherwise the first column is x and every
/// other numeric column a curve. Throws std::invalid_argument when empty or malformed.
std::vector<harness::Curve> curves_from_csv(const std::string& csv);

/// curves_from_csv + render_svg; overdamping plots linear axes labelled 1/eps, omega.
std::string plot_csv(const std::string& csv, PlotKind kind);

}  // namespace relaxlab::cli
