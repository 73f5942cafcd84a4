#include "relaxlab/cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace relaxlab::cli {

using harness::Curve;

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 80, kRight = 170, kTop = 30, kBottom = 60;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(const char* f, double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else if (c == '&')
      out += "&amp;";
    else if (c == '"')
      out += "&quot;";
    else
      out += c;
  }
  return out;
}

struct Axis {
  double lo, hi;
  bool log;
  double map(double v, double pixel_lo, double pixel_hi) const {
    const double a = log ? std::log10(v) : v;
    return pixel_lo + (a - lo) / (hi - lo) * (pixel_hi - pixel_lo);
  }
  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo - 1e-9); e <= hi + 1e-9; e += 1.0) out.push_back(e);
      return out;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + 1e-9 * step; t += step) out.push_back(t);
    return out;
  }
  std::string label(double t) const { return log ? "1e" + fmt("%g", t) : fmt("%g", std::abs(t) < 1e-12 ? 0.0 : t); }
};

Axis make_axis(const std::vector<Curve>& curves, bool x, bool log) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& c : curves) {
    const auto& v = x ? c.x : c.y;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (log && !(c.x[i] > 0.0 && c.y[i] > 0.0)) continue;
      if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i])) continue;
      const double a = log ? std::log10(v[i]) : v[i];
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  }
  if (!(lo <= hi)) throw std::invalid_argument("nothing to plot: no finite (positive, on log axes) points");
  if (hi - lo < 1e-12) {
    lo -= log ? 0.5 : std::max(0.5, std::abs(lo) * 0.1);
    hi += log ? 0.5 : std::max(0.5, std::abs(hi) * 0.1);
  }
  const double pad = 0.03 * (hi - lo);
  return {lo - pad, hi + pad, log};
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"') {
      if (quoted && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else {
        quoted = !quoted;
      }
    } else if (c == ',' && !quoted) {
      out.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell += c;
    }
  }
  out.push_back(cell);
  return out;
}

bool to_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  if (s == "inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

PlotKind parse_plot_kind(const std::string& name) {
  if (name == "loglog") return PlotKind::loglog;
  if (name == "linear") return PlotKind::linear;
  if (name == "overdamping") return PlotKind::overdamping;
  throw std::invalid_argument("unknown plot kind '" + name + "' (loglog | linear | overdamping)");
}

std::string render_svg(const std::vector<Curve>& curves, const std::string& x_label, const std::string& y_label,
                       bool loglog) {
  if (curves.empty()) throw std::invalid_argument("nothing to plot: no curves");
  const Axis ax = make_axis(curves, true, loglog), ay = make_axis(curves, false, loglog);
  const double x0 = kLeft, x1 = kWidth - kRight, y0 = kHeight - kBottom, y1 = kTop;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\"" << y0 - y1
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ax.ticks()) {
    const double px = x0 + (t - ax.lo) / (ax.hi - ax.lo) * (x1 - x0);
    svg << "<line x1=\"" << fmt("%.2f", px) << "\" y1=\"" << y0 << "\" x2=\"" << fmt("%.2f", px) << "\" y2=\"" << y0 + 5
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << fmt("%.2f", px) << "\" y=\"" << y0 + 20 << "\" text-anchor=\"middle\">"
        << xml_escape(ax.label(t)) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    const double py = y0 + (t - ay.lo) / (ay.hi - ay.lo) * (y1 - y0);
    svg << "<line x1=\"" << x0 - 5 << "\" y1=\"" << fmt("%.2f", py) << "\" x2=\"" << x0 << "\" y2=\"" << fmt("%.2f", py)
        << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x0 - 8 << "\" y=\"" << fmt("%.2f", py + 4) << "\" text-anchor=\"end\">"
        << xml_escape(ay.label(t)) << "</text>\n";
  }
  svg << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 15 << "\" text-anchor=\"middle\">" << xml_escape(x_label)
      << "</text>\n";
  svg << "<text transform=\"translate(18," << (y0 + y1) / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
      << xml_escape(y_label) << "</text>\n";
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    const char* color = kColors[c % std::size(kColors)];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < curve.x.size() && i < curve.y.size(); ++i) {
      const double x = curve.x[i], y = curve.y[i];
      if (!std::isfinite(x) || !std::isfinite(y) || (loglog && !(x > 0.0 && y > 0.0))) continue;
      svg << (first ? "" : " ") << fmt("%.2f", ax.map(x, x0, x1)) << ',' << fmt("%.2f", ay.map(y, y0, y1));
      first = false;
    }
    svg << "\"/>\n";
    const double ly = y1 + 15 + 18 * static_cast<double>(c);
    svg << "<line x1=\"" << x1 + 10 << "\" y1=\"" << ly << "\" x2=\"" << x1 + 30 << "\" y2=\"" << ly << "\" stroke=\""
        << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << x1 + 35 << "\" y=\"" << ly + 4 << "\">" << xml_escape(curve.name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<Curve> curves_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line.find_first_not_of(" \r") == std::string::npos)
    throw std::invalid_argument("empty CSV");
  const auto header = split(line);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t n = 2; std::getline(in, line); ++n) {
    if (line.find_first_not_of(" \r") == std::string::npos) continue;
    rows.push_back(split(line));
    if (rows.back().size() != header.size())
      throw std::invalid_argument("malformed CSV: line " + std::to_string(n) + " has " +
                                  std::to_string(rows.back().size()) + " cells, header has " +
                                  std::to_string(header.size()));
  }
  if (rows.empty()) throw std::invalid_argument("CSV has a header but no rows");

  const auto col = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  std::vector<Curve> curves;
  if (col("t") == 0 && col("name") >= 0 && col("value") >= 0) {
    std::map<std::string, std::size_t> index;
    const int name = col("name"), value = col("value"), s = col("s"), window = col("window");
    for (const auto& row : rows) {
      std::string key = row[name];
      if (s >= 0) key += " s=" + row[s];
      if (window >= 0 && row[window] != "full") key += " " + row[window];
      double t = 0, v = 0;
      if (!to_number(row[0], t) || !to_number(row[value], v)) throw std::invalid_argument("malformed CSV: non-numeric t/value");
      auto [it, inserted] = index.emplace(key, curves.size());
      if (inserted) curves.push_back({key, {}, {}});
      curves[it->second].x.push_back(t);
      curves[it->second].y.push_back(v);
    }
    return curves;
  }
  for (std::size_t c = 1; c < header.size(); ++c) {
    Curve curve{header[c], {}, {}};
    bool numeric = true;
    for (const auto& row : rows) {
      double x = 0, y = 0;
      if (!to_number(row[0], x)) throw std::invalid_argument("malformed CSV: non-numeric first column");
      if (!to_number(row[c], y)) {
        numeric = false;
        break;
      }
      curve.x.push_back(x);
      curve.y.push_back(y);
    }
    if (numeric) curves.push_back(std::move(curve));
  }
  if (curves.empty()) throw std::invalid_argument("malformed CSV: no numeric columns to plot");
  return curves;
}

std::string plot_csv(const std::string& csv, PlotKind kind) {
  const auto curves = curves_from_csv(csv);
  if (kind == PlotKind::overdamping) return render_svg(curves, "1/eps", "omega", false);
  const auto header = csv.substr(0, csv.find('\n'));
  const auto x_label = split(header).front();
  return render_svg(curves, x_label, "value", kind == PlotKind::loglog);
}

}  // namespace relaxlab::cli
