#include "relaxlab/cli/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "relaxlab/cli/plot.hpp"
#include "relaxlab/harness/experiments.hpp"
#include "relaxlab/spectral/io.hpp"

namespace relaxlab::cli {

using nlohmann::ordered_json;

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

}  // namespace

std::string norms_csv(const harness::Report& report) {
  std::ostringstream out;
  out << "t,name,s,p,r,window,value\n";
  for (const auto& row : report.norms)
    out << g17(row.t) << ',' << csv_escape(row.name) << ',' << g17(row.s) << ',' << (std::isinf(row.p) ? "inf" : g17(row.p))
        << ',' << g17(row.r) << ',' << row.window << ',' << g17(row.value) << '\n';
  return out.str();
}

std::string fits_json(const harness::Report& report) {
  ordered_json fits = ordered_json::object();
  for (const auto& [name, f] : report.fits)
    fits[name] = {{"exponent", f.exponent},
                  {"stderr", f.stderr_exponent},
                  {"intercept", f.intercept},
                  {"window", {f.window_lo, f.window_hi}},
                  {"r_squared", f.r_squared},
                  {"points", f.points},
                  {"power_law", f.power_law}};
  ordered_json scalars = ordered_json::object();
  for (const auto& [name, v] : report.scalars) scalars[name] = v;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  ordered_json root{{"experiment", report.experiment},
                    {"passed", report.passed()},
                    {"fits", fits},
                    {"scalars", scalars},
                    {"checks", checks}};
  return root.dump(2) + "\n";
}

std::filesystem::path write_results(const RunConfig& config, const harness::Report& report) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(config.output) / config_hash(config);
  fs::create_directories(dir);
  write_text(dir / "config.json", serialize_config(config).dump(2) + "\n");
  write_text(dir / "norms.csv", norms_csv(report));
  write_text(dir / "fits.json", fits_json(report));
  if (!report.curves.empty())
    write_text(dir / "curves.svg", render_svg(report.curves, report.x_label, report.y_label, report.loglog));
  if (!report.table_name.empty()) write_text(dir / report.table_name, report.table_csv);
  if (!report.fields.empty()) {
    fs::create_directories(dir / "fields");
    for (const auto& [name, field] : report.fields) spectral::save_field((dir / "fields" / (name + ".bin")).string(), field);
  }
  return dir;
}

std::string summary(const harness::Report& report) {
  std::ostringstream out;
  out << report.summary_line();
  for (const auto& [name, f] : report.fits) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "; %s exponent %.4f +/- %.4f (R^2 %.4f)", name.c_str(), f.exponent,
                  f.stderr_exponent, f.r_squared);
    out << buf;
  }
  return out.str();
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  harness::Report report;
  try {
    report = harness::run_experiment(config.spec);
  } catch (const std::exception& e) {
    err << "relaxlab: " << config.spec.experiment << " failed: " << e.what() << '\n';
    return 2;
  }
  const auto dir = write_results(config, report);
  out << summary(report) << '\n' << "results: " << dir.string() << '\n';
  if (!report.passed()) {
    err << "relaxlab: first failed check: " << report.first_failure() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace relaxlab::cli
