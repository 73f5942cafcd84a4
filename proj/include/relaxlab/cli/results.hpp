#pragma once

#include <filesystem>
#include <string>

#include "relaxlab/cli/config.hpp"
#include "relaxlab/harness/report.hpp"

namespace relaxlab::cli {

/// norms.csv: t,name,s,p,r,window,value
std::string norms_csv(const harness::Report& report);

/// fits, scalars and checks; deterministic (no wall time).
std::string fits_json(const harness::Report& report);

/// Writes <root>/<hash>/{config.json, norms.csv, fits.json, curves.svg,
/// fields/*.bin, table} and returns the run directory.
std::filesystem::path write_results(const RunConfig& config, const harness::Report& report);

/// One line: fitted exponents and scalars the experiment declares, or
/// pass/fail counts of the checks.
std::string summary(const harness::Report& report);

/// Runs the experiment, persists results and prints the summary; returns 0
/// iff every check passed.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace relaxlab::cli
