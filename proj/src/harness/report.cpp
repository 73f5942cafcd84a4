#include "relaxlab/harness/report.hpp"

#include <algorithm>

namespace relaxlab::harness {

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string Report::first_failure() const {
  for (const auto& c : checks)
    if (!c.passed) return c.detail.empty() ? c.name : c.name + ": " + c.detail;
  return {};
}

const RateFit* Report::fit(const std::string& name) const {
  for (const auto& [key, value] : fits)
    if (key == name) return &value;
  return nullptr;
}

const double* Report::scalar(const std::string& name) const {
  for (const auto& [key, value] : scalars)
    if (key == name) return &value;
  return nullptr;
}

void Report::add_check(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

std::string Report::summary_line() const {
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; });
  std::string line = experiment + ": " + std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) +
                     " checks passed";
  if (failed > 0) line += "; first failure: " + first_failure();
  return line;
}

}  // namespace relaxlab::harness
