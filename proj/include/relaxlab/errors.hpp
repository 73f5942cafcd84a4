#pragma once

#include <stdexcept>
#include <string>

namespace relaxlab {

/// Dyadic index (or other discrete index) outside its resolvable window.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Operands live on different grids or carry incompatible component counts.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// NaN or Inf appeared in a state; carries the simulation time.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, double time)
      : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Requested time step violates the stability bound; proposes an admissible one.
class CflError : public std::runtime_error {
 public:
  CflError(const std::string& what, double admissible_dt)
      : std::runtime_error(what + "; admissible dt <= " + std::to_string(admissible_dt)),
        admissible_dt_(admissible_dt) {}
  double admissible_dt() const noexcept { return admissible_dt_; }

 private:
  double admissible_dt_;
};

/// Configuration rejected during validation; `path` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& path, const std::string& constraint)
      : std::invalid_argument(path + ": " + constraint), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace relaxlab
