#pragma once

#include <optional>
#include <string>
#include <vector>

#include "geomgate/experiments.hpp"

namespace geomgate {

/// Every problem found in a config, each prefixed with source:line.
class ConfigError : public GeomgateError {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

struct RunConfig {
  /// A name from experiment_names() or "sweep".
  std::string experiment;
  std::optional<SweepSpec> sweep;
  ExperimentOptions options;
  std::string out_dir = ".";
};

/// Parses the config grammar (see README):
///
///   # comment
///   key = value          (before any section: looked up in run, physics,
///                         sweep, numerics, rydberg, in that order)
///   [section]
///   key = value
///
/// Frequencies take a hz, khz, mhz or ghz suffix and are multiplied by 2 pi.
/// Rates are plain numbers in 1/s (an optional "/s" suffix is accepted).
/// A non-empty `experiment` (e.g. from the command line) replaces run.experiment
/// and satisfies its requirement. Throws ConfigError listing every problem.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>",
                       const std::string& experiment = "");

/// Fully resolved config text; parse_config(echo_config(c)) reproduces c.
std::string echo_config(const RunConfig& c);

/// "6.25 khz" -> 2 pi * 6250 rad/s. Throws on a missing or unknown unit.
double parse_frequency(const std::string& text);

}  // namespace geomgate
