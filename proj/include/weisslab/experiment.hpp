#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace weisslab {

enum class ExitCode : int { pass = 0, assertion_failed = 1, config_error = 2, not_converged = 3 };

/// Thrown for malformed or out-of-range configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Experiment name plus string parameters. Values are parsed and range
/// checked by run() before any computation starts.
struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> params;

  bool has(const std::string& key) const { return params.count(key) != 0; }
};

/// `key = value` lines, `#` comments, blank lines ignored. Later keys win.
std::map<std::string, std::string> parse_key_values(std::istream& in);

const std::vector<std::string>& experiment_names();

using Cell = std::variant<double, long long, std::string>;

struct ExperimentReport {
  std::string experiment;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Every parameter in effect after defaults, as text.
  std::map<std::string, std::string> parameters;
  std::vector<std::string> failures;  // built-in assertions that did not hold
  bool converged = true;
  double wall_seconds = 0.0;

  ExitCode status() const noexcept;
};

/// Runs one of capacity-scaling, onebox, halfplane-counterexample,
/// disk-counterexample, shift-counterexample. Throws ConfigError on bad
/// parameters (before computing anything).
ExperimentReport run(const ExperimentConfig& config);

/// Checks parameter names and ranges only.
void validate(const ExperimentConfig& config);

/// CSV: header line, `,` separator, integers verbatim, doubles as %.17g.
std::string emit_csv(const ExperimentReport& report);
/// JSON sidecar: experiment, parameters, rows as objects, failures,
/// converged, wall time.
std::string emit_json(const ExperimentReport& report);

/// Writes `path` (CSV) and the sidecar next to it with extension .json.
/// Throws std::runtime_error naming the path on I/O failure.
void write_report(const ExperimentReport& report, const std::string& path);

}  // namespace weisslab
