#pragma once

// Experiment configuration: JSON files plus command-line overrides.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace uodual {

inline constexpr std::string_view kSchema = "uodual/1";

std::vector<std::string> command_names();

struct ExperimentConfig {
  std::string command = "suite";
  std::uint64_t seed = 7;
  std::optional<std::string> out;
  /// Adds wall time to the report (which then is no longer reproducible).
  bool timing = false;
  /// Command-specific default when unset.
  std::optional<double> tol;

  // conjugate, norm
  std::string orlicz = "power";  // power | exponential
  double p = 2.0;
  double s_max = 8.0;
  int grid_size = 4096;
  std::vector<double> probes;  // conjugate: t values; empty means a default grid
  std::vector<double> values;  // norm: point values on a uniform space

  // dualrep
  std::string functional = "entropic";
  double beta = 1.0;
  double alpha = 0.5;
  double radius = 1.0;
  int space_level = 2;
  double dual_grid_step = 0.05;
  std::string dual_grid = "auto";  // auto | density | signed
  double box = 64.0;
  int probe_count = 16;

  // fatou
  std::string rho = "expectation";
  std::string seq = "spike";
  std::size_t n_max = 64;

  // uodual-test
  std::string model = "ell1";
  nlohmann::json phi = "ones";  // name or TailVector JSON
  std::size_t budget = 200;

  double tol_or(double fallback) const { return tol.value_or(fallback); }
};

/// Parses a JSON object; keys are the field names above with '-' or '_'.
/// Unknown keys and wrong types raise ConfigInvalid naming the field;
/// malformed JSON raises ConfigInvalid naming the byte offset. Keys in
/// `overrides` replace those of the text. Empty text means all defaults.
ExperimentConfig parse_config(std::string_view text, const nlohmann::json& overrides = nlohmann::json::object());

nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace uodual
