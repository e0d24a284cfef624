#pragma once

#include <string>

#include <json.hpp>

#include "uodual/config.hpp"

namespace uodual {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCounterexample = 2;

struct RunOutcome {
  nlohmann::json report;
  int exit_code = kExitOk;
};

/// Dispatches on config.command. Errors become a report with an `error`
/// object and exit code 1; violated and gap-found verdicts give exit code 2.
RunOutcome run(const ExperimentConfig& config);

/// Report JSON as written to disk: two-space indent, trailing newline.
std::string render(const nlohmann::json& report);

}  // namespace uodual
