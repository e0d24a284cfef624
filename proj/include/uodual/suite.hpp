#pragma once

// The acceptance suites: seeded end-to-end checks across all modules.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace uodual {

struct SuiteItem {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  double time_limit = 0.0;
  /// Deterministic given the seed.
  nlohmann::json details;
};

inline constexpr int kSuiteItems = 7;

/// 1 conjugacy, 2 luxemburg, 3 uo-dual, 4 uo-calculus, 5 fenchel-moreau,
/// 6 fatou, 7 extraction.
SuiteItem run_suite_item(int id, std::uint64_t seed);
std::vector<SuiteItem> run_suite(std::uint64_t seed);

/// Wall time is left out unless `timing` is set.
nlohmann::json to_json(const SuiteItem& item, bool timing = false);

}  // namespace uodual
