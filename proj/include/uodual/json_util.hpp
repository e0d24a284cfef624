#pragma once

#include <cmath>
#include <vector>

#include <json.hpp>

namespace uodual {

/// JSON has no infinity; extended reals go out as "+inf" / "-inf".
inline nlohmann::json ext_json(double x) {
  if (std::isinf(x)) return x > 0 ? "+inf" : "-inf";
  return x;
}

inline nlohmann::json ext_json(const std::vector<double>& xs) {
  nlohmann::json out = nlohmann::json::array();
  for (double x : xs) out.push_back(ext_json(x));
  return out;
}

}  // namespace uodual
