#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "uodual/measure.hpp"

namespace uodual {

/// {"points": [...], "weights": [...], "level": L | null}
nlohmann::json space_to_json(const ProbabilitySpace& space);
SpacePtr space_from_json(const nlohmann::json& j);

/// One row per point: index,weight,value (with header line).
void write_csv(std::ostream& out, const RandomVariable& f);
/// Reads the CSV form back onto `space`; indices must run 0..n-1 in order
/// and weights must match the space.
RandomVariable read_csv(std::istream& in, SpacePtr space);

}  // namespace uodual
