#include <algorithm>
#include <cmath>
#include <random>

#include "uodual/error.hpp"
#include "uodual/lattice.hpp"

namespace uodual {
namespace {

using Family = std::function<TailVector(std::size_t)>;

double sign_of(double v) { return (v > 0) - (v < 0); }

// Scales x to unit model norm (zero stays zero).
TailVector normalized(TailVector x, SpaceModel m) {
  const double norm = model_norm(x, m);
  return norm > 0 ? (1.0 / norm) * x : x;
}

// Block n (1-based) covers [n(n-1)/2, n(n+1)/2): consecutive, growing.
std::pair<std::size_t, std::size_t> growing_block(std::size_t n) { return {n * (n - 1) / 2, n * (n + 1) / 2}; }

Family unit_vectors() {
  return [](std::size_t n) { return TailVector::unit(n); };
}

Family aligned_blocks(const TailVector& phi, SpaceModel m) {
  return [phi, m](std::size_t n) {
    const auto [begin, end] = growing_block(n);
    std::vector<double> prefix(end, 0.0);
    for (std::size_t k = begin; k < end; ++k) {
      const double s = sign_of(phi.at(k));
      prefix[k] = s == 0 ? 1.0 : s;
    }
    return normalized(TailVector(std::move(prefix)), m);
  };
}

// Consecutive random blocks of length 1..8 with values in [-1, 1], drawn
// once up front so the family is a pure function of (seed, budget).
Family random_blocks(SpaceModel m, std::uint64_t seed, std::size_t budget) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> length(1, 8);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<TailVector> elements;
  std::size_t start = 0;
  for (std::size_t n = 0; n < budget; ++n) {
    const std::size_t len = length(rng);
    std::vector<double> prefix(start + len, 0.0);
    for (std::size_t k = start; k < start + len; ++k) prefix[k] = value(rng);
    elements.push_back(normalized(TailVector(std::move(prefix)), m));
    start += len;
  }
  return [elements = std::move(elements)](std::size_t n) { return elements.at(n - 1); };
}

}  // namespace

UoDualResult uo_dual_test(const TailVector& phi, SpaceModel m, std::size_t budget, std::uint64_t seed) {
  if (budget < 100) throw Error(Errc::InvalidArgument, "uo_dual_test needs a budget of at least 100");
  if (m != SpaceModel::Ell1 && !std::isfinite(model_norm(phi, SpaceModel::Ell1)))
    throw Error(Errc::FunctionalNotBounded, "phi is not summable, so it is not a bounded functional on " +
                                                std::string(to_string(m)));

  const std::vector<std::pair<std::string, Family>> families = {
      {"unit-vectors", unit_vectors()},
      {"aligned-blocks", aligned_blocks(phi, m)},
      {"random-blocks", random_blocks(m, seed, budget)},
  };

  UoDualResult result;
  result.seed = seed;
  result.budget = budget;
  const std::size_t last_quarter = budget - budget / 4 + 1;
  for (const auto& [name, family] : families) {
    for (std::size_t n = last_quarter; n <= budget; ++n) {
      const TailVector x = family(n);
      const double value = std::abs(dual_pairing(phi, x));
      if (value >= kUoDualDelta) {
        if (!result.witness_element) result.witness_element = x;
        result.witness_indices.push_back(n);
        result.witness_values.push_back(value);
      }
    }
    if (!result.witness_indices.empty()) {
      result.consistent = false;
      result.generator = name;
      return result;
    }
  }
  result.generator = families.back().first;
  return result;
}

nlohmann::json to_json(const UoDualResult& r) {
  nlohmann::json j{{"verdict", std::string(r.verdict())},
                   {"generator", r.generator},
                   {"seed", r.seed},
                   {"budget", r.budget}};
  if (r.consistent) {
    j["witness"] = nullptr;
  } else {
    j["witness"] = {{"indices", r.witness_indices},
                    {"values", r.witness_values},
                    {"first_element", to_json(*r.witness_element)}};
  }
  return j;
}

}  // namespace uodual
