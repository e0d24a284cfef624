#pragma once

// uo- and order-convergence, disjointness, the order continuous part and
// uo-dual membership in the sequence-space models l1, c0 and l-inf.
//
// In these atomic models uo-convergence is coordinatewise convergence.
// A finite horizon cannot prove a limit, so positive answers are graded as
// evidence while negative answers carry an exact witness.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uodual/tail_vector.hpp"

namespace uodual {

struct VectorSequence {
  /// n is 1-based. May be called past the horizon.
  std::function<TailVector(std::size_t)> generator;
  std::size_t horizon = 0;
  std::optional<TailVector> declared_limit;
  std::string name = "custom";

  TailVector operator()(std::size_t n) const { return generator(n); }
};

struct UoNullResult {
  bool null_evidence = false;
  /// 1-based coordinate that shows no convergence to 0 (0 when none).
  std::size_t witness_coordinate = 0;
  std::string_view verdict() const { return null_evidence ? "uo-null-evidence" : "not-uo-null"; }
};

/// For every coordinate below the budget (default horizon/2) and for the
/// tail limits, the values |x_n(k)| over n in [H/2, H] must either be
/// <= tol on the last quarter, or be nonincreasing and at least halve
/// across the last half (decay evidence for slowly vanishing terms such as
/// 1/n). The first coordinate failing both is the witness.
UoNullResult is_uo_null(const VectorSequence& s, SpaceModel m, double tol, std::size_t coordinate_budget = 0);

struct OrderNullResult {
  bool order_null_evidence = false;
  UoNullResult uo;
  bool order_bounded_tail = false;
  /// sup_{H/2 <= n <= H} |x_n| and its model norm; the same sup over
  /// [H/2, 2H] is used to see whether the envelope keeps growing.
  TailVector envelope;
  double envelope_norm = 0.0;
  double extended_envelope_norm = 0.0;
  std::string_view verdict() const { return order_null_evidence ? "order-null-evidence" : "not-order-null"; }
};

/// Order null = uo-null plus an order bounded tail. The tail envelope is
/// bounded when it is a member of the model and doubling the window does
/// not raise its norm by more than tol (+1e-9 relative).
OrderNullResult is_order_null(const VectorSequence& s, SpaceModel m, double tol, std::size_t coordinate_budget = 0);

struct DisjointResult {
  bool disjoint = true;
  std::size_t first = 0;  // 1-based witness pair when not disjoint
  std::size_t second = 0;
};

/// Exact: |x_n| meet |x_m| == 0 for all n < m <= horizon.
DisjointResult is_disjoint(const VectorSequence& s);

struct OcPartResult {
  bool member = true;
  std::vector<TailVector> witness_blocks;
  std::vector<double> witness_norms;
  std::string_view verdict() const { return member ? "member" : "not-member"; }
};

/// Membership of x in the order continuous part of the model. In l-inf this
/// is x in c0; otherwise a witness is a disjoint dyadic block sequence
/// under |x| whose norms stay at least half the tail limit.
OcPartResult oc_part_membership(const TailVector& x, SpaceModel m, std::size_t witness_blocks = 8);

struct UoDualResult {
  bool consistent = true;
  std::string generator;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  /// 1-based indices in the last quarter with |phi(x_n)| >= delta, and the
  /// values there.
  std::vector<std::size_t> witness_indices;
  std::vector<double> witness_values;
  /// The first witness element x_n.
  std::optional<TailVector> witness_element;
  std::string_view verdict() const { return consistent ? "consistent" : "violated"; }
};

inline constexpr double kUoDualDelta = 1e-6;

/// Falsification search for a norm bounded disjoint sequence (x_n) in the
/// model with phi(x_n) not tending to 0. Families are tried in a fixed
/// order: unit vectors, sign-aligned growing blocks, seeded random blocks.
/// phi pairs coordinatewise; on c0 and l-inf it must lie in l1.
UoDualResult uo_dual_test(const TailVector& phi, SpaceModel m, std::size_t budget, std::uint64_t seed);

/// The uo-dual of the model, as a model.
SpaceModel uo_dual_expected(SpaceModel m);

nlohmann::json to_json(const UoNullResult& r);
nlohmann::json to_json(const OrderNullResult& r);
nlohmann::json to_json(const DisjointResult& r);
nlohmann::json to_json(const OcPartResult& r);
nlohmann::json to_json(const UoDualResult& r);

}  // namespace uodual
