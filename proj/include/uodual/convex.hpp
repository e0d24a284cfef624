#pragma once

// Convex functionals on finite probability spaces: numerical Fenchel
// conjugation, biconjugate reconstruction over dual grids, and the
// dual-representation check rho == rho**.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uodual/measure.hpp"

namespace uodual {

/// Extended-real valued proper convex functional, given as an oracle.
/// Builtins are space-generic: they evaluate on whatever space the
/// argument lives on.
struct ConvexFunctional {
  std::string name;
  std::function<double(const RandomVariable&)> evaluate;
  /// A point of the given space where the functional is finite.
  std::function<RandomVariable(const SpacePtr&)> proper_witness;
  /// Closed-form conjugate, used only to check the numerical one.
  std::function<double(const RandomVariable&)> known_conjugate;
  /// rho(f + c) == rho(f) + c.
  bool cash_invariant = false;

  double operator()(const RandomVariable& f) const { return evaluate(f); }
};

struct BuiltinParams {
  double beta = 1.0;    // entropic
  double alpha = 0.5;   // avar
  double radius = 1.0;  // ball indicators
};

/// The test zoo: expectation, neg-expectation, entropic, avar,
/// ball-indicator (closed sup-norm ball), open-ball-indicator, worst-case
/// and quadratic (half the squared L2 norm).
ConvexFunctional builtin(std::string_view name, const BuiltinParams& params = {});
std::vector<std::string> builtin_names();
/// <f, g0>.
ConvexFunctional linear_functional(const RandomVariable& g0);

struct SearchConfig {
  /// Per-coordinate box [-box, box] standing in for the whole space.
  double box = 64.0;
  int starts = 4;
  /// Allowed disagreement between restarts, and the growth that marks a
  /// boundary optimum as unbounded.
  double tol = 1e-6;
  std::uint64_t seed = 0;
  int max_sweeps = 400;
};

struct ConjugateValue {
  /// +inf when the boundary flag is set.
  double value = 0.0;
  /// Best value found inside the box.
  double box_value = 0.0;
  /// The sup sat on the box boundary and kept growing when the box was
  /// doubled: evidence for +inf.
  bool boundary_flag = false;
  double restart_spread = 0.0;
  std::optional<RandomVariable> argmax;
};

/// sup_f <f, g> - rho(f) by multi-start coordinate ascent over the point
/// values of f. Line searches run along the coordinate axes, the constant
/// direction, and pairwise differences e_i - e_j, so that translation and
/// mass-shifting moves are reachable for nonsmooth functionals.
ConjugateValue fenchel_conjugate(const ConvexFunctional& rho, const RandomVariable& g, const SearchConfig& config = {});

struct ConjugateField {
  std::vector<RandomVariable> dual_points;
  std::vector<double> values;
  std::vector<ConjugateValue> search_report;  // empty for oracle fields
};

ConjugateField conjugate_field(const ConvexFunctional& rho, std::vector<RandomVariable> dual_points,
                               const SearchConfig& config = {});
/// Field from the closed-form conjugate. Throws InvalidArgument when rho
/// has none.
ConjugateField oracle_conjugate_field(const ConvexFunctional& rho, std::vector<RandomVariable> dual_points);

struct BiconjugateValue {
  double value = 0.0;
  std::size_t argmax = 0;  // lowest index on ties
};

/// max over dual points of <f, g> - rho*(g). Points with rho*(g) = +inf are
/// skipped; EmptyDualGrid when none is finite.
BiconjugateValue biconjugate(const ConjugateField& field, const RandomVariable& f);

enum class RepresentationVerdict { RepresentableEvidence, GapFound };
std::string_view to_string(RepresentationVerdict v);

struct DualRepresentationReport {
  std::vector<RandomVariable> probes;
  std::vector<double> rho_values;
  std::vector<double> biconjugate_values;
  std::vector<double> gaps;
  double max_gap = 0.0;
  /// Most negative gap; below -tol means the conjugate was overestimated.
  double min_gap = 0.0;
  RepresentationVerdict verdict = RepresentationVerdict::RepresentableEvidence;
  std::optional<std::size_t> witness;  // first probe with gap > tol
};

DualRepresentationReport dual_representation_check(const ConvexFunctional& rho,
                                                   const std::vector<RandomVariable>& probes,
                                                   const ConjugateField& field, double tol);

/// Densities g >= 0 with integral 1 whose point masses w_i g_i are
/// multiples of `step` (1/step must be an integer).
std::vector<RandomVariable> density_grid(const SpacePtr& space, double step);
/// All g with coordinates in {-radius, -radius + step, ..., radius}.
std::vector<RandomVariable> signed_grid(const SpacePtr& space, double step, double radius);

/// max |rho(f + c) - rho(f) - c| over the given shifts.
double cash_invariance_defect(const ConvexFunctional& rho, const RandomVariable& f, const std::vector<double>& shifts);

/// CSV `g_index,value,boundary_flag`.
void write_csv(std::ostream& out, const ConjugateField& field);
nlohmann::json to_json(const DualRepresentationReport& report);

}  // namespace uodual
