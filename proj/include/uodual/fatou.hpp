#pragma once

// Bounded-uo lower semicontinuity (the Fatou property) of convex
// functionals along norm bounded a.e.-convergent sequences on dyadic
// discretizations of [0,1], and extraction of a.e.-convergent subsequences
// from L1-fast ones.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uodual/convex.hpp"
#include "uodual/measure.hpp"
#include "uodual/orlicz.hpp"

namespace uodual {

struct TestSequence {
  std::string name;
  /// n is 1-based; f_n lives on a dyadic space of level >= ceil(log2 n).
  std::function<RandomVariable(std::size_t)> generator;
  std::optional<RandomVariable> declared_limit;
  /// False for the families known not to converge a.e.
  bool ae_convergent = true;

  RandomVariable operator()(std::size_t n) const { return generator(n); }
};

/// spike:       f_n = n 1_[0,1/n], averaged onto the cells of level
///              ceil(log2 n) (exact when n is a power of two; the integral
///              is 1 for every n). Limit 0.
/// typewriter:  n = 2^k + j, f_n = 1_[j 2^-k, (j+1) 2^-k). No limit.
/// oscillating: f_n = (-1)^n 1_[0,1/2]. No limit.
/// constant:    f_n = base. Limit base.
TestSequence generate(std::string_view name, const std::optional<RandomVariable>& base = std::nullopt);
TestSequence custom_sequence(std::function<RandomVariable(std::size_t)> generator,
                             std::optional<RandomVariable> declared_limit);

struct LscOptions {
  std::size_t n_max = 64;
  double tol = 1e-9;
  /// Norms of (f_n) above this bound raise NotNormBounded.
  double norm_bound = 1e6;
  /// Norm used for the boundedness check (L1 by default).
  OrliczFunction phi = OrliczFunction::power(1.0);
};

enum class LscVerdict { SatisfiedEvidence, Violated };
std::string_view to_string(LscVerdict v);

struct LscReport {
  std::string name;
  std::size_t n_max = 0;
  std::vector<double> values;
  std::vector<double> norms;
  /// min of rho(f_n) over the last half of the indices.
  double liminf = 0.0;
  double rho_at_limit = 0.0;
  LscVerdict verdict = LscVerdict::SatisfiedEvidence;
};

/// Violated iff rho(limit) > liminf + tol.
LscReport check_bounded_uo_lsc(const ConvexFunctional& rho, const TestSequence& s, const LscOptions& options = {});

/// liminf estimate (min over the last half) of values restricted to the
/// given 1-based indices, in order.
double liminf_estimate(const std::vector<double>& values, const std::vector<std::size_t>& indices);

struct AeVerdict {
  bool passed = true;
  int level = 0;
  /// Per cell of the finest level: extracted indices past the midpoint at
  /// which |f_{n_k} - f| > tol.
  std::vector<int> late_hits;
  std::vector<std::size_t> failing_cells;
};

struct ExtractionResult {
  std::vector<std::size_t> indices;
  std::vector<double> certificates;
  AeVerdict ae_verdict;
};

struct ExtractionOptions {
  std::size_t n_max = 256;
  double tol = 1e-9;
  /// Number of indices to extract; 0 means floor(log2 n_max).
  std::size_t target_count = 0;
};

/// Picks n_1 < n_2 < ... with certificate integral |f_{n_k} - f| w <= 2^-k.
/// Among the admissible indices of a step the one keeping the running
/// dominating sum sum_k |f_{n_k} - f| smallest in sup norm is taken
/// (lowest index on ties), so the extracted tails stay pointwise summable
/// at the resolution of the grid. A cell passes the a.e. verdict when at
/// most one extracted index past the midpoint still exceeds tol there.
/// ExtractionStalled when some step finds no admissible index.
ExtractionResult extract_ae_subsequence(const TestSequence& s, const RandomVariable& weight,
                                        const RandomVariable& limit, const ExtractionOptions& options = {});

struct RecurrenceReport {
  int level = 0;
  std::size_t windows = 0;
  /// Per cell: number of dyadic index windows [2^i, 2^(i+1)) in which the
  /// cell is exceeded.
  std::vector<std::size_t> windows_hit;
  std::vector<bool> recurrent;
  bool all_recurrent = false;
};

/// A cell is recurrent (not-a.e.-convergent evidence) when |f_n - f| > tol
/// somewhere in every complete dyadic index window up to n_max.
RecurrenceReport recurrence_report(const TestSequence& s, const RandomVariable& limit, std::size_t n_max,
                                   double tol = 1e-9);

struct NormBoundReport {
  std::vector<double> norms;
  double bound = 0.0;
  bool unbounded_evidence = false;
};

/// Luxemburg norms of f_1..f_{n_max}. Unbounded evidence when the running
/// max grows by more than a factor 1 + 1e-3 from each power of two in
/// [n_max/4, n_max] to the next.
NormBoundReport verify_norm_bounded(const TestSequence& s, const OrliczFunction& phi, std::size_t n_max,
                                    double tol = 1e-10);

nlohmann::json to_json(const LscReport& report);
nlohmann::json to_json(const ExtractionResult& result);
nlohmann::json to_json(const NormBoundReport& report);

}  // namespace uodual
