#pragma once

// Orlicz functions, numerical conjugation, Luxemburg norms and growth
// diagnostics.

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "uodual/measure.hpp"

namespace uodual {

struct ConjugateOptions;

/// Convex nondecreasing Phi on [0, inf) with Phi(0) = 0, not identically 0.
///
/// Parametric kinds are evaluated in closed form. Sampled functions are
/// piecewise linear through their knots and extrapolated linearly past the
/// last knot; `domain_cap()` is the largest argument whose value is trusted
/// (the last knot unless stated otherwise).
class OrliczFunction {
 public:
  enum class Kind { Power, Exponential, Sampled };

  /// coefficient * s^exponent, exponent >= 1.
  static OrliczFunction power(double exponent, double coefficient = 1.0);
  /// s^p / p.
  static OrliczFunction normalized_power(double exponent) { return power(exponent, 1.0 / exponent); }
  /// e^s - 1.
  static OrliczFunction exponential();
  /// Validates Phi(0)=0, monotonicity, and convexity (second differences of
  /// values against the chord of their neighbours >= -1e-9).
  static OrliczFunction sampled(Eigen::VectorXd knots, Eigen::VectorXd values, double domain_cap = -1.0);

  double operator()(double s) const;

  Kind kind() const { return kind_; }
  double exponent() const { return exponent_; }
  double coefficient() const { return coefficient_; }
  double domain_cap() const { return cap_; }
  const Eigen::VectorXd& knots() const { return knots_; }
  const Eigen::VectorXd& values() const { return values_; }
  std::string describe() const;

 private:
  OrliczFunction() = default;
  static OrliczFunction from_samples(Eigen::VectorXd knots, Eigen::VectorXd values, double domain_cap,
                                     bool require_nonzero);
  friend OrliczFunction conjugate(const OrliczFunction& phi, const ConjugateOptions& options);

  Kind kind_ = Kind::Power;
  double exponent_ = 1.0;
  double coefficient_ = 1.0;
  double cap_ = 0.0;
  Eigen::VectorXd knots_;
  Eigen::VectorXd values_;
};

struct ConjugateOptions {
  /// Upper end of the s-range over which the sup is taken.
  double s_max = 8.0;
  int grid_size = 4096;
  /// Allowed disagreement between the narrow and the wide local refinement.
  double tol = 1e-9;
};

/// Psi(t) = sup_{0 <= s <= s_max} (s t - Phi(s)), sampled on a t-grid that is
/// quadratically graded towards 0. The grid ends at the left slope of Phi at
/// s_max: below that slope the truncated sup equals the full sup for convex
/// Phi, so the result's domain cap is exactly where truncation stops being
/// exact. For Phi(s) = s this gives Psi = 0 on [0, 1] and cap 1.
OrliczFunction conjugate(const OrliczFunction& phi, const ConjugateOptions& options = {});

/// Phi(s) + Psi(t) - s t. Nonnegative up to rounding when Psi is the
/// conjugate of Phi.
double young_gap(const OrliczFunction& phi, const OrliczFunction& psi, double s, double t);

/// Integral of Phi(|f| / lambda).
double modular(const RandomVariable& f, const OrliczFunction& phi, double lambda);

struct LuxemburgResult {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double modular_at_value = 0.0;
};

/// inf{lambda > 0 : modular(f, phi, lambda) <= 1}, by bracketing from sup|f|
/// and bisection to width `tol`. Returns the upper bracket endpoint.
LuxemburgResult luxemburg_norm(const RandomVariable& f, const OrliczFunction& phi, double tol = 1e-10);

enum class GrowthVerdict { IncreasingUnbounded, Bounded, Inconclusive };
std::string_view to_string(GrowthVerdict v);

struct GrowthReport {
  std::vector<double> probes;
  std::vector<double> ratios;
  GrowthVerdict verdict = GrowthVerdict::Inconclusive;
};

/// Phi(t)/t at each probe, graded over the last half of the probes:
/// nonincreasing or flat (relative change <= 1e-9) is bounded evidence,
/// strictly increasing with at least 1% relative growth is unbounded
/// evidence, anything else is inconclusive.
GrowthReport superlinear_growth(const OrliczFunction& phi, const std::vector<double>& probes);

struct Delta2Report {
  double ratio = 0.0;
  double argmax = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  int samples = 0;
};

/// max over `samples` equally spaced t in [t_lo, t_hi] of Phi(2t)/Phi(t).
/// A heuristic: a finite sample cannot decide the Delta_2 condition.
Delta2Report delta2_ratio(const OrliczFunction& phi, double t_lo, double t_hi, int samples);

nlohmann::json to_json(const GrowthReport& report);
nlohmann::json to_json(const Delta2Report& report);
nlohmann::json to_json(const LuxemburgResult& result);

/// CSV `s,phi` with header, one row per knot. Sampled functions only.
void write_csv(std::ostream& out, const OrliczFunction& phi);
OrliczFunction read_orlicz_csv(std::istream& in);

}  // namespace uodual
