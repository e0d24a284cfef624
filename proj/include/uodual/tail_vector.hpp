#pragma once

// Sequence-space vectors with a finite prefix and a symbolic tail, and the
// exact lattice algebra on them.
//
// Coordinates are 0-based in code; coordinate k past the prefix (length P)
// takes the tail value at j = k - P. A tail is
//
//     T(j) = c + sum_i a_i r_i^j,   0 < r_i < 1,
//
// which covers the zero, constant and geometric kinds and is closed under
// sums and scaling. Lattice operations (|x|, meet, join) stay in the class
// because the sign of T(j) is eventually constant: the switchover index
// after which it no longer changes is computed from the term magnitudes and
// the coordinates before it are moved into the prefix.

#include <cstddef>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace uodual {

struct GeometricTerm {
  double a = 0.0;
  double r = 0.0;
  bool operator==(const GeometricTerm&) const = default;
};

class Tail {
 public:
  enum class Kind { Zero, Constant, Geometric, Mixed };

  Tail() = default;
  static Tail zero() { return {}; }
  static Tail constant(double c);
  static Tail geometric(double a, double r);
  /// General form; terms with equal ratio are merged, zero terms dropped.
  /// Terms with r == 0 are allowed here and resolved by TailVector.
  static Tail mixed(double c, std::vector<GeometricTerm> terms);

  double at(std::size_t j) const;
  /// The tail seen from j0 on: j -> T(j + j0).
  Tail shifted(std::size_t j0) const;
  Tail scaled(double s) const;
  Tail negated() const { return scaled(-1.0); }
  friend Tail operator+(const Tail& x, const Tail& y);

  Kind kind() const;
  double limit() const { return constant_; }
  const std::vector<GeometricTerm>& terms() const { return terms_; }
  bool is_zero() const { return constant_ == 0.0 && terms_.empty(); }
  bool has_instant_terms() const;
  Tail without_instant_terms() const;

  bool operator==(const Tail&) const = default;

 private:
  void normalize();

  double constant_ = 0.0;
  std::vector<GeometricTerm> terms_;  // strictly decreasing r, nonzero a
};

/// Where the sign of a tail stops changing.
struct SignSwitchover {
  std::size_t index = 0;  // sign is constant for j >= index
  int sign = 0;           // -1, 0 (identically zero) or +1
};
SignSwitchover sign_switchover(const Tail& tail);

class TailVector {
 public:
  TailVector() = default;
  TailVector(std::vector<double> prefix, Tail tail = Tail::zero());

  static TailVector zero() { return {}; }
  /// e_n with 1-based n: a 1 at coordinate n-1.
  static TailVector unit(std::size_t n, double height = 1.0);
  static TailVector constant(double c) { return TailVector({}, Tail::constant(c)); }
  /// Indicator of coordinates [begin, end), 0-based.
  static TailVector block(std::size_t begin, std::size_t end, double height = 1.0);

  double at(std::size_t k) const;
  const std::vector<double>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }
  std::size_t prefix_size() const { return prefix_.size(); }
  bool is_zero() const;

  /// First n coordinates.
  std::vector<double> head(std::size_t n) const;
  /// Same vector with the prefix materialized to at least `length`
  /// coordinates (not canonical).
  TailVector extended_to(std::size_t length) const;

 private:
  void canonicalize();

  std::vector<double> prefix_;
  Tail tail_;
};

/// Coordinatewise equality through both tails.
bool equivalent(const TailVector& x, const TailVector& y, double tol = 0.0);

TailVector abs(const TailVector& x);
TailVector meet(const TailVector& x, const TailVector& y);
TailVector join(const TailVector& x, const TailVector& y);
TailVector positive_part(const TailVector& x);
TailVector operator+(const TailVector& x, const TailVector& y);
TailVector operator-(const TailVector& x, const TailVector& y);
TailVector operator*(double s, const TailVector& x);

/// sum_k phi_k x_k in closed form. Throws FunctionalNotBounded when both
/// tails have nonzero limits (the series diverges).
double dual_pairing(const TailVector& phi, const TailVector& x);

enum class SpaceModel { Ell1, C0, EllInfty };
std::string_view to_string(SpaceModel m);
SpaceModel space_model_from_string(std::string_view name);

bool is_member(const TailVector& x, SpaceModel m);
/// l1: sum of |coordinates| (inf for a nonvanishing tail); c0 and l-inf:
/// sup of |coordinates|.
double model_norm(const TailVector& x, SpaceModel m);

nlohmann::json to_json(const TailVector& x);
TailVector tail_vector_from_json(const nlohmann::json& j);

}  // namespace uodual
