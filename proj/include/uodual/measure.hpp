#pragma once

// Finite probability spaces, random variables on them, and the integral
// and duality pairing every L^Phi computation is built on.
//
// Spaces are either arbitrary finite weighted point sets or dyadic
// discretizations of [0,1] (2^L equal cells). Only dyadic spaces refine.

#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "uodual/error.hpp"

namespace uodual {

inline constexpr int kMaxDyadicLevel = 24;

/// Compensated (Neumaier) summation in ascending index order. The order is
/// fixed so reports are reproducible; compensation keeps refinement from
/// perturbing integrals.
template <typename Derived>
typename Derived::Scalar ordered_sum(const Eigen::DenseBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Scalar sum = 0, comp = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Scalar x = v(i);
    const Scalar t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

template <typename Scalar>
class BasicProbabilitySpace {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Ptr = std::shared_ptr<const BasicProbabilitySpace>;

  /// Empty `points` means labels "0".."n-1".
  static Ptr make(std::vector<std::string> points, Vector weights) {
    if (points.empty()) points = default_labels(weights.size());
    return Ptr(new BasicProbabilitySpace(std::move(points), std::move(weights), std::nullopt));
  }

  /// Uniform weights on n labelled points "0".."n-1". Not refinable.
  static Ptr uniform(int n) {
    if (n <= 0) throw Error(Errc::InvalidArgument, "uniform space needs at least one point");
    return make(default_labels(n), Vector::Constant(n, Scalar(1) / Scalar(n)));
  }

  /// 2^level equal cells of [0,1].
  static Ptr dyadic(int level) {
    if (level < 0 || level > kMaxDyadicLevel)
      throw Error(Errc::InvalidArgument, "dyadic level out of range: " + std::to_string(level));
    const Eigen::Index n = Eigen::Index(1) << level;
    return Ptr(new BasicProbabilitySpace(default_labels(n), Vector::Constant(n, std::ldexp(Scalar(1), -level)),
                                         level));
  }

  Eigen::Index size() const { return weights_.size(); }
  const Vector& weights() const { return weights_; }
  const std::vector<std::string>& points() const { return points_; }
  std::optional<int> level() const { return level_; }
  bool is_dyadic() const { return level_.has_value(); }

  bool same_as(const BasicProbabilitySpace& other) const {
    if (this == &other) return true;
    if (level_ || other.level_) return level_ == other.level_;
    return points_ == other.points_ && weights_ == other.weights_;
  }

 private:
  BasicProbabilitySpace(std::vector<std::string> points, Vector weights, std::optional<int> level)
      : points_(std::move(points)), weights_(std::move(weights)), level_(level) {
    if (weights_.size() == 0) throw Error(Errc::InvalidArgument, "probability space has no points");
    if (Eigen::Index(points_.size()) != weights_.size())
      throw Error(Errc::InvalidArgument, "point labels and weights differ in length");
    for (Eigen::Index i = 0; i < weights_.size(); ++i)
      if (!(weights_(i) > 0) || !std::isfinite(weights_(i)))
        throw Error(Errc::InvalidArgument, "weight " + std::to_string(i) + " is not a positive finite number");
    if (std::abs(ordered_sum(weights_) - Scalar(1)) > Scalar(1e-12))
      throw Error(Errc::InvalidArgument, "weights do not sum to 1");
  }

  static std::vector<std::string> default_labels(Eigen::Index n) {
    std::vector<std::string> labels;
    labels.reserve(std::size_t(n));
    for (Eigen::Index i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return labels;
  }

  std::vector<std::string> points_;
  Vector weights_;
  std::optional<int> level_;
};

template <typename Scalar>
class BasicRandomVariable {
 public:
  using Space = BasicProbabilitySpace<Scalar>;
  using Vector = typename Space::Vector;

  BasicRandomVariable(typename Space::Ptr space, Vector values)
      : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) throw Error(Errc::InvalidArgument, "random variable without a space");
    if (values_.size() != space_->size())
      throw Error(Errc::InvalidArgument, "value count does not match the point count");
    if (!values_.allFinite()) throw Error(Errc::InvalidArgument, "random variable values must be finite");
  }

  static BasicRandomVariable constant(typename Space::Ptr space, Scalar c) {
    const auto n = space->size();
    return BasicRandomVariable(std::move(space), Vector::Constant(n, c));
  }

  const Space& space() const { return *space_; }
  const typename Space::Ptr& space_ptr() const { return space_; }
  const Vector& values() const { return values_; }
  Eigen::Index size() const { return values_.size(); }
  Scalar operator[](Eigen::Index i) const { return values_(i); }

  /// Same space, new values.
  BasicRandomVariable with_values(Vector values) const { return BasicRandomVariable(space_, std::move(values)); }

 private:
  typename Space::Ptr space_;
  Vector values_;
};

using ProbabilitySpace = BasicProbabilitySpace<double>;
using RandomVariable = BasicRandomVariable<double>;
using SpacePtr = ProbabilitySpace::Ptr;

template <typename Scalar>
Scalar integrate(const BasicRandomVariable<Scalar>& f) {
  return ordered_sum(f.values().cwiseProduct(f.space().weights()));
}

/// Replicates every cell value across its 2^(level - current) subcells.
template <typename Scalar>
BasicRandomVariable<Scalar> refine(const BasicRandomVariable<Scalar>& f, int level) {
  const auto current = f.space().level();
  if (!current) throw Error(Errc::NotDyadic, "only dyadic spaces can be refined");
  if (level < *current)
    throw Error(Errc::InvalidArgument, "cannot refine from level " + std::to_string(*current) + " down to " +
                                           std::to_string(level));
  if (level == *current) return f;
  auto space = BasicProbabilitySpace<Scalar>::dyadic(level);
  const Eigen::Index factor = Eigen::Index(1) << (level - *current);
  typename BasicRandomVariable<Scalar>::Vector out(space->size());
  for (Eigen::Index i = 0; i < f.size(); ++i) out.segment(i * factor, factor).setConstant(f[i]);
  return BasicRandomVariable<Scalar>(std::move(space), std::move(out));
}

/// Both variables expressed on one space: the finer dyadic level, or the
/// shared space itself.
template <typename Scalar>
std::pair<BasicRandomVariable<Scalar>, BasicRandomVariable<Scalar>> common_refinement(
    const BasicRandomVariable<Scalar>& f, const BasicRandomVariable<Scalar>& g) {
  if (f.space().same_as(g.space())) return {f, g};
  const auto lf = f.space().level(), lg = g.space().level();
  if (lf && lg) {
    const int level = std::max(*lf, *lg);
    return {refine(f, level), refine(g, level)};
  }
  throw Error(Errc::IncompatibleSpaces, "neither space refines to the other");
}

/// <f, g> = integral of f*g over the common refinement.
template <typename Scalar>
Scalar pairing(const BasicRandomVariable<Scalar>& f, const BasicRandomVariable<Scalar>& g) {
  const auto [a, b] = common_refinement(f, g);
  return ordered_sum(a.values().cwiseProduct(b.values()).cwiseProduct(a.space().weights()));
}

template <typename Scalar>
Scalar sup_abs(const BasicRandomVariable<Scalar>& f) {
  return f.values().cwiseAbs().maxCoeff();
}

template <typename Scalar>
BasicRandomVariable<Scalar> abs(const BasicRandomVariable<Scalar>& f) {
  return f.with_values(f.values().cwiseAbs());
}

template <typename Scalar>
BasicRandomVariable<Scalar> operator+(const BasicRandomVariable<Scalar>& f, const BasicRandomVariable<Scalar>& g) {
  const auto [a, b] = common_refinement(f, g);
  return a.with_values(a.values() + b.values());
}

template <typename Scalar>
BasicRandomVariable<Scalar> operator-(const BasicRandomVariable<Scalar>& f, const BasicRandomVariable<Scalar>& g) {
  const auto [a, b] = common_refinement(f, g);
  return a.with_values(a.values() - b.values());
}

template <typename Scalar>
BasicRandomVariable<Scalar> operator*(Scalar c, const BasicRandomVariable<Scalar>& f) {
  return f.with_values(c * f.values());
}

/// Pointwise product.
template <typename Scalar>
BasicRandomVariable<Scalar> product(const BasicRandomVariable<Scalar>& f, const BasicRandomVariable<Scalar>& g) {
  const auto [a, b] = common_refinement(f, g);
  return a.with_values(a.values().cwiseProduct(b.values()));
}

/// Indicator of the dyadic interval [begin/2^level, end/2^level).
inline RandomVariable dyadic_indicator(int level, Eigen::Index begin, Eigen::Index end, double height = 1.0) {
  auto space = ProbabilitySpace::dyadic(level);
  if (begin < 0 || end > space->size() || begin > end)
    throw Error(Errc::InvalidArgument, "dyadic interval outside [0,1]");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space->size());
  v.segment(begin, end - begin).setConstant(height);
  return RandomVariable(std::move(space), std::move(v));
}

}  // namespace uodual
