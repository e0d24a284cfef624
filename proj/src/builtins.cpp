#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uodual/convex.hpp"

namespace uodual {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDensityTol = 1e-12;

bool is_density(const RandomVariable& g, double upper = kInf) {
  if ((g.values().array() < -kDensityTol).any()) return false;
  if ((g.values().array() > upper + kDensityTol).any()) return false;
  return std::abs(integrate(g) - 1.0) <= kDensityTol;
}

bool is_constant(const RandomVariable& g, double c) { return (g.values().array() - c).abs().maxCoeff() <= kDensityTol; }

auto zero_witness() {
  return [](const SpacePtr& space) { return RandomVariable::constant(space, 0.0); };
}

// sup{ <f, g> : 0 <= g <= 1/alpha, integral g = 1 }: fill the largest
// values of f first, each point taking at most w_i / alpha of the mass.
double average_value_at_risk(const RandomVariable& f, double alpha) {
  const auto& w = f.space().weights();
  std::vector<Eigen::Index> order(std::size_t(f.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return f[a] > f[b]; });
  double remaining = 1.0;
  Eigen::VectorXd parts = Eigen::VectorXd::Zero(f.size());
  for (std::size_t k = 0; k < order.size() && remaining > 0.0; ++k) {
    const auto i = order[k];
    const double mass = std::min(w(i) / alpha, remaining);
    parts(Eigen::Index(k)) = mass * f[i];
    remaining -= mass;
  }
  return ordered_sum(parts);
}

// (1/beta) log integral exp(beta f), shifted by the max for stability.
double entropic(const RandomVariable& f, double beta) {
  const double top = beta * f.values().maxCoeff();
  const Eigen::VectorXd e = ((beta * f.values()).array() - top).exp().matrix();
  return (top + std::log(ordered_sum(e.cwiseProduct(f.space().weights())))) / beta;
}

// (1/beta) integral g log g for densities, 0 log 0 = 0.
double relative_entropy(const RandomVariable& g, double beta) {
  if (!is_density(g)) return kInf;
  Eigen::VectorXd parts(g.size());
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double v = std::max(g[i], 0.0);
    parts(i) = v > 0 ? g.space().weights()(i) * v * std::log(v) : 0.0;
  }
  return ordered_sum(parts) / beta;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"expectation", "neg-expectation", "entropic", "avar", "ball-indicator", "open-ball-indicator",
          "worst-case", "quadratic"};
}

ConvexFunctional builtin(std::string_view name, const BuiltinParams& params) {
  ConvexFunctional rho;
  rho.proper_witness = zero_witness();

  if (name == "expectation") {
    rho.name = "expectation";
    rho.evaluate = [](const RandomVariable& f) { return integrate(f); };
    rho.known_conjugate = [](const RandomVariable& g) { return is_constant(g, 1.0) ? 0.0 : kInf; };
    rho.cash_invariant = true;
  } else if (name == "neg-expectation" || name == "negative-expectation") {
    rho.name = "neg-expectation";
    rho.evaluate = [](const RandomVariable& f) { return 0.0 - integrate(f); };
    rho.known_conjugate = [](const RandomVariable& g) { return is_constant(g, -1.0) ? 0.0 : kInf; };
  } else if (name == "entropic") {
    const double beta = params.beta;
    if (!(beta > 0.0)) throw Error(Errc::InvalidArgument, "entropic needs beta > 0");
    rho.name = "entropic";
    rho.evaluate = [beta](const RandomVariable& f) { return entropic(f, beta); };
    rho.known_conjugate = [beta](const RandomVariable& g) { return relative_entropy(g, beta); };
    rho.cash_invariant = true;
  } else if (name == "avar") {
    const double alpha = params.alpha;
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(Errc::InvalidArgument, "avar needs alpha in (0, 1]");
    rho.name = "avar";
    rho.evaluate = [alpha](const RandomVariable& f) { return average_value_at_risk(f, alpha); };
    rho.known_conjugate = [alpha](const RandomVariable& g) { return is_density(g, 1.0 / alpha) ? 0.0 : kInf; };
    rho.cash_invariant = true;
  } else if (name == "worst-case" || name == "max") {
    rho.name = "worst-case";
    rho.evaluate = [](const RandomVariable& f) { return f.values().maxCoeff(); };
    rho.known_conjugate = [](const RandomVariable& g) { return is_density(g) ? 0.0 : kInf; };
    rho.cash_invariant = true;
  } else if (name == "ball-indicator" || name == "open-ball-indicator") {
    const double radius = params.radius;
    if (!(radius > 0.0)) throw Error(Errc::InvalidArgument, "ball indicators need radius > 0");
    const bool open = name == "open-ball-indicator";
    rho.name = std::string(name);
    rho.evaluate = [radius, open](const RandomVariable& f) {
      const double top = sup_abs(f);
      return (open ? top < radius : top <= radius) ? 0.0 : kInf;
    };
    // Same conjugate for the open and the closed ball: radius * integral |g|.
    rho.known_conjugate = [radius](const RandomVariable& g) { return radius * integrate(abs(g)); };
  } else if (name == "quadratic") {
    rho.name = "quadratic";
    rho.evaluate = [](const RandomVariable& f) { return 0.5 * pairing(f, f); };
    rho.known_conjugate = [](const RandomVariable& g) { return 0.5 * pairing(g, g); };
  } else {
    throw Error(Errc::UnknownName, "unknown functional '" + std::string(name) + "'");
  }
  return rho;
}

ConvexFunctional linear_functional(const RandomVariable& g0) {
  ConvexFunctional rho;
  rho.name = "linear";
  rho.evaluate = [g0](const RandomVariable& f) { return pairing(f, g0); };
  rho.proper_witness = zero_witness();
  rho.known_conjugate = [g0](const RandomVariable& g) {
    const auto [a, b] = common_refinement(g, g0);
    return (a.values() - b.values()).cwiseAbs().maxCoeff() <= kDensityTol ? 0.0 : kInf;
  };
  return rho;
}

}  // namespace uodual
