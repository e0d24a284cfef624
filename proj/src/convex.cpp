#include "uodual/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>

#include "uodual/json_util.hpp"

namespace uodual {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kInf = std::numeric_limits<double>::infinity();

// The sup objective F(f) = <f, g> - rho(f) on one fixed space.
class ConjugateObjective {
 public:
  ConjugateObjective(const ConvexFunctional& rho, const RandomVariable& g)
      : rho_(rho), space_(g.space_ptr()), weighted_g_(g.values().cwiseProduct(g.space().weights())) {}

  double operator()(const Eigen::VectorXd& f) const {
    const double r = rho_(RandomVariable(space_, f));
    if (std::isinf(r) && r > 0) return kNegInf;
    return ordered_sum(weighted_g_.cwiseProduct(f)) - r;
  }

  Eigen::Index dim() const { return weighted_g_.size(); }
  const SpacePtr& space() const { return space_; }

 private:
  const ConvexFunctional& rho_;
  SpacePtr space_;
  Eigen::VectorXd weighted_g_;
};

// Maximizes a concave function of t on [lo, hi] that may be -inf outside a
// subinterval. t = 0 is known feasible.
template <typename F>
std::pair<double, double> line_maximize(const F& fn, double lo, double hi, double at_zero) {
  double best_t = 0.0, best = at_zero;
  const auto consider = [&](double t, double v) {
    if (v > best) {
      best = v;
      best_t = t;
    }
  };
  for (int i = 0; i < 120 && hi - lo > 1e-13 * (1.0 + std::abs(lo) + std::abs(hi)); ++i) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    const double f1 = fn(m1), f2 = fn(m2);
    if (f1 == kNegInf || f2 == kNegInf) {
      // Infeasible probes cut the interval on their side of the best point.
      for (auto [m, v] : {std::pair{m1, f1}, std::pair{m2, f2}}) {
        if (v != kNegInf) {
          consider(m, v);
          continue;
        }
        if (m < best_t)
          lo = std::max(lo, m);
        else
          hi = std::min(hi, m);
      }
      continue;
    }
    consider(m1, f1);
    consider(m2, f2);
    if (f1 < f2)
      lo = m1;
    else
      hi = m2;
  }
  consider(lo, fn(lo));
  consider(hi, fn(hi));
  return {best_t, best};
}

std::vector<Eigen::VectorXd> search_directions(Eigen::Index n) {
  std::vector<Eigen::VectorXd> dirs;
  for (Eigen::Index i = 0; i < n; ++i) dirs.push_back(Eigen::VectorXd::Unit(n, i));
  if (n > 1) dirs.push_back(Eigen::VectorXd::Ones(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) dirs.push_back(Eigen::VectorXd::Unit(n, i) - Eigen::VectorXd::Unit(n, j));
  return dirs;
}

struct AscentResult {
  Eigen::VectorXd x;
  double value;
};

AscentResult ascend(const ConjugateObjective& objective, Eigen::VectorXd x, double box, int max_sweeps) {
  const auto dirs = search_directions(objective.dim());
  double value = objective(x);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    const double before = value;
    for (const auto& d : dirs) {
      double lo = -kInf, hi = kInf;
      for (Eigen::Index k = 0; k < d.size(); ++k) {
        if (d(k) == 0.0) continue;
        const double a = (-box - x(k)) / d(k), b = (box - x(k)) / d(k);
        lo = std::max(lo, std::min(a, b));
        hi = std::min(hi, std::max(a, b));
      }
      lo = std::min(lo, 0.0);
      hi = std::max(hi, 0.0);
      const auto [t, v] = line_maximize([&](double s) { return objective(x + s * d); }, lo, hi, value);
      if (v > value) {
        x += t * d;
        x = x.cwiseMax(-box).cwiseMin(box);
        value = objective(x);
      }
    }
    if (value - before <= 1e-14 * (1.0 + std::abs(value))) break;
  }
  return {std::move(x), value};
}

bool on_boundary(const Eigen::VectorXd& x, double box) { return x.cwiseAbs().maxCoeff() >= box * (1.0 - 1e-9); }

}  // namespace

ConjugateValue fenchel_conjugate(const ConvexFunctional& rho, const RandomVariable& g, const SearchConfig& config) {
  if (!(config.box > 0.0) || config.starts < 1) throw Error(Errc::InvalidArgument, "bad search configuration");
  const ConjugateObjective objective(rho, g);
  const Eigen::Index n = objective.dim();

  std::vector<Eigen::VectorXd> starts;
  if (std::isfinite(rho(RandomVariable::constant(g.space_ptr(), 0.0)))) starts.push_back(Eigen::VectorXd::Zero(n));
  if (rho.proper_witness) starts.push_back(rho.proper_witness(g.space_ptr()).values());
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unif(-config.box / 4.0, config.box / 4.0);
  for (int attempts = 0; int(starts.size()) < config.starts && attempts < 16 * config.starts; ++attempts) {
    Eigen::VectorXd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = unif(rng);
    if (objective(x) != kNegInf) starts.push_back(std::move(x));
  }
  if (starts.empty()) throw Error(Errc::InvalidArgument, rho.name + " has no finite starting point");

  std::vector<AscentResult> runs;
  for (auto& x0 : starts) {
    if (objective(x0) == kNegInf) continue;
    runs.push_back(ascend(objective, x0.cwiseMax(-config.box).cwiseMin(config.box), config.box, config.max_sweeps));
  }
  const auto best = std::max_element(runs.begin(), runs.end(), [](auto& a, auto& b) { return a.value < b.value; });
  const auto worst = std::min_element(runs.begin(), runs.end(), [](auto& a, auto& b) { return a.value < b.value; });

  ConjugateValue out;
  out.box_value = best->value;
  out.value = best->value;
  out.restart_spread = best->value - worst->value;
  out.argmax = RandomVariable(g.space_ptr(), best->x);

  if (on_boundary(best->x, config.box)) {
    const auto wider = ascend(objective, best->x, 2.0 * config.box, config.max_sweeps);
    if (wider.value - best->value > config.tol * std::max(1.0, std::abs(best->value))) {
      out.boundary_flag = true;
      out.value = kInf;
      return out;
    }
  }
  if (out.restart_spread > config.tol * std::max(1.0, std::abs(out.value)))
    throw Error(Errc::SearchDiverged, "restarts disagree by " + std::to_string(out.restart_spread) + " for " + rho.name);
  return out;
}

ConjugateField conjugate_field(const ConvexFunctional& rho, std::vector<RandomVariable> dual_points,
                               const SearchConfig& config) {
  ConjugateField field;
  field.dual_points = std::move(dual_points);
  for (const auto& g : field.dual_points) {
    field.search_report.push_back(fenchel_conjugate(rho, g, config));
    field.values.push_back(field.search_report.back().value);
  }
  return field;
}

ConjugateField oracle_conjugate_field(const ConvexFunctional& rho, std::vector<RandomVariable> dual_points) {
  if (!rho.known_conjugate) throw Error(Errc::InvalidArgument, rho.name + " has no closed-form conjugate");
  ConjugateField field;
  field.dual_points = std::move(dual_points);
  for (const auto& g : field.dual_points) field.values.push_back(rho.known_conjugate(g));
  return field;
}

BiconjugateValue biconjugate(const ConjugateField& field, const RandomVariable& f) {
  BiconjugateValue best{kNegInf, 0};
  bool any = false;
  for (std::size_t i = 0; i < field.dual_points.size(); ++i) {
    if (!std::isfinite(field.values[i])) continue;
    const double v = pairing(f, field.dual_points[i]) - field.values[i];
    if (!any || v > best.value) best = {v, i};
    any = true;
  }
  if (!any) throw Error(Errc::EmptyDualGrid, "no dual point with a finite conjugate value");
  return best;
}

std::string_view to_string(RepresentationVerdict v) {
  return v == RepresentationVerdict::RepresentableEvidence ? "representable-evidence" : "gap-found";
}

DualRepresentationReport dual_representation_check(const ConvexFunctional& rho,
                                                   const std::vector<RandomVariable>& probes,
                                                   const ConjugateField& field, double tol) {
  DualRepresentationReport report;
  report.probes = probes;
  report.max_gap = kNegInf;
  report.min_gap = kInf;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double r = rho(probes[i]);
    const double b = biconjugate(field, probes[i]).value;
    const double gap = std::isinf(r) ? (r > 0 ? kInf : kNegInf) : r - b;
    report.rho_values.push_back(r);
    report.biconjugate_values.push_back(b);
    report.gaps.push_back(gap);
    report.max_gap = std::max(report.max_gap, gap);
    report.min_gap = std::min(report.min_gap, gap);
    if (gap > tol && !report.witness) {
      report.witness = i;
      report.verdict = RepresentationVerdict::GapFound;
    }
  }
  return report;
}

std::vector<RandomVariable> density_grid(const SpacePtr& space, double step) {
  const double parts_d = 1.0 / step;
  const long parts = std::lround(parts_d);
  if (parts < 1 || std::abs(parts_d - double(parts)) > 1e-9)
    throw Error(Errc::InvalidArgument, "density grid step must divide 1");
  const Eigen::Index n = space->size();
  std::vector<RandomVariable> out;
  std::vector<long> counts(std::size_t(n), 0);
  // Enumerate compositions of `parts` into n nonnegative counts, in
  // lexicographic order of the counts.
  std::function<void(Eigen::Index, long)> rec = [&](Eigen::Index i, long left) {
    if (i == n - 1) {
      counts[std::size_t(i)] = left;
      Eigen::VectorXd g(n);
      for (Eigen::Index k = 0; k < n; ++k) g(k) = double(counts[std::size_t(k)]) / double(parts) / space->weights()(k);
      out.emplace_back(space, std::move(g));
      return;
    }
    for (long c = 0; c <= left; ++c) {
      counts[std::size_t(i)] = c;
      rec(i + 1, left - c);
    }
  };
  rec(0, parts);
  return out;
}

std::vector<RandomVariable> signed_grid(const SpacePtr& space, double step, double radius) {
  if (!(step > 0.0) || !(radius >= 0.0)) throw Error(Errc::InvalidArgument, "bad signed grid parameters");
  const long per_axis = std::lround(2.0 * radius / step) + 1;
  const Eigen::Index n = space->size();
  long total = 1;
  for (Eigen::Index k = 0; k < n; ++k) {
    total *= per_axis;
    if (total > 5'000'000) throw Error(Errc::InvalidArgument, "signed grid too large");
  }
  std::vector<RandomVariable> out;
  out.reserve(std::size_t(total));
  for (long idx = 0; idx < total; ++idx) {
    Eigen::VectorXd g(n);
    long rest = idx;
    for (Eigen::Index k = n - 1; k >= 0; --k) {
      g(k) = -radius + step * double(rest % per_axis);
      rest /= per_axis;
    }
    out.emplace_back(space, std::move(g));
  }
  return out;
}

double cash_invariance_defect(const ConvexFunctional& rho, const RandomVariable& f, const std::vector<double>& shifts) {
  const double base = rho(f);
  double worst = 0.0;
  for (double c : shifts) {
    const auto shifted = f.with_values((f.values().array() + c).matrix());
    worst = std::max(worst, std::abs(rho(shifted) - base - c));
  }
  return worst;
}

void write_csv(std::ostream& out, const ConjugateField& field) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "g_index,value,boundary_flag\n";
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const bool flag = i < field.search_report.size() ? field.search_report[i].boundary_flag : std::isinf(field.values[i]);
    out << i << ',';
    if (std::isinf(field.values[i]))
      out << (field.values[i] > 0 ? "+inf" : "-inf");
    else
      out << field.values[i];
    out << ',' << (flag ? 1 : 0) << '\n';
  }
  out.precision(old);
}

nlohmann::json to_json(const DualRepresentationReport& report) {
  nlohmann::json probes = nlohmann::json::array();
  for (const auto& p : report.probes)
    probes.push_back(std::vector<double>(p.values().data(), p.values().data() + p.size()));
  nlohmann::json j{{"probes", probes},
                   {"rho", ext_json(report.rho_values)},
                   {"biconjugate", ext_json(report.biconjugate_values)},
                   {"gaps", ext_json(report.gaps)},
                   {"max_gap", ext_json(report.max_gap)},
                   {"verdict", std::string(to_string(report.verdict))}};
  j["witness"] = report.witness ? nlohmann::json(*report.witness) : nlohmann::json(nullptr);
  return j;
}

}  // namespace uodual
