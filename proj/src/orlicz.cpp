#include "uodual/orlicz.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace uodual {
namespace {

// e^s - 1 overflows just past 709.
constexpr double kExpCap = 700.0;

struct Argmax {
  double x;
  double value;
};

// Golden-section search for the max of a concave function on [a, b].
template <typename F>
Argmax maximize_concave(const F& fn, double a, double b, int iterations = 90) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  for (int i = 0; i < iterations && b - a > 0; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = fn(x1);
    }
  }
  Argmax best{a, fn(a)};
  for (double x : {x1, x2, b}) {
    const double v = fn(x);
    if (v > best.value) best = {x, v};
  }
  return best;
}

void check_sampled(const Eigen::VectorXd& knots, const Eigen::VectorXd& values, bool require_nonzero) {
  if (knots.size() < 2 || knots.size() != values.size())
    throw Error(Errc::InvalidArgument, "sampled Orlicz function needs at least two knots with values");
  if (knots(0) != 0.0 || values(0) != 0.0) throw Error(Errc::InvalidArgument, "sampled Orlicz function must start at (0, 0)");
  if (!knots.allFinite() || !values.allFinite()) throw Error(Errc::InvalidArgument, "non-finite knot or value");
  for (Eigen::Index i = 1; i < knots.size(); ++i) {
    if (!(knots(i) > knots(i - 1))) throw Error(Errc::InvalidArgument, "knots must be strictly increasing");
    if (values(i) < values(i - 1) - 1e-12) throw Error(Errc::InvalidArgument, "Orlicz function must be nondecreasing");
  }
  for (Eigen::Index i = 1; i + 1 < knots.size(); ++i) {
    const double w = (knots(i) - knots(i - 1)) / (knots(i + 1) - knots(i - 1));
    const double chord = (1 - w) * values(i - 1) + w * values(i + 1);
    if (chord - values(i) < -1e-9)
      throw Error(Errc::InvalidArgument, "sampled Orlicz function is not convex at knot " + std::to_string(i));
  }
  if (require_nonzero && values.maxCoeff() <= 0.0) throw Error(Errc::InvalidArgument, "Orlicz function is identically 0 on its grid");
}

}  // namespace

OrliczFunction OrliczFunction::power(double exponent, double coefficient) {
  if (!(exponent >= 1.0) || !std::isfinite(exponent))
    throw Error(Errc::InvalidArgument, "power Orlicz function needs exponent >= 1");
  if (!(coefficient > 0.0) || !std::isfinite(coefficient))
    throw Error(Errc::InvalidArgument, "power Orlicz function needs a positive coefficient");
  OrliczFunction phi;
  phi.kind_ = Kind::Power;
  phi.exponent_ = exponent;
  phi.coefficient_ = coefficient;
  phi.cap_ = std::numeric_limits<double>::infinity();
  return phi;
}

OrliczFunction OrliczFunction::exponential() {
  OrliczFunction phi;
  phi.kind_ = Kind::Exponential;
  phi.cap_ = kExpCap;
  return phi;
}

OrliczFunction OrliczFunction::sampled(Eigen::VectorXd knots, Eigen::VectorXd values, double domain_cap) {
  return from_samples(std::move(knots), std::move(values), domain_cap, true);
}

OrliczFunction OrliczFunction::from_samples(Eigen::VectorXd knots, Eigen::VectorXd values, double domain_cap,
                                            bool require_nonzero) {
  check_sampled(knots, values, require_nonzero);
  OrliczFunction phi;
  phi.kind_ = Kind::Sampled;
  phi.cap_ = domain_cap > 0 ? domain_cap : knots(knots.size() - 1);
  phi.knots_ = std::move(knots);
  phi.values_ = std::move(values);
  return phi;
}

double OrliczFunction::operator()(double s) const {
  if (!(s >= 0.0)) throw Error(Errc::InvalidArgument, "Orlicz functions are defined on [0, inf)");
  switch (kind_) {
    case Kind::Power:
      if (std::isinf(s)) return s;
      return coefficient_ * (exponent_ == 1.0 ? s : exponent_ == 2.0 ? s * s : std::pow(s, exponent_));
    case Kind::Exponential:
      return std::expm1(s);
    case Kind::Sampled: {
      const Eigen::Index n = knots_.size();
      const double* begin = knots_.data();
      Eigen::Index hi = std::upper_bound(begin, begin + n, s) - begin;
      hi = std::clamp<Eigen::Index>(hi, 1, n - 1);
      const Eigen::Index lo = hi - 1;
      const double slope = (values_(hi) - values_(lo)) / (knots_(hi) - knots_(lo));
      return values_(lo) + slope * (s - knots_(lo));
    }
  }
  return 0.0;
}

std::string OrliczFunction::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Power: os << coefficient_ << "*s^" << exponent_; break;
    case Kind::Exponential: os << "exp(s)-1"; break;
    case Kind::Sampled: os << "sampled(" << knots_.size() << " knots, cap " << cap_ << ")"; break;
  }
  return os.str();
}

OrliczFunction conjugate(const OrliczFunction& phi, const ConjugateOptions& options) {
  if (options.grid_size < 64) throw Error(Errc::InvalidArgument, "conjugate grid size must be at least 64");
  if (!(options.s_max > 0.0) || !std::isfinite(options.s_max))
    throw Error(Errc::InvalidArgument, "conjugate needs a finite s_max > 0");
  if (options.s_max > phi.domain_cap())
    throw Error(Errc::DomainExceeded, "s_max lies beyond the trusted domain of Phi");

  const int n = options.grid_size;
  const double s_max = options.s_max;
  Eigen::VectorXd s = Eigen::VectorXd::LinSpaced(n, 0.0, s_max);
  Eigen::VectorXd phi_s(n);
  for (int j = 0; j < n; ++j) phi_s(j) = phi(s(j));

  // Left slope at s_max: the largest t whose sup is attained inside [0, s_max].
  const double h = s_max * 1e-7;
  const double t_max = (phi(s_max) - phi(s_max - h)) / h;
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw Error(Errc::GridTooCoarse, "Phi has no positive slope below s_max");

  Eigen::VectorXd t(n), psi(n);
  for (int i = 0; i < n; ++i) {
    const double u = double(i) / double(n - 1);
    t(i) = t_max * u * u;
  }
  t(n - 1) = t_max;
  psi(0) = 0.0;

  int j = 0;
  for (int i = 1; i < n; ++i) {
    const double ti = t(i);
    while (j + 1 < n && ti * s(j + 1) - phi_s(j + 1) >= ti * s(j) - phi_s(j)) ++j;
    const auto objective = [&](double x) { return ti * x - phi(x); };
    const double grid_value = ti * s(j) - phi_s(j);
    const Argmax narrow = maximize_concave(objective, s(std::max(j - 1, 0)), s(std::min(j + 1, n - 1)));
    const Argmax wide = maximize_concave(objective, s(std::max(j - 2, 0)), s(std::min(j + 2, n - 1)));
    const double value = std::max({grid_value, narrow.value, wide.value});
    if (std::abs(narrow.value - wide.value) > options.tol * std::max(1.0, std::abs(value)))
      throw Error(Errc::GridTooCoarse, "local refinements disagree at t = " + std::to_string(ti));
    psi(i) = std::max(value, 0.0);
  }
  // The conjugate of a linear Phi vanishes on its whole domain.
  return OrliczFunction::from_samples(std::move(t), std::move(psi), t_max, false);
}

double young_gap(const OrliczFunction& phi, const OrliczFunction& psi, double s, double t) {
  if (s < 0.0 || t < 0.0) throw Error(Errc::InvalidArgument, "young_gap needs s, t >= 0");
  if (s > phi.domain_cap() || t > psi.domain_cap())
    throw Error(Errc::DomainExceeded, "young_gap argument beyond a domain cap");
  return phi(s) + psi(t) - s * t;
}

double modular(const RandomVariable& f, const OrliczFunction& phi, double lambda) {
  Eigen::VectorXd v(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) v(i) = phi(std::abs(f[i]) / lambda);
  if (!v.allFinite()) return std::numeric_limits<double>::infinity();
  return ordered_sum(v.cwiseProduct(f.space().weights()));
}

LuxemburgResult luxemburg_norm(const RandomVariable& f, const OrliczFunction& phi, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "Luxemburg tolerance must be positive");
  const double top = sup_abs(f);
  if (top == 0.0) return {0.0, 0.0, 0.0, 0.0};

  constexpr int kMaxSteps = 2100;
  double lo = top, hi = top;
  bool saw_positive = false;
  double m = modular(f, phi, top);
  saw_positive = m > 0.0;
  if (m > 1.0) {
    int steps = 0;
    while ((m = modular(f, phi, hi)) > 1.0) {
      lo = hi;
      hi *= 2.0;
      if (++steps > kMaxSteps) throw Error(Errc::ModularDegenerate, "modular stays above 1 for every probed lambda");
    }
  } else {
    int steps = 0;
    while ((m = modular(f, phi, lo)) <= 1.0) {
      saw_positive = saw_positive || m > 0.0;
      hi = lo;
      lo *= 0.5;
      if (++steps > kMaxSteps || lo == 0.0) {
        if (!saw_positive)
          throw Error(Errc::ModularDegenerate, "modular is 0 for every probed lambda (Phi vanishes on the range of |f|)");
        throw Error(Errc::ModularDegenerate, "modular never exceeds 1");
      }
    }
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (modular(f, phi, mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
  }
  if (top / hi > phi.domain_cap())
    throw Error(Errc::DomainExceeded, "|f|/norm leaves the trusted domain of Phi");
  return {hi, lo, hi, modular(f, phi, hi)};
}

std::string_view to_string(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::IncreasingUnbounded: return "increasing-unbounded-evidence";
    case GrowthVerdict::Bounded: return "bounded-evidence";
    case GrowthVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

GrowthReport superlinear_growth(const OrliczFunction& phi, const std::vector<double>& probes) {
  GrowthReport report;
  report.probes = probes;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double t = probes[i];
    if (!(t > 0.0)) throw Error(Errc::InvalidArgument, "growth probes must be positive");
    if (i > 0 && !(t > probes[i - 1])) throw Error(Errc::InvalidArgument, "growth probes must be strictly increasing");
    if (t > phi.domain_cap()) throw Error(Errc::DomainExceeded, "growth probe beyond the domain cap");
    report.ratios.push_back(phi(t) / t);
  }
  const std::size_t n = report.ratios.size();
  if (n < 4) return report;

  const std::size_t first = n / 2;
  bool increasing = true, nonincreasing = true;
  for (std::size_t i = first + 1; i < n; ++i) {
    increasing = increasing && report.ratios[i] > report.ratios[i - 1];
    nonincreasing = nonincreasing && report.ratios[i] <= report.ratios[i - 1];
  }
  const double start = report.ratios[first], end = report.ratios[n - 1];
  const double relative = (end - start) / std::max(std::abs(start), std::numeric_limits<double>::min());
  if (nonincreasing || std::abs(relative) <= 1e-9)
    report.verdict = GrowthVerdict::Bounded;
  else if (increasing && relative >= 0.01)
    report.verdict = GrowthVerdict::IncreasingUnbounded;
  return report;
}

Delta2Report delta2_ratio(const OrliczFunction& phi, double t_lo, double t_hi, int samples) {
  if (!(t_lo > 0.0) || !(t_hi >= t_lo) || samples < 1)
    throw Error(Errc::InvalidArgument, "delta2_ratio needs 0 < t_lo <= t_hi and samples >= 1");
  if (2.0 * t_hi > phi.domain_cap()) throw Error(Errc::DomainExceeded, "2 * t_hi beyond the domain cap");
  Delta2Report report{0.0, t_lo, t_lo, t_hi, samples};
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? t_lo : t_lo + (t_hi - t_lo) * double(i) / double(samples - 1);
    const double base = phi(t);
    if (base == 0.0) throw Error(Errc::ZeroDenominator, "Phi vanishes at t = " + std::to_string(t));
    const double ratio = phi(2.0 * t) / base;
    if (ratio > report.ratio) {
      report.ratio = ratio;
      report.argmax = t;
    }
  }
  return report;
}

nlohmann::json to_json(const GrowthReport& report) {
  return {{"probes", report.probes},
          {"ratios", report.ratios},
          {"verdict", std::string(to_string(report.verdict))},
          {"heuristic", true}};
}

nlohmann::json to_json(const Delta2Report& report) {
  return {{"ratio", report.ratio}, {"argmax", report.argmax}, {"t_lo", report.t_lo},
          {"t_hi", report.t_hi},   {"samples", report.samples}, {"heuristic", true}};
}

nlohmann::json to_json(const LuxemburgResult& result) {
  return {{"value", result.value},
          {"bracket", {result.bracket_lo, result.bracket_hi}},
          {"modular_at_value", result.modular_at_value}};
}

void write_csv(std::ostream& out, const OrliczFunction& phi) {
  if (phi.kind() != OrliczFunction::Kind::Sampled)
    throw Error(Errc::InvalidArgument, "only sampled Orlicz functions serialize to CSV");
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "s,phi\n";
  for (Eigen::Index i = 0; i < phi.knots().size(); ++i) out << phi.knots()(i) << ',' << phi.values()(i) << '\n';
  out.precision(old);
}

OrliczFunction read_orlicz_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("s,phi", 0) != 0)
    throw Error(Errc::InvalidArgument, "missing CSV header s,phi");
  std::vector<double> s, v;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double a = 0, b = 0;
    char comma = 0;
    if (!(ss >> a >> comma >> b) || comma != ',') throw Error(Errc::InvalidArgument, "malformed s,phi row");
    s.push_back(a);
    v.push_back(b);
  }
  return OrliczFunction::sampled(Eigen::Map<Eigen::VectorXd>(s.data(), Eigen::Index(s.size())),
                                 Eigen::Map<Eigen::VectorXd>(v.data(), Eigen::Index(v.size())));
}

}  // namespace uodual
