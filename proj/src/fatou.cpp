#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "uodual/error.hpp"
#include "uodual/fatou.hpp"
#include "uodual/json_util.hpp"

namespace uodual {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int ceil_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t(1) << k) < n) ++k;
  return k;
}

int floor_log2(std::size_t n) {
  int k = 0;
  while ((std::size_t(2) << k) <= n) ++k;
  return k;
}

// n 1_[0,1/n] averaged over the cells of level ceil(log2 n).
RandomVariable spike(std::size_t n) {
  const int level = ceil_log2(n);
  auto space = ProbabilitySpace::dyadic(level);
  const double width = std::ldexp(1.0, -level);
  const double end = 1.0 / double(n);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(space->size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double lo = double(i) * width;
    if (lo >= end) break;
    v(i) = double(n) * (std::min(lo + width, end) - lo) / width;
  }
  return RandomVariable(std::move(space), std::move(v));
}

RandomVariable typewriter(std::size_t n) {
  const int k = floor_log2(n);
  const auto j = Eigen::Index(n - (std::size_t(1) << k));
  return dyadic_indicator(k, j, j + 1);
}

RandomVariable oscillating(std::size_t n) { return dyadic_indicator(1, 0, 1, n % 2 == 0 ? 1.0 : -1.0); }

void check_index(std::size_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "sequence indices start at 1");
}

// All variables on one space: the finest dyadic level, or a shared space.
std::vector<RandomVariable> on_common_space(std::vector<RandomVariable> xs) {
  bool all_dyadic = true;
  int level = 0;
  for (const auto& x : xs) {
    all_dyadic = all_dyadic && x.space().is_dyadic();
    if (x.space().is_dyadic()) level = std::max(level, *x.space().level());
  }
  if (all_dyadic) {
    for (auto& x : xs) x = refine(x, level);
    return xs;
  }
  for (const auto& x : xs)
    if (!x.space().same_as(xs.front().space()))
      throw Error(Errc::IncompatibleSpaces, "sequence terms live on unrelated spaces");
  return xs;
}

std::vector<RandomVariable> terms(const TestSequence& s, std::size_t n_max) {
  std::vector<RandomVariable> out;
  out.reserve(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) out.push_back(s(n));
  return out;
}

}  // namespace

TestSequence generate(std::string_view name, const std::optional<RandomVariable>& base) {
  TestSequence s;
  s.name = std::string(name);
  if (name == "spike") {
    s.generator = [](std::size_t n) { return check_index(n), spike(n); };
    s.declared_limit = RandomVariable::constant(ProbabilitySpace::dyadic(0), 0.0);
  } else if (name == "typewriter") {
    s.generator = [](std::size_t n) { return check_index(n), typewriter(n); };
    s.ae_convergent = false;
  } else if (name == "oscillating") {
    s.generator = [](std::size_t n) { return check_index(n), oscillating(n); };
    s.ae_convergent = false;
  } else if (name == "constant") {
    if (!base) throw Error(Errc::InvalidArgument, "the constant sequence needs a base variable");
    s.generator = [f = *base](std::size_t n) { return check_index(n), f; };
    s.declared_limit = base;
  } else {
    throw Error(Errc::UnknownName, "unknown sequence '" + std::string(name) + "'");
  }
  return s;
}

TestSequence custom_sequence(std::function<RandomVariable(std::size_t)> generator,
                             std::optional<RandomVariable> declared_limit) {
  if (!generator) throw Error(Errc::InvalidArgument, "custom sequence without a generator");
  TestSequence s;
  s.name = "custom";
  s.generator = std::move(generator);
  s.declared_limit = std::move(declared_limit);
  return s;
}

std::string_view to_string(LscVerdict v) {
  return v == LscVerdict::SatisfiedEvidence ? "satisfied-evidence" : "violated";
}

double liminf_estimate(const std::vector<double>& values, const std::vector<std::size_t>& indices) {
  if (indices.empty()) throw Error(Errc::InvalidArgument, "liminf of an empty subsequence");
  double m = kInf;
  for (std::size_t k = indices.size() / 2; k < indices.size(); ++k) {
    const std::size_t n = indices[k];
    if (n == 0 || n > values.size()) throw Error(Errc::InvalidArgument, "subsequence index out of range");
    m = std::min(m, values[n - 1]);
  }
  return m;
}

LscReport check_bounded_uo_lsc(const ConvexFunctional& rho, const TestSequence& s, const LscOptions& options) {
  if (!s.declared_limit) throw Error(Errc::NotConvergent, "sequence '" + s.name + "' has no declared limit");
  if (options.n_max < 2) throw Error(Errc::InvalidArgument, "n_max must be at least 2");

  LscReport report;
  report.name = s.name;
  report.n_max = options.n_max;
  for (std::size_t n = 1; n <= options.n_max; ++n) {
    const RandomVariable f = s(n);
    const double norm = luxemburg_norm(f, options.phi).value;
    if (norm > options.norm_bound)
      throw Error(Errc::NotNormBounded, "term " + std::to_string(n) + " has norm " + std::to_string(norm) +
                                            " above the bound " + std::to_string(options.norm_bound));
    report.norms.push_back(norm);
    report.values.push_back(rho(f));
  }
  report.liminf = *std::min_element(report.values.begin() + std::ptrdiff_t(options.n_max / 2), report.values.end());
  report.rho_at_limit = rho(*s.declared_limit);
  if (report.rho_at_limit > report.liminf + options.tol) report.verdict = LscVerdict::Violated;
  return report;
}

ExtractionResult extract_ae_subsequence(const TestSequence& s, const RandomVariable& weight,
                                        const RandomVariable& limit, const ExtractionOptions& options) {
  if (options.n_max < 2) throw Error(Errc::InvalidArgument, "n_max must be at least 2");
  if ((weight.values().array() <= 0.0).any()) throw Error(Errc::InvalidArgument, "weight must be strictly positive");
  const std::size_t target = options.target_count ? options.target_count : std::size_t(floor_log2(options.n_max));

  auto all = terms(s, options.n_max);
  all.push_back(limit);
  all.push_back(weight);
  all = on_common_space(std::move(all));
  const RandomVariable w = all.back();
  all.pop_back();
  const RandomVariable f = all.back();
  all.pop_back();

  std::vector<Eigen::VectorXd> diffs;
  std::vector<double> certs;
  for (const auto& fn : all) {
    diffs.push_back((fn.values() - f.values()).cwiseAbs());
    certs.push_back(integrate(w.with_values(diffs.back().cwiseProduct(w.values()))));
  }

  ExtractionResult result;
  Eigen::VectorXd dominating = Eigen::VectorXd::Zero(f.size());
  std::size_t after = 0;
  for (std::size_t k = 1; k <= target; ++k) {
    const double bound = std::ldexp(1.0, -int(k));
    std::size_t best = 0;
    double best_sup = kInf;
    for (std::size_t n = after + 1; n <= options.n_max; ++n) {
      if (certs[n - 1] > bound) continue;
      const double sup = (dominating + diffs[n - 1]).maxCoeff();
      if (sup < best_sup) best_sup = sup, best = n;
    }
    if (best == 0)
      throw Error(Errc::ExtractionStalled, "no index after " + std::to_string(after) + " up to " +
                                               std::to_string(options.n_max) + " has certificate <= 2^-" +
                                               std::to_string(k));
    dominating += diffs[best - 1];
    result.indices.push_back(best);
    result.certificates.push_back(certs[best - 1]);
    after = best;
  }

  AeVerdict& ae = result.ae_verdict;
  ae.level = f.space().level().value_or(-1);
  ae.late_hits.assign(std::size_t(f.size()), 0);
  for (std::size_t k = result.indices.size() / 2; k < result.indices.size(); ++k) {
    const auto& d = diffs[result.indices[k] - 1];
    for (Eigen::Index i = 0; i < d.size(); ++i)
      if (d(i) > options.tol) ++ae.late_hits[std::size_t(i)];
  }
  for (std::size_t i = 0; i < ae.late_hits.size(); ++i)
    if (ae.late_hits[i] > 1) ae.failing_cells.push_back(i);
  ae.passed = ae.failing_cells.empty();
  return result;
}

RecurrenceReport recurrence_report(const TestSequence& s, const RandomVariable& limit, std::size_t n_max,
                                   double tol) {
  const int windows = floor_log2(n_max + 1);  // [2^i, 2^(i+1)) inside [1, n_max] for i < windows
  if (windows < 3) throw Error(Errc::InvalidArgument, "recurrence needs at least three complete index windows");
  const std::size_t last = (std::size_t(1) << windows) - 1;

  auto all = terms(s, last);
  all.push_back(limit);
  all = on_common_space(std::move(all));
  const RandomVariable f = all.back();
  all.pop_back();

  RecurrenceReport report;
  report.level = f.space().level().value_or(-1);
  report.windows = std::size_t(windows);
  report.windows_hit.assign(std::size_t(f.size()), 0);
  for (int i = 0; i < windows; ++i) {
    Eigen::VectorXd peak = Eigen::VectorXd::Zero(f.size());
    for (std::size_t n = std::size_t(1) << i; n < (std::size_t(2) << i); ++n)
      peak = peak.cwiseMax((all[n - 1].values() - f.values()).cwiseAbs());
    for (Eigen::Index c = 0; c < peak.size(); ++c)
      if (peak(c) > tol) ++report.windows_hit[std::size_t(c)];
  }
  report.all_recurrent = true;
  for (auto hits : report.windows_hit) {
    report.recurrent.push_back(hits == report.windows);
    report.all_recurrent = report.all_recurrent && report.recurrent.back();
  }
  return report;
}

NormBoundReport verify_norm_bounded(const TestSequence& s, const OrliczFunction& phi, std::size_t n_max,
                                    double tol) {
  if (n_max < 4) throw Error(Errc::InvalidArgument, "n_max must be at least 4");
  NormBoundReport report;
  for (std::size_t n = 1; n <= n_max; ++n) report.norms.push_back(luxemburg_norm(s(n), phi, tol).value);
  std::vector<double> running(report.norms.size());
  std::partial_sum(report.norms.begin(), report.norms.end(), running.begin(),
                   [](double a, double b) { return std::max(a, b); });
  report.bound = running.back();

  std::vector<double> at_powers;
  for (std::size_t p = 1; p <= n_max; p *= 2)
    if (4 * p >= n_max) at_powers.push_back(running[p - 1]);
  report.unbounded_evidence = at_powers.size() >= 2;
  for (std::size_t i = 1; i < at_powers.size(); ++i)
    report.unbounded_evidence = report.unbounded_evidence && at_powers[i] > (1.0 + 1e-3) * at_powers[i - 1];
  return report;
}

nlohmann::json to_json(const LscReport& r) {
  return {{"name", r.name},
          {"n_max", r.n_max},
          {"values", ext_json(r.values)},
          {"norms", r.norms},
          {"liminf", ext_json(r.liminf)},
          {"rho_at_limit", ext_json(r.rho_at_limit)},
          {"verdict", std::string(to_string(r.verdict))}};
}

nlohmann::json to_json(const ExtractionResult& r) {
  const auto& ae = r.ae_verdict;
  return {{"indices", r.indices},
          {"certificates", r.certificates},
          {"ae_verdict",
           {{"passed", ae.passed}, {"level", ae.level}, {"late_hits", ae.late_hits}, {"failing_cells", ae.failing_cells}}}};
}

nlohmann::json to_json(const NormBoundReport& r) {
  return {{"norms", r.norms}, {"bound", r.bound}, {"unbounded_evidence", r.unbounded_evidence}};
}

}  // namespace uodual
