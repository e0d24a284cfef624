#include <chrono>
#include <random>

#include "uodual/convex.hpp"
#include "uodual/error.hpp"
#include "uodual/fatou.hpp"
#include "uodual/json_util.hpp"
#include "uodual/lattice.hpp"
#include "uodual/orlicz.hpp"
#include "uodual/runner.hpp"
#include "uodual/suite.hpp"

namespace uodual {
namespace {

using json = nlohmann::json;

struct Outcome {
  json result;
  std::string verdict;
  bool counterexample = false;
};

OrliczFunction orlicz_from(const ExperimentConfig& c) {
  return c.orlicz == "exponential" ? OrliczFunction::exponential() : OrliczFunction::normalized_power(c.p);
}

Outcome conjugate_command(const ExperimentConfig& c) {
  const OrliczFunction phi = orlicz_from(c);
  const OrliczFunction psi = conjugate(phi, {c.s_max, c.grid_size, c.tol_or(1e-9)});
  std::vector<double> probes = c.probes;
  if (probes.empty())
    for (int i = 0; i <= 10; ++i) probes.push_back(psi.domain_cap() * i / 10.0);
  std::vector<double> values;
  for (double t : probes) {
    if (t < 0.0 || t > psi.domain_cap())
      throw Error(Errc::DomainExceeded, "probe " + std::to_string(t) + " outside [0, " +
                                            std::to_string(psi.domain_cap()) + "]");
    values.push_back(psi(t));
  }
  return {{{"phi", phi.describe()},
           {"domain_cap", psi.domain_cap()},
           {"knots", psi.knots().size()},
           {"probes", probes},
           {"values", values}},
          "computed"};
}

Outcome norm_command(const ExperimentConfig& c) {
  if (c.values.empty()) throw Error(Errc::ConfigInvalid, "field 'values': norm needs at least one value");
  const auto space = ProbabilitySpace::uniform(int(c.values.size()));
  const RandomVariable f(space, Eigen::Map<const Eigen::VectorXd>(c.values.data(), Eigen::Index(c.values.size())));
  const OrliczFunction phi = orlicz_from(c);
  json result = to_json(luxemburg_norm(f, phi, c.tol_or(1e-10)));
  result["phi"] = phi.describe();
  return {result, "computed"};
}

Outcome dualrep_command(const ExperimentConfig& c) {
  const ConvexFunctional rho = builtin(c.functional, {c.beta, c.alpha, c.radius});
  const SpacePtr space = ProbabilitySpace::dyadic(c.space_level);
  const bool density = c.dual_grid == "density" || (c.dual_grid == "auto" && rho.cash_invariant);
  std::vector<RandomVariable> grid =
      density ? density_grid(space, c.dual_grid_step) : signed_grid(space, c.dual_grid_step, 2.0 * c.radius);

  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<RandomVariable> probes = {RandomVariable::constant(space, 0.0),
                                        RandomVariable::constant(space, c.radius)};
  for (int k = 0; k < c.probe_count; ++k) {
    Eigen::VectorXd v(space->size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = value(rng);
    probes.emplace_back(space, std::move(v));
  }

  SearchConfig search;
  search.box = c.box;
  search.seed = c.seed;
  const ConjugateField field = conjugate_field(rho, std::move(grid), search);
  const DualRepresentationReport report = dual_representation_check(rho, probes, field, c.tol_or(1e-3));
  json result = to_json(report);
  result["functional"] = rho.name;
  result["dual_grid"] = density ? "density" : "signed";
  result["dual_points"] = field.dual_points.size();
  return {result, std::string(to_string(report.verdict)), report.verdict == RepresentationVerdict::GapFound};
}

Outcome fatou_command(const ExperimentConfig& c) {
  const ConvexFunctional rho = builtin(c.rho, {c.beta, c.alpha, c.radius});
  std::optional<RandomVariable> base;
  if (c.seq == "constant") {
    Eigen::VectorXd ramp(8);
    for (int i = 0; i < 8; ++i) ramp(i) = (i - 3.5) / 4.0;
    base = RandomVariable(ProbabilitySpace::dyadic(3), ramp);
  }
  LscOptions options;
  options.n_max = c.n_max;
  options.tol = c.tol_or(1e-9);
  const LscReport report = check_bounded_uo_lsc(rho, generate(c.seq, base), options);
  return {to_json(report), std::string(to_string(report.verdict)), report.verdict == LscVerdict::Violated};
}

TailVector phi_from(const json& phi) {
  if (phi.is_object()) return tail_vector_from_json(phi);
  const std::string name = phi.get<std::string>();
  if (name == "ones") return TailVector::constant(1.0);
  if (name == "zero") return TailVector::zero();
  if (name == "geometric") return TailVector({}, Tail::geometric(1.0, 0.5));
  if (name == "e1") return TailVector::unit(1);
  throw Error(Errc::ConfigInvalid, "field 'phi': unknown name '" + name + "' (ones, zero, geometric, e1)");
}

Outcome uodual_test_command(const ExperimentConfig& c) {
  const SpaceModel m = space_model_from_string(c.model);
  const TailVector phi = phi_from(c.phi);
  const UoDualResult r = uo_dual_test(phi, m, c.budget, c.seed);
  json result = to_json(r);
  result["phi"] = to_json(phi);
  result["model"] = to_string(m);
  result["expected_uo_dual"] = to_string(uo_dual_expected(m));
  return {result, std::string(r.verdict()), !r.consistent};
}

Outcome suite_command(const ExperimentConfig& c) {
  json items = json::array();
  bool all = true;
  for (const SuiteItem& item : run_suite(c.seed)) {
    items.push_back(to_json(item, c.timing));
    all = all && item.passed;
  }
  return {{{"items", items}}, all ? "passed" : "failed", !all};
}

Outcome dispatch(const ExperimentConfig& c) {
  if (c.command == "conjugate") return conjugate_command(c);
  if (c.command == "norm") return norm_command(c);
  if (c.command == "dualrep") return dualrep_command(c);
  if (c.command == "fatou") return fatou_command(c);
  if (c.command == "uodual-test") return uodual_test_command(c);
  if (c.command == "suite") return suite_command(c);
  throw Error(Errc::ConfigInvalid, "field 'command': unknown command '" + c.command + "'");
}

}  // namespace

RunOutcome run(const ExperimentConfig& config) {
  RunOutcome out;
  out.report = {{"schema", kSchema}, {"version", UODUAL_VERSION}, {"command", config.command}};
  out.report["config"] = to_json(config);
  const auto start = std::chrono::steady_clock::now();
  try {
    Outcome o = dispatch(config);
    out.report["result"] = std::move(o.result);
    out.report["verdict"] = o.verdict;
    out.exit_code = o.counterexample ? kExitCounterexample : kExitOk;
  } catch (const Error& e) {
    out.report["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    out.exit_code = kExitError;
  }
  if (config.timing)
    out.report["wall_time_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string render(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace uodual
