#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uodual/config.hpp"
#include "uodual/error.hpp"
#include "uodual/runner.hpp"

namespace {

using json = nlohmann::json;

template <typename T>
void flag(CLI::App* app, const std::string& name, const std::string& key, json& overrides, const std::string& help) {
  app->add_option_function<T>(name, [&overrides, key](const T& v) { overrides[key] = v; }, help);
}

void common_flags(CLI::App* app, std::string& config_path, json& overrides) {
  app->add_option("--config", config_path, "JSON config file; flags override its values");
  flag<std::string>(app, "--out", "out", overrides, "report path (default stdout)");
  flag<std::uint64_t>(app, "--seed", "seed", overrides, "RNG seed (default 7)");
  flag<double>(app, "--tol", "tol", overrides, "tolerance (default depends on the command)");
  app->add_flag_callback("--timing", [&overrides] { overrides["timing"] = true; },
                         "add wall time to the report (breaks byte-identical reruns)");
}

void orlicz_flags(CLI::App* app, json& overrides) {
  flag<std::string>(app, "--orlicz", "orlicz", overrides, "power (s^p/p) or exponential (e^s-1) (default power)");
  flag<double>(app, "--p", "p", overrides, "exponent of the power function (default 2)");
}

void functional_params(CLI::App* app, json& overrides) {
  flag<double>(app, "--beta", "beta", overrides, "entropic risk aversion (default 1)");
  flag<double>(app, "--alpha", "alpha", overrides, "AVaR level (default 0.5)");
  flag<double>(app, "--radius", "radius", overrides, "ball indicator radius (default 1)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw uodual::Error(uodual::Errc::ConfigInvalid, "cannot read config file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uodual: numerical checks for uo-duals, Orlicz norms and convex duality"};
  app.require_subcommand(1);
  std::string config_path;
  json overrides = json::object();

  auto* conjugate = app.add_subcommand("conjugate", "conjugate Orlicz function Psi at probe points");
  orlicz_flags(conjugate, overrides);
  flag<double>(conjugate, "--s-max", "s_max", overrides, "upper end of the s-range (default 8)");
  flag<int>(conjugate, "--grid-size", "grid_size", overrides, "s- and t-grid size (default 4096)");
  flag<std::vector<double>>(conjugate, "--probes", "probes", overrides, "t values (default 11 points up to the cap)");

  auto* norm = app.add_subcommand("norm", "Luxemburg norm of point values on a uniform space");
  orlicz_flags(norm, overrides);
  flag<std::vector<double>>(norm, "--values", "values", overrides, "point values (required)");

  auto* dualrep = app.add_subcommand("dualrep", "check rho == rho** on a dyadic space");
  flag<std::string>(dualrep, "--functional", "functional", overrides,
                    "expectation, neg-expectation, entropic, avar, worst-case, ball-indicator, "
                    "open-ball-indicator, quadratic (default entropic)");
  functional_params(dualrep, overrides);
  flag<int>(dualrep, "--space-level", "space_level", overrides, "dyadic level, 2^level points (default 2)");
  flag<double>(dualrep, "--dual-grid-step", "dual_grid_step", overrides, "dual grid step (default 0.05)");
  flag<std::string>(dualrep, "--dual-grid", "dual_grid", overrides,
                    "density, signed, or auto: density for cash invariant functionals (default auto)");
  flag<double>(dualrep, "--box", "box", overrides, "search box half-width (default 64)");
  flag<int>(dualrep, "--probe-count", "probe_count", overrides, "random primal probes (default 16)");

  auto* fatou = app.add_subcommand("fatou", "lower semicontinuity along a test sequence");
  flag<std::string>(fatou, "--rho", "rho", overrides, "functional name (default expectation)");
  flag<std::string>(fatou, "--seq", "seq", overrides, "spike, typewriter, oscillating, constant (default spike)");
  flag<std::size_t>(fatou, "--n-max", "n_max", overrides, "horizon (default 64)");
  functional_params(fatou, overrides);

  auto* uodual_test = app.add_subcommand("uodual-test", "falsification search for uo-dual membership");
  flag<std::string>(uodual_test, "--model", "model", overrides, "ell1, c0 or ellInfty (default ell1)");
  uodual_test->add_option_function<std::string>(
      "--phi",
      [&overrides](const std::string& v) {
        overrides["phi"] = !v.empty() && v.front() == '{' ? json::parse(v) : json(v);
      },
      "ones, zero, geometric, e1, or TailVector JSON (default ones)");
  flag<std::size_t>(uodual_test, "--budget", "budget", overrides, "sequence length, at least 100 (default 200)");

  auto* suite = app.add_subcommand("suite", "run all acceptance suites");

  for (auto* sub : {conjugate, norm, dualrep, fatou, uodual_test, suite}) common_flags(sub, config_path, overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : uodual::kExitError;
  } catch (const json::exception& e) {
    std::cerr << "ConfigInvalid: " << e.what() << "\n";
    return uodual::kExitError;
  }

  try {
    const std::string text = config_path.empty() ? std::string() : read_file(config_path);
    overrides["command"] = app.get_subcommands().front()->get_name();
    const uodual::ExperimentConfig config = uodual::parse_config(text, overrides);
    const uodual::RunOutcome outcome = uodual::run(config);
    const std::string rendered = uodual::render(outcome.report);
    if (config.out) {
      std::ofstream out(*config.out, std::ios::binary);
      if (!out) throw uodual::Error(uodual::Errc::InvalidArgument, "cannot write '" + *config.out + "'");
      out << rendered;
    } else {
      std::cout << rendered;
    }
    if (outcome.exit_code == uodual::kExitError) std::cerr << outcome.report["error"]["message"].get<std::string>() << "\n";
    return outcome.exit_code;
  } catch (const uodual::Error& e) {
    std::cerr << e.what() << "\n";
    return uodual::kExitError;
  }
}
