#include <algorithm>
#include <cctype>
#include <functional>
#include <map>

#include "uodual/config.hpp"
#include "uodual/error.hpp"

namespace uodual {
namespace {

using json = nlohmann::json;
using Setter = std::function<void(ExperimentConfig&, const json&)>;

template <typename T>
Setter field(T ExperimentConfig::*member) {
  return [member](ExperimentConfig& c, const json& v) { c.*member = v.get<T>(); };
}

template <typename T>
Setter optional_field(std::optional<T> ExperimentConfig::*member) {
  return [member](ExperimentConfig& c, const json& v) {
    if (v.is_null())
      c.*member = std::nullopt;
    else
      c.*member = v.get<T>();
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"command", field(&ExperimentConfig::command)},
      {"seed", field(&ExperimentConfig::seed)},
      {"out", optional_field(&ExperimentConfig::out)},
      {"timing", field(&ExperimentConfig::timing)},
      {"tol", optional_field(&ExperimentConfig::tol)},
      {"orlicz", field(&ExperimentConfig::orlicz)},
      {"p", field(&ExperimentConfig::p)},
      {"s_max", field(&ExperimentConfig::s_max)},
      {"grid_size", field(&ExperimentConfig::grid_size)},
      {"probes", field(&ExperimentConfig::probes)},
      {"values", field(&ExperimentConfig::values)},
      {"functional", field(&ExperimentConfig::functional)},
      {"beta", field(&ExperimentConfig::beta)},
      {"alpha", field(&ExperimentConfig::alpha)},
      {"radius", field(&ExperimentConfig::radius)},
      {"space_level", field(&ExperimentConfig::space_level)},
      {"dual_grid_step", field(&ExperimentConfig::dual_grid_step)},
      {"dual_grid", field(&ExperimentConfig::dual_grid)},
      {"box", field(&ExperimentConfig::box)},
      {"probe_count", field(&ExperimentConfig::probe_count)},
      {"rho", field(&ExperimentConfig::rho)},
      {"seq", field(&ExperimentConfig::seq)},
      {"n_max", field(&ExperimentConfig::n_max)},
      {"model", field(&ExperimentConfig::model)},
      {"phi", [](ExperimentConfig& c, const json& v) { c.phi = v; }},
      {"budget", field(&ExperimentConfig::budget)},
  };
  return table;
}

std::string normalized_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

void apply_fields(ExperimentConfig& config, const json& object) {
  if (!object.is_object()) throw Error(Errc::ConfigInvalid, "config must be a JSON object");
  for (const auto& item : object.items()) {
    const std::string raw_key = item.key();
    const json& value = item.value();
    const std::string key = normalized_key(raw_key);
    const auto it = setters().find(key);
    if (it == setters().end()) throw Error(Errc::ConfigInvalid, "unknown field '" + raw_key + "'");
    try {
      it->second(config, value);
    } catch (const json::exception& e) {
      throw Error(Errc::ConfigInvalid, "field '" + raw_key + "': " + e.what());
    }
  }
}

void validate(const ExperimentConfig& c) {
  auto fail = [](const std::string& field, const std::string& why) {
    throw Error(Errc::ConfigInvalid, "field '" + field + "': " + why);
  };
  const auto commands = command_names();
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    fail("command", "unknown command '" + c.command + "'");
  if (c.tol && !(*c.tol > 0.0)) fail("tol", "must be positive");
  if (c.orlicz != "power" && c.orlicz != "exponential") fail("orlicz", "must be power or exponential");
  if (!(c.p >= 1.0)) fail("p", "must be at least 1");
  if (!(c.s_max > 0.0)) fail("s_max", "must be positive");
  if (c.grid_size < 16) fail("grid_size", "must be at least 16");
  if (c.space_level < 0 || c.space_level > 6) fail("space_level", "must be in [0, 6]");
  if (!(c.dual_grid_step > 0.0)) fail("dual_grid_step", "must be positive");
  if (c.dual_grid != "auto" && c.dual_grid != "density" && c.dual_grid != "signed")
    fail("dual_grid", "must be auto, density or signed");
  if (!(c.box > 0.0)) fail("box", "must be positive");
  if (c.probe_count < 1) fail("probe_count", "must be at least 1");
  if (c.n_max < 2) fail("n_max", "must be at least 2");
  if (c.budget < 100) fail("budget", "must be at least 100");
  if (!c.phi.is_string() && !c.phi.is_object()) fail("phi", "must be a name or a TailVector object");
}

}  // namespace

std::vector<std::string> command_names() { return {"conjugate", "norm", "dualrep", "fatou", "uodual-test", "suite"}; }

ExperimentConfig parse_config(std::string_view text, const nlohmann::json& overrides) {
  ExperimentConfig config;
  const bool blank = std::all_of(text.begin(), text.end(), [](char ch) { return std::isspace((unsigned char)ch); });
  if (!blank) {
    json parsed;
    try {
      parsed = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(Errc::ConfigInvalid, "malformed JSON at byte " + std::to_string(e.byte));
    }
    apply_fields(config, parsed);
  }
  apply_fields(config, overrides);
  validate(config);
  return config;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  json j{{"command", c.command}, {"seed", c.seed}};
  if (c.tol) j["tol"] = *c.tol;
  if (c.command == "conjugate" || c.command == "norm") {
    j.update({{"orlicz", c.orlicz}, {"p", c.p}, {"s_max", c.s_max}, {"grid_size", c.grid_size}});
    if (c.command == "conjugate")
      j["probes"] = c.probes;
    else
      j["values"] = c.values;
  } else if (c.command == "dualrep") {
    j.update({{"functional", c.functional},
              {"beta", c.beta},
              {"alpha", c.alpha},
              {"radius", c.radius},
              {"space_level", c.space_level},
              {"dual_grid_step", c.dual_grid_step},
              {"dual_grid", c.dual_grid},
              {"box", c.box},
              {"probe_count", c.probe_count}});
  } else if (c.command == "fatou") {
    j.update({{"rho", c.rho}, {"seq", c.seq}, {"n_max", c.n_max}});
  } else if (c.command == "uodual-test") {
    j.update({{"model", c.model}, {"phi", c.phi}, {"budget", c.budget}});
  }
  return j;
}

}  // namespace uodual
