#include "gaugelab/cli/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "gaugelab/cli/experiments.hpp"
#include "gaugelab/core/error.hpp"

namespace gaugelab::cli {

namespace {

void check_keys(const Json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidInput(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw InvalidInput(where + ": unknown key '" + k + "'");
}

double number(const Json& j, const std::string& key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number()) throw InvalidInput(where + "." + key + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw InvalidInput(where + "." + key + " must be finite");
  return x;
}

int integer(const Json& j, const std::string& key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number_integer()) throw InvalidInput(where + "." + key + " must be an integer");
  return v.get<int>();
}

std::string string_value(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_string()) throw InvalidInput(where + "." + key + " must be a string");
  return j.at(key).get<std::string>();
}

}  // namespace

ScenarioConfig parse_config(const Json& j) {
  check_keys(j, {"scenario", "params", "grid", "constants", "gauges", "experiments", "tolerances", "time",
                 "basis_size", "output_dir"},
             "config");
  ScenarioConfig cfg;
  cfg.scenario = string_value(j, "scenario", "config");
  const CatalogEntry& entry = find_scenario(cfg.scenario);
  cfg.params = entry.resolve(j.value("params", Json::object()));

  const Json& setup = entry.setup;
  if (setup.contains("grid")) {
    const Json& d = setup.at("grid");
    const Json g = j.value("grid", Json::object());
    check_keys(g, {"lo", "hi", "points"}, "grid");
    GridChoice gc{number(g, "lo", d.at("lo").get<double>(), "grid"), number(g, "hi", d.at("hi").get<double>(), "grid"),
                  integer(g, "points", d.at("points").get<int>(), "grid")};
    if (!(gc.hi > gc.lo)) throw InvalidInput("grid: hi must exceed lo");
    if (gc.points < 16) throw InvalidInput("grid: points must be at least 16");
    cfg.grid = gc;
  } else if (j.contains("grid")) {
    throw InvalidInput("scenario '" + cfg.scenario + "' has no lattice; remove 'grid'");
  }

  const Json c = j.value("constants", Json::object());
  check_keys(c, {"hbar", "e_charge", "mass", "coulomb_k", "biot_k"}, "constants");
  cfg.constants.hbar = number(c, "hbar", 1.0, "constants");
  cfg.constants.e_charge = number(c, "e_charge", 1.0, "constants");
  cfg.constants.mass = number(c, "mass", 1.0, "constants");
  cfg.constants.coulomb_k = number(c, "coulomb_k", 1.0, "constants");
  cfg.constants.biot_k = number(c, "biot_k", 1.0, "constants");
  cfg.constants.validate();

  if (j.contains("gauges")) {
    const Json& gs = j.at("gauges");
    if (!gs.is_array()) throw InvalidInput("gauges must be an array");
    for (const auto& g : gs) {
      if (g.is_string()) {
        const auto name = g.get<std::string>();
        cfg.gauges.push_back({name, find_gauge(name).example()});
      } else {
        check_keys(g, {"name", "params"}, "gauge");
        const auto name = string_value(g, "name", "gauge");
        cfg.gauges.push_back({name, find_gauge(name).resolve(g.value("params", Json::object()))});
      }
    }
  } else {
    for (const auto& e : gauge_catalog()) cfg.gauges.push_back({e.name, e.example()});
  }

  if (j.contains("experiments")) {
    const Json& ex = j.at("experiments");
    if (!ex.is_array()) throw InvalidInput("experiments must be an array");
    for (const auto& e : ex) {
      if (!e.is_string()) throw InvalidInput("experiment names must be strings");
      const auto name = e.get<std::string>();
      const auto& all = experiment_names();
      if (std::find(all.begin(), all.end(), name) == all.end()) throw InvalidInput("unknown experiment '" + name + "'");
      if (std::find(entry.experiments.begin(), entry.experiments.end(), name) == entry.experiments.end())
        throw InvalidInput("scenario '" + cfg.scenario + "' does not support experiment '" + name + "'");
      cfg.experiments.push_back(name);
    }
  } else {
    cfg.experiments = entry.experiments;
  }

  const Json tol = j.value("tolerances", Json::object());
  check_keys(tol, {"scale", "error_constant"}, "tolerances");
  cfg.tolerances.scale = number(tol, "scale", 1.0, "tolerances");
  cfg.tolerances.error_constant = number(tol, "error_constant", kErrorConstant, "tolerances");
  if (!(cfg.tolerances.scale > 0.0) || !(cfg.tolerances.error_constant > 0.0))
    throw InvalidInput("tolerances must be positive");

  const Json& td = setup.at("time");
  const Json t = j.value("time", Json::object());
  check_keys(t, {"t0", "t1", "dt", "outputs"}, "time");
  cfg.time.t0 = number(t, "t0", td.at("t0").get<double>(), "time");
  cfg.time.t1 = number(t, "t1", td.at("t1").get<double>(), "time");
  cfg.time.dt = number(t, "dt", td.at("dt").get<double>(), "time");
  cfg.time.outputs = integer(t, "outputs", td.at("outputs").get<int>(), "time");
  if (!(cfg.time.t1 > cfg.time.t0)) throw InvalidInput("time grid must be monotone (t1 > t0)");
  if (!(cfg.time.dt > 0.0) || cfg.time.dt > cfg.time.t1 - cfg.time.t0)
    throw InvalidInput("time.dt must be positive and no longer than the span");
  if (cfg.time.outputs < 1) throw InvalidInput("time.outputs must be at least 1");

  cfg.basis_size = integer(j, "basis_size", setup.value("basis_size", 0), "config");
  if (setup.contains("basis_size") && cfg.basis_size < 4) throw InvalidInput("basis_size must be at least 4");
  if (cfg.grid && cfg.basis_size > cfg.grid->points) throw InvalidInput("basis_size exceeds the grid size");

  if (j.contains("output_dir")) cfg.output_dir = string_value(j, "output_dir", "config");
  return cfg;
}

ScenarioConfig default_config(const std::string& scenario) { return parse_config(Json{{"scenario", scenario}}); }

Report run_scenario(const ScenarioConfig& config) {
  Report report;
  ScenarioRunner runner(config);
  for (const auto& e : config.experiments) report.append(runner.run(e));
  return report;
}

Report verify_all(double tol_scale) {
  Report report;
  for (const auto& entry : scenario_catalog()) {
    ScenarioConfig cfg = default_config(entry.name);
    cfg.tolerances.scale = tol_scale;
    report.append(run_scenario(cfg));
  }
  return report;
}

}  // namespace gaugelab::cli
