#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaugelab/cli/catalog.hpp"
#include "gaugelab/cli/report.hpp"
#include "gaugelab/core/constants.hpp"
#include "gaugelab/core/convergence.hpp"

namespace gaugelab::cli {

struct GaugeChoice {
  std::string name;
  Json params;  ///< resolved (defaults filled in)
};

struct GridChoice {
  double lo = -1.0;
  double hi = 1.0;
  int points = 16;
};

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  double dt = 0.01;
  int outputs = 10;
};

struct Tolerances {
  double scale = 1.0;                      ///< multiplies every tolerance
  double error_constant = kErrorConstant;  ///< C in the C h^2 bounds
};

/// A fully resolved run description. Built by parse_config, which fills
/// catalog defaults for everything the JSON leaves out.
struct ScenarioConfig {
  std::string scenario;
  Json params;
  std::optional<GridChoice> grid;  ///< set iff the scenario uses a lattice
  PhysicalConstants constants;
  std::vector<GaugeChoice> gauges;
  std::vector<std::string> experiments;
  Tolerances tolerances;
  TimeGrid time;
  int basis_size = 0;
  std::string output_dir = "gauge_lab_out";
};

/// Validates a JSON config and resolves defaults. Every problem (unknown
/// scenario, gauge, experiment or parameter, bad numbers, non-monotone time
/// grid) throws InvalidInput before anything is computed. Omitted "gauges"
/// means the whole gauge catalog; omitted "experiments" means every
/// experiment the scenario supports; an explicit empty list runs nothing.
ScenarioConfig parse_config(const Json& j);
ScenarioConfig default_config(const std::string& scenario);

/// Runs the configured experiments in order. A module error inside an
/// experiment becomes a failing record and the run moves on.
Report run_scenario(const ScenarioConfig& config);

/// Every catalog scenario with every catalog gauge and all of its
/// experiments, in catalog order.
Report verify_all(double tol_scale = 1.0);

}  // namespace gaugelab::cli
