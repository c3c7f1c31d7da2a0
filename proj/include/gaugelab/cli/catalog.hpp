#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "gaugelab/emfields/fields.hpp"

namespace gaugelab::cli {

using Json = nlohmann::ordered_json;

/// One tunable parameter. Numbers must be finite; `minimum` (when set) is
/// an exclusive lower bound unless `inclusive_minimum`.
struct ParamSpec {
  std::string name;
  enum class Type { number, integer } type = Type::number;
  double default_value = 0.0;
  std::optional<double> minimum;
  bool inclusive_minimum = false;
  std::string doc;
};

struct CatalogEntry {
  std::string name;
  std::string description;
  std::vector<ParamSpec> params;
  std::vector<std::string> experiments;  ///< scenarios only
  /// Scenario defaults outside the physics parameters: "grid" {lo, hi,
  /// points} when the scenario uses a lattice, "time" {t0, t1, dt, outputs}
  /// and "basis_size".
  Json setup = Json::object();

  /// Every parameter at its default.
  Json example() const;
  /// Defaults overlaid with `overrides`. Throws InvalidInput on unknown
  /// keys, wrong types or out-of-range values.
  Json resolve(const Json& overrides) const;
  Json schema() const;
};

/// All experiment names a scenario may request.
const std::vector<std::string>& experiment_names();

const std::vector<CatalogEntry>& scenario_catalog();
const std::vector<CatalogEntry>& gauge_catalog();

/// Throws InvalidInput for unknown names.
const CatalogEntry& find_scenario(const std::string& name);
const CatalogEntry& find_gauge(const std::string& name);

/// Names plus parameter schemas, in catalog order.
Json list_catalog();

/// Checks params against a schema without applying defaults.
void validate_params(const CatalogEntry& entry, const Json& params);

/// Builds a catalog gauge function on `box` from resolved parameters.
emfields::GaugeFunction make_gauge(const std::string& name, const Json& params, const emfields::Box& box);

/// True for catalog gauges whose gradient is not identically zero.
bool gauge_has_spatial_part(const std::string& name, const Json& params);

}  // namespace gaugelab::cli
