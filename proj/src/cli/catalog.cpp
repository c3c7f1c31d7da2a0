#include "gaugelab/cli/catalog.hpp"

#include <cmath>

#include "gaugelab/core/error.hpp"
#include "gaugelab/emfields/catalog.hpp"

namespace gaugelab::cli {

namespace {

using T = ParamSpec::Type;

ParamSpec positive(std::string name, double def, std::string doc) { return {std::move(name), T::number, def, 0.0, false, std::move(doc)}; }
ParamSpec nonnegative(std::string name, double def, std::string doc) { return {std::move(name), T::number, def, 0.0, true, std::move(doc)}; }
ParamSpec any(std::string name, double def, std::string doc) { return {std::move(name), T::number, def, std::nullopt, false, std::move(doc)}; }
ParamSpec count(std::string name, int def, int min, std::string doc) {
  return {std::move(name), T::integer, static_cast<double>(def), static_cast<double>(min), true, std::move(doc)};
}

Json grid(double lo, double hi, int points) { return Json{{"lo", lo}, {"hi", hi}, {"points", points}}; }
Json timing(double t0, double t1, double dt, int outputs) {
  return Json{{"t0", t0}, {"t1", t1}, {"dt", dt}, {"outputs", outputs}};
}
Json setup(Json g, Json t, int basis) {
  Json j = Json::object();
  if (!g.is_null()) j["grid"] = std::move(g);
  j["time"] = std::move(t);
  if (basis > 0) j["basis_size"] = basis;
  return j;
}

std::vector<CatalogEntry> build_scenarios() {
  return {
      {"ho1d-dipole",
       "1D harmonic oscillator driven by a uniform field E0 sin(omega_d t) along x (length form)",
       {positive("omega", 1.0, "oscillator frequency"), nonnegative("E0", 0.01, "drive amplitude"),
        positive("omega_d", 1.0, "drive frequency")},
       {"spectrum", "eigenvalue-shift", "amplitude-propagation", "pde-propagation", "gauge-suite", "appendix1"},
       setup(grid(-12.0, 12.0, 1024), timing(0.0, 20.0, 0.01, 100), 16)},
      {"landau2d",
       "2D charge in a uniform field B z-hat (multipolar vector potential) inside a radial soft wall",
       {positive("B", 1.0, "field strength"), positive("wall_height", 5.0, "soft wall stiffness V0"),
        positive("wall_radius", 4.0, "soft wall onset radius")},
       {"spectrum", "eigenvalue-shift", "gauge-suite"},
       setup(grid(-6.0, 6.0, 128), timing(0.0, 1.0, 0.01, 10), 24)},
      {"coulomb-soft",
       "1D softened Coulomb well phi = -k / sqrt(x^2 + a^2)",
       {positive("k", 1.0, "well strength"), positive("a", 0.3, "softening length")},
       {"spectrum", "eigenvalue-shift", "gauge-suite", "appendix1"},
       setup(grid(-30.0, 30.0, 1024), timing(0.0, 1.0, 0.01, 10), 16)},
      {"current-loop",
       "Static current loop, charge blob and charge shell: gauge bridge between static and multipolar potentials",
       {positive("radius", 1.0, "loop radius"), any("current", 1.0, "loop current"),
        positive("tube_radius", 0.1, "loop cross-section radius"), count("azimuthal", 256, 16, "loop stations"),
        count("cross", 6, 2, "cross-section points per direction"),
        any("center_x", 0.4, "loop centre x (off the origin, so f is not identically zero)"),
        any("center_y", -0.3, "loop centre y"), any("center_z", 0.25, "loop centre z"), any("blob_charge", 1.0, "blob charge"),
        positive("blob_width", 0.3, "blob standard width"), any("shell_charge", 1.0, "shell charge"),
        positive("shell_radius", 1.0, "shell radius"), positive("shell_half_thickness", 0.02, "shell half-thickness"),
        count("sample_points", 20, 1, "sample points per check")},
       {"appendix2", "gauge-suite"},
       setup(Json(), timing(0.0, 1.0, 0.01, 10), 0)},
      {"uniformB-multipolar",
       "Uniform E and B: multipolar potentials against their closed forms, plus the classical layer",
       {any("Ex", 0.1, "E_x"), any("Ey", 0.0, "E_y"), any("Ez", 0.0, "E_z"), any("Bx", 0.0, "B_x"),
        any("By", 0.0, "B_y"), any("Bz", 1.0, "B_z"), any("Rx", 0.0, "reference point x"),
        any("Ry", 0.0, "reference point y"), any("Rz", 0.0, "reference point z")},
       {"gauge-suite", "classical"},
       setup(Json(), timing(0.0, 6.283185307179586, 0.01, 100), 0)},
  };
}

std::vector<CatalogEntry> build_gauges() {
  return {
      {"zero", "chi = 0", {}, {}},
      {"linear-x", "chi = c x", {any("c", 0.5, "slope")}, {}},
      {"gaussian-bump", "chi = amp exp(-r^2 / (2 width^2))",
       {any("amp", 0.3, "amplitude"), positive("width", 1.0, "width")}, {}},
      {"g-times-t", "chi = g t", {any("g", 0.2, "rate")}, {}},
      {"separable-fg", "chi = amp exp(-r^2 / (2 width^2)) + g t",
       {any("amp", 0.3, "amplitude"), positive("width", 1.0, "width"), any("g", 0.2, "rate")}, {}},
  };
}

const ParamSpec* find_param(const CatalogEntry& e, const std::string& key) {
  for (const auto& p : e.params)
    if (p.name == key) return &p;
  return nullptr;
}

}  // namespace

Json CatalogEntry::example() const {
  Json j = Json::object();
  for (const auto& p : params) {
    if (p.type == T::integer)
      j[p.name] = static_cast<long long>(p.default_value);
    else
      j[p.name] = p.default_value;
  }
  return j;
}

Json CatalogEntry::resolve(const Json& overrides) const {
  validate_params(*this, overrides);
  Json j = example();
  if (overrides.is_object())
    for (const auto& [k, v] : overrides.items()) j[k] = v;
  return j;
}

Json CatalogEntry::schema() const {
  Json props = Json::object();
  for (const auto& p : params) {
    Json s;
    s["type"] = p.type == T::integer ? "integer" : "number";
    if (p.type == T::integer)
      s["default"] = static_cast<long long>(p.default_value);
    else
      s["default"] = p.default_value;
    if (p.minimum) s[p.inclusive_minimum ? "minimum" : "exclusiveMinimum"] = *p.minimum;
    s["description"] = p.doc;
    props[p.name] = std::move(s);
  }
  Json j;
  j["type"] = "object";
  j["properties"] = std::move(props);
  j["additionalProperties"] = false;
  return j;
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {"spectrum",    "eigenvalue-shift", "amplitude-propagation",
                                                 "pde-propagation", "gauge-suite", "appendix1",
                                                 "appendix2",   "classical"};
  return names;
}

const std::vector<CatalogEntry>& scenario_catalog() {
  static const std::vector<CatalogEntry> c = build_scenarios();
  return c;
}

const std::vector<CatalogEntry>& gauge_catalog() {
  static const std::vector<CatalogEntry> c = build_gauges();
  return c;
}

const CatalogEntry& find_scenario(const std::string& name) {
  for (const auto& e : scenario_catalog())
    if (e.name == name) return e;
  throw InvalidInput("unknown scenario '" + name + "'");
}

const CatalogEntry& find_gauge(const std::string& name) {
  for (const auto& e : gauge_catalog())
    if (e.name == name) return e;
  throw InvalidInput("unknown gauge '" + name + "'");
}

Json list_catalog() {
  Json out;
  out["scenarios"] = Json::array();
  for (const auto& e : scenario_catalog()) {
    Json j;
    j["name"] = e.name;
    j["description"] = e.description;
    j["experiments"] = e.experiments;
    j["schema"] = e.schema();
    j["example"] = e.example();
    j["defaults"] = e.setup;
    out["scenarios"].push_back(std::move(j));
  }
  out["gauges"] = Json::array();
  for (const auto& e : gauge_catalog()) {
    Json j;
    j["name"] = e.name;
    j["description"] = e.description;
    j["schema"] = e.schema();
    j["example"] = e.example();
    out["gauges"].push_back(std::move(j));
  }
  out["experiments"] = experiment_names();
  return out;
}

void validate_params(const CatalogEntry& entry, const Json& params) {
  if (params.is_null()) return;
  if (!params.is_object()) throw InvalidInput(entry.name + ": parameters must be an object");
  for (const auto& [key, v] : params.items()) {
    const ParamSpec* p = find_param(entry, key);
    if (!p) throw InvalidInput(entry.name + ": unknown parameter '" + key + "'");
    if (!v.is_number()) throw InvalidInput(entry.name + "." + key + " must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InvalidInput(entry.name + "." + key + " must be finite");
    if (p->type == T::integer && !v.is_number_integer())
      throw InvalidInput(entry.name + "." + key + " must be an integer");
    if (p->minimum) {
      const bool ok = p->inclusive_minimum ? x >= *p->minimum : x > *p->minimum;
      if (!ok) throw InvalidInput(entry.name + "." + key + " is out of range");
    }
  }
}

emfields::GaugeFunction make_gauge(const std::string& name, const Json& params, const emfields::Box& box) {
  namespace cat = emfields::catalog;
  const Json p = find_gauge(name).resolve(params);
  emfields::GaugeFunction g;
  if (name == "zero") {
    g = cat::zero_gauge(box);
  } else if (name == "linear-x") {
    g = cat::linear_x(box, p["c"].get<double>());
  } else if (name == "gaussian-bump") {
    g = cat::gaussian_bump(box, p["amp"].get<double>(), p["width"].get<double>());
  } else if (name == "g-times-t") {
    g = cat::g_times_t(box, p["g"].get<double>());
  } else {
    g = cat::separable_fg(box, p["amp"].get<double>(), p["width"].get<double>(), p["g"].get<double>());
  }
  return g;
}

bool gauge_has_spatial_part(const std::string& name, const Json& params) {
  const Json p = find_gauge(name).resolve(params);
  if (name == "linear-x") return p["c"].get<double>() != 0.0;
  if (name == "gaussian-bump" || name == "separable-fg") return p["amp"].get<double>() != 0.0;
  return false;
}

}  // namespace gaugelab::cli
