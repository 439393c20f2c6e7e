#include "pstirap/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "pstirap/cli/schema_check.hpp"
#include "pstirap/errors.hpp"
#include "pstirap/schema_text.hpp"

namespace pstirap::cli {

namespace {

json parse_embedded(const char* text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("embedded " + what + " is not valid JSON: " + e.what());
  }
}

json strategy_json(const Strategy& s, const std::vector<double>& grid) {
  json j;
  switch (s.kind) {
    case StrategyKind::parallel:
      j = {{"kind", "parallel"}, {"alpha", s.alpha}, {"beta", s.beta}};
      break;
    case StrategyKind::linearized:
      j = {{"kind", "linearized"}, {"through_origin", s.through_origin}};
      break;
    case StrategyKind::stirap:
      j = {{"kind", "stirap"}, {"tau", s.tau}};
      break;
  }
  j["lo"] = grid.front();
  j["hi"] = grid.back();
  j["steps"] = static_cast<int>(grid.size());
  return j;
}

template <class T>
T get(const json& section, const char* key) {
  try {
    return section.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

const json& config_schema() {
  static const json schema = parse_embedded(embedded::kConfigSchema, "config schema");
  return schema;
}

json default_config() {
  const DesignParams d;
  const StirapParams st;
  const NoiseConfig n;
  const PhysicalConfig ph;
  json strategies = json::array();
  for (const Strategy& s : figure_strategies()) strategies.push_back(strategy_json(s, default_grid(s)));
  return {
      {"version", kConfigVersion},
      {"design",
       {{"variant", "parallel"},
        {"omega0", d.omega0},
        {"alpha", d.alpha},
        {"beta", d.beta},
        {"t_span", d.t_span},
        {"n_samples", d.n_samples},
        {"through_origin", false},
        {"schedule_csv", ""}}},
      {"stirap", {{"omega_max", st.omega_max}, {"tau", st.tau}, {"width", st.width}}},
      {"propagation", {{"dt", kDefaultDt}}},
      {"sweep", {{"strategies", strategies}, {"crossover_target", 0.995}}},
      {"noise", {{"gamma", n.gamma}, {"n_realizations", n.n_realizations}, {"seed", n.seed}, {"dt", n.dt}}},
      {"physical",
       {{"omega1", ph.omega1},
        {"omega2", ph.omega2},
        {"omega3", ph.omega3},
        {"intensity_fwhm_fs", ph.intensity_fwhm_fs},
        {"dipole_debye", ph.dipole_debye},
        {"seed_fwhm_fs", ph.seed_fwhm_fs},
        {"pixels", 320}}},
  };
}

std::vector<std::string> preset_names() { return {"fig1", "fig23", "fig4", "fig5"}; }

json preset(const std::string& name) {
  if (name == "fig1") return parse_embedded(embedded::kPresetFig1, "preset fig1");
  if (name == "fig23") return parse_embedded(embedded::kPresetFig23, "preset fig23");
  if (name == "fig4") return parse_embedded(embedded::kPresetFig4, "preset fig4");
  if (name == "fig5") return parse_embedded(embedded::kPresetFig5, "preset fig5");
  throw ConfigError("unknown preset '" + name + "' (expected fig1, fig23, fig4 or fig5)");
}

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void validate_config(const json& doc) {
  const std::vector<std::string> errors = schema_errors(doc, config_schema());
  if (errors.empty()) return;
  std::ostringstream msg;
  msg << "config does not match schema:";
  for (const std::string& e : errors) msg << "\n  " << e;
  throw ConfigError(msg.str());
}

RunConfig resolve(const std::optional<std::string>& preset_name, const std::optional<json>& user,
                  std::optional<std::uint64_t> seed) {
  json merged = default_config();
  if (preset_name) {
    const json p = preset(*preset_name);
    validate_config(p);
    merged.merge_patch(p);
  }
  if (user) {
    validate_config(*user);
    merged.merge_patch(*user);
  }
  if (seed) merged["noise"]["seed"] = *seed;
  validate_config(merged);
  return from_json(merged);
}

RunConfig from_json(const json& merged) {
  RunConfig c;
  c.resolved = merged;
  const json& d = merged.at("design");
  c.variant = get<std::string>(d, "variant");
  c.design = {get<double>(d, "omega0"), get<double>(d, "alpha"), get<double>(d, "beta"), get<double>(d, "t_span"),
              get<int>(d, "n_samples")};
  c.through_origin = get<bool>(d, "through_origin");
  c.schedule_csv = get<std::string>(d, "schedule_csv");

  const json& st = merged.at("stirap");
  c.stirap = {get<double>(st, "omega_max"), get<double>(st, "tau"), get<double>(st, "width")};
  c.dt = get<double>(merged.at("propagation"), "dt");

  const json& sw = merged.at("sweep");
  c.crossover_target = get<double>(sw, "crossover_target");
  for (const json& js : sw.at("strategies")) {
    SweepSpec spec;
    const std::string kind = get<std::string>(js, "kind");
    spec.strategy.kind = kind == "parallel" ? StrategyKind::parallel
                         : kind == "linearized" ? StrategyKind::linearized
                                                : StrategyKind::stirap;
    spec.strategy.alpha = js.value("alpha", 0.0);
    spec.strategy.beta = js.value("beta", 1.25);
    spec.strategy.tau = js.value("tau", 1.1);
    spec.strategy.through_origin = js.value("through_origin", false);
    spec.strategy.t_span = c.design.t_span;
    spec.strategy.n_samples = c.design.n_samples;
    spec.strategy.dt = c.dt;
    const std::vector<double> grid = default_grid(spec.strategy);
    spec.lo = js.value("lo", grid.front());
    spec.hi = js.value("hi", grid.back());
    spec.steps = js.value("steps", static_cast<int>(grid.size()));
    if (spec.steps > 1 && !(spec.hi > spec.lo)) throw ConfigError("sweep grid needs hi > lo");
    c.sweep.push_back(spec);
  }

  const json& n = merged.at("noise");
  c.noise = {get<double>(n, "gamma"), get<int>(n, "n_realizations"), get<std::uint64_t>(n, "seed"),
             get<double>(n, "dt")};

  const json& ph = merged.at("physical");
  c.physical = {get<double>(ph, "omega1"),         get<double>(ph, "omega2"),
                get<double>(ph, "omega3"),         get<double>(ph, "intensity_fwhm_fs"),
                get<double>(ph, "dipole_debye"),   get<double>(ph, "seed_fwhm_fs")};
  c.pixels = get<int>(ph, "pixels");
  return c;
}

}  // namespace pstirap::cli
