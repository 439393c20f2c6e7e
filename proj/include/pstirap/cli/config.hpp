#pragma once

// Run configuration: defaults <- preset <- config file <- command-line
// overrides, validated against the published schema before use.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pstirap/benchmark.hpp"
#include "pstirap/noise_mc.hpp"
#include "pstirap/pulse_design.hpp"
#include "pstirap/shaper.hpp"

namespace pstirap::cli {

using nlohmann::json;

inline constexpr int kConfigVersion = 1;

struct SweepSpec {
  Strategy strategy;
  double lo = 3.0, hi = 14.0;
  int steps = 45;
};

struct RunConfig {
  json resolved;  // the full config every artifact records
  std::string variant = "parallel";
  DesignParams design;
  bool through_origin = false;
  std::string schedule_csv;
  StirapParams stirap;
  double dt = kDefaultDt;
  std::vector<SweepSpec> sweep;
  double crossover_target = 0.995;
  NoiseConfig noise;
  PhysicalConfig physical;
  int pixels = 320;
};

const json& config_schema();
json default_config();
std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
json preset(const std::string& name);

/// Parses a config file. Throws ConfigError on I/O or syntax errors.
json load_config_file(const std::string& path);

/// Throws ConfigError listing every schema violation.
void validate_config(const json& doc);

RunConfig resolve(const std::optional<std::string>& preset_name, const std::optional<json>& user,
                  std::optional<std::uint64_t> seed);

/// Typed view of an already-merged document.
RunConfig from_json(const json& merged);

}  // namespace pstirap::cli
