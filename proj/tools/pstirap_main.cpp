#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "pstirap/cli/commands.hpp"
#include "pstirap/cli/config.hpp"

namespace cli = pstirap::cli;

int main(int argc, char** argv) {
  CLI::App app{"Parallel adiabatic passage in a three-level Lambda system"};
  app.require_subcommand(1, 1);

  std::string config_path, out_dir = ".", preset_name;
  std::uint64_t seed = 0;
  CLI::Option* config_opt = app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  CLI::Option* seed_opt = app.add_option("--seed", seed, "Override noise.seed");
  CLI::Option* preset_opt =
      app.add_option("--preset", preset_name, "Start from a shipped preset")->check(CLI::IsMember(cli::preset_names()));

  for (const char* name : {"design", "propagate", "sweep", "noise", "shape"}) app.add_subcommand(name)->fallthrough();
  const char* blurbs[] = {"Write the field schedule and a summary",
                          "Integrate the dynamics and write populations",
                          "Efficiency versus area and fluence for several strategies",
                          "Monte-Carlo average under field noise",
                          "Spectral masks and the pixelized roundtrip"};
  for (std::size_t i = 0; i < 5; ++i) app.get_subcommands({})[i]->description(blurbs[i]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kConfigError;
  }

  cli::RunConfig cfg;
  try {
    std::optional<cli::json> user;
    if (*config_opt) user = cli::load_config_file(config_path);
    cfg = cli::resolve(*preset_opt ? std::optional(preset_name) : std::nullopt, user,
                       *seed_opt ? std::optional(seed) : std::nullopt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  return cli::run_command(command, cfg, out_dir, std::cerr, std::cerr);
}
