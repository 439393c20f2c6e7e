#pragma once

#include <exception>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "pstirap/cli/config.hpp"

namespace pstirap::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kInfeasible = 3, kContractViolation = 4 };

/// Norm drift above which propagate/noise report a contract violation.
inline constexpr double kMaxNormDrift = 1e-6;

// Each command writes its artifacts into `out` and returns an exit code;
// errors propagate as exceptions.
int cmd_design(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_propagate(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_sweep(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_noise(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);
int cmd_shape(const RunConfig& cfg, const std::filesystem::path& out, std::ostream& log);

int exit_code_for(const std::exception& e);

/// Dispatches by name and maps exceptions to exit codes, printing the
/// diagnostic to `err`.
int run_command(const std::string& name, const RunConfig& cfg, const std::filesystem::path& out,
                std::ostream& log, std::ostream& err);

}  // namespace pstirap::cli
