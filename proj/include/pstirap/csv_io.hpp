#pragma once

// CSV artifacts. Every file may open with a single `# config: {...}` line
// recording the resolved run configuration; readers skip `#` lines.

#include <iosfwd>
#include <string>
#include <vector>

#include "pstirap/benchmark.hpp"
#include "pstirap/propagator.hpp"
#include "pstirap/pulse_design.hpp"
#include "pstirap/shaper.hpp"

namespace pstirap {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

void write_provenance(std::ostream& os, const std::string& config_json);

void write_schedule_csv(std::ostream& os, const Schedule& s);
/// Adiabatic columns are written only when present.
void write_population_csv(std::ostream& os, const PropagationResult& r);
void write_population_csv(std::ostream& os, const std::vector<double>& t,
                          const std::array<std::vector<double>, 3>& populations,
                          const std::array<std::vector<double>, 3>* adiabatic = nullptr);
void write_sweep_header(std::ostream& os);
void write_sweep_rows(std::ostream& os, const SweepResult& r);
void write_spectrum_csv(std::ostream& os, const SpectralField& sf);
void write_pixel_csv(std::ostream& os, const SpectralField& sf);

/// Reads a schedule CSV (fields only; eigenvalue columns are recomputed) as
/// a custom schedule. Throws ConfigError on malformed input.
Schedule read_schedule_csv(std::istream& is);
Schedule read_schedule_csv(const std::string& path);

}  // namespace pstirap
