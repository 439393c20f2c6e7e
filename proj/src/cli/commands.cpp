#include "pstirap/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "pstirap/cli/plot_scripts.hpp"
#include "pstirap/csv_io.hpp"
#include "pstirap/errors.hpp"
#include "pstirap/noise_mc.hpp"
#include "pstirap/propagator.hpp"

namespace pstirap::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
  if (!out) throw ConfigError("write failed for " + path.string());
}

void write_json(const fs::path& path, const json& doc) { write_file(path, doc.dump(2) + "\n"); }

template <class Fn>
void write_csv(const fs::path& path, const RunConfig& cfg, Fn&& body) {
  std::ostringstream os;
  write_provenance(os, cfg.resolved.dump());
  body(os);
  write_file(path, os.str());
}

void prepare(const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create output directory " + out.string() + ": " + ec.message());
}

Schedule build_design(const RunConfig& cfg) {
  if (cfg.variant == "parallel") return make_parallel_schedule(cfg.design);
  if (cfg.variant == "linearized") return linearized_schedule(cfg.design, cfg.through_origin);
  if (cfg.variant == "stirap") return stirap_schedule(cfg.stirap, TimeGrid{cfg.design.t_span, cfg.design.n_samples});
  if (cfg.schedule_csv.empty()) throw ConfigError("variant 'custom' needs design.schedule_csv");
  return read_schedule_csv(cfg.schedule_csv);
}

void require_parallel(const RunConfig& cfg, const char* what) {
  if (cfg.variant != "parallel")
    throw UnsupportedVariant(std::string(what) + " is defined for the parallel design only");
}

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json sweep_point_json(const SweepPoint& p) {
  return {{"control", p.control},
          {"area_over_pi", p.area / kPi},
          {"fluence_T", p.fluence},
          {"p3", p.p3_final},
          {"deviation", p.deviation}};
}

}  // namespace

int cmd_design(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  prepare(out);
  const Schedule s = build_design(cfg);
  write_csv(out / "schedule.csv", cfg, [&](std::ostream& os) { write_schedule_csv(os, s); });

  const double pp = s.peak_pump(), ps = s.peak_stokes();
  auto rel = [](double v, double peak) { return peak > 0.0 ? v / peak : 0.0; };
  double asym = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    asym = std::max(asym, std::abs((s.w_plus()[i] - s.w_0()[i]) - (s.w_0()[i] - s.w_minus()[i])));

  json summary = {
      {"config", cfg.resolved},
      {"kind", std::string(to_string(s.kind()))},
      {"n_samples", s.size()},
      {"area_over_pi", pulse_area(s) / kPi},
      {"fluence_T", fluence(s)},
      {"peak_pump", pp},
      {"peak_stokes", ps},
      {"max_gap_asymmetry", asym},
      {"endpoints",
       {{"pump_start_rel", rel(s.omega_p().front(), pp)},
        {"pump_end_rel", rel(s.omega_p().back(), pp)},
        {"stokes_start_rel", rel(s.omega_s().front(), ps)},
        {"stokes_end_rel", rel(s.omega_s().back(), ps)}}},
      {"schedule_csv", "schedule.csv"},
  };
  write_json(out / "design.json", summary);
  write_file(out / "plot_design.py", design_plot_script());
  log << "design: area/pi = " << format_double(pulse_area(s) / kPi) << ", fluence*T = " << format_double(fluence(s))
      << '\n';
  return kOk;
}

int cmd_propagate(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  prepare(out);
  const Schedule s = build_design(cfg);
  PropagationResult r = propagate(s, QuantumState::ground(), cfg.dt);
  adiabatic_projection(r, s);
  write_csv(out / "populations.csv", cfg, [&](std::ostream& os) { write_population_csv(os, r); });

  const bool ok = r.norm_drift <= kMaxNormDrift;
  json fin = {
      {"config", cfg.resolved},
      {"final_populations", {r.final_population(0), r.final_population(1), r.final_population(2)}},
      {"final_amplitudes",
       {complex_json(r.final_state.c[0]), complex_json(r.final_state.c[1]), complex_json(r.final_state.c[2])}},
      {"final_adiabatic_populations",
       {r.adiabatic_populations[0].back(), r.adiabatic_populations[1].back(), r.adiabatic_populations[2].back()}},
      {"norm_drift", r.norm_drift},
      {"norm_drift_ok", ok},
      {"continuity_warning", r.continuity_warning},
      {"populations_csv", "populations.csv"},
  };
  write_json(out / "final_state.json", fin);
  write_file(out / "plot_propagate.py", propagate_plot_script());
  log << "propagate: P3 = " << format_double(r.final_population(2)) << ", norm drift = " << format_double(r.norm_drift)
      << '\n';
  return ok ? kOk : kContractViolation;
}

int cmd_sweep(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  prepare(out);
  std::vector<SweepResult> results;
  for (const SweepSpec& spec : cfg.sweep) {
    const std::vector<double> grid = control_grid(spec.lo, spec.hi, spec.steps);
    results.push_back(sweep_strategy(spec.strategy, grid));
  }
  write_csv(out / "sweep.csv", cfg, [&](std::ostream& os) {
    write_sweep_header(os);
    for (const SweepResult& r : results) write_sweep_rows(os, r);
  });

  json strategies = json::array();
  for (const SweepResult& r : results) {
    json pts = json::array(), skipped = json::array();
    double min_dev = 1.0;
    for (const SweepPoint& p : r.points) {
      pts.push_back(sweep_point_json(p));
      min_dev = std::min(min_dev, p.deviation);
    }
    for (const SkippedPoint& k : r.skipped) skipped.push_back({{"control", k.control}, {"reason", k.reason}});
    strategies.push_back({{"strategy", r.strategy.tag()}, {"points", pts}, {"skipped", skipped},
                          {"min_deviation", min_dev}});
  }

  // Reference: the first alpha = 0 parallel curve, otherwise the first one.
  std::size_t ref = 0;
  for (std::size_t i = 0; i < results.size(); ++i)
    if (results[i].strategy.kind == StrategyKind::parallel && results[i].strategy.alpha == 0.0) {
      ref = i;
      break;
    }
  json competitors = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (i == ref) continue;
    json entry = {{"strategy", results[i].strategy.tag()}};
    try {
      const Crossover c = crossover(results[ref], results[i], cfg.crossover_target);
      entry["area_ratio"] = c.area_ratio;
      entry["fluence_ratio"] = c.fluence_ratio;
      entry["reference_area_over_pi"] = c.reference_area / kPi;
      entry["competitor_area_over_pi"] = c.competitor_area / kPi;
      entry["reference_fluence_T"] = c.reference_fluence;
      entry["competitor_fluence_T"] = c.competitor_fluence;
      log << "crossover " << results[i].strategy.tag() << ": area x" << format_double(c.area_ratio) << ", fluence x"
          << format_double(c.fluence_ratio) << '\n';
    } catch (const Error& e) {
      entry["error"] = e.what();
    }
    competitors.push_back(entry);
  }

  json report = {
      {"config", cfg.resolved},
      {"strategies", strategies},
      {"crossover",
       {{"target_p3", cfg.crossover_target},
        {"reference", results.empty() ? "" : results[ref].strategy.tag()},
        {"competitors", competitors}}},
      {"sweep_csv", "sweep.csv"},
  };
  write_json(out / "sweep.json", report);
  write_file(out / "plot_sweep.py", sweep_plot_script());
  return kOk;
}

int cmd_noise(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  require_parallel(cfg, "the noise model");
  prepare(out);
  const MonteCarloResult mc = monte_carlo(cfg.design, cfg.noise);
  const Schedule clean = noise_schedule(cfg.design, cfg.noise.dt);
  const double p3_clean = propagate_final(clean, QuantumState::ground(), cfg.noise.dt).population(2);
  write_csv(out / "noise_populations.csv", cfg,
            [&](std::ostream& os) { write_population_csv(os, mc.t, mc.mean_populations); });

  const bool ok = mc.max_norm_drift <= kMaxNormDrift;
  json report = {
      {"config", cfg.resolved},
      {"design",
       {{"omega0", cfg.design.omega0},
        {"alpha", cfg.design.alpha},
        {"beta", cfg.design.beta},
        {"t_span", cfg.design.t_span}}},
      {"noise",
       {{"gamma", cfg.noise.gamma},
        {"n_realizations", cfg.noise.n_realizations},
        {"seed", cfg.noise.seed},
        {"dt", cfg.noise.dt}}},
      {"mean_p3", mc.mean_p3},
      {"stderr_p3", mc.stderr_p3},
      {"deterministic_p3", p3_clean},
      {"mean_final_populations",
       {mc.mean_populations[0].back(), mc.mean_populations[1].back(), mc.mean_populations[2].back()}},
      {"max_norm_drift", mc.max_norm_drift},
      {"norm_drift_ok", ok},
      {"populations_csv", "noise_populations.csv"},
  };
  write_json(out / "noise.json", report);
  write_file(out / "plot_noise.py", noise_plot_script());
  log << "noise: mean P3 = " << format_double(mc.mean_p3) << " +- " << format_double(mc.stderr_p3)
      << " (noise-free " << format_double(p3_clean) << ")\n";
  return ok ? kOk : kContractViolation;
}

int cmd_shape(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
  require_parallel(cfg, "spectral shaping");
  prepare(out);
  const ShapingReport rep = shape_pipeline(cfg.design, cfg.physical, cfg.pixels, ShaperGrid{}, cfg.dt);

  const char* names[2] = {"pump", "stokes"};
  json channels = json::object();
  for (int c = 0; c < 2; ++c) {
    const SpectralField& sf = rep.spectra[c];
    SpectralField in_band = sf;
    in_band.omega.clear();
    in_band.amplitude.clear();
    in_band.phase.clear();
    std::vector<double> transmission;
    for (std::size_t j = 0; j < sf.omega.size(); ++j) {
      if (sf.omega[j] < rep.band.lo || sf.omega[j] >= rep.band.hi) continue;
      in_band.omega.push_back(sf.omega[j]);
      in_band.amplitude.push_back(sf.amplitude[j]);
      in_band.phase.push_back(sf.phase[j]);
      transmission.push_back(rep.masks[c].transmission[j]);
    }
    const std::string base = names[c];
    write_csv(out / (base + "_spectrum.csv"), cfg, [&](std::ostream& os) { write_spectrum_csv(os, in_band); });
    write_csv(out / (base + "_pixels.csv"), cfg, [&](std::ostream& os) { write_pixel_csv(os, rep.pixelized[c]); });
    write_csv(out / (base + "_seed_mask.csv"), cfg, [&](std::ostream& os) {
      os << "omega_rel,transmission\n";
      for (std::size_t j = 0; j < in_band.omega.size(); ++j)
        os << format_double(in_band.omega[j]) << ',' << format_double(transmission[j]) << '\n';
    });
    channels[base] = {{"carrier_rad_per_fs", rep.carriers[c]},
                      {"peak_rabi_rad_per_fs", rep.fields[c].peak},
                      {"spectral_scale", sf.scale},
                      {"seed_mask_scale", rep.masks[c].scale},
                      {"clipped_bins", rep.masks[c].clipped_bins},
                      {"pixels_lit", rep.pixelized[c].pixels.size()}};
  }

  json report = {
      {"config", cfg.resolved},
      {"t_unit_fs", rep.units.t_fs},
      {"omega0_rad_per_fs", rep.units.omega0_rad_per_fs},
      {"omega0_thz", rep.units.omega0_thz()},
      {"peak_rabi_rad_per_s", rep.peak_rabi_rad_per_s},
      {"peak_intensity_gw_cm2", rep.peak_intensity_gw_cm2},
      {"band_rad_per_fs", {rep.band.lo, rep.band.hi}},
      {"pixels", rep.pixels},
      {"channels", channels},
      {"p3_design", rep.p3_design},
      {"p3_roundtrip", rep.p3_roundtrip},
      {"p3_pixelized", rep.p3_pixelized},
      {"delta_p3_pixelized", rep.p3_pixelized - rep.p3_design},
      {"envelope_rms_error", rep.envelope_rms_error},
      {"quantization_error", rep.quantization_error},
      {"frequency_error", rep.frequency_error},
  };
  write_json(out / "shape.json", report);
  write_file(out / "plot_shape.py", shape_plot_script());
  log << "shape: T = " << format_double(rep.units.t_fs) << " fs, Omega0 = " << format_double(rep.units.omega0_thz())
      << " THz, I = " << format_double(rep.peak_intensity_gw_cm2) << " GW/cm^2, dP3 = "
      << format_double(rep.p3_pixelized - rep.p3_design) << '\n';
  return kOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InfeasibleDesign*>(&e) || dynamic_cast<const UnreachableTarget*>(&e)) return kInfeasible;
  if (dynamic_cast<const InvalidState*>(&e) || dynamic_cast<const WindowingViolation*>(&e))
    return kContractViolation;
  if (dynamic_cast<const Error*>(&e)) return kConfigError;
  return 1;
}

int run_command(const std::string& name, const RunConfig& cfg, const fs::path& out, std::ostream& log,
                std::ostream& err) {
  try {
    if (name == "design") return cmd_design(cfg, out, log);
    if (name == "propagate") return cmd_propagate(cfg, out, log);
    if (name == "sweep") return cmd_sweep(cfg, out, log);
    if (name == "noise") return cmd_noise(cfg, out, log);
    if (name == "shape") return cmd_shape(cfg, out, log);
    err << "error: unknown command '" << name << "'\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace pstirap::cli
