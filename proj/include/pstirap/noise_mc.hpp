#pragma once

// Stochastic field fluctuations and their Monte-Carlo average.
//
//   Omega_F,j(t) = Omega_j(t) + Gamma Lambda_j(t) (r1 + r2)
//   Delta_F(t)   = Delta(t) + Gamma r3,    delta_F(t) = delta(t) + Gamma r4
//
// r1 is drawn once per realization, r2..r4 once per time step (held across
// the RK substages), all uniform on [-0.5, 0.5). Realization k draws from the
// counter stream (seed, k): r1 first, then (r2, r3, r4) for each step.

#include <array>
#include <cstdint>
#include <vector>

#include "pstirap/propagator.hpp"
#include "pstirap/pulse_design.hpp"
#include "pstirap/rng.hpp"

namespace pstirap {

struct NoiseConfig {
  double gamma = 0.5;
  int n_realizations = 400;
  std::uint64_t seed = 20100125;
  double dt = kNoiseDt;

  void validate() const;
};

struct StepNoise {
  double r2 = 0.0, r3 = 0.0, r4 = 0.0;
};

struct NoisyRealization {
  int index = 0;
  double r1 = 0.0;
  std::array<double, 3> final_populations{};
  double norm_drift = 0.0;
};

StepNoise draw_step_noise(CounterRng& rng);

/// Applies the fluctuation model to one field point. `shape_p`/`shape_s` are
/// Lambda_j = Omega_j / max Omega_j in [0, 1].
FieldPoint perturb(const FieldPoint& base, double shape_p, double shape_s, double gamma, double r1,
                   const StepNoise& noise);

/// Perturbed field record of one realization sampled at the start of every
/// grid interval (the last sample reuses the final interval's noise).
std::vector<FieldPoint> perturb_fields(const Schedule& s, const NoiseConfig& cfg, int realization);

/// Grid for a noise run: spacing exactly dt over the design window.
Schedule noise_schedule(const DesignParams& design, double dt);

NoisyRealization run_realization(const Schedule& s, const NoiseConfig& cfg, int index,
                                 std::array<std::vector<double>, 3>* populations = nullptr);

struct MonteCarloResult {
  std::vector<double> t;
  std::array<std::vector<double>, 3> mean_populations;
  double mean_p3 = 0.0;
  double stderr_p3 = 0.0;
  double max_norm_drift = 0.0;
  std::vector<NoisyRealization> realizations;
};

/// OpenMP over realizations; the reduction runs in realization order so the
/// result is bit-identical to monte_carlo_serial for any thread count.
MonteCarloResult monte_carlo(const DesignParams& design, const NoiseConfig& cfg);

/// Single-threaded reference implementation.
MonteCarloResult monte_carlo_serial(const DesignParams& design, const NoiseConfig& cfg);

}  // namespace pstirap
