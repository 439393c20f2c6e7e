#include "pstirap/noise_mc.hpp"

#include <cmath>

#include "pstirap/errors.hpp"

namespace pstirap {

namespace {

struct Shape {
  double peak_p, peak_s;
  double pump(double omega) const { return peak_p > 0.0 ? omega / peak_p : 0.0; }
  double stokes(double omega) const { return peak_s > 0.0 ? omega / peak_s : 0.0; }
};

// Per-realization memory for the time series: 3 x n doubles.
struct Slot {
  NoisyRealization summary;
  std::array<std::vector<double>, 3> populations;
};

Slot run_slot(const Schedule& s, const NoiseConfig& cfg, int index) {
  Slot slot;
  slot.summary = run_realization(s, cfg, index, &slot.populations);
  return slot;
}

// Welford accumulation in realization order: exact when all inputs agree.
MonteCarloResult reduce(const Schedule& s, std::vector<Slot>& slots) {
  MonteCarloResult out;
  out.t = s.t();
  const std::size_t n = s.size();
  for (auto& m : out.mean_populations) m.assign(n, 0.0);
  double mean = 0.0, m2 = 0.0;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    const double count = static_cast<double>(k + 1);
    for (int level = 0; level < 3; ++level) {
      auto& acc = out.mean_populations[level];
      const auto& x = slots[k].populations[level];
      for (std::size_t i = 0; i < n; ++i) acc[i] += (x[i] - acc[i]) / count;
    }
    const double p3 = slots[k].summary.final_populations[2];
    const double d = p3 - mean;
    mean += d / count;
    m2 += d * (p3 - mean);
    out.max_norm_drift = std::max(out.max_norm_drift, slots[k].summary.norm_drift);
    out.realizations.push_back(slots[k].summary);
  }
  out.mean_p3 = mean;
  const double k = static_cast<double>(slots.size());
  out.stderr_p3 = slots.size() > 1 ? std::sqrt(m2 / (k - 1.0)) / std::sqrt(k) : 0.0;
  return out;
}

}  // namespace

void NoiseConfig::validate() const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw InvalidParameter("gamma must be non-negative");
  if (n_realizations < 1) throw InvalidParameter("n_realizations must be at least 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidParameter("noise dt must be positive");
}

StepNoise draw_step_noise(CounterRng& rng) {
  StepNoise n;
  n.r2 = rng.centered();
  n.r3 = rng.centered();
  n.r4 = rng.centered();
  return n;
}

FieldPoint perturb(const FieldPoint& base, double shape_p, double shape_s, double gamma, double r1,
                   const StepNoise& noise) {
  const double amp = gamma * (r1 + noise.r2);
  return {base.omega_p + amp * shape_p, base.omega_s + amp * shape_s, base.delta_1 + gamma * noise.r3,
          base.delta_2 + gamma * noise.r4};
}

std::vector<FieldPoint> perturb_fields(const Schedule& s, const NoiseConfig& cfg, int realization) {
  cfg.validate();
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(realization));
  const double r1 = rng.centered();
  const Shape shape{s.peak_pump(), s.peak_stokes()};
  std::vector<FieldPoint> out(s.size());
  StepNoise noise;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i + 1 < s.size()) noise = draw_step_noise(rng);
    const FieldPoint base = s.sample(i);
    out[i] = perturb(base, shape.pump(base.omega_p), shape.stokes(base.omega_s), cfg.gamma, r1, noise);
  }
  return out;
}

Schedule noise_schedule(const DesignParams& design, double dt) {
  DesignParams p = design;
  p.validate();
  if (!(dt > 0.0)) throw InvalidParameter("noise dt must be positive");
  p.n_samples = static_cast<int>(std::llround(2.0 * p.t_span / dt)) + 1;
  return make_parallel_schedule(p);
}

NoisyRealization run_realization(const Schedule& s, const NoiseConfig& cfg, int index,
                                 std::array<std::vector<double>, 3>* populations) {
  CounterRng rng(cfg.seed, static_cast<std::uint64_t>(index));
  NoisyRealization out;
  out.index = index;
  out.r1 = rng.centered();
  const Shape shape{s.peak_pump(), s.peak_stokes()};

  // Noise for interval i is drawn when the integrator first asks for it.
  std::size_t current = static_cast<std::size_t>(-1);
  StepNoise noise;
  const double gamma = cfg.gamma;
  const double r1 = out.r1;
  IntervalField field = [&](std::size_t interval, double t) {
    if (interval != current) {
      noise = draw_step_noise(rng);
      current = interval;
    }
    const FieldPoint base = s.field_at(t);
    return perturb(base, shape.pump(base.omega_p), shape.stokes(base.omega_s), gamma, r1, noise);
  };
  PropagationResult r = propagate(s, QuantumState::ground(), cfg.dt, field);
  for (int k = 0; k < 3; ++k) out.final_populations[k] = r.final_state.population(k);
  out.norm_drift = r.norm_drift;
  if (populations) *populations = std::move(r.populations);
  return out;
}

MonteCarloResult monte_carlo_serial(const DesignParams& design, const NoiseConfig& cfg) {
  cfg.validate();
  const Schedule s = noise_schedule(design, cfg.dt);
  std::vector<Slot> slots(static_cast<std::size_t>(cfg.n_realizations));
  for (int k = 0; k < cfg.n_realizations; ++k) slots[k] = run_slot(s, cfg, k);
  return reduce(s, slots);
}

MonteCarloResult monte_carlo(const DesignParams& design, const NoiseConfig& cfg) {
  cfg.validate();
  const Schedule s = noise_schedule(design, cfg.dt);
  std::vector<Slot> slots(static_cast<std::size_t>(cfg.n_realizations));
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < cfg.n_realizations; ++k) slots[k] = run_slot(s, cfg, k);
  return reduce(s, slots);
}

}  // namespace pstirap
