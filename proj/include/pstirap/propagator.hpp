#pragma once

// Fixed-step RK4 integration of i d|phi>/dt = H(t)|phi> across a Schedule.

#include <array>
#include <functional>
#include <vector>

#include "pstirap/lambda_core.hpp"
#include "pstirap/pulse_design.hpp"

namespace pstirap {

inline constexpr double kDefaultDt = 1e-3;
inline constexpr double kNoiseDt = 1.0 / 300.0;

struct PropagationResult {
  std::vector<double> t;
  std::array<std::vector<double>, 3> populations;
  // Filled by adiabatic_projection; empty otherwise.
  std::array<std::vector<double>, 3> adiabatic_populations;
  std::vector<QuantumState> states;
  QuantumState final_state;
  double norm_drift = 0.0;
  bool continuity_warning = false;

  double final_population(int level) const { return final_state.population(level); }
};

/// Field supplier for one grid interval: called with (interval index, t).
/// Lets callers hold per-interval data (noise) constant across RK substages.
using IntervalField = std::function<FieldPoint(std::size_t interval, double t)>;

/// Integrates over the schedule grid. Each grid interval is split into
/// ceil(h/dt) equal substeps, so the effective step never exceeds dt and the
/// state is recorded exactly on every sample.
PropagationResult propagate(const Schedule& s, const QuantumState& initial, double dt = kDefaultDt);

/// Same integrator with fields supplied by `field` instead of the schedule.
PropagationResult propagate(const Schedule& s, const QuantumState& initial, double dt,
                            const IntervalField& field);

/// Final state only; no history is kept.
QuantumState propagate_final(const Schedule& s, const QuantumState& initial, double dt = kDefaultDt);

/// |<psi_k|phi>|^2 on every sample with sign-aligned eigenvectors. Stores the
/// arrays in `r` and returns them.
std::array<std::vector<double>, 3> adiabatic_projection(PropagationResult& r, const Schedule& s);

/// One RK4 step with the field held by the caller (exposed for tests).
QuantumState rk4_step(const QuantumState& y, double t, double h,
                      const std::function<FieldPoint(double)>& field);

}  // namespace pstirap
