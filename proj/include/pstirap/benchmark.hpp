#pragma once

// Transfer efficiency versus pulse area and fluence for the parallel designs,
// the linearized chirp and conventional STIRAP; crossover factors and delay
// sensitivity.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pstirap/propagator.hpp"
#include "pstirap/pulse_design.hpp"

namespace pstirap {

enum class StrategyKind { parallel, linearized, stirap };

struct Strategy {
  StrategyKind kind = StrategyKind::parallel;
  double alpha = 0.0;      // parallel
  double beta = 1.25;      // parallel
  double tau = 1.1;        // stirap
  bool through_origin = false;  // linearized
  double t_span = 5.0;
  int n_samples = 4096;
  double dt = kDefaultDt;

  /// Tag used in CSV output: parallel-a0, parallel-ab, linearized, stirap-tau<τ>.
  std::string tag() const;

  static Strategy parallel_alpha0();
  static Strategy parallel_alpha_beta(double alpha = 0.1, double beta = 1.25);
  static Strategy linearized();
  static Strategy stirap(double tau);
};

/// The five curves of the efficiency-versus-area comparison.
std::vector<Strategy> figure_strategies();

struct SweepPoint {
  double control = 0.0;  // Omega0 T or Omega_max T
  double area = 0.0;
  double fluence = 0.0;
  double p3_final = 0.0;
  double deviation = 1.0;
};

struct SkippedPoint {
  double control;
  std::string reason;
};

struct SweepResult {
  Strategy strategy;
  std::vector<SweepPoint> points;
  std::vector<SkippedPoint> skipped;
};

/// Schedule a strategy uses at one control value.
Schedule build_schedule(const Strategy& s, double control);

/// Uniform control grid, `steps` points from lo to hi inclusive.
std::vector<double> control_grid(double lo, double hi, int steps);

/// Default grids: [3, 14] for parallel/linearized, [1, 14] for STIRAP; 45 points.
std::vector<double> default_grid(const Strategy& s);

SweepPoint evaluate_point(const Strategy& s, double control);

/// OpenMP over control values; identical output to sweep_strategy_serial.
SweepResult sweep_strategy(const Strategy& s, std::span<const double> grid);
SweepResult sweep_strategy_serial(const Strategy& s, std::span<const double> grid);

struct Crossover {
  double reference_control, competitor_control;
  double reference_area, competitor_area;
  double reference_fluence, competitor_fluence;
  double area_ratio;     // competitor / reference
  double fluence_ratio;  // competitor / reference
};

struct Reached {
  double control, area, fluence;
};

/// First crossing of `target_p3`, interpolated linearly between the
/// bracketing points. Throws UnreachableTarget if never reached and
/// InvalidParameter if the first point already exceeds the target.
Reached first_reaching(const SweepResult& r, double target_p3);

Crossover crossover(const SweepResult& reference, const SweepResult& competitor, double target_p3);

struct DelayScanReport {
  std::vector<double> delays;
  std::vector<double> p3;
  std::vector<double> area;
  double control = 0.0;
  double sensitivity = 0.0;  // max - min of p3
};

/// STIRAP: delays are tau values and Omega_max is rescaled per delay to hold
/// the area fixed. Parallel: delays are extra pump-Stokes relative delays
/// applied by shifting the envelopes; Omega0 is chosen so the unshifted
/// design has the requested area.
DelayScanReport delay_scan(const Strategy& s, std::span<const double> delays, double area);

/// Control value at which the strategy's area equals `area` (bisection; area
/// is monotone in the control).
double control_for_area(const Strategy& s, double area);

}  // namespace pstirap
