#include "pstirap/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "pstirap/errors.hpp"

namespace pstirap {

std::string Strategy::tag() const {
  switch (kind) {
    case StrategyKind::parallel: return alpha == 0.0 ? "parallel-a0" : "parallel-ab";
    case StrategyKind::linearized: return through_origin ? "linearized-origin" : "linearized";
    case StrategyKind::stirap: {
      std::ostringstream s;
      s << "stirap-tau" << tau;
      return s.str();
    }
  }
  return "unknown";
}

Strategy Strategy::parallel_alpha0() { return Strategy{}; }

Strategy Strategy::parallel_alpha_beta(double alpha, double beta) {
  Strategy s;
  s.alpha = alpha;
  s.beta = beta;
  return s;
}

Strategy Strategy::linearized() {
  Strategy s;
  s.kind = StrategyKind::linearized;
  return s;
}

Strategy Strategy::stirap(double tau) {
  Strategy s;
  s.kind = StrategyKind::stirap;
  s.tau = tau;
  return s;
}

std::vector<Strategy> figure_strategies() {
  return {Strategy::parallel_alpha0(), Strategy::linearized(), Strategy::stirap(1.1), Strategy::stirap(1.0),
          Strategy::parallel_alpha_beta(0.1, 1.25)};
}

Schedule build_schedule(const Strategy& s, double control) {
  switch (s.kind) {
    case StrategyKind::parallel:
      return make_parallel_schedule(DesignParams{control, s.alpha, s.beta, s.t_span, s.n_samples});
    case StrategyKind::linearized:
      return linearized_schedule(DesignParams{control, 0.0, s.beta, s.t_span, s.n_samples}, s.through_origin);
    case StrategyKind::stirap:
      return stirap_schedule(StirapParams{control, s.tau, 1.0}, TimeGrid{s.t_span, s.n_samples});
  }
  throw InvalidParameter("unknown strategy");
}

std::vector<double> control_grid(double lo, double hi, int steps) {
  if (steps < 1) throw InvalidParameter("control grid needs at least one point");
  if (steps == 1) return {lo};
  if (!(hi > lo)) throw InvalidParameter("control grid must be increasing");
  std::vector<double> g(steps);
  for (int i = 0; i < steps; ++i) g[i] = lo + (hi - lo) * i / (steps - 1);
  return g;
}

std::vector<double> default_grid(const Strategy& s) {
  return s.kind == StrategyKind::stirap ? control_grid(1.0, 14.0, 45) : control_grid(3.0, 14.0, 45);
}

SweepPoint evaluate_point(const Strategy& s, double control) {
  const Schedule sched = build_schedule(s, control);
  SweepPoint p;
  p.control = control;
  p.area = pulse_area(sched);
  p.fluence = fluence(sched);
  const QuantumState final_state = propagate_final(sched, QuantumState::ground(), s.dt);
  p.p3_final = std::clamp(final_state.population(2), 0.0, 1.0);
  p.deviation = 1.0 - p.p3_final;
  return p;
}

namespace {

void check_grid(std::span<const double> grid) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidParameter("control grid must be strictly increasing");
}

struct Outcome {
  std::optional<SweepPoint> point;
  std::string reason;
};

Outcome run_point(const Strategy& s, double control) {
  try {
    return {evaluate_point(s, control), {}};
  } catch (const InfeasibleDesign& e) {
    return {std::nullopt, e.what()};
  }
}

SweepResult assemble(const Strategy& s, std::span<const double> grid, std::vector<Outcome>& outcomes) {
  SweepResult r;
  r.strategy = s;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (outcomes[i].point)
      r.points.push_back(*outcomes[i].point);
    else
      r.skipped.push_back({grid[i], outcomes[i].reason});
  }
  return r;
}

}  // namespace

SweepResult sweep_strategy_serial(const Strategy& s, std::span<const double> grid) {
  check_grid(grid);
  std::vector<Outcome> outcomes(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) outcomes[i] = run_point(s, grid[i]);
  return assemble(s, grid, outcomes);
}

SweepResult sweep_strategy(const Strategy& s, std::span<const double> grid) {
  check_grid(grid);
  std::vector<Outcome> outcomes(grid.size());
  const long n = static_cast<long>(grid.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) outcomes[i] = run_point(s, grid[i]);
  return assemble(s, grid, outcomes);
}

Reached first_reaching(const SweepResult& r, double target_p3) {
  const auto& pts = r.points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i].p3_final < target_p3) continue;
    if (i == 0) {
      if (pts.size() == 1 || pts[0].p3_final == target_p3)
        return {pts[0].control, pts[0].area, pts[0].fluence};
      throw InvalidParameter("sweep for " + r.strategy.tag() + " does not bracket the target from below");
    }
    const SweepPoint& a = pts[i - 1];
    const SweepPoint& b = pts[i];
    const double f = (target_p3 - a.p3_final) / (b.p3_final - a.p3_final);
    return {a.control + f * (b.control - a.control), a.area + f * (b.area - a.area),
            a.fluence + f * (b.fluence - a.fluence)};
  }
  std::ostringstream msg;
  msg << "strategy " << r.strategy.tag() << " never reaches P3 = " << target_p3;
  throw UnreachableTarget(msg.str());
}

Crossover crossover(const SweepResult& reference, const SweepResult& competitor, double target_p3) {
  const Reached ref = first_reaching(reference, target_p3);
  const Reached cmp = first_reaching(competitor, target_p3);
  return {ref.control, cmp.control, ref.area, cmp.area, ref.fluence, cmp.fluence,
          cmp.area / ref.area, cmp.fluence / ref.fluence};
}

double control_for_area(const Strategy& s, double area) {
  if (!(area > 0.0)) throw InvalidParameter("target area must be positive");
  if (s.kind == StrategyKind::stirap) {
    // Area is linear in Omega_max at fixed delay.
    const double unit = pulse_area(build_schedule(s, 1.0));
    return area / unit;
  }
  double lo = 1e-3, hi = 1.0;
  while (pulse_area(build_schedule(s, hi)) < area) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) throw InvalidParameter("target area out of reach");
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pulse_area(build_schedule(s, mid)) < area ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

DelayScanReport delay_scan(const Strategy& s, std::span<const double> delays, double area) {
  DelayScanReport rep;
  rep.delays.assign(delays.begin(), delays.end());
  if (s.kind == StrategyKind::linearized)
    throw UnsupportedVariant("delay scan is defined for STIRAP and parallel strategies");
  if (s.kind == StrategyKind::parallel) rep.control = control_for_area(s, area);

  for (double d : delays) {
    Schedule sched = [&] {
      if (s.kind == StrategyKind::stirap) {
        Strategy at = s;
        at.tau = d;
        return build_schedule(at, control_for_area(at, area));
      }
      return Schedule(ScheduleKind::parallel, ParallelModel{rep.control, s.alpha, s.beta, d},
                      TimeGrid{s.t_span, s.n_samples}.points());
    }();
    rep.area.push_back(pulse_area(sched));
    rep.p3.push_back(propagate_final(sched, QuantumState::ground(), s.dt).population(2));
  }
  if (!rep.p3.empty()) {
    const auto [mn, mx] = std::minmax_element(rep.p3.begin(), rep.p3.end());
    rep.sensitivity = *mx - *mn;
  }
  return rep;
}

}  // namespace pstirap
