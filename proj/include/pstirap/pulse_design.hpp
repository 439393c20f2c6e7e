#pragma once

// Field schedules: the parallel-eigenvalue design, its Gaussian-fit and
// linearized-chirp variants, conventional STIRAP, and user-sampled fields.
// Time is in units of T, frequencies in units of 1/T.

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "pstirap/lambda_core.hpp"

namespace pstirap {

struct DesignParams {
  double omega0 = 5.8;
  double alpha = 0.0;
  double beta = 1.25;
  double t_span = 5.0;
  int n_samples = 4096;

  void validate() const;
};

struct StirapParams {
  double omega_max = 1.0;
  double tau = 1.1;
  double width = 1.0;

  void validate() const;
};

/// Uniform time grid over [-t_span, t_span], endpoints included.
struct TimeGrid {
  double t_span = 5.0;
  int n_samples = 4096;

  double spacing() const { return 2.0 * t_span / (n_samples - 1); }
  double at(int i) const;
  std::vector<double> points() const;
};

enum class ScheduleKind { parallel, linearized, stirap, custom };

std::string_view to_string(ScheduleKind kind);

// Analytic field models. `envelope_shift` moves the pump envelope by +s/2 and
// the Stokes envelope by -s/2 in time with the detunings left in place; it is
// how the delay scan perturbs the parallel design.
struct ParallelModel {
  double omega0;
  double alpha;
  double beta;
  double envelope_shift = 0.0;
};

struct LinearizedModel {
  double omega0;
  // false: Delta = Omega0/4 + slope t (chirp about the carrier omega_P(0)).
  // true:  Delta = slope t, i.e. the chirp taken literally through the origin.
  bool through_origin = false;
};

struct StirapModel {
  StirapParams params;
};

class CustomModel {
public:
  CustomModel(std::vector<double> t, std::vector<FieldPoint> samples);
  FieldPoint at(double t) const;

private:
  struct Splines;
  std::shared_ptr<const Splines> splines_;
};

using FieldModel = std::variant<ParallelModel, LinearizedModel, StirapModel, CustomModel>;

FieldPoint evaluate(const FieldModel& model, double t);

/// Time-sampled field record. Immutable once built; `field_at` evaluates the
/// underlying model anywhere (analytic closures, or cubic splines for custom).
class Schedule {
public:
  Schedule(ScheduleKind kind, FieldModel model, std::vector<double> t);

  ScheduleKind kind() const { return kind_; }
  const FieldModel& model() const { return model_; }
  std::size_t size() const { return t_.size(); }

  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& omega_p() const { return omega_p_; }
  const std::vector<double>& omega_s() const { return omega_s_; }
  const std::vector<double>& delta_1() const { return delta_1_; }
  const std::vector<double>& delta_2() const { return delta_2_; }
  const std::vector<double>& w_minus() const { return w_minus_; }
  const std::vector<double>& w_0() const { return w_0_; }
  const std::vector<double>& w_plus() const { return w_plus_; }

  FieldPoint sample(std::size_t i) const;
  FieldPoint field_at(double t) const;

  /// Schedule whose fields at t equal this schedule's fields at -t.
  Schedule time_reversed() const;

  /// Max over the grid of omega_p / omega_s (the normalization of the shape).
  double peak_pump() const;
  double peak_stokes() const;

private:
  ScheduleKind kind_;
  FieldModel model_;
  bool reversed_ = false;
  std::vector<double> t_;
  std::vector<double> omega_p_, omega_s_, delta_1_, delta_2_;
  std::vector<double> w_minus_, w_0_, w_plus_;

  void fill();
};

/// Delta(t), delta(t) of the erf/Gaussian parametrization.
std::pair<double, double> detuning_schedule(const DesignParams& p, double t);
std::pair<double, double> detuning_schedule(double omega0, double alpha, double beta, double t);

/// Pump and Stokes Rabi frequencies keeping the eigenvalues at
/// (Delta + delta)/3 + {-1, 0, 1} Omega0/2. Squares down to -1e-9 Omega0^2
/// are clamped to zero; anything more negative throws InfeasibleDesign
/// naming `t`.
std::pair<double, double> solve_parallel_rabi(double omega0, double delta_1, double delta_2,
                                              double t = 0.0);

/// Right-hand side of the parallelism condition; zero on the level line.
double parallel_condition_residual(double omega_p, double omega_s, double delta_1, double delta_2);

Schedule make_parallel_schedule(const DesignParams& p);

struct EnvelopePair {
  std::function<double(double)> pump;
  std::function<double(double)> stokes;
};

/// (Omega0/2) beta exp(-[(t -/+ 0.14)/beta]^2), beta = sqrt(pi/2): the
/// Gaussian fit of the alpha = 0 envelopes ("-" pump, "+" Stokes).
EnvelopePair gaussian_fit_envelopes(double omega0);

inline constexpr double kFitDelay = 0.14;

Schedule linearized_schedule(const DesignParams& p, bool through_origin = false);

Schedule stirap_schedule(const StirapParams& s, const TimeGrid& grid);

/// Samples must lie on a uniform grid with at least 4 points.
Schedule custom_schedule(std::vector<double> t, std::vector<FieldPoint> samples);

double pulse_area(const Schedule& s);
double fluence(const Schedule& s);

/// Composite trapezoid on an arbitrary (sorted) grid.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace pstirap
