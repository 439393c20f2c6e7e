#include "pstirap/pulse_design.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pstirap/errors.hpp"

namespace pstirap {

namespace {

constexpr double kClampTolerance = 1e-9;

double fit_beta() { return std::sqrt(std::numbers::pi / 2.0); }

double linearized_slope(double omega0) { return 3.0 * omega0 / (2.0 * std::sqrt(std::numbers::pi)); }

}  // namespace

void DesignParams::validate() const {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw InvalidParameter("omega0 must be positive");
  if (!std::isfinite(alpha)) throw InvalidParameter("alpha must be finite");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidParameter("beta must be positive");
  if (!(t_span > 0.0) || !std::isfinite(t_span)) throw InvalidParameter("t_span must be positive");
  if (n_samples < 2) throw InvalidParameter("n_samples must be at least 2");
}

void StirapParams::validate() const {
  if (!(omega_max > 0.0) || !std::isfinite(omega_max))
    throw InvalidParameter("omega_max must be positive");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidParameter("tau must be non-negative");
  if (!(width > 0.0) || !std::isfinite(width)) throw InvalidParameter("width must be positive");
}

double TimeGrid::at(int i) const {
  if (n_samples < 2) throw InvalidParameter("time grid needs at least 2 samples");
  // Symmetric construction: t(i) = -t(n-1-i) exactly.
  const double h = spacing();
  const int j = n_samples - 1 - i;
  return i <= j ? -t_span + i * h : t_span - j * h;
}

std::vector<double> TimeGrid::points() const {
  if (n_samples < 2 || !(t_span > 0.0)) throw InvalidParameter("invalid time grid");
  std::vector<double> t(n_samples);
  for (int i = 0; i < n_samples; ++i) t[i] = at(i);
  return t;
}

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::parallel: return "parallel";
    case ScheduleKind::linearized: return "linearized";
    case ScheduleKind::stirap: return "stirap";
    case ScheduleKind::custom: return "custom";
  }
  return "custom";
}

// ---------------------------------------------------------------------------

struct CustomModel::Splines {
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  double t0, t1;
  FieldPoint first, last;
  Spline omega_p, omega_s, delta_1, delta_2;
};

CustomModel::CustomModel(std::vector<double> t, std::vector<FieldPoint> samples) {
  const std::size_t n = t.size();
  if (n < 4 || samples.size() != n) throw InvalidParameter("custom schedule needs >= 4 matching samples");
  const double h = (t.back() - t.front()) / static_cast<double>(n - 1);
  if (!(h > 0.0)) throw InvalidParameter("custom schedule grid must be increasing");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(t[i] - (t.front() + static_cast<double>(i) * h)) > 1e-9 * std::max(1.0, std::abs(t[i])))
      throw InvalidParameter("custom schedule grid must be uniform");
  }
  auto column = [&](auto member) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = samples[i].*member;
    return Splines::Spline(v.begin(), v.end(), t.front(), h);
  };
  splines_ = std::make_shared<const Splines>(Splines{
      t.front(), t.back(), samples.front(), samples.back(), column(&FieldPoint::omega_p),
      column(&FieldPoint::omega_s), column(&FieldPoint::delta_1), column(&FieldPoint::delta_2)});
}

FieldPoint CustomModel::at(double t) const {
  const Splines& s = *splines_;
  // Outside the sampled window the fields are off and detunings held.
  if (t < s.t0) return {0.0, 0.0, s.first.delta_1, s.first.delta_2};
  if (t > s.t1) return {0.0, 0.0, s.last.delta_1, s.last.delta_2};
  return {std::max(0.0, s.omega_p(t)), std::max(0.0, s.omega_s(t)), s.delta_1(t), s.delta_2(t)};
}

FieldPoint evaluate(const FieldModel& model, double t) {
  return std::visit(
      [t](const auto& m) -> FieldPoint {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<M, ParallelModel>) {
          const auto [d1, d2] = detuning_schedule(m.omega0, m.alpha, m.beta, t);
          if (m.envelope_shift == 0.0) {
            const auto [op, os] = solve_parallel_rabi(m.omega0, d1, d2, t);
            return {op, os, d1, d2};
          }
          const double tp = t - 0.5 * m.envelope_shift;
          const double ts = t + 0.5 * m.envelope_shift;
          const auto [dp1, dp2] = detuning_schedule(m.omega0, m.alpha, m.beta, tp);
          const auto [ds1, ds2] = detuning_schedule(m.omega0, m.alpha, m.beta, ts);
          return {solve_parallel_rabi(m.omega0, dp1, dp2, tp).first,
                  solve_parallel_rabi(m.omega0, ds1, ds2, ts).second, d1, d2};
        } else if constexpr (std::is_same_v<M, LinearizedModel>) {
          const double beta = fit_beta();
          const double amp = 0.5 * m.omega0 * beta;
          const double xp = (t - kFitDelay) / beta;
          const double xs = (t + kFitDelay) / beta;
          const double offset = m.through_origin ? 0.0 : 0.25 * m.omega0;
          return {amp * std::exp(-xp * xp), amp * std::exp(-xs * xs),
                  offset + linearized_slope(m.omega0) * t, 0.5 * m.omega0};
        } else if constexpr (std::is_same_v<M, StirapModel>) {
          const auto& p = m.params;
          const double xp = (t - 0.5 * p.tau) / p.width;
          const double xs = (t + 0.5 * p.tau) / p.width;
          return {p.omega_max * std::exp(-xp * xp), p.omega_max * std::exp(-xs * xs), 0.0, 0.0};
        } else {
          return m.at(t);
        }
      },
      model);
}

// ---------------------------------------------------------------------------

Schedule::Schedule(ScheduleKind kind, FieldModel model, std::vector<double> t)
    : kind_(kind), model_(std::move(model)), t_(std::move(t)) {
  if (t_.size() < 2) throw InvalidParameter("schedule needs at least 2 samples");
  fill();
}

void Schedule::fill() {
  const std::size_t n = t_.size();
  omega_p_.resize(n);
  omega_s_.resize(n);
  delta_1_.resize(n);
  delta_2_.resize(n);
  w_minus_.resize(n);
  w_0_.resize(n);
  w_plus_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const FieldPoint p = field_at(t_[i]);
    omega_p_[i] = p.omega_p;
    omega_s_[i] = p.omega_s;
    delta_1_[i] = p.delta_1;
    delta_2_[i] = p.delta_2;
    const EigenSystem es = eigensystem(build_hamiltonian(p));
    w_minus_[i] = es.omega_minus;
    w_0_[i] = es.omega_0;
    w_plus_[i] = es.omega_plus;
  }
}

FieldPoint Schedule::sample(std::size_t i) const {
  return {omega_p_.at(i), omega_s_.at(i), delta_1_.at(i), delta_2_.at(i)};
}

FieldPoint Schedule::field_at(double t) const { return evaluate(model_, reversed_ ? -t : t); }

Schedule Schedule::time_reversed() const {
  Schedule out = *this;
  out.reversed_ = !reversed_;
  std::reverse(out.t_.begin(), out.t_.end());
  for (double& x : out.t_) x = -x;
  auto flip = [](std::vector<double>& v) { std::reverse(v.begin(), v.end()); };
  flip(out.omega_p_);
  flip(out.omega_s_);
  flip(out.delta_1_);
  flip(out.delta_2_);
  flip(out.w_minus_);
  flip(out.w_0_);
  flip(out.w_plus_);
  return out;
}

double Schedule::peak_pump() const { return *std::max_element(omega_p_.begin(), omega_p_.end()); }

double Schedule::peak_stokes() const { return *std::max_element(omega_s_.begin(), omega_s_.end()); }

// ---------------------------------------------------------------------------

std::pair<double, double> detuning_schedule(double omega0, double alpha, double beta, double t) {
  const double delta_1 = 0.75 * omega0 * std::erf(t) + 0.25 * omega0;
  const double g = beta * t;
  const double delta_2 = 0.5 * omega0 * (1.0 + alpha * std::exp(-g * g));
  return {delta_1, delta_2};
}

std::pair<double, double> detuning_schedule(const DesignParams& p, double t) {
  return detuning_schedule(p.omega0, p.alpha, p.beta, t);
}

std::pair<double, double> solve_parallel_rabi(double omega0, double delta_1, double delta_2, double t) {
  if (delta_2 == 0.0) throw InvalidParameter("two-photon detuning must be nonzero");
  const double d = delta_1, e = delta_2;
  const double total = omega0 * omega0 - (4.0 / 3.0) * (d * d - d * e + e * e);
  const double pump2 = (d + e) * (9.0 * total - 4.0 * (2.0 * d - e) * (2.0 * e - d)) / (27.0 * e);
  const double stokes2 = total - pump2;
  const double floor = -kClampTolerance * omega0 * omega0;
  auto check = [&](double value, const char* name) {
    if (value < floor) {
      std::ostringstream msg;
      msg << "infeasible design: " << name << "^2 = " << value << " at t = " << t
          << " (no level line at this time)";
      throw InfeasibleDesign(t, value, msg.str());
    }
    return std::sqrt(std::max(0.0, value));
  };
  const double pump = check(pump2, "Omega_P");
  const double stokes = check(stokes2, "Omega_S");
  return {pump, stokes};
}

double parallel_condition_residual(double omega_p, double omega_s, double delta_1, double delta_2) {
  const double d = delta_1, e = delta_2;
  return (9.0 * (omega_p * omega_p + omega_s * omega_s) - 4.0 * (2.0 * d - e) * (2.0 * e - d)) *
             (d + e) / 27.0 -
         omega_p * omega_p * e;
}

Schedule make_parallel_schedule(const DesignParams& p) {
  p.validate();
  return Schedule(ScheduleKind::parallel, ParallelModel{p.omega0, p.alpha, p.beta},
                  TimeGrid{p.t_span, p.n_samples}.points());
}

EnvelopePair gaussian_fit_envelopes(double omega0) {
  if (!(omega0 > 0.0)) throw InvalidParameter("omega0 must be positive");
  const double beta = fit_beta();
  const double amp = 0.5 * omega0 * beta;
  return {[=](double t) {
            const double x = (t - kFitDelay) / beta;
            return amp * std::exp(-x * x);
          },
          [=](double t) {
            const double x = (t + kFitDelay) / beta;
            return amp * std::exp(-x * x);
          }};
}

Schedule linearized_schedule(const DesignParams& p, bool through_origin) {
  p.validate();
  if (p.alpha != 0.0) throw UnsupportedVariant("linearized schedule requires alpha = 0");
  return Schedule(ScheduleKind::linearized, LinearizedModel{p.omega0, through_origin},
                  TimeGrid{p.t_span, p.n_samples}.points());
}

Schedule stirap_schedule(const StirapParams& s, const TimeGrid& grid) {
  s.validate();
  return Schedule(ScheduleKind::stirap, StirapModel{s}, grid.points());
}

Schedule custom_schedule(std::vector<double> t, std::vector<FieldPoint> samples) {
  for (const auto& p : samples) {
    if (!(p.omega_p >= 0.0) || !(p.omega_s >= 0.0) || !std::isfinite(p.omega_p) ||
        !std::isfinite(p.omega_s) || !std::isfinite(p.delta_1) || !std::isfinite(p.delta_2))
      throw InvalidParameter("custom samples need finite, non-negative Rabi frequencies");
  }
  CustomModel model(t, std::move(samples));
  return Schedule(ScheduleKind::custom, std::move(model), std::move(t));
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidParameter("trapezoid: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

double pulse_area(const Schedule& s) {
  std::vector<double> rms(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) rms[i] = std::hypot(s.omega_p()[i], s.omega_s()[i]);
  return trapezoid(s.t(), rms);
}

double fluence(const Schedule& s) {
  std::vector<double> sq(s.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    sq[i] = s.omega_p()[i] * s.omega_p()[i] + s.omega_s()[i] * s.omega_s()[i];
  return trapezoid(s.t(), sq);
}

}  // namespace pstirap
