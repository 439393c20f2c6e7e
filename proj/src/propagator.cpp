#include "pstirap/propagator.hpp"

#include <cmath>

#include "pstirap/errors.hpp"

namespace pstirap {

namespace {

using State = std::array<Complex, 3>;

// -i H y for the Lambda Hamiltonian.
inline State derivative(const FieldPoint& f, const State& y) {
  const Complex minus_i{0.0, -1.0};
  const double hp = 0.5 * f.omega_p, hs = 0.5 * f.omega_s;
  return {minus_i * (hp * y[1]), minus_i * (hp * y[0] + f.delta_1 * y[1] + hs * y[2]),
          minus_i * (hs * y[1] + f.delta_2 * y[2])};
}

inline State axpy(const State& y, double a, const State& k) {
  return {y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2]};
}

inline State rk4(const State& y, double h, const FieldPoint& f0, const FieldPoint& fm,
                 const FieldPoint& f1) {
  const State k1 = derivative(f0, y);
  const State k2 = derivative(fm, axpy(y, 0.5 * h, k1));
  const State k3 = derivative(fm, axpy(y, 0.5 * h, k2));
  const State k4 = derivative(f1, axpy(y, h, k3));
  const double w = h / 6.0;
  State out;
  for (int i = 0; i < 3; ++i) out[i] = y[i] + w * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

void check_inputs(const Schedule& s, const QuantumState& initial, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidStep("time step must be positive");
  const auto& t = s.t();
  for (std::size_t i = 1; i < t.size(); ++i) {
    const double h = t[i] - t[i - 1];
    if (!(h > 0.0)) throw InvalidParameter("schedule grid must be increasing");
    if (dt > h * (1.0 + 1e-12))
      throw InvalidStep("time step exceeds the schedule grid spacing");
  }
  if (std::abs(initial.norm_squared() - 1.0) > 1e-10)
    throw InvalidState("initial state is not normalized");
}

template <typename FieldFn, typename Observer>
QuantumState integrate(const Schedule& s, const QuantumState& initial, double dt, FieldFn&& field,
                       Observer&& observe) {
  check_inputs(s, initial, dt);
  const auto& t = s.t();
  State y = initial.c;
  observe(0, y);
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    const double h_grid = t[i + 1] - t[i];
    const int m = std::max(1, static_cast<int>(std::ceil(h_grid / dt - 1e-9)));
    const double h = h_grid / m;
    FieldPoint f0 = field(i, t[i]);
    for (int j = 0; j < m; ++j) {
      const double ta = t[i] + j * h;
      const double tb = (j + 1 == m) ? t[i + 1] : t[i] + (j + 1) * h;
      const FieldPoint fm = field(i, ta + 0.5 * h);
      const FieldPoint f1 = field(i, tb);
      y = rk4(y, h, f0, fm, f1);
      f0 = f1;
    }
    observe(i + 1, y);
  }
  QuantumState out;
  out.c = y;
  return out;
}

PropagationResult run_recorded(const Schedule& s, const QuantumState& initial, double dt,
                               const IntervalField* custom) {
  PropagationResult r;
  const std::size_t n = s.size();
  r.t = s.t();
  for (auto& p : r.populations) p.resize(n);
  r.states.resize(n);
  auto observe = [&](std::size_t i, const State& y) {
    QuantumState q;
    q.c = y;
    r.states[i] = q;
    for (int k = 0; k < 3; ++k) r.populations[k][i] = std::norm(y[k]);
    r.norm_drift = std::max(r.norm_drift, std::abs(1.0 - q.norm_squared()));
  };
  if (custom)
    r.final_state = integrate(s, initial, dt, *custom, observe);
  else
    r.final_state = integrate(
        s, initial, dt, [&s](std::size_t, double t) { return s.field_at(t); }, observe);
  return r;
}

}  // namespace

QuantumState rk4_step(const QuantumState& y, double t, double h,
                      const std::function<FieldPoint(double)>& field) {
  QuantumState out;
  out.c = rk4(y.c, h, field(t), field(t + 0.5 * h), field(t + h));
  return out;
}

PropagationResult propagate(const Schedule& s, const QuantumState& initial, double dt) {
  return run_recorded(s, initial, dt, nullptr);
}

PropagationResult propagate(const Schedule& s, const QuantumState& initial, double dt,
                            const IntervalField& field) {
  return run_recorded(s, initial, dt, &field);
}

QuantumState propagate_final(const Schedule& s, const QuantumState& initial, double dt) {
  return integrate(
      s, initial, dt, [&s](std::size_t, double t) { return s.field_at(t); },
      [](std::size_t, const State&) {});
}

std::array<std::vector<double>, 3> adiabatic_projection(PropagationResult& r, const Schedule& s) {
  if (r.states.size() != s.size()) throw InvalidParameter("result and schedule grids differ");
  const std::size_t n = s.size();
  for (auto& a : r.adiabatic_populations) a.assign(n, 0.0);
  EigenSystem previous{};
  for (std::size_t i = 0; i < n; ++i) {
    EigenSystem es = eigensystem(build_hamiltonian(s.sample(i)));
    if (i > 0) es = align_eigenvectors(previous, es);
    r.continuity_warning = r.continuity_warning || es.continuity_warning;
    for (int k = 0; k < 3; ++k) {
      const Vec3& v = es.eigenvector(k);
      const auto& c = r.states[i].c;
      const Complex overlap = v[0] * c[0] + v[1] * c[1] + v[2] * c[2];
      r.adiabatic_populations[k][i] = std::norm(overlap);
    }
    previous = es;
  }
  return r.adiabatic_populations;
}

}  // namespace pstirap
