#include <doctest.h>

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstring>

#include "pstirap/errors.hpp"
#include "pstirap/noise_mc.hpp"

using namespace pstirap;

namespace {

const DesignParams kFig4{5.4, 0.1, 1.25};

bool bit_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool bit_equal(const MonteCarloResult& a, const MonteCarloResult& b) {
  if (!bit_equal(a.mean_p3, b.mean_p3) || !bit_equal(a.stderr_p3, b.stderr_p3)) return false;
  for (int k = 0; k < 3; ++k) {
    if (a.mean_populations[k].size() != b.mean_populations[k].size()) return false;
    for (std::size_t i = 0; i < a.mean_populations[k].size(); ++i)
      if (!bit_equal(a.mean_populations[k][i], b.mean_populations[k][i])) return false;
  }
  return true;
}

Schedule padded_pulse(int n) {
  std::vector<double> t;
  std::vector<FieldPoint> pts;
  for (int i = 0; i < n; ++i) {
    const double tt = -3.0 + 6.0 * i / (n - 1);
    const double env = std::abs(tt) < 2.5 ? std::pow(std::cos(tt * 3.14159265358979 / 5.0), 2) : 0.0;
    t.push_back(tt);
    pts.push_back({2.0 * env, 1.5 * env, 0.4 * tt, 0.7});
  }
  return custom_schedule(t, pts);
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_THROWS_AS(NoiseConfig({-0.1}).validate(), InvalidParameter);
  CHECK_THROWS_AS(NoiseConfig({0.5, 0}).validate(), InvalidParameter);
  CHECK_THROWS_AS(NoiseConfig({0.5, 10, 1, 0.0}).validate(), InvalidParameter);
}

TEST_CASE("zero noise width reproduces the input schedule") {
  const Schedule s = make_parallel_schedule({5.8, 0.0, 1.25, 5.0, 501});
  const std::vector<FieldPoint> f = perturb_fields(s, NoiseConfig{0.0, 1, 99}, 3);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const FieldPoint b = s.sample(i);
    CHECK(f[i].omega_p == b.omega_p);
    CHECK(f[i].omega_s == b.omega_s);
    CHECK(f[i].delta_1 == b.delta_1);
    CHECK(f[i].delta_2 == b.delta_2);
  }
}

TEST_CASE("amplitude noise follows the pulse shape") {
  const Schedule s = padded_pulse(601);
  const NoiseConfig cfg{0.5, 1, 5};
  const std::vector<FieldPoint> f = perturb_fields(s, cfg, 0);
  CHECK(std::abs(f.front().omega_p) <= 1e-15);
  CHECK(std::abs(f.back().omega_s) <= 1e-15);
  CounterRng rng(cfg.seed, 0);
  const double r1 = rng.centered();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const StepNoise n = draw_step_noise(rng);
    const FieldPoint b = s.sample(i);
    REQUIRE(f[i].omega_p == doctest::Approx(b.omega_p + cfg.gamma * (r1 + n.r2) * b.omega_p / s.peak_pump()));
    REQUIRE(f[i].omega_s == doctest::Approx(b.omega_s + cfg.gamma * (r1 + n.r2) * b.omega_s / s.peak_stokes()));
    REQUIRE(f[i].delta_1 - b.delta_1 == doctest::Approx(cfg.gamma * n.r3));
    REQUIRE(f[i].delta_2 - b.delta_2 == doctest::Approx(cfg.gamma * n.r4));
  }
}

TEST_CASE("detuning noise is uniform on [-Gamma/2, Gamma/2)") {
  const int n = 100001;
  const Schedule s = padded_pulse(n);
  const double gamma = 0.5;
  const std::vector<FieldPoint> f = perturb_fields(s, NoiseConfig{gamma, 1, 2024}, 7);
  std::vector<double> u;
  for (int i = 0; i + 1 < n; ++i) {
    const double x = (f[i].delta_1 - s.delta_1()[i]) / gamma;
    REQUIRE(x >= -0.5 - 1e-12);
    REQUIRE(x < 0.5 + 1e-12);
    u.push_back(x + 0.5);
  }
  std::sort(u.begin(), u.end());
  const double m = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) d = std::max({d, (i + 1.0) / m - u[i], u[i] - i / m});
  CHECK(d < 1.628 / std::sqrt(m));
}

TEST_CASE("realizations draw r1 in range and keep the norm") {
  const Schedule s = noise_schedule(kFig4, kNoiseDt);
  for (int k = 0; k < 20; ++k) {
    const NoisyRealization r = run_realization(s, NoiseConfig{0.5, 1, 11}, k);
    CHECK(r.r1 >= -0.5);
    CHECK(r.r1 < 0.5);
    CHECK(r.norm_drift <= 1e-6);
    CHECK(r.index == k);
  }
}

TEST_CASE("zero noise: the mean is the deterministic run exactly") {
  const NoiseConfig cfg{0.0, 5, 1};
  const MonteCarloResult mc = monte_carlo(kFig4, cfg);
  const QuantumState det = propagate_final(noise_schedule(kFig4, cfg.dt), QuantumState::ground(), cfg.dt);
  CHECK(mc.mean_p3 == det.population(2));
  CHECK(mc.stderr_p3 == 0.0);
  CHECK(mc.mean_p3 == doctest::Approx(0.996).epsilon(0.002));
}

TEST_CASE("parallel and serial Monte Carlo are bit-identical") {
  const NoiseConfig cfg{0.5, 24, 314159};
  const MonteCarloResult serial = monte_carlo_serial(kFig4, cfg);
  for (int threads : {1, 3, 4}) {
    omp_set_num_threads(threads);
    CHECK(bit_equal(serial, monte_carlo(kFig4, cfg)));
  }
  CHECK(bit_equal(monte_carlo(kFig4, cfg), monte_carlo(kFig4, cfg)));
  NoiseConfig other = cfg;
  other.seed += 1;
  CHECK_FALSE(bit_equal(serial, monte_carlo(kFig4, other)));
}

TEST_CASE("transfer degrades monotonically with noise width") {
  double prev = 2.0;
  for (double g : {0.0, 0.25, 0.5}) {
    const MonteCarloResult mc = monte_carlo(kFig4, NoiseConfig{g, 200, 77});
    CHECK(mc.mean_p3 <= prev);
    prev = mc.mean_p3;
  }
}

TEST_CASE("standard error scales as 1/sqrt(n)") {
  std::vector<double> se;
  for (int n : {50, 200, 800}) se.push_back(monte_carlo(kFig4, NoiseConfig{0.5, n, 4242}).stderr_p3);
  CHECK(se[0] / se[1] == doctest::Approx(2.0).epsilon(0.35));
  CHECK(se[1] / se[2] == doctest::Approx(2.0).epsilon(0.35));
}
