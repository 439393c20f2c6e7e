// Serial reference versus OpenMP kernels: wall time and bit-for-bit agreement.
//   bench_parallel [--quick] [--threads N] [--repeats R]

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <string>

#include "pstirap/benchmark.hpp"
#include "pstirap/noise_mc.hpp"

using namespace pstirap;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return best;
}

bool same(const SweepResult& a, const SweepResult& b) {
  return a.points.size() == b.points.size() &&
         std::memcmp(a.points.data(), b.points.data(), a.points.size() * sizeof(SweepPoint)) == 0;
}

bool same(const MonteCarloResult& a, const MonteCarloResult& b) {
  if (std::memcmp(&a.mean_p3, &b.mean_p3, sizeof(double)) != 0) return false;
  for (int k = 0; k < 3; ++k)
    if (std::memcmp(a.mean_populations[k].data(), b.mean_populations[k].data(),
                    a.mean_populations[k].size() * sizeof(double)) != 0)
      return false;
  return true;
}

void row(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-34s %10.3f %10.3f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              identical ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  int repeats = 3;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--quick") {
      quick = true;
      repeats = 1;
    } else if (a == "--threads" && i + 1 < argc) {
      omp_set_num_threads(std::atoi(argv[++i]));
    } else if (a == "--repeats" && i + 1 < argc) {
      repeats = std::max(1, std::atoi(argv[++i]));
    } else {
      std::fprintf(stderr, "usage: %s [--quick] [--threads N] [--repeats R]\n", argv[0]);
      return 2;
    }
  }

  std::printf("threads: %d (hardware %d)\n", omp_get_max_threads(), omp_get_num_procs());
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "openmp s", "speedup");
  bool ok = true;

  const int steps = quick ? 8 : 45;
  for (const Strategy& s : {Strategy::parallel_alpha0(), Strategy::stirap(1.1)}) {
    const auto grid = s.kind == StrategyKind::stirap ? control_grid(1.0, 14.0, steps) : control_grid(3.0, 14.0, steps);
    SweepResult a, b;
    const double ts = best_of(repeats, [&] { a = sweep_strategy_serial(s, grid); });
    const double tp = best_of(repeats, [&] { b = sweep_strategy(s, grid); });
    const std::string name = "sweep " + s.tag() + " (" + std::to_string(steps) + " pts)";
    row(name.c_str(), ts, tp, same(a, b));
    ok = ok && same(a, b);
  }

  const DesignParams fig4{5.4, 0.1, 1.25};
  const NoiseConfig cfg{0.5, quick ? 16 : 400, 20100125};
  MonteCarloResult a, b;
  const double ts = best_of(repeats, [&] { a = monte_carlo_serial(fig4, cfg); });
  const double tp = best_of(repeats, [&] { b = monte_carlo(fig4, cfg); });
  const std::string name = "monte carlo (" + std::to_string(cfg.n_realizations) + " realizations)";
  row(name.c_str(), ts, tp, same(a, b));
  ok = ok && same(a, b);

  return ok ? 0 : 1;
}
