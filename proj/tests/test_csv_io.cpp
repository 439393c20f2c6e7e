#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "pstirap/csv_io.hpp"
#include "pstirap/errors.hpp"

using namespace pstirap;

TEST_CASE("doubles round-trip through text") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 20000; ++i) {
    const double x = std::ldexp(mant(gen), expo(gen));
    REQUIRE(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("schedule CSV layout and round trip") {
  const Schedule s = make_parallel_schedule({5.8, 0.0, 1.25, 5.0, 64});
  std::ostringstream os;
  write_provenance(os, R"({"k":1})");
  write_schedule_csv(os, s);
  const std::string text = os.str();
  CHECK(text.rfind("# config: {\"k\":1}\nt,omega_p,omega_s,delta1,delta2,w_minus,w_0,w_plus\n", 0) == 0);

  std::istringstream is(text);
  const Schedule back = read_schedule_csv(is);
  REQUIRE(back.size() == s.size());
  CHECK(back.kind() == ScheduleKind::custom);
  CHECK(back.t() == s.t());
  // Sample values pass through the interpolating spline, exact to rounding.
  for (std::size_t i = 0; i < s.size(); ++i) {
    CHECK(std::abs(back.omega_p()[i] - s.omega_p()[i]) <= 1e-13);
    CHECK(std::abs(back.omega_s()[i] - s.omega_s()[i]) <= 1e-13);
    CHECK(std::abs(back.delta_1()[i] - s.delta_1()[i]) <= 1e-13);
    CHECK(back.w_0()[i] == doctest::Approx(s.w_0()[i]).epsilon(1e-12));
  }
}

TEST_CASE("malformed schedule CSV") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_schedule_csv(empty), ConfigError);
  std::istringstream header("t,a,b\n1,2,3\n");
  CHECK_THROWS_AS(read_schedule_csv(header), ConfigError);
  std::istringstream bad("t,omega_p,omega_s,delta1,delta2\n0,1,x,0,0\n");
  CHECK_THROWS_AS(read_schedule_csv(bad), ConfigError);
  std::istringstream few("t,omega_p,omega_s,delta1,delta2\n0,1,1,0,0\n1,1,1,0,0\n");
  CHECK_THROWS_AS(read_schedule_csv(few), ConfigError);
  CHECK_THROWS_AS(read_schedule_csv(std::string("/nonexistent/schedule.csv")), ConfigError);
}

TEST_CASE("population and sweep CSV headers") {
  PropagationResult r;
  r.t = {0.0, 1.0};
  r.populations = {std::vector<double>{1, 0.5}, {0, 0.25}, {0, 0.25}};
  std::ostringstream bare;
  write_population_csv(bare, r);
  CHECK(bare.str() == "t,p1,p2,p3\n0,1,0,0\n1,0.5,0.25,0.25\n");
  r.adiabatic_populations = r.populations;
  std::ostringstream full;
  write_population_csv(full, r);
  CHECK(full.str().rfind("t,p1,p2,p3,ad_minus,ad_0,ad_plus\n0,1,0,0,1,0,0\n", 0) == 0);

  std::ostringstream sw;
  write_sweep_header(sw);
  SweepResult res;
  res.strategy = Strategy::stirap(1.1);
  res.points.push_back({2.0, std::numbers::pi, 4.0, 0.75, 0.25});
  write_sweep_rows(sw, res);
  CHECK(sw.str() == "strategy,control,area_over_pi,fluence_T,p3,deviation\nstirap-tau1.1,2,1,4,0.75,0.25\n");
}
