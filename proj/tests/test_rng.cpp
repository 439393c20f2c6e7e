#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pstirap/rng.hpp"

using namespace pstirap;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == Philox4x32Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Philox4x32Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Philox4x32Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  CounterRng a(42, 3), b(42, 3), c(42, 4), d(43, 3);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int i = 0; i < 64; ++i) {
    va.push_back(a());
    vb.push_back(b());
    vc.push_back(c());
    vd.push_back(d());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
}

TEST_CASE("uniform draws lie in their half-open intervals") {
  CounterRng r(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const double c = r.centered();
    REQUIRE(c >= -0.5);
    REQUIRE(c < 0.5);
  }
}

TEST_CASE("Kolmogorov-Smirnov test against the uniform law at 1%") {
  for (std::uint64_t stream : {0u, 1u, 999u}) {
    CounterRng r(20100125, stream);
    const int n = 100000;
    std::vector<double> x(n);
    for (double& v : x) v = r.uniform();
    std::sort(x.begin(), x.end());
    double d = 0.0;
    for (int i = 0; i < n; ++i) d = std::max({d, (i + 1.0) / n - x[i], x[i] - static_cast<double>(i) / n});
    // Asymptotic critical value at alpha = 0.01.
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(n)));
  }
}
