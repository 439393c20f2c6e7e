#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "pstirap/errors.hpp"
#include "pstirap/lambda_core.hpp"
#include "pstirap/pulse_design.hpp"

using namespace pstirap;

namespace {

Eigen::Matrix3d to_eigen(const Hamiltonian3& h) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = h.m[i][j];
  return m;
}

double residual(const Hamiltonian3& h, double w, const Vec3& v) {
  double r = 0.0;
  for (int i = 0; i < 3; ++i) {
    double hv = 0.0;
    for (int j = 0; j < 3; ++j) hv += h.m[i][j] * v[j];
    r += (hv - w * v[i]) * (hv - w * v[i]);
  }
  return std::sqrt(r);
}

// Field points with magnitudes spread over several decades and both signs of
// the detunings; every tenth point has a repeated diagonal entry.
FieldPoint random_point(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> decade(-3, 3);
  auto draw = [&] { return u(gen) * std::pow(10.0, decade(gen)); };
  FieldPoint p{std::abs(draw()), std::abs(draw()), draw(), draw()};
  if (gen() % 10 == 0) p.delta_2 = p.delta_1;
  if (gen() % 17 == 0) p.omega_s = 0.0;
  return p;
}

}  // namespace

TEST_CASE("build_hamiltonian layout") {
  const Hamiltonian3 zero = build_hamiltonian({0, 0, 0, 0});
  for (const auto& row : zero.m)
    for (double x : row) CHECK(x == 0.0);

  const Hamiltonian3 h = build_hamiltonian({2, 4, 3, 5});
  const Mat3 expected{{{0, 1, 0}, {1, 3, 2}, {0, 2, 5}}};
  CHECK(h.m == expected);

  const EigenSystem es = eigensystem(build_hamiltonian({2, 0, 0, 0}));
  CHECK(es.omega_minus == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(es.omega_0) < 1e-14);
  CHECK(es.omega_plus == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("build_hamiltonian rejects non-finite fields") {
  CHECK_THROWS_AS(build_hamiltonian({NAN, 0, 0, 0}), InvalidParameter);
  CHECK_THROWS_AS(build_hamiltonian({0, 0, INFINITY, 0}), InvalidParameter);
}

TEST_CASE("eigensystem of a diagonal Hamiltonian") {
  const EigenSystem es = eigensystem(build_hamiltonian({0, 0, 3.0, -1.5}));
  CHECK(es.omega_minus == doctest::Approx(-1.5));
  CHECK(es.omega_0 == doctest::Approx(0.0));
  CHECK(es.omega_plus == doctest::Approx(3.0));
  // Coordinate axes |3>, |1>, |2>.
  CHECK(std::abs(es.psi_minus[2]) == doctest::Approx(1.0));
  CHECK(std::abs(es.psi_0[0]) == doctest::Approx(1.0));
  CHECK(std::abs(es.psi_plus[1]) == doctest::Approx(1.0));
}

TEST_CASE("eigensystem with zero detunings") {
  const double op = 1.7, os = 0.6;
  const EigenSystem es = eigensystem(build_hamiltonian({op, os, 0, 0}));
  const double half = 0.5 * std::hypot(op, os);
  CHECK(es.omega_minus == doctest::Approx(-half).epsilon(1e-13));
  CHECK(std::abs(es.omega_0) < 1e-13);
  CHECK(es.omega_plus == doctest::Approx(half).epsilon(1e-13));
  // Dark state: no |2> component.
  CHECK(std::abs(es.psi_0[1]) < 1e-12);
}

TEST_CASE("eigensystem agrees with an independent solver on random matrices") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 10000; ++trial) {
    const FieldPoint p = random_point(gen);
    const Hamiltonian3 h = build_hamiltonian(p);
    const EigenSystem es = eigensystem(h);
    const double scale = std::max(1.0, h.norm());

    REQUIRE(es.omega_minus <= es.omega_0);
    REQUIRE(es.omega_0 <= es.omega_plus);
    for (int k = 0; k < 3; ++k) REQUIRE(residual(h, es.eigenvalue(k), es.eigenvector(k)) <= 1e-10 * scale);

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> oracle(to_eigen(h));
    for (int k = 0; k < 3; ++k) REQUIRE(std::abs(oracle.eigenvalues()(k) - es.eigenvalue(k)) <= 1e-11 * scale);

    const double trace = p.delta_1 + p.delta_2;
    REQUIRE(std::abs(es.omega_minus + es.omega_0 + es.omega_plus - trace) <= 1e-13 * scale);

    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        REQUIRE(std::abs(dot(es.eigenvector(a), es.eigenvector(b)) - (a == b ? 1.0 : 0.0)) < 1e-10);
  }
}

TEST_CASE("Jacobi fallback matches the closed form") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const Hamiltonian3 h = build_hamiltonian(random_point(gen));
    const EigenSystem a = eigensystem(h), b = eigensystem_jacobi(h);
    const double scale = std::max(1.0, h.norm());
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(a.eigenvalue(k) - b.eigenvalue(k)) <= 1e-11 * scale);
      CHECK(residual(h, b.eigenvalue(k), b.eigenvector(k)) <= 1e-10 * scale);
    }
  }
}

TEST_CASE("degenerate spectrum raises a continuity warning, not an error") {
  const EigenSystem es = eigensystem(build_hamiltonian({0, 0, 1.0, 1.0}));
  CHECK(es.continuity_warning);
  CHECK(es.omega_0 == doctest::Approx(1.0));
  CHECK(es.omega_plus == doctest::Approx(1.0));
  const EigenSystem zero = eigensystem(build_hamiltonian({0, 0, 0, 0}));
  CHECK(zero.continuity_warning);
}

TEST_CASE("align_eigenvectors fixes the sign gauge") {
  const EigenSystem prev = eigensystem(build_hamiltonian({1.0, 0.5, 0.3, 0.2}));
  const EigenSystem same = align_eigenvectors(prev, prev);
  for (int k = 0; k < 3; ++k) CHECK(same.eigenvector(k) == prev.eigenvector(k));

  EigenSystem flipped = prev;
  for (int k = 0; k < 3; ++k)
    for (double& x : flipped.eigenvector(k)) x = -x;
  const EigenSystem fixed = align_eigenvectors(prev, flipped);
  for (int k = 0; k < 3; ++k) CHECK(fixed.eigenvector(k) == prev.eigenvector(k));
}

TEST_CASE("aligned eigenvectors stay continuous along the designed schedule") {
  DesignParams p;
  p.n_samples = 3000;
  const Schedule s = make_parallel_schedule(p);
  EigenSystem prev = eigensystem(build_hamiltonian(s.sample(0)));
  for (std::size_t i = 1; i < s.size(); ++i) {
    const EigenSystem cur = align_eigenvectors(prev, eigensystem(build_hamiltonian(s.sample(i))));
    for (int k = 0; k < 3; ++k) REQUIRE(dot(prev.eigenvector(k), cur.eigenvector(k)) > 0.0);
    prev = cur;
  }
}

TEST_CASE("QuantumState basics") {
  CHECK(QuantumState::ground().population(0) == 1.0);
  CHECK(QuantumState::basis(2).population(2) == 1.0);
  CHECK(QuantumState::basis(1).norm_squared() == 1.0);
}
