#pragma once

// Three-level Lambda system in the rotating frame: Hamiltonian, ordered
// eigensolver and state conventions. Frequencies are in units of 1/T and
// hbar = 1 everywhere in the library; only the shaper knows about seconds.

#include <array>
#include <complex>

namespace pstirap {

using Complex = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

/// Instantaneous field parameters: pump/Stokes Rabi frequencies, one-photon
/// detuning (Delta) and two-photon detuning (delta).
struct FieldPoint {
  double omega_p = 0.0;
  double omega_s = 0.0;
  double delta_1 = 0.0;
  double delta_2 = 0.0;
};

/// Real symmetric 3x3 matrix with the Lambda-system sparsity pattern.
struct Hamiltonian3 {
  Mat3 m{};

  double norm() const;  // Frobenius
};

struct EigenSystem {
  double omega_minus = 0.0;
  double omega_0 = 0.0;
  double omega_plus = 0.0;
  Vec3 psi_minus{};
  Vec3 psi_0{};
  Vec3 psi_plus{};
  // Set when two eigenvalues are closer than 1e-9 ||H||; the basis of the
  // degenerate subspace is then arbitrary and sign tracking is unreliable.
  bool continuity_warning = false;

  double eigenvalue(int k) const;
  const Vec3& eigenvector(int k) const;
  Vec3& eigenvector(int k);
};

struct QuantumState {
  std::array<Complex, 3> c{Complex{1.0, 0.0}, Complex{}, Complex{}};

  static QuantumState ground() { return {}; }
  static QuantumState basis(int level);  // |1>, |2>, |3> for level = 0, 1, 2

  double norm_squared() const;
  double population(int level) const { return std::norm(c[level]); }
};

Hamiltonian3 build_hamiltonian(const FieldPoint& p);

/// Ordered eigen-decomposition (omega_minus <= omega_0 <= omega_plus).
/// Closed-form trigonometric roots; cyclic Jacobi when the normalized cubic
/// discriminant is within 1e-13 of zero or the closed-form vectors miss the
/// residual bound.
EigenSystem eigensystem(const Hamiltonian3& h);

/// Cyclic Jacobi rotations, sorted ascending. Exposed for testing.
EigenSystem eigensystem_jacobi(const Hamiltonian3& h);

/// Flips each eigenvector of `current` whose overlap with the matching vector
/// of `previous` is negative. Eigenvalues are untouched.
EigenSystem align_eigenvectors(const EigenSystem& previous, const EigenSystem& current);

double dot(const Vec3& a, const Vec3& b);

}  // namespace pstirap
