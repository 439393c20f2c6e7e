#include "pstirap/lambda_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pstirap/errors.hpp"

namespace pstirap {

namespace {

constexpr double kDiscriminantFloor = 1e-13;
constexpr double kDegenerateGap = 1e-9;
constexpr double kResidualBound = 1e-11;

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double length(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 scaled(const Vec3& v, double s) { return {v[0] * s, v[1] * s, v[2] * s}; }

Vec3 apply(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

// Fix the sign gauge: largest-magnitude component positive.
void canonical_sign(Vec3& v) {
  int imax = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  if (v[imax] < 0.0) v = scaled(v, -1.0);
}

double residual(const Mat3& m, const Vec3& v, double lambda) {
  Vec3 hv = apply(m, v);
  double r = 0.0;
  for (int i = 0; i < 3; ++i) r += (hv[i] - lambda * v[i]) * (hv[i] - lambda * v[i]);
  return std::sqrt(r);
}

// Null vector of (M - lambda I) from the best-conditioned pair of rows.
bool null_vector(const Mat3& m, double lambda, Vec3& out) {
  Mat3 a = m;
  for (int i = 0; i < 3; ++i) a[i][i] -= lambda;
  const Vec3 c01 = cross(a[0], a[1]);
  const Vec3 c02 = cross(a[0], a[2]);
  const Vec3 c12 = cross(a[1], a[2]);
  const double n01 = dot(c01, c01), n02 = dot(c02, c02), n12 = dot(c12, c12);
  const Vec3* best = &c01;
  double nbest = n01;
  if (n02 > nbest) { best = &c02; nbest = n02; }
  if (n12 > nbest) { best = &c12; nbest = n12; }
  if (!(nbest > 0.0)) return false;
  out = scaled(*best, 1.0 / std::sqrt(nbest));
  return true;
}

void flag_degeneracy(EigenSystem& es, double scale) {
  const double tol = kDegenerateGap * scale;
  es.continuity_warning = (es.omega_0 - es.omega_minus) < tol || (es.omega_plus - es.omega_0) < tol;
}

}  // namespace

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double Hamiltonian3::norm() const {
  double s = 0.0;
  for (const auto& row : m)
    for (double x : row) s += x * x;
  return std::sqrt(s);
}

double EigenSystem::eigenvalue(int k) const {
  return k == 0 ? omega_minus : (k == 1 ? omega_0 : omega_plus);
}

const Vec3& EigenSystem::eigenvector(int k) const {
  return k == 0 ? psi_minus : (k == 1 ? psi_0 : psi_plus);
}

Vec3& EigenSystem::eigenvector(int k) { return k == 0 ? psi_minus : (k == 1 ? psi_0 : psi_plus); }

QuantumState QuantumState::basis(int level) {
  if (level < 0 || level > 2) throw InvalidParameter("basis level must be 0, 1 or 2");
  QuantumState s;
  s.c = {Complex{}, Complex{}, Complex{}};
  s.c[level] = 1.0;
  return s;
}

double QuantumState::norm_squared() const {
  return std::norm(c[0]) + std::norm(c[1]) + std::norm(c[2]);
}

Hamiltonian3 build_hamiltonian(const FieldPoint& p) {
  if (!std::isfinite(p.omega_p) || !std::isfinite(p.omega_s) || !std::isfinite(p.delta_1) ||
      !std::isfinite(p.delta_2))
    throw InvalidParameter("field point has non-finite entries");
  Hamiltonian3 h;
  h.m[0] = {0.0, 0.5 * p.omega_p, 0.0};
  h.m[1] = {0.5 * p.omega_p, p.delta_1, 0.5 * p.omega_s};
  h.m[2] = {0.0, 0.5 * p.omega_s, p.delta_2};
  return h;
}

EigenSystem eigensystem_jacobi(const Hamiltonian3& h) {
  Mat3 a = h.m;
  Mat3 v{};
  for (int i = 0; i < 3; ++i) v[i][i] = 1.0;

  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if (off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, 3> order{0, 1, 2};
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    return a[i][i] < a[j][j] || (a[i][i] == a[j][j] && i < j);
  });
  EigenSystem es;
  for (int k = 0; k < 3; ++k) {
    const int col = order[k];
    Vec3 vec{v[0][col], v[1][col], v[2][col]};
    canonical_sign(vec);
    es.eigenvector(k) = vec;
  }
  es.omega_minus = a[order[0]][order[0]];
  es.omega_0 = a[order[1]][order[1]];
  es.omega_plus = a[order[2]][order[2]];
  flag_degeneracy(es, std::max(1.0, h.norm()));
  return es;
}

EigenSystem eigensystem(const Hamiltonian3& h) {
  const Mat3& m = h.m;
  for (const auto& row : m)
    for (double x : row)
      if (!std::isfinite(x)) throw InvalidParameter("hamiltonian has non-finite entries");

  const double scale = std::max(1.0, h.norm());
  const double q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
  Mat3 b = m;
  for (int i = 0; i < 3; ++i) b[i][i] -= q;
  const double p2 = (b[0][0] * b[0][0] + b[1][1] * b[1][1] + b[2][2] * b[2][2] +
                     2.0 * (b[0][1] * b[0][1] + b[0][2] * b[0][2] + b[1][2] * b[1][2])) /
                    6.0;
  const double p = std::sqrt(p2);
  if (p <= kDiscriminantFloor * scale) return eigensystem_jacobi(h);

  for (auto& row : b)
    for (double& x : row) x /= p;
  const double det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                     b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
  const double r = std::clamp(0.5 * det, -1.0, 1.0);
  if (1.0 - r * r < kDiscriminantFloor) return eigensystem_jacobi(h);

  const double phi = std::acos(r) / 3.0;
  constexpr double third_turn = 2.0 * std::numbers::pi / 3.0;
  const double hi = q + 2.0 * p * std::cos(phi);
  const double lo = q + 2.0 * p * std::cos(phi + third_turn);
  // Middle root from the trace keeps omega_- + omega_0 + omega_+ = tr(H).
  const double mid = 3.0 * q - hi - lo;

  EigenSystem es;
  es.omega_minus = lo;
  es.omega_0 = std::clamp(mid, lo, hi);
  es.omega_plus = hi;

  Vec3 vlo, vhi;
  if (!null_vector(m, lo, vlo) || !null_vector(m, hi, vhi)) return eigensystem_jacobi(h);
  // Re-orthogonalize the upper vector against the lower, then complete the frame.
  const double overlap = dot(vhi, vlo);
  for (int i = 0; i < 3; ++i) vhi[i] -= overlap * vlo[i];
  const double nhi = length(vhi);
  if (!(nhi > 0.0)) return eigensystem_jacobi(h);
  vhi = scaled(vhi, 1.0 / nhi);
  Vec3 vmid = cross(vhi, vlo);
  vmid = scaled(vmid, 1.0 / length(vmid));

  canonical_sign(vlo);
  canonical_sign(vmid);
  canonical_sign(vhi);
  es.psi_minus = vlo;
  es.psi_0 = vmid;
  es.psi_plus = vhi;

  const double bound = kResidualBound * scale;
  if (residual(m, vlo, lo) > bound || residual(m, vmid, es.omega_0) > bound ||
      residual(m, vhi, hi) > bound)
    return eigensystem_jacobi(h);

  flag_degeneracy(es, scale);
  return es;
}

EigenSystem align_eigenvectors(const EigenSystem& previous, const EigenSystem& current) {
  EigenSystem out = current;
  for (int k = 0; k < 3; ++k) {
    if (dot(previous.eigenvector(k), current.eigenvector(k)) < 0.0)
      out.eigenvector(k) = scaled(current.eigenvector(k), -1.0);
  }
  out.continuity_warning = previous.continuity_warning || current.continuity_warning;
  return out;
}

}  // namespace pstirap
