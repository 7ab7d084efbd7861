#include "geomgate/gate_algebra.hpp"

#include <cmath>

namespace geomgate {
namespace {

double xf(double a, double b) { return std::cos(a / 2) * std::cos(b / 2); }
double yf(double a, double b) { return std::sin(a / 2) * std::cos(b / 2); }
double zf(double a, double b) { return std::sin(a / 2) * std::sin(b / 2); }

constexpr double kDegenerateThreshold = 1e-9;

// Reduces an angle to (-pi, pi].
double wrap(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

}  // namespace

Matrix rotation(double nx, double ny, double nz, double angle) {
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  Matrix m(2, 2);
  m << Complex(c, -s * nz), Complex(-s * ny, -s * nx),
      Complex(s * ny, -s * nx), Complex(c, s * nz);
  return m;
}

Matrix rotation_x(double angle) { return rotation(1, 0, 0, angle); }
Matrix rotation_z(double angle) { return rotation(0, 0, 1, angle); }

Matrix nngqc_gate(const BoundaryValues& b) {
  const double g2 = 2.0 * b.gamma;
  const double x = xf(g2, b.chi_minus);
  const double y = yf(g2, b.chi_plus);
  const double z = zf(g2, b.chi_plus);
  const double yc = yf(b.chi_minus, g2);
  Matrix u(2, 2);
  u(0, 0) = std::exp(-kI * (b.eta_minus / 2)) * Complex(x, y);
  u(0, 1) = std::exp(-kI * (b.eta_plus / 2)) * Complex(-yc, z);
  u(1, 0) = std::exp(kI * (b.eta_plus / 2)) * Complex(yc, z);
  u(1, 1) = std::exp(kI * (b.eta_minus / 2)) * Complex(x, -y);
  return u;
}

ZxzDecomposition extract_zxz(const BoundaryValues& b) {
  const double g2 = 2.0 * b.gamma;
  const double x = xf(g2, b.chi_minus);
  const double y = yf(g2, b.chi_plus);
  const double z = zf(g2, b.chi_plus);
  const double yc = yf(b.chi_minus, g2);

  // |off-diagonal| = sin(theta/2), |diagonal| = cos(theta/2).
  const double off = std::sqrt(z * z + yc * yc);
  const double diag = std::sqrt(x * x + y * y);
  const double diag_phase = std::atan2(y, x);
  const double off_phase = std::atan2(z, yc);

  ZxzDecomposition out;
  out.angles.theta = 2.0 * std::asin(std::min(1.0, off));
  out.angles.alpha = -diag_phase - off_phase + (b.eta_minus - b.eta_plus - kPi) / 2;
  out.angles.beta = -diag_phase + off_phase + (b.eta_minus + b.eta_plus + kPi) / 2;

  if (off < kDegenerateThreshold) {
    out.degenerate = true;
    out.angles.theta = 0.0;
    out.angles.alpha = wrap(-2.0 * diag_phase + b.eta_minus);
    out.angles.beta = 0.0;
  } else if (diag < kDegenerateThreshold) {
    // Z_b X_pi Z_a = X_pi Z_{a-b}.
    out.degenerate = true;
    out.angles.theta = kPi;
    out.angles.alpha = wrap(-2.0 * off_phase - b.eta_plus - kPi);
    out.angles.beta = 0.0;
  }
  return out;
}

Matrix zxz_gate(const ZxzAngles& a) {
  return rotation_z(a.beta) * rotation_x(a.theta) * rotation_z(a.alpha);
}

Matrix ngqc_gate(double gamma, double mu, double eta0) {
  const double nx = std::sin(mu) * std::cos(eta0);
  const double ny = std::sin(mu) * std::sin(eta0);
  const double nz = std::cos(mu);
  // exp(i gamma n.sigma) is a rotation by -2 gamma about n.
  return rotation(nx, ny, nz, -2.0 * gamma);
}

CyclicGateParams ngqc_params_for(const Matrix& target) {
  if (target.rows() != 2 || target.cols() != 2) throw GeomgateError("ngqc_params_for: expected 2x2");
  // Remove the global phase: make det = 1, then pick the SU(2) sign with Re Tr >= 0.
  const Complex det = target.determinant();
  Matrix su = target / std::sqrt(det);
  if (su.trace().real() < 0) su = -su;
  // su = cos g I + i sin g n.sigma
  const double cos_g = std::clamp(su.trace().real() / 2.0, -1.0, 1.0);
  CyclicGateParams p;
  p.gamma = std::acos(cos_g);
  const double sin_g = std::sin(p.gamma);
  if (sin_g < 1e-12) return p;
  const double nx = (su * pauli_x()).trace().imag() / (2.0 * sin_g);
  const double ny = (su * pauli_y()).trace().imag() / (2.0 * sin_g);
  const double nz = (su * pauli_z()).trace().imag() / (2.0 * sin_g);
  const double norm = std::sqrt(nx * nx + ny * ny + nz * nz);
  p.mu = std::acos(std::clamp(nz / norm, -1.0, 1.0));
  p.eta0 = std::atan2(ny, nx);
  return p;
}

Matrix dg_primitive(double pulse_area, double phi) {
  const double c = std::cos(pulse_area / 2), s = std::sin(pulse_area / 2);
  Matrix m(2, 2);
  m(0, 0) = c;
  m(0, 1) = -kI * std::exp(-kI * phi) * s;
  m(1, 0) = -kI * std::exp(kI * phi) * s;
  m(1, 1) = c;
  return m;
}

std::vector<DgPrimitive> dg_sequence(const ZxzAngles& angles) {
  // Pi pulses with phases a then b give -exp(i(a-b)Z), a Z rotation by 2(b-a).
  const auto z_pair = [](double angle, std::vector<DgPrimitive>& out) {
    const double a = wrap(angle);
    if (std::abs(a) < kDegenerateThreshold) return;
    out.push_back({kPi, -a / 4});
    out.push_back({kPi, a / 4});
  };
  std::vector<DgPrimitive> seq;
  if (std::abs(angles.theta) < kDegenerateThreshold) {
    z_pair(angles.alpha + angles.beta, seq);
    return seq;
  }
  z_pair(angles.alpha, seq);
  seq.push_back({angles.theta, 0.0});
  z_pair(angles.beta, seq);
  return seq;
}

Matrix controlled_pair(const Matrix& u0, const Matrix& u1) {
  return tensor(projector(2, 0, 0), u0) + tensor(projector(2, 1, 1), u1);
}

Matrix ideal_two_qubit_target() {
  Matrix u = Matrix::Zero(4, 4);
  u(0, 1) = kI;
  u(1, 0) = -kI;
  const Complex w = std::exp(kI * (kPi / 4)) / std::sqrt(2.0);
  u(2, 2) = w;
  u(2, 3) = w;
  u(3, 2) = w;
  u(3, 3) = -w;
  return u;
}

PhaseDistance phase_distance(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw GeomgateError("phase_distance: dimension mismatch");
  }
  const Complex tr = (v.adjoint() * u).trace();
  PhaseDistance out;
  Complex c = 1.0;
  if (std::abs(tr) < 1e-14) {
    out.orthogonal = true;
  } else {
    c = tr / std::abs(tr);
  }
  out.distance = max_norm(u - c * v);
  return out;
}

double phase_insensitive_distance(const Matrix& u, const Matrix& v) {
  return phase_distance(u, v).distance;
}

BoundaryValues u1_boundaries() { return {kPi / 4, 0.0, kPi, -kPi / 2, kPi / 2}; }

BoundaryValues u2_boundaries() { return {kPi / 4, -1.5 * kPi, kPi / 2, -kPi / 2, kPi / 2}; }

ZxzAngles u1_angles() { return {kPi / 2, -kPi / 2, 0.0}; }

ZxzAngles u2_angles() { return {kPi / 2, kPi / 2, kPi / 2}; }

}  // namespace geomgate
