#include "geomgate/metrics.hpp"

#include <cmath>

#include "geomgate/dynamics.hpp"

namespace geomgate {
namespace {

Vector theta_state(int k) {
  const double theta = 2.0 * kPi * k / (kThetaSamples - 1);
  Vector v(2);
  v << std::cos(theta), std::sin(theta);
  return v;
}

}  // namespace

double state_fidelity(const Vector& ideal, const Matrix& rho) {
  if (ideal.size() != rho.rows() || rho.rows() != rho.cols()) {
    throw GeomgateError("state_fidelity: dimension mismatch");
  }
  return ideal.dot(rho * ideal).real();
}

double state_fidelity(const StateVector& ideal, const DensityMatrix& rho) {
  return state_fidelity(ideal.amplitudes(), rho.entries());
}

double theta_avg_gate_fidelity(const Matrix& ideal, const Channel& channel) {
  if (ideal.rows() != 2 || ideal.cols() != 2) throw GeomgateError("theta_avg_gate_fidelity: expected 2x2 ideal");
  double sum = 0.0;
  for (int k = 0; k < kThetaSamples; ++k) {
    const Vector psi = theta_state(k);
    sum += state_fidelity(ideal * psi, channel(psi * psi.adjoint()));
  }
  return sum / kThetaSamples;
}

double theta_avg_gate_fidelity_transfer(const Matrix& ideal, const Matrix& transfer) {
  return theta_avg_gate_fidelity(ideal, [&transfer](const Matrix& rho) { return apply_transfer(transfer, rho); });
}

double theta_avg_gate_fidelity_unitary(const Matrix& ideal, const Matrix& actual) {
  if (ideal.rows() != 2 || actual.rows() != 2) {
    throw GeomgateError("theta_avg_gate_fidelity_unitary: expected 2x2 matrices");
  }
  double sum = 0.0;
  for (int k = 0; k < kThetaSamples; ++k) {
    const Vector psi = theta_state(k);
    sum += std::norm((ideal * psi).dot(actual * psi));
  }
  return sum / kThetaSamples;
}

double avg_gate_fidelity(const Matrix& ideal, const Matrix& actual) {
  if (ideal.rows() != actual.rows() || ideal.cols() != actual.cols() || ideal.rows() != ideal.cols()) {
    throw GeomgateError("avg_gate_fidelity: dimension mismatch");
  }
  const double d = static_cast<double>(ideal.rows());
  const double overlap = std::norm((ideal.adjoint() * actual).trace());
  const double norm = (actual.adjoint() * actual).trace().real();
  return (overlap + norm) / (d * d + d);
}

double avg_gate_fidelity_channel(const Matrix& ideal, const Channel& channel) {
  if (ideal.rows() != ideal.cols()) throw GeomgateError("avg_gate_fidelity_channel: ideal not square");
  const int d = static_cast<int>(ideal.rows());
  // F_e = (1/d^2) sum_ij <i| U^dagger E(|i><j|) U |j>. The trace term
  // Tr E(I/d) is 1 for trace-preserving channels and drops with leakage.
  Complex fe = 0.0;
  double kept = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Matrix out = channel(projector(d, i, j));
      if (out.rows() != d || out.cols() != d) {
        throw GeomgateError("avg_gate_fidelity_channel: channel output dimension mismatch");
      }
      fe += (ideal.adjoint() * out * ideal)(i, j);
      if (i == j) kept += out.trace().real();
    }
  }
  const double entanglement = fe.real() / (static_cast<double>(d) * d);
  return (d * entanglement + kept / d) / (d + 1.0);
}

std::string to_string(FidelityKind kind) {
  switch (kind) {
    case FidelityKind::kState:
      return "state";
    case FidelityKind::kThetaAvgGate:
      return "theta_avg_gate";
    case FidelityKind::kAvgGate:
      return "avg_gate";
  }
  return "unknown";
}

FidelityReport FidelityReport::make(double value, FidelityKind kind, std::map<std::string, std::string> metadata) {
  if (!std::isfinite(value) || value < -1e-9 || value > 1.0 + 1e-9) {
    throw GeomgateError("FidelityReport: value " + std::to_string(value) + " outside [0, 1]");
  }
  return {std::max(0.0, value), kind, std::move(metadata)};
}

}  // namespace geomgate
