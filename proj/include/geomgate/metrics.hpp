#pragma once

#include <functional>
#include <map>
#include <string>

#include "geomgate/quantum_core.hpp"

namespace geomgate {

inline constexpr int kThetaSamples = 1001;

/// <psi|rho|psi>.
double state_fidelity(const Vector& ideal, const Matrix& rho);
double state_fidelity(const StateVector& ideal, const DensityMatrix& rho);

/// Maps an input density matrix to the output density matrix.
using Channel = std::function<Matrix(const Matrix&)>;

/// Mean of <psi_I|rho|psi_I> over 1001 uniform Theta in [0, 2pi] (both ends
/// included), psi = cos Theta |0> + sin Theta |1>, psi_I = ideal psi.
double theta_avg_gate_fidelity(const Matrix& ideal, const Channel& channel);
/// Same average for a column-stacked transfer matrix.
double theta_avg_gate_fidelity_transfer(const Matrix& ideal, const Matrix& transfer);
/// Same average for a unitary (or projected) gate.
double theta_avg_gate_fidelity_unitary(const Matrix& ideal, const Matrix& actual);

/// (|Tr(ideal^dagger M)|^2 + Tr(M^dagger M)) / (d^2 + d). For unitary M this is
/// (|Tr(ideal^dagger M)|^2 + d) / (d^2 + d); the second form also covers a
/// leaky block M projected from a larger space.
double avg_gate_fidelity(const Matrix& ideal, const Matrix& actual);

/// Average gate fidelity of a channel on a d-dimensional space from its
/// entanglement fidelity, F = (d F_e + Tr E(I/d))/(d + 1), with F_e
/// reconstructed from the channel's action on the d^2 matrix units |i><j|.
/// For trace-preserving channels Tr E(I/d) = 1; for a leaky projected channel
/// this agrees with avg_gate_fidelity on its Kraus operator.
double avg_gate_fidelity_channel(const Matrix& ideal, const Channel& channel);

enum class FidelityKind { kState, kThetaAvgGate, kAvgGate };

std::string to_string(FidelityKind kind);

struct FidelityReport {
  double value = 0.0;
  FidelityKind kind = FidelityKind::kState;
  std::map<std::string, std::string> metadata;

  /// Throws unless value lies in [0, 1 + 1e-9] (small negative roundoff is clipped to 0).
  static FidelityReport make(double value, FidelityKind kind,
                             std::map<std::string, std::string> metadata = {});
};

}  // namespace geomgate
