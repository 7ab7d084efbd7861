#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "geomgate/dynamics.hpp"
#include "geomgate/pulse_synth.hpp"

namespace geomgate {

// Two-atom basis order (control (x) target, levels 0, 1, R):
// 00, 01, 0R, 10, 11, 1R, R0, R1, RR.
inline constexpr int kLevelR = 2;
inline constexpr int kTwoAtomDim = 9;
inline constexpr std::array<int, 4> kComputationalIndices{0, 1, 3, 4};

struct RydbergParams {
  double omega1 = 0.0;   ///< control-atom Rabi frequency, rad/s
  double omega_t = 0.0;  ///< |Omega_S| = |Omega_P| on the target, rad/s
  double delta = 0.0;    ///< detuning, rad/s
  double v = 0.0;        ///< Rydberg-Rydberg interaction, rad/s
  std::optional<double> c6;  ///< rad/s * length^6
  std::optional<double> r;   ///< length, same unit as c6

  /// Throws when delta <= 0, v < 0, rates are non-finite, or V != C6/r^6.
  void validate() const;

  /// Omega0 = Omega1 = omega0, Delta = delta_ratio * omega0, V = v_ratio * omega0.
  static RydbergParams scaled(double omega0, double delta_ratio, double v_ratio);
};

/// (Omega1/2) e^{i phi1} |1><R| + h.c. on the control, identity on the target.
Matrix step1_hamiltonian(const RydbergParams& p, double phi1);

/// I (x) [Delta |R><R| + (Omega_S e^{i phiS} |0><R| + Omega_P e^{i phiP} |1><R|)/2 + h.c.] + V |RR><RR|.
Matrix step2_hamiltonian(const RydbergParams& p, double phi_s, double phi_p);

struct EffectiveRabi {
  double first = 0.0;   ///< Omega_S Omega_P / (2 Delta), control not excited
  double second = 0.0;  ///< Omega_S Omega_P / (2 (Delta + V)), control in |R>
};

EffectiveRabi effective_rabi(const RydbergParams& p);
/// Throws unless |omega_s| == |omega_p| (the Stark shifts cancel only then).
EffectiveRabi effective_rabi(double omega_s, double omega_p, double delta, double v);

/// Effective target-qubit Hamiltonian -(Omega_S Omega_P^*/(4 Delta')) |0><1| + h.c.
/// plus the diagonal light shifts, with Delta' = Delta (+ V when `shifted`).
Matrix effective_hamiltonian(const RydbergParams& p, double phi_s, double phi_p, bool shifted);

struct Step2Segment {
  double duration = 0.0;
  double phase_s = 0.0;
  double phase_p = 0.0;
};

struct Step2Pulse {
  std::vector<Step2Segment> segments;
  /// Set when Omega_t / Delta > 0.2, where the second-order model is unreliable.
  bool validity_warning = false;
  std::string note;

  double duration() const;
};

/// Effective phase phi_eff = phi_P - phi_S - pi. With phi_S = 0 the family's
/// phase profile is carried by phi_P = phi_eff + pi. The family's omega0 is the
/// effective Rabi frequency the pulse is designed for.
Step2Pulse synth_step2_pulse(const RydbergParams& p, const NngqcFamily& f);

/// Step-two family for the two-qubit gate: area 3pi/2 on the V-shifted
/// process (Hadamard on the control-|1> block) and 3pi on the unshifted one.
NngqcFamily two_qubit_step2_family(const RydbergParams& p);

PiecewiseHamiltonian step2_evolution(const RydbergParams& p, const Step2Pulse& pulse);

/// Step (i) pi pulse, step (ii), step (iii) pi pulse with phase pi.
PiecewiseHamiltonian protocol_hamiltonian(const RydbergParams& p, const Step2Pulse& pulse);

struct ProtocolResult {
  Matrix full;       ///< 9x9 propagator
  Matrix projected;  ///< 4x4 block on {00, 01, 10, 11}
  double leakage = 0.0;
};

/// Throws when leakage exceeds 0.05.
ProtocolResult run_protocol(const RydbergParams& p, const Step2Pulse& pulse);

/// Decay R -> 0 and R -> 1 at gamma1/2 each, and dephasing of R, on both atoms.
Dissipators rydberg_dissipators(double gamma1, double gamma2,
                                DephasingConvention convention = DephasingConvention::kCoherence);

/// Full 9-level density matrix after the three steps.
DensityMatrix protocol_with_decoherence(const RydbergParams& p, const Step2Pulse& pulse,
                                        const Dissipators& d, const DensityMatrix& rho0,
                                        double tol = kLindbladTolerance);

/// Two-qubit amplitudes (00, 01, 10, 11) placed in the 9-level space.
Vector embed_computational(const Vector& psi4);
Matrix embed_computational(const Matrix& rho4);
/// The {00, 01, 10, 11} block of a 9x9 operator.
Matrix project_computational(const Matrix& m9);

/// The initial state (|00> + |01> + sqrt2 |10>)/2.
Vector reference_initial_state();

}  // namespace geomgate
