#pragma once

#include <vector>

#include "geomgate/quantum_core.hpp"

namespace geomgate {

/// End-point data of a noncyclic auxiliary-state path. The sums and
/// differences are path quantities and are never reduced mod 2*pi.
struct BoundaryValues {
  double gamma = 0.0;
  double chi_plus = 0.0;   ///< chi(tau) + chi(0)
  double chi_minus = 0.0;  ///< chi(tau) - chi(0)
  double eta_plus = 0.0;   ///< eta(tau) + eta(0)
  double eta_minus = 0.0;  ///< eta(tau) - eta(0)

  double chi_start() const { return 0.5 * (chi_plus - chi_minus); }
  double chi_end() const { return 0.5 * (chi_plus + chi_minus); }
  double eta_start() const { return 0.5 * (eta_plus - eta_minus); }
  double eta_end() const { return 0.5 * (eta_plus + eta_minus); }
};

struct ZxzAngles {
  double theta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct ZxzDecomposition {
  ZxzAngles angles;
  /// theta is 0 or pi; alpha and beta were folded into alpha (beta = 0).
  bool degenerate = false;
};

/// Rotation by `angle` about the unit axis (nx, ny, nz): exp(-i angle n.sigma / 2).
Matrix rotation(double nx, double ny, double nz, double angle);
Matrix rotation_x(double angle);
Matrix rotation_z(double angle);

/// Closed-form noncyclic geometric gate in the {|0>, |1>} basis.
Matrix nngqc_gate(const BoundaryValues& b);

/// Z-X-Z reading U = Z_beta X_theta Z_alpha of nngqc_gate(b), up to global phase.
ZxzDecomposition extract_zxz(const BoundaryValues& b);

Matrix zxz_gate(const ZxzAngles& angles);

/// Cyclic geometric gate exp(i gamma n.sigma), n = (sin mu cos eta0, sin mu sin eta0, cos mu).
Matrix ngqc_gate(double gamma, double mu, double eta0);

struct CyclicGateParams {
  double gamma = 0.0;
  double mu = 0.0;
  double eta0 = 0.0;
};

/// Solves ngqc_gate(gamma, mu, eta0) = target up to global phase, with gamma in [0, pi/2].
CyclicGateParams ngqc_params_for(const Matrix& target);

/// Resonant square-pulse propagator for pulse area Omega*tau1 and phase phi.
Matrix dg_primitive(double pulse_area, double phi);

struct DgPrimitive {
  double pulse_area = 0.0;
  double phase = 0.0;
};

/// Time-ordered resonant primitives realizing Z_beta X_theta Z_alpha.
/// Each nontrivial Z rotation costs two pi-area primitives.
std::vector<DgPrimitive> dg_sequence(const ZxzAngles& angles);

/// |0><0| (x) u0 + |1><1| (x) u1.
Matrix controlled_pair(const Matrix& u0, const Matrix& u1);

/// Target two-qubit gate: upper block [[0, i], [-i, 0]], lower block e^{i pi/4} H.
Matrix ideal_two_qubit_target();

struct PhaseDistance {
  double distance = 0.0;
  /// Tr(v^dagger u) vanished; distance evaluated at c = 1.
  bool orthogonal = false;
};

/// min over |c| = 1 of max|u - c v|, with c = Tr(v^dagger u)/|Tr(v^dagger u)|.
PhaseDistance phase_distance(const Matrix& u, const Matrix& v);
double phase_insensitive_distance(const Matrix& u, const Matrix& v);

/// Reference cyclic triple (3pi/4, 7pi/20, pi/4). It is not U1 up to phase
/// (|Tr| differs); use ngqc_params_for(nngqc_gate(u1_boundaries())) for that.
inline constexpr CyclicGateParams kLiteralNgqcU1{3.0 * kPi / 4.0, 7.0 * kPi / 20.0, kPi / 4.0};

BoundaryValues u1_boundaries();
BoundaryValues u2_boundaries();
ZxzAngles u1_angles();
ZxzAngles u2_angles();

}  // namespace geomgate
