#pragma once

#include <cstddef>
#include <vector>

#include "geomgate/gate_algebra.hpp"
#include "geomgate/pulse_synth.hpp"

namespace geomgate {

/// Smooth stretch of an auxiliary-state path. Samples are strictly increasing in
/// time; eta discontinuities live between consecutive pieces.
struct TrajectoryPiece {
  std::vector<double> grid;
  std::vector<double> chi;
  std::vector<double> eta;
};

struct Trajectory {
  std::vector<TrajectoryPiece> pieces;

  /// Throws unless every piece has >= 2 finite samples, matching lengths,
  /// a strictly increasing grid, and pieces are contiguous in time.
  void validate() const;
  std::size_t sample_count() const;
};

/// Control fields sampled on the trajectory grid (same shape as the pieces).
struct Controls {
  std::vector<std::vector<double>> rabi;
  std::vector<std::vector<double>> phase;
};

struct SampleIndex {
  std::size_t piece = 0;
  std::size_t sample = 0;
};

/// Samples chi and eta on `samples_per_piece` uniform points of each interval
/// [breakpoints[k], breakpoints[k+1]].
Trajectory sample_trajectory(const TimeFunction& chi, const TimeFunction& eta,
                             const std::vector<double>& breakpoints, int samples_per_piece);

/// chi = omega0 t - chi0, eta = phi0 before the jump at chi0/omega0 and phi0 + phi1 after.
Trajectory family_trajectory(const NngqcFamily& f, int samples_per_piece = 201);

/// Reads the schedule's (rabi, phase) at each sample. At a segment boundary the
/// segment on the piece's side is used.
Controls sample_controls(const Trajectory& tr, const PulseSchedule& s);

/// A_lm = i <phi_l| d/dt |phi_m>: A11 = (eta'/2) cos chi = -A22,
/// A12 = i chi'/2 + (eta'/2) sin chi. Derivatives by central differences.
Matrix connection_matrix(const Trajectory& tr, SampleIndex at);

/// K_lm = -<phi_l| H |phi_m>, giving K11 = -(Omega/2) sin chi cos(phi - eta).
Matrix dynamical_matrix(const Trajectory& tr, const Controls& c, SampleIndex at);

/// Integral of A11, i.e. of (cos chi / 2) d eta, with each eta jump adding
/// (delta eta / 2) cos chi at the jump.
double geometric_phase(const Trajectory& tr);

/// Integral of K11 (trapezoidal).
double dynamical_phase(const Trajectory& tr, const Controls& c);

/// (integral of A12) / (integral of K12). Jumps add (delta eta / 2) sin chi to the numerator.
Complex unconventional_ratio_complex(const Trajectory& tr, const Controls& c);

/// Real part of unconventional_ratio_complex; throws when the imaginary part
/// exceeds 1e-8 or the denominator vanishes.
double unconventional_ratio(const Trajectory& tr, const Controls& c);

/// max over cell pairs of max|[A_i, A_j]| using cell-averaged connections; an
/// eta jump is folded into the first cell after it as a point mass.
double non_abelian_witness(const Trajectory& tr);

/// |wrap(gamma + arg<phi1(0)|phi1(T)> + Omega/2)|, with Omega the signed solid
/// angle enclosed by the Bloch path of |phi1> closed by the geodesic from its end
/// back to its start. Equivalent to |gamma - Omega'/2| in the gauge where the
/// start and end auxiliary states are in phase.
double solid_angle_check(const BoundaryValues& b, const Trajectory& tr);

/// Signed solid angle of a closed spherical polygon (unit vectors, implicitly closed).
double spherical_polygon_solid_angle(const std::vector<Eigen::Vector3d>& points);

}  // namespace geomgate
