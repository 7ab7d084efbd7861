#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "geomgate/gate_algebra.hpp"

namespace geomgate {

/// Constant-amplitude, constant-phase drive interval.
struct PulseSegment {
  double duration = 0.0;  ///< seconds, > 0
  double rabi = 0.0;      ///< rad/s, >= 0
  double phase = 0.0;     ///< rad
};

struct PulseSchedule {
  std::vector<PulseSegment> segments;
  std::string label;

  /// Correctly rounded sum of the segment durations.
  double total_duration() const;
  /// Sum of rabi * duration.
  double pulse_area() const;
  bool empty() const { return segments.empty(); }
};

/// chi(t) = omega0 t - chi0 with an eta step of phi1 at t = chi0/omega0.
struct NngqcFamily {
  double omega0 = 1.0;
  double chi0 = 0.0;
  double phi0 = 0.0;
  double phi1 = 0.0;
  double tau = 0.0;

  /// Throws when omega0 <= 0 or the jump instant lies outside [0, tau].
  void validate() const;
};

BoundaryValues family_boundaries(const NngqcFamily& f);

/// Two constant-amplitude segments with phi - eta = pi/2; the eta step is a phase jump.
PulseSchedule synth_nngqc(const NngqcFamily& f);

/// The step family realizing U1 at the given Rabi frequency (tau = pi/omega0).
NngqcFamily u1_family(double omega0);
/// A step family realizing the Hadamard gate U2 up to global phase.
NngqcFamily u2_family(double omega0);

/// Sampled control fields.
struct ControlSamples {
  std::vector<double> time;
  std::vector<double> rabi;
  std::vector<double> phase;
};

using TimeFunction = std::function<double(double)>;

/// Pointwise inversion of the auxiliary-path equations
///   Omega sin(phi - eta) = chi',   Omega cos(phi - eta) = -eta' tan(chi)
/// choosing the branch with Omega >= 0. Derivatives are taken from
/// `chi_rate`/`eta_rate` when given, otherwise by central differences.
ControlSamples solve_control_fields(const TimeFunction& chi, const TimeFunction& eta,
                                    std::span<const double> grid,
                                    const TimeFunction& chi_rate = {},
                                    const TimeFunction& eta_rate = {});

/// Single-sample version of solve_control_fields: returns {rabi, phase}.
std::pair<double, double> control_at(double chi, double chi_rate, double eta, double eta_rate);

/// Cyclic orange-slice schedule with total pulse area 2 pi realizing
/// ngqc_gate(gamma, mu, eta0): the state leaves n(mu, eta0) along its meridian
/// towards the north pole, crosses to the south pole on the meridian rotated
/// by gamma, and returns on the original meridian.
PulseSchedule synth_ngqc(double gamma, double mu, double eta0, double omega0);

/// Resonant square-pulse realization of zxz_gate(angles) at Rabi frequency omega0.
PulseSchedule synth_dg(const ZxzAngles& angles, double omega0);

/// Plain-text schedule table: `duration_s,rabi_rad_per_s,phase_rad` per line.
void write_schedule(std::ostream& os, const PulseSchedule& s);
PulseSchedule read_schedule(std::istream& is);
std::string schedule_to_string(const PulseSchedule& s);
PulseSchedule schedule_from_string(const std::string& text);

}  // namespace geomgate
