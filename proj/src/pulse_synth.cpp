#include "geomgate/pulse_synth.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace geomgate {
namespace {

void push_segment(PulseSchedule& s, double duration, double rabi, double phase) {
  if (!(duration > 0.0)) return;
  if (!s.segments.empty()) {
    PulseSegment& last = s.segments.back();
    if (last.rabi == rabi && last.phase == phase) {
      last.duration += duration;
      return;
    }
  }
  s.segments.push_back({duration, rabi, phase});
}

double central_difference(const TimeFunction& f, double t, double h) {
  // Fourth-order five-point stencil.
  return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

double PulseSchedule::total_duration() const {
  long double sum = 0.0L;
  for (const auto& seg : segments) sum += seg.duration;
  return static_cast<double>(sum);
}

double PulseSchedule::pulse_area() const {
  long double sum = 0.0L;
  for (const auto& seg : segments) sum += static_cast<long double>(seg.rabi) * seg.duration;
  return static_cast<double>(sum);
}

void NngqcFamily::validate() const {
  if (!(omega0 > 0.0)) throw GeomgateError("NngqcFamily: omega0 must be positive");
  if (!(tau >= 0.0)) throw GeomgateError("NngqcFamily: tau must be non-negative");
  const double area = omega0 * tau;
  const double slack = 1e-12 * std::max(1.0, std::abs(area));
  if (chi0 < -slack || chi0 > area + slack) {
    throw GeomgateError("NngqcFamily: chi0 outside [0, omega0*tau]");
  }
}

BoundaryValues family_boundaries(const NngqcFamily& f) {
  f.validate();
  BoundaryValues b;
  b.gamma = f.phi1 / 2;
  b.chi_plus = f.omega0 * f.tau - 2 * f.chi0;
  b.chi_minus = f.omega0 * f.tau;
  b.eta_plus = f.phi1 + 2 * f.phi0;
  b.eta_minus = f.phi1;
  return b;
}

PulseSchedule synth_nngqc(const NngqcFamily& f) {
  f.validate();
  PulseSchedule s;
  s.label = "nngqc";
  const double jump = std::clamp(f.chi0 / f.omega0, 0.0, f.tau);
  push_segment(s, jump, f.omega0, f.phi0 + kPi / 2);
  push_segment(s, f.tau - jump, f.omega0, f.phi0 + f.phi1 + kPi / 2);
  return s;
}

NngqcFamily u1_family(double omega0) {
  return {omega0, kPi / 2, -kPi / 2, kPi / 2, kPi / omega0};
}

NngqcFamily u2_family(double omega0) {
  return {omega0, kPi / 2, 0.0, kPi / 2, 1.5 * kPi / omega0};
}

std::pair<double, double> control_at(double chi, double chi_rate, double eta, double eta_rate) {
  constexpr double kRateFloor = 1e-14;
  const double scale = std::max(std::abs(chi_rate), std::abs(eta_rate));
  if (scale == 0.0) return {0.0, eta};
  if (std::abs(eta_rate) <= kRateFloor * scale) {
    // eta' -> 0 limit: phi - eta = +-pi/2 with the sign that keeps Omega >= 0.
    return {std::abs(chi_rate), eta + (chi_rate >= 0 ? kPi / 2 : -kPi / 2)};
  }
  const double c = std::cos(chi);
  if (std::abs(c) < 1e-12) {
    throw GeomgateError("solve_control_fields: tan(chi) diverges where eta' != 0");
  }
  const double transverse = -eta_rate * std::tan(chi);
  const double rabi = std::hypot(chi_rate, transverse);
  const double offset = std::atan2(chi_rate, transverse);
  if (chi_rate != 0.0 && std::abs(std::sin(offset)) < 1e-9) {
    throw GeomgateError("solve_control_fields: sin(phi - eta) vanishes while chi' != 0");
  }
  return {rabi, eta + offset};
}

ControlSamples solve_control_fields(const TimeFunction& chi, const TimeFunction& eta,
                                    std::span<const double> grid, const TimeFunction& chi_rate,
                                    const TimeFunction& eta_rate) {
  if (grid.empty()) return {};
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw GeomgateError("solve_control_fields: grid must be strictly increasing");
    }
  }
  double min_step = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < grid.size(); ++k) min_step = std::min(min_step, grid[k] - grid[k - 1]);
  const double h = grid.size() > 1 ? 1e-3 * min_step : 1e-6 * std::max(1.0, std::abs(grid[0]));

  ControlSamples out;
  out.time.assign(grid.begin(), grid.end());
  out.rabi.reserve(grid.size());
  out.phase.reserve(grid.size());
  for (const double t : grid) {
    const double cr = chi_rate ? chi_rate(t) : central_difference(chi, t, h);
    const double er = eta_rate ? eta_rate(t) : central_difference(eta, t, h);
    const auto [rabi, phase] = control_at(chi(t), cr, eta(t), er);
    out.rabi.push_back(rabi);
    out.phase.push_back(phase);
  }
  return out;
}

PulseSchedule synth_ngqc(double gamma, double mu, double eta0, double omega0) {
  if (!(omega0 > 0.0)) throw GeomgateError("synth_ngqc: omega0 must be positive");
  // Start point n(mu, eta0) written as (chi, eta) = (-mu, eta0 + pi) so that
  // chi increases monotonically: -mu -> 0 -> pi -> 2pi - mu.
  const double base = eta0 + 1.5 * kPi;
  const double tau = kPi / omega0;
  const double first = mu / omega0;
  const double last = tau - first;  // area pi - mu; total duration 2pi/omega0
  PulseSchedule s;
  s.label = "ngqc";
  push_segment(s, first, omega0, base);
  push_segment(s, tau, omega0, base + gamma);
  push_segment(s, last, omega0, base);
  return s;
}

PulseSchedule synth_dg(const ZxzAngles& angles, double omega0) {
  if (!(omega0 > 0.0)) throw GeomgateError("synth_dg: omega0 must be positive");
  PulseSchedule s;
  s.label = "dg";
  for (const auto& p : dg_sequence(angles)) {
    // Consecutive pi pulses are kept apart even when their phases coincide.
    if (p.pulse_area > 0.0) s.segments.push_back({p.pulse_area / omega0, omega0, p.phase});
  }
  return s;
}

void write_schedule(std::ostream& os, const PulseSchedule& s) {
  if (!s.label.empty()) os << "# label: " << s.label << '\n';
  os << "# duration_s,rabi_rad_per_s,phase_rad\n";
  char buf[128];
  for (const auto& seg : s.segments) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", seg.duration, seg.rabi, seg.phase);
    os << buf;
  }
}

PulseSchedule read_schedule(std::istream& is) {
  PulseSchedule s;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const std::string tag = "# label:";
      if (t.rfind(tag, 0) == 0) s.label = trim(t.substr(tag.size()));
      continue;
    }
    std::string fields = t;
    for (char& c : fields) {
      if (c == ',') c = ' ';
    }
    std::istringstream in(fields);
    PulseSegment seg;
    std::string extra;
    if (!(in >> seg.duration >> seg.rabi >> seg.phase) || (in >> extra)) {
      throw GeomgateError("schedule line " + std::to_string(lineno) +
                          ": expected duration_s,rabi_rad_per_s,phase_rad");
    }
    if (!(seg.duration > 0.0) || !std::isfinite(seg.rabi) || !std::isfinite(seg.phase)) {
      throw GeomgateError("schedule line " + std::to_string(lineno) +
                          ": duration must be positive and values finite");
    }
    s.segments.push_back(seg);
  }
  return s;
}

std::string schedule_to_string(const PulseSchedule& s) {
  std::ostringstream os;
  write_schedule(os, s);
  return os.str();
}

PulseSchedule schedule_from_string(const std::string& text) {
  std::istringstream is(text);
  return read_schedule(is);
}

}  // namespace geomgate
