#include "geomgate/holonomy.hpp"

#include <cmath>
#include <string>

namespace geomgate {
namespace {

double wrap(double a) {
  double r = std::remainder(a, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

Vector aux_state(int which, double chi, double eta) {
  const double c = std::cos(chi / 2), s = std::sin(chi / 2);
  const Complex lo = std::exp(-kI * (eta / 2)), hi = std::exp(kI * (eta / 2));
  Vector v(2);
  if (which == 1) {
    v << c * lo, s * hi;
  } else {
    v << s * lo, -c * hi;
  }
  return v;
}

Eigen::Vector3d bloch(double chi, double eta) {
  return {std::sin(chi) * std::cos(eta), std::sin(chi) * std::sin(eta), std::cos(chi)};
}

// Three-point derivative on a non-uniform grid at interior sample k.
double derivative(const std::vector<double>& t, const std::vector<double>& f, std::size_t k) {
  const double h0 = t[k] - t[k - 1], h1 = t[k + 1] - t[k];
  return (-h1 / (h0 * (h0 + h1))) * f[k - 1] + ((h1 - h0) / (h0 * h1)) * f[k] +
         (h0 / (h1 * (h0 + h1))) * f[k + 1];
}

void check_index(const Trajectory& tr, SampleIndex at) {
  if (at.piece >= tr.pieces.size() || at.sample >= tr.pieces[at.piece].grid.size()) {
    throw GeomgateError("trajectory index out of range");
  }
}

void check_controls(const Trajectory& tr, const Controls& c) {
  if (c.rabi.size() != tr.pieces.size() || c.phase.size() != tr.pieces.size()) {
    throw GeomgateError("controls do not match the trajectory pieces");
  }
  for (std::size_t p = 0; p < tr.pieces.size(); ++p) {
    if (c.rabi[p].size() != tr.pieces[p].grid.size() || c.phase[p].size() != tr.pieces[p].grid.size()) {
      throw GeomgateError("controls do not match the trajectory samples");
    }
  }
}

Matrix control_hamiltonian(double rabi, double phase) {
  return 0.5 * rabi * (std::cos(phase) * pauli_x() + std::sin(phase) * pauli_y());
}

Complex k_entry(const TrajectoryPiece& p, const Controls& c, std::size_t piece, std::size_t k, int l,
                int m) {
  const Matrix h = control_hamiltonian(c.rabi[piece][k], c.phase[piece][k]);
  const Vector a = aux_state(l, p.chi[k], p.eta[k]);
  const Vector b = aux_state(m, p.chi[k], p.eta[k]);
  return -a.dot(h * b);
}

Matrix cell_connection(const TrajectoryPiece& p, std::size_t k, double jump_mass) {
  const double h = p.grid[k + 1] - p.grid[k];
  const double dchi = p.chi[k + 1] - p.chi[k];
  const double deta = p.eta[k + 1] - p.eta[k];
  const double chi_mid = 0.5 * (p.chi[k] + p.chi[k + 1]);
  const double a11 = (0.5 * deta * std::cos(chi_mid) + jump_mass) / h;
  const Complex a12 = kI * (0.5 * dchi / h) + 0.5 * (deta / h) * std::sin(chi_mid);
  Matrix a(2, 2);
  a << a11, a12, std::conj(a12), -a11;
  return a;
}

}  // namespace

void Trajectory::validate() const {
  if (pieces.empty()) throw GeomgateError("Trajectory: no pieces");
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    const auto& piece = pieces[p];
    const std::size_t n = piece.grid.size();
    if (n < 2) throw GeomgateError("Trajectory: piece " + std::to_string(p) + " has fewer than 2 samples");
    if (piece.chi.size() != n || piece.eta.size() != n) {
      throw GeomgateError("Trajectory: piece " + std::to_string(p) + " has mismatched lengths");
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::isfinite(piece.grid[k]) || !std::isfinite(piece.chi[k]) || !std::isfinite(piece.eta[k])) {
        throw GeomgateError("Trajectory: non-finite sample");
      }
      if (k > 0 && !(piece.grid[k] > piece.grid[k - 1])) {
        throw GeomgateError("Trajectory: grid is not strictly increasing");
      }
    }
    if (p > 0) {
      const double gap = piece.grid.front() - pieces[p - 1].grid.back();
      const double scale = std::max(1.0, std::abs(piece.grid.front()));
      if (std::abs(gap) > 1e-12 * scale) throw GeomgateError("Trajectory: pieces are not contiguous");
    }
  }
}

std::size_t Trajectory::sample_count() const {
  std::size_t n = 0;
  for (const auto& p : pieces) n += p.grid.size();
  return n;
}

Trajectory sample_trajectory(const TimeFunction& chi, const TimeFunction& eta,
                             const std::vector<double>& breakpoints, int samples_per_piece) {
  if (breakpoints.size() < 2) throw GeomgateError("sample_trajectory: need at least two breakpoints");
  if (samples_per_piece < 3) throw GeomgateError("sample_trajectory: need at least 3 samples per piece");
  Trajectory tr;
  for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const double a = breakpoints[k], b = breakpoints[k + 1];
    if (!(b > a)) throw GeomgateError("sample_trajectory: breakpoints must increase");
    TrajectoryPiece piece;
    for (int i = 0; i < samples_per_piece; ++i) {
      const double t = (i == samples_per_piece - 1) ? b : a + (b - a) * i / (samples_per_piece - 1);
      // Evaluate eta just inside the piece so that a jump at the boundary is
      // attributed to the neighbouring piece.
      const double inside = std::clamp(t, a + 1e-12 * (b - a), b - 1e-12 * (b - a));
      piece.grid.push_back(t);
      piece.chi.push_back(chi(t));
      piece.eta.push_back(eta(inside));
    }
    tr.pieces.push_back(std::move(piece));
  }
  tr.validate();
  return tr;
}

Trajectory family_trajectory(const NngqcFamily& f, int samples_per_piece) {
  f.validate();
  const double jump = std::clamp(f.chi0 / f.omega0, 0.0, f.tau);
  std::vector<double> breaks{0.0};
  if (jump > 0.0) breaks.push_back(jump);
  if (f.tau > jump) breaks.push_back(f.tau);
  const auto chi = [&f](double t) { return f.omega0 * t - f.chi0; };
  const auto eta = [&f, jump](double t) { return t < jump ? f.phi0 : f.phi0 + f.phi1; };
  return sample_trajectory(chi, eta, breaks, samples_per_piece);
}

Controls sample_controls(const Trajectory& tr, const PulseSchedule& s) {
  tr.validate();
  if (s.empty()) throw GeomgateError("sample_controls: empty schedule");
  std::vector<double> ends;
  long double acc = 0.0L;
  for (const auto& seg : s.segments) {
    acc += seg.duration;
    ends.push_back(static_cast<double>(acc));
  }
  const auto lookup = [&](double t) -> const PulseSegment& {
    for (std::size_t k = 0; k < ends.size(); ++k) {
      if (t < ends[k]) return s.segments[k];
    }
    return s.segments.back();
  };
  Controls c;
  for (const auto& piece : tr.pieces) {
    const double mid = 0.5 * (piece.grid.front() + piece.grid.back());
    const double nudge = 1e-9 * (piece.grid.back() - piece.grid.front());
    std::vector<double> rabi, phase;
    for (const double t : piece.grid) {
      const double probe = t + (mid > t ? nudge : -nudge);
      const PulseSegment& seg = lookup(probe);
      rabi.push_back(seg.rabi);
      phase.push_back(seg.phase);
    }
    c.rabi.push_back(std::move(rabi));
    c.phase.push_back(std::move(phase));
  }
  return c;
}

Matrix connection_matrix(const Trajectory& tr, SampleIndex at) {
  check_index(tr, at);
  const auto& p = tr.pieces[at.piece];
  if (at.sample == 0 || at.sample + 1 >= p.grid.size()) {
    throw GeomgateError("connection_matrix: sample at a piece boundary");
  }
  const double chi_rate = derivative(p.grid, p.chi, at.sample);
  const double eta_rate = derivative(p.grid, p.eta, at.sample);
  const double chi = p.chi[at.sample];
  const double a11 = 0.5 * eta_rate * std::cos(chi);
  const Complex a12 = kI * (0.5 * chi_rate) + 0.5 * eta_rate * std::sin(chi);
  Matrix a(2, 2);
  a << a11, a12, std::conj(a12), -a11;
  return a;
}

Matrix dynamical_matrix(const Trajectory& tr, const Controls& c, SampleIndex at) {
  check_index(tr, at);
  check_controls(tr, c);
  const auto& p = tr.pieces[at.piece];
  Matrix k(2, 2);
  for (int l = 1; l <= 2; ++l) {
    for (int m = 1; m <= 2; ++m) k(l - 1, m - 1) = k_entry(p, c, at.piece, at.sample, l, m);
  }
  return k;
}

double geometric_phase(const Trajectory& tr) {
  tr.validate();
  double sum = 0.0;
  for (std::size_t p = 0; p < tr.pieces.size(); ++p) {
    const auto& piece = tr.pieces[p];
    if (p > 0) {
      const auto& prev = tr.pieces[p - 1];
      sum += 0.5 * (piece.eta.front() - prev.eta.back()) * std::cos(prev.chi.back());
    }
    for (std::size_t k = 0; k + 1 < piece.grid.size(); ++k) {
      const double mean_cos = 0.5 * (std::cos(piece.chi[k]) + std::cos(piece.chi[k + 1]));
      sum += 0.5 * mean_cos * (piece.eta[k + 1] - piece.eta[k]);
    }
  }
  return sum;
}

double dynamical_phase(const Trajectory& tr, const Controls& c) {
  tr.validate();
  check_controls(tr, c);
  double sum = 0.0;
  for (std::size_t p = 0; p < tr.pieces.size(); ++p) {
    const auto& piece = tr.pieces[p];
    for (std::size_t k = 0; k + 1 < piece.grid.size(); ++k) {
      const double f0 = k_entry(piece, c, p, k, 1, 1).real();
      const double f1 = k_entry(piece, c, p, k + 1, 1, 1).real();
      sum += 0.5 * (f0 + f1) * (piece.grid[k + 1] - piece.grid[k]);
    }
  }
  return sum;
}

Complex unconventional_ratio_complex(const Trajectory& tr, const Controls& c) {
  tr.validate();
  check_controls(tr, c);
  Complex num = 0.0, den = 0.0;
  double scale = 0.0;
  for (std::size_t p = 0; p < tr.pieces.size(); ++p) {
    const auto& piece = tr.pieces[p];
    if (p > 0) {
      const auto& prev = tr.pieces[p - 1];
      num += 0.5 * (piece.eta.front() - prev.eta.back()) * std::sin(prev.chi.back());
    }
    for (std::size_t k = 0; k + 1 < piece.grid.size(); ++k) {
      const double dt = piece.grid[k + 1] - piece.grid[k];
      const double dchi = piece.chi[k + 1] - piece.chi[k];
      const double deta = piece.eta[k + 1] - piece.eta[k];
      const double mean_sin = 0.5 * (std::sin(piece.chi[k]) + std::sin(piece.chi[k + 1]));
      num += kI * (0.5 * dchi) + 0.5 * mean_sin * deta;
      const Complex k0 = k_entry(piece, c, p, k, 1, 2);
      const Complex k1 = k_entry(piece, c, p, k + 1, 1, 2);
      den += 0.5 * (k0 + k1) * dt;
      scale += 0.5 * (std::abs(k0) + std::abs(k1)) * dt;
    }
  }
  if (std::abs(den) <= 1e-12 * std::max(scale, 1e-300) || std::abs(den) == 0.0) {
    throw GeomgateError("unconventional_ratio: integral of K12 vanishes");
  }
  return num / den;
}

double unconventional_ratio(const Trajectory& tr, const Controls& c) {
  const Complex r = unconventional_ratio_complex(tr, c);
  if (std::abs(r.imag()) > 1e-8) {
    throw GeomgateError("unconventional_ratio: ratio is not real (imaginary part " +
                        std::to_string(r.imag()) + ")");
  }
  return r.real();
}

double non_abelian_witness(const Trajectory& tr) {
  tr.validate();
  std::vector<Matrix> cells;
  for (std::size_t p = 0; p < tr.pieces.size(); ++p) {
    const auto& piece = tr.pieces[p];
    double mass = 0.0;
    if (p > 0) {
      const auto& prev = tr.pieces[p - 1];
      mass = 0.5 * (piece.eta.front() - prev.eta.back()) * std::cos(prev.chi.back());
    }
    for (std::size_t k = 0; k + 1 < piece.grid.size(); ++k) {
      cells.push_back(cell_connection(piece, k, k == 0 ? mass : 0.0));
    }
  }
  double best = 0.0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      best = std::max(best, max_norm(commutator(cells[i], cells[j])));
    }
  }
  return best;
}

double spherical_polygon_solid_angle(const std::vector<Eigen::Vector3d>& points) {
  if (points.size() < 3) return 0.0;
  // Fan of triangles from an apex kept well away from the antipode of every vertex.
  const std::vector<Eigen::Vector3d> candidates{
      {0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0},
      Eigen::Vector3d(1, 1, 1).normalized(), Eigen::Vector3d(-1, -1, -1).normalized()};
  Eigen::Vector3d apex = candidates[0];
  double best = -1.0;
  for (const auto& cand : candidates) {
    double worst = 2.0;
    for (const auto& p : points) worst = std::min(worst, 1.0 + cand.dot(p));
    if (worst > best) {
      best = worst;
      apex = cand;
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Eigen::Vector3d& a = points[k];
    const Eigen::Vector3d& b = points[(k + 1) % points.size()];
    const double num = a.dot(b.cross(apex));
    const double den = 1.0 + a.dot(b) + b.dot(apex) + apex.dot(a);
    total += 2.0 * std::atan2(num, den);
  }
  return total;
}

double solid_angle_check(const BoundaryValues& b, const Trajectory& tr) {
  tr.validate();
  std::vector<Eigen::Vector3d> pts;
  for (const auto& piece : tr.pieces) {
    for (std::size_t k = 0; k < piece.grid.size(); ++k) pts.push_back(bloch(piece.chi[k], piece.eta[k]));
  }
  const auto& first = tr.pieces.front();
  const auto& last = tr.pieces.back();
  const Vector start = aux_state(1, first.chi.front(), first.eta.front());
  const Vector end = aux_state(1, last.chi.back(), last.eta.back());
  const Complex overlap = start.dot(end);
  if (std::abs(overlap) < 1e-9) {
    throw GeomgateError("solid_angle_check: end points are antipodal; closing geodesic undefined");
  }
  const Eigen::Vector3d a = pts.back(), z = pts.front();
  const double w = std::acos(std::clamp(a.dot(z), -1.0, 1.0));
  if (w > 1e-12) {
    const int n = static_cast<int>(std::max<std::size_t>(tr.sample_count(), 16));
    for (int i = 1; i < n; ++i) {
      const double s = static_cast<double>(i) / n;
      pts.push_back((std::sin((1 - s) * w) * a + std::sin(s * w) * z) / std::sin(w));
    }
  }
  double area = spherical_polygon_solid_angle(pts);
  if (std::abs(area) < 1e-14) area = 0.0;
  return std::abs(wrap(b.gamma + std::arg(overlap) + 0.5 * area));
}

}  // namespace geomgate
