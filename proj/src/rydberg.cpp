#include "geomgate/rydberg.hpp"

#include <cmath>

namespace geomgate {
namespace {

Matrix level_op(int row, int col) { return projector(3, row, col); }

}  // namespace

void RydbergParams::validate() const {
  for (const double x : {omega1, omega_t, delta, v}) {
    if (!std::isfinite(x)) throw GeomgateError("RydbergParams: non-finite parameter");
  }
  if (omega1 < 0.0 || omega_t < 0.0) throw GeomgateError("RydbergParams: Rabi frequencies must be >= 0");
  if (!(delta > 0.0)) throw GeomgateError("RydbergParams: delta must be positive");
  if (v < 0.0) throw GeomgateError("RydbergParams: v must be non-negative");
  if (c6.has_value() != r.has_value()) throw GeomgateError("RydbergParams: c6 and r must be given together");
  if (c6 && r) {
    if (!(*r > 0.0)) throw GeomgateError("RydbergParams: r must be positive");
    const double expected = *c6 / std::pow(*r, 6);
    if (std::abs(v - expected) > 1e-9 * std::abs(expected)) {
      throw GeomgateError("RydbergParams: v differs from c6 / r^6");
    }
  }
}

RydbergParams RydbergParams::scaled(double omega0, double delta_ratio, double v_ratio) {
  RydbergParams p;
  p.omega1 = omega0;
  p.omega_t = omega0;
  p.delta = delta_ratio * omega0;
  p.v = v_ratio * omega0;
  p.validate();
  return p;
}

Matrix step1_hamiltonian(const RydbergParams& p, double phi1) {
  Matrix h = 0.5 * p.omega1 * std::exp(kI * phi1) * level_op(1, kLevelR);
  h += h.adjoint().eval();
  return tensor(h, identity(3));
}

Matrix step2_hamiltonian(const RydbergParams& p, double phi_s, double phi_p) {
  Matrix drive = 0.5 * p.omega_t * (std::exp(kI * phi_s) * level_op(0, kLevelR) +
                                    std::exp(kI * phi_p) * level_op(1, kLevelR));
  Matrix target = drive + drive.adjoint();
  target += p.delta * level_op(kLevelR, kLevelR);
  return tensor(identity(3), target) + p.v * tensor(level_op(kLevelR, kLevelR), level_op(kLevelR, kLevelR));
}

EffectiveRabi effective_rabi(double omega_s, double omega_p, double delta, double v) {
  const double scale = std::max(std::abs(omega_s), std::abs(omega_p));
  if (std::abs(std::abs(omega_s) - std::abs(omega_p)) > 1e-12 * std::max(scale, 1e-300)) {
    throw GeomgateError("effective_rabi: requires |Omega_S| = |Omega_P|");
  }
  if (!(delta > 0.0) || v < 0.0) throw GeomgateError("effective_rabi: need delta > 0 and v >= 0");
  const double prod = std::abs(omega_s) * std::abs(omega_p);
  return {prod / (2.0 * delta), prod / (2.0 * (delta + v))};
}

EffectiveRabi effective_rabi(const RydbergParams& p) {
  return effective_rabi(p.omega_t, p.omega_t, p.delta, p.v);
}

Matrix effective_hamiltonian(const RydbergParams& p, double phi_s, double phi_p, bool shifted) {
  const double d = shifted ? p.delta + p.v : p.delta;
  const Complex s = p.omega_t * std::exp(kI * phi_s);
  const Complex q = p.omega_t * std::exp(kI * phi_p);
  Matrix h(2, 2);
  h(0, 0) = -std::norm(s) / (4.0 * d);
  h(1, 1) = -std::norm(q) / (4.0 * d);
  h(0, 1) = -s * std::conj(q) / (4.0 * d);
  h(1, 0) = std::conj(h(0, 1));
  return h;
}

double Step2Pulse::duration() const {
  long double sum = 0.0L;
  for (const auto& s : segments) sum += s.duration;
  return static_cast<double>(sum);
}

Step2Pulse synth_step2_pulse(const RydbergParams& p, const NngqcFamily& f) {
  p.validate();
  Step2Pulse out;
  if (p.omega_t / p.delta > 0.2) {
    out.validity_warning = true;
    out.note = "Omega_t/Delta > 0.2: second-order effective model is not reliable";
  }
  if (f.tau == 0.0) return out;
  for (const auto& seg : synth_nngqc(f).segments) {
    out.segments.push_back({seg.duration, 0.0, seg.phase + kPi});
  }
  return out;
}

NngqcFamily two_qubit_step2_family(const RydbergParams& p) {
  const double rabi = effective_rabi(p).second;
  if (!(rabi > 0.0)) throw GeomgateError("two_qubit_step2_family: vanishing effective Rabi frequency");
  return u2_family(rabi);
}

PiecewiseHamiltonian step2_evolution(const RydbergParams& p, const Step2Pulse& pulse) {
  PiecewiseHamiltonian h(kTwoAtomDim);
  for (const auto& seg : pulse.segments) h.add_constant(seg.duration, step2_hamiltonian(p, seg.phase_s, seg.phase_p));
  return h;
}

PiecewiseHamiltonian protocol_hamiltonian(const RydbergParams& p, const Step2Pulse& pulse) {
  p.validate();
  if (!(p.omega1 > 0.0)) throw GeomgateError("protocol: omega1 must be positive");
  const double t1 = kPi / p.omega1;
  PiecewiseHamiltonian h(kTwoAtomDim);
  h.add_constant(t1, step1_hamiltonian(p, 0.0));
  h.append(step2_evolution(p, pulse));
  h.add_constant(t1, step1_hamiltonian(p, kPi));
  return h;
}

ProtocolResult run_protocol(const RydbergParams& p, const Step2Pulse& pulse) {
  ProtocolResult out;
  out.full = propagate_unitary(protocol_hamiltonian(p, pulse));
  out.projected = project_computational(out.full);
  double min_norm = 1.0;
  for (int k = 0; k < 4; ++k) min_norm = std::min(min_norm, out.projected.col(k).squaredNorm());
  out.leakage = std::max(0.0, 1.0 - min_norm);
  if (out.leakage > 0.05) {
    throw GeomgateError("run_protocol: leakage " + std::to_string(out.leakage) + " exceeds 0.05");
  }
  return out;
}

Dissipators rydberg_dissipators(double gamma1, double gamma2, DephasingConvention convention) {
  Dissipators d;
  d.dims = {3, 3};
  d.convention = convention;
  for (int atom = 0; atom < 2; ++atom) {
    d.decay.push_back({atom, kLevelR, 0, 0.5 * gamma1});
    d.decay.push_back({atom, kLevelR, 1, 0.5 * gamma1});
    d.dephasing.push_back({atom, kLevelR, gamma2});
  }
  return d;
}

DensityMatrix protocol_with_decoherence(const RydbergParams& p, const Step2Pulse& pulse,
                                        const Dissipators& d, const DensityMatrix& rho0, double tol) {
  if (rho0.dim() != kTwoAtomDim) throw GeomgateError("protocol_with_decoherence: expected a 9-level state");
  return propagate_lindblad(protocol_hamiltonian(p, pulse), d, rho0, tol);
}

Vector embed_computational(const Vector& psi4) {
  if (psi4.size() != 4) throw GeomgateError("embed_computational: expected 4 amplitudes");
  Vector out = Vector::Zero(kTwoAtomDim);
  for (int k = 0; k < 4; ++k) out(kComputationalIndices[k]) = psi4(k);
  return out;
}

Matrix embed_computational(const Matrix& rho4) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw GeomgateError("embed_computational: expected 4x4");
  Matrix out = Matrix::Zero(kTwoAtomDim, kTwoAtomDim);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(kComputationalIndices[i], kComputationalIndices[j]) = rho4(i, j);
  }
  return out;
}

Matrix project_computational(const Matrix& m9) {
  if (m9.rows() != kTwoAtomDim || m9.cols() != kTwoAtomDim) {
    throw GeomgateError("project_computational: expected 9x9");
  }
  Matrix out(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) out(i, j) = m9(kComputationalIndices[i], kComputationalIndices[j]);
  }
  return out;
}

Vector reference_initial_state() {
  Vector v(4);
  v << 0.5, 0.5, std::sqrt(2.0) / 2.0, 0.0;
  return v;
}

}  // namespace geomgate
