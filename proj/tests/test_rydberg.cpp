#include "geomgate/rydberg.hpp"
#include "geomgate/metrics.hpp"

#include <cmath>

#include "test_support.hpp"

using namespace geomgate;
using geomgate::testing::near;

namespace {
const double kOmega = 2.0 * kPi * 10e6;
int index(int control, int target) { return 3 * control + target; }
}  // namespace

TEST_CASE("effective Rabi frequencies") {
  const RydbergParams p = RydbergParams::scaled(kOmega, 17.0, 17.0);
  const EffectiveRabi e = effective_rabi(p);
  CHECK(e.first == doctest::Approx(kOmega / 34.0));
  CHECK(e.second == doctest::Approx(kOmega / 68.0));
  CHECK_THROWS_AS(effective_rabi(1.0, 2.0, 10.0, 0.0), GeomgateError);
  CHECK_THROWS_AS(effective_rabi(1.0, 1.0, 0.0, 0.0), GeomgateError);
}

TEST_CASE("parameter validation") {
  RydbergParams p = RydbergParams::scaled(kOmega, 17.0, 17.0);
  CHECK_NOTHROW(p.validate());
  p.delta = -1.0;
  CHECK_THROWS_AS(p.validate(), GeomgateError);
  p = RydbergParams::scaled(kOmega, 17.0, 17.0);
  p.c6 = 1.0;
  p.r = 1.0;
  CHECK_THROWS_AS(p.validate(), GeomgateError);  // V != C6 / r^6
  p.c6 = p.v * 64.0;
  p.r = 2.0;
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("Hamiltonian structure in the nine-level basis") {
  const RydbergParams p = RydbergParams::scaled(kOmega, 17.0, 17.0);
  const Matrix h1 = step1_hamiltonian(p, 0.0);
  CHECK(hermiticity_defect(h1) == 0.0);
  CHECK(std::abs(h1(index(1, 0), index(2, 0))) == doctest::Approx(kOmega / 2));
  CHECK(std::abs(h1(index(0, 0), index(2, 0))) == 0.0);

  const Matrix h2 = step2_hamiltonian(p, 0.2, 1.1);
  CHECK(hermiticity_defect(h2) < 1e-9);
  CHECK(h2(index(0, 2), index(0, 2)).real() == doctest::Approx(p.delta));
  CHECK(h2(index(2, 2), index(2, 2)).real() == doctest::Approx(p.delta + p.v));
  CHECK(std::abs(h2(index(0, 0), index(0, 2))) == doctest::Approx(kOmega / 2));
  CHECK(std::abs(h2(index(1, 0), index(1, 2))) == doctest::Approx(kOmega / 2));
}

TEST_CASE("effective model in the far-detuned limit") {
  // With Delta = 400 Omega the full block approaches the effective propagator.
  const RydbergParams p = RydbergParams::scaled(kOmega, 400.0, 400.0);
  const Step2Pulse pulse = synth_step2_pulse(p, u2_family(effective_rabi(p).first));
  CHECK_FALSE(pulse.validity_warning);
  const Matrix full = propagate_unitary(step2_evolution(p, pulse));
  PiecewiseHamiltonian eff(2);
  for (const auto& s : pulse.segments) eff.add_constant(s.duration, effective_hamiltonian(p, s.phase_s, s.phase_p, false));
  CHECK(phase_insensitive_distance(full.block(0, 0, 2, 2), propagate_unitary(eff)) < 1e-4);
  CHECK(phase_insensitive_distance(propagate_unitary(eff), hadamard()) < 1e-10);
}

TEST_CASE("validity warning for weak detuning") {
  const RydbergParams p = RydbergParams::scaled(kOmega, 3.0, 3.0);
  CHECK(synth_step2_pulse(p, two_qubit_step2_family(p)).validity_warning);
}

TEST_CASE("protocol reaches the two-qubit target") {
  const RydbergParams p = RydbergParams::scaled(kOmega, 17.0, 17.0);
  const Step2Pulse pulse = synth_step2_pulse(p, two_qubit_step2_family(p));
  CHECK(pulse.duration() == doctest::Approx(3.0 * kPi / effective_rabi(p).second));
  const ProtocolResult r = run_protocol(p, pulse);
  CHECK(unitarity_defect(r.full) < 1e-10);
  CHECK(r.leakage < 1e-3);
  CHECK(avg_gate_fidelity(ideal_two_qubit_target(), r.projected) > 0.999);
}

TEST_CASE("embedding and projection") {
  const Vector psi = reference_initial_state();
  CHECK(psi.norm() == doctest::Approx(1.0));
  const Vector big = embed_computational(psi);
  CHECK(big.size() == kTwoAtomDim);
  CHECK(big(index(1, 0)) == psi(2));
  const Matrix rho = psi * psi.adjoint();
  CHECK(near(project_computational(embed_computational(rho)), rho, 0.0));
}

TEST_CASE("Rydberg decay lowers the population kept in the computational space") {
  const RydbergParams p = RydbergParams::scaled(kOmega, 17.0, 17.0);
  const Step2Pulse pulse = synth_step2_pulse(p, two_qubit_step2_family(p));
  const Vector psi = reference_initial_state();
  const DensityMatrix rho0(embed_computational(Matrix(psi * psi.adjoint())));
  double previous = 1.0 + 1e-12;
  for (double rate : {0.0, 2e4, 2e5}) {
    const DensityMatrix out = protocol_with_decoherence(p, pulse, rydberg_dissipators(rate, 0.5 * rate), rho0);
    CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-10));
    const double kept = project_computational(out.entries()).trace().real();
    CHECK(kept < previous);
    previous = kept;
  }
}
