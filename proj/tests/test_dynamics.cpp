#include "geomgate/dynamics.hpp"

#include <cmath>
#include <random>

#include "geomgate/pulse_synth.hpp"
#include "test_support.hpp"

using namespace geomgate;
using geomgate::testing::near;

namespace {

PulseSchedule square(double duration, double rabi, double phase) {
  PulseSchedule s;
  s.segments.push_back({duration, rabi, phase});
  return s;
}

Matrix idle(int dim) { return Matrix::Zero(dim, dim); }

}  // namespace

TEST_CASE("resonant Rabi oscillation") {
  const double omega = 2.0 * kPi * 1e3;
  for (double t : {1e-5, 2.5e-4, 5e-4, 9e-4}) {
    const Matrix u = propagate_unitary(schedule_to_hamiltonian(square(t, omega, 0.3)));
    CHECK(std::norm(u(1, 0)) == doctest::Approx(std::pow(std::sin(omega * t / 2), 2)).epsilon(1e-12));
  }
}

TEST_CASE("coherent errors: amplitude scaling and generalized Rabi formula") {
  const double omega = 1.0, t = 2.3;
  const Matrix scaled = propagate_unitary(schedule_to_hamiltonian(square(t, omega, 0.0), {0.07, 0.0, 1.0}));
  CHECK(std::norm(scaled(1, 0)) == doctest::Approx(std::pow(std::sin(1.07 * omega * t / 2), 2)).epsilon(1e-12));

  // H = (omega/2) sigma_x + d sigma_z with d = delta * omega_ref.
  const double d = 0.05 * 2.0;
  const Matrix u = propagate_unitary(schedule_to_hamiltonian(square(t, omega, 0.0), {0.0, 0.05, 2.0}));
  const double w = std::sqrt(omega * omega / 4 + d * d);
  CHECK(std::norm(u(1, 0)) == doctest::Approx(omega * omega / 4 / (w * w) * std::pow(std::sin(w * t), 2)).epsilon(1e-12));

  CHECK_THROWS_AS(schedule_to_hamiltonian(square(t, omega, 0.0), {0.0, 0.1, 0.0}), GeomgateError);
}

TEST_CASE("time-dependent segment against the rotating-frame solution") {
  const double rabi = 1.3, w = 0.7, T = 4.0;
  PiecewiseHamiltonian h(2);
  h.add_function(T, [=](double t) {
    return Matrix(0.5 * rabi * (std::cos(w * t) * pauli_x() + std::sin(w * t) * pauli_y()));
  });
  const Matrix exact = unitary_exponential(0.5 * w * pauli_z(), T) *
                       unitary_exponential(0.5 * rabi * pauli_x() - 0.5 * w * pauli_z(), T);
  CHECK(near(propagate_unitary(h, 1e-11), exact, 1e-9));
}

TEST_CASE("propagation composes over slices") {
  const PiecewiseHamiltonian h = schedule_to_hamiltonian(synth_nngqc(u1_family(1.0)));
  const double t = h.total_duration(), cut = 0.37 * t;
  const Matrix whole = propagate_unitary(h);
  const Matrix parts = propagate_unitary(h.slice(cut, t)) * propagate_unitary(h.slice(0.0, cut));
  CHECK(near(whole, parts, 1e-13));
  CHECK(h.slice(cut, t).total_duration() == doctest::Approx(t - cut));
}

TEST_CASE("non-Hermitian generators are rejected") {
  PiecewiseHamiltonian h(2);
  h.add_constant(1.0, kI * pauli_x());
  CHECK_THROWS_AS(h.validate(), GeomgateError);
  CHECK_THROWS_AS(propagate_unitary(h), GeomgateError);
  PiecewiseHamiltonian g(2);
  CHECK_THROWS_AS(g.add_constant(-1.0, pauli_x()), GeomgateError);
  CHECK_THROWS_AS(g.add_constant(1.0, identity(3)), GeomgateError);
}

TEST_CASE("closed-system transfer equals unitary conjugation") {
  std::mt19937_64 rng(31);
  PiecewiseHamiltonian h(3);
  h.add_constant(0.8, geomgate::testing::random_hermitian(rng, 3));
  h.add_constant(0.5, geomgate::testing::random_hermitian(rng, 3));
  Dissipators none;
  none.dims = {3};
  const Matrix t = lindblad_transfer(h, none);
  const Matrix u = propagate_unitary(h);
  const Vector psi = geomgate::testing::random_state(rng, 3);
  const Matrix rho = psi * psi.adjoint();
  CHECK(near(apply_transfer(t, rho), u * rho * u.adjoint(), 1e-12));
}

TEST_CASE("decay and dephasing oracles") {
  const double g1 = 0.3, g2 = 0.8;
  PiecewiseHamiltonian h(2);
  h.add_constant(2.0, idle(2));
  Vector plus(2);
  plus << 1.0, 1.0;
  const DensityMatrix rho0 = DensityMatrix::pure(StateVector(plus));
  for (const auto& s : lindblad_time_series(h, Dissipators::qubit(g1, g2), rho0, 11)) {
    CHECK(s.rho(1, 1).real() == doctest::Approx(0.5 * std::exp(-g1 * s.time)).epsilon(1e-12));
    // Coherence decays at gamma1/2 + gamma2 under the default convention.
    CHECK(std::abs(s.rho(0, 1)) == doctest::Approx(0.5 * std::exp(-(g1 / 2 + g2) * s.time)).epsilon(1e-12));
  }
  for (const auto& s :
       lindblad_time_series(h, Dissipators::qubit(0.0, g2, DephasingConvention::kProjector), rho0, 11)) {
    CHECK(std::abs(s.rho(0, 1)) == doctest::Approx(0.5 * std::exp(-g2 * s.time / 2)).epsilon(1e-12));
  }
}

TEST_CASE("driven open system stays a density matrix") {
  std::mt19937_64 rng(32);
  const PiecewiseHamiltonian h = schedule_to_hamiltonian(synth_ngqc(0.9, 1.1, 0.2, 1.0));
  for (int k = 0; k < 10; ++k) {
    const Vector psi = geomgate::testing::random_state(rng, 2);
    const DensityMatrix out =
        propagate_lindblad(h, Dissipators::qubit(0.05 * k, 0.02 * k), DensityMatrix::pure(StateVector(psi)));
    CHECK(out.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(out.min_eigenvalue() > -1e-12);
  }
}

TEST_CASE("three-level decay chain") {
  Dissipators d;
  d.dims = {3};
  d.decay.push_back({0, 2, 1, 0.4});
  d.decay.push_back({0, 1, 0, 0.1});
  PiecewiseHamiltonian h(3);
  h.add_constant(3.0, idle(3));
  const DensityMatrix out = propagate_lindblad(h, d, DensityMatrix::pure(StateVector::basis(3, 2)));
  const double p2 = std::exp(-0.4 * 3.0);
  const double p1 = 0.4 / (0.4 - 0.1) * (std::exp(-0.1 * 3.0) - std::exp(-0.4 * 3.0));
  CHECK(out(2, 2).real() == doctest::Approx(p2).epsilon(1e-12));
  CHECK(out(1, 1).real() == doctest::Approx(p1).epsilon(1e-12));
  CHECK(out(0, 0).real() == doctest::Approx(1.0 - p1 - p2).epsilon(1e-12));
}

TEST_CASE("dissipator validation") {
  CHECK_THROWS_AS(Dissipators::qubit(-1.0, 0.0).validate(), GeomgateError);
  Dissipators d;
  d.dephasing.push_back({0, 2, 1.0});
  CHECK_THROWS_AS(d.validate(), GeomgateError);
  Dissipators e;
  e.decay.push_back({1, 1, 0, 1.0});
  CHECK_THROWS_AS(e.validate(), GeomgateError);
  CHECK(Dissipators::qubit(0.0, 0.0).jump_operators().empty());
  CHECK(Dissipators::qubit(0.0, 0.0).empty());
}

TEST_CASE("two-subsystem jump operators act on their own factor") {
  Dissipators d;
  d.dims = {2, 3};
  d.decay.push_back({1, 2, 0, 4.0});
  const auto jumps = d.jump_operators();
  REQUIRE(jumps.size() == 1);
  CHECK(near(jumps[0], tensor(identity(2), 2.0 * projector(3, 0, 2)), 0.0));
}
