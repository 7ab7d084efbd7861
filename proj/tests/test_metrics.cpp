#include "geomgate/metrics.hpp"

#include <cmath>
#include <random>

#include "geomgate/dynamics.hpp"
#include "geomgate/gate_algebra.hpp"
#include "test_support.hpp"

using namespace geomgate;

TEST_CASE("state fidelity") {
  Vector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  CHECK(state_fidelity(plus, plus * plus.adjoint()) == doctest::Approx(1.0));
  CHECK(state_fidelity(plus, 0.5 * identity(2)) == doctest::Approx(0.5));
  CHECK_THROWS_AS(state_fidelity(plus, identity(3)), GeomgateError);
}

TEST_CASE("theta average over real-amplitude inputs, with endpoints duplicated") {
  // |<psi|Rz(e)|psi>|^2 = cos^2(e/2) + cos^2(2 theta) sin^2(e/2); the 1001-point
  // grid includes both theta = 0 and 2 pi, so the mean of cos^2(2 theta) is 501/1001.
  for (double e : {0.0, 0.1, 1.0, kPi}) {
    const double expected = std::pow(std::cos(e / 2), 2) + std::pow(std::sin(e / 2), 2) * 501.0 / 1001.0;
    CHECK(theta_avg_gate_fidelity_unitary(identity(2), rotation_z(e)) == doctest::Approx(expected).epsilon(1e-13));
    const Matrix u = rotation_z(e);
    CHECK(theta_avg_gate_fidelity(identity(2), [&](const Matrix& rho) { return Matrix(u * rho * u.adjoint()); }) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("average gate fidelity of unitaries") {
  CHECK(avg_gate_fidelity(hadamard(), std::exp(kI * 0.4) * hadamard()) == doctest::Approx(1.0));
  // Orthogonal Paulis: (0 + d)/(d^2 + d) = 1/3.
  CHECK(avg_gate_fidelity(pauli_x(), pauli_z()) == doctest::Approx(1.0 / 3.0));
  // Rz(e) vs identity: (4 cos^2(e/2) + 2)/6.
  CHECK(avg_gate_fidelity(identity(2), rotation_z(0.3)) == doctest::Approx((4 * std::pow(std::cos(0.15), 2) + 2) / 6));
}

TEST_CASE("channel fidelity: amplitude damping and depolarizing oracles") {
  const double p = 0.2;
  const auto damping = [p](const Matrix& rho) {
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1 - p);
    k1(0, 1) = std::sqrt(p);
    return Matrix(k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint());
  };
  CHECK(avg_gate_fidelity_channel(identity(2), damping) == doctest::Approx((std::pow(1 + std::sqrt(1 - p), 2) + 2) / 6));

  const double q = 0.3;
  const auto depolarize = [q](const Matrix& rho) { return Matrix((1 - q) * rho + q * rho.trace() * identity(4) / 4.0); };
  // F = 1 - q (d - 1)/d
  CHECK(avg_gate_fidelity_channel(identity(4), depolarize) == doctest::Approx(1 - q * 3.0 / 4.0));
}

TEST_CASE("channel and Kraus forms agree for a leaky projected unitary") {
  std::mt19937_64 rng(41);
  const Matrix full = unitary_exponential(geomgate::testing::random_hermitian(rng, 3, 0.3), 1.0);
  const Matrix m = full.block(0, 0, 2, 2);
  const auto channel = [&](const Matrix& rho) { return Matrix(m * rho * m.adjoint()); };
  CHECK(avg_gate_fidelity_channel(hadamard(), channel) == doctest::Approx(avg_gate_fidelity(hadamard(), m)).epsilon(1e-13));
}

TEST_CASE("transfer-matrix theta average matches the unitary path") {
  PiecewiseHamiltonian h(2);
  h.add_constant(1.0, 0.4 * pauli_y());
  Dissipators none;
  const Matrix u = propagate_unitary(h);
  CHECK(theta_avg_gate_fidelity_transfer(hadamard(), lindblad_transfer(h, none)) ==
        doctest::Approx(theta_avg_gate_fidelity_unitary(hadamard(), u)).epsilon(1e-12));
}

TEST_CASE("fidelity report range") {
  const FidelityReport r = FidelityReport::make(0.99, FidelityKind::kAvgGate, {{"scheme", "nngqc"}});
  CHECK(r.value == 0.99);
  CHECK(to_string(r.kind) == "avg_gate");
  CHECK_THROWS_AS(FidelityReport::make(1.1, FidelityKind::kState, {}), GeomgateError);
  CHECK_THROWS_AS(FidelityReport::make(std::nan(""), FidelityKind::kState, {}), GeomgateError);
}
