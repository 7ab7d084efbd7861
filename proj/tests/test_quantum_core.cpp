#include "test_support.hpp"

using namespace geomgate;
using geomgate::testing::near;

TEST_CASE("pauli algebra") {
  const Matrix x = pauli_x(), y = pauli_y(), z = pauli_z();
  CHECK(near(x * y, kI * z, 0.0));
  CHECK(near(commutator(x, y), 2.0 * kI * z, 0.0));
  CHECK(near(x * x, identity(2), 0.0));
  CHECK(near(hadamard() * hadamard(), identity(2), 1e-15));
  CHECK(near(hadamard() * z * hadamard(), x, 1e-15));
}

TEST_CASE("tensor places blocks row-major") {
  const Matrix t = tensor(pauli_z(), pauli_x());
  CHECK(t.rows() == 4);
  CHECK(t(0, 1) == Complex(1.0));
  CHECK(t(2, 3) == Complex(-1.0));
  CHECK(t(0, 3) == Complex(0.0));
  const Matrix p = projector(3, 0, 2);
  CHECK(p(0, 2) == Complex(1.0));
  CHECK(p.cwiseAbs().sum() == 1.0);
}

TEST_CASE("unitary exponential matches the closed-form rotation") {
  // exp(-i t (a/2) sigma_x) = cos(a t/2) - i sin(a t/2) sigma_x
  for (double t : {0.0, 0.3, 1.7, 12.0}) {
    const Matrix u = unitary_exponential(0.5 * 2.2 * pauli_x(), t);
    const Matrix expected = std::cos(1.1 * t) * identity(2) - kI * std::sin(1.1 * t) * pauli_x();
    CHECK(near(u, expected, 1e-14));
  }
}

TEST_CASE("general exponential agrees with the unitary path and with a nilpotent oracle") {
  std::mt19937_64 rng(7);
  for (int dim : {2, 4, 9}) {
    const Matrix h = geomgate::testing::random_hermitian(rng, dim);
    CHECK(near(general_exponential(-kI * 0.8 * h), unitary_exponential(h, 0.8), 1e-12));
  }
  Matrix n = Matrix::Zero(3, 3);
  n(0, 1) = 2.0;
  n(1, 2) = 3.0;
  Matrix expected = identity(3) + n;
  expected(0, 2) = 3.0;  // n^2 / 2
  CHECK(near(general_exponential(n), expected, 1e-14));
}

TEST_CASE("general exponential rejects non-square input") {
  CHECK_THROWS_AS(general_exponential(Matrix::Zero(2, 3)), GeomgateError);
}

TEST_CASE("state vectors normalize and reject zero") {
  Vector v(2);
  v << 3.0, Complex(0.0, 4.0);
  const StateVector s(v);
  CHECK(std::abs(s[0] - 0.6) < 1e-15);
  CHECK(std::abs(s[1] - Complex(0.0, 0.8)) < 1e-15);
  CHECK_THROWS_AS(StateVector(Vector::Zero(2)), GeomgateError);
  CHECK_THROWS_AS(StateVector::basis(2, 2), GeomgateError);
}

TEST_CASE("density matrix invariants") {
  const DensityMatrix rho = DensityMatrix::pure(StateVector::basis(3, 1));
  CHECK(rho.trace() == doctest::Approx(1.0));
  CHECK(rho.min_eigenvalue() == doctest::Approx(0.0));

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.2;
  bad(1, 1) = -0.2;
  CHECK_FALSE(density_violation(bad, 1e-10).empty());
  CHECK_THROWS_AS(DensityMatrix{bad}, GeomgateError);

  Matrix half = Matrix::Zero(2, 2);
  half(0, 0) = 0.5;
  CHECK_THROWS_AS(DensityMatrix{half}, GeomgateError);

  Matrix skew = 0.5 * identity(2);
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{skew}, GeomgateError);
  CHECK(density_violation(0.5 * identity(2), 1e-10).empty());
}

TEST_CASE("defect measures") {
  CHECK(unitarity_defect(hadamard()) < 1e-15);
  CHECK(unitarity_defect(2.0 * identity(2)) == doctest::Approx(3.0));
  CHECK(hermiticity_defect(pauli_y()) == 0.0);
  CHECK(hermiticity_defect(kI * pauli_x()) == doctest::Approx(2.0));
}
