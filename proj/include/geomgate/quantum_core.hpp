#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace geomgate {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Project-wide tolerance for invariant checks.
inline constexpr double kTolerance = 1e-10;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

class GeomgateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix identity(int dim);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();

/// |row><col| in a space of dimension dim.
Matrix projector(int dim, int row, int col);

/// Kronecker product, entry (i*db + k, j*db + l) = a(i,j) * b(k,l).
Matrix tensor(const Matrix& a, const Matrix& b);
Matrix adjoint(const Matrix& a);
Matrix commutator(const Matrix& a, const Matrix& b);

double max_norm(const Matrix& a);

/// Max-norm of u^dagger u - I.
double unitarity_defect(const Matrix& u);
/// Max-norm of a - a^dagger.
double hermiticity_defect(const Matrix& a);

/// exp(-i h t) for Hermitian h, via eigendecomposition.
Matrix unitary_exponential(const Matrix& h, double t);
/// exp(m) for a general square matrix (scaling and squaring Pade).
Matrix general_exponential(const Matrix& m);

class StateVector {
 public:
  /// Normalizes the amplitudes; throws on a zero or non-finite vector.
  explicit StateVector(Vector amplitudes);

  static StateVector basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

 private:
  Vector amplitudes_;
};

class DensityMatrix {
 public:
  /// Validates Hermiticity, unit trace and positivity at the given tolerance.
  explicit DensityMatrix(Matrix entries, double tolerance = kTolerance);

  static DensityMatrix pure(const StateVector& psi);
  /// Hermitian part of `entries`, trace and positivity checked at `tolerance`.
  static DensityMatrix from_evolved(const Matrix& entries, double tolerance);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  Complex operator()(int i, int j) const { return entries_(i, j); }
  double trace() const { return entries_.trace().real(); }
  double min_eigenvalue() const;

 private:
  struct Unchecked {};
  DensityMatrix(Matrix entries, Unchecked) : entries_(std::move(entries)) {}

  Matrix entries_;
};

/// Returns an empty string when `m` satisfies the density-matrix invariants,
/// otherwise a description of the first violated one.
std::string density_violation(const Matrix& m, double tolerance);

}  // namespace geomgate
