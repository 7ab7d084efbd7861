#include "geomgate/quantum_core.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace geomgate {

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Matrix hadamard() { return (pauli_x() + pauli_z()) / std::sqrt(2.0); }

Matrix projector(int dim, int row, int col) {
  Matrix m = Matrix::Zero(dim, dim);
  m(row, col) = 1.0;
  return m;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i) {
    for (Eigen::Index j = 0; j < ca; ++j) {
      out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    }
  }
  return out;
}

Matrix adjoint(const Matrix& a) { return a.adjoint(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double max_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) throw GeomgateError("unitarity_defect: matrix is not square");
  return max_norm(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

double hermiticity_defect(const Matrix& a) { return max_norm(a - a.adjoint()); }

Matrix unitary_exponential(const Matrix& h, double t) {
  // Symmetrize first so that roundoff in h cannot leak into non-unitarity.
  const Matrix herm = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw GeomgateError("unitary_exponential: eigendecomposition failed");
  }
  const Eigen::VectorXd& w = solver.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) phases(k) = std::exp(-kI * (w(k) * t));
  const Matrix& v = solver.eigenvectors();
  return v * phases.asDiagonal() * v.adjoint();
}

Matrix general_exponential(const Matrix& m) {
  if (m.rows() != m.cols()) throw GeomgateError("general_exponential: matrix is not square");
  return m.exp();
}

StateVector::StateVector(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (!amplitudes_.allFinite()) throw GeomgateError("StateVector: non-finite amplitude");
  const double norm = amplitudes_.norm();
  if (norm == 0.0) throw GeomgateError("StateVector: zero vector");
  amplitudes_ /= norm;
}

StateVector StateVector::basis(int dim, int index) {
  if (dim < 1 || index < 0 || index >= dim) {
    throw GeomgateError("StateVector::basis: index " + std::to_string(index) + " outside dimension " +
                        std::to_string(dim));
  }
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

std::string density_violation(const Matrix& m, double tolerance) {
  std::ostringstream os;
  if (m.rows() != m.cols()) return "not square";
  if (!m.allFinite()) return "non-finite entry";
  const double herm = hermiticity_defect(m);
  if (herm > tolerance) {
    os << "Hermiticity defect " << herm;
    return os.str();
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > tolerance) {
    os << "trace " << tr.real() << " deviates from 1";
    return os.str();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues().minCoeff();
  if (lowest < -tolerance) {
    os << "negative eigenvalue " << lowest;
    return os.str();
  }
  return {};
}

DensityMatrix::DensityMatrix(Matrix entries, double tolerance) : entries_(std::move(entries)) {
  if (const std::string why = density_violation(entries_, tolerance); !why.empty()) {
    throw GeomgateError("DensityMatrix: " + why);
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const Vector& a = psi.amplitudes();
  return DensityMatrix(a * a.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::from_evolved(const Matrix& entries, double tolerance) {
  Matrix herm = 0.5 * (entries + entries.adjoint());
  if (const std::string why = density_violation(herm, tolerance); !why.empty()) {
    throw GeomgateError("evolved state violates density invariants: " + why);
  }
  return DensityMatrix(std::move(herm), Unchecked{});
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace geomgate
