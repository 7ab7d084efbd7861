#include "geomgate/dynamics.hpp"

#include <cmath>
#include <string>

namespace geomgate {
namespace {

constexpr int kMaxRefinements = 18;

// x' = G(t) x over one function segment. Returns the fourth-order Magnus
// product with n equal steps. `exponentiate` maps the Magnus exponent to its
// exponential so that unitary problems stay exactly unitary.
template <typename Exp>
Matrix magnus_product(const std::function<Matrix(double)>& g, double duration, long n,
                      const Exp& exponentiate) {
  const double h = duration / static_cast<double>(n);
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
  const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
  Matrix total;
  for (long k = 0; k < n; ++k) {
    const double t0 = h * static_cast<double>(k);
    const Matrix a1 = g(t0 + c1 * h);
    const Matrix a2 = g(t0 + c2 * h);
    const Matrix omega = 0.5 * h * (a1 + a2) + (std::sqrt(3.0) / 12.0) * h * h * commutator(a2, a1);
    const Matrix step = exponentiate(omega);
    total = (k == 0) ? step : Matrix(step * total);
  }
  return total;
}

template <typename Exp>
Matrix refine(const std::function<Matrix(double)>& g, double duration, double tol,
              const Exp& exponentiate, const char* what) {
  long n = 1;
  Matrix coarse = magnus_product(g, duration, n, exponentiate);
  for (int depth = 0; depth < kMaxRefinements; ++depth) {
    n *= 2;
    Matrix fine = magnus_product(g, duration, n, exponentiate);
    if (max_norm(fine - coarse) < tol) return fine;
    coarse = std::move(fine);
  }
  throw GeomgateError(std::string(what) + ": step doubling did not converge to tol " +
                      std::to_string(tol));
}

Matrix embed(const std::vector<int>& dims, int subsystem, const Matrix& op) {
  Matrix out = Matrix::Identity(1, 1);
  for (int s = 0; s < static_cast<int>(dims.size()); ++s) {
    out = tensor(out, s == subsystem ? op : identity(dims[s]));
  }
  return out;
}

}  // namespace

void PiecewiseHamiltonian::add_constant(double duration, Matrix h) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw GeomgateError("PiecewiseHamiltonian: duration must be finite and non-negative");
  }
  if (h.rows() != dim_ || h.cols() != dim_) {
    throw GeomgateError("PiecewiseHamiltonian: generator dimension mismatch");
  }
  if (duration == 0.0) return;
  segments_.push_back({duration, std::move(h), {}});
}

void PiecewiseHamiltonian::add_function(double duration, Generator g) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) {
    throw GeomgateError("PiecewiseHamiltonian: duration must be finite and non-negative");
  }
  if (!g) throw GeomgateError("PiecewiseHamiltonian: empty generator");
  if (duration == 0.0) return;
  segments_.push_back({duration, Matrix(), std::move(g)});
}

void PiecewiseHamiltonian::append(const PiecewiseHamiltonian& other) {
  if (other.dim_ != dim_) throw GeomgateError("PiecewiseHamiltonian: dimension mismatch in append");
  segments_.insert(segments_.end(), other.segments_.begin(), other.segments_.end());
}

double PiecewiseHamiltonian::total_duration() const {
  long double sum = 0.0L;
  for (const auto& s : segments_) sum += s.duration;
  return static_cast<double>(sum);
}

PiecewiseHamiltonian PiecewiseHamiltonian::slice(double t0, double t1) const {
  if (!(t1 >= t0)) throw GeomgateError("PiecewiseHamiltonian::slice: t1 < t0");
  PiecewiseHamiltonian out(dim_);
  long double start = 0.0L;
  for (const auto& seg : segments_) {
    const long double end = start + seg.duration;
    const double lo = static_cast<double>(std::max<long double>(start, t0));
    const double hi = static_cast<double>(std::min<long double>(end, t1));
    if (hi > lo) {
      const double offset = lo - static_cast<double>(start);
      if (seg.is_constant()) {
        out.add_constant(hi - lo, seg.constant);
      } else {
        Generator g = seg.generator;
        out.add_function(hi - lo, [g, offset](double t) { return g(t + offset); });
      }
    }
    start = end;
  }
  return out;
}

void PiecewiseHamiltonian::validate() const {
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const auto& seg = segments_[k];
    for (const double t : {0.0, 0.5 * seg.duration, seg.duration}) {
      const Matrix h = seg.at(t);
      if (h.rows() != dim_ || h.cols() != dim_) {
        throw GeomgateError("segment " + std::to_string(k) + ": generator dimension mismatch");
      }
      if (!h.allFinite()) throw GeomgateError("segment " + std::to_string(k) + ": non-finite generator");
      const double scale = std::max(1.0, max_norm(h));
      if (hermiticity_defect(h) > 1e-12 * scale) {
        throw GeomgateError("segment " + std::to_string(k) + ": generator is not Hermitian");
      }
      if (seg.is_constant()) break;
    }
  }
}

PiecewiseHamiltonian schedule_to_hamiltonian(const PulseSchedule& s, const CoherentError& err) {
  if (err.delta != 0.0 && !(err.omega_ref > 0.0)) {
    throw GeomgateError("schedule_to_hamiltonian: detuning error needs a positive omega_ref");
  }
  PiecewiseHamiltonian h(2);
  const Matrix detuning = err.delta * err.omega_ref * pauli_z();
  for (const auto& seg : s.segments) {
    const double amp = 0.5 * (1.0 + err.zeta) * seg.rabi;
    Matrix m = amp * (std::cos(seg.phase) * pauli_x() + std::sin(seg.phase) * pauli_y()) + detuning;
    h.add_constant(seg.duration, std::move(m));
  }
  return h;
}

Matrix propagate_unitary(const PiecewiseHamiltonian& h, double tol) {
  h.validate();
  Matrix u = identity(h.dim());
  const auto exponentiate = [](const Matrix& omega) {
    // omega is anti-Hermitian: exp(omega) = exp(-i (i omega) * 1).
    return unitary_exponential(kI * omega, 1.0);
  };
  for (const auto& seg : h.segments()) {
    if (seg.is_constant()) {
      u = unitary_exponential(seg.constant, seg.duration) * u;
    } else {
      const Generator& g = seg.generator;
      const auto a = [&g](double t) -> Matrix { return -kI * g(t); };
      u = refine(a, seg.duration, tol, exponentiate, "propagate_unitary") * u;
    }
  }
  return u;
}

Dissipators Dissipators::qubit(double gamma1, double gamma2, DephasingConvention convention) {
  Dissipators d;
  d.dims = {2};
  d.decay = {{0, 1, 0, gamma1}};
  d.dephasing = {{0, 1, gamma2}};
  d.convention = convention;
  return d;
}

int Dissipators::dim() const {
  int n = 1;
  for (const int k : dims) n *= k;
  return n;
}

bool Dissipators::empty() const {
  for (const auto& c : decay) {
    if (c.rate != 0.0) return false;
  }
  for (const auto& c : dephasing) {
    if (c.rate != 0.0) return false;
  }
  return true;
}

void Dissipators::validate() const {
  if (dims.empty()) throw GeomgateError("Dissipators: no subsystems");
  for (const int k : dims) {
    if (k < 1) throw GeomgateError("Dissipators: subsystem dimension must be positive");
  }
  const auto check_level = [&](int subsystem, int level, const char* what) {
    if (subsystem < 0 || subsystem >= static_cast<int>(dims.size())) {
      throw GeomgateError(std::string("Dissipators: ") + what + " targets a missing subsystem");
    }
    if (level < 0 || level >= dims[subsystem]) {
      throw GeomgateError(std::string("Dissipators: ") + what + " level outside subsystem");
    }
  };
  for (const auto& c : decay) {
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) throw GeomgateError("Dissipators: invalid decay rate");
    check_level(c.subsystem, c.upper, "decay");
    check_level(c.subsystem, c.lower, "decay");
    if (c.upper == c.lower) throw GeomgateError("Dissipators: decay needs two distinct levels");
  }
  for (const auto& c : dephasing) {
    if (!(c.rate >= 0.0) || !std::isfinite(c.rate)) {
      throw GeomgateError("Dissipators: invalid dephasing rate");
    }
    check_level(c.subsystem, c.level, "dephasing");
  }
}

std::vector<Matrix> Dissipators::jump_operators() const {
  validate();
  std::vector<Matrix> out;
  for (const auto& c : decay) {
    if (c.rate == 0.0) continue;
    const Matrix local = std::sqrt(c.rate) * projector(dims[c.subsystem], c.lower, c.upper);
    out.push_back(embed(dims, c.subsystem, local));
  }
  const double factor = convention == DephasingConvention::kCoherence ? 2.0 : 1.0;
  for (const auto& c : dephasing) {
    if (c.rate == 0.0) continue;
    const Matrix local = std::sqrt(factor * c.rate) * projector(dims[c.subsystem], c.level, c.level);
    out.push_back(embed(dims, c.subsystem, local));
  }
  return out;
}

Matrix lindbladian(const Matrix& h, const std::vector<Matrix>& jumps) {
  const int n = static_cast<int>(h.rows());
  const Matrix id = identity(n);
  Matrix l = -kI * (tensor(id, h) - tensor(h.transpose(), id));
  for (const auto& a : jumps) {
    const Matrix ada = a.adjoint() * a;
    l += tensor(a.conjugate(), a) - 0.5 * tensor(id, ada) - 0.5 * tensor(ada.transpose(), id);
  }
  return l;
}

Matrix lindblad_transfer(const PiecewiseHamiltonian& h, const Dissipators& d, double tol) {
  h.validate();
  if (d.dim() != h.dim()) throw GeomgateError("lindblad_transfer: dissipator dimension mismatch");
  const std::vector<Matrix> jumps = d.jump_operators();
  const int n2 = h.dim() * h.dim();
  Matrix t = identity(n2);
  const auto exponentiate = [](const Matrix& m) { return general_exponential(m); };
  for (const auto& seg : h.segments()) {
    if (seg.is_constant()) {
      t = general_exponential(lindbladian(seg.constant, jumps) * seg.duration) * t;
    } else {
      const Generator& g = seg.generator;
      const auto l = [&g, &jumps](double s) { return lindbladian(g(s), jumps); };
      t = refine(l, seg.duration, tol, exponentiate, "propagate_lindblad") * t;
    }
  }
  return t;
}

Matrix apply_transfer(const Matrix& transfer, const Matrix& rho) {
  const Eigen::Index n = rho.rows();
  if (transfer.rows() != n * n) throw GeomgateError("apply_transfer: dimension mismatch");
  const Vector v = Eigen::Map<const Vector>(rho.data(), n * n);
  const Vector w = transfer * v;
  return Eigen::Map<const Matrix>(w.data(), n, n);
}

DensityMatrix propagate_lindblad(const PiecewiseHamiltonian& h, const Dissipators& d,
                                 const DensityMatrix& rho0, double tol) {
  if (rho0.dim() != h.dim()) throw GeomgateError("propagate_lindblad: initial state dimension mismatch");
  const Matrix t = lindblad_transfer(h, d, tol);
  return DensityMatrix::from_evolved(apply_transfer(t, rho0.entries()), tol);
}

std::vector<TimeSample> lindblad_time_series(const PiecewiseHamiltonian& h, const Dissipators& d,
                                             const DensityMatrix& rho0, int count, double tol) {
  if (count < 2) throw GeomgateError("lindblad_time_series: need at least two samples");
  if (rho0.dim() != h.dim()) throw GeomgateError("lindblad_time_series: dimension mismatch");
  const double total = h.total_duration();
  std::vector<TimeSample> out;
  out.reserve(count);
  Matrix rho = rho0.entries();
  out.push_back({0.0, rho});
  double prev = 0.0;
  for (int k = 1; k < count; ++k) {
    const double t = (k == count - 1) ? total : total * k / (count - 1);
    const Matrix step = lindblad_transfer(h.slice(prev, t), d, tol);
    rho = DensityMatrix::from_evolved(apply_transfer(step, rho), tol).entries();
    out.push_back({t, rho});
    prev = t;
  }
  return out;
}

}  // namespace geomgate
