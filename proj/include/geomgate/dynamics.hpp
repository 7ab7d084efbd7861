#pragma once

#include <functional>
#include <vector>

#include "geomgate/pulse_synth.hpp"
#include "geomgate/quantum_core.hpp"

namespace geomgate {

inline constexpr double kUnitaryTolerance = 1e-10;
inline constexpr double kLindbladTolerance = 1e-8;

/// Static control errors: Omega -> (1 + zeta) Omega and an added delta * omega_ref * sigma_z.
struct CoherentError {
  double zeta = 0.0;
  double delta = 0.0;
  double omega_ref = 0.0;
};

using Generator = std::function<Matrix(double)>;

/// One interval of a piecewise Hamiltonian. Either `constant` is used
/// (generator empty) or `generator(local_time)` with local_time in [0, duration].
struct HamiltonianSegment {
  double duration = 0.0;
  Matrix constant;
  Generator generator;

  bool is_constant() const { return !generator; }
  Matrix at(double local_time) const { return generator ? generator(local_time) : constant; }
};

class PiecewiseHamiltonian {
 public:
  explicit PiecewiseHamiltonian(int dim) : dim_(dim) {}

  void add_constant(double duration, Matrix h);
  void add_function(double duration, Generator g);
  void append(const PiecewiseHamiltonian& other);

  int dim() const { return dim_; }
  const std::vector<HamiltonianSegment>& segments() const { return segments_; }
  double total_duration() const;

  /// The restriction to [t0, t1], re-based to start at 0.
  PiecewiseHamiltonian slice(double t0, double t1) const;

  /// Throws unless every generator is dim x dim and Hermitian within 1e-12
  /// (relative to its scale) at the segment ends and midpoint.
  void validate() const;

 private:
  int dim_;
  std::vector<HamiltonianSegment> segments_;
};

/// H = ((1+zeta) Omega / 2)(cos phi sigma_x + sin phi sigma_y) + delta omega_ref sigma_z per segment.
PiecewiseHamiltonian schedule_to_hamiltonian(const PulseSchedule& s, const CoherentError& err = {});

/// Time-ordered propagator. Constant segments are exponentiated exactly;
/// function segments use fourth-order Magnus steps, halving the step until
/// two successive refinements differ by less than tol.
Matrix propagate_unitary(const PiecewiseHamiltonian& h, double tol = kUnitaryTolerance);

enum class DephasingConvention {
  /// sqrt(gamma/2) sigma_z on a level pair: coherences decay as exp(-gamma t).
  kCoherence,
  /// sqrt(gamma) |level><level|: coherences decay as exp(-gamma t / 2).
  kProjector,
};

/// sqrt(rate) |lower><upper| acting on one subsystem.
struct DecayChannel {
  int subsystem = 0;
  int upper = 1;
  int lower = 0;
  double rate = 0.0;
};

/// Pure dephasing of `level` on one subsystem. Under kCoherence the operator is
/// sqrt(2 rate) |level><level|, which generates the same dissipator as
/// sqrt(rate/2)(|level><level| - |other><other|) on a two-level subsystem.
struct DephasingChannel {
  int subsystem = 0;
  int level = 1;
  double rate = 0.0;
};

struct Dissipators {
  std::vector<int> dims{2};
  std::vector<DecayChannel> decay;
  std::vector<DephasingChannel> dephasing;
  DephasingConvention convention = DephasingConvention::kCoherence;

  /// Single qubit, decay |1> -> |0> at gamma1 and dephasing of |1> at gamma2.
  static Dissipators qubit(double gamma1, double gamma2,
                           DephasingConvention convention = DephasingConvention::kCoherence);

  int dim() const;
  bool empty() const;
  /// Throws on negative or non-finite rates and on levels outside a subsystem.
  void validate() const;
  /// Jump operators embedded in the full space; zero-rate channels are skipped.
  std::vector<Matrix> jump_operators() const;
};

/// Column-stacked Lindbladian -i(I (x) H - H^T (x) I) + sum_k D[L_k].
Matrix lindbladian(const Matrix& h, const std::vector<Matrix>& jumps);

/// Transfer matrix T with vec(rho(T)) = T vec(rho(0)).
Matrix lindblad_transfer(const PiecewiseHamiltonian& h, const Dissipators& d,
                         double tol = kLindbladTolerance);

Matrix apply_transfer(const Matrix& transfer, const Matrix& rho);

DensityMatrix propagate_lindblad(const PiecewiseHamiltonian& h, const Dissipators& d,
                                 const DensityMatrix& rho0, double tol = kLindbladTolerance);

struct TimeSample {
  double time = 0.0;
  Matrix rho;
};

/// rho(t) at `count` equally spaced instants from 0 to the end (count >= 2).
std::vector<TimeSample> lindblad_time_series(const PiecewiseHamiltonian& h, const Dissipators& d,
                                             const DensityMatrix& rho0, int count,
                                             double tol = kLindbladTolerance);

}  // namespace geomgate
