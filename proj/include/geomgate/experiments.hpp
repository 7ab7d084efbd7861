#pragma once

#include <string>
#include <utility>
#include <vector>

#include "geomgate/dynamics.hpp"
#include "geomgate/metrics.hpp"
#include "geomgate/pulse_synth.hpp"
#include "geomgate/rydberg.hpp"

namespace geomgate {

enum class Scheme { kNngqc, kNgqc, kDg, kRydberg };
enum class Metric { kStateFidelity, kThetaAvgGateFidelity, kAvgGateFidelity };

std::string to_string(Scheme s);
std::string to_string(Metric m);
Scheme parse_scheme(const std::string& text);
Metric parse_metric(const std::string& text);

/// Physical parameters shared by the experiments. Frequencies and rates in rad/s.
struct PhysicalParams {
  double omega0 = 2.0 * kPi * 6.25e3;
  double gamma1 = 2.0 * (2.0 * kPi * 6.25e3) * 1e-4;
  double gamma2 = 2.0 * (2.0 * kPi * 6.25e3) * 1e-3;
  /// Experiment runs use the projector form; see README.
  DephasingConvention convention = DephasingConvention::kProjector;

  double rydberg_omega0 = 2.0 * kPi * 10e6;  ///< target drive |Omega_S| = |Omega_P|
  double rydberg_omega1 = 0.0;               ///< control drive; 0 means rydberg_omega0
  double delta_over_omega = 17.0;
  double v_over_omega = 17.0;
  double rydberg_gamma1 = 0.0;
  double rydberg_gamma2 = 0.0;

  double unitary_tol = kUnitaryTolerance;
  double lindblad_tol = kLindbladTolerance;

  RydbergParams rydberg() const;
};

/// Single-qubit gate identifiers: "U1" or "U2".
Matrix gate_target(const std::string& gate);
PulseSchedule scheme_schedule(Scheme scheme, const std::string& gate, double omega0);

struct Axis {
  std::string name;  ///< zeta, delta, gamma1, gamma2
  double min = 0.0;
  double max = 0.0;
  int count = 2;

  double value(int i) const;
};

struct SweepSpec {
  Scheme scheme = Scheme::kNngqc;
  std::string gate = "U1";
  Axis axis1;
  Axis axis2;
  PhysicalParams fixed;
  double zeta = 0.0;
  double delta = 0.0;
  Metric metric = Metric::kThetaAvgGateFidelity;

  /// Throws with every violation listed.
  void validate() const;
};

struct SweepResult {
  SweepSpec spec;
  std::vector<double> values;  ///< row-major, axis1 outer; -1 marks a flagged cell
  std::vector<std::string> errors;  ///< message per flagged cell, same order
  double wall_seconds = 0.0;

  double at(int i, int j) const { return values.at(static_cast<std::size_t>(i) * spec.axis2.count + j); }
  int flagged() const;
};

/// Metric at one parameter point; throws on simulation failure.
double evaluate_point(const SweepSpec& spec, double a1, double a2);

/// jobs <= 0 uses the hardware concurrency.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 0);

struct TimeSeries {
  std::vector<double> t;
  std::vector<double> pop0;
  std::vector<double> pop1;
  std::vector<double> fidelity;
};

/// Populations of |0> and |1> (single qubit) or of the first two computational
/// states (two qubits) and the fidelity to the closed-system ideal state.
TimeSeries single_qubit_series(const PulseSchedule& s, const PhysicalParams& p, const Vector& psi0, int count);

struct CsvFile {
  std::string name;
  std::string body;
};

struct ExperimentOutput {
  std::string name;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<CsvFile> files;
  int flagged_cells = 0;
};

std::string format_number(double x);
std::string sweep_csv(const SweepResult& r);
std::string series_csv(const TimeSeries& s);
std::string csv_name(const std::string& experiment, Scheme scheme, const std::string& gate);

struct ExperimentOptions {
  PhysicalParams physical;
  int jobs = 0;
  int series_samples = 201;
  int error_grid = 21;
  double error_span = 0.1;
  int rate_grid = 11;
  double rate_max = 0.0;          ///< 0 selects 5 * gamma2
  double rydberg_rate_max = 1e5;  ///< 1/s
};

ExperimentOutput figure2_experiment(const ExperimentOptions& o = {});
ExperimentOutput figure3_experiment(const ExperimentOptions& o = {});
ExperimentOutput figure5_experiment(const ExperimentOptions& o = {});
ExperimentOutput figure6_experiment(const ExperimentOptions& o = {});

struct DurationRow {
  Scheme scheme;
  double duration = 0.0;
  double in_tau = 0.0;
};

std::vector<DurationRow> duration_table(double omega0);
ExperimentOutput durations_experiment(const ExperimentOptions& o = {});

/// Dispatches on figure2, figure3, figure5, figure6, durations.
ExperimentOutput run_experiment(const std::string& name, const ExperimentOptions& o);
std::vector<std::string> experiment_names();

}  // namespace geomgate
