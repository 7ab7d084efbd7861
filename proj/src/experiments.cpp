#include "geomgate/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "geomgate/gate_algebra.hpp"

namespace geomgate {
namespace {

bool is_single_qubit(Scheme s) { return s != Scheme::kRydberg; }

struct PointParams {
  double zeta = 0.0;
  double delta = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

void assign(PointParams& p, const std::string& name, double value) {
  if (name == "zeta") {
    p.zeta = value;
  } else if (name == "delta") {
    p.delta = value;
  } else if (name == "gamma1") {
    p.gamma1 = value;
  } else if (name == "gamma2") {
    p.gamma2 = value;
  } else {
    throw GeomgateError("unknown sweep axis '" + name + "'");
  }
}

double single_qubit_point(const SweepSpec& spec, const PointParams& q) {
  const PhysicalParams& f = spec.fixed;
  const Matrix target = gate_target(spec.gate);
  const PulseSchedule s = scheme_schedule(spec.scheme, spec.gate, f.omega0);
  const PiecewiseHamiltonian h = schedule_to_hamiltonian(s, {q.zeta, q.delta, f.omega0});
  Vector psi0 = Vector::Zero(2);
  psi0(0) = 1.0;
  if (q.gamma1 == 0.0 && q.gamma2 == 0.0) {
    const Matrix u = propagate_unitary(h, f.unitary_tol);
    switch (spec.metric) {
      case Metric::kStateFidelity:
        return std::norm((target * psi0).dot(u * psi0));
      case Metric::kThetaAvgGateFidelity:
        return theta_avg_gate_fidelity_unitary(target, u);
      case Metric::kAvgGateFidelity:
        return avg_gate_fidelity(target, u);
    }
  }
  const Matrix t = lindblad_transfer(h, Dissipators::qubit(q.gamma1, q.gamma2, f.convention), f.lindblad_tol);
  switch (spec.metric) {
    case Metric::kStateFidelity:
      return state_fidelity(target * psi0, apply_transfer(t, psi0 * psi0.adjoint()));
    case Metric::kThetaAvgGateFidelity:
      return theta_avg_gate_fidelity_transfer(target, t);
    case Metric::kAvgGateFidelity:
      return avg_gate_fidelity_channel(target, [&t](const Matrix& rho) { return apply_transfer(t, rho); });
  }
  throw GeomgateError("unsupported metric");
}

Step2Pulse protocol_step2(const RydbergParams& p) { return synth_step2_pulse(p, two_qubit_step2_family(p)); }

double rydberg_point(const SweepSpec& spec, const PointParams& q) {
  const PhysicalParams& f = spec.fixed;
  const RydbergParams p = f.rydberg();
  const Step2Pulse pulse = protocol_step2(p);
  const Matrix target = ideal_two_qubit_target();
  const PiecewiseHamiltonian h = protocol_hamiltonian(p, pulse);
  const Matrix t = lindblad_transfer(h, rydberg_dissipators(q.gamma1, q.gamma2, f.convention), f.lindblad_tol);
  const auto channel = [&t](const Matrix& rho4) {
    return project_computational(apply_transfer(t, embed_computational(rho4)));
  };
  switch (spec.metric) {
    case Metric::kStateFidelity: {
      const Vector psi0 = reference_initial_state();
      return state_fidelity(target * psi0, channel(psi0 * psi0.adjoint()));
    }
    case Metric::kAvgGateFidelity:
      return avg_gate_fidelity_channel(target, channel);
    case Metric::kThetaAvgGateFidelity:
      break;
  }
  throw GeomgateError("theta-averaged fidelity is defined for single-qubit gates only");
}

std::string axis_problem(const Axis& a, const char* which) {
  std::ostringstream os;
  if (a.name != "zeta" && a.name != "delta" && a.name != "gamma1" && a.name != "gamma2") {
    os << which << ": unknown axis name '" << a.name << "'";
  } else if (a.count < 2) {
    os << which << ": count must be >= 2";
  } else if (!(a.min < a.max)) {
    os << which << ": min must be < max";
  } else if ((a.name == "gamma1" || a.name == "gamma2") && a.min < 0.0) {
    os << which << ": rates must be >= 0";
  }
  return os.str();
}

double fraction_geq(const SweepResult& a, const SweepResult& b) {
  int n = 0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    if (a.values[k] >= b.values[k]) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(a.values.size());
}

SweepResult difference(const SweepResult& a, const SweepResult& b) {
  SweepResult d = a;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    d.values[k] = (a.values[k] < 0 || b.values[k] < 0) ? -1.0 : a.values[k] - b.values[k];
  }
  return d;
}

std::string difference_csv(const SweepResult& d) {
  // Differences may be negative, so flags are carried explicitly.
  std::string out = d.spec.axis1.name + "," + d.spec.axis2.name + ",difference,flag\n";
  for (int i = 0; i < d.spec.axis1.count; ++i) {
    for (int j = 0; j < d.spec.axis2.count; ++j) {
      out += format_number(d.spec.axis1.value(i)) + "," + format_number(d.spec.axis2.value(j)) + "," +
             format_number(d.at(i, j)) + ",0\n";
    }
  }
  return out;
}

SweepSpec error_sweep(Scheme scheme, const ExperimentOptions& o) {
  SweepSpec s;
  s.scheme = scheme;
  s.gate = "U1";
  s.axis1 = {"zeta", -o.error_span, o.error_span, o.error_grid};
  s.axis2 = {"delta", -o.error_span, o.error_span, o.error_grid};
  s.fixed = o.physical;
  s.fixed.gamma1 = 0.0;
  s.fixed.gamma2 = 0.0;
  s.metric = Metric::kThetaAvgGateFidelity;
  return s;
}

SweepSpec rate_sweep(Scheme scheme, const ExperimentOptions& o) {
  const double max = o.rate_max > 0.0 ? o.rate_max : 5.0 * o.physical.gamma2;
  SweepSpec s;
  s.scheme = scheme;
  s.gate = "U1";
  s.axis1 = {"gamma1", 0.0, max, o.rate_grid};
  s.axis2 = {"gamma2", 0.0, max, o.rate_grid};
  s.fixed = o.physical;
  s.metric = Metric::kThetaAvgGateFidelity;
  return s;
}

double corner_min_margin(const SweepResult& a, const SweepResult& b) {
  const int n1 = a.spec.axis1.count - 1, n2 = a.spec.axis2.count - 1;
  double m = 1.0;
  for (const auto& [i, j] : {std::pair{0, 0}, std::pair{0, n2}, std::pair{n1, 0}, std::pair{n1, n2}}) {
    m = std::min(m, a.at(i, j) - b.at(i, j));
  }
  return m;
}

ExperimentOutput comparison_experiment(const std::string& name, Scheme other, const ExperimentOptions& o) {
  ExperimentOutput out;
  out.name = name;
  const SweepResult nn = run_sweep(error_sweep(Scheme::kNngqc, o), o.jobs);
  const SweepResult ot = run_sweep(error_sweep(other, o), o.jobs);
  const SweepResult nn_rates = run_sweep(rate_sweep(Scheme::kNngqc, o), o.jobs);
  const SweepResult ot_rates = run_sweep(rate_sweep(other, o), o.jobs);
  const std::string pair = "nngqc-" + to_string(other);
  out.files.push_back({csv_name(name, Scheme::kNngqc, "U1"), sweep_csv(nn)});
  out.files.push_back({csv_name(name, other, "U1"), sweep_csv(ot)});
  out.files.push_back({name + "__" + pair + "__U1.csv", difference_csv(difference(nn, ot))});
  out.files.push_back({csv_name(name + "_rates", Scheme::kNngqc, "U1"), sweep_csv(nn_rates)});
  out.files.push_back({csv_name(name + "_rates", other, "U1"), sweep_csv(ot_rates)});
  out.files.push_back({name + "_rates__" + pair + "__U1.csv", difference_csv(difference(nn_rates, ot_rates))});
  out.scalars.push_back({"fraction_nngqc_geq_" + to_string(other), fraction_geq(nn, ot)});
  out.scalars.push_back({"corner_min_margin_nngqc_minus_" + to_string(other), corner_min_margin(nn, ot)});
  out.scalars.push_back({"rates_fraction_nngqc_geq_" + to_string(other), fraction_geq(nn_rates, ot_rates)});
  out.flagged_cells = nn.flagged() + ot.flagged() + nn_rates.flagged() + ot_rates.flagged();
  return out;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::kNngqc:
      return "nngqc";
    case Scheme::kNgqc:
      return "ngqc";
    case Scheme::kDg:
      return "dg";
    case Scheme::kRydberg:
      return "rydberg";
  }
  return "unknown";
}

std::string to_string(Metric m) {
  switch (m) {
    case Metric::kStateFidelity:
      return "state_fidelity";
    case Metric::kThetaAvgGateFidelity:
      return "theta_avg_gate_fidelity";
    case Metric::kAvgGateFidelity:
      return "avg_gate_fidelity";
  }
  return "unknown";
}

Scheme parse_scheme(const std::string& text) {
  for (const Scheme s : {Scheme::kNngqc, Scheme::kNgqc, Scheme::kDg, Scheme::kRydberg}) {
    if (to_string(s) == text) return s;
  }
  throw GeomgateError("unknown scheme '" + text + "' (expected nngqc, ngqc, dg, rydberg)");
}

Metric parse_metric(const std::string& text) {
  for (const Metric m : {Metric::kStateFidelity, Metric::kThetaAvgGateFidelity, Metric::kAvgGateFidelity}) {
    if (to_string(m) == text) return m;
  }
  throw GeomgateError("unknown metric '" + text + "'");
}

RydbergParams PhysicalParams::rydberg() const {
  RydbergParams p = RydbergParams::scaled(rydberg_omega0, delta_over_omega, v_over_omega);
  if (rydberg_omega1 > 0.0) p.omega1 = rydberg_omega1;
  return p;
}

Matrix gate_target(const std::string& gate) {
  if (gate == "U1") return nngqc_gate(u1_boundaries());
  if (gate == "U2") return hadamard();
  throw GeomgateError("unknown gate '" + gate + "' (expected U1 or U2)");
}

PulseSchedule scheme_schedule(Scheme scheme, const std::string& gate, double omega0) {
  const Matrix target = gate_target(gate);
  switch (scheme) {
    case Scheme::kNngqc:
      return synth_nngqc(gate == "U1" ? u1_family(omega0) : u2_family(omega0));
    case Scheme::kNgqc: {
      const CyclicGateParams c = ngqc_params_for(target);
      return synth_ngqc(c.gamma, c.mu, c.eta0, omega0);
    }
    case Scheme::kDg:
      return synth_dg(gate == "U1" ? u1_angles() : u2_angles(), omega0);
    case Scheme::kRydberg:
      break;
  }
  throw GeomgateError("scheme_schedule: the rydberg scheme has no single-qubit schedule");
}

double Axis::value(int i) const {
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

void SweepSpec::validate() const {
  std::vector<std::string> problems;
  for (const auto& [axis, which] : {std::pair{&axis1, "axis1"}, std::pair{&axis2, "axis2"}}) {
    if (std::string p = axis_problem(*axis, which); !p.empty()) problems.push_back(p);
  }
  if (axis1.name == axis2.name) problems.push_back("axis1 and axis2 must differ");
  if (is_single_qubit(scheme) && gate != "U1" && gate != "U2") {
    problems.push_back("gate must be U1 or U2 for single-qubit schemes");
  }
  if (scheme == Scheme::kRydberg) {
    if (metric == Metric::kThetaAvgGateFidelity) problems.push_back("rydberg scheme needs a two-qubit metric");
    for (const Axis* a : {&axis1, &axis2}) {
      if (a->name == "zeta" || a->name == "delta") problems.push_back("rydberg sweeps take rate axes only");
    }
  }
  if (!(fixed.omega0 > 0.0)) problems.push_back("omega0 must be positive");
  if (problems.empty()) return;
  std::string msg = "invalid sweep:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw GeomgateError(msg);
}

int SweepResult::flagged() const {
  int n = 0;
  for (const double v : values) {
    if (v == -1.0) ++n;
  }
  return n;
}

double evaluate_point(const SweepSpec& spec, double a1, double a2) {
  PointParams q;
  q.zeta = spec.zeta;
  q.delta = spec.delta;
  if (spec.scheme == Scheme::kRydberg) {
    q.gamma1 = spec.fixed.rydberg_gamma1;
    q.gamma2 = spec.fixed.rydberg_gamma2;
  } else {
    q.gamma1 = spec.fixed.gamma1;
    q.gamma2 = spec.fixed.gamma2;
  }
  assign(q, spec.axis1.name, a1);
  assign(q, spec.axis2.name, a2);
  return spec.scheme == Scheme::kRydberg ? rydberg_point(spec, q) : single_qubit_point(spec, q);
}

SweepResult run_sweep(const SweepSpec& spec, int jobs) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const int n1 = spec.axis1.count, n2 = spec.axis2.count;
  const std::size_t total = static_cast<std::size_t>(n1) * n2;
  SweepResult r;
  r.spec = spec;
  r.values.assign(total, -1.0);
  r.errors.assign(total, std::string());

  int workers = jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(total)));
  std::atomic<std::size_t> next{0};
  const auto work = [&]() {
    for (std::size_t k = next++; k < total; k = next++) {
      const int i = static_cast<int>(k / n2), j = static_cast<int>(k % n2);
      try {
        const double v = evaluate_point(spec, spec.axis1.value(i), spec.axis2.value(j));
        if (!std::isfinite(v) || v < -1e-9 || v > 1.0 + 1e-9) {
          r.errors[k] = "metric value out of range";
        } else {
          r.values[k] = std::max(0.0, v);
        }
      } catch (const std::exception& e) {
        r.errors[k] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

TimeSeries single_qubit_series(const PulseSchedule& s, const PhysicalParams& p, const Vector& psi0, int count) {
  if (count < 2) throw GeomgateError("single_qubit_series: need at least two samples");
  const PiecewiseHamiltonian h = schedule_to_hamiltonian(s);
  const Dissipators d = Dissipators::qubit(p.gamma1, p.gamma2, p.convention);
  const double total = h.total_duration();
  TimeSeries out;
  Matrix rho = psi0 * psi0.adjoint();
  Vector ideal = psi0;
  double prev = 0.0;
  for (int k = 0; k < count; ++k) {
    const double t = (k == 0) ? 0.0 : (k == count - 1 ? total : total * k / (count - 1));
    if (k > 0) {
      const PiecewiseHamiltonian part = h.slice(prev, t);
      rho = apply_transfer(lindblad_transfer(part, d, p.lindblad_tol), rho);
      ideal = propagate_unitary(part, p.unitary_tol) * ideal;
      prev = t;
    }
    out.t.push_back(t);
    out.pop0.push_back(rho(0, 0).real());
    out.pop1.push_back(rho(1, 1).real());
    out.fidelity.push_back(state_fidelity(ideal, rho));
  }
  return out;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string sweep_csv(const SweepResult& r) {
  std::string out = r.spec.axis1.name + "," + r.spec.axis2.name + "," + to_string(r.spec.metric) + ",flag\n";
  for (int i = 0; i < r.spec.axis1.count; ++i) {
    for (int j = 0; j < r.spec.axis2.count; ++j) {
      const double v = r.at(i, j);
      out += format_number(r.spec.axis1.value(i)) + "," + format_number(r.spec.axis2.value(j)) + "," +
             format_number(v) + "," + (v == -1.0 ? "1" : "0") + "\n";
    }
  }
  return out;
}

std::string series_csv(const TimeSeries& s) {
  std::string out = "t_s,pop_0,pop_1,fidelity\n";
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    out += format_number(s.t[k]) + "," + format_number(s.pop0[k]) + "," + format_number(s.pop1[k]) + "," +
           format_number(s.fidelity[k]) + "\n";
  }
  return out;
}

std::string csv_name(const std::string& experiment, Scheme scheme, const std::string& gate) {
  return experiment + "__" + to_string(scheme) + "__" + gate + ".csv";
}

ExperimentOutput figure2_experiment(const ExperimentOptions& o) {
  ExperimentOutput out;
  out.name = "figure2";
  const PhysicalParams& p = o.physical;
  const Matrix target = gate_target("U1");
  Vector psi0 = Vector::Zero(2);
  psi0(0) = 1.0;
  const Dissipators d = Dissipators::qubit(p.gamma1, p.gamma2, p.convention);
  for (const Scheme scheme : {Scheme::kNngqc, Scheme::kNgqc}) {
    const PulseSchedule s = scheme_schedule(scheme, "U1", p.omega0);
    const TimeSeries series = single_qubit_series(s, p, psi0, o.series_samples);
    out.files.push_back({csv_name("figure2", scheme, "U1"), series_csv(series)});

    // Gate fidelity along the pulse: Theta-averaged fidelity of the open
    // evolution up to t against the closed evolution up to t.
    const PiecewiseHamiltonian h = schedule_to_hamiltonian(s);
    std::string gate_body = "t_s,gate_fidelity\n";
    Matrix transfer = identity(4);
    Matrix closed = identity(2);
    double prev = 0.0;
    for (std::size_t k = 0; k < series.t.size(); ++k) {
      const double t = series.t[k];
      if (k > 0) {
        const PiecewiseHamiltonian part = h.slice(prev, t);
        transfer = lindblad_transfer(part, d, p.lindblad_tol) * transfer;
        closed = propagate_unitary(part, p.unitary_tol) * closed;
        prev = t;
      }
      gate_body += format_number(t) + "," + format_number(theta_avg_gate_fidelity_transfer(closed, transfer)) + "\n";
    }
    out.files.push_back({csv_name("figure2_gate", scheme, "U1"), gate_body});

    const Matrix full = lindblad_transfer(h, d, p.lindblad_tol);
    const double state = state_fidelity(target * psi0, apply_transfer(full, psi0 * psi0.adjoint()));
    const double gate_error = 1.0 - theta_avg_gate_fidelity_transfer(target, full);
    out.scalars.push_back({to_string(scheme) + "_state_fidelity", state});
    out.scalars.push_back({to_string(scheme) + "_gate_error", gate_error});
  }
  const double nn = 1.0 - out.scalars[0].second, ng = 1.0 - out.scalars[2].second;
  out.scalars.push_back({"state_error_ratio_nngqc_over_ngqc", nn / ng});
  return out;
}

ExperimentOutput figure3_experiment(const ExperimentOptions& o) {
  return comparison_experiment("figure3", Scheme::kNgqc, o);
}

ExperimentOutput figure6_experiment(const ExperimentOptions& o) {
  return comparison_experiment("figure6", Scheme::kDg, o);
}

ExperimentOutput figure5_experiment(const ExperimentOptions& o) {
  ExperimentOutput out;
  out.name = "figure5";
  const PhysicalParams& phys = o.physical;
  const RydbergParams p = phys.rydberg();
  const Step2Pulse pulse = protocol_step2(p);
  const PiecewiseHamiltonian h = protocol_hamiltonian(p, pulse);
  const Matrix target = ideal_two_qubit_target();
  const Vector psi4 = reference_initial_state();
  const Vector ideal9 = embed_computational(Vector(target * psi4));
  const Dissipators d = rydberg_dissipators(phys.rydberg_gamma1, phys.rydberg_gamma2, phys.convention);

  // Population time series and fidelity to the target state.
  std::string series = "t_s,pop_00,pop_01,pop_10,pop_11,pop_rydberg,fidelity\n";
  const double total = h.total_duration();
  Matrix rho = embed_computational(Vector(psi4));
  rho = rho * rho.adjoint();
  double prev = 0.0;
  for (int k = 0; k < o.series_samples; ++k) {
    const double t = (k == 0) ? 0.0 : (k == o.series_samples - 1 ? total : total * k / (o.series_samples - 1));
    if (k > 0) {
      rho = apply_transfer(lindblad_transfer(h.slice(prev, t), d, phys.lindblad_tol), rho);
      prev = t;
    }
    double computational = 0.0;
    std::string row = format_number(t);
    for (const int idx : kComputationalIndices) {
      row += "," + format_number(rho(idx, idx).real());
      computational += rho(idx, idx).real();
    }
    row += "," + format_number(rho.trace().real() - computational);
    row += "," + format_number(state_fidelity(ideal9, rho));
    series += row + "\n";
  }
  out.files.push_back({csv_name("figure5_series", Scheme::kRydberg, "two_qubit"), series});

  const ProtocolResult pr = run_protocol(p, pulse);
  const double state = std::norm(ideal9.dot(pr.full * embed_computational(Vector(psi4))));
  out.scalars.push_back({"state_fidelity_zero_relaxation", state});
  out.scalars.push_back({"avg_gate_fidelity_zero_relaxation", avg_gate_fidelity(target, pr.projected)});
  out.scalars.push_back({"leakage", pr.leakage});
  out.scalars.push_back({"step2_duration_s", pulse.duration()});

  SweepSpec spec;
  spec.scheme = Scheme::kRydberg;
  spec.gate = "two_qubit";
  spec.axis1 = {"gamma1", 0.0, o.rydberg_rate_max, o.rate_grid};
  spec.axis2 = {"gamma2", 0.0, o.rydberg_rate_max, o.rate_grid};
  spec.fixed = phys;
  spec.metric = Metric::kAvgGateFidelity;
  const SweepResult grid = run_sweep(spec, o.jobs);
  out.files.push_back({csv_name("figure5", Scheme::kRydberg, "two_qubit"), sweep_csv(grid)});
  out.scalars.push_back({"grid_zero_rate_avg_gate_fidelity", grid.at(0, 0)});
  out.scalars.push_back({"grid_max_rate_avg_gate_fidelity", grid.at(o.rate_grid - 1, o.rate_grid - 1)});
  out.flagged_cells = grid.flagged();
  return out;
}

std::vector<DurationRow> duration_table(double omega0) {
  const double tau = kPi / omega0;
  std::vector<DurationRow> rows;
  for (const Scheme s : {Scheme::kNngqc, Scheme::kNgqc, Scheme::kDg}) {
    const double t = scheme_schedule(s, "U1", omega0).total_duration();
    rows.push_back({s, t, t / tau});
  }
  return rows;
}

ExperimentOutput durations_experiment(const ExperimentOptions& o) {
  ExperimentOutput out;
  out.name = "durations";
  std::string body = "scheme,duration_s,duration_over_tau\n";
  for (const auto& row : duration_table(o.physical.omega0)) {
    body += to_string(row.scheme) + "," + format_number(row.duration) + "," + format_number(row.in_tau) + "\n";
    out.scalars.push_back({to_string(row.scheme) + "_duration_over_tau", row.in_tau});
  }
  out.files.push_back({"durations__all__U1.csv", body});
  return out;
}

std::vector<std::string> experiment_names() { return {"figure2", "figure3", "figure5", "figure6", "durations"}; }

ExperimentOutput run_experiment(const std::string& name, const ExperimentOptions& o) {
  if (name == "figure2") return figure2_experiment(o);
  if (name == "figure3") return figure3_experiment(o);
  if (name == "figure5") return figure5_experiment(o);
  if (name == "figure6") return figure6_experiment(o);
  if (name == "durations") return durations_experiment(o);
  throw GeomgateError("unknown experiment '" + name + "'");
}

}  // namespace geomgate
