#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "geomgate/config.hpp"
#include "geomgate/experiments.hpp"

namespace fs = std::filesystem;
using namespace geomgate;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitFlagged = 2;

struct Common {
  std::string config;
  std::string out;
  int jobs = -1;
  double tol = 0.0;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--config", c.config, "Config file")->check(CLI::ExistingFile);
  app->add_option("--out", c.out, "Output directory (overrides run.out)");
  app->add_option("--jobs", c.jobs, "Worker threads; 0 = logical cores")->check(CLI::NonNegativeNumber);
  app->add_option("--tol", c.tol, "Integrator tolerance override")->check(CLI::PositiveNumber);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GeomgateError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunConfig load(const Common& c, const std::string& experiment) {
  RunConfig cfg;
  if (!c.config.empty()) {
    cfg = parse_config(read_file(c.config), c.config, experiment);
  } else {
    cfg.experiment = experiment;
  }
  if (!c.out.empty()) cfg.out_dir = c.out;
  if (c.jobs >= 0) cfg.options.jobs = c.jobs;
  if (c.tol > 0.0) {
    cfg.options.physical.unitary_tol = c.tol;
    cfg.options.physical.lindblad_tol = c.tol;
  }
  if (cfg.sweep) cfg.sweep->fixed = cfg.options.physical;
  return cfg;
}

// Outputs are held in memory until everything has been computed, so a failure
// never leaves a partial set of files behind.
void emit(const RunConfig& cfg, const ExperimentOutput& out) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  for (const auto& f : out.files) {
    std::ofstream os(dir / f.name, std::ios::binary);
    os << f.body;
    if (!os) throw GeomgateError("cannot write " + (dir / f.name).string());
    std::printf("wrote %s\n", (dir / f.name).string().c_str());
  }
  std::ofstream cfg_out(dir / "resolved_config.cfg", std::ios::binary);
  cfg_out << echo_config(cfg);
  for (const auto& [name, value] : out.scalars) std::printf("%s = %s\n", name.c_str(), format_number(value).c_str());
  if (out.flagged_cells > 0) std::printf("flagged cells: %d\n", out.flagged_cells);
}

int dispatch(const RunConfig& cfg) {
  ExperimentOutput out;
  if (cfg.experiment == "sweep") {
    if (!cfg.sweep) throw GeomgateError("sweep run without a [sweep] section");
    const SweepResult r = run_sweep(*cfg.sweep, cfg.options.jobs);
    out.name = "sweep";
    out.files.push_back({csv_name("sweep", cfg.sweep->scheme, cfg.sweep->gate), sweep_csv(r)});
    out.flagged_cells = r.flagged();
    for (std::size_t k = 0; k < r.errors.size(); ++k) {
      if (!r.errors[k].empty()) std::fprintf(stderr, "cell %zu: %s\n", k, r.errors[k].c_str());
    }
  } else {
    out = run_experiment(cfg.experiment, cfg.options);
  }
  emit(cfg, out);
  return out.flagged_cells > 0 ? kExitFlagged : kExitOk;
}

Axis default_axis(const std::string& name, const PhysicalParams& p, int count) {
  if (name == "gamma1" || name == "gamma2") return {name, 0.0, 5.0 * p.gamma2, count};
  return {name, -0.1, 0.1, count};
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geomgate: geometric gate synthesis and simulation"};
  app.require_subcommand(1);

  Common run_opts;
  std::string run_name;
  auto* run = app.add_subcommand("run", "Run a named experiment");
  run->add_option("experiment", run_name, "figure2, figure3, figure5, figure6, durations or sweep");
  add_common(run, run_opts);

  Common sweep_opts;
  std::string sw_scheme = "nngqc", sw_gate = "U1", sw_axes = "zeta,delta", sw_metric, sw_range;
  int sw_count = 21;
  auto* sweep = app.add_subcommand("sweep", "Run a two-axis parameter sweep");
  add_common(sweep, sweep_opts);
  sweep->add_option("--scheme", sw_scheme, "nngqc, ngqc, dg or rydberg");
  sweep->add_option("--gate", sw_gate, "U1 or U2");
  sweep->add_option("--axes", sw_axes, "Two of zeta, delta, gamma1, gamma2");
  sweep->add_option("--metric", sw_metric, "state_fidelity, theta_avg_gate_fidelity or avg_gate_fidelity");
  sweep->add_option("--range", sw_range, "min,max applied to both axes");
  sweep->add_option("--count", sw_count, "Points per axis")->check(CLI::Range(2, 100000));

  std::string syn_gate = "U1", syn_scheme = "nngqc", syn_omega = "6.25khz", syn_emit;
  auto* synth = app.add_subcommand("synth", "Synthesize a pulse schedule");
  synth->add_option("--gate", syn_gate, "U1 or U2");
  synth->add_option("--scheme", syn_scheme, "nngqc, ngqc or dg");
  synth->add_option("--omega0", syn_omega, "Rabi frequency with unit, e.g. 6.25khz");
  synth->add_option("--emit", syn_emit, "Output file (stdout if omitted)");

  std::string ver_file, ver_gate = "U1";
  double ver_tol = 1e-8;
  auto* verify = app.add_subcommand("verify", "Check a schedule file against a named gate");
  verify->add_option("--schedule", ver_file, "Schedule file")->required()->check(CLI::ExistingFile);
  verify->add_option("--gate", ver_gate, "U1 or U2");
  verify->add_option("--tol", ver_tol, "Maximum phase-insensitive distance")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*run) {
      if (run_name.empty() && run_opts.config.empty()) throw GeomgateError("run needs an experiment name or --config");
      return dispatch(load(run_opts, run_name));
    }
    if (*sweep) {
      RunConfig cfg = load(sweep_opts, "sweep");
      const std::vector<std::string> axes = split(sw_axes);
      if (axes.size() != 2) throw GeomgateError("--axes takes two comma-separated names");
      SweepSpec s = cfg.sweep.value_or(SweepSpec{});
      s.scheme = parse_scheme(sw_scheme);
      s.gate = sw_gate;
      s.fixed = cfg.options.physical;
      s.axis1 = default_axis(axes[0], s.fixed, sw_count);
      s.axis2 = default_axis(axes[1], s.fixed, sw_count);
      if (!sw_range.empty()) {
        const std::vector<std::string> r = split(sw_range);
        if (r.size() != 2) throw GeomgateError("--range takes min,max");
        s.axis1.min = s.axis2.min = std::stod(r[0]);
        s.axis1.max = s.axis2.max = std::stod(r[1]);
      }
      if (!sw_metric.empty()) {
        s.metric = parse_metric(sw_metric);
      } else if (s.scheme == Scheme::kRydberg) {
        s.metric = Metric::kAvgGateFidelity;
      }
      s.validate();
      cfg.sweep = s;
      return dispatch(cfg);
    }
    if (*synth) {
      const double omega0 = parse_frequency(syn_omega);
      const PulseSchedule s = scheme_schedule(parse_scheme(syn_scheme), syn_gate, omega0);
      if (syn_emit.empty()) {
        write_schedule(std::cout, s);
      } else {
        std::ofstream os(syn_emit, std::ios::binary);
        write_schedule(os, s);
        if (!os) throw GeomgateError("cannot write " + syn_emit);
        std::printf("wrote %s (%zu segments, duration %s s)\n", syn_emit.c_str(), s.segments.size(),
                    format_number(s.total_duration()).c_str());
      }
      return kExitOk;
    }
    if (*verify) {
      std::ifstream in(ver_file);
      const PulseSchedule s = read_schedule(in);
      const Matrix u = propagate_unitary(schedule_to_hamiltonian(s, {}), kUnitaryTolerance);
      const double d = phase_insensitive_distance(u, gate_target(ver_gate));
      std::printf("distance = %s (tol %s): %s\n", format_number(d).c_str(), format_number(ver_tol).c_str(),
                  d <= ver_tol ? "match" : "MISMATCH");
      return d <= ver_tol ? kExitOk : kExitError;
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}
