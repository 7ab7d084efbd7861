#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "geomgate/config.hpp"
#include "geomgate/experiments.hpp"
#include "geomgate/holonomy.hpp"

namespace py = pybind11;
using namespace geomgate;

namespace {

PulseSchedule schedule_from_rows(const std::vector<std::tuple<double, double, double>>& rows) {
  PulseSchedule s;
  for (const auto& [d, r, p] : rows) s.segments.push_back({d, r, p});
  return s;
}

std::vector<std::tuple<double, double, double>> rows_of(const PulseSchedule& s) {
  std::vector<std::tuple<double, double, double>> out;
  for (const auto& seg : s.segments) out.emplace_back(seg.duration, seg.rabi, seg.phase);
  return out;
}

py::dict to_dict(const ExperimentOutput& out) {
  py::dict scalars, files;
  for (const auto& [k, v] : out.scalars) scalars[py::str(k)] = v;
  for (const auto& f : out.files) files[py::str(f.name)] = f.body;
  py::dict d;
  d["name"] = out.name;
  d["scalars"] = scalars;
  d["files"] = files;
  d["flagged_cells"] = out.flagged_cells;
  return d;
}

}  // namespace

PYBIND11_MODULE(_geomgate, m) {
  m.doc() = "Geometric gate synthesis and simulation";

  py::register_exception<GeomgateError>(m, "GeomgateError", PyExc_ValueError);

  py::class_<BoundaryValues>(m, "BoundaryValues")
      .def(py::init([](double gamma, double chi_plus, double chi_minus, double eta_plus, double eta_minus) {
             return BoundaryValues{gamma, chi_plus, chi_minus, eta_plus, eta_minus};
           }),
           py::arg("gamma"), py::arg("chi_plus"), py::arg("chi_minus"), py::arg("eta_plus"), py::arg("eta_minus"))
      .def_readwrite("gamma", &BoundaryValues::gamma)
      .def_readwrite("chi_plus", &BoundaryValues::chi_plus)
      .def_readwrite("chi_minus", &BoundaryValues::chi_minus)
      .def_readwrite("eta_plus", &BoundaryValues::eta_plus)
      .def_readwrite("eta_minus", &BoundaryValues::eta_minus);

  py::class_<NngqcFamily>(m, "NngqcFamily")
      .def(py::init([](double omega0, double chi0, double phi0, double phi1, double tau) {
             return NngqcFamily{omega0, chi0, phi0, phi1, tau};
           }),
           py::arg("omega0"), py::arg("chi0"), py::arg("phi0"), py::arg("phi1"), py::arg("tau"))
      .def_readwrite("omega0", &NngqcFamily::omega0)
      .def_readwrite("chi0", &NngqcFamily::chi0)
      .def_readwrite("phi0", &NngqcFamily::phi0)
      .def_readwrite("phi1", &NngqcFamily::phi1)
      .def_readwrite("tau", &NngqcFamily::tau);

  m.def("u1_boundaries", &u1_boundaries);
  m.def("u2_boundaries", &u2_boundaries);
  m.def("u1_family", &u1_family, py::arg("omega0"));
  m.def("u2_family", &u2_family, py::arg("omega0"));
  m.def("family_boundaries", &family_boundaries);
  m.def("nngqc_gate", &nngqc_gate);
  m.def("ngqc_gate", &ngqc_gate, py::arg("gamma"), py::arg("mu"), py::arg("eta0"));
  m.def("zxz_gate", [](double theta, double alpha, double beta) { return zxz_gate({theta, alpha, beta}); },
        py::arg("theta"), py::arg("alpha"), py::arg("beta"));
  m.def("extract_zxz", [](const BoundaryValues& b) {
    const ZxzDecomposition d = extract_zxz(b);
    return py::make_tuple(d.angles.theta, d.angles.alpha, d.angles.beta);
  });
  m.def("ideal_two_qubit_target", &ideal_two_qubit_target);
  m.def("phase_insensitive_distance", &phase_insensitive_distance);

  m.def("synth_nngqc", [](const NngqcFamily& f) { return rows_of(synth_nngqc(f)); },
        "Segments as (duration_s, rabi_rad_per_s, phase_rad) tuples");
  m.def("synth_ngqc", [](double gamma, double mu, double eta0, double omega0) {
    return rows_of(synth_ngqc(gamma, mu, eta0, omega0));
  });
  m.def("scheme_schedule", [](const std::string& scheme, const std::string& gate, double omega0) {
    return rows_of(scheme_schedule(parse_scheme(scheme), gate, omega0));
  });
  m.def("gate_target", &gate_target);

  m.def(
      "propagate_schedule",
      [](const std::vector<std::tuple<double, double, double>>& rows, double zeta, double delta, double omega_ref) {
        return propagate_unitary(schedule_to_hamiltonian(schedule_from_rows(rows), {zeta, delta, omega_ref}));
      },
      py::arg("segments"), py::arg("zeta") = 0.0, py::arg("delta") = 0.0, py::arg("omega_ref") = 0.0);

  m.def(
      "evolve_density",
      [](const std::vector<std::tuple<double, double, double>>& rows, const Matrix& rho0, double gamma1,
         double gamma2, const std::string& convention) {
        if (convention != "coherence" && convention != "projector") {
          throw GeomgateError("convention must be 'coherence' or 'projector'");
        }
        const auto conv =
            convention == "coherence" ? DephasingConvention::kCoherence : DephasingConvention::kProjector;
        return propagate_lindblad(schedule_to_hamiltonian(schedule_from_rows(rows)),
                                  Dissipators::qubit(gamma1, gamma2, conv), DensityMatrix(rho0))
            .entries();
      },
      py::arg("segments"), py::arg("rho0"), py::arg("gamma1"), py::arg("gamma2"),
      py::arg("convention") = "coherence");

  m.def("state_fidelity", py::overload_cast<const Vector&, const Matrix&>(&state_fidelity));
  m.def("avg_gate_fidelity", &avg_gate_fidelity);
  m.def("theta_avg_gate_fidelity_unitary", &theta_avg_gate_fidelity_unitary);

  m.def("holonomy_summary", [](const NngqcFamily& f) {
    const Trajectory tr = family_trajectory(f);
    const Controls c = sample_controls(tr, synth_nngqc(f));
    py::dict d;
    d["geometric_phase"] = geometric_phase(tr);
    d["dynamical_phase"] = dynamical_phase(tr, c);
    d["unconventional_ratio"] = unconventional_ratio(tr, c);
    d["non_abelian_witness"] = non_abelian_witness(tr);
    d["solid_angle_residual"] = solid_angle_check(family_boundaries(f), tr);
    return d;
  });

  m.def(
      "rydberg_protocol",
      [](double omega0, double delta_ratio, double v_ratio) {
        const RydbergParams p = RydbergParams::scaled(omega0, delta_ratio, v_ratio);
        const ProtocolResult r = run_protocol(p, synth_step2_pulse(p, two_qubit_step2_family(p)));
        py::dict d;
        d["projected"] = r.projected;
        d["leakage"] = r.leakage;
        d["avg_gate_fidelity"] = avg_gate_fidelity(ideal_two_qubit_target(), r.projected);
        return d;
      },
      py::arg("omega0"), py::arg("delta_over_omega") = 17.0, py::arg("v_over_omega") = 17.0);

  m.def("duration_table", [](double omega0) {
    py::dict d;
    for (const auto& row : duration_table(omega0)) d[py::str(to_string(row.scheme))] = row.in_tau;
    return d;
  });

  m.def("experiment_names", &experiment_names);
  m.def(
      "run_experiment",
      [](const std::string& name, const std::string& config_text, int jobs) {
        RunConfig cfg = config_text.empty() ? RunConfig{} : parse_config(config_text, "<python>", name);
        cfg.options.jobs = jobs;
        ExperimentOutput out;
        {
          py::gil_scoped_release release;
          out = run_experiment(name, cfg.options);
        }
        return to_dict(out);
      },
      py::arg("name"), py::arg("config") = "", py::arg("jobs") = 0);

  m.def("parse_frequency", &parse_frequency);
  m.def("echo_config", [](const std::string& text) { return echo_config(parse_config(text, "<python>")); });
}
