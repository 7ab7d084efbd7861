import math

import numpy as np
import pytest

import geomgate as gg

OMEGA0 = 2 * math.pi * 6.25e3


def test_u1_schedule_realizes_the_closed_form_gate():
    fam = gg.u1_family(OMEGA0)
    segments = gg.synth_nngqc(fam)
    assert len(segments) == 2
    u = gg.propagate_schedule(segments)
    assert u.shape == (2, 2)
    assert gg.phase_insensitive_distance(u, gg.nngqc_gate(gg.family_boundaries(fam))) < 1e-12
    expected = 0.5 * np.array([[1 + 1j, -1 - 1j], [1 - 1j, 1 - 1j]])
    assert gg.phase_insensitive_distance(u, expected) < 1e-12


def test_hadamard_and_zxz_reading():
    u2 = gg.nngqc_gate(gg.u2_boundaries())
    h = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    assert gg.phase_insensitive_distance(u2, h) < 1e-14
    theta, alpha, beta = gg.extract_zxz(gg.u1_boundaries())
    assert theta == pytest.approx(math.pi / 2)
    assert gg.phase_insensitive_distance(gg.zxz_gate(theta, alpha, beta), gg.nngqc_gate(gg.u1_boundaries())) < 1e-12


def test_open_system_fidelity_below_one():
    segments = gg.scheme_schedule("nngqc", "U1", OMEGA0)
    rho0 = np.array([[1, 0], [0, 0]], dtype=complex)
    rho = gg.evolve_density(segments, rho0, 2 * OMEGA0 * 1e-4, 2 * OMEGA0 * 1e-3, "projector")
    assert np.trace(rho).real == pytest.approx(1.0)
    ideal = gg.gate_target("U1") @ np.array([1, 0], dtype=complex)
    f = gg.state_fidelity(ideal, rho)
    assert 0.9977 < f < 0.9997


def test_holonomy_summary():
    s = gg.holonomy_summary(gg.u1_family(1.0))
    assert abs(s["dynamical_phase"]) < 1e-10
    assert s["geometric_phase"] == pytest.approx(math.pi / 4)
    assert s["unconventional_ratio"] == pytest.approx(-1.0)
    assert s["non_abelian_witness"] > 0


def test_durations_and_experiment():
    assert gg.duration_table(OMEGA0) == {"nngqc": 1.0, "ngqc": 2.0, "dg": 2.5}
    out = gg.run_experiment("durations", "omega0 = 6.25 khz\n", jobs=1)
    assert "durations__all__U1.csv" in out["files"]
    assert out["scalars"]["dg_duration_over_tau"] == 2.5


def test_rydberg_gate():
    r = gg.rydberg_protocol(2 * math.pi * 10e6)
    assert r["leakage"] < 1e-3
    assert r["avg_gate_fidelity"] > 0.999
    assert r["projected"].shape == (4, 4)


def test_errors_surface_as_value_errors():
    with pytest.raises(ValueError):
        gg.parse_frequency("6.25")
    with pytest.raises(gg.GeomgateError):
        gg.run_experiment("durations", "bogus = 1\n")
    with pytest.raises(ValueError):
        gg.gate_target("U7")
