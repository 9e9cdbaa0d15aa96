import math

import numpy as np
import pytest

import fcs_witness as fw


def test_version_and_exports():
    assert isinstance(fw.__version__, str)
    assert "scgf" in fw.__all__


def test_driven_qubit_mean_rate():
    m = fw.build_driven_qubit(fw.DrivenQubitParams(omega=0.5, gamma=1.0))
    c = fw.cumulants_fd(m)
    assert abs(c.kappa10 - 1.0 / 6.0) <= 1e-6
    assert abs(fw.scgf(m, [0.0])) <= 1e-10
    rho = fw.steady_state(m)
    assert abs(np.trace(rho) - 1.0) <= 1e-12
    assert abs(fw.total_emission_rate(m, rho) - 1.0 / 6.0) <= 1e-10


def test_witness_identities():
    c = fw.CumulantTable(0.2, 0.15, 0.1, 0.02, 0.08)
    assert fw.m3_direct(c) == pytest.approx(0.1 * 0.08 - 0.02**2, rel=1e-12)
    assert fw.m3_appendix(c) == pytest.approx(0.02 * (0.1 - 0.02), rel=1e-12)
    mm = np.asarray(fw.moment_matrix(c, 3))
    assert mm.shape == (3, 3)
    assert mm[0, 0] == 1.0
    report = fw.evaluate_witness(c)
    assert report.m3_direct == pytest.approx(fw.m3_direct(c))
    moments = fw.cumulants_to_moments(c)
    assert moments["m20"] == pytest.approx(0.1 + 0.2**2)


def test_coupled_atoms_symmetric_rates():
    m = fw.build_coupled_atoms(fw.CoupledAtomsParams())
    assert [j[0] for j in m.jumps] == ["D1", "D2", "phi1", "phi2"]
    c = fw.cumulants_fd(m)
    assert c.kappa10 == pytest.approx(c.kappa01, abs=1e-9)


def test_trajectories_and_stats():
    m = fw.build_driven_qubit(fw.DrivenQubitParams())
    counts = fw.simulate_counts(m, t_final=50.0, n_traj=200, seed=4, t_warmup=5.0)
    assert counts.shape == (200, 1)
    again = fw.simulate_counts(m, t_final=50.0, n_traj=200, seed=4, t_warmup=5.0)
    assert np.array_equal(counts, again)
    stats = fw.empirical_stats(counts, 50.0)
    mean = stats["means"][0]
    assert abs(mean - 1.0 / 6.0) <= 5.0 * stats["se_means"][0]


def test_rate_function_zero_at_mean():
    m = fw.build_driven_qubit(fw.DrivenQubitParams())
    sample = fw.rate_function(m, 1.0 / 6.0)
    assert abs(sample.phi) <= 1e-6
    assert not sample.at_boundary


def test_invalid_parameters_raise():
    with pytest.raises(fw.FcsError):
        fw.build_driven_qubit(fw.DrivenQubitParams(gamma=0.0))
    with pytest.raises(fw.FcsError):
        fw.build_circuit_atoms(fw.CircuitParams(zeta=2.0))
    assert not math.isnan(fw.CircuitParams(zeta=math.pi / 4).reflectivity)
