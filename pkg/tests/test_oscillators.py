import numpy as np
import pytest

from netprobe.graphs import build_laplacian, generate_er_gnl, make_graph
from netprobe.oscillators import (
    GaussianState,
    OscillatorNetwork,
    ProbeSetup,
    evolve_covariance,
    evolve_mean_excitation,
    frequency_sweep,
    initial_covariance,
    network_eigenfrequencies,
    network_modes,
    probe_mean_excitation,
    symplectic_eigenvalues,
    total_mean_energy,
    write_peaks,
    write_sweep_trace,
)
from netprobe.spectra import read_spectrum

K2 = make_graph(2, [(0, 1)])
STAR4 = make_graph(4, [(0, 1), (0, 2), (0, 3)])


def net_of(g, omega0=0.2, coupling=0.1, temp=0.3):
    return OscillatorNetwork(build_laplacian(g), omega0, coupling, temp)


def test_eigenfrequency_map():
    freqs = network_eigenfrequencies(net_of(K2))
    assert freqs == pytest.approx([0.2, np.sqrt(0.24)])
    assert freqs[0] == pytest.approx(0.2)  # lambda_1 = 0 -> bare frequency


def test_eigenfrequency_single_mode_value():
    # lambda = 3 at omega0 = 0.2, g = 0.1
    assert np.sqrt(0.2**2 + 0.1 * 3.0) == pytest.approx(0.5830951894845301)


def test_network_validation():
    with pytest.raises(ValueError):
        OscillatorNetwork(build_laplacian(K2), -0.2, 0.1, 0.3)
    with pytest.raises(ValueError):
        OscillatorNetwork(np.array([[1.0, 2.0], [0.0, 1.0]]), 0.2, 0.1, 0.3)


def test_initial_covariance_thermal_single_oscillator():
    # one isolated oscillator: <q^2> = coth(omega0/2T)/(2 omega0)
    net = OscillatorNetwork(np.zeros((1, 1)), 0.2, 0.1, 0.3)
    state = initial_covariance(net, ProbeSetup(0.5, 0.0, 0))
    assert state.covariance[0, 0] == pytest.approx(7.775741699048608)
    # vacuum probe block
    assert state.covariance[1, 1] == pytest.approx(1.0 / (2 * 0.5))
    assert state.covariance[3, 3] == pytest.approx(0.5 / 2)


def test_initial_covariance_vacuum_lower_bound():
    net = net_of(K2, temp=0.0)
    state = initial_covariance(net, ProbeSetup(0.5, 0.0, 0))
    top = network_eigenfrequencies(net)[-1]
    assert np.all(np.diag(state.covariance)[:2] >= 1.0 / (2 * top) - 1e-12)


def test_initial_covariance_classical_limit():
    # coth(x) -> 1/x: mode variance approaches T / Omega^2
    net = net_of(K2, temp=300.0)
    freqs, vec = network_modes(net)
    state = initial_covariance(net, ProbeSetup(0.5, 0.0, 0))
    qq = vec.T @ state.covariance[:2, :2] @ vec
    assert np.allclose(np.diag(qq), 300.0 / freqs**2, rtol=1e-3)


def test_decoupled_probe_stays_empty():
    net = net_of(K2)
    times = np.linspace(0.0, 500.0, 100)
    n_t = evolve_mean_excitation(net, ProbeSetup(0.45, 0.0, 0), times)
    assert np.allclose(n_t, 0.0, atol=1e-12)


def test_initial_excitation_zero():
    net = net_of(K2)
    n_t = evolve_mean_excitation(net, ProbeSetup(0.45, 0.0025, 0), [0.0])
    assert n_t[0] == pytest.approx(0.0, abs=1e-12)


def test_fast_path_matches_full_covariance(rng):
    g = generate_er_gnl(6, 9, rng)
    net = net_of(g)
    probe = ProbeSetup(0.51, 0.002, 2)
    for t in [3.7, 120.0, 999.5]:
        fast = evolve_mean_excitation(net, probe, [t])[0]
        full = probe_mean_excitation(evolve_covariance(net, probe, t), probe.omega_s)
        assert fast == pytest.approx(full, abs=1e-12)


def test_energy_conservation(rng):
    g = generate_er_gnl(6, 9, rng)
    net = net_of(g)
    probe = ProbeSetup(0.51, 0.002, 0)
    e0 = total_mean_energy(net, probe, initial_covariance(net, probe))
    for t in [10.0, 500.0, 2000.0]:
        e_t = total_mean_energy(net, probe, evolve_covariance(net, probe, t))
        assert abs(e_t - e0) / e0 < 1e-8


def test_covariance_stays_physical(rng):
    g = generate_er_gnl(6, 9, rng)
    net = net_of(g)
    probe = ProbeSetup(0.51, 0.002, 0)
    for t in [0.0, 250.0, 1750.0]:
        vals = symplectic_eigenvalues(evolve_covariance(net, probe, t))
        assert np.all(vals >= 0.5 - 1e-9)


def test_vacuum_stationary_when_decoupled():
    net = net_of(K2, temp=0.0)
    probe = ProbeSetup(0.45, 0.0, 0)
    start = initial_covariance(net, probe).covariance
    evolved = evolve_covariance(net, probe, 321.0).covariance
    assert np.allclose(evolved, start, atol=1e-10)


def test_probe_coupling_too_strong_raises():
    net = net_of(K2)
    with pytest.raises(ValueError, match="positive definite"):
        evolve_mean_excitation(net, ProbeSetup(0.05, 1.0, 0), [1.0])


def test_sweep_finds_k2_frequencies():
    net = net_of(K2)
    step = (0.55 - 0.18) / 1500
    result = frequency_sweep(net, 0, 0.18, 0.55, step=step, k=0.001)
    assert result.complete
    exact = network_eigenfrequencies(net)
    assert np.all(np.abs(result.frequencies - exact) <= step)


def test_sweep_flags_degenerate_star():
    # star spectrum {0, 1, 1, 4}: the twin eigenfrequency merges into one peak
    net = net_of(STAR4, coupling=0.04)
    result = frequency_sweep(net, 1, 0.18, 0.5, step=(0.5 - 0.18) / 1500, k=0.001)
    assert not result.complete
    assert len(result.frequencies) == 3
    exact = np.unique(np.round(network_eigenfrequencies(net), 9))
    assert np.all(np.abs(result.frequencies - exact) <= 2e-3)


def test_sweep_rejects_bad_range():
    with pytest.raises(ValueError):
        frequency_sweep(net_of(K2), 0, 0.5, 0.2)


def test_sweep_outputs_roundtrip(tmp_path):
    net = net_of(K2)
    result = frequency_sweep(net, 0, 0.18, 0.55, step=(0.55 - 0.18) / 400, k=0.001)
    trace = tmp_path / "trace.csv"
    write_sweep_trace(result, trace)
    lines = trace.read_text().splitlines()
    assert lines[0] == "omega_s,avg_mean_excitation"
    assert len(lines) == 1 + len(result.omega_grid)
    peaks = tmp_path / "peaks.txt"
    write_peaks(result.frequencies, peaks)
    assert np.allclose(read_spectrum(peaks), result.frequencies)


def test_gaussian_state_mode_count():
    net = net_of(K2)
    state = initial_covariance(net, ProbeSetup(0.5, 0.001, 0))
    assert isinstance(state, GaussianState) and state.modes == 3
