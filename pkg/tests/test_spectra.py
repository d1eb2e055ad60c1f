import numpy as np
import pytest

from netprobe.graphs import build_laplacian, complete_graph, degree_sequence, make_graph, path_graph
from netprobe.spectra import (
    ConstraintSet,
    InconsistentSpectrumError,
    build_constraints,
    frequencies_to_spectrum,
    laplace_spectrum,
    perturb_values,
    read_spectrum,
    write_spectrum,
)

STAR4 = make_graph(4, [(0, 1), (0, 2), (0, 3)])


def test_spectrum_p3():
    assert np.allclose(laplace_spectrum(build_laplacian(path_graph(3))), [0.0, 1.0, 3.0])


def test_spectrum_k4():
    assert np.allclose(laplace_spectrum(build_laplacian(complete_graph(4))), [0, 4, 4, 4])


def test_spectrum_star4():
    assert np.allclose(laplace_spectrum(build_laplacian(STAR4)), [0, 1, 1, 4])


def test_spectrum_zero_clipping():
    vals = laplace_spectrum(build_laplacian(path_graph(5)))
    assert vals[0] == 0.0 and np.all(vals >= 0.0)


def test_spectrum_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        laplace_spectrum(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_constraints_p3():
    c = build_constraints(np.array([0.0, 1.0, 3.0]))
    assert c.total_degree == 4
    assert c.total_squared == 6
    assert c.d_max_bound == 2
    assert c.partial_sum_caps[0] == 2


def test_constraints_k4_complete_branch():
    c = build_constraints(np.array([0.0, 4.0, 4.0, 4.0]))
    assert c.total_degree == 12 and c.total_squared == 36
    assert c.d_min_bound == 3 and c.d_max_bound == 3


def test_constraints_star4():
    c = build_constraints(np.array([0.0, 1.0, 1.0, 4.0]))
    assert c.total_degree == 6 and c.total_squared == 12
    assert c.d_max_bound == 3 and c.d_min_bound == 1


def test_constraints_reject_bad_rounding():
    noisy = np.array([0.0, 1.4, 2.95])  # sums 4.35 / 6.3125: residues > 0.25
    with pytest.raises(InconsistentSpectrumError):
        build_constraints(noisy)
    # the same spectrum is accepted at a looser tolerance
    c = build_constraints(noisy, tol=0.5)
    assert c.total_degree == 4 and c.total_squared == 6


def test_constraints_require_sorted():
    with pytest.raises(ValueError):
        build_constraints(np.array([3.0, 1.0, 0.0]))


def test_constraint_set_validation():
    with pytest.raises(InconsistentSpectrumError):
        ConstraintSet(3, 3, 6, (2, 3), 1, 2)  # odd total degree
    with pytest.raises(InconsistentSpectrumError):
        ConstraintSet(3, 4, 2, (2, 3), 1, 2)  # squares below sum
    with pytest.raises(InconsistentSpectrumError):
        ConstraintSet(3, 4, 6, (2, 3), 2, 1)  # crossed bounds


def test_admits_true_sequence(small_atlas):
    # Every connected graph on up to 7 nodes satisfies its own constraints.
    for n, graphs in small_atlas.items():
        for g in graphs:
            c = build_constraints(laplace_spectrum(build_laplacian(g)))
            assert c.admits(degree_sequence(g)), f"violation on {n}-node graph {sorted(g.edges)}"


def test_constraint_caps_properties(rng):
    from netprobe.graphs import generate_er_gnl

    for _ in range(20):
        g = generate_er_gnl(12, 24, rng)
        c = build_constraints(laplace_spectrum(build_laplacian(g)))
        caps = np.asarray(c.partial_sum_caps)
        assert np.all(np.diff(caps) >= 0)  # nondecreasing in m
        assert caps[-1] <= c.total_degree - 1
        assert c.total_degree % 2 == 0 and c.total_squared % 2 == 0
        assert 1 <= c.d_min_bound <= c.d_max_bound <= c.n - 1


def test_frequencies_to_spectrum_example():
    lam = frequencies_to_spectrum(np.array([0.2, np.sqrt(0.34)]), 0.2, 0.1)
    assert np.allclose(lam, [0.0, 3.0])


def test_frequencies_omega0_from_data():
    # star on 4 nodes at omega0=0.2, g=0.04, forward then invert
    freqs = np.sqrt(0.2**2 + 0.04 * np.array([0.0, 1.0, 1.0, 4.0]))
    lam = frequencies_to_spectrum(freqs, None, 0.04)
    assert np.allclose(lam, [0, 1, 1, 4], atol=1e-12)


def test_frequencies_roundtrip(rng):
    lam = np.sort(rng.uniform(0.0, 8.0, size=12))
    lam[0] = 0.0
    freqs = np.sqrt(0.2**2 + 0.1 * lam)
    assert np.allclose(frequencies_to_spectrum(freqs, 0.2, 0.1), lam, atol=1e-9)


def test_frequencies_below_omega0_rejected():
    with pytest.raises(ValueError):
        frequencies_to_spectrum(np.array([0.1, 0.3]), 0.2, 0.1)


def test_perturb_identity(rng):
    v = np.array([1.0, 2.0, 3.0])
    assert np.array_equal(perturb_values(v, 0.0, rng), v)


def test_perturb_bound(rng):
    v = np.linspace(0.5, 5.0, 200)
    out = perturb_values(v, 0.01, rng)
    assert np.all(np.abs(out / v - 1.0) <= 0.01)


def test_perturb_unbiased(rng):
    # sample mean of relative shifts ~ N(0, sigma/sqrt(n)), sigma = eps/sqrt(3)
    n = 100_000
    eps = 0.01
    shifts = perturb_values(np.ones(n), eps, rng) - 1.0
    assert abs(shifts.mean()) < 3.0 * (eps / np.sqrt(3.0)) / np.sqrt(n)


def test_spectrum_file_roundtrip(tmp_path):
    vals = np.array([0.0, 0.17254, 2.5, 6.999999999])
    path = tmp_path / "spec.txt"
    write_spectrum(vals, path)
    assert np.array_equal(read_spectrum(path), vals)
