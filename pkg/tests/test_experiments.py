import json

import numpy as np
import pytest

from netprobe.cli import main
from netprobe.experiments import (
    HIST_EDGES,
    GraphFamily,
    realization_rng,
    resonance_discrimination,
    run_coupling_experiment,
    run_degree_experiment,
    run_probe_experiment,
    run_robustness_experiment,
    select_demo_mode,
)
from netprobe.graphs import build_laplacian
from netprobe.oscillators import OscillatorNetwork, network_modes


def test_family_validation():
    with pytest.raises(ValueError):
        GraphFamily("smallworld", 10)
    fam = GraphFamily("ws", 12, k=2, p=0.1)
    g = fam.sample(np.random.default_rng(0))
    assert g.n == 12 and g.m == 24
    with pytest.raises(ValueError):
        GraphFamily("er-gnl", 10).sample(np.random.default_rng(0))  # links missing


def test_realization_rng_deterministic():
    a = realization_rng(5, 3).integers(0, 1 << 30, 8)
    b = realization_rng(5, 3).integers(0, 1 << 30, 8)
    c = realization_rng(5, 4).integers(0, 1 << 30, 8)
    assert np.array_equal(a, b) and not np.array_equal(a, c)


def test_degree_experiment_records_and_histograms():
    fam = GraphFamily("tree", 12)
    result = run_degree_experiment(fam, 10, master_seed=9)
    assert len(result.records) == 10 and result.failures == 0
    for r in result.records:
        assert r.n_solutions >= 1
        assert 0.0 <= r.merit_estimate <= r.merit_max < 2.0
    # per-realization averaged histograms each carry unit mass
    assert result.hist_all.sum() == pytest.approx(1.0)
    assert result.hist_estimates.sum() == pytest.approx(1.0)
    assert len(result.hist_all) == len(HIST_EDGES) - 1


def test_degree_experiment_thread_invariance():
    fam = GraphFamily("tree", 10)
    seq = run_degree_experiment(fam, 8, master_seed=2, threads=1)
    par = run_degree_experiment(fam, 8, master_seed=2, threads=4)
    assert seq.records == par.records


def test_robustness_runner():
    fam = GraphFamily("er-gnl", 12, links=18)
    records = run_robustness_experiment(fam, 12, master_seed=3, epsilon=0.0)
    assert all(r.d_match and r.s_match for r in records)  # no noise, no error
    noisy = run_robustness_experiment(fam, 12, master_seed=3, epsilon=0.01)
    assert sum(r.d_match for r in noisy) >= 10


def test_coupling_runner_er_and_tree():
    rows = run_coupling_experiment(10, [0.5, 0.9], 10, master_seed=4)
    assert [r.p for r in rows] == [0.5, 0.9]
    assert all(0.0 <= r.success_fraction <= 1.0 for r in rows)
    tree_rows = run_coupling_experiment(10, [], 10, master_seed=4, family="tree")
    assert len(tree_rows) == 1 and tree_rows[0].success_fraction == 1.0


def test_probe_experiment_end_to_end():
    fam = GraphFamily("er-gnl", 6, links=8)
    results = run_probe_experiment(
        fam, 1, master_seed=12, probe_k=0.001, grid_points=600, excitation_trace=True
    )
    (res,) = results
    assert res.record.error == "" and res.record.complete
    assert res.record.d_match and res.record.s_match
    assert res.record.d_exact == 16  # 2 * 8 links
    assert res.sweep is not None and len(res.sweep.frequencies) == 6
    times, on_res, detuned = res.excitation
    assert on_res.max() > detuned.max()


def test_select_demo_mode_prefers_isolated_coupled_modes():
    fam = GraphFamily("er-gnl", 12, links=20)
    g = fam.sample(np.random.default_rng(3))
    net = OscillatorNetwork(build_laplacian(g), 0.2, 0.1, 0.3)
    mode = select_demo_mode(net, 0, 0.0025, 2000.0)
    freqs, vec = network_modes(net)
    assert 0 <= mode < 12
    assert abs(vec[0, mode]) > 1e-3
    _, on_res, detuned = resonance_discrimination(net, 0, mode, 0.0025)
    assert on_res.max() > detuned.max()


# ----------------------------------------------------------------------
# Command-line interface
# ----------------------------------------------------------------------


def test_cli_degree_outputs(tmp_path):
    out = tmp_path / "deg.csv"
    code = main([
        "degree", "--family", "tree", "--n", "10", "--realizations", "5",
        "--seed", "7", "--out", str(out),
    ])
    assert code == 0
    header = out.read_text().splitlines()[0].split(",")
    assert {"index", "family", "n_solutions", "merit_estimate"} <= set(header)
    hist = tmp_path / "deg.hist.csv"
    assert hist.read_text().splitlines()[0] == "bin_left,bin_right,all_solutions,estimates"
    sidecar = json.loads((tmp_path / "deg.json").read_text())
    assert sidecar["command"] == "degree" and sidecar["seed"] == 7


def test_cli_determinism_across_threads(tmp_path):
    args = ["degree", "--family", "ws", "--n", "14", "--ws-k", "2", "--ws-p", "0.2",
            "--realizations", "6", "--seed", "11"]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--out", str(out1), "--threads", "1"]) == 0
    assert main(args + ["--out", str(out2), "--threads", "4"]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    assert (tmp_path / "a.hist.csv").read_bytes() == (tmp_path / "b.hist.csv").read_bytes()


def test_cli_coupling_csv(tmp_path):
    out = tmp_path / "coup.csv"
    code = main([
        "coupling", "--n", "8", "--p", "0.6,0.9", "--trials", "5",
        "--seed", "3", "--out", str(out),
    ])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith("p,trials,success_fraction,conclusive_fraction,seed")
    assert len(lines) == 3


def test_cli_robustness(tmp_path):
    out = tmp_path / "rob.csv"
    code = main([
        "robustness", "--family", "er-gnl", "--n", "12", "--links", "18",
        "--epsilon", "0.01", "--realizations", "5", "--seed", "2", "--out", str(out),
    ])
    assert code == 0
    assert len(out.read_text().splitlines()) == 6


def test_cli_probe_with_trace(tmp_path):
    out = tmp_path / "probe.csv"
    code = main([
        "probe", "--family", "er-gnl", "--n", "5", "--links", "6",
        "--probe-k", "0.001", "--grid-points", "400", "--realizations", "1",
        "--seed", "5", "--out", str(out), "--fig2-trace",
    ])
    assert code == 0
    assert (tmp_path / "probe.r000.sweep.csv").exists()
    assert (tmp_path / "probe.r000.peaks.txt").exists()
    trace = (tmp_path / "probe.r000.excitation.csv").read_text().splitlines()
    assert trace[0] == "t,n_resonant,n_detuned"


def test_cli_config_error_exit_code(tmp_path):
    assert main(["degree", "--family", "er-gnl", "--n", "10",
                 "--out", str(tmp_path / "x.csv")]) == 1  # links missing
    assert main(["degree", "--family", "nonsense", "--out", "x.csv"]) == 1
    assert main(["coupling", "--n", "8", "--p", "0.5;0.9",
                 "--out", str(tmp_path / "y.csv")]) == 1


def test_cli_partial_failure_exit_code(tmp_path):
    # complete graph: fully degenerate spectrum, sweep cannot resolve 5 peaks
    out = tmp_path / "fail.csv"
    code = main([
        "probe", "--family", "complete", "--n", "5", "--probe-k", "0.001",
        "--grid-points", "400", "--realizations", "1", "--seed", "1",
        "--out", str(out),
    ])
    assert code == 2
    assert "unresolved-degeneracy" in out.read_text()
