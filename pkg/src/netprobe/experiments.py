"""Seeded, batch-resilient experiment runners behind the command-line tool.

Every realization draws its generator from SeedSequence([master_seed, index]),
so results are reproducible and independent of how many workers execute the
batch; rows are always collected in realization order. A failing realization
never aborts a batch: its row carries an error code instead of data.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import coupling as coupling_mod
from .coupling import candidate_couplings
from .degrees import (
    DEFAULT_SOLUTION_CAP,
    enumerate_with_fallback,
    figure_of_merit,
    select_estimate,
)
from .graphs import (
    Graph,
    build_laplacian,
    circulant_graph,
    complete_graph,
    cycle_graph,
    degree_sequence,
    generate_ba,
    generate_er_gnl,
    generate_er_gnp,
    generate_random_regular,
    generate_tree,
    generate_ws,
    path_graph,
)
from .oscillators import (
    OscillatorNetwork,
    ProbeSetup,
    SweepResult,
    evolve_mean_excitation,
    frequency_sweep,
    network_eigenfrequencies,
    network_modes,
)
from .spectra import (
    DEFAULT_ROUND_TOL,
    InconsistentSpectrumError,
    build_constraints,
    frequencies_to_spectrum,
    laplace_spectrum,
    perturb_values,
)

__all__ = [
    "GraphFamily",
    "realization_rng",
    "run_degree_experiment",
    "run_probe_experiment",
    "run_coupling_experiment",
    "run_robustness_experiment",
    "resonance_discrimination",
    "select_demo_mode",
    "sweep_range",
    "write_csv",
    "write_json_sidecar",
    "HIST_EDGES",
]

# Merit histogram grid shared by the degree experiment and the fig1 plot.
HIST_EDGES = np.linspace(0.0, 0.6, 121)

FAMILY_NAMES = (
    "er-gnl",
    "er-gnp",
    "ba",
    "ws",
    "tree",
    "chain",
    "cycle",
    "complete",
    "circulant",
    "regular",
)


@dataclass(frozen=True)
class GraphFamily:
    """A graph model plus its parameters; sample() draws one realization."""

    name: str
    n: int
    links: int | None = None  # er-gnl
    p: float | None = None  # er-gnp / ws rewiring
    k: int | None = None  # ba attachment / ws & circulant neighbors / regular degree

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise ValueError(f"unknown family {self.name!r}; choose from {FAMILY_NAMES}")

    def sample(self, rng: np.random.Generator) -> Graph:
        if self.name == "er-gnl":
            return generate_er_gnl(self.n, self._req("links"), rng)
        if self.name == "er-gnp":
            return generate_er_gnp(self.n, self._req("p"), rng)
        if self.name == "ba":
            return generate_ba(self.n, self._req("k"), rng)
        if self.name == "ws":
            return generate_ws(self.n, self._req("k"), self._req("p"), rng)
        if self.name == "tree":
            return generate_tree(self.n, rng)
        if self.name == "chain":
            return path_graph(self.n)
        if self.name == "cycle":
            return cycle_graph(self.n)
        if self.name == "complete":
            return complete_graph(self.n)
        if self.name == "circulant":
            return circulant_graph(self.n, self._req("k"))
        return generate_random_regular(self.n, self._req("k"), rng)

    def _req(self, attr: str):
        val = getattr(self, attr)
        if val is None:
            raise ValueError(f"family {self.name!r} needs parameter {attr!r}")
        return val

    def label(self) -> str:
        parts = [self.name, f"n={self.n}"]
        for attr in ("links", "p", "k"):
            if getattr(self, attr) is not None:
                parts.append(f"{attr}={getattr(self, attr)}")
        return " ".join(parts)


def realization_rng(master_seed: int, index: int) -> np.random.Generator:
    """Independent per-realization stream derived from (master seed, index)."""
    return np.random.default_rng(np.random.SeedSequence([master_seed, index]))


def _map_indexed(worker, count: int, threads: int) -> list:
    if threads <= 1:
        return [worker(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(worker, range(count)))


# ----------------------------------------------------------------------
# Degree-sequence experiment (merit records and histogram pairs).
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class DegreeRecord:
    index: int
    family: str
    n: int
    edges: int = 0
    n_solutions: int = 0
    truncated: bool = False
    grone_fallback: bool = False
    merit_estimate: float = float("nan")
    perfect_match: bool = False
    merit_min: float = float("nan")
    merit_mean: float = float("nan")
    merit_max: float = float("nan")
    error: str = ""


@dataclass
class DegreeExperimentResult:
    family: GraphFamily
    master_seed: int
    records: list[DegreeRecord]
    hist_all: np.ndarray
    hist_estimates: np.ndarray

    @property
    def failures(self) -> int:
        return sum(1 for r in self.records if r.error)


def _solution_merits(solutions: np.ndarray, d_true_desc: np.ndarray) -> np.ndarray:
    total = d_true_desc.sum()
    return np.abs(solutions - d_true_desc).sum(axis=1) / total


def run_degree_experiment(
    family: GraphFamily,
    realizations: int,
    master_seed: int,
    *,
    enum_cap: int = DEFAULT_SOLUTION_CAP,
    round_tol: float = DEFAULT_ROUND_TOL,
    threads: int = 1,
) -> DegreeExperimentResult:
    """Spectrum -> constraints -> all solutions -> mean-closest estimate, repeated.

    The two returned histograms are the per-realization merit distributions
    (all solutions, and the selected estimates), averaged over realizations.
    """

    def worker(index: int):
        rng = realization_rng(master_seed, index)
        base = dict(index=index, family=family.name, n=family.n)
        try:
            graph = family.sample(rng)
            d_true = np.sort(degree_sequence(graph))[::-1]
            constraints = build_constraints(laplace_spectrum(build_laplacian(graph)), round_tol)
            sol_set = enumerate_with_fallback(constraints, enum_cap)
            if sol_set.empty:
                return DegreeRecord(**base, edges=graph.m, error="no-solutions"), None
            merits = _solution_merits(sol_set.solutions, d_true)
            est = select_estimate(sol_set)
            est_merit = figure_of_merit(d_true, est.sequence)
            record = DegreeRecord(
                **base,
                edges=graph.m,
                n_solutions=len(sol_set),
                truncated=sol_set.truncated,
                grone_fallback=sol_set.grone_fallback,
                merit_estimate=est_merit,
                perfect_match=est_merit == 0.0,
                merit_min=float(merits.min()),
                merit_mean=float(merits.mean()),
                merit_max=float(merits.max()),
            )
            return record, (merits, est_merit)
        except (ValueError, RuntimeError) as exc:
            code = "inconsistent-spectrum" if isinstance(exc, InconsistentSpectrumError) else "failed"
            return DegreeRecord(**base, error=code), None

    results = _map_indexed(worker, realizations, threads)
    records = [rec for rec, _ in results]

    hist_all = np.zeros(len(HIST_EDGES) - 1)
    hist_est = np.zeros(len(HIST_EDGES) - 1)
    ok = 0
    for _, payload in results:
        if payload is None:
            continue
        merits, est_merit = payload
        counts, _ = np.histogram(merits, bins=HIST_EDGES)
        hist_all += counts / max(len(merits), 1)
        est_counts, _ = np.histogram([est_merit], bins=HIST_EDGES)
        hist_est += est_counts
        ok += 1
    if ok:
        hist_all /= ok
        hist_est /= ok
    return DegreeExperimentResult(family, master_seed, records, hist_all, hist_est)


# ----------------------------------------------------------------------
# Probe experiment (frequency sweep -> spectrum -> degree estimation).
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ProbeRecord:
    index: int
    n: int
    edges: int = 0
    detected: int = 0
    complete: bool = False
    d_probe: int = 0
    s_probe: int = 0
    d_exact: int = 0
    s_exact: int = 0
    d_match: bool = False
    s_match: bool = False
    n_solutions: int = 0
    merit_estimate: float = float("nan")
    error: str = ""


@dataclass
class ProbeRealization:
    record: ProbeRecord
    sweep: SweepResult | None = None
    excitation: tuple[np.ndarray, np.ndarray, np.ndarray] | None = None


def sweep_range(omega0: float, g: float, n: int) -> tuple[float, float]:
    """Grid limits that always cover the spectrum: lambda_N <= n for any graph."""
    return 0.9 * omega0, 1.05 * float(np.sqrt(omega0**2 + g * n))


def select_demo_mode(
    net: OscillatorNetwork,
    node: int,
    k: float,
    t_max: float,
    detuning: float = 0.01,
    amp_floor: float = 0.005,
) -> int:
    """Eigenmode whose resonance is cleanest to demonstrate from this node.

    Scores each mode with the two-oscillator exchange model (probe resonant
    with one thermal mode of coupling rate k|V|/2w): predicted on-resonance
    excitation and its ratio to the detuned response. Modes whose own or
    detuned frequency window overlaps a neighboring eigenfrequency are
    skipped, as are modes too weakly coupled to beat the background.
    """
    freqs, vec = network_modes(net)
    coth = 1.0 / np.tanh(freqs / (2.0 * net.temperature)) if net.temperature > 0 else 1.0
    occupation = (coth - 1.0) / 2.0
    gamma = k * np.abs(vec[node, :]) / (2.0 * freqs)
    half_det = detuning * freqs / 2.0
    rabi = np.sqrt(gamma**2 + half_det**2)
    on_res = occupation * np.sin(np.minimum(gamma * t_max, np.pi / 2.0)) ** 2
    detuned = (
        occupation
        * (gamma**2 / rabi**2)
        * np.sin(np.minimum(rabi * t_max, np.pi / 2.0)) ** 2
    )
    ratio = np.divide(on_res, detuned, out=np.zeros_like(on_res), where=detuned > 0)

    best, best_ratio = None, -1.0
    for i in range(len(freqs)):
        window = (freqs >= freqs[i] * (1 - 2 * detuning)) & (freqs <= freqs[i] * (1 + 3 * detuning))
        if window.sum() > 1:  # another eigenfrequency too close
            continue
        if on_res[i] < amp_floor:
            continue
        if ratio[i] > best_ratio:
            best, best_ratio = i, float(ratio[i])
    if best is None:
        best = int(np.argmax(on_res))
    return best


def resonance_discrimination(
    net: OscillatorNetwork,
    node: int,
    mode_index: int | None,
    k: float,
    t_max: float = 2000.0,
    samples: int = 200,
    detuning: float = 0.01,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """<n(t)> with the probe on an exact eigenfrequency vs slightly above it.

    mode_index None picks the demonstration mode via select_demo_mode.
    """
    if mode_index is None:
        mode_index = select_demo_mode(net, node, k, t_max, detuning)
    freqs = network_eigenfrequencies(net)
    times = np.linspace(0.0, t_max, samples + 1)
    on_res = evolve_mean_excitation(net, ProbeSetup(float(freqs[mode_index]), k, node), times)
    detuned = evolve_mean_excitation(
        net, ProbeSetup(float(freqs[mode_index]) * (1.0 + detuning), k, node), times
    )
    return times, on_res, detuned


def run_probe_experiment(
    family: GraphFamily,
    realizations: int,
    master_seed: int,
    *,
    omega0: float = 0.2,
    g: float = 0.1,
    temperature: float = 0.3,
    probe_k: float = 0.0025,
    probe_node: int = 0,
    grid_points: int = 2000,
    t_interact: float | None = None,
    time_samples: int | None = None,
    threshold_factor: float = 5.0,
    excitation_t_max: float = 2000.0,
    excitation_samples: int = 200,
    epsilon: float = 0.0,
    round_tol: float = DEFAULT_ROUND_TOL,
    enum_cap: int = DEFAULT_SOLUTION_CAP,
    excitation_trace: bool = False,
    threads: int = 1,
) -> list[ProbeRealization]:
    """Full local-probing pipeline per realization.

    epsilon > 0 perturbs the detected frequencies before the degree
    estimation (robustness mode). excitation_trace additionally records
    resonant-vs-detuned <n(t)> curves for the mid-spectrum eigenmode.
    """

    def worker(index: int) -> ProbeRealization:
        rng = realization_rng(master_seed, index)
        try:
            graph = family.sample(rng)
            net = OscillatorNetwork(build_laplacian(graph), omega0, g, temperature)
            f_min, f_max = sweep_range(omega0, g, family.n)
            sweep = frequency_sweep(
                net,
                probe_node,
                f_min,
                f_max,
                step=(f_max - f_min) / grid_points,
                t_interact=t_interact,
                time_samples=time_samples,
                k=probe_k,
                threshold_factor=threshold_factor,
            )
            excitation = None
            if excitation_trace:
                excitation = resonance_discrimination(
                    net, probe_node, None, probe_k, excitation_t_max, excitation_samples
                )

            exact = build_constraints(laplace_spectrum(build_laplacian(graph)), round_tol)
            base = dict(
                index=index,
                n=family.n,
                edges=graph.m,
                detected=len(sweep.frequencies),
                complete=sweep.complete,
                d_exact=exact.total_degree,
                s_exact=exact.total_squared,
            )
            if not sweep.complete:
                return ProbeRealization(
                    ProbeRecord(**base, error="unresolved-degeneracy"), sweep, excitation
                )

            detected = sweep.frequencies
            if epsilon > 0:
                detected = np.sort(perturb_values(detected, epsilon, rng))
            probed = build_constraints(frequencies_to_spectrum(detected, None, g), round_tol)
            d_true = np.sort(degree_sequence(graph))[::-1]
            sol_set = enumerate_with_fallback(probed, enum_cap)
            merit = float("nan")
            if not sol_set.empty:
                merit = figure_of_merit(d_true, select_estimate(sol_set).sequence)
            record = ProbeRecord(
                **base,
                d_probe=probed.total_degree,
                s_probe=probed.total_squared,
                d_match=probed.total_degree == exact.total_degree,
                s_match=probed.total_squared == exact.total_squared,
                n_solutions=len(sol_set),
                merit_estimate=merit,
            )
            return ProbeRealization(record, sweep, excitation)
        except (ValueError, RuntimeError) as exc:
            code = "inconsistent-spectrum" if isinstance(exc, InconsistentSpectrumError) else "failed"
            return ProbeRealization(ProbeRecord(index=index, n=family.n, error=code))

    return _map_indexed(worker, realizations, threads)


# ----------------------------------------------------------------------
# Coupling-constant experiment over a p-grid (or any other family).
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CouplingRow:
    p: float
    trials: int
    success_fraction: float
    conclusive_fraction: float
    seed: int
    error: str = ""


def run_coupling_experiment(
    n: int,
    p_values,
    trials: int,
    master_seed: int,
    *,
    family: str = "er-gnp",
    family_k: int | None = None,
    g: float = 0.1,
    omega0: float = 0.2,
    tol: float = coupling_mod.DEFAULT_EVEN_TOL,
    threads: int = 1,
) -> list[CouplingRow]:
    """Success/conclusive fractions per connection probability (or one row
    for families without a p parameter)."""
    p_list = [float(p) for p in p_values] if family == "er-gnp" else [float("nan")]

    def worker(i: int) -> CouplingRow:
        rng = realization_rng(master_seed, i)
        try:
            if family == "er-gnp":
                stats = coupling_mod.coupling_experiment(
                    n, p_list[i], trials, rng, g=g, omega0=omega0, tol=tol
                )
                return CouplingRow(
                    stats.p, trials, stats.success_fraction, stats.conclusive_fraction, master_seed
                )
            fam = GraphFamily(family, n, k=family_k)
            successes = conclusives = 0
            for _ in range(trials):
                lam = laplace_spectrum(build_laplacian(fam.sample(rng)))
                result = candidate_couplings(np.sqrt(omega0**2 + g * lam), tol=tol)
                est = result.estimate
                if est is not None and abs(est - g) <= coupling_mod.SUCCESS_RELATIVE_TOL * g:
                    successes += 1
                if result.conclusive:
                    conclusives += 1
            return CouplingRow(
                p_list[i], trials, successes / trials, conclusives / trials, master_seed
            )
        except (ValueError, RuntimeError):
            return CouplingRow(p_list[i], trials, float("nan"), float("nan"), master_seed, "failed")

    return _map_indexed(worker, len(p_list), threads)


# ----------------------------------------------------------------------
# Robustness experiment: frequency noise vs the detected sum of degrees.
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RobustnessRecord:
    index: int
    n: int
    edges: int = 0
    d_true: int = 0
    s_true: int = 0
    d_noisy: int = 0
    s_noisy: int = 0
    d_match: bool = False
    s_match: bool = False
    error: str = ""


def run_robustness_experiment(
    family: GraphFamily,
    realizations: int,
    master_seed: int,
    *,
    omega0: float = 0.2,
    g: float = 0.1,
    epsilon: float = 0.01,
    round_tol: float = 1.0,
    threads: int = 1,
) -> list[RobustnessRecord]:
    """Perturb exact eigenfrequencies, re-derive D and S, compare with truth.

    round_tol defaults to 1.0 here, half the gap between adjacent even
    integers: anything closer still rounds to a definite value, so only truly
    ambiguous spectra are rejected.
    """

    def worker(index: int) -> RobustnessRecord:
        rng = realization_rng(master_seed, index)
        try:
            graph = family.sample(rng)
            deg = degree_sequence(graph)
            d_true = int(deg.sum())
            s_true = int((deg * deg).sum())
            lam = laplace_spectrum(build_laplacian(graph))
            freqs = np.sqrt(omega0**2 + g * lam)
            noisy = np.sort(perturb_values(freqs, epsilon, rng))
            constraints = build_constraints(frequencies_to_spectrum(noisy, None, g), round_tol)
            return RobustnessRecord(
                index=index,
                n=family.n,
                edges=graph.m,
                d_true=d_true,
                s_true=s_true,
                d_noisy=constraints.total_degree,
                s_noisy=constraints.total_squared,
                d_match=constraints.total_degree == d_true,
                s_match=constraints.total_squared == s_true,
            )
        except (ValueError, RuntimeError) as exc:
            code = "inconsistent-spectrum" if isinstance(exc, InconsistentSpectrumError) else "failed"
            return RobustnessRecord(index=index, n=family.n, error=code)

    return _map_indexed(worker, realizations, threads)


# ----------------------------------------------------------------------
# Output helpers: deterministic CSV plus a JSON sidecar with the config.
# ----------------------------------------------------------------------


def write_csv(path, header: list[str], rows: list[list]) -> None:
    """Plain deterministic CSV; floats via repr for exact round-trips."""
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_cell(v) for v in row) + "\n")


def _cell(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, np.integer):
        return str(int(v))
    return str(v)


def write_json_sidecar(path, config: dict) -> None:
    with open(path, "w") as fh:
        json.dump(config, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")


def records_to_rows(records) -> tuple[list[str], list[list]]:
    """Flatten a list of (identical-shape) dataclass records for write_csv."""
    first = records[0]
    header = list(first.__dataclass_fields__)
    return header, [[getattr(r, name) for name in header] for r in records]


def write_histogram_csv(path, hist_all: np.ndarray, hist_estimates: np.ndarray) -> None:
    rows = [
        [float(HIST_EDGES[i]), float(HIST_EDGES[i + 1]), float(hist_all[i]), float(hist_estimates[i])]
        for i in range(len(HIST_EDGES) - 1)
    ]
    write_csv(path, ["bin_left", "bin_right", "all_solutions", "estimates"], rows)


def sidecar_path(out_path, suffix: str) -> Path:
    p = Path(out_path)
    return p.with_name(p.stem + suffix)
