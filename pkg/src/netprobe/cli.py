"""Command-line interface: degree, probe, coupling and robustness experiments.

Exit codes: 0 on success, 1 on a configuration error, 2 when the batch
finished but some realizations failed (their rows carry an error code).
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import experiments as ex
from .oscillators import write_peaks, write_sweep_trace

__all__ = ["main"]


class ConfigError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract here is 1.
    def error(self, message):
        raise ConfigError(message)


def _add_family_flags(p: argparse.ArgumentParser, default_family: str) -> None:
    p.add_argument("--family", default=default_family, choices=ex.FAMILY_NAMES)
    p.add_argument("--n", type=int, default=30, help="number of nodes")
    p.add_argument("--links", type=int, help="edge count for er-gnl")
    p.add_argument("--p", type=float, help="edge probability (er-gnp) / rewiring (ws)")
    p.add_argument("--k-attach", type=int, help="links per new node for ba")
    p.add_argument("--ws-k", type=int, help="neighbors per side for ws/circulant")
    p.add_argument("--ws-p", type=float, help="rewiring probability for ws")
    p.add_argument("--degree", type=int, help="degree for the regular family")


def _add_common_flags(p: argparse.ArgumentParser, realizations: int) -> None:
    p.add_argument("--realizations", type=int, default=realizations)
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", required=True, help="output CSV path")
    p.add_argument("--threads", type=int, default=1)


def _add_physics_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega0", type=float, default=0.2, help="bare oscillator frequency")
    p.add_argument("--g", type=float, default=0.1, help="network coupling constant")
    p.add_argument("--temp", type=float, default=0.3, help="network temperature")
    p.add_argument("--probe-k", type=float, default=0.0025, help="probe-node coupling")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="netprobe", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", help="degree-sequence estimation from exact spectra")
    _add_family_flags(p, "er-gnl")
    _add_common_flags(p, realizations=100)
    p.add_argument("--enum-cap", type=int, default=500_000)
    p.add_argument("--round-tol", type=float, default=0.25)

    p = sub.add_parser("probe", help="frequency sweep of a probed oscillator network")
    _add_family_flags(p, "er-gnl")
    _add_common_flags(p, realizations=1)
    _add_physics_flags(p)
    p.add_argument("--probe-node", type=int, default=0)
    p.add_argument("--grid-points", type=int, default=2000)
    p.add_argument("--t-interact", type=float, default=None,
                   help="sweep interaction time (default: matched to the grid step)")
    p.add_argument("--time-samples", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=0.0, help="noise on detected frequencies")
    p.add_argument("--round-tol", type=float, default=0.25)
    p.add_argument(
        "--fig2-trace",
        action="store_true",
        help="also record resonant vs 1%%-detuned excitation traces",
    )

    p = sub.add_parser("coupling", help="coupling-constant estimation statistics")
    p.add_argument("--family", default="er-gnp", choices=("er-gnp", "tree", "complete", "regular"))
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--p", default="0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
                   help="comma-separated connection probabilities (er-gnp)")
    p.add_argument("--degree", type=int, help="degree for the regular family")
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--omega0", type=float, default=0.2)
    p.add_argument("--g", type=float, default=0.1)
    p.add_argument("--tol", type=float, default=1e-6)

    p = sub.add_parser("robustness", help="frequency noise vs detected degree sums")
    _add_family_flags(p, "er-gnl")
    _add_common_flags(p, realizations=100)
    p.add_argument("--omega0", type=float, default=0.2)
    p.add_argument("--g", type=float, default=0.1)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--round-tol", type=float, default=1.0)
    return parser


def _family_from_args(args) -> ex.GraphFamily:
    k = None
    if args.family == "ba":
        k = args.k_attach
    elif args.family in ("ws", "circulant"):
        k = args.ws_k
    elif args.family == "regular":
        k = args.degree
    p = args.ws_p if args.family == "ws" else args.p
    try:
        family = ex.GraphFamily(args.family, args.n, links=args.links, p=p, k=k)
        # Fail fast on missing/invalid parameters before launching a batch.
        family.sample(np.random.default_rng(0))
    except (ValueError, RuntimeError) as exc:
        raise ConfigError(str(exc)) from exc
    return family


def _finish(records, config: dict, out: str, started: float) -> int:
    header, rows = ex.records_to_rows(records)
    ex.write_csv(out, header, rows)
    config["elapsed_seconds"] = time.perf_counter() - started
    ex.write_json_sidecar(ex.sidecar_path(out, ".json"), config)
    failures = sum(1 for r in records if getattr(r, "error", ""))
    if failures:
        print(f"{len(records) - failures}/{len(records)} realizations ok -> {out}", file=sys.stderr)
        return 2
    print(f"{len(records)} rows -> {out}", file=sys.stderr)
    return 0


def _cmd_degree(args) -> int:
    started = time.perf_counter()
    family = _family_from_args(args)
    result = ex.run_degree_experiment(
        family,
        args.realizations,
        args.seed,
        enum_cap=args.enum_cap,
        round_tol=args.round_tol,
        threads=args.threads,
    )
    ex.write_histogram_csv(
        ex.sidecar_path(args.out, ".hist.csv"), result.hist_all, result.hist_estimates
    )
    config = dict(command="degree", family=family.label(), realizations=args.realizations,
                  seed=args.seed, enum_cap=args.enum_cap, round_tol=args.round_tol)
    return _finish(result.records, config, args.out, started)


def _cmd_probe(args) -> int:
    started = time.perf_counter()
    family = _family_from_args(args)
    results = ex.run_probe_experiment(
        family,
        args.realizations,
        args.seed,
        omega0=args.omega0,
        g=args.g,
        temperature=args.temp,
        probe_k=args.probe_k,
        probe_node=args.probe_node,
        grid_points=args.grid_points,
        t_interact=args.t_interact,
        time_samples=args.time_samples,
        epsilon=args.epsilon,
        round_tol=args.round_tol,
        excitation_trace=args.fig2_trace,
        threads=args.threads,
    )
    for i, r in enumerate(results):
        if r.sweep is not None:
            write_sweep_trace(r.sweep, ex.sidecar_path(args.out, f".r{i:03d}.sweep.csv"))
            write_peaks(r.sweep.frequencies, ex.sidecar_path(args.out, f".r{i:03d}.peaks.txt"))
        if r.excitation is not None:
            times, on_res, detuned = r.excitation
            rows = [[float(t), float(a), float(b)] for t, a, b in zip(times, on_res, detuned)]
            ex.write_csv(
                ex.sidecar_path(args.out, f".r{i:03d}.excitation.csv"),
                ["t", "n_resonant", "n_detuned"],
                rows,
            )
    config = dict(command="probe", family=family.label(), realizations=args.realizations,
                  seed=args.seed, omega0=args.omega0, g=args.g, temp=args.temp,
                  probe_k=args.probe_k, probe_node=args.probe_node,
                  grid_points=args.grid_points, t_interact=args.t_interact,
                  time_samples=args.time_samples, epsilon=args.epsilon,
                  round_tol=args.round_tol)
    return _finish([r.record for r in results], config, args.out, started)


def _cmd_coupling(args) -> int:
    started = time.perf_counter()
    try:
        p_values = [float(tok) for tok in str(args.p).split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --p list: {args.p}") from exc
    if args.family == "er-gnp" and not p_values:
        raise ConfigError("er-gnp needs at least one probability in --p")
    if args.trials < 1 or args.n < 2:
        raise ConfigError("need --trials >= 1 and --n >= 2")
    rows = ex.run_coupling_experiment(
        args.n,
        p_values,
        args.trials,
        args.seed,
        family=args.family,
        family_k=args.degree,
        g=args.g,
        omega0=args.omega0,
        tol=args.tol,
        threads=args.threads,
    )
    config = dict(command="coupling", family=args.family, n=args.n, p=p_values,
                  trials=args.trials, seed=args.seed, g=args.g, omega0=args.omega0,
                  tol=args.tol)
    return _finish(rows, config, args.out, started)


def _cmd_robustness(args) -> int:
    started = time.perf_counter()
    family = _family_from_args(args)
    records = ex.run_robustness_experiment(
        family,
        args.realizations,
        args.seed,
        omega0=args.omega0,
        g=args.g,
        epsilon=args.epsilon,
        round_tol=args.round_tol,
        threads=args.threads,
    )
    config = dict(command="robustness", family=family.label(), realizations=args.realizations,
                  seed=args.seed, omega0=args.omega0, g=args.g, epsilon=args.epsilon,
                  round_tol=args.round_tol)
    return _finish(records, config, args.out, started)


_COMMANDS = {
    "degree": _cmd_degree,
    "probe": _cmd_probe,
    "coupling": _cmd_coupling,
    "robustness": _cmd_robustness,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
