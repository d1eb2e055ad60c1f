"""Enumerate and rank the degree sequences consistent with a ConstraintSet.

The search treats the sum-of-squares constraint as an integer partitioning
problem: build non-increasing sequences whose squares sum to the target,
pruning any branch whose remaining square budget cannot be met within the
degree bounds and remaining length, and filter survivors by the linear sum
and the partial-sum caps. A dumb exhaustive filter over all non-increasing
sequences (`brute_force_solutions`) is kept as an independent oracle.

Solutions are multisets: eigenvalues carry no node labels, so every sequence
is reported sorted descending and compared element-wise in that order.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import isqrt

import numpy as np

from .spectra import ConstraintSet

__all__ = [
    "SolutionSet",
    "Estimate",
    "enumerate_solutions",
    "enumerate_with_fallback",
    "brute_force_solutions",
    "figure_of_merit",
    "select_estimate",
    "write_solutions",
    "read_solutions",
]

DEFAULT_SOLUTION_CAP = 500_000


class _Truncated(Exception):
    pass


@dataclass(frozen=True)
class SolutionSet:
    """All degree sequences satisfying a ConstraintSet, rows sorted descending.

    solutions has shape (count, n). truncated marks a search stopped at the
    cap; grone_fallback marks a set produced after dropping the partial-sum
    caps because they admitted nothing (noisy-spectrum fallback).
    """

    solutions: np.ndarray
    constraints: ConstraintSet
    truncated: bool = False
    grone_fallback: bool = False

    def __len__(self) -> int:
        return self.solutions.shape[0]

    @property
    def empty(self) -> bool:
        return self.solutions.shape[0] == 0


@dataclass(frozen=True)
class Estimate:
    sequence: np.ndarray
    merit: float | None = None


def enumerate_solutions(c: ConstraintSet, cap: int = DEFAULT_SOLUTION_CAP) -> SolutionSet:
    """Depth-first search for every solution, in lexicographically descending order."""
    n, total, total_sq = c.n, c.total_degree, c.total_squared
    lo_b, hi_b = c.d_min_bound, c.d_max_bound
    caps = list(c.partial_sum_caps) if c.grone_active else None

    out: list[tuple[int, ...]] = []
    buf = [0] * n
    truncated = False

    def emit():
        if len(out) >= cap:
            raise _Truncated
        out.append(tuple(buf))

    def rec(pos: int, prev: int, rd: int, rs: int, sofar: int) -> None:
        r = n - pos
        if r == 1:
            v = rd
            if lo_b <= v <= prev and v * v == rs:
                buf[pos] = v
                emit()
            return
        if r == 2:
            # Closed form: v1+v2 = rd, v1^2+v2^2 = rs, v1 >= v2.
            gap_sq = 2 * rs - rd * rd
            if gap_sq < 0:
                return
            gap = isqrt(gap_sq)
            if gap * gap != gap_sq or (rd + gap) % 2:
                return
            v1 = (rd + gap) // 2
            v2 = rd - v1
            if v1 > prev or v2 < lo_b:
                return
            if caps is not None and sofar + v1 > caps[pos]:
                return
            buf[pos] = v1
            buf[pos + 1] = v2
            emit()
            return

        rem = r - 1
        hi = min(prev, rd - rem * lo_b)
        sq_room = rs - rem * lo_b * lo_b
        if sq_room < 0:
            return
        root = isqrt(sq_room)
        if root < hi:
            hi = root
        if caps is not None:
            room = caps[pos] - sofar
            if room < hi:
                hi = room
        # Descending order forces the next value to be at least the running mean.
        lo = max(lo_b, -(-rd // r))
        v0 = isqrt(rs // r)
        while r * v0 * v0 < rs:
            v0 += 1
        if v0 > lo:
            lo = v0
        for v in range(hi, lo - 1, -1):
            rd2 = rd - v
            if rd2 > rem * v:
                break  # holds for all smaller v too
            rs2 = rs - v * v
            if rd2 * rd2 > rem * rs2:
                continue  # Cauchy-Schwarz: unattainable spread
            if rs2 > rd2 * v or rs2 < rd2 * lo_b:
                continue
            buf[pos] = v
            rec(pos + 1, v, rd2, rs2, sofar + v)

    feasible = n * lo_b <= total <= n * hi_b and n * lo_b * lo_b <= total_sq <= n * hi_b * hi_b
    if feasible:
        try:
            rec(0, hi_b, total, total_sq, 0)
        except _Truncated:
            truncated = True

    return SolutionSet(_as_array(out, n), c, truncated=truncated)


def enumerate_with_fallback(c: ConstraintSet, cap: int = DEFAULT_SOLUTION_CAP) -> SolutionSet:
    """enumerate_solutions, retrying without the partial-sum caps if empty.

    Noise perturbs the partial-sum caps first; when they exclude everything,
    the remaining constraints still carry information, so the fallback result
    is returned with grone_fallback set instead of an empty set.
    """
    ss = enumerate_solutions(c, cap)
    if ss.empty and c.grone_active:
        relaxed = dataclasses.replace(c, grone_active=False)
        ss = dataclasses.replace(enumerate_solutions(relaxed, cap), grone_fallback=True)
    return ss


def brute_force_solutions(c: ConstraintSet) -> SolutionSet:
    """Independent oracle: filter every non-increasing sequence, no pruning."""
    n = c.n
    if n > 12:
        raise ValueError("brute force is guarded to n <= 12")
    total, total_sq = c.total_degree, c.total_squared
    lo_b, hi_b = c.d_min_bound, c.d_max_bound
    caps = c.partial_sum_caps if c.grone_active else None
    out = []
    for seq in combinations_with_replacement(range(n - 1, 0, -1), n):
        if sum(seq) != total:
            continue
        if sum(v * v for v in seq) != total_sq:
            continue
        if seq[0] > hi_b or seq[-1] < lo_b:
            continue
        if caps is not None:
            partial = 0
            ok = True
            for m in range(n - 1):
                partial += seq[m]
                if partial > caps[m]:
                    ok = False
                    break
            if not ok:
                continue
        out.append(seq)
    return SolutionSet(_as_array(out, n), c)


def _as_array(rows: list[tuple[int, ...]], n: int) -> np.ndarray:
    if not rows:
        return np.zeros((0, n), dtype=np.int64)
    return np.asarray(rows, dtype=np.int64)


def figure_of_merit(d_true, d_candidate) -> float:
    """l1 distance between sorted degree sequences, normalized by total degree."""
    a = np.sort(np.asarray(d_true, dtype=np.int64))[::-1]
    b = np.sort(np.asarray(d_candidate, dtype=np.int64))[::-1]
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return float(np.abs(a - b).sum() / a.sum())


def select_estimate(ss: SolutionSet) -> Estimate:
    """The solution with the smallest l1 distance from the mean of solutions.

    Distances are compared in exact integer arithmetic (scaled by the number
    of solutions); ties go to the lexicographically smallest sequence.
    """
    if ss.empty:
        raise ValueError("cannot select an estimate from an empty solution set")
    sols = ss.solutions
    k = sols.shape[0]
    colsum = sols.sum(axis=0, dtype=np.int64)
    dist = np.abs(k * sols - colsum).sum(axis=1)
    best = dist.min()
    tied = sols[dist == best]
    row = min(map(tuple, tied))
    return Estimate(sequence=np.asarray(row, dtype=np.int64))


# ----------------------------------------------------------------------
# Solution dump: header with the scalar constraints, then one solution per
# line as comma-separated integers, descending.
# ----------------------------------------------------------------------


def write_solutions(ss: SolutionSet, path) -> None:
    c = ss.constraints
    with open(path, "w") as fh:
        fh.write(
            f"D={c.total_degree} S={c.total_squared} N={c.n} "
            f"grone_active={int(c.grone_active and not ss.grone_fallback)} "
            f"truncated={int(ss.truncated)}\n"
        )
        for row in ss.solutions:
            fh.write(",".join(str(int(v)) for v in row) + "\n")


def read_solutions(path) -> tuple[dict, np.ndarray]:
    """Return (header fields, solutions array) from a solution dump."""
    with open(path) as fh:
        header = dict(item.split("=") for item in fh.readline().split())
        rows = [tuple(int(v) for v in line.split(",")) for line in fh if line.strip()]
    n = int(header["N"])
    return {k: int(v) for k, v in header.items()}, _as_array(rows, n)
