"""Laplace spectra and the integer constraints they impose on degree sequences.

A spectrum is a plain numpy vector of eigenvalues sorted ascending,
lambda_1 <= ... <= lambda_N, with lambda_1 = 0 for a connected graph. From it
we derive everything a candidate degree sequence must satisfy:

  * sum of degrees      = sum of eigenvalues                  (trace)
  * sum of squares      = sum of (eigenvalue^2 - eigenvalue)  (trace of L^2)
  * sum of m largest degrees <= sum of m largest eigenvalues - 1, m < N
  * max degree <= lambda_N - 1, min degree >= lambda_2 (capped at N-1 so the
    complete graph, where lambda_2 = N, stays feasible)

The two trace sums are even integers for every graph, so they are rounded to
the nearest even integer; a residue larger than `tol` means the input was too
corrupted to trust and raises InconsistentSpectrumError.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "InconsistentSpectrumError",
    "ConstraintSet",
    "laplace_spectrum",
    "build_constraints",
    "frequencies_to_spectrum",
    "perturb_values",
    "read_spectrum",
    "write_spectrum",
]

# Absolute zero-clipping threshold for eigenvalues of connected Laplacians.
ZERO_CLIP = 1e-9

# Default absolute tolerance when rounding the trace sums to even integers.
DEFAULT_ROUND_TOL = 0.25


class InconsistentSpectrumError(ValueError):
    """The spectrum cannot belong to a simple connected graph at this tolerance."""


@dataclass(frozen=True)
class ConstraintSet:
    """Integer constraints a degree sequence must satisfy, plus degree bounds.

    partial_sum_caps[m-1] bounds the sum of the m largest degrees, for
    m = 1..n-1. grone_active turns those caps on or off during enumeration
    (they are the constraints most easily corrupted by probe noise).
    """

    n: int
    total_degree: int
    total_squared: int
    partial_sum_caps: tuple[int, ...]
    d_min_bound: int
    d_max_bound: int
    grone_active: bool = True

    def __post_init__(self):
        n, d, s = self.n, self.total_degree, self.total_squared
        if n < 2:
            raise ValueError("need at least two nodes")
        if not (2 * (n - 1) <= d <= n * (n - 1)):
            raise InconsistentSpectrumError(
                f"total degree {d} outside [{2 * (n - 1)}, {n * (n - 1)}]"
            )
        if d % 2 or s % 2:
            raise InconsistentSpectrumError(f"total degree {d} / squared {s} not even")
        if s < d:
            raise InconsistentSpectrumError(f"sum of squares {s} below sum {d}")
        if len(self.partial_sum_caps) != n - 1:
            raise ValueError("need exactly n-1 partial-sum caps")
        if not (1 <= self.d_min_bound <= self.d_max_bound <= n - 1):
            raise InconsistentSpectrumError(
                f"degree bounds [{self.d_min_bound}, {self.d_max_bound}] invalid"
            )

    def admits(self, degrees) -> bool:
        """Check a degree sequence against every constraint (any order given)."""
        d = np.sort(np.asarray(degrees, dtype=np.int64))[::-1]
        if len(d) != self.n:
            return False
        if d.sum() != self.total_degree or (d * d).sum() != self.total_squared:
            return False
        if d[0] > self.d_max_bound or d[-1] < self.d_min_bound:
            return False
        if self.grone_active:
            partial = np.cumsum(d[:-1])
            if np.any(partial > np.asarray(self.partial_sum_caps)):
                return False
        return True


def laplace_spectrum(L: np.ndarray) -> np.ndarray:
    """Eigenvalues of a symmetric Laplace matrix, ascending, zeros clipped."""
    L = np.asarray(L, dtype=float)
    if L.ndim != 2 or L.shape[0] != L.shape[1]:
        raise ValueError("Laplace matrix must be square")
    if not np.allclose(L, L.T):
        raise ValueError("Laplace matrix must be symmetric")
    vals = np.linalg.eigvalsh(L)
    vals[np.abs(vals) < ZERO_CLIP] = 0.0
    return vals


def _round_even(x: float) -> int:
    return 2 * round(x / 2.0)


def build_constraints(spectrum, tol: float = DEFAULT_ROUND_TOL) -> ConstraintSet:
    """Derive the ConstraintSet of a (possibly noisy) connected-graph spectrum.

    tol is the absolute slack allowed when rounding the two trace sums to even
    integers and when integerizing the bounds; raise it (up to 1.0, half the
    gap between adjacent even integers) for noisy probed spectra.
    """
    vals = np.asarray(spectrum, dtype=float)
    if vals.ndim != 1 or len(vals) < 2:
        raise ValueError("spectrum must be a vector of at least two eigenvalues")
    if np.any(np.diff(vals) < 0):
        raise ValueError("spectrum must be sorted ascending")
    n = len(vals)

    d_sum = float(vals.sum())
    s_sum = float((vals * vals).sum() - d_sum)
    total_degree = _round_even(d_sum)
    total_squared = _round_even(s_sum)
    if abs(d_sum - total_degree) > tol:
        raise InconsistentSpectrumError(
            f"sum of eigenvalues {d_sum:.6f} not an even integer within {tol}"
        )
    if abs(s_sum - total_squared) > tol:
        raise InconsistentSpectrumError(
            f"squared sum {s_sum:.6f} not an even integer within {tol}"
        )

    desc = vals[::-1]
    caps = []
    running = 0.0
    for m in range(1, n):
        running += desc[m - 1]
        # Grone cap, never above the trivial bound D - (n - m) from d_i >= 1.
        caps.append(min(math.floor(running - 1.0 + tol), total_degree - (n - m)))

    d_max = min(n - 1, math.floor(vals[-1] - 1.0 + tol))
    d_min = min(n - 1, max(1, math.ceil(vals[1] - tol)))
    return ConstraintSet(
        n=n,
        total_degree=total_degree,
        total_squared=total_squared,
        partial_sum_caps=tuple(caps),
        d_min_bound=d_min,
        d_max_bound=d_max,
    )


def frequencies_to_spectrum(
    freqs, omega0: float | None = None, g: float = 1.0, tol: float = 1e-9
) -> np.ndarray:
    """Map probed eigenfrequencies to Laplace eigenvalues, (f^2 - omega0^2)/g.

    The bare frequency coincides with the smallest eigenfrequency, so omega0
    may be omitted and is then taken from the data.
    """
    f = np.asarray(freqs, dtype=float)
    if np.any(np.diff(f) < 0):
        raise ValueError("frequencies must be sorted ascending")
    if g <= 0:
        raise ValueError("coupling constant must be positive")
    if omega0 is None:
        omega0 = float(f[0])
    if omega0 <= 0:
        raise ValueError("bare frequency must be positive")
    if np.any(f < omega0 - tol):
        raise ValueError("frequency below the bare frequency")
    return np.clip((f * f - omega0 * omega0) / g, 0.0, None)


def perturb_values(values, epsilon: float, rng: np.random.Generator) -> np.ndarray:
    """Multiply each entry by (1 + u), u uniform on [-epsilon, epsilon], iid."""
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    v = np.asarray(values, dtype=float)
    return v * (1.0 + rng.uniform(-epsilon, epsilon, size=v.shape))


def write_spectrum(values, path) -> None:
    """One eigenvalue per line, plain decimal text."""
    with open(path, "w") as fh:
        for v in np.asarray(values, dtype=float):
            fh.write(f"{float(v)!r}\n")


def read_spectrum(path) -> np.ndarray:
    with open(path) as fh:
        vals = [float(line) for line in fh if line.strip()]
    if not vals:
        raise ValueError("empty spectrum file")
    return np.asarray(vals)
