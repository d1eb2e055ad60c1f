"""Estimate a uniform coupling constant from probed eigenfrequencies.

Only the shifted squares f_i^2 - omega0^2 = g * lambda_i are observable, so a
rescaled coupling g' with integer-consistent sums is indistinguishable from g
without structural tests. Candidates are generated by looping over every even
admissible total degree D' (the sum of degrees of a simple connected graph is
even and lies in [2(N-1), N(N-1)]) and kept when

  * the implied sum of squared degrees is an even integer,
  * N * sum(d^2) - (sum d)^2 >= -tol (equality only for regular graphs),
    which rules out couplings larger than the true one,
  * the implied largest Laplace eigenvalue is at most N + tol, which rules
    out couplings smaller than the true one.

The estimate is the largest survivor: dividing a valid g' by any integer
keeps the integrality tests satisfied, so smaller candidates are never
trustworthy, while for trees and regular graphs the largest one is provably
exact. The estimation is conclusive when a single candidate survives.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import build_laplacian, generate_er_gnp
from .spectra import laplace_spectrum

__all__ = [
    "CouplingCandidates",
    "CouplingTrialStats",
    "candidate_couplings",
    "coupling_experiment",
]

DEFAULT_EVEN_TOL = 1e-6
SUCCESS_RELATIVE_TOL = 1e-6


@dataclass(frozen=True)
class CouplingCandidates:
    """Possible coupling constants, descending; conclusive iff exactly one."""

    candidates: np.ndarray

    @property
    def estimate(self) -> float | None:
        return float(self.candidates[0]) if self.candidates.size else None

    @property
    def conclusive(self) -> bool:
        return self.candidates.size == 1


def candidate_couplings(
    freqs, omega0: float | None = None, tol: float = DEFAULT_EVEN_TOL
) -> CouplingCandidates:
    """All coupling constants consistent with the probed eigenfrequencies.

    freqs must hold every eigenfrequency of the network, sorted ascending;
    omega0 defaults to the smallest one. An empty candidate list signals
    corrupted frequencies (or a wrong omega0).
    """
    f = np.asarray(freqs, dtype=float)
    n = len(f)
    if n < 2:
        raise ValueError("need at least two eigenfrequencies")
    if np.any(np.diff(f) < 0):
        raise ValueError("frequencies must be sorted ascending")
    if omega0 is None:
        omega0 = float(f[0])
    elif abs(omega0 - f[0]) > tol * max(1.0, omega0):
        raise ValueError("omega0 must coincide with the smallest eigenfrequency")

    shifted = f * f - omega0 * omega0
    t1 = float(shifted.sum())
    t2 = float((shifted * shifted).sum())
    if t1 <= 0:
        return CouplingCandidates(np.empty(0))

    d_all = np.arange(2 * (n - 1), n * (n - 1) + 1, 2, dtype=float)
    g_all = t1 / d_all  # descending
    s_all = t2 / g_all**2 - d_all
    even_ok = np.abs(s_all - 2.0 * np.round(s_all / 2.0)) <= tol
    regular_ok = n * s_all - d_all**2 >= -tol
    largest_ok = shifted[-1] / g_all <= n + tol
    return CouplingCandidates(g_all[even_ok & regular_ok & largest_ok])


@dataclass(frozen=True)
class CouplingTrialStats:
    """Success/conclusiveness fractions of repeated coupling estimations."""

    p: float
    trials: int
    success_fraction: float
    conclusive_fraction: float


def coupling_experiment(
    n: int,
    p: float,
    trials: int,
    rng: np.random.Generator,
    g: float = 0.1,
    omega0: float = 0.2,
    tol: float = DEFAULT_EVEN_TOL,
) -> CouplingTrialStats:
    """Fractions of G(n, p) draws whose estimate hits g / is the only survivor.

    Success or failure depends only on the sampled graph, not on the value of
    g itself, so the defaults are arbitrary positive parameters.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    successes = 0
    conclusives = 0
    for _ in range(trials):
        graph = generate_er_gnp(n, p, rng)
        lam = laplace_spectrum(build_laplacian(graph))
        freqs = np.sqrt(omega0**2 + g * lam)
        result = candidate_couplings(freqs, tol=tol)
        est = result.estimate
        if est is not None and abs(est - g) <= SUCCESS_RELATIVE_TOL * g:
            successes += 1
        if result.conclusive:
            conclusives += 1
    return CouplingTrialStats(
        p=p,
        trials=trials,
        success_fraction=successes / trials,
        conclusive_fraction=conclusives / trials,
    )
