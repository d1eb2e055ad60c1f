"""Exhaustive small-graph atlas: one representative per isomorphism class.

Built by vertex augmentation: every graph on n nodes arises from a graph on
n-1 nodes plus a new node wired to some subset, so augmenting each (n-1)-class
representative with every subset and deduplicating by a canonical certificate
(minimum edge-set bit signature over all node permutations) covers every
class. Certificates are vectorized over the permutation group with numpy.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from netprobe.graphs import Graph

# Connected graphs on 1..7 nodes up to isomorphism (OEIS A001349).
CONNECTED_CLASS_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def _edge_slots(n: int) -> dict[tuple[int, int], int]:
    return {pair: s for s, pair in enumerate(itertools.combinations(range(n), 2))}


def _signature_powers(n: int) -> np.ndarray:
    """powers[p, s] = bit value of edge slot s after applying permutation p."""
    slot = _edge_slots(n)
    pairs = list(slot)
    perms = list(itertools.permutations(range(n)))
    slotmap = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for pi, perm in enumerate(perms):
        for s, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            slotmap[pi, s] = slot[(a, b) if a < b else (b, a)]
    return np.int64(1) << slotmap


def _connected(n: int, edges: frozenset[tuple[int, int]]) -> bool:
    if n == 1:
        return True
    adj = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = {0}
    stack = [0]
    while stack:
        for v in adj[stack.pop()]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == n


@lru_cache(maxsize=None)
def all_graphs_up_to_iso(n: int) -> tuple[frozenset, ...]:
    """Representatives of every graph (connected or not) on exactly n nodes."""
    if n == 1:
        return (frozenset(),)
    slot = _edge_slots(n)
    powers = _signature_powers(n)
    seen = set()
    out = []
    for base in all_graphs_up_to_iso(n - 1):
        for subset in range(1 << (n - 1)):
            edges = set(base)
            for i in range(n - 1):
                if subset >> i & 1:
                    edges.add((i, n - 1))
            slots = [slot[e] for e in edges]
            cert = int(powers[:, slots].sum(axis=1).min()) if slots else 0
            if cert not in seen:
                seen.add(cert)
                out.append(frozenset(edges))
    return tuple(out)


def connected_graphs_up_to_iso(n: int) -> list[Graph]:
    return [Graph(n, e) for e in all_graphs_up_to_iso(n) if _connected(n, e)]
