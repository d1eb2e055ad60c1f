"""Simple connected undirected graphs: containers, generators, Laplace matrices.

Nodes are labeled 0..n-1. Edges are unordered pairs stored as (i, j) with
i < j. Every generator conditions on connectivity by rejection (resampling
the whole graph), so downstream spectra always have a single zero eigenvalue.
"""
from __future__ import annotations

import heapq
import itertools
from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Graph",
    "make_graph",
    "build_laplacian",
    "degree_sequence",
    "generate_er_gnl",
    "generate_er_gnp",
    "generate_ba",
    "generate_ws",
    "generate_tree",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "circulant_graph",
    "generate_random_regular",
    "read_edge_list",
    "write_edge_list",
]

# Resample budget for connectivity rejection before giving up.
MAX_REJECTIONS = 10_000


@dataclass(frozen=True)
class Graph:
    """A simple connected undirected graph."""

    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("graph needs at least one node")
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"edge ({i},{j}) invalid for n={self.n}")
        if not _is_connected(self.n, self.edges):
            raise ValueError("graph is not connected")

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, i: int) -> set[int]:
        out = set()
        for a, b in self.edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out


def _normalize_edges(edges: Iterable[tuple[int, int]]) -> frozenset[tuple[int, int]]:
    out = set()
    for i, j in edges:
        if i == j:
            raise ValueError(f"self-loop at node {i}")
        out.add((i, j) if i < j else (j, i))
    return frozenset(out)


def _is_connected(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    if n == 1:
        return True
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    seen = bytearray(n)
    stack = [0]
    seen[0] = 1
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = 1
                count += 1
                stack.append(v)
    return count == n


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a Graph from any mix of (i, j) / (j, i) pairs, validating it."""
    return Graph(n, _normalize_edges(edges))


def build_laplacian(g: Graph) -> np.ndarray:
    """Laplace matrix: degrees on the diagonal, -1 where a link exists."""
    L = np.zeros((g.n, g.n))
    for i, j in g.edges:
        L[i, i] += 1.0
        L[j, j] += 1.0
        L[i, j] = -1.0
        L[j, i] = -1.0
    return L


def degree_sequence(g: Graph) -> np.ndarray:
    """Degree of each node, indexed by node label."""
    deg = np.zeros(g.n, dtype=np.int64)
    for i, j in g.edges:
        deg[i] += 1
        deg[j] += 1
    return deg


# ----------------------------------------------------------------------
# Random generators.  All take an explicit numpy Generator and resample
# until the sample is connected (MAX_REJECTIONS cap).
# ----------------------------------------------------------------------


def _rejection_sample(draw, what: str) -> Graph:
    for _ in range(MAX_REJECTIONS):
        n, edges = draw()
        if _is_connected(n, edges):
            return Graph(n, frozenset(edges))
    raise RuntimeError(f"no connected {what} graph found in {MAX_REJECTIONS} resamples")


def generate_er_gnl(n: int, l: int, rng: np.random.Generator) -> Graph:
    """Uniform connected graph with n nodes and exactly l links (rejection)."""
    max_l = n * (n - 1) // 2
    if not (n - 1 <= l <= max_l):
        raise ValueError(f"need n-1 <= l <= n(n-1)/2, got n={n}, l={l}")
    pairs = list(itertools.combinations(range(n), 2))

    def draw():
        idx = rng.choice(max_l, size=l, replace=False)
        return n, [pairs[k] for k in idx]

    return _rejection_sample(draw, f"G({n},{l})")


def generate_er_gnp(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Each possible link present independently with probability p (rejection)."""
    if not (0.0 < p <= 1.0):
        raise ValueError(f"need 0 < p <= 1, got p={p}")
    pairs = list(itertools.combinations(range(n), 2))

    def draw():
        mask = rng.random(len(pairs)) < p
        return n, [e for e, keep in zip(pairs, mask) if keep]

    return _rejection_sample(draw, f"G({n},p={p})")


def generate_ba(n: int, k: int, rng: np.random.Generator) -> Graph:
    """Preferential attachment from a 3-cycle seed, k links per new node.

    New nodes attach to k distinct existing nodes, each drawn with
    probability proportional to its degree (duplicates redrawn). The result
    has 3 + k(n-3) edges and is connected by construction.
    """
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    if not (1 <= k <= 3):
        raise ValueError(f"need 1 <= k <= 3, got {k}")
    edges = [(0, 1), (0, 2), (1, 2)]
    deg = [2, 2, 2]
    for new in range(3, n):
        targets: set[int] = set()
        weights = np.asarray(deg, dtype=float)
        while len(targets) < k:
            t = int(rng.choice(new, p=weights / weights.sum()))
            targets.add(t)
        for t in sorted(targets):
            edges.append((t, new))
        deg.append(k)
        for t in targets:
            deg[t] += 1
    return Graph(n, _normalize_edges(edges))


def generate_ws(n: int, k: int, p: float, rng: np.random.Generator) -> Graph:
    """Watts-Strogatz: ring with k neighbors per side, far end rewired w.p. p.

    Edge count n*k is preserved exactly; rewiring targets avoid self-loops
    and duplicates. Resamples until connected.
    """
    if not (n > 2 * k >= 2):
        raise ValueError(f"need n > 2k >= 2, got n={n}, k={k}")
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"need 0 <= p <= 1, got {p}")

    def draw():
        adj: list[set[int]] = [set() for _ in range(n)]
        for i in range(n):
            for j in range(1, k + 1):
                v = (i + j) % n
                adj[i].add(v)
                adj[v].add(i)
        for j in range(1, k + 1):
            for i in range(n):
                v = (i + j) % n
                if rng.random() >= p:
                    continue
                if len(adj[i]) >= n - 1:
                    continue  # node saturated, keep lattice edge
                while True:
                    w = int(rng.integers(n))
                    if w != i and w not in adj[i]:
                        break
                adj[i].discard(v)
                adj[v].discard(i)
                adj[i].add(w)
                adj[w].add(i)
        return n, [(i, j) for i in range(n) for j in adj[i] if i < j]

    return _rejection_sample(draw, f"WS({n},{k},{p})")


def generate_tree(n: int, rng: np.random.Generator) -> Graph:
    """Uniform random labeled tree via Prüfer-sequence decoding."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n == 2:
        return Graph(2, frozenset({(0, 1)}))
    seq = [int(x) for x in rng.integers(0, n, size=n - 2)]
    return Graph(n, _normalize_edges(decode_pruefer(n, seq)))


def decode_pruefer(n: int, seq: list[int]) -> list[tuple[int, int]]:
    """Decode a Prüfer sequence of length n-2 into the edges of its tree."""
    if len(seq) != n - 2:
        raise ValueError("sequence length must be n-2")
    deg = [1] * n
    for s in seq:
        deg[s] += 1
    edges = []
    leaves = [i for i in range(n) if deg[i] == 1]
    heapq.heapify(leaves)
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, s), max(leaf, s)))
        deg[s] -= 1
        if deg[s] == 1:
            heapq.heappush(leaves, s)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return edges


# ----------------------------------------------------------------------
# Deterministic families (used mostly for tests and uniqueness checks).
# ----------------------------------------------------------------------


def path_graph(n: int) -> Graph:
    if n < 2:
        raise ValueError("path needs n >= 2")
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, _normalize_edges((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    if n < 2:
        raise ValueError("complete graph needs n >= 2")
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def circulant_graph(n: int, k: int) -> Graph:
    """Ring lattice where each node links to its k nearest neighbors per side."""
    if not (n > 2 * k >= 2):
        raise ValueError(f"need n > 2k >= 2, got n={n}, k={k}")
    edges = ((i, (i + j) % n) for i in range(n) for j in range(1, k + 1))
    return Graph(n, _normalize_edges(edges))


def generate_random_regular(n: int, d: int, rng: np.random.Generator) -> Graph:
    """Random connected d-regular graph (configuration model with retries)."""
    if not (0 < d < n):
        raise ValueError(f"need 0 < d < n, got n={n}, d={d}")
    if (n * d) % 2 != 0:
        raise ValueError("n*d must be even")

    def draw():
        for _ in range(MAX_REJECTIONS):
            stubs = np.repeat(np.arange(n), d)
            rng.shuffle(stubs)
            edges = set()
            ok = True
            for a, b in zip(stubs[0::2], stubs[1::2]):
                if a == b:
                    ok = False
                    break
                e = (int(a), int(b)) if a < b else (int(b), int(a))
                if e in edges:
                    ok = False
                    break
                edges.add(e)
            if ok:
                return n, edges
        raise RuntimeError("no simple d-regular pairing found")

    return _rejection_sample(draw, f"{d}-regular")


# ----------------------------------------------------------------------
# Edge-list text format: first line "N M", then M lines "i j" with i < j.
# ----------------------------------------------------------------------


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"{g.n} {g.m}\n")
        for i, j in sorted(g.edges):
            fh.write(f"{i} {j}\n")


def read_edge_list(path) -> Graph:
    """Read and validate a graph; raises ValueError on malformed input."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("first line must be 'N M'")
        n, m = int(header[0]), int(header[1])
        edges = []
        for line in fh:
            if not line.strip():
                continue
            i, j = (int(x) for x in line.split())
            if not i < j:
                raise ValueError(f"edges must be written 'i j' with i < j, got {i} {j}")
            edges.append((i, j))
    if len(edges) != m:
        raise ValueError(f"expected {m} edges, found {len(edges)}")
    if len(set(edges)) != m:
        raise ValueError("duplicate edge in file")
    return Graph(n, frozenset(edges))
