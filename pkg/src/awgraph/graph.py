"""Graph ingestion, the built-in graph families, and exact distance-regularity checks.

Everything in this module is integer arithmetic; no tolerance is involved in
deciding whether a graph is distance-regular.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import GraphInputError, NotDistanceRegular, NotRegular

__all__ = [
    "Graph",
    "DistanceRegularData",
    "load_graph",
    "generate_family",
    "compute_distance_data",
    "FAMILIES",
]

FAMILIES = ("cycle", "crown", "hadamard", "hypercube")


@dataclass(frozen=True)
class Graph:
    n: int
    adjacency: np.ndarray
    labels: Optional[tuple] = None
    name: str = "graph"

    def __post_init__(self):
        adj = np.asarray(self.adjacency)
        if adj.shape != (self.n, self.n):
            raise GraphInputError(f"adjacency has shape {adj.shape}, expected ({self.n}, {self.n})")
        if not np.all((adj == 0) | (adj == 1)):
            raise GraphInputError("adjacency entries must be 0 or 1")
        if np.any(np.diag(adj)):
            v = int(np.flatnonzero(np.diag(adj))[0])
            raise GraphInputError(f"loop at vertex {v}")
        if not np.array_equal(adj, adj.T):
            i, j = map(int, np.argwhere(adj != adj.T)[0])
            raise GraphInputError(f"asymmetric adjacency at ({i}, {j})")
        adj = adj.astype(np.int64)
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        if self.n == 0:
            raise GraphInputError("empty graph")
        if np.any(_bfs_distances(adj, 0) < 0):
            raise GraphInputError("graph is disconnected")

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)


@dataclass(frozen=True)
class DistanceRegularData:
    """Distance matrices and intersection numbers of a distance-regular graph.

    ``intersection_numbers[h, i, j]`` is p^h_ij, the number of vertices at
    distance i from x and distance j from y whenever x, y are at distance h.
    """

    diameter: int
    distance: np.ndarray
    distance_matrices: tuple
    intersection_numbers: np.ndarray
    valency: int
    warning: Optional[str] = None

    @property
    def n(self) -> int:
        return self.distance.shape[0]

    @property
    def b(self) -> list[int]:
        p = self.intersection_numbers
        return [int(p[i, 1, i + 1]) for i in range(self.diameter)]

    @property
    def c(self) -> list[int]:
        p = self.intersection_numbers
        return [int(p[i, 1, i - 1]) for i in range(1, self.diameter + 1)]

    @property
    def a(self) -> list[int]:
        p = self.intersection_numbers
        return [int(p[i, 1, i]) for i in range(self.diameter + 1)]

    @property
    def intersection_array(self) -> tuple[list[int], list[int]]:
        return self.b, self.c


# ---------------------------------------------------------------------------
# ingestion


def _lines(text: str) -> list[str]:
    # tolerate CRLF and trailing blank lines
    lines = [ln.strip() for ln in text.replace("\r\n", "\n").replace("\r", "\n").split("\n")]
    while lines and not lines[-1]:
        lines.pop()
    return lines


def _parse_edge_list(text: str) -> np.ndarray:
    lines = [ln for ln in _lines(text) if ln]
    if not lines:
        raise GraphInputError("empty edge list")
    try:
        header = [int(t) for t in lines[0].split()]
    except ValueError as exc:
        raise GraphInputError(f"bad header line {lines[0]!r}") from exc
    if len(header) != 2 or header[0] <= 0 or header[1] < 0:
        raise GraphInputError(f"header must be 'n m', got {lines[0]!r}")
    n, m = header
    if len(lines) - 1 != m:
        raise GraphInputError(f"header announces {m} edges, found {len(lines) - 1}")
    adj = np.zeros((n, n), dtype=np.int64)
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            u, v = (int(t) for t in ln.split())
        except ValueError as exc:
            raise GraphInputError(f"line {lineno}: expected 'u v', got {ln!r}") from exc
        if not (0 <= u < n and 0 <= v < n):
            raise GraphInputError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphInputError(f"line {lineno}: loop at vertex {u}")
        if adj[u, v]:
            raise GraphInputError(f"line {lineno}: duplicate edge {u} {v}")
        adj[u, v] = adj[v, u] = 1
    return adj


def _parse_dense(text: str) -> np.ndarray:
    lines = _lines(text)
    n = len(lines)
    if n == 0:
        raise GraphInputError("empty matrix")
    rows = []
    for lineno, ln in enumerate(lines, start=1):
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise GraphInputError(f"line {lineno}: expected {n} characters from {{0,1}}, got {ln!r}")
        rows.append([int(ch) for ch in ln])
    adj = np.array(rows, dtype=np.int64)
    if np.any(np.diag(adj)):
        raise GraphInputError(f"loop at vertex {int(np.flatnonzero(np.diag(adj))[0])}")
    return adj


def load_graph(source: str, format: str = "edgelist", name: str = "graph") -> Graph:
    """Parse an edge list or a dense 0/1 matrix into a validated :class:`Graph`.

    Edge lists start with ``n m`` followed by ``m`` lines ``u v`` (0-indexed).
    Dense input is ``n`` lines of ``n`` characters from ``{0, 1}``.
    """
    fmt = format.replace("-", "").replace("_", "").lower()
    if fmt == "edgelist":
        adj = _parse_edge_list(source)
    elif fmt == "dense":
        adj = _parse_dense(source)
    else:
        raise GraphInputError(f"unknown input format {format!r}")
    return Graph(adj.shape[0], adj, name=name)


# ---------------------------------------------------------------------------
# families


def _sylvester(order: int) -> np.ndarray:
    h = np.array([[1]], dtype=np.int64)
    while h.shape[0] < order:
        h = np.block([[h, h], [h, -h]])
    return h


def _from_edges(n: int, edges, name: str, labels=None) -> Graph:
    adj = np.zeros((n, n), dtype=np.int64)
    for u, v in edges:
        adj[u, v] = adj[v, u] = 1
    return Graph(n, adj, labels=labels, name=name)


def generate_family(family: str, size: int) -> Graph:
    """Build a member of one of the bipartite families.

    ``cycle(size)`` is the cycle on ``size`` vertices (``size`` even, >= 6).
    ``crown(size)`` is K_{size,size} with a perfect matching removed.
    ``hadamard(size)`` is the Hadamard graph of the Sylvester matrix of order
    ``size`` (4 or 8). ``hypercube(size)`` is the ``size``-cube.
    """
    size = int(size)
    if family == "cycle":
        if size < 6 or size % 2:
            raise ValueError(f"cycle size must be even and >= 6, got {size}")
        return _from_edges(size, [(i, (i + 1) % size) for i in range(size)], f"cycle({size})")
    if family == "crown":
        if size < 3:
            raise ValueError(f"crown size must be >= 3, got {size}")
        # u_i = i, v_j = size + j, u_i ~ v_j iff i != j
        edges = [(i, size + j) for i in range(size) for j in range(size) if i != j]
        labels = tuple(f"u{i}" for i in range(size)) + tuple(f"v{j}" for j in range(size))
        return _from_edges(2 * size, edges, f"crown({size})", labels)
    if family == "hadamard":
        if size not in (4, 8):
            raise ValueError(f"hadamard size must be 4 or 8, got {size}")
        h = _sylvester(size)
        # Row vertices (r, s) with sign s in {+1, -1}, then column vertices (c, s).
        # (r, s) ~ (c, t) iff H[r, c] == s * t.
        signs = (1, -1)
        rows = [(r, s) for r in range(size) for s in signs]
        cols = [(c, t) for c in range(size) for t in signs]
        index = {("r",) + v: k for k, v in enumerate(rows)}
        index.update({("c",) + v: len(rows) + k for k, v in enumerate(cols)})
        edges = [
            (index[("r", r, s)], index[("c", c, t)])
            for (r, s), (c, t) in itertools.product(rows, cols)
            if h[r, c] == s * t
        ]
        labels = tuple(f"r{r}{'+' if s > 0 else '-'}" for r, s in rows) + tuple(
            f"c{c}{'+' if t > 0 else '-'}" for c, t in cols
        )
        return _from_edges(4 * size, edges, f"hadamard({size})", labels)
    if family == "hypercube":
        if size < 3:
            raise ValueError(f"hypercube dimension must be >= 3, got {size}")
        n = 1 << size
        edges = [(v, v ^ (1 << b)) for v in range(n) for b in range(size) if v < v ^ (1 << b)]
        return _from_edges(n, edges, f"hypercube({size})")
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


# ---------------------------------------------------------------------------
# distances


def _bfs_distances(adj: np.ndarray, source: int) -> np.ndarray:
    n = adj.shape[0]
    dist = np.full(n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    neighbours = [np.flatnonzero(row) for row in adj]
    while queue:
        u = queue.popleft()
        for v in neighbours[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def distance_matrix(g: Graph) -> np.ndarray:
    return np.stack([_bfs_distances(g.adjacency, x) for x in range(g.n)])


def compute_distance_data(g: Graph) -> DistanceRegularData:
    """Distance matrices and certified intersection numbers.

    Raises :class:`NotRegular` for irregular graphs and
    :class:`NotDistanceRegular` (with a witness) when some count
    |Gamma_i(x) & Gamma_j(y)| depends on the pair (x, y).
    """
    deg = g.degrees
    if np.any(deg != deg[0]):
        lo, hi = int(np.argmin(deg)), int(np.argmax(deg))
        raise NotRegular(f"graph is not regular: deg({lo})={deg[lo]}, deg({hi})={deg[hi]}")
    dist = distance_matrix(g)
    diameter = int(dist.max())
    mats = tuple((dist == i).astype(np.int64) for i in range(diameter + 1))
    p = np.zeros((diameter + 1,) * 3, dtype=np.int64)
    cells = [np.argwhere(dist == h) for h in range(diameter + 1)]
    for i, j in itertools.product(range(diameter + 1), repeat=2):
        prod = mats[i] @ mats[j]
        for h in range(diameter + 1):
            values = prod[dist == h]
            lo, hi = values.min(), values.max()
            if lo != hi:
                pair_lo = tuple(map(int, cells[h][int(np.argmin(values))]))
                pair_hi = tuple(map(int, cells[h][int(np.argmax(values))]))
                witness = {"h": h, "i": i, "j": j, "pairs": [pair_lo, pair_hi], "counts": [int(lo), int(hi)]}
                raise NotDistanceRegular(
                    f"p^{h}_{i}{j} is not constant: pair {pair_lo} gives {lo}, pair {pair_hi} gives {hi}",
                    witness,
                )
            p[h, i, j] = lo
    for m in mats:
        m.setflags(write=False)
    warning = None
    if diameter < 3:
        warning = f"diameter {diameter} < 3: outside the range handled by the q-Racah pipeline"
    return DistanceRegularData(diameter, dist, mats, p, int(deg[0]), warning)

