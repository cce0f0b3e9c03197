"""Immutable undirected graphs in CSR form, plus the traversal primitives the
selectors are built on.

Nodes are dense integers ``0..n-1``. Labels from input files are kept in
``Graph.labels`` and only translated back at the edges of the system (CLI
output, edge-list writing).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import IO, Iterable

import numpy as np

log = logging.getLogger(__name__)

__all__ = [
    "Graph",
    "DistanceMap",
    "EdgeListParseError",
    "load_edge_list",
    "write_edge_list",
    "r_neighbors",
    "induced_subgraph",
    "connected_component",
    "generate_synthetic",
]


class EdgeListParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected simple graph stored as CSR arrays.

    ``indices[indptr[v]:indptr[v + 1]]`` is the strictly ascending neighbor
    list of ``v``. ``labels[v]`` is the label ``v`` had in its source (input
    file label, or the parent graph's dense ID for induced subgraphs).
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: np.ndarray
    _scratch: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] | np.ndarray,
        labels: Iterable[int] | np.ndarray | None = None,
    ) -> Graph:
        """Build a graph on ``n`` nodes; self-loops and repeated edges are dropped."""
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError(f"edge endpoint outside 0..{n - 1}")
        arr = arr[arr[:, 0] != arr[:, 1]]
        both = np.concatenate([arr, arr[:, ::-1]])
        # unique on the packed (src, dst) key sorts by src then dst
        key = np.unique(both[:, 0] * max(n, 1) + both[:, 1])
        src = key // max(n, 1)
        dst = key % max(n, 1)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
        lab = np.arange(n, dtype=np.int64) if labels is None else np.asarray(list(labels), dtype=np.int64)
        if lab.shape != (n,):
            raise ValueError("labels must have one entry per node")
        return cls(indptr, dst.astype(np.int64), lab)

    @property
    def node_count(self) -> int:
        return len(self.indptr) - 1

    @property
    def edge_count(self) -> int:
        return len(self.indices) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v] : self.indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def edges(self) -> np.ndarray:
        """Each undirected edge once, as rows ``(u, v)`` with ``u < v``."""
        src = np.repeat(np.arange(self.node_count), self.degrees())
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep]], axis=1)

    def check_node(self, v: int) -> int:
        v = int(v)
        if not 0 <= v < self.node_count:
            raise IndexError(f"node {v} out of range for graph with {self.node_count} nodes")
        return v

    def label_to_id(self) -> dict[int, int]:
        return {int(lab): i for i, lab in enumerate(self.labels)}

    def to_scipy(self):
        from scipy.sparse import csr_matrix

        n = self.node_count
        data = np.ones(len(self.indices), dtype=np.float64)
        return csr_matrix((data, self.indices, self.indptr), shape=(n, n))

    def stamp_buffer(self) -> tuple[np.ndarray, list[int]]:
        """Per-graph visit-stamp array reused across BFS calls.

        Callers bump the epoch instead of clearing the array. Not shared
        across threads: each thread should pass its own ``scratch``.
        """
        buf = self._scratch.get("stamp")
        if buf is None:
            buf = self.new_scratch()
            self._scratch["stamp"] = buf
        return buf

    def new_scratch(self) -> tuple[np.ndarray, list[int]]:
        return np.full(self.node_count, -1, dtype=np.int64), [0]


# ---------------------------------------------------------------------------
# Edge-list I/O


def load_edge_list(stream: IO[str] | Iterable[str]) -> Graph:
    """Parse a whitespace separated edge list.

    Blank lines and lines starting with ``#`` are skipped. Columns after the
    first two are ignored, so weighted/timestamped SNAP files load as plain
    graphs. Labels are remapped to dense IDs in first-seen order.
    """
    ids: dict[int, int] = {}
    src: list[int] = []
    dst: list[int] = []
    loops = 0
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise EdgeListParseError(lineno, f"expected two node labels, got {line!r}")
        pair = []
        for tok in parts[:2]:
            try:
                val = int(tok)
            except ValueError:
                raise EdgeListParseError(lineno, f"node label {tok!r} is not an integer") from None
            if val < 0:
                raise EdgeListParseError(lineno, f"node label {val} is negative")
            pair.append(ids.setdefault(val, len(ids)))
        if pair[0] == pair[1]:
            loops += 1
            continue
        src.append(pair[0])
        dst.append(pair[1])

    n = len(ids)
    edges = np.stack([np.asarray(src, dtype=np.int64), np.asarray(dst, dtype=np.int64)], axis=1)
    g = Graph.from_edges(n, edges, labels=np.fromiter(ids.keys(), dtype=np.int64, count=n))
    dupes = len(src) - g.edge_count
    if loops or dupes:
        log.warning("dropped %d self-loops and %d duplicate edges", loops, dupes)
    return g


def write_edge_list(g: Graph, stream: IO[str]) -> None:
    """Write each edge once using the graph's labels. Isolated nodes are lost."""
    lab = g.labels
    for u, v in g.edges():
        stream.write(f"{lab[u]} {lab[v]}\n")


# ---------------------------------------------------------------------------
# Traversal


@dataclass(frozen=True)
class DistanceMap:
    """Result of a truncated BFS.

    ``nodes`` holds reached nodes in BFS order (source first); ``dist`` holds
    the hop count of each, parallel to ``nodes``.
    """

    source: int
    nodes: np.ndarray
    dist: np.ndarray

    def __len__(self) -> int:
        return len(self.nodes)

    def reached(self) -> set[int]:
        return set(self.nodes.tolist())

    def distance(self, v: int) -> int | None:
        hit = np.flatnonzero(self.nodes == v)
        return int(self.dist[hit[0]]) if len(hit) else None


def _gather(indptr: np.ndarray, indices: np.ndarray, rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Concatenated neighbor lists of ``rows`` and, for each entry, its row position."""
    starts = indptr[rows]
    lens = indptr[rows + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    owner = np.repeat(np.arange(len(rows)), lens)
    offs = np.arange(total) - np.repeat(np.cumsum(lens) - lens, lens)
    return indices[starts[owner] + offs], owner


def _bfs(
    indptr: np.ndarray,
    indices: np.ndarray,
    source: int,
    depth: int | None,
    stamp: np.ndarray,
    epoch: int,
    allowed: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    stamp[source] = epoch
    layers = [np.array([source], dtype=np.int64)]
    frontier = layers[0]
    level = 0
    while len(frontier) and (depth is None or level < depth):
        nbrs, _ = _gather(indptr, indices, frontier)
        if allowed is not None:
            nbrs = nbrs[allowed[nbrs]]
        nbrs = np.unique(nbrs[stamp[nbrs] != epoch])
        if not len(nbrs):
            break
        stamp[nbrs] = epoch
        layers.append(nbrs)
        frontier = nbrs
        level += 1
    nodes = np.concatenate(layers)
    dist = np.repeat(np.arange(len(layers)), [len(x) for x in layers])
    return nodes, dist


def _next_epoch(g: Graph, scratch: tuple[np.ndarray, list[int]] | None):
    stamp, counter = scratch if scratch is not None else g.stamp_buffer()
    counter[0] += 1
    return stamp, counter[0]


def r_neighbors(g: Graph, v: int, r: int, scratch=None) -> DistanceMap:
    """Nodes within ``r`` hops of ``v`` (``v`` itself at distance 0)."""
    v = g.check_node(v)
    if r < 1:
        raise ValueError("r must be >= 1")
    stamp, epoch = _next_epoch(g, scratch)
    nodes, dist = _bfs(g.indptr, g.indices, v, r, stamp, epoch)
    return DistanceMap(v, nodes, dist)


def bfs_levels(g: Graph, source: int, scratch=None) -> DistanceMap:
    """Untruncated BFS from ``source``."""
    source = g.check_node(source)
    stamp, epoch = _next_epoch(g, scratch)
    nodes, dist = _bfs(g.indptr, g.indices, source, None, stamp, epoch)
    return DistanceMap(source, nodes, dist)


def connected_component(g: Graph, s: int, scratch=None) -> np.ndarray:
    """Sorted array of nodes reachable from ``s``."""
    return np.sort(bfs_levels(g, s, scratch).nodes)


def induced_subgraph(g: Graph, nodes: Iterable[int] | np.ndarray) -> Graph:
    """Subgraph induced by ``nodes``.

    Members are re-densified in ascending order of their ID in ``g``;
    ``labels`` of the result holds those parent IDs.
    """
    h = np.unique(np.asarray(list(nodes) if not isinstance(nodes, np.ndarray) else nodes, dtype=np.int64))
    if len(h) and (h[0] < 0 or h[-1] >= g.node_count):
        raise IndexError("induced_subgraph: member out of range")
    indptr, indices = _induced_csr(g, h)
    return Graph(indptr, indices, h.copy())


def _induced_csr(g: Graph, h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """CSR of ``g[h]`` with ``h`` sorted; local IDs are positions in ``h``."""
    nbrs, owner = _gather(g.indptr, g.indices, h)
    pos = np.searchsorted(h, nbrs)
    pos[pos == len(h)] = 0
    keep = h[pos] == nbrs if len(h) else np.zeros(0, dtype=bool)
    owner, local = owner[keep], pos[keep]
    indptr = np.zeros(len(h) + 1, dtype=np.int64)
    np.cumsum(np.bincount(owner, minlength=len(h)), out=indptr[1:])
    # h sorted and parent lists ascending, so local lists stay ascending
    return indptr, local.astype(np.int64)


# ---------------------------------------------------------------------------
# Synthetic graphs


def generate_synthetic(n: int, m: int, seed: int) -> Graph:
    """Preferential-attachment graph.

    Construction: nodes ``0..m`` form a clique; each later node ``t`` joins
    ``m`` distinct earlier nodes drawn with probability proportional to
    degree (sampling from the endpoint list of all edges so far). The graph
    therefore has exactly ``m*(m+1)/2 + m*(n-m-1)`` edges. Randomness comes
    from ``numpy.random.default_rng(seed)``.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if n <= m:
        raise ValueError(f"need n > m, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    n_edges = m * (m + 1) // 2 + m * (n - m - 1)
    ends = np.empty(2 * n_edges, dtype=np.int64)
    pos = 0
    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            ends[pos], ends[pos + 1] = u, v
            pos += 2
    for t in range(m + 1, n):
        chosen: set[int] = set()
        while len(chosen) < m:
            chosen.add(int(ends[rng.integers(pos)]))
        for v in sorted(chosen):
            ends[pos], ends[pos + 1] = t, v
            pos += 2
    return Graph.from_edges(n, ends.reshape(-1, 2))
