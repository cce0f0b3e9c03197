"""HyperANF: per-node approximate neighborhood sizes for radii ``1..r``."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..graph import Graph, _bfs
from .hll import DEFAULT_HASH_SEED, estimate_registers, register_updates

__all__ = ["AnvTable", "hyperanf", "exact_neighborhood_function", "DEFAULT_PRECISION"]

DEFAULT_PRECISION = 7
_CHUNK_BYTES = 1 << 21


@dataclass
class AnvTable:
    """``values[v, t]`` approximates ``|N_t(v)|``; column 0 is the radius-0
    estimate (about 1). Rows follow the dense IDs of the graph it was built on."""

    values: np.ndarray

    @property
    def radius(self) -> int:
        return self.values.shape[1] - 1

    def anv(self, v: int, t: int) -> float:
        return float(self.values[v, t])

    def to_csv(self, stream, labels: np.ndarray | None = None) -> None:
        r = self.radius
        stream.write("node," + ",".join(f"anv{t}" for t in range(1, r + 1)) + "\n")
        for v, row in enumerate(self.values):
            name = v if labels is None else int(labels[v])
            stream.write(f"{name}," + ",".join(f"{x:.6f}" for x in row[1:]) + "\n")


def _round(indptr, indices, regs, rows: np.ndarray, out: np.ndarray) -> None:
    """``out[rows] = max(regs[rows], max over neighbors)``."""
    lo, hi = int(rows[0]), int(rows[-1]) + 1
    out[lo:hi] = regs[lo:hi]
    deg = indptr[lo + 1 : hi + 1] - indptr[lo:hi]
    nz = np.flatnonzero(deg) + lo
    if not len(nz):
        return
    seg = indices[indptr[lo] : indptr[hi]]
    starts = indptr[nz] - indptr[lo]
    red = np.maximum.reduceat(regs[seg], starts, axis=0)
    out[nz] = np.maximum(out[nz], red)


def _chunks(g: Graph, m: int) -> list[np.ndarray]:
    # keep the gathered (edges x registers) block near _CHUNK_BYTES
    n = g.node_count
    budget = max(1, _CHUNK_BYTES // m)
    bounds = [0]
    ptr = g.indptr
    while bounds[-1] < n:
        start = bounds[-1]
        stop = int(np.searchsorted(ptr, ptr[start] + budget, side="right")) - 1
        bounds.append(min(n, max(stop, start + 1)))
    return [np.arange(a, b) for a, b in zip(bounds, bounds[1:])]


def hyperanf(
    g: Graph,
    r: int,
    p: int = DEFAULT_PRECISION,
    hash_seed: int = DEFAULT_HASH_SEED,
    threads: int = 1,
) -> AnvTable:
    """Run ``r`` synchronous register-max rounds and snapshot estimates.

    Every node's counter starts with its own dense ID. After round ``t`` the
    counter of ``v`` is the union of the counters of ``N_t(v)``.
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    if not 4 <= p <= 16:
        raise ValueError(f"precision must be in [4, 16], got {p}")
    n, m = g.node_count, 1 << p
    regs = np.zeros((n, m), dtype=np.uint8)
    if n:
        idx, rank = register_updates(np.arange(n), p, hash_seed)
        regs[np.arange(n), idx] = rank
    values = np.empty((n, r + 1))
    values[:, 0] = estimate_registers(regs) if n else 0
    if n == 0:
        return AnvTable(values)

    chunks = _chunks(g, m)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for t in range(1, r + 1):
            nxt = np.empty_like(regs)
            if pool is None:
                for rows in chunks:
                    _round(g.indptr, g.indices, regs, rows, nxt)
            else:
                list(pool.map(lambda rows: _round(g.indptr, g.indices, regs, rows, nxt), chunks))
            regs = nxt
            values[:, t] = estimate_registers(regs)
    finally:
        if pool is not None:
            pool.shutdown()
    return AnvTable(values)


def exact_neighborhood_function(g: Graph, r: int) -> np.ndarray:
    """Exact ``|N_t(v)|`` for ``t = 0..r`` by truncated BFS from every node."""
    n = g.node_count
    out = np.empty((n, r + 1), dtype=np.int64)
    stamp, _ = g.new_scratch()
    for v in range(n):
        _, dist = _bfs(g.indptr, g.indices, v, r, stamp, v)
        out[v] = np.cumsum(np.bincount(dist, minlength=r + 1))
    return out
