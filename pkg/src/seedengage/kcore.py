"""Core decomposition (bucket peeling) and k-core extraction."""

from __future__ import annotations

import numpy as np

from .graph import Graph

__all__ = ["core_decomposition", "k_core", "peel_mask", "max_coreness"]


def core_decomposition(g: Graph) -> np.ndarray:
    """Coreness of every node, by Batagelj-Zaversnik bucket peeling.

    Linear in ``|V| + |E|``. Within a bucket, nodes are processed in
    ascending ID order at the start; the coreness values themselves do not
    depend on processing order.
    """
    n = g.node_count
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    deg = g.degrees().tolist()
    indptr = g.indptr.tolist()
    adj = g.indices.tolist()
    md = max(deg)

    # bin[d] = first position in `order` of nodes with current degree d
    counts = [0] * (md + 1)
    for d in deg:
        counts[d] += 1
    bin_start = [0] * (md + 1)
    s = 0
    for d in range(md + 1):
        bin_start[d] = s
        s += counts[d]
    pos = [0] * n
    order = [0] * n
    fill = bin_start[:]
    for v in range(n):
        d = deg[v]
        pos[v] = fill[d]
        order[fill[d]] = v
        fill[d] += 1

    for i in range(n):
        v = order[i]
        dv = deg[v]
        for j in range(indptr[v], indptr[v + 1]):
            u = adj[j]
            du = deg[u]
            if du > dv:
                # swap u with the first node of its bucket, then shrink the bucket
                pu = pos[u]
                pw = bin_start[du]
                w = order[pw]
                if u != w:
                    order[pu], order[pw] = w, u
                    pos[u], pos[w] = pw, pu
                bin_start[du] += 1
                deg[u] = du - 1
    return np.asarray(deg, dtype=np.int64)


def max_coreness(g: Graph) -> int:
    core = core_decomposition(g)
    return int(core.max()) if len(core) else 0


def k_core(g: Graph, k: int, coreness: np.ndarray | None = None) -> np.ndarray:
    """Sorted IDs of the k-core. ``k <= 0`` returns every node."""
    if k <= 0:
        return np.arange(g.node_count, dtype=np.int64)
    core = core_decomposition(g) if coreness is None else coreness
    return np.flatnonzero(core >= k).astype(np.int64)


def peel_mask(indptr: np.ndarray, indices: np.ndarray, k: int) -> np.ndarray:
    """Boolean membership of the k-core of a CSR graph, by batch peeling.

    Cheaper than a full decomposition when only one ``k`` is needed; used on
    the small r-balls inside SEG computation.
    """
    deg = np.diff(indptr)
    alive = deg >= k
    if alive.all():
        return alive
    dead = np.flatnonzero(~alive)
    deg = deg.copy()
    while len(dead):
        starts = indptr[dead]
        lens = indptr[dead + 1] - starts
        total = int(lens.sum())
        if total == 0:
            break
        offs = np.arange(total) - np.repeat(np.cumsum(lens) - lens, lens)
        nbrs = indices[np.repeat(starts, lens) + offs]
        nbrs = nbrs[alive[nbrs]]
        np.subtract.at(deg, nbrs, 1)
        cand = np.unique(nbrs)
        dead = cand[deg[cand] < k]
        alive[dead] = False
    return alive
