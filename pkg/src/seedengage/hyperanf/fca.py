"""FCA: pick seeds by approximate r-neighborhood size, discounting the
neighborhoods of nodes already covered by chosen SEGs."""

from __future__ import annotations

import heapq
import time

import numpy as np

from ..graph import Graph, _bfs, _induced_csr, induced_subgraph
from ..kcore import core_decomposition
from ..seg import EngagementState, Seg
from ..selection import SelectionResult, _check_params, _result
from .anf import DEFAULT_PRECISION, hyperanf
from .hll import DEFAULT_HASH_SEED

__all__ = ["select_fca", "seg_tree_levels", "discount_anv"]


def seg_tree_levels(g: Graph, seg: Seg) -> np.ndarray:
    """BFS depth of each SEG member from the seed inside ``G[seg]``,
    parallel to ``seg.members``."""
    members = seg.members
    indptr, indices = _induced_csr(g, members)
    root = int(np.searchsorted(members, seg.seed))
    stamp = np.full(len(members), -1, dtype=np.int64)
    nodes, dist = _bfs(indptr, indices, root, None, stamp, 0)
    levels = np.empty(len(members), dtype=np.int64)
    levels[nodes] = dist
    return levels


def discount_anv(rows: np.ndarray, level: int, r: int) -> None:
    """Apply the coverage discount in place to ANV rows of nodes at tree
    depth ``level``.

    With ``c = r - level``: radii above ``c`` lose ``ANV^c`` and radii
    ``1..c`` drop to zero. Results are clamped at zero. Rows of nodes deeper
    than ``r`` are left alone.
    """
    c = r - level
    if c < 0 or not len(rows):
        return
    base = rows[:, c].copy()
    rows[:, c + 1 :] -= base[:, None]
    rows[:, 1 : c + 1] = 0.0
    np.maximum(rows, 0.0, out=rows)


def select_fca(
    g: Graph,
    k: int,
    r: int,
    b: int,
    p: int = DEFAULT_PRECISION,
    hash_seed: int = DEFAULT_HASH_SEED,
    threads: int = 1,
) -> SelectionResult:
    _check_params(k, r, b)
    t0 = time.perf_counter()
    core = np.flatnonzero(core_decomposition(g) >= k)
    d = induced_subgraph(g, core)
    anv = hyperanf(d, r, p, hash_seed, threads=threads).values
    t_anf = time.perf_counter()

    # heap of (-ANV^r, parent id, version); stale versions are skipped on pop
    version = np.zeros(len(core), dtype=np.int64)
    removed = np.zeros(len(core), dtype=bool)
    heap = [(-float(anv[i, r]), int(v), 0) for i, v in enumerate(core)]
    heapq.heapify(heap)

    state = EngagementState(g, k, r)
    gains: list[int] = []
    depths: list[int] = []
    skipped = 0
    while len(state.seeds) < b and heap:
        _, u, ver = heapq.heappop(heap)
        i = int(np.searchsorted(core, u))
        if removed[i] or ver != version[i]:
            continue
        removed[i] = True
        seg = state.cache.get(u)
        if seg is None:
            skipped += 1
            continue
        levels = seg_tree_levels(g, seg)
        depths.append(int(levels.max()))
        local = np.searchsorted(core, seg.members)
        for lvl in np.unique(levels).tolist():
            at = local[levels == lvl]
            block = anv[at]
            discount_anv(block, lvl, r)
            anv[at] = block
        for j in local.tolist():
            if not removed[j]:
                version[j] += 1
                heapq.heappush(heap, (-float(anv[j, r]), int(core[j]), int(version[j])))
        gains.append(state.add(u))
    t1 = time.perf_counter()
    return _result(
        state,
        gains,
        t0,
        phases={"hyperanf": t_anf - t0, "select": t1 - t_anf},
        diagnostics={"tree_depths": depths, "null_seg_skipped": skipped},
    )
