"""Seed selectors: greedy BA, lazily pruned ERA, centrality baselines and an
exhaustive oracle.

Every selector restricts candidates to the k-core (a seed outside it always
has a null SEG) and breaks ties by ascending node ID.
"""

from __future__ import annotations

import bisect
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graph import Graph, _bfs, _next_epoch
from .kcore import core_decomposition
from .seg import EngagementState, SegCache

__all__ = [
    "SelectionResult",
    "CandidateQueue",
    "CombinationCapError",
    "select_ba",
    "select_era",
    "select_baseline",
    "brute_force_opt",
    "r_neighbor_sizes",
    "alpha_centrality",
    "clustering_coefficient",
    "DEFAULT_ORACLE_CAP",
]

DEFAULT_ORACLE_CAP = 2_000_000


class CombinationCapError(RuntimeError):
    pass


@dataclass
class SelectionResult:
    seeds: list[int]
    marginal_gains: list[int]
    total_engaged: int
    engaged_set: np.ndarray
    seg_evaluations: int
    elapsed: float
    phases: dict[str, float] = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)

    def engaged_per_iteration(self) -> list[int]:
        return np.cumsum(self.marginal_gains).tolist() if self.marginal_gains else []


def _result(state: EngagementState, gains: list[int], t0: float, **extra) -> SelectionResult:
    return SelectionResult(
        seeds=list(state.seeds),
        marginal_gains=gains,
        total_engaged=state.engagement(),
        engaged_set=state.engaged_set(),
        seg_evaluations=state.cache.evaluations,
        elapsed=time.perf_counter() - t0,
        **extra,
    )


def _check_params(k: int, r: int, b: int) -> None:
    if k < 1 or r < 1 or b < 1:
        raise ValueError(f"k, r and b must be >= 1 (got k={k}, r={r}, b={b})")


def _core_members(g: Graph, k: int) -> np.ndarray:
    return np.flatnonzero(core_decomposition(g) >= k)


# ---------------------------------------------------------------------------
# BA


def select_ba(g: Graph, k: int, r: int, b: int, threads: int = 1) -> SelectionResult:
    """Plain greedy: compute every candidate's SEG up front, then repeatedly
    take the largest marginal gain. Stops early once no gain is positive."""
    _check_params(k, r, b)
    t0 = time.perf_counter()
    state = EngagementState(g, k, r)
    cands = _core_members(g, k).tolist()

    if threads > 1 and len(cands) > 1:
        def work(chunk):
            scratch = g.new_scratch()
            for v in chunk:
                state.cache.get(v, scratch)

        chunks = [cands[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(threads) as pool:
            list(pool.map(work, chunks))
    else:
        for v in cands:
            state.cache.get(v)
    t_init = time.perf_counter()

    cands = [v for v in cands if state.cache.get(v) is not None]
    gains: list[int] = []
    while len(state.seeds) < b and cands:
        best, best_gain = -1, 0
        for v in cands:  # ascending ID, strict '>' keeps the smallest ID on ties
            gv = state.gain(v)
            if gv > best_gain:
                best, best_gain = v, gv
        if best_gain == 0:
            break
        gains.append(state.add(best))
        cands.remove(best)
    t1 = time.perf_counter()
    return _result(state, gains, t0, phases={"init": t_init - t0, "greedy": t1 - t_init})


# ---------------------------------------------------------------------------
# ERA


def r_neighbor_sizes(g: Graph, nodes: np.ndarray, r: int) -> np.ndarray:
    """``|N_r(v)|`` (counting ``v``) for each of ``nodes``."""
    if r == 1:
        return g.degrees()[nodes] + 1
    stamp, _ = g.new_scratch()
    out = np.empty(len(nodes), dtype=np.int64)
    for i, v in enumerate(nodes.tolist()):
        reached, _ = _bfs(g.indptr, g.indices, v, r, stamp, i)
        out[i] = len(reached)
    return out


class CandidateQueue:
    """Candidates ordered by descending upper bound, then ascending ID.

    Backed by a sorted list of ``(-bound, node)`` keys; updates remove and
    re-insert by binary search.
    """

    def __init__(self, nodes, bounds):
        self._bound = {int(v): int(e) for v, e in zip(nodes, bounds)}
        self._keys = sorted((-e, v) for v, e in self._bound.items())
        self._evaluated: set[int] = set()

    def __len__(self) -> int:
        return len(self._keys)

    def __iter__(self):
        for neg, v in self._keys:
            yield v, -neg

    def bound(self, v: int) -> int:
        return self._bound[v]

    def evaluated(self, v: int) -> bool:
        return v in self._evaluated

    def remove(self, v: int) -> None:
        key = (-self._bound.pop(v), v)
        del self._keys[bisect.bisect_left(self._keys, key)]
        self._evaluated.discard(v)

    def update(self, v: int, bound: int) -> None:
        old = (-self._bound[v], v)
        del self._keys[bisect.bisect_left(self._keys, old)]
        self._bound[v] = bound
        bisect.insort(self._keys, (-bound, v))
        self._evaluated.add(v)

    def is_ordered(self) -> bool:
        return all(a < b for a, b in zip(self._keys, self._keys[1:]))


def select_era(g: Graph, k: int, r: int, b: int) -> SelectionResult:
    """Lazy greedy with ``|N_r(v)|`` as the initial gain upper bound.

    The scan over the queue stops as soon as the best gain found so far
    beats the next bound. A bound equal to the best gain only stops the scan
    when that node's ID is larger than the current best, so the result
    matches :func:`select_ba` seed for seed.
    """
    _check_params(k, r, b)
    t0 = time.perf_counter()
    state = EngagementState(g, k, r)
    cands = _core_members(g, k)
    queue = CandidateQueue(cands, r_neighbor_sizes(g, cands, r))
    t_init = time.perf_counter()

    gains: list[int] = []
    scanned = 0
    while len(state.seeds) < b and len(queue):
        cur, cur_gain = -1, 0
        touched: list[tuple[int, int]] = []
        for u, bound in queue:
            if bound == 0 or cur_gain > bound or (cur_gain == bound and u > cur):
                break
            gu = state.gain(u)
            scanned += 1
            if gu > cur_gain or (gu == cur_gain and gu > 0 and u < cur):
                cur, cur_gain = u, gu
            touched.append((u, gu))
        if cur_gain == 0:
            break
        gains.append(state.add(cur))
        queue.remove(cur)
        for u, gu in touched:
            if u != cur:
                queue.update(u, gu)
    t1 = time.perf_counter()
    return _result(
        state,
        gains,
        t0,
        phases={"init": t_init - t0, "greedy": t1 - t_init},
        diagnostics={"gain_checks": scanned},
    )


# ---------------------------------------------------------------------------
# Baselines


def clustering_coefficient(g: Graph) -> np.ndarray:
    """Local clustering coefficient; 0 for nodes of degree < 2."""
    a = g.to_scipy()
    tri2 = np.asarray((a @ a).multiply(a).sum(axis=1)).ravel()  # 2 * triangles
    d = g.degrees().astype(np.float64)
    denom = d * (d - 1)
    out = np.zeros(g.node_count)
    np.divide(tri2, denom, out=out, where=denom > 0)
    return out


def alpha_centrality(
    g: Graph, alpha: float | None = None, tol: float = 1e-10, max_iter: int = 1000
) -> np.ndarray:
    """Solve ``x = alpha * A^T x + 1`` by fixed-point iteration.

    ``alpha`` defaults to ``0.9 / max_degree`` which keeps it below the
    reciprocal of the spectral radius.
    """
    n = g.node_count
    if n == 0:
        return np.zeros(0)
    dmax = int(g.degrees().max())
    if dmax == 0:
        return np.ones(n)
    if alpha is None:
        alpha = 0.9 / dmax
    if not 0 < alpha < 1.0 / dmax:
        raise ValueError(f"alpha must lie in (0, 1/max_degree) = (0, {1.0 / dmax:g})")
    at = g.to_scipy().T.tocsr()
    x = np.ones(n)
    for _ in range(max_iter):
        nxt = alpha * (at @ x) + 1.0
        if np.max(np.abs(nxt - x)) < tol:
            return nxt
        x = nxt
    return x


def _scores(g: Graph, measure: str, alpha: float | None) -> np.ndarray:
    if measure == "degree":
        return g.degrees().astype(np.float64)
    if measure in ("clustering_coefficient", "cc"):
        return clustering_coefficient(g)
    if measure in ("alpha_centrality", "ac"):
        return alpha_centrality(g, alpha)
    raise ValueError(f"unknown measure {measure!r}")


def select_baseline(
    g: Graph, k: int, r: int, b: int, measure: str = "degree", alpha: float | None = None
) -> SelectionResult:
    """Walk nodes by descending centrality, skipping null-SEG nodes, until
    ``b`` seeds are picked. Zero-gain picks still use up budget."""
    _check_params(k, r, b)
    t0 = time.perf_counter()
    scores = _scores(g, measure, alpha)
    t_rank = time.perf_counter()
    in_core = core_decomposition(g) >= k
    order = np.lexsort((np.arange(g.node_count), -scores))
    state = EngagementState(g, k, r)
    gains: list[int] = []
    for v in order.tolist():
        if len(state.seeds) == b:
            break
        if not in_core[v] or state.cache.get(v) is None:
            continue
        gains.append(state.add(v))
    t1 = time.perf_counter()
    return _result(state, gains, t0, phases={"rank": t_rank - t0, "select": t1 - t_rank})


# ---------------------------------------------------------------------------
# Oracle


def brute_force_opt(
    g: Graph, k: int, r: int, b: int, cap: int = DEFAULT_ORACLE_CAP
) -> SelectionResult:
    """Exact maximum of engagement over all seed sets of size at most ``b``.

    Among optimal sets, the lexicographically smallest sorted seed list is
    returned. Raises :class:`CombinationCapError` when more than ``cap``
    subsets would need checking.
    """
    _check_params(k, r, b)
    t0 = time.perf_counter()
    cache = SegCache(g, k, r)
    masks: dict[int, int] = {}
    for v in _core_members(g, k).tolist():
        seg = cache.get(v)
        if seg is not None:
            masks[v] = sum(1 << int(x) for x in seg.members)
    cands = sorted(masks)
    size = min(b, len(cands))
    n_subsets = sum(math.comb(len(cands), i) for i in range(size + 1))
    if n_subsets > cap:
        raise CombinationCapError(
            f"{n_subsets} seed subsets exceed the oracle cap of {cap} "
            f"({len(cands)} candidates, b={b})"
        )

    best_val, best_set = 0, ()
    for i in range(1, size + 1):
        for combo in combinations(cands, i):
            m = 0
            for v in combo:
                m |= masks[v]
            val = m.bit_count()
            if val > best_val or (val == best_val and combo < best_set):
                best_val, best_set = val, combo

    state = EngagementState(g, k, r, cache=cache)
    gains = [state.add(v) for v in best_set]
    return _result(state, gains, t0)
