"""Seed-based engaged groups and the engagement objective.

The SEG of a seed ``s`` is the connected component containing ``s`` of the
k-core of ``G[N_r(s)]``, or ``None`` when ``s`` does not survive the peeling.
Distances are therefore measured in ``G``; members are reachable from the
seed inside the SEG but not necessarily within ``r`` hops there.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

import numpy as np

from .graph import Graph, _bfs, _induced_csr, _next_epoch
from .kcore import peel_mask

__all__ = ["Seg", "compute_seg", "EngagementState", "SegCache", "engagement", "engagement_gain"]


@dataclass(frozen=True, eq=False)
class Seg:
    seed: int
    members: np.ndarray  # sorted dense IDs of the parent graph

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, v: int) -> bool:
        i = np.searchsorted(self.members, v)
        return bool(i < len(self.members) and self.members[i] == v)

    def as_set(self) -> frozenset[int]:
        return frozenset(self.members.tolist())


def compute_seg(g: Graph, s: int, k: int, r: int, scratch=None) -> Seg | None:
    s = g.check_node(s)
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if g.degree(s) < k:
        return None
    stamp, epoch = _next_epoch(g, scratch)
    ball, _ = _bfs(g.indptr, g.indices, s, r, stamp, epoch)
    ball = np.sort(ball)
    indptr, indices = _induced_csr(g, ball)
    alive = peel_mask(indptr, indices, k)
    root = int(np.searchsorted(ball, s))
    if not alive[root]:
        return None
    comp_stamp = np.full(len(ball), -1, dtype=np.int64)
    allowed = None if alive.all() else alive
    comp, _ = _bfs(indptr, indices, root, None, comp_stamp, 0, allowed=allowed)
    return Seg(s, ball[np.sort(comp)])


class SegCache:
    """SEGs keyed by seed for one fixed ``(graph, k, r)``.

    Reads are lock-free; insertion takes a lock so concurrent evaluators
    never store two different objects for one seed.
    """

    def __init__(self, g: Graph, k: int, r: int):
        self.g, self.k, self.r = g, k, r
        self._segs: dict[int, Seg | None] = {}
        self._lock = threading.Lock()
        self.evaluations = 0

    def __contains__(self, v: int) -> bool:
        return v in self._segs

    def get(self, v: int, scratch=None) -> Seg | None:
        try:
            return self._segs[v]
        except KeyError:
            pass
        seg = compute_seg(self.g, v, self.k, self.r, scratch)
        with self._lock:
            if v not in self._segs:
                self._segs[v] = seg
                self.evaluations += 1
            return self._segs[v]


@dataclass
class EngagementState:
    """Seeds chosen so far and the union of their SEGs."""

    g: Graph
    k: int
    r: int
    cache: SegCache = None  # type: ignore[assignment]
    seeds: list[int] = field(default_factory=list)
    engaged: np.ndarray = None  # type: ignore[assignment]
    _count: int = 0

    def __post_init__(self):
        if self.cache is None:
            self.cache = SegCache(self.g, self.k, self.r)
        if self.engaged is None:
            self.engaged = np.zeros(self.g.node_count, dtype=bool)

    def engagement(self) -> int:
        return self._count

    def gain(self, v: int, scratch=None) -> int:
        seg = self.cache.get(v, scratch)
        if seg is None:
            return 0
        return int(len(seg.members) - np.count_nonzero(self.engaged[seg.members]))

    def add(self, v: int) -> int:
        """Select ``v`` as a seed; returns its marginal gain."""
        if v in self.seeds:
            raise ValueError(f"node {v} already selected")
        seg = self.cache.get(v)
        self.seeds.append(v)
        if seg is None:
            return 0
        fresh = seg.members[~self.engaged[seg.members]]
        self.engaged[fresh] = True
        self._count += len(fresh)
        return len(fresh)

    def engaged_set(self) -> np.ndarray:
        return np.flatnonzero(self.engaged)


def engagement(state: EngagementState) -> int:
    return state.engagement()


def engagement_gain(g: Graph, v: int, state: EngagementState, k: int, r: int) -> int:
    if (g, k, r) != (state.g, state.k, state.r):
        raise ValueError("state was built for a different (graph, k, r)")
    return state.gain(v)
