import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from seedengage import Graph, load_edge_list

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(__file__).parent / "data"

# triangle a,b,c (0,1,2); bridge c-d; 4-clique d,e,f,g (3..6)
BRIDGE_EDGES = [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]


def load_fixture(name: str) -> Graph:
    with open(DATA / name) as fh:
        return load_edge_list(fh)


@pytest.fixture
def bridge():
    return Graph.from_edges(7, BRIDGE_EDGES)


@pytest.fixture
def triangle():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def two_triangles():
    return Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


@pytest.fixture
def star():
    return Graph.from_edges(6, [(0, i) for i in range(1, 6)])


@st.composite
def small_graphs(draw, max_nodes=10):
    n = draw(st.integers(1, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return n, chosen


def build(n, edges) -> Graph:
    return Graph.from_edges(n, np.asarray(edges, dtype=np.int64).reshape(-1, 2))
