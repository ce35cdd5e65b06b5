import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from edgedel import Graph

CLASSES = ("interval", "proper", "nested", "circular", "permutation", "threshold")


def nxg(G: nx.Graph) -> Graph:
    G = nx.convert_node_labels_to_integers(G)
    return Graph.from_edges(G.number_of_nodes(), G.edges())


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(k):
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)])


def edgeless(n):
    return Graph.from_edges(n, [])


# vertices 1..6 = x, y, z, u, v, w
FIG2B = Graph.from_edges(6, [(0, 1), (0, 3), (1, 4), (2, 4), (2, 5), (4, 5)])

# 0..6 = u1, u2, u3, w1, w2, w3, w4
FIG4B = Graph.from_edges(7, [
    (3, 4), (3, 1), (3, 0), (4, 1), (4, 0), (4, 5), (1, 0), (1, 2), (1, 5), (1, 6),
])


def connected_graphs(max_n):
    """One representative per isomorphism class, from the networkx atlas."""
    return [nxg(G) for G in nx.graph_atlas_g()[1:]
            if G.number_of_nodes() <= max_n and nx.is_connected(G)]


def sampled_graphs(count, seed=2024):
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.choice((6, 7))
        p = (0.3, 0.5, 0.7)[i % 3]
        out.append(nxg(nx.gnp_random_graph(n, p, seed=rng.randrange(10**9))))
    return out


@st.composite
def graphs(draw, min_n=0, max_n=6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@pytest.fixture(params=CLASSES)
def cls(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
