import random

import pytest
from hypothesis import given, settings

from edgedel.graphio import Graph, TreeDecomposition, validate_decomposition
from edgedel.treedecomp import (
    Kind,
    NiceNode,
    NiceTreeDecomposition,
    check_nice,
    exact_decompose,
    heuristic_decompose,
    make_nice,
    random_partial_ktree,
)

from conftest import cycle, graphs, path, star


def test_single_empty_bag():
    g = Graph.from_edges(0, [])
    ntd = make_nice(TreeDecomposition({1: frozenset()}, frozenset()), g)
    assert [nd.kind for nd in ntd.nodes] == [Kind.LEAF]
    assert check_nice(ntd, g) == (True, None)


def test_p3_introduces_and_forgets_once():
    g = path(3)
    td = TreeDecomposition({1: frozenset({0, 1}), 2: frozenset({1, 2})}, frozenset({(1, 2)}))
    ntd = make_nice(td, g)
    assert check_nice(ntd, g)[0]
    kinds = [nd.kind for nd in ntd.nodes]
    assert kinds.count(Kind.INTRODUCE) == 3 and kinds.count(Kind.FORGET) == 3
    assert ntd.width == 1


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8))
def test_make_nice_keeps_width(g):
    td = heuristic_decompose(g)
    ntd = make_nice(td, g)
    ok, why = check_nice(ntd, g)
    assert ok, why
    assert ntd.width == validate_decomposition(g, td)


def test_make_nice_random_instances():
    rng = random.Random(3)
    for _ in range(500):
        n = rng.randrange(1, 9)
        g, td = random_partial_ktree(n, rng.randrange(1, 4), rng.random(), rng)
        assert check_nice(make_nice(td, g), g)[0]


def _tiny():
    return [
        NiceNode(0, Kind.LEAF, frozenset()),
        NiceNode(1, Kind.INTRODUCE, frozenset({0}), (0,), 0),
        NiceNode(2, Kind.LEAF, frozenset()),
    ]


def test_join_with_different_child_bags():
    nodes = _tiny() + [
        NiceNode(3, Kind.JOIN, frozenset({0}), (1, 2)),
        NiceNode(4, Kind.FORGET, frozenset(), (3,), 0),
    ]
    ok, why = check_nice(NiceTreeDecomposition(tuple(nodes)), Graph.from_edges(1, []))
    assert not ok and why.startswith("node 3")


def test_nonempty_root():
    nodes = _tiny()[:2]
    ok, why = check_nice(NiceTreeDecomposition(tuple(nodes)), Graph.from_edges(1, []))
    assert not ok and "root" in why


@pytest.mark.parametrize("g, w", [
    (path(12), 1),
    (star(6), 1),
    (cycle(3), 2),
    (cycle(9), 2),
    (Graph.from_edges(5, [(u, v) for u in range(5) for v in range(u + 1, 5)]), 4),
])
def test_heuristic_widths(g, w):
    assert validate_decomposition(g, heuristic_decompose(g)) == w


def test_random_tree_width_one():
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randrange(2, 30)
        g = Graph.from_edges(n, [(v, rng.randrange(v)) for v in range(1, n)])
        assert validate_decomposition(g, heuristic_decompose(g)) == 1


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_exact_never_wider(g):
    e = validate_decomposition(g, exact_decompose(g))
    assert isinstance(e, int) and e <= validate_decomposition(g, heuristic_decompose(g))


def test_exact_finds_optimum_on_grid():
    # 3x3 grid has treewidth 3
    idx = lambda r, c: 3 * r + c
    edges = [(idx(r, c), idx(r, c + 1)) for r in range(3) for c in range(2)]
    edges += [(idx(r, c), idx(r + 1, c)) for r in range(2) for c in range(3)]
    assert validate_decomposition(Graph.from_edges(9, edges), exact_decompose(Graph.from_edges(9, edges))) == 3


def test_partial_ktree_width():
    rng = random.Random(1)
    for k in (1, 2, 3):
        g, td = random_partial_ktree(60, k, 0.7, rng)
        assert validate_decomposition(g, td) == k
