import pytest
from hypothesis import given, settings

from edgedel.graphio import (
    Graph,
    ParseError,
    TreeDecomposition,
    Violation,
    format_graph,
    format_tree_decomposition,
    parse_graph,
    parse_tree_decomposition,
    validate_decomposition,
)

from conftest import FIG2B, cycle, graphs


def test_empty_graph():
    g = parse_graph("p tw 0 0\n")
    assert (g.n, g.m) == (0, 0)


def test_fig2b_document():
    text = "c x y z u v w\np tw 6 6\n1 2\n1 4\n2 5\n3 5\n3 6\n5 6\n"
    assert parse_graph(text) == FIG2B


def test_adjacency_symmetric():
    g = parse_graph("p tw 3 2\n1 2\n2 3\n")
    assert g.adj[1] == {0, 2}
    assert g.has_edge(2, 1) and not g.has_edge(0, 2)


@settings(max_examples=100)
@given(graphs(max_n=10))
def test_round_trip(g):
    assert parse_graph(format_graph(g)).edges == g.edges


@pytest.mark.parametrize("text, where", [
    ("1 2\n", "before problem"),
    ("p tw 2 1\n1 1\n", "self-loop"),
    ("p tw 2 2\n1 2\n2 1\n", "duplicate edge"),
    ("p tw 2 1\n1 3\n", "out of range"),
    ("p tw 2 2\n1 2\n", "declares"),
    ("p td 2 1\n1 2\n", "malformed problem"),
    ("", "missing problem"),
])
def test_bad_graphs(text, where):
    with pytest.raises(ParseError, match=where):
        parse_graph(text)


def test_parse_error_carries_line():
    with pytest.raises(ParseError) as info:
        parse_graph("c hello\np tw 3 1\n1 x\n")
    assert info.value.line == 3


def test_single_empty_bag():
    td = parse_tree_decomposition("s td 1 0 0\nb 1\n")
    assert td.bags == {1: frozenset()}
    assert validate_decomposition(Graph.from_edges(0, []), td) == 0


def test_path_decomposition_width_one():
    g = parse_graph("p tw 3 2\n1 2\n2 3\n")
    td = parse_tree_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", g.n)
    assert validate_decomposition(g, td) == 1


def test_bag_vertex_out_of_range():
    with pytest.raises(ParseError):
        parse_tree_decomposition("s td 1 2 2\nb 1 1 3\n", 2)


def test_triangle_single_bag():
    g = cycle(3)
    assert validate_decomposition(g, TreeDecomposition({1: frozenset({0, 1, 2})}, frozenset())) == 2


def test_uncovered_edge():
    g = cycle(4)
    td = TreeDecomposition({1: frozenset({0, 1}), 2: frozenset({2, 3})}, frozenset({(1, 2)}))
    bad = validate_decomposition(g, td)
    assert isinstance(bad, Violation) and bad.axiom == "edge-coverage"
    assert bad.witness in {(1, 2), (0, 3)}  # {2,3} and {1,4} are both uncovered


def test_disconnected_occurrences():
    g = Graph.from_edges(3, [(0, 1), (1, 2)])
    td = TreeDecomposition(
        {1: frozenset({0, 1}), 2: frozenset({2}), 3: frozenset({1, 2})},
        frozenset({(1, 2), (2, 3)}),
    )
    bad = validate_decomposition(g, td)
    assert isinstance(bad, Violation) and bad.axiom == "connectivity"


def test_td_round_trip():
    g = parse_graph("p tw 3 2\n1 2\n2 3\n")
    td = parse_tree_decomposition("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n", 3)
    again = parse_tree_decomposition(format_tree_decomposition(td, 3), 3)
    assert again == td and validate_decomposition(g, again) == 1
