"""Exact edge deletion to interval-like graph classes via tree-decomposition DP."""

from .dp import DPResult, SolveOptions, TableOverflow
from .graphio import Graph, ParseError, TreeDecomposition, parse_graph, parse_tree_decomposition
from .oracle import is_in_class, min_edge_deletion_bruteforce
from .solve import Solution, certificate, min_deletions, solve

__all__ = [
    "DPResult",
    "Graph",
    "ParseError",
    "Solution",
    "SolveOptions",
    "TableOverflow",
    "TreeDecomposition",
    "certificate",
    "is_in_class",
    "min_deletions",
    "min_edge_deletion_bruteforce",
    "parse_graph",
    "parse_tree_decomposition",
    "solve",
]
