"""Graphs and tree-decompositions in the PACE 2017 text formats.

Vertices are 1-indexed in files and 0-indexed in memory: file vertex ``k``
is vertex ``k - 1`` everywhere inside the package.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable


class ParseError(ValueError):
    """Malformed input, reported with the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[tuple[int, int]]
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            if u > v:
                raise ValueError(f"edge {(u, v)} is not normalized (u < v)")
            nbrs[u].add(v)
            nbrs[v].add(u)
        object.__setattr__(self, "adj", tuple(frozenset(s) for s in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        return cls(n, frozenset(_edge(u, v) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def without(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.n, self.edges - {_edge(u, v) for u, v in removed})


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags keyed by node id plus the undirected tree edges between nodes."""

    bags: dict[int, frozenset[int]]
    tree_edges: frozenset[tuple[int, int]]

    @property
    def width(self) -> int:
        # all-empty decompositions report 0, never -1
        return max(self.max_bag_size - 1, 0)

    @property
    def max_bag_size(self) -> int:
        return max((len(b) for b in self.bags.values()), default=0)

    def neighbors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {i: [] for i in self.bags}
        for a, b in sorted(self.tree_edges):
            out[a].append(b)
            out[b].append(a)
        return out


# --- .gr ---------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    n = m = None
    edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "tw":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative counts in problem line", lineno)
            continue
        if n is None:
            raise ParseError("edge line before problem line", lineno)
        if len(parts) != 2:
            raise ParseError(f"malformed edge line {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"malformed edge line {line!r}", lineno) from None
        for w in (u, v):
            if not 1 <= w <= n:
                raise ParseError(f"vertex {w} out of range 1..{n}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        e = _edge(u - 1, v - 1)
        if e in edges:
            raise ParseError(f"duplicate edge {u} {v}", lineno)
        edges.add(e)
    if n is None:
        raise ParseError("missing problem line 'p tw <n> <m>'")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, frozenset(edges))


def format_graph(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    lines += [f"{u + 1} {v + 1}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


# --- .td ---------------------------------------------------------------------

def parse_tree_decomposition(text: str, n_vertices: int | None = None) -> TreeDecomposition:
    """Parse a PACE ``.td`` document.

    Bag ids are kept as written (1-based); vertices become 0-based.  When
    ``n_vertices`` is given, the header's vertex count must match it.
    """
    header = None
    bags: dict[int, frozenset[int]] = {}
    tree_edges: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise ParseError("duplicate solution line", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError(f"malformed solution line {line!r}", lineno)
            try:
                header = tuple(int(x) for x in parts[2:])
            except ValueError:
                raise ParseError(f"malformed solution line {line!r}", lineno) from None
            if n_vertices is not None and header[2] != n_vertices:
                raise ParseError(f"header declares {header[2]} vertices, graph has {n_vertices}", lineno)
            continue
        if header is None:
            raise ParseError("content before solution line 's td ...'", lineno)
        try:
            nums = [int(x) for x in parts[1:]] if parts[0] == "b" else [int(x) for x in parts]
        except ValueError:
            raise ParseError(f"malformed line {line!r}", lineno) from None
        if parts[0] == "b":
            if not nums:
                raise ParseError("bag line without id", lineno)
            bid, verts = nums[0], nums[1:]
            if not 1 <= bid <= header[0]:
                raise ParseError(f"bag id {bid} out of range 1..{header[0]}", lineno)
            if bid in bags:
                raise ParseError(f"bag id {bid} repeated", lineno)
            for v in verts:
                if not 1 <= v <= header[2]:
                    raise ParseError(f"vertex {v} out of range 1..{header[2]}", lineno)
            if len(set(verts)) != len(verts):
                raise ParseError(f"bag {bid} lists a vertex twice", lineno)
            bags[bid] = frozenset(v - 1 for v in verts)
        else:
            if len(nums) != 2:
                raise ParseError(f"malformed tree edge {line!r}", lineno)
            a, b = nums
            for x in (a, b):
                if not 1 <= x <= header[0]:
                    raise ParseError(f"tree edge references unknown bag {x}", lineno)
            if a == b:
                raise ParseError(f"tree edge loops on bag {a}", lineno)
            e = (a, b) if a < b else (b, a)
            if e in tree_edges:
                raise ParseError(f"tree edge {a} {b} repeated", lineno)
            tree_edges.add(e)
    if header is None:
        raise ParseError("missing solution line 's td <bags> <width+1> <n>'")
    nbags, maxbag, _ = header
    if len(bags) != nbags:
        raise ParseError(f"header declares {nbags} bags, found {len(bags)}")
    real_max = max((len(b) for b in bags.values()), default=0)
    if real_max != maxbag:
        raise ParseError(f"header declares max bag size {maxbag}, found {real_max}")
    td = TreeDecomposition(bags, frozenset(tree_edges))
    problem = _tree_problem(td)
    if problem:
        raise ParseError(problem)
    return td


def format_tree_decomposition(td: TreeDecomposition, n: int) -> str:
    """Serialize with bag ids renumbered 1..b in sorted id order."""
    ids = sorted(td.bags)
    remap = {old: i + 1 for i, old in enumerate(ids)}
    lines = [f"s td {len(ids)} {td.max_bag_size} {n}"]
    for old in ids:
        verts = " ".join(str(v + 1) for v in sorted(td.bags[old]))
        lines.append(f"b {remap[old]} {verts}".rstrip())
    for a, b in sorted(td.tree_edges):
        lines.append(f"{remap[a]} {remap[b]}")
    return "\n".join(lines) + "\n"


def _tree_problem(td: TreeDecomposition) -> str | None:
    ids = list(td.bags)
    if not ids:
        return "decomposition has no bags"
    if len(td.tree_edges) != len(ids) - 1:
        return f"tree edges do not form a tree: {len(td.tree_edges)} edges for {len(ids)} bags"
    nbrs = td.neighbors()
    seen = {ids[0]}
    todo = deque([ids[0]])
    while todo:
        a = todo.popleft()
        for b in nbrs[a]:
            if b not in seen:
                seen.add(b)
                todo.append(b)
    if len(seen) != len(ids):
        return "tree edges do not form a tree: decomposition is disconnected"
    return None


@dataclass(frozen=True)
class Violation:
    """Which decomposition axiom failed, with a witness."""

    axiom: str  # "tree" | "vertex-coverage" | "edge-coverage" | "connectivity"
    witness: object
    message: str

    def __str__(self) -> str:
        return f"{self.axiom}: {self.message}"


def validate_decomposition(g: Graph, td: TreeDecomposition) -> int | Violation:
    """Return the width of ``td`` if it is a tree-decomposition of ``g``."""
    problem = _tree_problem(td)
    if problem:
        return Violation("tree", None, problem)
    for b in td.bags.values():
        for v in b:
            if not 0 <= v < g.n:
                return Violation("vertex-coverage", v, f"bag vertex {v + 1} not in graph")
    where: dict[int, list[int]] = {v: [] for v in g.vertices}
    for bid, b in td.bags.items():
        for v in b:
            where[v].append(bid)
    for v in g.vertices:
        if not where[v]:
            return Violation("vertex-coverage", v, f"vertex {v + 1} occurs in no bag")
    for u, v in sorted(g.edges):
        if not any(v in td.bags[bid] for bid in where[u]):
            return Violation("edge-coverage", (u, v), f"edge {{{u + 1},{v + 1}}} is in no bag")
    nbrs = td.neighbors()
    for v in g.vertices:
        holders = set(where[v])
        start = where[v][0]
        seen = {start}
        todo = [start]
        while todo:
            a = todo.pop()
            for b in nbrs[a]:
                if b in holders and b not in seen:
                    seen.add(b)
                    todo.append(b)
        if seen != holders:
            return Violation("connectivity", v, f"bags containing vertex {v + 1} are not connected")
    return td.width
