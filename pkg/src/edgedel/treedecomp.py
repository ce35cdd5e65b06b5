"""Nice tree-decompositions: construction, checking, and a fallback heuristic."""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum

from .graphio import Graph, TreeDecomposition, Violation, validate_decomposition


class Kind(str, Enum):
    LEAF = "leaf"
    INTRODUCE = "introduce"
    FORGET = "forget"
    JOIN = "join"


@dataclass(frozen=True)
class NiceNode:
    id: int
    kind: Kind
    bag: frozenset[int]
    children: tuple[int, ...] = ()
    vertex: int | None = None  # the introduced / forgotten vertex


@dataclass(frozen=True)
class NiceTreeDecomposition:
    """Nodes stored children-before-parents; the root is the last node."""

    nodes: tuple[NiceNode, ...]

    @property
    def root(self) -> NiceNode:
        return self.nodes[-1]

    @property
    def width(self) -> int:
        return max(max((len(nd.bag) for nd in self.nodes), default=0) - 1, 0)

    def parents(self) -> list[int | None]:
        par: list[int | None] = [None] * len(self.nodes)
        for nd in self.nodes:
            for c in nd.children:
                par[c] = nd.id
        return par

    def to_text(self) -> str:
        """Debug format: one node per line ``id kind [vertex] | bag | children``."""
        out = []
        for nd in self.nodes:
            v = "" if nd.vertex is None else f" {nd.vertex + 1}"
            bag = " ".join(str(u + 1) for u in sorted(nd.bag))
            kids = " ".join(map(str, nd.children))
            out.append(f"{nd.id} {nd.kind.value}{v} | {bag} | {kids}".rstrip(" |"))
        return "\n".join(out) + "\n"


class _Builder:
    def __init__(self):
        self.nodes: list[NiceNode] = []

    def add(self, kind: Kind, bag: frozenset[int], children=(), vertex=None) -> int:
        nid = len(self.nodes)
        self.nodes.append(NiceNode(nid, kind, bag, tuple(children), vertex))
        return nid

    def chain(self, top: int, target: frozenset[int]) -> int:
        """Forget-then-introduce from node ``top`` until its bag is ``target``."""
        bag = self.nodes[top].bag
        for v in sorted(bag - target):
            bag = bag - {v}
            top = self.add(Kind.FORGET, bag, (top,), v)
        for v in sorted(target - bag):
            bag = bag | {v}
            top = self.add(Kind.INTRODUCE, bag, (top,), v)
        return top


def contract_subsets(td: TreeDecomposition) -> TreeDecomposition:
    """Merge every bag into a tree neighbour that contains it.

    A subset bag adds nothing to the decomposition, and as a leaf it would
    become a join branch that only introduces vertices, which costs a full
    table of bare orders for no information.
    """
    bags = dict(td.bags)
    nbrs = {a: set(bs) for a, bs in td.neighbors().items()}
    changed = True
    while changed:
        changed = False
        for a in sorted(bags):
            b = next((b for b in sorted(nbrs[a]) if bags[a] <= bags[b]), None)
            if b is None:
                continue
            for c in nbrs.pop(a):
                nbrs[c].discard(a)
                if c != b:
                    nbrs[c].add(b)
                    nbrs[b].add(c)
            del bags[a]
            changed = True
    edges = frozenset((a, b) for a in nbrs for b in nbrs[a] if a < b)
    return TreeDecomposition(bags, edges)


def make_nice(td: TreeDecomposition, g: Graph, root: int | None = None) -> NiceTreeDecomposition:
    """Convert a valid decomposition of ``g`` into nice form of the same width."""
    check = validate_decomposition(g, td)
    if isinstance(check, Violation):
        raise ValueError(f"invalid tree-decomposition: {check}")
    td = contract_subsets(td)
    nbrs = td.neighbors()
    if root is None or root not in td.bags:
        root = max(td.bags, key=lambda a: (len(td.bags[a]), -a))
    order: list[int] = []
    parent = {root: None}
    stack = [root]
    while stack:
        a = stack.pop()
        order.append(a)
        for b in nbrs[a]:
            if b not in parent:
                parent[b] = a
                stack.append(b)
    kids: dict[int, list[int]] = {a: [] for a in order}
    for a in order[1:]:
        kids[parent[a]].append(a)

    bld = _Builder()
    top_of: dict[int, int] = {}
    empty: frozenset[int] = frozenset()
    for a in reversed(order):  # children first
        bag = td.bags[a]
        subs = [bld.chain(top_of.pop(c), bag) for c in kids[a]]
        if not subs:
            top = bld.chain(bld.add(Kind.LEAF, empty), bag)
        else:
            top = subs[0]
            for other in subs[1:]:
                top = bld.add(Kind.JOIN, bag, (top, other))
        top_of[a] = top
    top = bld.chain(top_of.pop(root), empty)
    return NiceTreeDecomposition(tuple(bld.nodes))


def check_nice(ntd: NiceTreeDecomposition, g: Graph) -> tuple[bool, str | None]:
    """Return ``(True, None)`` or ``(False, reason)`` naming the first bad node."""
    nodes = ntd.nodes
    if not nodes:
        return False, "no nodes"
    seen_child: set[int] = set()
    for i, nd in enumerate(nodes):
        if nd.id != i:
            return False, f"node {i}: id {nd.id} out of sequence"
        for c in nd.children:
            if not 0 <= c < i:
                return False, f"node {i}: child {c} not before parent"
            if c in seen_child:
                return False, f"node {i}: child {c} has two parents"
            seen_child.add(c)
        kid_bags = [nodes[c].bag for c in nd.children]
        if nd.kind is Kind.LEAF:
            if kid_bags or nd.bag:
                return False, f"node {i}: leaf must be childless with empty bag"
        elif nd.kind is Kind.INTRODUCE:
            if len(kid_bags) != 1 or nd.vertex is None or nd.vertex in kid_bags[0] \
                    or nd.bag != kid_bags[0] | {nd.vertex}:
                return False, f"node {i}: bad introduce"
        elif nd.kind is Kind.FORGET:
            if len(kid_bags) != 1 or nd.vertex is None or nd.vertex not in kid_bags[0] \
                    or nd.bag != kid_bags[0] - {nd.vertex}:
                return False, f"node {i}: bad forget"
        elif nd.kind is Kind.JOIN:
            if len(kid_bags) != 2 or kid_bags[0] != nd.bag or kid_bags[1] != nd.bag:
                return False, f"node {i}: join children bags differ from node bag"
        else:
            return False, f"node {i}: unknown kind"
    if len(seen_child) != len(nodes) - 1:
        return False, "nodes do not form a single rooted tree"
    if ntd.root.bag:
        return False, f"node {ntd.root.id}: root bag is not empty"
    td = TreeDecomposition(
        {nd.id: nd.bag for nd in nodes},
        frozenset((c, nd.id) for nd in nodes for c in nd.children),
    )
    check = validate_decomposition(g, td)
    if isinstance(check, Violation):
        return False, str(check)
    return True, None


def decomposition_from_order(g: Graph, elim: list[int]) -> TreeDecomposition:
    """Bags of the elimination game played in ``elim`` order."""
    if g.n == 0:
        return TreeDecomposition({1: frozenset()}, frozenset())
    adj = [set(s) for s in g.adj]
    bags: list[frozenset[int]] = []
    for v in elim:
        nb = adj[v]
        bags.append(frozenset(nb | {v}))
        for a in nb:
            adj[a] |= nb - {a}
            adj[a].discard(v)
        adj[v] = set()
    step = {v: i for i, v in enumerate(elim)}
    edges = set()
    for i, bag in enumerate(bags):
        rest = [step[u] for u in bag if step[u] > i]
        if rest:
            j = min(rest)
        elif i + 1 < len(bags):
            j = i + 1  # component boundary: link to keep a single tree
        else:
            continue
        edges.add((i + 1, j + 1))
    return TreeDecomposition({i + 1: b for i, b in enumerate(bags)}, frozenset(edges))


def heuristic_decompose(g: Graph) -> TreeDecomposition:
    """Min-degree elimination (ties broken by fill-in, then vertex id)."""
    adj = [set(s) for s in g.adj]
    alive = set(g.vertices)
    elim: list[int] = []

    def fill(v: int) -> int:
        nb = list(adj[v])
        return sum(1 for i, a in enumerate(nb) for b in nb[i + 1:] if b not in adj[a])

    while alive:
        v = min(alive, key=lambda u: (len(adj[u]), fill(u), u))
        nb = adj[v]
        elim.append(v)
        for a in nb:
            adj[a] |= nb - {a}
            adj[a].discard(v)
        alive.discard(v)
        adj[v] = set()
    return decomposition_from_order(g, elim)


EXACT_MAX_N = 14


def exact_decompose(g: Graph) -> TreeDecomposition:
    """Optimal-width decomposition by dynamic programming over vertex subsets.

    ``best[S]`` is the least achievable maximum degree-at-elimination when the
    vertices of ``S`` are eliminated first; the degree of ``v`` eliminated
    after ``S`` is the number of outside vertices reachable from ``v``
    through ``S``.  Exponential in ``n``; meant for small graphs.
    """
    n = g.n
    if n > EXACT_MAX_N:
        raise ValueError(f"exact decomposition limited to n <= {EXACT_MAX_N}")
    if n == 0:
        return decomposition_from_order(g, [])
    nb = [sum(1 << u for u in g.adj[v]) for v in range(n)]

    def q_size(S: int, v: int) -> int:
        seen, todo, out = 1 << v, [v], 0
        while todo:
            u = todo.pop()
            m = nb[u] & ~seen
            seen |= m
            while m:
                low = m & -m
                m ^= low
                w = low.bit_length() - 1
                if S >> w & 1:
                    todo.append(w)
                else:
                    out += 1
        return out

    full = (1 << n) - 1
    best = [n] * (1 << n)
    pick = [-1] * (1 << n)
    best[0] = -1
    for S in range(1, full + 1):
        m = S
        while m:
            low = m & -m
            m ^= low
            v = low.bit_length() - 1
            rest = S ^ low
            val = max(best[rest], q_size(rest, v))
            if val < best[S]:
                best[S], pick[S] = val, v
    elim: list[int] = []
    S = full
    while S:
        v = pick[S]
        elim.append(v)
        S ^= 1 << v
    elim.reverse()
    return decomposition_from_order(g, elim)


def auto_decompose(g: Graph) -> TreeDecomposition:
    """Exact for small graphs, min-degree otherwise."""
    return exact_decompose(g) if g.n <= EXACT_MAX_N else heuristic_decompose(g)


def edge_owners(ntd: NiceTreeDecomposition, g: Graph) -> dict[tuple[int, int], int]:
    """Map each edge to the forget node where its first endpoint leaves the bag."""
    owner: dict[tuple[int, int], int] = {}
    for nd in ntd.nodes:
        if nd.kind is Kind.FORGET:
            x = nd.vertex
            for u in nd.bag:
                if g.has_edge(x, u):
                    e = (x, u) if x < u else (u, x)
                    owner.setdefault(e, nd.id)
    return owner


def random_partial_ktree(n: int, k: int, keep: float, rng: random.Random) -> tuple[Graph, TreeDecomposition]:
    """A random k-tree on ``n`` vertices thinned to a ``keep`` fraction of its
    edges, with the width-``k`` decomposition its construction provides."""
    if n <= k + 1:
        verts = frozenset(range(n))
        all_edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
        g = Graph.from_edges(n, [e for e in all_edges if rng.random() < keep])
        return g, TreeDecomposition({1: verts}, frozenset())
    edges = {(u, v) for u in range(k + 1) for v in range(u + 1, k + 1)}
    bags = {1: frozenset(range(k + 1))}
    cliques = [(1, tuple(range(k + 1)))]
    tree = set()
    for v in range(k + 1, n):
        node, clique = rng.choice(cliques)
        drop = rng.randrange(k + 1)
        base = clique[:drop] + clique[drop + 1:]
        edges.update((u, v) for u in base)
        nid = len(bags) + 1
        bags[nid] = frozenset(base + (v,))
        tree.add((node, nid))
        cliques.append((nid, base + (v,)))
    g = Graph.from_edges(n, [e for e in sorted(edges) if rng.random() < keep])
    return g, TreeDecomposition(bags, frozenset(tree))
