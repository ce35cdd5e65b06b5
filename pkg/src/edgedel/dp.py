"""Bottom-up evaluation of a nice tree-decomposition with per-class rules.

Each class module supplies a *rules* object.  Tables map a hashable state
(the abstraction without its cost) to the cheapest cost seen for it; states
sharing a group key (the order component) are pruned by dominance.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Protocol

from .graphio import Graph
from .treedecomp import Kind, NiceTreeDecomposition

State = Hashable


class TableOverflow(RuntimeError):
    """A node table grew past ``max_states``."""


class EmptyRoot(RuntimeError):
    """No state survived to the root (only possible under ``upper_bound``)."""


class Rules(Protocol):
    def leaf(self) -> State: ...
    def introduce(self, state: State, x: int, nbrs: frozenset[int]) -> Iterable[tuple[State, Any]]: ...
    def forget(self, state: State, x: int, nbrs: frozenset[int]) -> tuple[State, int] | None: ...
    def join(self, a: State, b: State) -> State | None: ...
    def group(self, state: State) -> Hashable: ...
    def dominates(self, a: State, b: State) -> bool: ...
    # optional: dominator(group_key) -> callable(a, b) sharing per-group precomputation
    # optional: signer(group_key) -> callable(state) -> int bitmask, with
    #   dominates(a, b) implying sig(a) is a subset of sig(b)
    # optional: signer_exact = True when the subset test is also sufficient
    # optional: rank(state) -> sortable key, a total order within a group;
    #   reduce keeps the lowest-ranked of equally good states
    # optional: clash_signer(group_key) -> callable(state) -> (strong, weak)
    #   bitmasks; join(a, b) fails exactly when strong(a) & weak(b) or
    #   weak(a) & strong(b) is nonzero, and joined(a, b) then builds the result
    # optional: pending(group_key, bag_edges) -> how many of these edges the
    #   order leaves unrealized; each will be charged later, so cost plus
    #   pending is a lower bound used against upper_bound


@dataclass
class SolveOptions:
    reduce: bool = True
    max_states: int | None = None
    check_invariants: bool = False
    keep_tables: bool = False
    # states whose cost (plus charges already implied by the bag order) exceed
    # this are dropped; with no solution in reach the root comes out empty
    upper_bound: int | None = None
    # solve() only: once a table outgrows this, give up the unbounded run and
    # retry under growing bounds 0, 1, 2, 3, 5, 8, ... while those stay under
    # it too; otherwise rerun unbounded (None: never)
    bound_after: int | None = 20_000
    # solve() only: drop universal vertices first, for the classes where that
    # leaves the optimum unchanged (all but proper interval)
    strip_universal: bool = True
    trace: Callable[["NodeStat", dict], None] | None = None


@dataclass
class NodeStat:
    node: int
    kind: str
    bag_size: int
    generated: int
    kept: int


@dataclass
class DPResult:
    deletions: int
    stats: list[NodeStat] = field(default_factory=list)
    tables: list[dict] | None = None
    provenance: list[dict] | None = None
    seconds: float = 0.0

    @property
    def max_table(self) -> int:
        return max((s.kept for s in self.stats), default=0)

    @property
    def total_generated(self) -> int:
        return sum(s.generated for s in self.stats)


def reduce_table(table: dict, rules: Rules, prov: dict | None = None) -> dict:
    """Drop every state dominated by another one at no greater cost."""
    groups: dict[Hashable, list] = {}
    for st, c in table.items():
        groups.setdefault(rules.group(st), []).append((c, st))
    out = {}
    make = getattr(rules, "dominator", None)
    signer = getattr(rules, "signer", None)
    rank = getattr(rules, "rank", None)
    exact = signer is not None and getattr(rules, "signer_exact", False)
    for key, items in groups.items():
        if len(items) == 1:
            c, st = items[0]
            out[st] = c
            continue
        if exact:
            _reduce_exact(items, signer(key), rank, out)
            continue
        dom = make(key) if make is not None else rules.dominates
        # sig(a) & ~sig(b) != 0 proves a does not dominate b
        sig = signer(key) if signer is not None else (lambda st: 0)
        if rank is None:
            items.sort(key=lambda cs: cs[0])
        else:
            items.sort(key=lambda cs: (cs[0], rank(cs[1])))
        # ascending cost: every kept entry is at most as expensive as the
        # newcomer, and only the equal-cost tail can be displaced by it
        kept: list[tuple[int, int, State]] = []
        level, start = None, 0
        for c, st in items:
            m = sig(st)
            if any(not km & ~m and dom(ks, st) for _, km, ks in kept):
                continue
            if c != level:
                level, start = c, len(kept)
            elif start < len(kept):
                tail = [k for k in kept[start:] if m & ~k[1] or not dom(st, k[2])]
                del kept[start:]
                kept.extend(tail)
            kept.append((c, m, st))
        for c, _, st in kept:
            out[st] = c
    if prov is not None:
        for st in list(prov):
            if st not in out:
                del prov[st]
    return out


def _reduce_exact(items: list, sig, rank, out: dict) -> None:
    """Antichain by signature alone: ``a`` dominates ``b`` iff sig(a) is a subset of sig(b).

    Sorted by cost, then bit count, a newcomer can never beat a kept entry:
    a proper subset has fewer bits, and an equal mask is an equivalent state.
    """
    deco = [(c, m.bit_count(), m, st) for c, st in items for m in (sig(st),)]
    if rank is None:
        deco.sort(key=lambda d: d[:2])
    else:
        deco.sort(key=lambda d: (d[0], d[1], rank(d[3])))
    masks: list[int] = []
    seen: set[int] = set()
    for c, _, m, st in deco:
        if m in seen:
            continue
        inv = ~m
        if any(not km & inv for km in masks):
            continue
        seen.add(m)
        masks.append(m)
        out[st] = c


def _offer(table: dict, prov: dict | None, st: State, c: int, how) -> None:
    old = table.get(st)
    if old is None or c < old:
        table[st] = c
        if prov is not None:
            prov[st] = how


def run_dp(g: Graph, ntd: NiceTreeDecomposition, rules: Rules, opts: SolveOptions | None = None) -> DPResult:
    opts = opts or SolveOptions()
    t0 = time.perf_counter()
    tables: list[dict | None] = [None] * len(ntd.nodes)
    provs: list[dict | None] = [None] * len(ntd.nodes)
    stats: list[NodeStat] = []
    check = getattr(rules, "check", None) if opts.check_invariants else None

    ub = opts.upper_bound
    pend = getattr(rules, "pending", None)
    clash = getattr(rules, "clash_signer", None)
    group = rules.group

    for nd in ntd.nodes:
        table: dict = {}
        prov: dict | None = {} if opts.keep_tables else None
        if pend is None:
            def lower(st, c):
                return c
        else:
            bag_edges = [(u, v) for u in nd.bag for v in g.adj[u] if u < v and v in nd.bag]
            seen: dict = {}

            def lower(st, c, bag_edges=bag_edges, seen=seen):
                key = group(st)
                k = seen.get(key)
                if k is None:
                    k = seen[key] = pend(key, bag_edges)
                return c + k

        if ub is None:
            def fits(st, c):
                return True
        else:
            def fits(st, c, lower=lower):
                return c <= ub and lower(st, c) <= ub

        if nd.kind is Kind.LEAF:
            _offer(table, prov, rules.leaf(), 0, None)
        elif nd.kind is Kind.INTRODUCE:
            x = nd.vertex
            nbrs = g.adj[x] & nd.bag
            for st, c in tables[nd.children[0]].items():
                for new, info in rules.introduce(st, x, nbrs):
                    if fits(new, c):
                        _offer(table, prov, new, c, (st, info))
        elif nd.kind is Kind.FORGET:
            x = nd.vertex
            nbrs = g.adj[x] & nd.bag
            for st, c in tables[nd.children[0]].items():
                res = rules.forget(st, x, nbrs)
                if res is not None:
                    new, extra = res
                    if fits(new, c + extra):
                        _offer(table, prov, new, c + extra, st)
        else:
            left, right = (tables[c] for c in nd.children)
            by_group: dict[Hashable, list] = {}
            for st, c in right.items():
                by_group.setdefault(group(st), []).append((st, c))
            lefts: dict[Hashable, list] = {}
            for st, c in left.items():
                lefts.setdefault(group(st), []).append((st, c))
            join = rules.join if clash is None else rules.joined
            for key, ls in lefts.items():
                rs = by_group.get(key)
                if not rs:
                    continue
                if clash is None:
                    pairs = ((a, b) for a in ls for b in rs)
                else:
                    sig = clash(key)
                    # bucket the right side by signature so clashing masks are skipped wholesale
                    buckets: dict[tuple[int, int], list] = {}
                    for b in rs:
                        buckets.setdefault(sig(b[0]), []).append(b)
                    bl = list(buckets.items())
                    pairs = ((a, b) for a in ls for s, w in (sig(a[0]),)
                             for (bs, bw), items in bl if not (s & bw or w & bs) for b in items)
                for (st1, c1), (st2, c2) in pairs:
                    new = join(st1, st2)
                    if new is not None and fits(new, c1 + c2):
                        _offer(table, prov, new, c1 + c2, (st1, st2))
        generated = len(table)
        if opts.reduce:
            table = reduce_table(table, rules, prov)
        if check is not None:
            for st in table:
                check(st)
        if opts.max_states is not None and len(table) > opts.max_states:
            raise TableOverflow(
                f"node {nd.id} ({nd.kind.value}) holds {len(table)} states > max_states={opts.max_states}"
            )
        tables[nd.id] = table
        provs[nd.id] = prov
        stat = NodeStat(nd.id, nd.kind.value, len(nd.bag), generated, len(table))
        stats.append(stat)
        if opts.trace is not None:
            opts.trace(stat, table)
        if not opts.keep_tables:
            for c in nd.children:
                tables[c] = None

    root = tables[ntd.root.id]
    if not root:
        err = EmptyRoot("root table is empty: no solution within upper_bound")
        err.seconds = time.perf_counter() - t0
        raise err
    best = min(root.values())
    return DPResult(
        deletions=best,
        stats=stats,
        tables=tables if opts.keep_tables else None,
        provenance=provs if opts.keep_tables else None,
        seconds=time.perf_counter() - t0,
    )
