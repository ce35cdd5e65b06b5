"""One entry point for every class: pick the DP, build a decomposition if needed."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dp import DPResult, EmptyRoot, SolveOptions, TableOverflow, run_dp
from .graphio import Graph, TreeDecomposition
from .intervaldp import IntervalRules
from .oracle import canonical_class
from .ordercore import CIRCULAR, GENERAL, NESTED, PROPER
from .permutationdp import PermutationRules
from .thresholddp import ThresholdRules
from .treedecomp import NiceTreeDecomposition, heuristic_decompose, make_nice

CLI_NAMES = ("interval", "proper-interval", "trivially-perfect", "circular-arc", "permutation", "threshold")

_INTERVAL_MODES = {"interval": GENERAL, "proper": PROPER, "nested": NESTED, "circular": CIRCULAR}

# adding a universal vertex keeps a graph in each of these classes; the claw
# shows proper interval is not among them
_UNIVERSAL_SAFE = frozenset({"interval", "nested", "circular", "permutation", "threshold"})


def rules_for(cls: str):
    cls = canonical_class(cls)
    if cls in _INTERVAL_MODES:
        return IntervalRules(_INTERVAL_MODES[cls])
    if cls == "permutation":
        return PermutationRules()
    return ThresholdRules()


@dataclass
class Solution:
    cls: str
    deletions: int
    width: int
    result: DPResult
    stripped: int = 0


def prepare(g: Graph, td: TreeDecomposition | None = None) -> NiceTreeDecomposition:
    if td is None:
        td = heuristic_decompose(g)
    return make_nice(td, g)


def solve(g: Graph, cls: str, td: TreeDecomposition | None = None,
          opts: SolveOptions | None = None, ntd: NiceTreeDecomposition | None = None) -> Solution:
    """Exact minimum number of edge deletions turning ``g`` into class ``cls``."""
    opts = opts or SolveOptions()
    stripped = 0
    if ntd is None:
        if opts.strip_universal and canonical_class(cls) in _UNIVERSAL_SAFE:
            n = g.n
            g, td = strip_universal(g, td)
            stripped = n - g.n
        ntd = prepare(g, td)
    rules = rules_for(cls)
    if opts.upper_bound is None and opts.bound_after is not None:
        res = _adaptive(g, ntd, rules, opts)
    else:
        res = run_dp(g, ntd, rules, opts)
    return Solution(canonical_class(cls), res.deletions, ntd.width, res, stripped)


def strip_universal(g: Graph, td: TreeDecomposition | None = None) -> tuple[Graph, TreeDecomposition | None]:
    """Remove universal vertices until none is left; relabel the rest to 0..n'-1.

    For a hereditary class that is closed under adding a universal vertex,
    G and G - u need the same number of deletions: a solution for G - u plus
    u is one for G, and any solution for G restricted to G - u is one there.
    """
    alive = set(g.vertices)
    while True:
        full = [v for v in alive if len(g.adj[v] & alive) == len(alive) - 1]
        if not full:
            break
        alive.discard(full[0])
    if len(alive) == g.n:
        return g, td
    label = {v: i for i, v in enumerate(sorted(alive))}
    h = Graph.from_edges(len(label), [(label[u], label[v]) for u, v in g.edges if u in label and v in label])
    if td is not None:
        td = TreeDecomposition({b: frozenset(label[v] for v in bag if v in label) for b, bag in td.bags.items()},
                               td.tree_edges)
    return h, td


def _adaptive(g: Graph, ntd: NiceTreeDecomposition, rules, opts: SolveOptions) -> DPResult:
    """Unbounded first; if tables explode, iterative bounding instead.

    Any bound at or above the optimum yields the optimum itself, and a low
    bound discards most states as soon as their order leaves bag edges
    unrealized.  That pays off when the optimum is small next to the state
    space, which is exactly when unbounded tables explode.  Bounded runs get
    the same small cap: once one outgrows it, larger bounds will too, so the
    search falls back to a single unbounded run.
    """
    cap = opts.bound_after
    user_cap = opts.max_states
    small = cap if user_cap is None else min(cap, user_cap)
    try:
        return run_dp(g, ntd, rules, replace(opts, max_states=small))
    except TableOverflow:
        if user_cap is not None and user_cap <= cap:
            raise
    spent = 0.0
    a, b = 0, 1
    while a < g.m:
        try:
            res = run_dp(g, ntd, rules, replace(opts, upper_bound=a, max_states=small))
            res.seconds += spent
            return res
        except EmptyRoot as e:
            spent += e.seconds
        except TableOverflow:
            break
        a, b = b, a + b if a else 2
    res = run_dp(g, ntd, rules, replace(opts, upper_bound=None))
    res.seconds += spent
    return res


def min_deletions(g: Graph, cls: str, **kw) -> int:
    return solve(g, cls, opts=SolveOptions(**kw)).deletions


def certificate(g: Graph, cls: str, ntd: NiceTreeDecomposition | None = None,
                opts: SolveOptions | None = None) -> list[tuple[int, int]]:
    """An optimal deletion set, found by self-reduction.

    An edge is kept deleted exactly when removing it lowers the optimum by
    one.  Deleting edges never raises the width, so a given decomposition
    serves every call; without one, each call builds its own.  Costs at most
    ``m`` extra solves.
    """
    opts = opts or SolveOptions()
    target = solve(g, cls, ntd=ntd, opts=opts).deletions
    chosen: list[tuple[int, int]] = []
    cur = g
    for e in sorted(g.edges):
        if target == 0:
            break
        trial = cur.without([e])
        sub = SolveOptions(reduce=opts.reduce, max_states=opts.max_states, upper_bound=target - 1,
                           strip_universal=opts.strip_universal)
        try:
            d = solve(trial, cls, ntd=ntd, opts=sub).deletions
        except EmptyRoot:
            continue
        if d == target - 1:
            chosen.append(e)
            cur, target = trial, d
    return chosen
