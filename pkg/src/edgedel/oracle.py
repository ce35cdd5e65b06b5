"""Exhaustive ground truth for recognition and minimum edge deletion.

Every representation of a class is built by a left-to-right sweep over its
endpoint (or line, or right-endpoint) sequence.  A sweep step may only make
a new object meet objects whose vertices are adjacent in ``g``; the number
of edges it realizes is counted as it goes.  The best total over all sweeps,
memoized on the sweep frontier, is the largest subgraph of ``g`` in the
class, so the minimum deletion count is ``m`` minus it.  This visits every
representation up to the frontier equivalence, so it is exhaustive without
listing edge subsets one size at a time.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .graphio import Graph

CLASSES = ("interval", "proper", "nested", "circular", "permutation", "threshold")
ALIASES = {
    "interval": "interval",
    "proper": "proper",
    "proper-interval": "proper",
    "nested": "nested",
    "trivially-perfect": "nested",
    "circular": "circular",
    "circular-arc": "circular",
    "permutation": "permutation",
    "threshold": "threshold",
}
DEFAULT_MAX_N = 8


class OracleTooLarge(ValueError):
    """The instance exceeds the configured size cap; no answer is given."""


def canonical_class(name: str) -> str:
    try:
        return ALIASES[name]
    except KeyError:
        raise ValueError(f"unknown class {name!r}; expected one of {sorted(ALIASES)}") from None


def _masks(g: Graph) -> tuple[int, ...]:
    return tuple(sum(1 << u for u in g.adj[v]) for v in g.vertices)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _interval(n: int, nb: tuple[int, ...]) -> int:
    full = (1 << n) - 1

    @lru_cache(maxsize=None)
    def best(opened: int, closed: int) -> int:
        if closed == full:
            return 0
        live = opened & ~closed
        out = -1
        for v in range(n):
            bit = 1 << v
            if not opened & bit:
                if not live & ~nb[v]:
                    out = max(out, live.bit_count() + best(opened | bit, closed))
            elif not closed & bit:
                out = max(out, best(opened, closed | bit))
        return out

    return best(0, 0)


def _queue(n: int, nb: tuple[int, ...], lifo: bool) -> int:
    """Proper interval (close first-opened first) or nested (close last-opened first)."""

    @lru_cache(maxsize=None)
    def best(opened: int, live: tuple[int, ...]) -> int:
        out = best(opened, live[:-1] if lifo else live[1:]) if live else 0
        live_mask = sum(1 << u for u in live)
        for v in range(n):
            if not opened >> v & 1 and not live_mask & ~nb[v]:
                out = max(out, len(live) + best(opened | 1 << v, live + (v,)))
        return out

    return best(0, ())


def _permutation(n: int, nb: tuple[int, ...]) -> int:
    """Place vertices in line-1 order; each goes into some slot of line 2 and
    crosses exactly the placed vertices after that slot."""

    @lru_cache(maxsize=None)
    def best(line2: tuple[int, ...]) -> int:
        placed = sum(1 << u for u in line2)
        out = 0
        for v in range(n):
            if placed >> v & 1:
                continue
            for k in range(len(line2), -1, -1):
                after = line2[k:]
                if any(not nb[v] >> u & 1 for u in after):
                    break  # moving the slot left only adds crossings
                out = max(out, len(after) + best(line2[:k] + (v,) + after))
        return out

    return best(())


def _threshold(n: int, nb: tuple[int, ...]) -> int:
    """Each new vertex is isolated or dominates everything placed so far."""

    @lru_cache(maxsize=None)
    def best(placed: int) -> int:
        out = 0
        for v in range(n):
            if placed >> v & 1:
                continue
            sub = best(placed | 1 << v)
            if not placed & ~nb[v]:
                sub = max(sub, placed.bit_count() + best(placed | 1 << v))
            out = max(out, sub)
        return out

    return best(0)


def _circular(n: int, nb: tuple[int, ...]) -> int:
    """Cut the circle at a point no endpoint uses.  Arcs through it (the set
    ``W``, a clique) split into a prefix piece open at the start and a suffix
    piece open at the end; the rest are intervals in between."""
    best_total = _interval(n, nb)
    verts = range(n)
    for size in range(1, n + 1):
        for W in combinations(verts, size):
            if any(not nb[a] >> b & 1 for a, b in combinations(W, 2)):
                continue
            best_total = max(best_total, size * (size - 1) // 2 + _circular_sweep(n, nb, W))
    return best_total


def _circular_sweep(n: int, nb: tuple[int, ...], W: tuple[int, ...]) -> int:
    rest = tuple(v for v in range(n) if v not in W)
    k = len(W)
    UNSEEN, CLOSED = -1, -2

    # status[i] for rest[i]: UNSEEN, CLOSED, or the mask (over W indices) of
    # arcs whose prefix was still open when rest[i] opened.
    # phase[j] for W[j]: 0 prefix open, 1 between pieces, 2 suffix open.
    @lru_cache(maxsize=None)
    def best(status: tuple[int, ...], phase: tuple[int, ...]) -> int:
        if all(s == CLOSED for s in status):
            return 0
        out = -1
        open_rest = [rest[i] for i, s in enumerate(status) if s >= 0]
        covering = open_rest + [W[j] for j in range(k) if phase[j] != 1]
        pre_mask = sum(1 << j for j in range(k) if phase[j] == 0)
        for i, s in enumerate(status):
            if s == UNSEEN:
                v = rest[i]
                if all(nb[v] >> u & 1 for u in covering):
                    st = status[:i] + (pre_mask,) + status[i + 1:]
                    out = max(out, len(covering) + best(st, phase))
            elif s >= 0:
                out = max(out, best(status[:i] + (CLOSED,) + status[i + 1:], phase))
        for j in range(k):
            if phase[j] == 0:
                out = max(out, best(status, phase[:j] + (1,) + phase[j + 1:]))
            elif phase[j] == 1:
                w = W[j]
                fresh = [rest[i] for i, s in enumerate(status) if s >= 0 and not s >> j & 1]
                if all(nb[w] >> u & 1 for u in fresh):
                    out = max(out, len(fresh) + best(status, phase[:j] + (2,) + phase[j + 1:]))
        return out

    return best((UNSEEN,) * len(rest), (0,) * k)


_SWEEPS = {
    "interval": _interval,
    "proper": lambda n, nb: _queue(n, nb, lifo=False),
    "nested": lambda n, nb: _queue(n, nb, lifo=True),
    "permutation": _permutation,
    "threshold": _threshold,
    "circular": _circular,
}


def max_class_subgraph(g: Graph, cls: str, max_n: int = DEFAULT_MAX_N) -> int:
    """Largest number of edges of a spanning subgraph of ``g`` in the class."""
    cls = canonical_class(cls)
    if g.n > max_n:
        raise OracleTooLarge(f"oracle refuses n={g.n} > max_n={max_n}")
    if g.n == 0:
        return 0
    return _SWEEPS[cls](g.n, _masks(g))


def min_edge_deletion_bruteforce(g: Graph, cls: str, max_n: int = DEFAULT_MAX_N) -> int:
    return g.m - max_class_subgraph(g, cls, max_n)


def threshold_peel(g: Graph) -> bool:
    """Classic recognition: strip isolated or dominating vertices until empty."""
    alive = set(g.vertices)
    deg = {v: len(g.adj[v]) for v in alive}
    while alive:
        k = len(alive)
        v = next((u for u in alive if deg[u] == 0 or deg[u] == k - 1), None)
        if v is None:
            return False
        alive.discard(v)
        for u in g.adj[v]:
            if u in alive:
                deg[u] -= 1
    return True


def is_in_class(g: Graph, cls: str, max_n: int = DEFAULT_MAX_N) -> bool:
    cls = canonical_class(cls)
    if cls == "threshold" and g.n > max_n:
        return threshold_peel(g)
    return max_class_subgraph(g, cls, max_n) == g.m
