"""Threshold DP over (Y, order, b, pivot).

A threshold representation is a set ``W`` of dominating vertices plus a
linear order of right endpoints; ``u`` and ``v`` meet iff the later of the
two lies in ``W``.  Orders hold BOT, TOP and ``R(v)`` tokens.

``b = 0``: no forgotten vertex is in ``W``; the pivot is the last bag token
before every forgotten one.  ``b = 1``: some forgotten vertex is in ``W``;
the pivot is the last bag token before the latest forgotten ``W`` member.

Join with ``b1 = b2 = 1`` is rejected: the two forgotten ``W`` members come
from disjoint subtrees, so they are non-adjacent, yet any two ``W`` members
meet.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .dp import DPResult, SolveOptions, reduce_table, run_dp
from .graphio import Graph
from .ordercore import BOT, TOP, R, insert_after, positions, vertex_of
from .treedecomp import NiceTreeDecomposition


class ThresholdAbstraction(NamedTuple):
    dominating: frozenset[int]
    order: tuple[int, ...]
    flag: int
    pivot: int
    cost: int = 0

    @property
    def state(self) -> tuple:
        return (self.dominating, self.order, self.flag, self.pivot)


def t_intersects(u: int, v: int, dominating: frozenset[int], order: tuple[int, ...]) -> bool:
    pos = positions(order)
    if pos[R(u)] < pos[R(v)]:
        u, v = v, u
    return u in dominating


def _introduce(state, x: int, nbrs: frozenset[int]) -> Iterator[tuple[tuple, tuple[int, bool]]]:
    Y, order, b, p = state
    pos = positions(order)
    pp = pos[p]
    rx = R(x)
    bag = [vertex_of(t) for t in order[1:-1]]
    non = [(pos[R(u)], u in Y) for u in bag if u not in nbrs]
    for g in range(len(order) - 1):
        new = insert_after(order, rx, g)
        for dom in (False, True):
            if b == 1 and (dom or g < pp):
                continue
            if b == 0 and dom and g > pp:
                continue
            # u before x meets x iff x dominates; u after x meets x iff u dominates
            if any((k <= g and dom) or (k > g and u_dom) for k, u_dom in non):
                continue
            pivot = rx if b == 0 and g == pp else p
            yield (Y | {x} if dom else Y, new, b, pivot), (g, dom)


def _forget(state, x: int, nbrs: frozenset[int]):
    Y, order, b, p = state
    rx = R(x)
    extra = sum(1 for u in nbrs if not t_intersects(x, u, Y, order))
    pos = positions(order)
    before = order[pos[rx] - 1]
    in_y = x in Y
    nb = 1 if in_y else b
    if nb == 0:
        np_ = before if pos[rx] <= pos[p] else p
    elif b == 0 or (pos[p] < pos[rx] and in_y) or rx == p:
        np_ = before
    else:
        np_ = p
    return (Y - {x}, tuple(t for t in order if t != rx), nb, np_), extra


def _join(s1, s2):
    Y1, o1, b1, p1 = s1
    Y2, o2, b2, p2 = s2
    if Y1 != Y2 or o1 != o2:
        return None
    pos = positions(o1)
    if b1 == 0 and b2 == 0:
        return (Y1, o1, 0, p1 if pos[p1] <= pos[p2] else p2)
    if b1 == 1 and b2 == 1:
        return None
    if b1 == 1:
        return (Y1, o1, 1, p1) if pos[p1] <= pos[p2] else None
    return (Y1, o1, 1, p2) if pos[p2] <= pos[p1] else None


def _state_dominates(s1, s2) -> bool:
    Y1, o1, b1, p1 = s1
    Y2, o2, b2, p2 = s2
    if Y1 != Y2 or o1 != o2:
        return False
    if b1 == 0 and b2 == 1:
        return True
    if b1 != b2:
        return False
    pos = positions(o1)
    return pos[p1] >= pos[p2] if b1 == 0 else pos[p1] <= pos[p2]


def t_introduce(ab: ThresholdAbstraction, x: int, nbrs: frozenset[int]) -> list[ThresholdAbstraction]:
    return [ThresholdAbstraction(*st, ab.cost) for st, _ in _introduce(ab.state, x, nbrs)]


def t_forget(ab: ThresholdAbstraction, x: int, nbrs: frozenset[int]) -> ThresholdAbstraction:
    st, extra = _forget(ab.state, x, nbrs)
    return ThresholdAbstraction(*st, ab.cost + extra)


def t_join(a: ThresholdAbstraction, b: ThresholdAbstraction) -> ThresholdAbstraction | None:
    st = _join(a.state, b.state)
    return None if st is None else ThresholdAbstraction(*st, a.cost + b.cost)


def t_dominates(a: ThresholdAbstraction, b: ThresholdAbstraction) -> bool:
    return a.cost <= b.cost and _state_dominates(a.state, b.state)


def t_reduce(entries: Iterable[ThresholdAbstraction]) -> list[ThresholdAbstraction]:
    best: dict[tuple, int] = {}
    for ab in entries:
        if ab.state not in best or ab.cost < best[ab.state]:
            best[ab.state] = ab.cost
    table = reduce_table(best, ThresholdRules())
    return [ThresholdAbstraction(*st, c) for st, c in table.items()]


def check_state(state) -> None:
    Y, order, b, p = state
    assert order[0] == BOT and order[-1] == TOP, "sentinels misplaced"
    assert b in (0, 1), "flag must be 0 or 1"
    assert p in order and p != TOP, "pivot must be BOT or a bag token"
    assert Y <= {vertex_of(t) for t in order[1:-1]}, "dominating set leaves the bag"


class ThresholdRules:
    def leaf(self):
        return (frozenset(), (BOT, TOP), 0, BOT)

    def introduce(self, state, x, nbrs):
        return _introduce(state, x, nbrs)

    def forget(self, state, x, nbrs):
        return _forget(state, x, nbrs)

    def join(self, a, b):
        return _join(a, b)

    def group(self, state):
        return (state[0], state[1])

    def dominates(self, a, b):
        return _state_dominates(a, b)

    def pending(self, key, edges):
        Y, order = key
        pos = positions(order)
        return sum(1 for u, v in edges if (u if pos[R(u)] > pos[R(v)] else v) not in Y)

    check = staticmethod(check_state)


def t_solve(g: Graph, ntd: NiceTreeDecomposition, opts: SolveOptions | None = None) -> DPResult:
    return run_dp(g, ntd, ThresholdRules(), opts)
