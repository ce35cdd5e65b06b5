"""Permutation DP: two linear orders over bag vertices plus forbidden areas.

A forbidden area ``(p1, q1, p2, q2)`` covers the lines of a group of
forgotten vertices: on line ``i`` its points start right after ``p_i`` and
end right after ``q_i``.  Tokens are BOT, TOP and ``L(v)`` for vertex ``v``.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .dp import DPResult, SolveOptions, reduce_table, run_dp
from .graphio import Graph
from .ordercore import BOT, TOP, L, OrderPair, insert_after, positions, vertex_of
from .treedecomp import NiceTreeDecomposition

Area = tuple[int, int, int, int]


class PermutationAbstraction(NamedTuple):
    first: tuple[int, ...]
    second: tuple[int, ...]
    forbidden: frozenset[Area]
    cost: int = 0

    @property
    def state(self) -> tuple:
        return (self.first, self.second, self.forbidden)

    @property
    def pair(self) -> OrderPair:
        return OrderPair(self.first, self.second)


def _bag_of(order: tuple[int, ...]) -> list[int]:
    return [vertex_of(t) for t in order[1:-1]]


def _areas_meet(a: tuple[int, int, int, int], b: tuple[int, int, int, int]) -> bool:
    """Position quadruples: some line-i start of one precedes the line-i end of
    the other while the reverse holds on line j."""
    return any(a[2 * i] < b[2 * i + 1] and b[2 * j] < a[2 * j + 1] for i in (0, 1) for j in (0, 1))


def p_respects(first: tuple[int, ...], second: tuple[int, ...], x: int, nbrs: frozenset[int],
               forbidden: Iterable[Area]) -> bool:
    """Whether the pair (already holding ``x``) keeps ``x`` parallel to bag
    non-neighbours and clear of every forbidden area."""
    pos1, pos2 = positions(first), positions(second)
    tx = L(x)
    for u in _bag_of(first):
        if u != x and u not in nbrs:
            tu = L(u)
            if (pos1[tu] < pos1[tx]) != (pos2[tu] < pos2[tx]):
                return False
    g = (pos1[tx] - 1, pos2[tx] - 1)
    for p1, q1, p2, q2 in forbidden:
        # positions in the pair without x equal those with x for tokens before x
        P = (_old(pos1, p1, tx), _old(pos2, p2, tx))
        Q = (_old(pos1, q1, tx), _old(pos2, q2, tx))
        if any(P[i] < g[i] for i in (0, 1)) and any(g[j] < Q[j] for j in (0, 1)):
            return False
    return True


def _old(pos: dict[int, int], t: int, tx: int) -> int:
    k = pos[t]
    return k - 1 if k > pos[tx] else k


def p_introduce(ab: PermutationAbstraction, x: int, nbrs: frozenset[int]) -> list[PermutationAbstraction]:
    return [PermutationAbstraction(o1, o2, f, ab.cost) for (o1, o2, f), _ in
            _introduce(ab.first, ab.second, ab.forbidden, x, nbrs)]


def _introduce(first, second, forb, x, nbrs) -> Iterator[tuple[tuple, tuple[int, int]]]:
    pos1, pos2 = positions(first), positions(second)
    tx = L(x)
    others = [(pos1[L(u)], pos2[L(u)]) for u in _bag_of(first) if u not in nbrs]
    areas = [(a, (pos1[a[0]], pos1[a[1]], pos2[a[2]], pos2[a[3]])) for a in forb]
    for g1 in range(len(first) - 1):
        for g2 in range(len(second) - 1):
            if any((a <= g1) != (b <= g2) for a, b in others):
                continue
            if any((P1 < g1 or P2 < g2) and (g1 < Q1 or g2 < Q2) for _, (P1, Q1, P2, Q2) in areas):
                continue
            y1, y2 = first[g1], second[g2]
            kept, mid = [], None
            for a, (P1, Q1, P2, Q2) in areas:
                if P1 < g1 or P2 < g2:
                    kept.append(a)
                elif g1 < Q1 or g2 < Q2:
                    kept.append(_shift(a, y1, y2, tx))
                else:
                    mid = a
            o1, o2 = insert_after(first, tx, g1), insert_after(second, tx, g2)
            if mid is None:
                yield (o1, o2, frozenset(kept)), (g1, g2)
            else:
                yield (o1, o2, frozenset(kept + [mid])), (g1, g2)
                yield (o1, o2, frozenset(kept + [_shift(mid, y1, y2, tx)])), (g1, g2)


def _shift(a: Area, y1: int, y2: int, tx: int) -> Area:
    p1, q1, p2, q2 = a
    return (tx if p1 == y1 else p1, tx if q1 == y1 else q1, tx if p2 == y2 else p2, tx if q2 == y2 else q2)


def p_forget(ab: PermutationAbstraction, x: int, nbrs: frozenset[int]) -> PermutationAbstraction:
    (o1, o2, f), extra = _forget(ab.first, ab.second, ab.forbidden, x, nbrs)
    return PermutationAbstraction(o1, o2, f, ab.cost + extra)


def _forget(first, second, forb, x, nbrs):
    pos1, pos2 = positions(first), positions(second)
    tx = L(x)
    X1, X2 = pos1[tx], pos2[tx]
    x1, x2 = first[X1 - 1], second[X2 - 1]
    extra = sum(1 for u in nbrs if (pos1[L(u)] < X1) == (pos2[L(u)] < X2))
    y1 = z1 = X1 - 1
    y2 = z2 = X2 - 1
    kept = []
    for a in forb:
        P1, Q1, P2, Q2 = pos1[a[0]], pos1[a[1]], pos2[a[2]], pos2[a[3]]
        if (P1 < X1 and X2 <= Q2) or (P2 < X2 and X1 <= Q1):
            # x's own slot maps to its predecessor, i.e. index X - 1
            y1 = min(y1, X1 - 1 if P1 == X1 else P1)
            z1 = max(z1, X1 - 1 if Q1 == X1 else Q1)
            y2 = min(y2, X2 - 1 if P2 == X2 else P2)
            z2 = max(z2, X2 - 1 if Q2 == X2 else Q2)
        else:
            kept.append(a)
    out = {(x1 if p1 == tx else p1, x1 if q1 == tx else q1, x2 if p2 == tx else p2, x2 if q2 == tx else q2)
           for p1, q1, p2, q2 in kept}
    out.add((first[y1], first[z1], second[y2], second[z2]))
    o1 = tuple(t for t in first if t != tx)
    o2 = tuple(t for t in second if t != tx)
    return (o1, o2, frozenset(out)), extra


def _join(s1, s2):
    a1, b1, f1 = s1
    a2, b2, f2 = s2
    if a1 != a2 or b1 != b2:
        return None
    pos1, pos2 = positions(a1), positions(b1)
    r1 = [(pos1[p1], pos1[q1], pos2[p2], pos2[q2]) for p1, q1, p2, q2 in f1]
    r2 = [(pos1[p1], pos1[q1], pos2[p2], pos2[q2]) for p1, q1, p2, q2 in f2]
    for u in r1:
        for v in r2:
            if _areas_meet(u, v):
                return None
    return (a1, b1, f1 | f2)


def p_join(a: PermutationAbstraction, b: PermutationAbstraction) -> PermutationAbstraction | None:
    st = _join(a.state, b.state)
    if st is None:
        return None
    return PermutationAbstraction(st[0], st[1], st[2], a.cost + b.cost)


def _state_dominates(s1, s2) -> bool:
    a1, b1, f1 = s1
    a2, b2, f2 = s2
    if a1 != a2 or b1 != b2:
        return False
    pos1, pos2 = positions(a1), positions(b1)
    big = [(pos1[p1], pos1[q1], pos2[p2], pos2[q2]) for p1, q1, p2, q2 in f2]
    for p1, q1, p2, q2 in f1:
        P1, Q1, P2, Q2 = pos1[p1], pos1[q1], pos2[p2], pos2[q2]
        if not any(A1 <= P1 and Q1 <= B1 and A2 <= P2 and Q2 <= B2 for A1, B1, A2, B2 in big):
            return False
    return True


def p_dominates(a: PermutationAbstraction, b: PermutationAbstraction) -> bool:
    return a.cost <= b.cost and _state_dominates(a.state, b.state)


def p_reduce(entries: Iterable[PermutationAbstraction]) -> list[PermutationAbstraction]:
    best: dict[tuple, int] = {}
    for ab in entries:
        if ab.state not in best or ab.cost < best[ab.state]:
            best[ab.state] = ab.cost
    table = reduce_table(best, PermutationRules())
    return [PermutationAbstraction(a, b, f, c) for (a, b, f), c in table.items()]


def check_state(state) -> None:
    first, second, forb = state
    assert first[0] == BOT == second[0] and first[-1] == TOP == second[-1], "sentinels misplaced"
    assert set(first) == set(second), "orders disagree on their tokens"
    pos1, pos2 = positions(first), positions(second)
    quads = []
    for p1, q1, p2, q2 in forb:
        assert pos1[p1] <= pos1[q1] and pos2[p2] <= pos2[q2], "area runs backwards"
        assert q1 != TOP and q2 != TOP, "area ends after TOP"
        quads.append((pos1[p1], pos1[q1], pos2[p2], pos2[q2]))
    for i, u in enumerate(quads):
        for v in quads[i + 1:]:
            assert not _areas_meet(u, v), "forbidden areas intersect"


class PermutationRules:
    def leaf(self):
        return ((BOT, TOP), (BOT, TOP), frozenset())

    def introduce(self, state, x, nbrs):
        return _introduce(state[0], state[1], state[2], x, nbrs)

    def forget(self, state, x, nbrs):
        return _forget(state[0], state[1], state[2], x, nbrs)

    def join(self, a, b):
        return _join(a, b)

    def group(self, state):
        return (state[0], state[1])

    def dominates(self, a, b):
        return _state_dominates(a, b)

    def signer(self, key):
        """Covered points of each line, line two shifted past line one."""
        pos1, pos2 = positions(key[0]), positions(key[1])
        shift = 2 * len(key[0])

        def span(a: int, b: int) -> int:
            return ((1 << (b + 1)) - 1) ^ ((1 << a) - 1)

        def sig(st) -> int:
            m = 0
            for p1, q1, p2, q2 in st[2]:
                m |= span(2 * pos1[p1] + 1, 2 * pos1[q1] + 1)
                m |= span(2 * pos2[p2] + 1, 2 * pos2[q2] + 1) << shift
            return m

        return sig

    def rank(self, state):
        """Total order used to break ties between equally good states."""
        return len(state[2]), sorted(state[2])

    def pending(self, key, edges):
        p1, p2 = positions(key[0]), positions(key[1])
        return sum(1 for u, v in edges if (p1[L(u)] < p1[L(v)]) == (p2[L(u)] < p2[L(v)]))

    check = staticmethod(check_state)


def p_solve(g: Graph, ntd: NiceTreeDecomposition, opts: SolveOptions | None = None) -> DPResult:
    return run_dp(g, ntd, PermutationRules(), opts)
