"""Interval-family DP: interval, proper interval, nested (trivially perfect), circular-arc.

An abstraction is an endpoint order of the bag, a set of forbidden regions
and a cost.  A forbidden region ``(p, q)`` stands for intervals of
already-forgotten vertices that start right after token ``p`` and end right
after token ``q``; a future interval may not intersect it.  ``(g, g)`` is a
region lying entirely inside the gap after ``g``.

Positions are compared on a doubled scale: the token at index ``k`` sits at
``2k`` and the gap right after it at ``2k + 1``.

Circular mode keeps the linear machinery for regions that avoid ORIGIN and
tracks at most one region through ORIGIN in ``wrap``: ``(a, b)`` means the
region covers ORIGIN from the gap after ``b`` round to the gap after ``a``
(``a == b`` leaves a hole in that gap).  ``FULL`` means the forgotten part
covers the whole circle.
"""

from __future__ import annotations

from typing import Iterable, Iterator, NamedTuple

from .dp import DPResult, SolveOptions, reduce_table, run_dp
from .graphio import Graph
from .ordercore import (
    BOT,
    CIRCULAR,
    GENERAL,
    NESTED,
    ORIGIN,
    PROPER,
    TOP,
    L,
    R,
    arcs_meet,
    extension_slots,
    insert_slots,
    is_left,
    positions,
    vertex_of,
)
from .treedecomp import NiceTreeDecomposition

FULL = "full"
Region = tuple[int, int]


class IntervalAbstraction(NamedTuple):
    order: tuple[int, ...]
    forbidden: frozenset[Region]
    cost: int = 0
    wrap: tuple[int, int] | str | None = None

    @property
    def state(self) -> tuple:
        return (self.order, self.forbidden, self.wrap)


def _bag_of(order: tuple[int, ...]) -> list[int]:
    return [vertex_of(t) for t in order if is_left(t)]


def _anchor(order: tuple[int, ...], k: int, gone: tuple[int, ...]) -> int:
    while order[k] in gone:
        k -= 1
    return order[k]


def _canonical(order: tuple[int, ...], regions: Iterable[Region]) -> frozenset[Region]:
    """Drop regions that can never block anything in a linear order."""
    last = order[-2]
    return frozenset(r for r in regions if r != (BOT, BOT) and r != (last, last))


def _disjoint(regions, pos) -> bool:
    rs = [(pos[p], pos[q]) for p, q in regions]
    for i, (p1, q1) in enumerate(rs):
        for p2, q2 in rs[i + 1:]:
            if p1 < q2 and p2 < q1:
                return False
    return True


def respects(order: tuple[int, ...], x: int, nbrs: frozenset[int], forbidden: Iterable[Region],
             wrap=None) -> bool:
    """Whether placing ``x`` as in ``order`` meets exactly its bag neighbours
    and avoids every forbidden region.

    Regions are anchored in ``order`` without ``x``: each endpoint of ``x`` is
    read as the gap after its nearest remaining predecessor.
    """
    pos = positions(order)
    circular = order[0] == ORIGIN
    for u in _bag_of(order):
        if u != x and u not in nbrs and arcs_meet(x, u, pos, circular):
            return False
    mine = (L(x), R(x))
    old = tuple(t for t in order if t not in mine)
    opos = positions(old)

    def gap(t: int) -> int:
        k = pos[t] - 1
        while order[k] in mine:
            k -= 1
        return opos[order[k]]

    i, j = gap(L(x)), gap(R(x))
    regions = [(opos[p], opos[q]) for p, q in forbidden]
    if pos[L(x)] > pos[R(x)]:  # wraps through ORIGIN
        return wrap is None and all(j <= P and Q <= i for P, Q in regions)
    if any(i < Q and P < j for P, Q in regions):
        return False
    if wrap == FULL:
        return False
    if wrap is not None:
        return opos[wrap[0]] <= i and opos[wrap[1]] >= j
    return True


# --- introduce ----------------------------------------------------------------

def introduce(ab: IntervalAbstraction, x: int, nbrs: frozenset[int], mode: str = GENERAL
              ) -> list[IntervalAbstraction]:
    return [IntervalAbstraction(o, f, ab.cost, w) for (o, f, w), _ in
            _introduce(ab.order, ab.forbidden, ab.wrap, x, nbrs, mode)]


def _introduce(order, forb, wrap, x, nbrs, mode) -> Iterator[tuple[tuple, tuple[int, int]]]:
    pos = positions(order)
    spans = [(pos[L(u)], pos[R(u)]) for u in _bag_of(order) if u not in nbrs]
    regions = [(p, q, pos[p], pos[q]) for p, q in forb]
    rx = R(x)
    circular = mode == CIRCULAR
    if circular and wrap not in (None, FULL):
        wa, wb = pos[wrap[0]], pos[wrap[1]]
    for i, j in extension_slots(order, mode):
        if j < 0 or j < i:  # arc through ORIGIN
            if wrap is not None:
                continue
            new = insert_slots(order, x, i, j)
            npos = positions(new)
            if any(arcs_meet(x, u, npos, True) for u in _bag_of(order) if u not in nbrs):
                continue
            jr = ~j if j < 0 else j
            if any(P < jr or Q > i for _, _, P, Q in regions):
                continue
            y = order[jr]
            out = frozenset((rx if p == y else p, rx if q == y else q) for p, q, _, _ in regions)
            yield (new, out, None), (i, j)
            continue
        if circular:
            if wrap == FULL:
                continue
            if wrap is not None and (wa > i or wb < j):
                continue
            new = insert_slots(order, x, i, j)
            npos = positions(new)
            if any(arcs_meet(x, u, npos, True) for u in _bag_of(order) if u not in nbrs):
                continue
        else:
            if any(a <= j and i < b for a, b in spans):
                continue
        if any(i < Q and P < j for _, _, P, Q in regions):
            continue
        if not circular:
            new = insert_slots(order, x, i, j)
        q0 = order[j]
        kept, mid = [], None
        for p, q, P, Q in regions:
            if P < j:  # no conflict, so it already ends by gap i
                kept.append((p, q))
            elif i < Q:
                kept.append((rx if p == q0 else p, rx if q == q0 else q))
            else:
                mid = (p, q)
        new_wrap = wrap
        if wrap is not None and wrap[1] == q0:
            new_wrap = (wrap[0], rx)
        variants = [kept] if mid is None else [kept + [mid], kept + [(rx, rx)]]
        for regs in variants:
            f = frozenset(regs) if circular else _canonical(new, regs)
            yield (new, f, new_wrap), (i, j)


# --- forget -------------------------------------------------------------------

def forget(ab: IntervalAbstraction, x: int, nbrs: frozenset[int]) -> IntervalAbstraction:
    (o, f, w), extra = _forget(ab.order, ab.forbidden, ab.wrap, x, nbrs)
    return IntervalAbstraction(o, f, ab.cost + extra, w)


def _forget(order, forb, wrap, x, nbrs):
    pos = positions(order)
    circular = order[0] == ORIGIN
    lt, rt = L(x), R(x)
    pl, pr = pos[lt], pos[rt]
    gone = (lt, rt)
    new = tuple(t for t in order if t not in gone)
    extra = sum(1 for u in nbrs if not arcs_meet(x, u, pos, circular))

    def anchor(point: int) -> int:
        return _anchor(order, point >> 1, gone)

    def sub(t: int) -> int:
        return _anchor(order, pos[t], gone) if t in gone else t

    if wrap == FULL:
        return (new, frozenset(), FULL), extra

    if pl < pr:
        start, end = 2 * pl, 2 * pr
        kept = []
        for p, q in forb:
            s, e = 2 * pos[p] + 1, 2 * pos[q] + 1
            if s < 2 * pr and 2 * pl < e:
                start, end = min(start, s), max(end, e)
            else:
                kept.append((p, q))
        new_wrap = None
        if wrap is not None:
            we, ws = 2 * pos[wrap[0]] + 1, 2 * pos[wrap[1]] + 1
            hit_pre, hit_suf = we > 2 * pl, ws < 2 * pr
            if hit_pre:
                we = max(we, end)
            if hit_suf:
                ws = min(ws, start)
            if (hit_pre and hit_suf) or we > ws:
                return (new, frozenset(), FULL), extra
            new_wrap = (anchor(we), anchor(ws))
            if not (hit_pre or hit_suf):
                kept.append((anchor(start), anchor(end)))
        else:
            kept.append((anchor(start), anchor(end)))
        regs = [(sub(p), sub(q)) for p, q in kept]
        f = frozenset(regs) if circular else _canonical(new, regs)
        return (new, f, new_wrap), extra

    # arc through ORIGIN
    we, ws = 2 * pr, 2 * pl
    if wrap is not None:
        we, ws = max(we, 2 * pos[wrap[0]] + 1), min(ws, 2 * pos[wrap[1]] + 1)
    kept = []
    for p, q in forb:
        P, Q = pos[p], pos[q]
        pre, suf = P < pr, Q >= pl
        if pre and suf:
            return (new, frozenset(), FULL), extra
        if pre:
            we = max(we, 2 * Q + 1)
        elif suf:
            ws = min(ws, 2 * P + 1)
        else:
            kept.append((p, q))
    if we > ws:
        return (new, frozenset(), FULL), extra
    regs = frozenset((sub(p), sub(q)) for p, q in kept)
    return (new, regs, (anchor(we), anchor(ws))), extra


# --- join ---------------------------------------------------------------------

def join(a: IntervalAbstraction, b: IntervalAbstraction) -> IntervalAbstraction | None:
    st = _join(a.state, b.state)
    if st is None:
        return None
    return IntervalAbstraction(st[0], st[1], a.cost + b.cost, st[2])


def _join(s1, s2):
    o1, f1, w1 = s1
    o2, f2, w2 = s2
    if o1 != o2:
        return None
    if w1 is not None and w2 is not None:
        return None
    pos = positions(o1)
    r1 = [(pos[p], pos[q]) for p, q in f1]
    r2 = [(pos[p], pos[q]) for p, q in f2]
    for p1, q1 in r1:
        for p2, q2 in r2:
            if p1 < q2 and p2 < q1:
                return None
    w = w1 if w1 is not None else w2
    if w is not None:
        other = r2 if w1 is not None else r1
        if w == FULL:
            if other:
                return None
        else:
            wa, wb = pos[w[0]], pos[w[1]]
            if any(p < wa or q > wb for p, q in other):
                return None
    return (o1, f1 | f2, w)


# --- dominance ----------------------------------------------------------------

def _regions_below(f1, f2, pos) -> bool:
    """Each region of ``f1`` is contained in some region of ``f2``."""
    r2 = [(pos[p], pos[q]) for p, q in f2]
    for p, q in f1:
        P, Q = pos[p], pos[q]
        if not any(p2 <= P and Q <= q2 for p2, q2 in r2):
            return False
    return True


def _state_dominates(s1, s2) -> bool:
    o1, f1, w1 = s1
    o2, f2, w2 = s2
    if o1 != o2:
        return False
    if w2 == FULL:
        return True
    if w1 == FULL:
        return False
    pos = positions(o1)
    if w1 is not None:
        if w2 is None:
            return False
        if pos[w1[0]] > pos[w2[0]] or pos[w1[1]] < pos[w2[1]]:
            return False
    return _regions_below(f1, f2, pos)


def dominates(a: IntervalAbstraction, b: IntervalAbstraction) -> bool:
    """``a`` is at least as good as ``b``: same order, looser regions, no higher cost."""
    return a.cost <= b.cost and _state_dominates(a.state, b.state)


def reduce(entries: Iterable[IntervalAbstraction]) -> list[IntervalAbstraction]:
    best: dict[tuple, int] = {}
    for ab in entries:
        if ab.state not in best or ab.cost < best[ab.state]:
            best[ab.state] = ab.cost
    table = reduce_table(best, IntervalRules(GENERAL))
    return [IntervalAbstraction(o, f, c, w) for (o, f, w), c in table.items()]


# --- circular cut ---------------------------------------------------------------

def recut(order, forb, wrap):
    """Move ORIGIN to the start of the gap just before the smallest token.

    The cut point carries no meaning on the circle, so fixing it by the token
    order alone merges rotations of the same cyclic state while keeping join
    partners (which share the token order) aligned.  Whatever region covers
    the new cut becomes the wrap region; an old wrap region that does not
    cover it becomes an ordinary region.
    """
    n = len(order)
    if n == 1:
        return (order, forb, wrap)
    body = order[1:]
    m = body.index(min(body))
    k = m if m >= 1 else n - 1  # index of the token whose gap is cut
    t, last = order[k], order[-1]
    new = (ORIGIN,) + order[k + 1:] + order[1:k + 1]
    if wrap == FULL:
        return (new, forb, FULL)

    def mp(u: int) -> int:
        if u == ORIGIN:
            u = last
        return ORIGIN if u == t else u

    pos = positions(order)
    regs = set()
    new_wrap = None
    for p, q in forb:
        if pos[p] < k <= pos[q]:
            new_wrap = (mp(q), mp(p))
        else:
            regs.add((mp(p), mp(q)))
    if wrap is not None:
        a, b = wrap
        if pos[a] < k <= pos[b]:
            regs.add((mp(b), mp(a)))
        else:
            new_wrap = (mp(a), mp(b))
    return (new, frozenset(regs), new_wrap)


# --- invariants ---------------------------------------------------------------

def check_state(state) -> None:
    order, forb, wrap = state
    pos = positions(order)
    circular = order[0] == ORIGIN
    for p, q in forb:
        assert p in pos and q in pos, f"region anchor missing from order: {(p, q)}"
        assert pos[p] <= pos[q], f"region runs backwards: {(p, q)}"
        if not circular:
            assert q != TOP, "region ends after TOP"
            assert (p, q) != (BOT, BOT) and (p, q) != (order[-2], order[-2]), "non-canonical region"
    assert _disjoint(forb, pos), "forbidden regions overlap"
    for t in order:
        if is_left(t):
            assert R(vertex_of(t)) in pos, "unpaired endpoint"
            if not circular:
                assert pos[t] < pos[R(vertex_of(t))], "interval runs backwards"
    if circular and len(order) > 1:
        assert order[1] == min(order[1:]), "circular order not cut before its smallest token"
        anchors = {t for r in forb for t in r} | (set(wrap) if wrap not in (None, FULL) else set())
        assert order[-1] not in anchors, "anchor left in the gap before ORIGIN"
    if wrap == FULL:
        assert not forb, "full wrap with leftover regions"
    elif wrap is not None:
        assert circular, "wrap region in linear order"
        wa, wb = pos[wrap[0]], pos[wrap[1]]
        assert wa <= wb, "wrap region overlaps itself"
        for p, q in forb:
            assert pos[p] >= wa and pos[q] <= wb, "region meets wrap region"


# --- driver -------------------------------------------------------------------

def _span(a: int, b: int) -> int:
    """Bits ``a .. b`` inclusive."""
    return ((1 << (b + 1)) - 1) ^ ((1 << a) - 1)


class IntervalRules:
    def __init__(self, mode: str = GENERAL):
        if mode not in (GENERAL, PROPER, NESTED, CIRCULAR):
            raise ValueError(f"unknown mode {mode!r}")
        self.mode = mode

    def leaf(self):
        if self.mode == CIRCULAR:
            return ((ORIGIN,), frozenset(), None)
        return ((BOT, TOP), frozenset(), None)

    def introduce(self, state, x, nbrs):
        order, forb, wrap = state
        out = _introduce(order, forb, wrap, x, nbrs, self.mode)
        if self.mode == CIRCULAR:
            return ((recut(*st), how) for st, how in out)
        return out

    def forget(self, state, x, nbrs):
        order, forb, wrap = state
        st, extra = _forget(order, forb, wrap, x, nbrs)
        if self.mode == CIRCULAR:
            st = recut(*st)
        return st, extra

    def join(self, a, b):
        return _join(a, b)

    def group(self, state):
        return state[0]

    def dominates(self, a, b):
        return _state_dominates(a, b)

    def dominator(self, order):
        pos = positions(order)
        seen: dict = {}

        def prep(st):
            r = seen.get(st)
            if r is None:
                w = st[2]
                if w is not None and w != FULL:
                    w = (pos[w[0]], pos[w[1]])
                inner = closed = dots = 0
                for p, q in st[1]:
                    P, Q = pos[p], pos[q]
                    closed |= _span(P, Q)
                    if P == Q:
                        dots |= 1 << P
                    else:
                        inner |= _span(2 * P + 2, 2 * Q)
                r = seen[st] = (inner, closed, dots, w)
            return r

        def dom(a, b) -> bool:
            ia, _, da, wa = prep(a)
            ib, cb, _, wb = prep(b)
            if wb == FULL:
                return True
            if wa == FULL:
                return False
            if wa is not None and (wb is None or wa[0] > wb[0] or wa[1] < wb[1]):
                return False
            # touching regions of b leave the shared gap point uncovered, so
            # mask containment means containment in a single region
            return not ia & ~ib and not da & ~cb

        return dom

    def signer(self, order):
        """Exact dominance signature: ``dominates(a, b)`` iff sig(a) is a subset of sig(b).

        Tokens sit at even points and gaps at odd ones.  The low area holds
        the points strictly inside each wide region (``2p + 2 .. 2q``), so
        touching regions stay apart and containment in the union means
        containment in one region.  The middle area holds every region's
        closed token span, which settles one-gap regions.  The high area
        holds the wrap region.
        """
        pos = positions(order)
        top = 2 * len(order)
        everything = (1 << 3 * top) - 1

        def sig(st) -> int:
            w = st[2]
            if w == FULL:
                return everything
            inner = closed = 0
            for p, q in st[1]:
                P, Q = pos[p], pos[q]
                closed |= _span(P, Q)
                if P != Q:
                    inner |= _span(2 * P + 2, 2 * Q)
            m = inner | closed << top
            if w is not None:
                m |= (_span(0, 2 * pos[w[0]]) | _span(2 * pos[w[1]] + 2, top - 1)) << 2 * top
            return m

        return sig

    signer_exact = True

    def clash_signer(self, order):
        """``(strong, weak)`` point masks; states clash iff one's strong meets the other's weak.

        Strong bits are the points inside wide regions plus the wrap; weak
        bits add the gap of each one-gap region, which only a wide region or
        the wrap can collide with.
        """
        pos = positions(order)
        top = 2 * len(order)
        everything = (1 << top) - 1

        def sig(st) -> tuple[int, int]:
            w = st[2]
            if w == FULL:
                return everything, everything
            m = dots = 0
            for p, q in st[1]:
                if p != q:
                    m |= _span(2 * pos[p] + 2, 2 * pos[q])
                else:
                    dots |= 1 << 2 * pos[p] + 1
            if w is not None:
                m |= _span(0, 2 * pos[w[0]]) | _span(2 * pos[w[1]] + 2, top - 1)
            return m, m | dots

        return sig

    def joined(self, a, b):
        """``join`` for a pair whose clash signatures do not meet."""
        return (a[0], a[1] | b[1], a[2] if a[2] is not None else b[2])

    def rank(self, state):
        """Total order used to break ties between equally good states."""
        _, forb, wrap = state
        w = (0,) if wrap is None else (1,) if wrap == FULL else (2,) + wrap
        return len(forb), sorted(forb), w

    def pending(self, order, edges):
        pos = positions(order)
        circular = self.mode == CIRCULAR
        return sum(1 for u, v in edges if not arcs_meet(u, v, pos, circular))

    check = staticmethod(check_state)


def solve(g: Graph, ntd: NiceTreeDecomposition, mode: str = GENERAL,
          opts: SolveOptions | None = None) -> DPResult:
    return run_dp(g, ntd, IntervalRules(mode), opts)
