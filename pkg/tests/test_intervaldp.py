import random

import pytest
from hypothesis import given, settings, strategies as st

from edgedel.dp import SolveOptions
from edgedel.intervaldp import (
    FULL,
    IntervalAbstraction,
    IntervalRules,
    check_state,
    dominates,
    forget,
    introduce,
    join,
    recut,
    reduce,
    respects,
    solve,
)
from edgedel.ordercore import BOT, CIRCULAR, GENERAL, NESTED, ORIGIN, PROPER, TOP, L, R, insert_slots
from edgedel.solve import prepare

from conftest import FIG2B, cycle, edgeless, path, star

# Bag {a, b} laid out as m < n < p < q.
A, B, X = 0, 1, 2
M, N, P, Q = L(A), L(B), R(A), R(B)
PI = (BOT, M, N, P, Q, TOP)
FIG3_I = frozenset({(M, N), (P, P), (P, Q)})
LX, RX = L(X), R(X)


def place(i, j):
    """PI with l_x after index i and r_x after index j."""
    return insert_slots(PI, X, i, j)


@pytest.mark.parametrize("name, i, j, ok", [
    ("x1", 3, 3, True),   # p < l_x < r_x < q
    ("x3", 2, 3, True),   # n < l_x < p < r_x < q
    ("x4", 1, 3, False),  # m < l_x < n: runs through (m, n)
    ("x5", 3, 4, False),  # p < l_x, q < r_x: runs through (p, q)
])
def test_fig3_respects(name, i, j, ok):
    assert respects(place(i, j), X, frozenset({A, B}), FIG3_I) is ok


def test_respects_without_regions():
    for i in range(len(PI) - 1):
        for j in range(i, len(PI) - 1):
            assert respects(place(i, j), X, frozenset({A, B}), frozenset())


def test_respects_non_neighbour():
    # x meets a's interval but is not adjacent to a
    assert not respects(place(1, 3), X, frozenset({B}), frozenset())
    assert respects(place(4, 4), X, frozenset({B}), frozenset())


def test_fig3_introduce():
    outs = introduce(IntervalAbstraction(PI, FIG3_I), X, frozenset({A, B}))
    here = {o.forbidden for o in outs if o.order == (BOT, M, N, P, LX, RX, Q, TOP)}
    assert here == {
        frozenset({(M, N), (RX, RX), (RX, Q)}),
        frozenset({(M, N), (P, P), (RX, Q)}),
    }


def test_fig3_x3_reanchors_right_regions():
    outs = introduce(IntervalAbstraction(PI, FIG3_I), X, frozenset({A, B}))
    here = [o.forbidden for o in outs if o.order == (BOT, M, N, LX, P, RX, Q, TOP)]
    assert here == [frozenset({(M, N), (RX, RX), (RX, Q)})]


def test_introduce_into_empty():
    outs = introduce(IntervalAbstraction((BOT, TOP), frozenset()), X, frozenset())
    assert outs == [IntervalAbstraction((BOT, LX, RX, TOP), frozenset(), 0)]


def test_forget_figure():
    a, b, c = 0, 1, 3
    p, p0, q0, q = L(a), L(b), L(c), R(a)
    order = (BOT, p, p0, LX, q0, RX, q, R(b), R(c), TOP)
    regions = {(p, p0), (p0, p0), (p0, LX), (LX, LX), (LX, q0), (q0, RX), (RX, q)}
    out = forget(IntervalAbstraction(order, frozenset(regions)), X, frozenset({a, b, c}))
    assert out.forbidden == {(p, p0), (p0, p0), (p0, q0), (q0, q)}
    assert out.order == (BOT, p, p0, q0, q, R(b), R(c), TOP)


def test_forget_last_vertex():
    out = forget(IntervalAbstraction((BOT, LX, RX, TOP), frozenset(), 4), X, frozenset())
    assert out == IntervalAbstraction((BOT, TOP), frozenset(), 4)


def test_forget_charges_missed_neighbour():
    order = (BOT, L(A), R(A), LX, RX, TOP)
    out = forget(IntervalAbstraction(order, frozenset(), 1), X, frozenset({A}))
    assert out.cost == 2


def test_join_figure():
    a1 = IntervalAbstraction(PI, frozenset({(N, N), (P, P)}))
    a2 = IntervalAbstraction(PI, frozenset({(M, P), (P, P), (P, Q)}))
    assert join(a1, a2) is None
    # dropping the witness (n, n) makes them compatible
    assert join(IntervalAbstraction(PI, frozenset({(P, P)})), a2) is not None


def test_join_with_empty_is_identity():
    a = IntervalAbstraction(PI, FIG3_I, 3)
    assert join(a, IntervalAbstraction(PI, frozenset(), 0)) == a


def test_join_needs_same_order():
    other = (BOT, M, P, N, Q, TOP)
    assert join(IntervalAbstraction(PI, frozenset()), IntervalAbstraction(other, frozenset())) is None


def test_dominance():
    empty = IntervalAbstraction(PI, frozenset(), 3)
    some = IntervalAbstraction(PI, frozenset({(P, Q)}), 3)
    assert dominates(empty, some) and not dominates(some, empty)
    cheap, dear = IntervalAbstraction(PI, FIG3_I, 2), IntervalAbstraction(PI, FIG3_I, 5)
    assert dominates(cheap, dear) and not dominates(dear, cheap)


def test_reduce_examples():
    a = IntervalAbstraction(PI, FIG3_I, 2)
    assert reduce([a]) == [a]
    assert reduce([a, a._replace(cost=5)]) == [a]


region_sets = st.sets(st.sampled_from([(M, N), (N, N), (P, P), (P, Q), (M, P), (N, P)]), max_size=3)


@settings(max_examples=300)
@given(st.lists(st.tuples(region_sets, st.integers(0, 4)), max_size=8), st.randoms())
def test_reduce_idempotent_and_order_free(entries, rnd):
    abs_ = [IntervalAbstraction(PI, frozenset(r), c) for r, c in entries]
    once = reduce(abs_)
    assert set(reduce(once)) == set(once)
    shuffled = abs_[:]
    rnd.shuffle(shuffled)
    assert set(reduce(shuffled)) == set(once)
    for a in abs_:
        assert any(dominates(k, a) for k in once)


@pytest.mark.parametrize("g, mode, want", [
    (FIG2B, GENERAL, 0),
    (cycle(4), GENERAL, 1),
    (cycle(4), NESTED, 2),
    (star(3), PROPER, 1),
    (cycle(5), CIRCULAR, 0),
    (cycle(8), CIRCULAR, 0),
    (path(6), PROPER, 0),
    (star(3), NESTED, 0),
    (edgeless(4), GENERAL, 0),
    (edgeless(4), CIRCULAR, 0),
])
def test_solve_examples(g, mode, want):
    assert solve(g, prepare(g), mode).deletions == want


@pytest.mark.parametrize("n", range(4, 9))
def test_cycles_interval(n):
    g = cycle(n)
    assert solve(g, prepare(g), GENERAL).deletions == 1


# --- circular cut ---------------------------------------------------------------

def test_recut_rotates_to_smallest():
    u, v = 0, 1
    order = (ORIGIN, L(v), R(u), R(v), L(u))
    new, regs, wrap = recut(order, frozenset(), None)
    assert new == (ORIGIN, L(u), L(v), R(u), R(v))
    assert regs == frozenset() and wrap is None


def test_recut_moves_covering_region_to_wrap():
    u, v = 0, 1
    order = (ORIGIN, L(v), R(u), R(v), L(u))
    # the new cut is the gap after R(v); the region from after R(u) to
    # after L(u) runs across it
    new, regs, wrap = recut(order, frozenset({(R(u), L(u)), (L(v), L(v))}), None)
    assert regs == frozenset({(L(v), L(v))})
    assert wrap == (L(u), R(u))
    check_state((new, regs, wrap))


def test_recut_idempotent():
    rng = random.Random(9)
    rules = IntervalRules(CIRCULAR)
    for _ in range(30):
        g = cycle(rng.randrange(3, 7))
        seen = []
        prepare_opts = SolveOptions(trace=lambda stat, table: seen.extend(table))
        solve(g, prepare(g), CIRCULAR, prepare_opts)
        for state in seen:
            assert recut(*state) == state


def test_invariants_hold_in_every_mode():
    rng = random.Random(11)
    for mode in (GENERAL, PROPER, NESTED, CIRCULAR):
        for _ in range(15):
            n = rng.randrange(2, 7)
            edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.5]
            from edgedel.graphio import Graph
            g = Graph.from_edges(n, edges)
            solve(g, prepare(g), mode, SolveOptions(check_invariants=True))


def test_check_state_rejects_overlap():
    with pytest.raises(AssertionError):
        check_state((PI, frozenset({(M, P), (N, Q)}), None))


def test_check_state_rejects_full_with_regions():
    order = (ORIGIN, L(A), R(A))
    with pytest.raises(AssertionError):
        check_state((order, frozenset({(L(A), L(A))}), FULL))


@pytest.mark.parametrize("mode", [GENERAL, CIRCULAR])
def test_introduce_emits_exactly_respecting_orders(mode):
    from edgedel.graphio import Graph
    from edgedel.intervaldp import _introduce
    from edgedel.ordercore import extension_slots

    rng = random.Random(21)
    states = set()
    for _ in range(12):
        n = rng.randrange(3, 6)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.6])
        solve(g, prepare(g), mode, SolveOptions(trace=lambda stat, table: states.update(table)))
    x = 40
    for order, forb, wrap in list(states)[:400]:
        bag = [t for t in order if t >= 4 and not t & 1]
        nbrs = frozenset((t - 4) // 2 for t in bag[::2])
        got = {new for (new, _, _), _ in _introduce(order, forb, wrap, x, nbrs, mode)}
        want = {insert_slots(order, x, i, j) for i, j in extension_slots(order, mode)}
        want = {o for o in want if respects(o, x, nbrs, forb, wrap)}
        assert got == want
