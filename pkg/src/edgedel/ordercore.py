"""Endpoint tokens, linear and circular orders, and intersection predicates.

Tokens are small ints so orders can be plain tuples:

    BOT = 0, TOP = 1, ORIGIN = 2, L(v) = 4 + 2v, R(v) = 5 + 2v

Permutation orders reuse ``L(v)`` as the token of vertex ``v``.  A linear
order is a tuple ``(BOT, ..., TOP)``; a circular order is ``(ORIGIN, ...)``
read cyclically, with ORIGIN a fixed cut point that is never an endpoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

BOT, TOP, ORIGIN = 0, 1, 2

LINEAR, CIRCULAR = "linear", "circular"
GENERAL, PROPER, NESTED = "general", "proper", "nested"
MODES = (GENERAL, PROPER, NESTED, CIRCULAR)


def L(v: int) -> int:
    return 4 + 2 * v


def R(v: int) -> int:
    return 5 + 2 * v


def vertex_of(t: int) -> int:
    return (t - 4) >> 1


def is_left(t: int) -> bool:
    return t >= 4 and not t & 1


def token_name(t: int) -> str:
    if t < 4:
        return "BTO"[t]
    return ("l" if is_left(t) else "r") + str(vertex_of(t) + 1)


def parse_token(name: str) -> int:
    if name in ("B", "T", "O"):
        return "BTO".index(name)
    v = int(name[1:]) - 1
    if name[0] == "l":
        return L(v)
    if name[0] == "r":
        return R(v)
    raise ValueError(f"bad token name {name!r}")


def format_order(tokens: Sequence[int]) -> str:
    return " ".join(token_name(t) for t in tokens)


def parse_order(text: str) -> tuple[int, ...]:
    return tuple(parse_token(s) for s in text.split())


def positions(tokens: Sequence[int]) -> dict[int, int]:
    return {t: i for i, t in enumerate(tokens)}


@dataclass(frozen=True)
class EndpointOrder:
    tokens: tuple[int, ...]
    mode: str = LINEAR

    def __post_init__(self):
        toks = self.tokens
        if len(set(toks)) != len(toks):
            raise ValueError("token repeated in order")
        if self.mode == LINEAR:
            if len(toks) < 2 or toks[0] != BOT or toks[-1] != TOP or ORIGIN in toks:
                raise ValueError("linear order must run BOT ... TOP")
            pos = positions(toks)
            for t in toks[1:-1]:
                if is_left(t) and R(vertex_of(t)) in pos and pos[R(vertex_of(t))] < pos[t]:
                    raise ValueError(f"{token_name(t)} after its right endpoint")
        elif self.mode == CIRCULAR:
            if not toks or toks[0] != ORIGIN or BOT in toks or TOP in toks:
                raise ValueError("circular order must start at ORIGIN and omit BOT/TOP")
        else:
            raise ValueError(f"unknown order mode {self.mode!r}")
        object.__setattr__(self, "_pos", positions(toks))

    @classmethod
    def parse(cls, text: str, mode: str = LINEAR) -> "EndpointOrder":
        return cls(parse_order(text), mode)

    def __str__(self) -> str:
        return format_order(self.tokens)

    def pos(self, t: int) -> int:
        return self._pos[t]

    def __contains__(self, t: int) -> bool:
        return t in self._pos

    def less(self, a: int, b: int) -> bool:
        return self._pos[a] < self._pos[b]

    def succ(self, t: int) -> int:
        i = self._pos[t]
        if i + 1 < len(self.tokens):
            return self.tokens[i + 1]
        if self.mode == CIRCULAR:
            return self.tokens[0]
        raise ValueError(f"succ undefined at {token_name(t)}")

    def pred(self, t: int) -> int:
        i = self._pos[t]
        if i > 0:
            return self.tokens[i - 1]
        if self.mode == CIRCULAR:
            return self.tokens[-1]
        raise ValueError(f"pred undefined at {token_name(t)}")

    def restrict(self, drop: set[int] | frozenset[int]) -> "EndpointOrder":
        return EndpointOrder(tuple(t for t in self.tokens if t not in drop), self.mode)

    def vertices(self) -> list[int]:
        return sorted({vertex_of(t) for t in self.tokens if t >= 4})


# --- intersection predicates --------------------------------------------------

def intersects_linear(a: tuple[int, int], b: tuple[int, int], pos: dict[int, int]) -> bool:
    """``(p1,q1)`` and ``(p2,q2)`` intersect iff p1 < q2 and p2 < q1."""
    return pos[a[0]] < pos[b[1]] and pos[b[0]] < pos[a[1]]


def _covers(a: tuple[int, int], m: int, pos: dict[int, int]) -> bool:
    p, q = pos[a[0]], pos[a[1]]
    if p < q:
        return p < m < q
    return m > p or m < q


def intersects_circular(a: tuple[int, int], b: tuple[int, int], pos: dict[int, int]) -> bool:
    """Arcs run clockwise from first to second token; positions are read from ORIGIN.

    Symmetric: true iff either arc contains an endpoint of the other.
    """
    return (
        _covers(a, pos[b[0]], pos) or _covers(a, pos[b[1]], pos)
        or _covers(b, pos[a[0]], pos) or _covers(b, pos[a[1]], pos)
    )


def arcs_meet(u: int, v: int, pos: dict[int, int], circular: bool) -> bool:
    """Whether the vertex intervals/arcs of ``u`` and ``v`` intersect."""
    a, b = (L(u), R(u)), (L(v), R(v))
    if circular:
        return intersects_circular(a, b, pos)
    return intersects_linear(a, b, pos)


def crosses_permutation(u: int, v: int, pos1: dict[int, int], pos2: dict[int, int]) -> bool:
    """Vertex tokens ``u``/``v`` cross iff the two orders disagree on them."""
    return (pos1[u] < pos1[v]) != (pos2[u] < pos2[v])


# --- extensions ---------------------------------------------------------------

def _linear_gaps_ok(tokens: Sequence[int], i: int, j: int, mode: str) -> bool:
    """Structural check for l_x after index i and r_x after index j (i <= j)."""
    if mode == GENERAL:
        return True
    pos = positions(tokens)
    for t in tokens:
        if not is_left(t):
            continue
        a, b = pos[t], pos[R(vertex_of(t))]
        if mode == PROPER:
            if (a <= i and j < b) or (i < a and b <= j):
                return False
        elif mode == NESTED:
            if (a <= i < b <= j) or (i < a <= j < b):
                return False
    return True


def extension_slots(tokens: Sequence[int], mode: str) -> Iterator[tuple[int, int]]:
    """Slots ``(i, j)``: l_x goes right after index i, r_x right after index j.

    Linear modes require ``i <= j`` (same slot means l_x then r_x).  In
    circular mode every pair is allowed; ``i == j`` yields both ``(i, i)``
    (l_x first) and ``(i, ~i)`` (r_x first, encoded with the complement).
    """
    n = len(tokens)
    if mode == CIRCULAR:
        for i in range(n):
            for j in range(n):
                yield i, j
                if i == j:
                    yield i, ~j
        return
    for i in range(n - 1):
        for j in range(i, n - 1):
            if _linear_gaps_ok(tokens, i, j, mode):
                yield i, j


def insert_slots(tokens: Sequence[int], x: int, i: int, j: int) -> tuple[int, ...]:
    lx, rx = L(x), R(x)
    out = []
    for k, t in enumerate(tokens):
        out.append(t)
        if k == i and k == j:
            out.extend((lx, rx))
        elif k == i and k == ~j:
            out.extend((rx, lx))
        elif k == i:
            out.append(lx)
        elif k == j:
            out.append(rx)
    return tuple(out)


def enumerate_extensions(order: EndpointOrder, x: int, mode: str = GENERAL) -> Iterator[EndpointOrder]:
    """All orders adding l_x, r_x to ``order`` that satisfy the mode's constraint.

    The constraint is checked against active vertex pairs only; order is
    lexicographic by (slot of l_x, slot of r_x).
    """
    if L(x) in order or R(x) in order:
        raise ValueError(f"vertex {x + 1} already present")
    if (mode == CIRCULAR) != (order.mode == CIRCULAR):
        raise ValueError("extension mode does not match order mode")
    for i, j in extension_slots(order.tokens, mode):
        yield EndpointOrder(insert_slots(order.tokens, x, i, j), order.mode)


@dataclass(frozen=True)
class OrderPair:
    """Two linear orders over the same vertex tokens, each BOT ... TOP."""

    first: tuple[int, ...]
    second: tuple[int, ...]

    def __post_init__(self):
        for o in (self.first, self.second):
            if len(o) < 2 or o[0] != BOT or o[-1] != TOP or len(set(o)) != len(o):
                raise ValueError("each order must run BOT ... TOP without repeats")
        if set(self.first) != set(self.second):
            raise ValueError("orders of a pair must share their token set")

    def crosses(self, u: int, v: int) -> bool:
        return crosses_permutation(L(u), L(v), positions(self.first), positions(self.second))

    def __str__(self) -> str:
        return f"{_vertex_line(self.first)} / {_vertex_line(self.second)}"


def _vertex_line(o: Sequence[int]) -> str:
    return " ".join("BT"[t] if t < 2 else str(vertex_of(t) + 1) for t in o)


def pair_slots(pair_first: Sequence[int], pair_second: Sequence[int]) -> Iterator[tuple[int, int]]:
    return itertools.product(range(len(pair_first) - 1), range(len(pair_second) - 1))


def insert_after(tokens: Sequence[int], t: int, i: int) -> tuple[int, ...]:
    return tuple(tokens[: i + 1]) + (t,) + tuple(tokens[i + 1:])


def enumerate_pair_extensions(pair: OrderPair, x: int) -> Iterator[OrderPair]:
    if L(x) in pair.first:
        raise ValueError(f"vertex {x + 1} already present")
    for i, j in pair_slots(pair.first, pair.second):
        yield OrderPair(insert_after(pair.first, L(x), i), insert_after(pair.second, L(x), j))
