"""Separations, their nesting order, corner separations, and the nested
minimal-separation cover construction.

A separation of G is an ordered pair (A, B) of vertex sets with
G[A] u G[B] = G; its separator is A n B.  (A, B) <= (A', B') means A <= A'
and B >= B'.  The cover algorithm keeps a nested family of minimum-order
X-Y separations whose separators together cover a prescribed vertex set Z,
folding each new separation against its closest neighbours on either side.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .graph_core import (
    DomainError,
    Graph,
    disjoint_set_paths,
    min_xy_separator,
    reachable_from,
)


@dataclass(frozen=True)
class Separation:
    graph: Graph
    a: frozenset[int]
    b: frozenset[int]

    def __init__(self, graph: Graph, a, b):
        a, b = frozenset(a), frozenset(b)
        if a | b != set(graph.vertices()):
            raise DomainError("A and B must cover all vertices")
        for u, v in graph.edges:
            if not ((u in a and v in a) or (u in b and v in b)):
                raise DomainError(f"edge ({u},{v}) crosses the separation")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def separator(self) -> frozenset[int]:
        return self.a & self.b

    @property
    def order(self) -> int:
        return len(self.a & self.b)

    def is_xy(self, x: set[int], y: set[int]) -> bool:
        return set(x) <= self.a and set(y) <= self.b

    def to_dict(self) -> dict:
        return {"a": sorted(self.a), "b": sorted(self.b)}


class Nesting(Enum):
    LEFT = "left"            # s1 <= s2
    RIGHT = "right"          # s1 >= s2
    BOTH = "both"            # equal
    INCOMPARABLE = "incomparable"


def is_nested(s1: Separation, s2: Separation) -> Nesting:
    if s1.graph is not s2.graph and s1.graph != s2.graph:
        raise DomainError("separations live on different graphs")
    left = s1.a <= s2.a and s1.b >= s2.b
    right = s1.a >= s2.a and s1.b <= s2.b
    if left and right:
        return Nesting.BOTH
    if left:
        return Nesting.LEFT
    if right:
        return Nesting.RIGHT
    return Nesting.INCOMPARABLE


def corners(s1: Separation, s2: Separation) -> tuple[Separation, Separation]:
    """The two corner separations (A n A', B u B') and (A u A', B n B').

    Their orders sum to order(s1) + order(s2) and each is nested with both
    inputs.
    """
    if s1.graph != s2.graph:
        raise DomainError("separations live on different graphs")
    lo = Separation(s1.graph, s1.a & s2.a, s1.b | s2.b)
    hi = Separation(s1.graph, s1.a | s2.a, s1.b & s2.b)
    assert lo.order + hi.order == s1.order + s2.order
    for c in (lo, hi):
        assert is_nested(c, s1) != Nesting.INCOMPARABLE
        assert is_nested(c, s2) != Nesting.INCOMPARABLE
    return lo, hi


def separation_from_cut(g: Graph, x: set[int], y: set[int],
                        cut: set[int]) -> Separation:
    """Build the X-Y separation whose separator is the given X-Y cut."""
    x_side = reachable_from(g.adj, set(x) - cut, cut)
    a = x_side | cut
    b = set(g.vertices()) - x_side
    sep = Separation(g, a, b)
    assert sep.separator == frozenset(cut)
    assert sep.is_xy(x, y)
    return sep


def nested_cover(g: Graph, x: set[int], y: set[int],
                 z: set[int]) -> tuple[Optional[list[Separation]], Optional[int]]:
    """A nested family of minimum-order X-Y separations covering Z.

    For each z in Z there must be a minimum-order X-Y separation with z in
    its separator; if some z fails this, returns (None, z).  Otherwise
    returns (family sorted by <=, None).
    """
    if g.n == 0:
        raise DomainError("empty graph")
    x, y, z = set(x), set(y), set(z)
    m, _ = disjoint_set_paths(g, x, y)
    family: list[Separation] = []   # kept sorted by <=

    for zv in sorted(z):
        if any(zv in s.separator for s in family):
            continue
        # A minimum X-Y separator through zv exists iff deleting zv drops
        # the connectivity.
        flow_without, _ = disjoint_set_paths(g, x, y, removed={zv}, cap=m)
        if flow_without >= m:
            return None, zv
        cut = min_xy_separator(g, x, y, removed={zv}) | {zv}
        assert len(cut) == m
        sep = separation_from_cut(g, x, y, cut)

        lefts = [s for s in family if zv in s.b and zv not in s.a]
        rights = [s for s in family if zv in s.a and zv not in s.b]
        assert len(lefts) + len(rights) == len(family)
        cur = sep
        if lefts:
            s_l = lefts[-1]      # rightmost element left of zv
            cur = Separation(g, cur.a | s_l.a, cur.b & s_l.b)
        if rights:
            s_r = rights[0]      # leftmost element right of zv
            cur = Separation(g, cur.a & s_r.a, cur.b | s_r.b)
        assert cur.order == m, "corner fold changed the order"
        assert zv in cur.separator
        assert cur.is_xy(x, y)
        for other in family:
            assert is_nested(cur, other) != Nesting.INCOMPARABLE, \
                "fold produced a crossing separation"
        family.append(cur)
        family.sort(key=lambda s: (len(s.a), -len(s.b), sorted(s.a)))

    for s1, s2 in zip(family, family[1:]):
        assert is_nested(s1, s2) in (Nesting.LEFT, Nesting.BOTH)
    return family, None
