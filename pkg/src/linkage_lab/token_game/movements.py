"""Movements and pairings: the bookkeeping layer of the token game.

Tokens sit on vertices, at most one per vertex; a move slides a token along
a path avoiding the other tokens, or destroys / creates a token pair on the
path's end vertices.  A movement is the configuration sequence X_0..X_n plus
the move paths M_1..M_n; its induced pairing matches up the endpoints of the
token timelines.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence

from ..graph_core import DomainError, Graph, VPath

ZERO = 0
INF = 1  # rendered as "inf" in JSON

Endpoint = tuple[int, int]  # (vertex, ZERO | INF)


@dataclass(frozen=True)
class Movement:
    """Configurations X_0..X_n and non-trivial move paths M_1..M_n.

    The zero-length movement (one configuration, no moves) is admitted as
    the concatenation identity.
    """

    configs: tuple[frozenset[int], ...]
    moves: tuple[VPath, ...]

    def __init__(self, configs: Iterable[Iterable[int]], moves: Iterable[VPath]):
        cfg = tuple(frozenset(c) for c in configs)
        mv = tuple(moves)
        if len(cfg) != len(mv) + 1:
            raise DomainError("need exactly one more configuration than moves")
        object.__setattr__(self, "configs", cfg)
        object.__setattr__(self, "moves", mv)

    @property
    def length(self) -> int:
        return len(self.moves)

    @property
    def first_config(self) -> frozenset[int]:
        return self.configs[0]

    @property
    def last_config(self) -> frozenset[int]:
        return self.configs[-1]

    def to_json_obj(self) -> dict:
        return {
            "configs": [sorted(c) for c in self.configs],
            "moves": [list(p.vertices) for p in self.moves],
        }

    @staticmethod
    def from_json_obj(data: dict) -> "Movement":
        return Movement([set(c) for c in data["configs"]],
                        [VPath(p) for p in data["moves"]])


def empty_movement(config: Iterable[int]) -> Movement:
    return Movement([frozenset(config)], [])


def typed_movement(start: Iterable[int],
                   moves: Sequence[tuple[VPath, str]]) -> Movement:
    """Build a movement from typed moves: slide / destroy / create."""
    cfgs = [frozenset(start)]
    for path, kind in moves:
        cur = cfgs[-1]
        u, w = path.first, path.last
        if kind == "slide":
            assert u in cur and w not in cur, (path.vertices, kind)
            cur = (cur - {u}) | {w}
        elif kind == "destroy":
            assert u in cur and w in cur
            cur = cur - {u, w}
        elif kind == "create":
            assert u not in cur and w not in cur
            cur = cur | {u, w}
        else:
            raise ValueError(kind)
        cfgs.append(cur)
    return Movement(cfgs, [p for p, _ in moves])


def verify_movement(h: Graph, m: Movement) -> tuple[bool, Optional[int]]:
    """Check both movement axioms for every step; returns (ok, bad index)."""
    for c in m.configs:
        if any(v >= h.n or v < 0 for v in c):
            return False, 0
    for i, mv in enumerate(m.moves, start=1):
        prev, cur = m.configs[i - 1], m.configs[i]
        if mv.is_trivial or not mv.valid_in(h):
            return False, i
        if prev ^ cur != mv.ends:
            return False, i
        if mv.vertex_set & (prev & cur):
            return False, i
    return True, None


def concat_movements(m1: Movement, m2: Movement) -> Movement:
    if m1.last_config != m2.first_config:
        raise DomainError("configurations do not line up")
    return Movement(m1.configs + m2.configs[1:], m1.moves + m2.moves)


def concat_all(ms: Sequence[Movement]) -> Movement:
    out = ms[0]
    for m in ms[1:]:
        out = concat_movements(out, m)
    return out


def lift_disjoint(m: Movement, z: Iterable[int]) -> Movement:
    zs = frozenset(z)
    for mv in m.moves:
        if mv.vertex_set & zs:
            raise DomainError(f"move {mv.vertices} meets the lifted set")
    return Movement([c | zs for c in m.configs], m.moves)


def reverse_movement(m: Movement) -> Movement:
    return Movement(m.configs[::-1], tuple(p.reverse() for p in m.moves[::-1]))


def flip_vertex(m: Movement, v: int) -> Movement:
    """Toggle v in every configuration (valid when v is strongly singular)."""
    if not is_strongly_singular(m, v):
        raise DomainError(f"vertex {v} is not strongly singular")
    return Movement([c ^ {v} for c in m.configs], m.moves)


class SingularClass(Enum):
    NONSINGULAR = "nonsingular"
    SINGULAR = "singular"
    STRONGLY_SINGULAR = "strongly_singular"


def _classify(m: Movement, v: int) -> SingularClass:
    for mv in m.moves:
        if v in mv.inner_vertices():
            return SingularClass.NONSINGULAR
    occ = [i for i, c in enumerate(m.configs) if v in c]
    if occ and occ != list(range(occ[0], occ[-1] + 1)):
        return SingularClass.NONSINGULAR
    if not occ or 0 in occ or m.length in occ:
        return SingularClass.STRONGLY_SINGULAR
    return SingularClass.SINGULAR


def singular_classes(m: Movement, vertices: Iterable[int]) -> dict[int, SingularClass]:
    return {v: _classify(m, v) for v in vertices}


def is_singular(m: Movement, v: int) -> bool:
    return _classify(m, v) is not SingularClass.NONSINGULAR


def is_strongly_singular(m: Movement, v: int) -> bool:
    return _classify(m, v) is SingularClass.STRONGLY_SINGULAR


def set_singular(m: Movement, vs: Iterable[int]) -> bool:
    return all(is_singular(m, v) for v in vs)


def set_strongly_singular(m: Movement, vs: Iterable[int]) -> bool:
    return all(is_strongly_singular(m, v) for v in vs)


# ---------------------------------------------------------------------------
# Pairings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Pairing:
    """A 1-regular graph on (X x {0}) u (Y x {inf})."""

    x: frozenset[int]
    y: frozenset[int]
    edges: frozenset[frozenset[Endpoint]]

    def __init__(self, x: Iterable[int], y: Iterable[int],
                 edges: Iterable[Iterable[Endpoint]]):
        xs, ys = frozenset(x), frozenset(y)
        es = frozenset(frozenset(e) for e in edges)
        nodes = {(v, ZERO) for v in xs} | {(v, INF) for v in ys}
        seen: set[Endpoint] = set()
        for e in es:
            if len(e) != 2 or not e <= nodes:
                raise DomainError(f"bad pairing edge {sorted(e)}")
            if set(e) & seen:
                raise DomainError("pairing is not 1-regular")
            seen |= set(e)
        if seen != nodes:
            raise DomainError("pairing is not 1-regular")
        object.__setattr__(self, "x", xs)
        object.__setattr__(self, "y", ys)
        object.__setattr__(self, "edges", es)

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def is_balanced(self) -> bool:
        return all(
            sorted(side for _, side in e) == [ZERO, INF] for e in self.edges
        )

    def partner(self, ep: Endpoint) -> Endpoint:
        for e in self.edges:
            if ep in e:
                a, b = tuple(e)
                return b if a == ep else a
        raise KeyError(ep)

    def bijection(self) -> dict[int, int]:
        if not self.is_balanced:
            raise DomainError("pairing is not balanced")
        out = {}
        for e in self.edges:
            a, b = tuple(e)
            if a[1] == INF:
                a, b = b, a
            out[a[0]] = b[0]
        return out

    def drop_edge(self, e) -> "Pairing":
        e = frozenset(e)
        xs = set(self.x)
        ys = set(self.y)
        for v, side in e:
            if side == ZERO:
                xs.discard(v)
            else:
                ys.discard(v)
        return Pairing(xs, ys, self.edges - {e})

    def flip(self, v: int) -> "Pairing":
        """Replace (v,0) by (v,inf) or vice versa (exactly one may exist)."""
        has0, has1 = v in self.x, v in self.y
        if has0 == has1:
            raise DomainError(f"vertex {v} must be on exactly one side")
        old = (v, ZERO) if has0 else (v, INF)
        new = (v, INF) if has0 else (v, ZERO)
        edges = [[new if ep == old else ep for ep in e] for e in self.edges]
        return Pairing(self.x ^ {v}, self.y ^ {v}, edges)

    def reversed(self) -> "Pairing":
        """Swap the 0 and inf sides (the pairing of the reversed movement)."""
        return Pairing(self.y, self.x,
                       [[(v, ZERO if s == INF else INF) for v, s in e]
                        for e in self.edges])

    def relabel_zero(self, psi: dict[int, int]) -> "Pairing":
        """Rename every 0-side vertex through the bijection psi."""
        def mp(ep: Endpoint) -> Endpoint:
            v, side = ep
            return (psi[v], ZERO) if side == ZERO else ep
        return Pairing([psi[v] for v in self.x], self.y,
                       [[mp(a), mp(b)] for e in self.edges
                        for a, b in [tuple(e)]])

    def to_json_obj(self) -> dict:
        def enc(ep):
            return [ep[0], "inf" if ep[1] == INF else 0]

        def key(pair):
            return (pair[0], str(pair[1]))

        return {
            "x": sorted(self.x),
            "y": sorted(self.y),
            "edges": sorted(
                (sorted([enc(a), enc(b)], key=key) for e in self.edges
                 for a, b in [tuple(e)]),
                key=lambda e: [key(e[0]), key(e[1])],
            ),
        }

    @staticmethod
    def from_json_obj(data: dict) -> "Pairing":
        def dec(ep):
            return (int(ep[0]), INF if ep[1] == "inf" else ZERO)
        return Pairing(
            [int(v) for v in data["x"]],
            [int(v) for v in data["y"]],
            [[dec(a), dec(b)] for a, b in data["edges"]],
        )


def pairings_equal(l1: Pairing, l2: Pairing) -> bool:
    return l1.x == l2.x and l1.y == l2.y and l1.edges == l2.edges


def pairing_from_bijection(phi: dict[int, int]) -> Pairing:
    return Pairing(phi.keys(), phi.values(),
                   [[(u, ZERO), (v, INF)] for u, v in phi.items()])


def identity_pairing(xs: Iterable[int]) -> Pairing:
    return pairing_from_bijection({v: v for v in xs})


def induced_pairing(m: Movement) -> Pairing:
    """Trace token timelines through the step graphs R_1..R_n."""
    n = m.length
    if n == 0:
        return identity_pairing(m.first_config)
    # Edge (multi-)list of the timeline graph; nodes are (vertex, level).
    edges: list[tuple[tuple[int, int], tuple[int, int]]] = []
    for i in range(1, n + 1):
        prev, cur = m.configs[i - 1], m.configs[i]
        mv = m.moves[i - 1]
        u, w = mv.first, mv.last
        for v in (prev & cur):
            edges.append(((v, i - 1), (v, i)))
        # The move's ends live at the level where the symmetric difference
        # puts them: a slide joins (u, i-1) to (w, i); a destruction joins
        # (u, i-1) to (w, i-1); a creation (u, i) to (w, i).
        lu = i - 1 if u in prev else i
        lw = i - 1 if w in prev else i
        edges.append(((u, lu), (w, lw)))
    adj: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    boundary = [(v, 0) for v in sorted(m.first_config)] + \
        [(v, n) for v in sorted(m.last_config)]
    for node in boundary:
        assert len(adj[node]) == 1, f"timeline degree error at {node}"
    result = []
    seen: set[tuple[int, int]] = set()
    for start in boundary:
        if start in seen:
            continue
        seen.add(start)
        prev_node, node = None, start
        while True:
            nbrs = list(adj[node])
            if prev_node is not None:
                nbrs.remove(prev_node)
            prev_node, node = node, nbrs[0]
            seen.add(node)
            if len(adj[node]) == 1:
                break
        end = node
        a = (start[0], ZERO if start[1] == 0 else INF)
        b = (end[0], ZERO if end[1] == 0 else INF)
        result.append([a, b])
    return Pairing(m.first_config, m.last_config, result)


def concat_pairings(l1: Pairing, l2: Pairing) -> Pairing:
    """Endpoint pairing of the chain X --l1-- Y --id-- Y --l2-- Z."""
    if l1.y != l2.x:
        raise DomainError("pairings do not share the middle set")
    adj: dict[tuple, list[tuple]] = {}

    def link(a, b):
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    for e in l1.edges:
        a, b = tuple(e)
        link((0 if a[1] == ZERO else 1, a[0]), (0 if b[1] == ZERO else 1, b[0]))
    for v in l1.y:
        link((1, v), (2, v))
    for e in l2.edges:
        a, b = tuple(e)
        link((2 if a[1] == ZERO else 3, a[0]), (2 if b[1] == ZERO else 3, b[0]))
    boundary = [(0, v) for v in sorted(l1.x)] + [(3, v) for v in sorted(l2.y)]
    edges = []
    seen: set[tuple] = set()
    for start in boundary:
        if start in seen:
            continue
        seen.add(start)
        prev_node, node = None, start
        while True:
            nbrs = list(adj[node])
            if prev_node is not None:
                nbrs.remove(prev_node)
            prev_node, node = node, nbrs[0]
            seen.add(node)
            if len(adj[node]) == 1:
                break
        a = (start[1], ZERO if start[0] == 0 else INF)
        b = (node[1], ZERO if node[0] == 0 else INF)
        edges.append([a, b])
    return Pairing(l1.x, l2.y, edges)
