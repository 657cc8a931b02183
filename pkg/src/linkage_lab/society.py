"""Societies: graphs with a cyclic boundary permutation, rurality via disc
planarity, cross detection, the cross-or-rural dichotomy, the Euler degree
bound, and degree-2 suppression.

A society (G, Omega) is rural when G embeds in a closed disc with exactly
the support of Omega on the boundary, in that cyclic order.  Testing this
reduces to planarity of the augmented graph: G plus a cycle through the
boundary vertices in Omega-order plus a hub joined to all of them.  The
verdict carries a combinatorial embedding (rural) or a Kuratowski-style
obstruction of the augmented graph (not rural).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import networkx as nx

from .graph_core import (
    DomainError,
    Graph,
    GuardExceeded,
    VPath,
    fan_size,
    reachable_from,
)
from .linkage import LinkageProblem, disjoint_paths


@dataclass(frozen=True)
class Society:
    graph: Graph
    omega: tuple[int, ...]

    def __init__(self, graph: Graph, omega: Iterable[int]):
        om = tuple(int(v) for v in omega)
        if len(set(om)) != len(om):
            raise DomainError("omega must list distinct vertices")
        if any(v < 0 or v >= graph.n for v in om):
            raise DomainError("omega leaves the vertex range")
        # Canonical rotation: start at the smallest vertex.
        if om:
            k = om.index(min(om))
            om = om[k:] + om[:k]
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "omega", om)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.omega)

    def omega_restricted(self, keep: Iterable[int]) -> tuple[int, ...]:
        ks = set(keep)
        return tuple(v for v in self.omega if v in ks)


@dataclass(frozen=True)
class RuralVerdict:
    rural: bool
    embedding: Optional[dict[int, tuple[int, ...]]]   # augmented rotations
    obstruction: Optional[tuple[tuple[int, int], ...]]
    hub: int


def _augmented(s: Society) -> tuple[Graph, int]:
    g = s.graph
    hub = g.n
    edges = set(g.edges)
    om = s.omega
    if len(om) >= 3:
        for a, b in zip(om, om[1:] + om[:1]):
            edges.add((min(a, b), max(a, b)))
    elif len(om) == 2:
        edges.add((min(om), max(om)))
    for v in om:
        edges.add((v, hub))
    return Graph(g.n + 1, edges), hub


def is_rural(s: Society) -> RuralVerdict:
    """Decide rurality; certificate or obstruction refers to the augmented
    graph (hub vertex = n)."""
    aug, hub = _augmented(s)
    gx = nx.Graph()
    gx.add_nodes_from(range(aug.n))
    gx.add_edges_from(aug.edges)
    ok, cert = nx.check_planarity(gx, counterexample=True)
    if not ok:
        obstruction = tuple(sorted((min(u, v), max(u, v))
                                   for u, v in cert.edges()))
        return RuralVerdict(False, None, obstruction, hub)
    rotation = {
        v: tuple(cert.neighbors_cw_order(v)) for v in range(aug.n)
    }
    assert validate_embedding(aug, rotation)
    assert hub_order_matches(rotation, hub, s.omega)
    return RuralVerdict(True, rotation, None, hub)


def validate_embedding(g: Graph, rotation: dict[int, tuple[int, ...]]) -> bool:
    """Euler-formula check on every component: the rotation system has
    planar genus."""
    for v in g.vertices():
        if sorted(rotation.get(v, ())) != sorted(g.neighbors(v)):
            return False
    left = set(g.vertices())
    while left:
        comp = reachable_from(g.adj, [min(left)])
        left -= comp
        comp_edges = [e for e in g.edges if e[0] in comp]
        if not comp_edges:
            continue
        darts = {(u, v) for u, v in comp_edges} | \
            {(v, u) for u, v in comp_edges}
        faces = 0
        seen: set[tuple[int, int]] = set()
        for dart in sorted(darts):
            if dart in seen:
                continue
            faces += 1
            u, v = dart
            while (u, v) not in seen:
                seen.add((u, v))
                rot = rotation[v]
                i = rot.index(u)
                w = rot[(i - 1) % len(rot)]
                u, v = v, w
        if len(comp) - len(comp_edges) + faces != 2:
            return False
    return True


def hub_order_matches(rotation, hub: int, omega: tuple[int, ...]) -> bool:
    """The boundary vertices appear around the hub in omega order (either
    orientation)."""
    rot = list(rotation[hub])
    if len(rot) != len(omega):
        return False
    if len(omega) <= 2:
        return set(rot) == set(omega)
    k = rot.index(omega[0])
    rot = rot[k:] + rot[:k]
    return rot == list(omega) or rot == [omega[0]] + list(omega[1:])[::-1]


def find_cross(s: Society,
               guard: int = 16) -> Optional[tuple[VPath, VPath]]:
    """Two disjoint boundary paths with interleaved ends, or None."""
    om = s.omega
    if len(om) < 4:
        return None
    pos = {v: i for i, v in enumerate(om)}
    for quad in itertools.combinations(sorted(s.support), 4):
        a, b, c, d = sorted(quad, key=lambda v: pos[v])
        sub = Graph(s.graph.n,
                    [e for e in s.graph.edges
                     if not (set(e) & (s.support - set(quad)))])
        found = disjoint_paths(LinkageProblem(sub, [(a, c), (b, d)]), guard)
        if found is not None:
            return found[0], found[1]
    return None


def society_connectivity(s: Society, k: int) -> bool:
    """No separation (A, B) of order < k with the boundary inside B != V."""
    interior = set(s.graph.vertices()) - s.support
    for v in sorted(interior):
        if fan_size(s.graph, v, set(s.support)) < k:
            return False
    return True


def cross_or_rural_check(s: Society):
    """For 4-connected societies: returns ('rural', verdict) or
    ('cross', (path, path)); both failing would refute the dichotomy."""
    if not society_connectivity(s, 4):
        raise DomainError("society is not 4-connected")
    verdict = is_rural(s)
    if verdict.rural:
        return "rural", verdict
    cross = find_cross(s)
    assert cross is not None, \
        "4-connected society neither rural nor crossed; dichotomy violated"
    return "cross", cross


@dataclass(frozen=True)
class EulerBoundReport:
    applicable: bool
    holds: Optional[bool]
    boundary_degree_sum: Optional[int]
    bound: Optional[int]
    note: str = ""


def euler_bound_check(s: Society) -> EulerBoundReport:
    """For rural societies whose interior has average degree >= 6, the
    boundary degrees sum to at most 4|support| - 6."""
    interior = [v for v in s.graph.vertices() if v not in s.support]
    if interior:
        avg = sum(s.graph.degree(v) for v in interior) / len(interior)
        if avg < 6:
            return EulerBoundReport(False, None, None, None,
                                    f"interior average degree {avg:.2f} < 6")
    if not is_rural(s).rural:
        return EulerBoundReport(False, None, None, None, "society not rural")
    total = sum(s.graph.degree(v) for v in s.omega)
    bound = 4 * len(s.omega) - 6
    return EulerBoundReport(True, total <= bound, total, bound)


def suppress_degree2(s: Society, p: VPath) -> Society:
    """Suppress the inner vertices of p (all of degree 2); suppressed
    vertices become isolated and leave the boundary."""
    g = s.graph
    if not p.valid_in(g):
        raise DomainError("path does not lie in the graph")
    inner = list(p.inner_vertices())
    for v in inner:
        if g.degree(v) != 2:
            raise DomainError(f"inner vertex {v} has degree {g.degree(v)}")
    if inner and g.has_edge(p.first, p.last):
        raise DomainError("suppression would create a parallel edge")
    drop = set(inner)
    edges = {e for e in g.edges if not (set(e) & drop)}
    if p.first != p.last:
        edges.add((min(p.first, p.last), max(p.first, p.last)))
    new_g = Graph(g.n, edges)
    return Society(new_g, s.omega_restricted(set(g.vertices()) - drop))


# ---------------------------------------------------------------------------
# Independent planarity oracle for tests
# ---------------------------------------------------------------------------

def has_kuratowski_subdivision(g: Graph, guard: int = 11) -> bool:
    """Exhaustive search for a K5 or K3,3 subdivision (test oracle)."""
    if g.n > guard:
        raise GuardExceeded("graph too large for the subdivision search")
    if len(g.edges) <= 3 * g.n - 7 and _try_k33(g) is None and \
            _try_k5(g) is None:
        return False
    return _try_k5(g) is not None or _try_k33(g) is not None


def _internally_disjoint_paths(g: Graph, branch: list[int],
                               pairs: list[tuple[int, int]]):
    """Paths for all pairs, sharing only branch vertices (which no path may
    cross internally)."""
    branch_set = set(branch)

    def solve(idx: int, used: set[int]):
        if idx == len(pairs):
            return True
        s, t = pairs[idx]
        stack = [(s, (s,))]
        while stack:
            v, walk = stack.pop()
            if v == t:
                if solve(idx + 1, used | (set(walk) - branch_set)):
                    return True
                continue
            for u in sorted(g.neighbors(v), reverse=True):
                if u in walk or u in used:
                    continue
                if u in branch_set:
                    if u == t:
                        stack.append((u, walk + (u,)))
                    continue
                stack.append((u, walk + (u,)))
        return False

    return solve(0, set())


def _try_k5(g: Graph):
    degs = [v for v in g.vertices() if g.degree(v) >= 4]
    for branch in itertools.combinations(degs, 5):
        pairs = list(itertools.combinations(branch, 2))
        if _internally_disjoint_paths(g, list(branch), pairs):
            return branch
    return None


def _try_k33(g: Graph):
    degs = [v for v in g.vertices() if g.degree(v) >= 3]
    for six in itertools.combinations(degs, 6):
        for left in itertools.combinations(six, 3):
            if min(left) != min(six):
                continue
            right = tuple(v for v in six if v not in left)
            pairs = [(a, b) for a in left for b in right]
            if _internally_disjoint_paths(g, list(six), pairs):
                return left, right
    return None
