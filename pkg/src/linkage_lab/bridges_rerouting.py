"""Proper reroutings of unambiguous subgraphs, Tutte-style stabilisation,
and bridge stabilisation of linkages.

A rerouting replaces every segment by a path with the same end vertices; it
is proper when it uses no edge of a stable bridge.  Stabilisation searches
for a proper rerouting in which every hosted bridge B' is non-trivial and
pinned between two host vertices v, w: the component of G - {v, w}
containing B' - {v, w} must avoid the rest of the rerouted graph.  As a
consequence all rerouted segments are induced paths.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph_core import (
    DomainError,
    Graph,
    GuardExceeded,
    SubgraphView,
    VPath,
    linkage_subgraph,
    paths_disjoint,
    reachable_from,
    s_bridges,
    segments_of,
)

_COMBO_GUARD = 500_000


def _end_pair(p: VPath) -> tuple[int, int]:
    return (p.first, p.last) if p.first <= p.last else (p.last, p.first)


def is_unambiguous(s: SubgraphView) -> bool:
    """True iff s is the union of its segments with pairwise distinct
    segment end pairs."""
    segs, _, covered_all = segments_of(s)
    if not covered_all:
        return False
    pairs = [_end_pair(p) for p in segs]
    return len(pairs) == len(set(pairs))


@dataclass(frozen=True)
class Rerouting:
    original: SubgraphView
    rerouted: SubgraphView
    segment_map: tuple[tuple[VPath, VPath], ...]

    @property
    def is_identity(self) -> bool:
        return self.original == self.rerouted


def identity_rerouting(s: SubgraphView) -> Rerouting:
    segs, _, _ = segments_of(s)
    return Rerouting(s, s, tuple((p, p) for p in segs))


def make_rerouting(s: SubgraphView, routes: dict[tuple[int, int], VPath]) -> Rerouting:
    """Assemble a rerouting from replacement routes keyed by end pair."""
    segs, _, _ = segments_of(s)
    mapping = []
    for p in segs:
        q = routes.get(_end_pair(p), p)
        mapping.append((p, q))
    new = linkage_subgraph([q for _, q in mapping])
    return Rerouting(s, new, tuple(mapping))


def verify_proper_rerouting(g: Graph, r: Rerouting) -> bool:
    """Check end preservation, the stable-edge exclusion, and the chaperone
    properties of proper reroutings (segment containment, stable-bridge
    survival)."""
    if not is_unambiguous(r.original):
        raise DomainError("original subgraph is ambiguous")
    segs, _, _ = segments_of(r.original)
    originals = [p for p, _ in r.segment_map]
    if sorted(_end_pair(p) for p in originals) != sorted(_end_pair(p) for p in segs):
        raise DomainError("segment_map is not a bijection on segments")
    for p, q in r.segment_map:
        if _end_pair(p) != _end_pair(q):
            return False
    union = linkage_subgraph([q for _, q in r.segment_map])
    if union != r.rerouted:
        return False

    report = s_bridges(g, r.original)
    stable_edges = set()
    for b in report.bridges:
        if b.is_stable:
            stable_edges |= b.edges
    if r.rerouted.edges & stable_edges:
        return False

    # Each rerouted segment stays inside its original plus the bridges the
    # original hosts.
    for (p, q) in r.segment_map:
        allowed = set(p.vertices)
        for b in report.bridges:
            if b.host_segment is not None and \
                    _end_pair(report.segments[b.host_segment]) == _end_pair(p):
                allowed |= b.vertices
        if not q.vertex_set <= allowed:
            return False

    # Every stable original-bridge sits inside a stable rerouted-bridge.
    new_report = s_bridges(g, r.rerouted)
    for b in report.bridges:
        if not b.is_stable:
            continue
        hosts = [b2 for b2 in new_report.bridges
                 if b.edges <= b2.edges or (b.inner and b.inner <= b2.inner)]
        if not any(b2.is_stable for b2 in hosts):
            return False
    return True


def tutte_condition_holds(g: Graph, s: SubgraphView) -> bool:
    """The stabilisation target: every hosted bridge is non-trivial and can
    be cut off between two vertices of its host."""
    report = s_bridges(g, s)
    for b in report.bridges:
        if b.host_segment is None:
            continue
        if b.is_trivial:
            return False
        host = report.segments[b.host_segment]
        inner = min(b.inner)
        ok = False
        for v, w in itertools.combinations_with_replacement(host.vertices, 2):
            comp = reachable_from(g.adj, [inner], {v, w})
            middle = host.between(v, w).vertex_set
            rest = s.vertices - middle
            if not (comp & rest):
                ok = True
                break
        if not ok:
            return False
    return True


def _segment_routes(g: Graph, report, seg_index: int) -> list[VPath]:
    """All simple end-to-end paths inside a segment's territory (the segment
    plus the bridges it hosts)."""
    seg = report.segments[seg_index]
    if seg.is_trivial:
        return [seg]
    territory_v = set(seg.vertices)
    territory_e = set(seg.edge_set())
    for b in report.bridges:
        if b.host_segment == seg_index:
            territory_v |= b.vertices
            territory_e |= b.edges
    adj: dict[int, set[int]] = {v: set() for v in territory_v}
    for u, v in territory_e:
        adj[u].add(v)
        adj[v].add(u)
    start, goal = seg.first, seg.last
    routes: list[VPath] = []
    stack = [(start, [start])]
    while stack:
        v, walk = stack.pop()
        if v == goal:
            routes.append(VPath(walk))
            continue
        for w in sorted(adj[v], reverse=True):
            if w not in walk:
                stack.append((w, walk + [w]))
    routes.sort(key=lambda p: (len(p), p.vertices))
    return routes


def tutte_stabilize(g: Graph, s: SubgraphView) -> Rerouting:
    """A proper rerouting of s satisfying the hosted-bridge cut-off
    condition (and hence with all segments induced)."""
    if not is_unambiguous(s):
        raise DomainError("subgraph is ambiguous")
    if tutte_condition_holds(g, s):
        return identity_rerouting(s)
    report = s_bridges(g, s)
    per_segment = [
        _segment_routes(g, report, i) for i in range(len(report.segments))
    ]
    total = 1
    for rs in per_segment:
        total *= len(rs)
        if total > _COMBO_GUARD:
            raise GuardExceeded(f"too many candidate reroutings (> {_COMBO_GUARD})")
    combos = sorted(
        itertools.product(*per_segment),
        key=lambda c: (sum(len(p) for p in c), tuple(p.vertices for p in c)),
    )
    for combo in combos:
        new = linkage_subgraph(combo)
        if not tutte_condition_holds(g, new):
            continue
        r = Rerouting(s, new, tuple(zip(report.segments, combo)))
        if verify_proper_rerouting(g, r):
            # All segments of the result must be induced paths.
            for q in combo:
                assert _is_induced(g, q), "stabilised segment not induced"
            return r
    raise AssertionError("no proper rerouting satisfies the cut-off condition")


def _is_induced(g: Graph, p: VPath) -> bool:
    for u, v in itertools.combinations(p.vertices, 2):
        if g.has_edge(u, v) and abs(p.index_of(u) - p.index_of(v)) != 1:
            return False
    return True


def bridge_stabilisation(h: Graph, q: list[VPath]) -> list[VPath]:
    """Stabilise the non-trivial part of a linkage; trivial paths persist.

    Output paths keep the enumeration order and starting vertices of q.
    """
    if not paths_disjoint(q):
        raise DomainError("paths are not disjoint")
    trivial = [p for p in q if p.is_trivial]
    nontrivial = [p for p in q if not p.is_trivial]
    if not nontrivial:
        return list(q)
    keep = set(h.vertices()) - {p.first for p in trivial}
    sub_edges = [(u, v) for u, v in h.edges if u in keep and v in keep]
    order = sorted(keep)
    relabel = {v: i for i, v in enumerate(order)}
    back = {i: v for v, i in relabel.items()}
    h2 = Graph(len(order), [(relabel[u], relabel[v]) for u, v in sub_edges])
    s2 = linkage_subgraph([VPath([relabel[v] for v in p.vertices])
                           for p in nontrivial])
    rr = tutte_stabilize(h2, s2)
    by_ends: dict[tuple[int, int], VPath] = {}
    for _, new_p in rr.segment_map:
        verts = [back[v] for v in new_p.vertices]
        by_ends[_end_pair(VPath(verts))] = VPath(verts)
    result = []
    for p in q:
        if p.is_trivial:
            result.append(p)
            continue
        np = by_ends[_end_pair(p)]
        if np.first != p.first:
            np = np.reverse()
        assert np.first == p.first and np.last == p.last
        result.append(np)
    assert paths_disjoint(result)
    return result
