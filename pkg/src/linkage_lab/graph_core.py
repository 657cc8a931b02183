"""Core graph substrate: simple undirected graphs on dense integer vertices,
oriented paths, connectivity/flow primitives, blocks, fans, and bridge
analysis relative to a subgraph.

Everything downstream (separations, decompositions, the token game,
societies) is built on the types in this module.  All values are immutable
after construction and all operations are pure functions.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence


class DomainError(ValueError):
    """A precondition on an operation's inputs was violated."""


class GuardExceeded(RuntimeError):
    """An exhaustive search hit its size guard; the result is inconclusive."""


def _canon_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        canon = set()
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u},{v}) out of range for n={n}")
            canon.add(_canon_edge(u, v))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", frozenset(canon))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbr: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbr[u].add(v)
            nbr[v].add(u)
        return tuple(frozenset(s) for s in nbr)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _canon_edge(u, v) in self.edges

    def vertices(self) -> range:
        return range(self.n)

    def induced(self, vs: Iterable[int]) -> "SubgraphView":
        """Induced subgraph view on a vertex subset (keeps ambient labels)."""
        vset = frozenset(vs)
        es = frozenset(e for e in self.edges if e[0] in vset and e[1] in vset)
        return SubgraphView(vset, es)

    def to_json(self) -> str:
        return json.dumps(graph_to_dict(self))

    @staticmethod
    def from_json(text: str) -> "Graph":
        return graph_from_dict(json.loads(text))


def graph_from_dict(data: dict) -> Graph:
    return Graph(int(data["n"]), [(int(u), int(v)) for u, v in data["edges"]])


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in sorted(g.edges)]}


@dataclass(frozen=True)
class SubgraphView:
    """A subgraph of some ambient Graph, as explicit vertex and edge sets.

    Vertices keep their ambient labels; the view need not be induced.
    """

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        vs = frozenset(vertices)
        es = frozenset(_canon_edge(u, v) for u, v in edges)
        for u, v in es:
            if u not in vs or v not in vs:
                raise DomainError(f"edge ({u},{v}) leaves the vertex set")
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nbr: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbr[u].add(v)
            nbr[v].add(u)
        return {v: frozenset(s) for v, s in nbr.items()}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def is_subgraph_of(self, g: Graph) -> bool:
        return all(0 <= v < g.n for v in self.vertices) and all(
            e in g.edges for e in self.edges
        )

    def union(self, other: "SubgraphView") -> "SubgraphView":
        return SubgraphView(self.vertices | other.vertices, self.edges | other.edges)

    def minus_vertices(self, vs: Iterable[int]) -> "SubgraphView":
        drop = set(vs)
        keep = self.vertices - drop
        return SubgraphView(
            keep, (e for e in self.edges if e[0] in keep and e[1] in keep)
        )

    def to_graph_relabel(self) -> tuple[Graph, dict[int, int]]:
        """Compact to a Graph on 0..k-1; returns (graph, old->new map)."""
        order = sorted(self.vertices)
        to_new = {v: i for i, v in enumerate(order)}
        g = Graph(len(order), [(to_new[u], to_new[v]) for u, v in self.edges])
        return g, to_new


def subgraph_from_edges(edges: Iterable[tuple[int, int]],
                        extra_vertices: Iterable[int] = ()) -> SubgraphView:
    es = set(_canon_edge(u, v) for u, v in edges)
    vs = set(extra_vertices)
    for u, v in es:
        vs.add(u)
        vs.add(v)
    return SubgraphView(vs, es)


@dataclass(frozen=True)
class VPath:
    """A path with a fixed orientation, stored as its vertex sequence.

    Single-vertex paths are valid and called trivial.
    """

    vertices: tuple[int, ...]

    def __init__(self, vertices: Sequence[int]):
        vs = tuple(vertices)
        if not vs:
            raise DomainError("a path needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise DomainError(f"repeated vertex in path {vs}")
        object.__setattr__(self, "vertices", vs)

    def __len__(self) -> int:
        # Number of edges, not vertices.
        return len(self.vertices) - 1

    def __iter__(self):
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.vertex_set

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def first(self) -> int:
        return self.vertices[0]

    @property
    def last(self) -> int:
        return self.vertices[-1]

    @property
    def is_trivial(self) -> bool:
        return len(self.vertices) == 1

    @property
    def ends(self) -> frozenset[int]:
        return frozenset({self.first, self.last})

    def inner_vertices(self) -> tuple[int, ...]:
        return self.vertices[1:-1]

    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            _canon_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])
        )

    def reverse(self) -> "VPath":
        return VPath(self.vertices[::-1])

    def valid_in(self, g: Graph) -> bool:
        return all(0 <= v < g.n for v in self.vertices) and all(
            g.has_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])
        )

    def index_of(self, v: int) -> int:
        return self.vertices.index(v)

    def prefix_to(self, v: int) -> "VPath":
        """Initial subpath ending at v."""
        return VPath(self.vertices[: self.index_of(v) + 1])

    def suffix_from(self, v: int) -> "VPath":
        """Final subpath starting at v."""
        return VPath(self.vertices[self.index_of(v):])

    def between(self, v: int, w: int) -> "VPath":
        """Subpath with ends v and w, oriented from v to w."""
        i, j = self.index_of(v), self.index_of(w)
        if i <= j:
            return VPath(self.vertices[i: j + 1])
        return VPath(self.vertices[j: i + 1][::-1])

    def concat(self, other: "VPath") -> "VPath":
        """Join two paths sharing exactly the junction vertex."""
        if self.last != other.first:
            raise DomainError("paths do not share a junction vertex")
        return VPath(self.vertices + other.vertices[1:])

    def restrict_to(self, vs: set[int]) -> "VPath":
        """Restriction to a vertex set that cuts out one contiguous piece."""
        kept = [v for v in self.vertices if v in vs]
        sub = VPath(kept)
        idx = [self.index_of(v) for v in kept]
        if idx != list(range(idx[0], idx[0] + len(idx))):
            raise DomainError("restriction is not contiguous")
        return sub

    def to_subgraph(self) -> SubgraphView:
        return subgraph_from_edges(
            zip(self.vertices, self.vertices[1:]), self.vertices
        )


def linkage_subgraph(paths: Iterable[VPath]) -> SubgraphView:
    """Union of a set of paths as one subgraph."""
    vs: set[int] = set()
    es: set[tuple[int, int]] = set()
    for p in paths:
        vs.update(p.vertices)
        es.update(p.edge_set())
    return SubgraphView(vs, es)


def paths_disjoint(paths: Sequence[VPath]) -> bool:
    seen: set[int] = set()
    for p in paths:
        if seen & p.vertex_set:
            return False
        seen |= p.vertex_set
    return True


# ---------------------------------------------------------------------------
# Search primitives
# ---------------------------------------------------------------------------

def _nbrs(adj, u):
    return adj[u] if not isinstance(adj, dict) else adj.get(u, frozenset())


def bfs_path(adj, sources: Iterable[int], targets: Iterable[int],
             forbidden: Iterable[int] = ()) -> Optional[VPath]:
    """Lexicographically-least shortest path from a source to a target.

    Forbidden vertices may appear nowhere on the path.
    """
    targets = set(targets)
    forbidden = set(forbidden)
    prev: dict[int, Optional[int]] = {}
    frontier = sorted(s for s in set(sources) if s not in forbidden)
    for s in frontier:
        prev[s] = None
    while frontier:
        for u in frontier:
            if u in targets:
                walk = [u]
                while prev[walk[-1]] is not None:
                    walk.append(prev[walk[-1]])
                return VPath(walk[::-1])
        nxt = []
        for u in frontier:
            for v in sorted(_nbrs(adj, u)):
                if v not in prev and v not in forbidden:
                    prev[v] = u
                    nxt.append(v)
        frontier = sorted(set(nxt))
    return None


def reachable_from(adj, sources: Iterable[int],
                   forbidden: Iterable[int] = ()) -> set[int]:
    forbidden = set(forbidden)
    seen = set(s for s in sources if s not in forbidden)
    stack = list(seen)
    while stack:
        u = stack.pop()
        for v in _nbrs(adj, u):
            if v not in seen and v not in forbidden:
                seen.add(v)
                stack.append(v)
    return seen


def connected_components(view: SubgraphView) -> list[frozenset[int]]:
    comps = []
    remaining = set(view.vertices)
    while remaining:
        start = min(remaining)
        comp = reachable_from(view.adj, [start])
        comps.append(frozenset(comp))
        remaining -= comp
    return comps


def is_connected(view: SubgraphView) -> bool:
    if not view.vertices:
        return True
    return len(reachable_from(view.adj, [min(view.vertices)])) == len(view.vertices)


# ---------------------------------------------------------------------------
# Unit-capacity vertex flow (Menger computations)
# ---------------------------------------------------------------------------

class _FlowNet:
    """Vertex-capacity flow network over a Graph.

    Unit vertices are split into (v, 'in') -> (v, 'out'); vertices listed in
    `unlimited` stay whole.  `absorbing` vertices keep no out-arcs except the
    sink arc, so paths end on first contact.
    """

    SRC = ("S",)
    SNK = ("T",)

    def __init__(self, g: Graph, sources: set[int], sinks: set[int],
                 unlimited: set[int] = frozenset(),
                 absorbing: set[int] = frozenset(),
                 removed: set[int] = frozenset(),
                 edge_cost=None):
        self.g = g
        self.sources = set(sources) - set(removed)
        self.sinks = set(sinks) - set(removed)
        self.unlimited = set(unlimited)
        self.absorbing = set(absorbing)
        self.removed = set(removed)
        self.cap: dict[tuple, dict[tuple, int]] = {}
        self.flow: dict[tuple[tuple, tuple], int] = {}
        self.cost = edge_cost or (lambda u, v: 0)
        big = g.n + 1

        usable = [v for v in g.vertices() if v not in self.removed]

        def vin(v):
            return (v, "x") if v in self.unlimited else (v, "i")

        def vout(v):
            return (v, "x") if v in self.unlimited else (v, "o")

        self._vin, self._vout = vin, vout
        for v in usable:
            if v not in self.unlimited:
                self._add(vin(v), vout(v), 1, 0)
        for s in self.sources:
            self._add(self.SRC, vin(s), big, 0)
        for t in self.sinks:
            self._add(vout(t) if t not in self.absorbing else vin(t),
                      self.SNK, big if t in self.unlimited else 1, 0)
        for u, v in g.edges:
            if u in self.removed or v in self.removed:
                continue
            c = self.cost(u, v)
            # Paths may not leave absorbing vertices nor re-enter sources.
            if u not in self.absorbing and (v not in self.sources or v in self.sinks):
                self._add(vout(u), vin(v), 1, c)
            if v not in self.absorbing and (u not in self.sources or u in self.sinks):
                self._add(vout(v), vin(u), 1, c)

    def _add(self, a, b, c, w):
        self.cap.setdefault(a, {})[b] = c
        self.cap.setdefault(b, {}).setdefault(a, 0)
        self.flow[(a, b)] = 0
        self.flow.setdefault((b, a), 0)
        self._cost = getattr(self, "_cost", {})
        self._cost[(a, b)] = w
        self._cost.setdefault((b, a), -w)

    def _residual(self, a, b) -> int:
        return self.cap.get(a, {}).get(b, 0) - self.flow[(a, b)] + self.flow[(b, a)]

    def _push(self, a, b):
        if self.flow[(b, a)] > 0:
            self.flow[(b, a)] -= 1
        else:
            self.flow[(a, b)] += 1

    def max_flow(self, cap: Optional[int] = None) -> int:
        value = 0
        while cap is None or value < cap:
            prev = {self.SRC: None}
            q = deque([self.SRC])
            while q and self.SNK not in prev:
                a = q.popleft()
                for b in self.cap.get(a, {}):
                    if b not in prev and self._residual(a, b) > 0:
                        prev[b] = a
                        q.append(b)
            if self.SNK not in prev:
                break
            node = self.SNK
            while prev[node] is not None:
                self._push(prev[node], node)
                node = prev[node]
            value += 1
        return value

    def min_cost_max_flow(self) -> tuple[int, int]:
        """Successive shortest augmenting paths (Bellman-Ford; costs >= 0)."""
        value = total = 0
        while True:
            dist = {self.SRC: 0}
            prev: dict = {self.SRC: None}
            changed = True
            while changed:
                changed = False
                for (a, b) in list(self.flow):
                    if a in dist and self._residual(a, b) > 0:
                        nd = dist[a] + self._cost[(a, b)]
                        if nd < dist.get(b, nd + 1):
                            dist[b] = nd
                            prev[b] = a
                            changed = True
            if self.SNK not in dist:
                break
            node = self.SNK
            while prev[node] is not None:
                self._push(prev[node], node)
                node = prev[node]
            value += 1
            total += dist[self.SNK]
        return value, total

    @staticmethod
    def _node_key(node: tuple):
        if len(node) == 1:
            return (1, 0, str(node[0]))
        return (0, node[0], node[1])

    def decompose_paths(self) -> list[VPath]:
        net: dict[tuple, dict[tuple, int]] = {}
        for (a, b), f in self.flow.items():
            eff = f - self.flow[(b, a)]
            if eff > 0:
                net.setdefault(a, {})[b] = eff
        paths = []
        while net.get(self.SRC):
            walk_nodes = [self.SRC]
            while walk_nodes[-1] != self.SNK:
                a = walk_nodes[-1]
                b = min(net[a], key=self._node_key)
                net[a][b] -= 1
                if net[a][b] == 0:
                    del net[a][b]
                    if not net[a]:
                        del net[a]
                walk_nodes.append(b)
            verts: list[int] = []
            for node in walk_nodes[1:-1]:
                v = node[0]
                if not verts or verts[-1] != v:
                    verts.append(v)
            paths.append(VPath(verts))
        return sorted(paths, key=lambda p: p.vertices)

    def min_cut_vertices(self) -> set[int]:
        """After max_flow: minimum separating vertex set."""
        reach = {self.SRC}
        q = deque([self.SRC])
        while q:
            a = q.popleft()
            for b in self.cap.get(a, {}):
                if b not in reach and self._residual(a, b) > 0:
                    reach.add(b)
                    q.append(b)
        cut = set()
        for v in self.g.vertices():
            if v in self.removed or v in self.unlimited:
                continue
            if (v, "i") in reach and (v, "o") not in reach:
                cut.add(v)
            elif v in self.absorbing and v in self.sinks and (v, "i") in reach:
                # Saturated absorbing sink arc.
                if self.flow[((v, "i"), self.SNK)] - self.flow[(self.SNK, (v, "i"))] >= self.cap[(v, "i")][self.SNK]:
                    cut.add(v)
        return cut


def disjoint_set_paths(g: Graph, xs: set[int], ys: set[int],
                       removed: set[int] = frozenset(),
                       cap: Optional[int] = None) -> tuple[int, list[VPath]]:
    """Maximum family of fully vertex-disjoint X-Y paths.

    Endpoints count for disjointness; a vertex in both X and Y yields a
    trivial path.  Paths meet X only in the first and Y only in the last
    vertex.
    """
    net = _FlowNet(g, set(xs), set(ys), absorbing=set(ys), removed=set(removed))
    value = net.max_flow(cap)
    return value, net.decompose_paths()


def min_xy_separator(g: Graph, xs: set[int], ys: set[int],
                     removed: set[int] = frozenset()) -> set[int]:
    """Minimum vertex set meeting every X-Y path (may contain X/Y vertices)."""
    net = _FlowNet(g, set(xs), set(ys), absorbing=set(ys), removed=set(removed))
    net.max_flow()
    return net.min_cut_vertices()


def local_connectivity(g: Graph, u: int, v: int,
                       cap: Optional[int] = None) -> int:
    """Maximum number of internally disjoint u-v paths (u, v non-adjacent
    unless a cap is supplied)."""
    net = _FlowNet(g, {u}, {v}, unlimited={u, v})
    return net.max_flow(cap if cap is not None else g.n)


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------

def connectivity(g: Graph) -> int:
    """Vertex connectivity kappa(g); complete graphs return n - 1."""
    if g.n < 2:
        raise DomainError("connectivity needs at least 2 vertices")
    best = g.n - 1
    for u in g.vertices():
        for v in range(u + 1, g.n):
            if g.has_edge(u, v):
                continue
            best = min(best, local_connectivity(g, u, v, cap=best))
            if best == 0:
                return 0
    return best


def brute_force_connectivity(g: Graph) -> int:
    """Oracle: smallest vertex set whose removal disconnects or empties g."""
    import itertools

    if g.n < 2:
        raise DomainError("connectivity needs at least 2 vertices")
    for size in range(g.n - 1):
        for cut in itertools.combinations(range(g.n), size):
            rest = [v for v in g.vertices() if v not in cut]
            if len(rest) <= 1:
                continue
            view = g.induced(rest)
            if not is_connected(view):
                return size
    return g.n - 1


def blocks(g: Graph) -> tuple[list[frozenset[int]], set[int]]:
    """Blocks (as vertex sets) and cut vertices."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    edge_stack: list[tuple[int, int]] = []
    result: list[frozenset[int]] = []
    counter = 0

    for root in g.vertices():
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        dfs = [(root, None, iter(sorted(g.neighbors(root))))]
        while dfs:
            v, parent, it = dfs[-1]
            pushed = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    edge_stack.append((v, w))
                    disc[w] = low[w] = counter
                    counter += 1
                    dfs.append((w, v, iter(sorted(g.neighbors(w)))))
                    pushed = True
                    break
                elif disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if pushed:
                continue
            dfs.pop()
            if dfs:
                u = dfs[-1][0]
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    comp: set[int] = set()
                    while edge_stack:
                        a, b = edge_stack.pop()
                        comp.update((a, b))
                        if (a, b) == (u, v):
                            break
                    if comp:
                        result.append(frozenset(comp))
        if not g.neighbors(root):
            result.append(frozenset({root}))
    cuts = {v for v in g.vertices()
            if sum(1 for b in result if v in b) > 1}
    return result, cuts


@dataclass(frozen=True)
class Bridge:
    """One S-bridge: a chord of S, or a component of G - S together with its
    incident edges."""

    vertices: frozenset[int]
    attachments: frozenset[int]
    edges: frozenset[tuple[int, int]]
    is_trivial: bool
    is_stable: bool
    host_segment: Optional[int]

    @property
    def inner(self) -> frozenset[int]:
        return self.vertices - self.attachments

    def attaches_to(self, vertices: Iterable[int]) -> bool:
        return bool(self.attachments & set(vertices))


@dataclass(frozen=True)
class SBridgeReport:
    bridges: tuple[Bridge, ...]
    segments: tuple[VPath, ...]
    branch_vertices: frozenset[int]

    def hosted(self) -> list[Bridge]:
        return [b for b in self.bridges if b.host_segment is not None]


def segments_of(s: SubgraphView) -> tuple[tuple[VPath, ...], frozenset[int], bool]:
    """Maximal paths of s between branch vertices (degree != 2 in s).

    Cycles through fewer than two branch vertices admit no segment; such
    edges stay uncovered and the third return value turns False (the graph
    is not the union of its segments).
    """
    branch = frozenset(v for v in s.vertices if s.degree(v) != 2)
    segs: list[VPath] = []
    seen_edges: set[tuple[int, int]] = set()
    for b in sorted(branch):
        for w in sorted(s.adj[b]):
            e = _canon_edge(b, w)
            if e in seen_edges:
                continue
            walk = [b, w]
            seen_edges.add(e)
            closed = False
            while walk[-1] not in branch:
                nxt = [x for x in s.adj[walk[-1]] if x != walk[-2]]
                assert len(nxt) == 1
                seen_edges.add(_canon_edge(walk[-1], nxt[0]))
                if nxt[0] in walk:
                    closed = True  # cycle hanging off a single branch vertex
                    break
                walk.append(nxt[0])
            if not closed:
                segs.append(VPath(walk))
    covered_all = len(seen_edges) == len(s.edges)
    covered = {v for p in segs for v in p.vertices}
    for v in sorted(s.vertices - covered):
        if s.degree(v) == 0:
            segs.append(VPath([v]))
    return tuple(segs), branch, covered_all


def s_bridges(g: Graph, s: SubgraphView) -> SBridgeReport:
    """All S-bridges of g, with triviality, stability, and hosts."""
    if not s.is_subgraph_of(g):
        raise DomainError("s is not a subgraph of g")
    segments, branch, _ = segments_of(s)

    def finish(vertices: set[int], attachments: set[int],
               edges: set[tuple[int, int]], trivial: bool) -> Bridge:
        att = frozenset(attachments)
        hosts = [i for i, seg in enumerate(segments) if att <= seg.vertex_set]
        stable = not hosts
        host = hosts[0] if (hosts and len(att) >= 2) else None
        return Bridge(frozenset(vertices), att, frozenset(edges),
                      trivial, stable, host)

    bridges: list[Bridge] = []
    for u, v in sorted(g.edges - s.edges):
        if u in s.vertices and v in s.vertices:
            bridges.append(finish({u, v}, {u, v}, {(u, v)}, True))
    remaining = set(g.vertices()) - s.vertices
    while remaining:
        start = min(remaining)
        comp = reachable_from(g.adj, [start], s.vertices)
        remaining -= comp
        edges: set[tuple[int, int]] = set()
        att: set[int] = set()
        for u in comp:
            for v in g.neighbors(u):
                edges.add(_canon_edge(u, v))
                if v in s.vertices:
                    att.add(v)
        bridges.append(finish(comp | att, att, edges, False))
    return SBridgeReport(tuple(bridges), segments, branch)


def fan(g: Graph, v: int, z: set[int], p: int) -> Optional[list[VPath]]:
    """p paths from v to z, disjoint except at v, meeting z only at the end."""
    z = set(z)
    if v in z:
        raise DomainError("fan centre must not lie in the target set")
    if p > len(z):
        return None
    net = _FlowNet(g, {v}, z, unlimited={v}, absorbing=z)
    if net.max_flow(p) < p:
        return None
    paths = net.decompose_paths()
    for q in paths:
        assert q.first == v and q.last in z
        assert not (set(q.vertices[:-1]) & z)
    return paths


def fan_size(g: Graph, v: int, z: set[int]) -> int:
    """Maximum size of a v-z fan."""
    z = set(z)
    if v in z:
        raise DomainError("fan centre must not lie in the target set")
    net = _FlowNet(g, {v}, z, unlimited={v}, absorbing=z)
    return net.max_flow()
