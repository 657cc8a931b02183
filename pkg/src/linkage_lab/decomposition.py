"""Tree and slim decompositions, the regularity and stability axioms,
foundational linkages, bridge/auxiliary graphs, contraction, disturbances,
the stabilisation loop, and relinkage verifiers.

A slim decomposition is an ordered bag tuple W_0..W_l covering all vertices
and edges, with interval traces (a vertex's bags are consecutive), equal
adhesion-set sizes, no contained bags, and a full left-to-right linkage.
The enumerated linkage threading every adhesion set is the foundational
linkage; bridges between its paths inside the inner bags define the
auxiliary graph.  Regularity adds per-bag attachedness, the two-or-all bag
rule for vertices, and bag-independence of bridge adjacencies; stability
additionally forbids twisting (non-automorphism permutation) and bridging
(new adjacency) linkages inside any single inner bag.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph_core import (
    DomainError,
    Graph,
    GuardExceeded,
    SubgraphView,
    VPath,
    disjoint_set_paths,
    is_connected,
    linkage_subgraph,
    s_bridges,
)
from .bridges_rerouting import bridge_stabilisation


class AxiomViolation(DomainError):
    def __init__(self, axiom: str, witness):
        super().__init__(f"axiom {axiom} violated (witness: {witness})")
        self.axiom = axiom
        self.witness = witness


# ---------------------------------------------------------------------------
# Tree decompositions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TreeDecomposition:
    tree: Graph
    bags: tuple[frozenset[int], ...]   # bags[t] belongs to tree vertex t

    def __init__(self, tree: Graph, bags: Sequence[Iterable[int]]):
        if len(bags) != tree.n:
            raise DomainError("one bag per tree vertex required")
        object.__setattr__(self, "tree", tree)
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1


def verify_tree_decomposition(g: Graph, td: TreeDecomposition) -> int:
    """Check the three defining properties; returns the width."""
    tree = td.tree
    if len(tree.edges) != tree.n - 1 or not is_connected(
            tree.induced(tree.vertices())):
        raise AxiomViolation("tree-shape", "decomposition tree is not a tree")
    covered = set()
    for b in td.bags:
        covered |= b
    if covered != set(g.vertices()):
        raise AxiomViolation("vertex-cover", sorted(set(g.vertices()) - covered))
    for e in sorted(g.edges):
        if not any(e[0] in b and e[1] in b for b in td.bags):
            raise AxiomViolation("edge-cover", e)
    for v in g.vertices():
        hosts = [t for t in tree.vertices() if v in td.bags[t]]
        sub = tree.induced(hosts)
        if not is_connected(sub):
            raise AxiomViolation("subtree", v)
    return td.width


def treewidth_exact(g: Graph, exact_limit: int = 12) -> tuple[int, bool]:
    """(width, is_exact): subset dynamic programming up to the limit, a
    min-fill upper bound beyond it."""
    n = g.n
    if n == 0:
        return -1, True
    if n > exact_limit:
        return _min_fill_width(g), False
    masks = [0] * n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    full = (1 << n) - 1

    # q(S, v): neighbours of v in V - S reachable through S u {v}.
    def q(s_mask: int, v: int) -> int:
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            u = stack.pop()
            nb = masks[u] & ~seen
            out |= nb & ~s_mask
            inner = nb & s_mask
            while inner:
                b = inner & -inner
                inner ^= b
                seen |= b
                stack.append(b.bit_length() - 1)
            seen |= nb
        return bin(out).count("1")

    dp = {0: -1}
    for size in range(1, n + 1):
        ndp = {}
        for s_mask, val in dp.items():
            rest = full & ~s_mask
            while rest:
                b = rest & -rest
                rest ^= b
                v = b.bit_length() - 1
                cost = max(val, q(s_mask, v))
                t = s_mask | b
                if cost < ndp.get(t, n + 1):
                    ndp[t] = cost
        dp = {m: c for m, c in ndp.items() if bin(m).count("1") == size}
    return dp[full], True


def _min_fill_width(g: Graph) -> int:
    adj = {v: set(g.neighbors(v)) for v in g.vertices()}
    width = 0
    remaining = set(g.vertices())
    while remaining:
        def fill(v):
            nb = adj[v] & remaining
            return sum(1 for a, b in itertools.combinations(sorted(nb), 2)
                       if b not in adj[a])
        v = min(remaining, key=lambda v: (fill(v), len(adj[v] & remaining), v))
        nb = adj[v] & remaining
        width = max(width, len(nb))
        for a, b in itertools.combinations(nb, 2):
            adj[a].add(b)
            adj[b].add(a)
        remaining.discard(v)
    return width


# ---------------------------------------------------------------------------
# Slim decompositions and foundational linkages
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlimDecomposition:
    host: Graph
    bags: tuple[frozenset[int], ...]

    def __init__(self, host: Graph, bags: Sequence[Iterable[int]]):
        object.__setattr__(self, "host", host)
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in bags))

    @property
    def length(self) -> int:
        return len(self.bags) - 1

    def adhesion_set(self, i: int) -> frozenset[int]:
        """The i-th adhesion set W_{i-1} n W_i, i = 1..length."""
        return self.bags[i - 1] & self.bags[i]

    @property
    def first_adhesion(self) -> frozenset[int]:
        return self.adhesion_set(1)

    @property
    def last_adhesion(self) -> frozenset[int]:
        return self.adhesion_set(self.length)

    def inner_indices(self) -> range:
        return range(1, self.length)

    def bag_union(self, j: int, k: int) -> frozenset[int]:
        out: set[int] = set()
        for i in range(j, k + 1):
            out |= self.bags[i]
        return frozenset(out)

    def bag_graph(self, j: int, k: Optional[int] = None) -> Graph:
        """Induced subgraph on W_[j,k] kept on the host's labels (vertices
        outside the union are dropped from the edge set but retain ids)."""
        verts = self.bag_union(j, k if k is not None else j)
        return Graph(self.host.n,
                     [e for e in self.host.edges
                      if e[0] in verts and e[1] in verts]), verts

    def to_json_obj(self) -> dict:
        return {"bags": [sorted(b) for b in self.bags]}


@dataclass(frozen=True)
class FoundationalLinkage:
    paths: tuple[VPath, ...]

    def __init__(self, paths: Sequence[VPath]):
        object.__setattr__(self, "paths", tuple(paths))

    @property
    def q(self) -> int:
        return len(self.paths)

    @property
    def lam(self) -> frozenset[int]:
        return frozenset(i for i, p in enumerate(self.paths)
                         if not p.is_trivial)

    @property
    def theta(self) -> frozenset[int]:
        return frozenset(i for i, p in enumerate(self.paths) if p.is_trivial)

    def alpha_vertex(self, alpha: int, adhesion: frozenset[int]) -> int:
        hit = [v for v in self.paths[alpha].vertices if v in adhesion]
        assert len(hit) == 1, "path does not meet the adhesion set once"
        return hit[0]

    def restrict(self, verts: frozenset[int]) -> "FoundationalLinkage":
        return FoundationalLinkage([p.restrict_to(verts) for p in self.paths])

    def to_json_obj(self) -> dict:
        return {"paths": [list(p.vertices) for p in self.paths]}


def verify_slim(sd: SlimDecomposition) -> tuple[int, FoundationalLinkage]:
    """Check (L1)-(L5); builds a foundational linkage by disjoint-paths
    search.  Raises AxiomViolation with a witness on failure."""
    g = sd.host
    l = sd.length
    if l < 1:
        raise AxiomViolation("L1", "need at least two bags")
    covered = set()
    for b in sd.bags:
        covered |= b
    if covered != set(g.vertices()):
        raise AxiomViolation("L1", sorted(set(g.vertices()) ^ covered))
    for e in sorted(g.edges):
        if not any(e[0] in b and e[1] in b for b in sd.bags):
            raise AxiomViolation("L1", e)
    for v in g.vertices():
        hosts = [i for i, b in enumerate(sd.bags) if v in b]
        if hosts != list(range(hosts[0], hosts[-1] + 1)):
            gap = next(j for j in range(hosts[0], hosts[-1])
                       if j not in hosts)
            raise AxiomViolation("L2", (hosts[0], gap, hosts[-1]))
    sizes = {len(sd.adhesion_set(i)) for i in range(1, l + 1)}
    if len(sizes) != 1:
        raise AxiomViolation("L3", sorted(
            (i, len(sd.adhesion_set(i))) for i in range(1, l + 1)))
    adhesion = sizes.pop()
    for i, j in itertools.combinations(range(l + 1), 2):
        if sd.bags[i] <= sd.bags[j] or sd.bags[j] <= sd.bags[i]:
            raise AxiomViolation("L4", (i, j))
    value, paths = disjoint_set_paths(g, set(sd.first_adhesion),
                                      set(sd.last_adhesion))
    if value < adhesion:
        raise AxiomViolation("L5", f"only {value} disjoint paths, "
                                   f"adhesion {adhesion}")
    paths = sorted(paths, key=lambda p: p.first)
    fl = FoundationalLinkage(paths)
    for alpha, p in enumerate(fl.paths):
        for i in range(1, l + 1):
            hits = [v for v in p.vertices if v in sd.adhesion_set(i)]
            assert len(hits) == 1, \
                f"path {alpha} meets adhesion set {i} {len(hits)} times"
    return adhesion, fl


def induced_permutation(sd: SlimDecomposition, p: FoundationalLinkage,
                        linkage: Sequence[VPath], i: int, j: int) -> tuple[int, ...]:
    """pi with Q_alpha ending at the right pi(alpha)-vertex of W_j, where
    Q_alpha starts at the left alpha-vertex of W_i."""
    left = sd.adhesion_set(i)
    right = sd.adhesion_set(j + 1)
    if len(linkage) != p.q:
        raise DomainError("linkage size differs from the foundation")
    start_of = {p.alpha_vertex(a, left): a for a in range(p.q)}
    end_of = {p.alpha_vertex(a, right): a for a in range(p.q)}
    pi = [None] * p.q
    for path in linkage:
        if path.first in start_of and path.last in end_of:
            s, e = path.first, path.last
        elif path.last in start_of and path.first in end_of:
            s, e = path.last, path.first
        else:
            raise DomainError(f"path {path.vertices} does not join the "
                              f"adhesion sets")
        pi[start_of[s]] = end_of[e]
    if None in pi or len(set(pi)) != p.q:
        raise DomainError("linkage does not induce a permutation")
    return tuple(pi)


def bridge_graph(h: Graph, paths: Sequence[VPath],
                 within: Optional[frozenset[int]] = None) -> Graph:
    """Graph on path indices: alpha-beta iff some bridge attaches both.

    `within` restricts host and paths to an induced vertex subset.
    """
    if within is not None:
        h = Graph(h.n, [e for e in h.edges
                        if e[0] in within and e[1] in within])
        paths = [pp.restrict_to(within) for pp in paths]
    sub = linkage_subgraph(paths)
    report = s_bridges(h, sub)
    # Drop spurious components living outside the bag union: every real
    # bridge attaches to the linkage.
    edges = set()
    for b in report.bridges:
        touched = sorted(i for i, pp in enumerate(paths)
                         if b.attachments & pp.vertex_set)
        for x, y in itertools.combinations(touched, 2):
            edges.add((x, y))
    return Graph(len(paths), edges)


def auxiliary_graph(sd: SlimDecomposition, p: FoundationalLinkage) -> Graph:
    """Bridge graph of the foundation over the union of the inner bags."""
    inner = sd.bag_union(1, sd.length - 1)
    return bridge_graph(sd.host, p.paths, within=inner)


def bag_bridge_graph(sd: SlimDecomposition, paths: Sequence[VPath],
                     i: int) -> Graph:
    return bridge_graph(sd.host, paths, within=sd.bags[i])


def g_sub(sd: SlimDecomposition, p: FoundationalLinkage,
          gamma: Graph | tuple, q: Optional[FoundationalLinkage] = None,
          gamma_vertices: Optional[frozenset[int]] = None) -> SubgraphView:
    """The graph G_Gamma^Q: the paths indexed by V(Gamma) together with the
    inner-bag bridges that realise an edge of Gamma or attach to a
    non-trivial Gamma path but to no non-trivial outside path."""
    link = p if q is None else q
    if isinstance(gamma, Graph):
        gv = gamma_vertices if gamma_vertices is not None \
            else frozenset(range(gamma.n))
        ge = set(gamma.edges)
    else:
        gv, ge = frozenset(gamma[0]), set(gamma[1])
    lam = p.lam
    inner = sd.bag_union(1, sd.length - 1)
    inner_graph = Graph(sd.host.n, [e for e in sd.host.edges
                                    if e[0] in inner and e[1] in inner])
    restricted = [pp.restrict_to(inner) for pp in link.paths]
    report = s_bridges(inner_graph, linkage_subgraph(restricted))
    keep_v: set[int] = set()
    keep_e: set[tuple[int, int]] = set()
    for alpha in gv:
        keep_v |= link.paths[alpha].vertex_set
        keep_e |= link.paths[alpha].edge_set()
    for b in report.bridges:
        if not any(b.vertices <= sd.bags[i] for i in sd.inner_indices()):
            continue
        touched = {i for i, pp in enumerate(restricted)
                   if b.attachments & pp.vertex_set}
        realises = any(tuple(sorted(e)) in {tuple(sorted(x)) for x in ge}
                       for e in itertools.combinations(sorted(touched), 2)
                       if set(e) <= gv)
        attaches_gv_lam = bool(touched & gv & lam)
        attaches_out_lam = bool(touched & (lam - gv))
        if realises or (attaches_gv_lam and not attaches_out_lam):
            keep_v |= b.vertices
            keep_e |= b.edges
    deleted = set()
    for alpha in range(link.q):
        if alpha not in gv:
            deleted |= link.paths[alpha].vertex_set
    keep_v -= deleted
    keep_e = {e for e in keep_e if e[0] in keep_v and e[1] in keep_v}
    return SubgraphView(keep_v, keep_e)


def g_lambda(sd: SlimDecomposition, p: FoundationalLinkage) -> SubgraphView:
    lam = sorted(p.lam)
    gamma = auxiliary_graph(sd, p)
    sub_edges = [e for e in gamma.edges if e[0] in p.lam and e[1] in p.lam]
    return g_sub(sd, p, (frozenset(lam), sub_edges))


# ---------------------------------------------------------------------------
# Regularity (L6)-(L8)
# ---------------------------------------------------------------------------

def is_p_attached(h: Graph, paths: Sequence[VPath], p_value: int,
                  within: Optional[frozenset[int]] = None) -> tuple[bool, Optional[tuple]]:
    """Each path induced; a non-trivial bridge attaching a non-trivial path
    must attach another non-trivial path, or the path must be bridge
    adjacent to at least p-2 trivial paths."""
    if within is not None:
        h = Graph(h.n, [e for e in h.edges
                        if e[0] in within and e[1] in within])
        paths = [pp.restrict_to(within) for pp in paths]
    sub = linkage_subgraph(paths)
    report = s_bridges(h, sub)
    nontrivial = [i for i, pp in enumerate(paths) if not pp.is_trivial]
    trivial = [i for i, pp in enumerate(paths) if pp.is_trivial]
    for i in nontrivial:
        pp = paths[i]
        for u, v in itertools.combinations(pp.vertices, 2):
            if h.has_edge(u, v) and \
                    abs(pp.index_of(u) - pp.index_of(v)) != 1:
                return False, ("chord", i, (u, v))
    adj_trivial = {i: set() for i in nontrivial}
    for b in report.bridges:
        touched = {i for i, pp in enumerate(paths)
                   if b.attachments & pp.vertex_set}
        for i in touched & set(nontrivial):
            adj_trivial[i] |= touched & set(trivial)
    for b in report.bridges:
        if b.is_trivial:
            continue
        touched = {i for i, pp in enumerate(paths)
                   if b.attachments & pp.vertex_set}
        touched_nt = touched & set(nontrivial)
        for i in touched_nt:
            if len(touched_nt) >= 2:
                continue
            if len(adj_trivial[i]) < p_value - 2:
                return False, ("attachedness", i, sorted(b.vertices))
    return True, None


@dataclass(frozen=True)
class RegularStableReport:
    attachedness_p: int
    l6_ok: bool
    l7_ok: bool
    l8_ok: bool
    l10_ok: Optional[bool]
    l11_ok: Optional[bool]
    witnesses: dict
    auxiliary: Graph


def verify_regular(sd: SlimDecomposition, p: FoundationalLinkage,
                   attachedness_p: int) -> RegularStableReport:
    """Per-axiom verdicts for (L6)-(L8) with witnesses; (L10)/(L11) are
    left to find_disturbance and reported as None here."""
    witnesses: dict = {}
    l6 = True
    for i in sd.inner_indices():
        ok, wit = is_p_attached(sd.host, p.paths, attachedness_p,
                                within=sd.bags[i])
        if not ok:
            l6 = False
            witnesses.setdefault("L6", (i, wit))
            break
    l7 = True
    for v in sd.host.vertices():
        hosts = [i for i, b in enumerate(sd.bags) if v in b]
        if len(hosts) > 2 and len(hosts) != len(sd.bags):
            l7 = False
            witnesses.setdefault("L7", v)
            break
    gamma = auxiliary_graph(sd, p)
    l8 = True
    for i in sd.inner_indices():
        bg = bag_bridge_graph(sd, p.paths, i)
        if bg.edges != gamma.edges:
            l8 = False
            witnesses.setdefault("L8", (i, sorted(gamma.edges ^ bg.edges)))
            break
    return RegularStableReport(attachedness_p, l6, l7, l8, None, None,
                               witnesses, gamma)


# ---------------------------------------------------------------------------
# Disturbances (L10)-(L11)
# ---------------------------------------------------------------------------

def _enumerate_bag_linkages(sd: SlimDecomposition, p: FoundationalLinkage,
                            i: int, guard: int):
    """All linkages from the left to the right adhesion set of inner bag i.

    Path j starts at the left j-vertex, ends in the right adhesion set, and
    meets either adhesion set only at its ends.  Yields path lists in
    foundation order.
    """
    bag = sd.bags[i]
    left = sd.adhesion_set(i)
    right = sd.adhesion_set(i + 1)
    h = sd.host
    starts = [p.alpha_vertex(a, left) for a in range(p.q)]
    counter = [0]

    def tick():
        counter[0] += 1
        if counter[0] > guard:
            raise GuardExceeded(
                f"bag linkage enumeration exceeded {guard} states")

    def paths_from(s: int, used: frozenset[int]) -> list[tuple[int, ...]]:
        # A vertex shared by both adhesion sets admits only its trivial path.
        if s in right:
            return [(s,)]
        out = []
        stack = [(s, (s,))]
        while stack:
            tick()
            v, walk = stack.pop()
            for w in sorted(h.neighbors(v)):
                if w not in bag or w in used or w in walk:
                    continue
                if w in left:
                    continue  # may meet the left set only at the start
                if w in right:
                    out.append(walk + (w,))
                    continue
                stack.append((w, walk + (w,)))
        return out

    def extend(idx: int, used: frozenset[int], acc: list[VPath]):
        tick()
        if idx == p.q:
            yield list(acc)
            return
        s = starts[idx]
        for walk in paths_from(s, used):
            path = VPath(walk)
            acc.append(path)
            yield from extend(idx + 1, used | path.vertex_set, acc)
            acc.pop()

    yield from extend(0, frozenset(), [])


def is_automorphism(gamma: Graph, pi: tuple[int, ...]) -> bool:
    mapped = {tuple(sorted((pi[u], pi[v]))) for u, v in gamma.edges}
    return mapped == set(gamma.edges)


def verify_stable(sd: SlimDecomposition, p: FoundationalLinkage,
                  attachedness_p: int,
                  guard: int = 200_000) -> RegularStableReport:
    """verify_regular plus exhaustive per-bag disturbance checks filling in
    the stability verdicts."""
    base = verify_regular(sd, p, attachedness_p)
    l10 = l11 = True
    witnesses = dict(base.witnesses)
    for i in sd.inner_indices():
        found = find_disturbance(sd, p, i, guard)
        if found is None:
            continue
        kind, linkage = found
        if kind == "twisting":
            l10 = False
            witnesses.setdefault("L10", (i, [q.vertices for q in linkage]))
        else:
            l11 = False
            witnesses.setdefault("L11", (i, [q.vertices for q in linkage]))
    return RegularStableReport(attachedness_p, base.l6_ok, base.l7_ok,
                               base.l8_ok, l10, l11, witnesses,
                               base.auxiliary)


def find_disturbance(sd: SlimDecomposition, p: FoundationalLinkage,
                     bag_index: int, guard: int = 200_000):
    """A twisting or bridging linkage inside the given inner bag, or None.

    Returns (kind, linkage) or None; raises GuardExceeded when the bag is
    too large for exhaustive search.
    """
    if bag_index not in sd.inner_indices():
        raise DomainError("not an inner bag index")
    gamma = auxiliary_graph(sd, p)
    lam = p.lam
    for linkage in _enumerate_bag_linkages(sd, p, bag_index, guard):
        pi = induced_permutation(sd, p, linkage, bag_index, bag_index)
        if not is_automorphism(gamma, pi):
            return ("twisting", linkage)
        bg = bridge_graph(sd.host, linkage, within=sd.bags[bag_index])
        for u, v in bg.edges:
            if (u in lam or v in lam) and (u, v) not in gamma.edges:
                return ("bridging", linkage)
    return None


# ---------------------------------------------------------------------------
# Contraction
# ---------------------------------------------------------------------------

def contract(sd: SlimDecomposition, p: FoundationalLinkage,
             indices: Sequence[int]) -> tuple[SlimDecomposition, FoundationalLinkage]:
    """Merge bag runs along an increasing index subsequence of 1..length."""
    idx = list(indices)
    l = sd.length
    if not idx or idx != sorted(set(idx)) or idx[0] < 1 or idx[-1] > l:
        raise DomainError("indices must be an increasing subsequence of 1..l")
    n = len(idx)
    bags = [sd.bag_union(0, idx[0] - 1)]
    for j in range(n - 1):
        bags.append(sd.bag_union(idx[j], idx[j + 1] - 1))
    bags.append(sd.bag_union(idx[-1], l))
    new_sd = SlimDecomposition(sd.host, bags)
    if n >= 2:
        inner = new_sd.bag_union(1, n - 1)
        new_p = p.restrict(inner)
    else:
        new_p = FoundationalLinkage(
            [VPath([p.alpha_vertex(a, new_sd.adhesion_set(1))])
             for a in range(p.q)])
    return new_sd, new_p


# ---------------------------------------------------------------------------
# Stabilisation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StabilizeFailure:
    reason: str
    length_available: int
    length_needed: int
    non_edges: int
    z_bound: int


def _splice_linkage(sd: SlimDecomposition, p: FoundationalLinkage,
                    replacements: dict[int, list[VPath]]) -> FoundationalLinkage:
    """Replace the restriction of the foundation inside selected inner bags
    and reglue the paths along the adhesion sets."""
    l = sd.length
    by_alpha: list[list[VPath]] = [[] for _ in range(p.q)]
    # Walk the foundation one inner bag at a time, tracking where each
    # enumerated path currently sits.
    position = {a: p.alpha_vertex(a, sd.adhesion_set(1)) for a in range(p.q)}
    for i in sd.inner_indices():
        right = sd.adhesion_set(i + 1)
        if i in replacements:
            pieces = replacements[i]
        else:
            pieces = [p.paths[a].restrict_to(sd.bags[i]) for a in range(p.q)]
        taken: dict[int, VPath] = {}
        for piece in pieces:
            starts = [a for a, v in position.items() if piece.first == v]
            if not starts:
                piece = piece.reverse()
                starts = [a for a, v in position.items() if piece.first == v]
            assert starts, "spliced piece does not start on the foundation"
            a = starts[0]
            assert a not in taken, "two pieces claim one path"
            taken[a] = piece
        assert len(taken) == p.q
        for a, piece in taken.items():
            by_alpha[a].append(piece)
            assert piece.last in right
            position[a] = piece.last
    full = []
    for a in range(p.q):
        path = by_alpha[a][0]
        for piece in by_alpha[a][1:]:
            if piece.is_trivial and piece.first == path.last:
                continue
            path = path.concat(piece)
        full.append(path)
    from .graph_core import paths_disjoint
    assert paths_disjoint(full), "spliced paths collide"
    return FoundationalLinkage(full)


def stabilize(sd: SlimDecomposition, p: FoundationalLinkage,
              attachedness_p: int, target_length: int,
              guard: int = 200_000, max_rounds: Optional[int] = None):
    """Improvement loop: while some inner bag contains a disturbance, graft
    bridge-stabilised disturbances into identity-composition windows and
    contract them into the new inner bags, strictly growing the auxiliary
    graph.  Returns (sd, p, rounds) or a StabilizeFailure."""
    q = p.q
    cap = max_rounds if max_rounds is not None else math.comb(q, 2) + 1
    cur_sd, cur_p = sd, p
    rounds = 0
    while True:
        gamma = auxiliary_graph(cur_sd, cur_p)
        bad: dict[int, tuple[str, list[VPath]]] = {}
        for i in cur_sd.inner_indices():
            found = find_disturbance(cur_sd, cur_p, i, guard)
            if found is not None:
                bad[i] = found
        if not bad:
            if cur_sd.length < target_length:
                return StabilizeFailure("stable but too short to contract",
                                        cur_sd.length, target_length,
                                        0, 2 ** math.comb(q, 2))
            if cur_sd.length > target_length:
                idx = list(range(1, target_length)) + [cur_sd.length]
                cur_sd, cur_p = contract(cur_sd, cur_p, idx)
            return cur_sd, cur_p, rounds
        rounds += 1
        if rounds > cap:
            return StabilizeFailure("round budget exhausted",
                                    cur_sd.length, target_length,
                                    math.comb(q, 2) - len(gamma.edges),
                                    2 ** math.comb(q, 2))
        # Bridge-stabilise each disturbance in its bag.
        grafts: dict[int, list[VPath]] = {}
        perms: dict[int, tuple[int, ...]] = {}
        for i, (kind, linkage) in bad.items():
            bag_graph, _ = cur_sd.bag_graph(i)
            stabilised = bridge_stabilisation(bag_graph, linkage)
            grafts[i] = stabilised
            perms[i] = induced_permutation(cur_sd, cur_p, stabilised, i, i)
        # Identity-composition windows, scanned left to right.
        windows = []
        i = 1
        l = cur_sd.length
        while i <= l - 1:
            if i not in grafts:
                i += 1
                continue
            run = []
            acc = None
            j = i
            closed = False
            while j <= l - 1:
                if j in grafts:
                    pi = perms[j]
                    acc = pi if acc is None else tuple(pi[a] for a in acc)
                    run.append(j)
                if acc is not None and acc == tuple(range(q)):
                    windows.append((i, j))
                    closed = True
                    break
                j += 1
            if not closed:
                break
            i = j + 1
        if len(windows) < 2:
            return StabilizeFailure(
                "not enough identity windows for an improvement round",
                cur_sd.length, target_length,
                math.comb(q, 2) - len(gamma.edges), 2 ** math.comb(q, 2))
        # Splice the windows (except the last, which lands in the outer
        # bag) and contract with boundaries at the window starts.
        replacements = {}
        for s, e in windows[:-1]:
            for i2 in grafts:
                if s <= i2 <= e:
                    replacements[i2] = grafts[i2]
        new_p_full = _splice_linkage(cur_sd, cur_p, replacements)
        starts = [s for s, _ in windows]
        new_sd, new_p = contract(SlimDecomposition(cur_sd.host, cur_sd.bags),
                                 new_p_full, starts)
        adhesion, checked = verify_slim(new_sd)
        new_gamma = auxiliary_graph(new_sd, new_p)
        if not (set(gamma.edges) < set(new_gamma.edges)):
            return StabilizeFailure(
                "improvement round failed to grow the auxiliary graph",
                cur_sd.length, target_length,
                math.comb(q, 2) - len(gamma.edges), 2 ** math.comb(q, 2))
        report = verify_regular(new_sd, new_p, attachedness_p)
        assert report.l6_ok and report.l7_ok and report.l8_ok, \
            ("improvement broke regularity", report.witnesses)
        cur_sd, cur_p = new_sd, new_p


# ---------------------------------------------------------------------------
# Relinkages and compression
# ---------------------------------------------------------------------------

def verify_relinkage(sd: SlimDecomposition, p: FoundationalLinkage,
                     q0: FoundationalLinkage, q1: FoundationalLinkage,
                     lambda0: Iterable[int]) -> bool:
    """q1 is a (q0, lambda0)-relinkage: equal off lambda0 and rerouted
    inside G_lambda0^q0."""
    lam0 = frozenset(lambda0)
    if q0.q != q1.q or q0.q != p.q:
        raise DomainError("mismatched enumerations")
    for a in range(q0.q):
        if a not in lam0 and q0.paths[a] != q1.paths[a]:
            return False
    region = g_sub(sd, p, (lam0, _gamma_edges_within(sd, p, lam0)), q=q0)
    for a in sorted(lam0):
        pp = q1.paths[a]
        if not (pp.vertex_set <= region.vertices
                and pp.edge_set() <= region.edges):
            return False
    return True


def _gamma_edges_within(sd, p, vs: frozenset[int]):
    gamma = auxiliary_graph(sd, p)
    return [e for e in gamma.edges if e[0] in vs and e[1] in vs]


def is_compressed(sd: SlimDecomposition, p: FoundationalLinkage,
                  q: FoundationalLinkage, lambda0: Iterable[int]):
    """(True, None) or (False, witness vertex v): v is droppable from
    G_lambda0^q while keeping |lambda0| through-paths, yet sees the outside
    of the region."""
    lam0 = frozenset(lambda0)
    if not lam0:
        return True, None
    region = g_sub(sd, p, (lam0, _gamma_edges_within(sd, p, lam0)), q=q)
    lam_region = _g_lambda_for(sd, p, q)
    xs = region.vertices & sd.first_adhesion
    ys = region.vertices & sd.last_adhesion
    lam_adj: dict[int, set[int]] = {v: set() for v in lam_region.vertices}
    for u, v in lam_region.edges:
        lam_adj[u].add(v)
        lam_adj[v].add(u)
    outside = lam_region.vertices - region.vertices
    region_graph = Graph(sd.host.n, region.edges)
    for v in sorted(region.vertices):
        if not (lam_adj.get(v, set()) & outside):
            continue
        value, _ = disjoint_set_paths(region_graph, set(xs), set(ys),
                                      removed={v}, cap=len(lam0))
        if value >= len(lam0):
            return False, v
    return True, None


def _g_lambda_for(sd, p, q):
    lam = p.lam
    return g_sub(sd, p, (lam, _gamma_edges_within(sd, p, lam)), q=q)


def make_compressed(sd: SlimDecomposition, p: FoundationalLinkage,
                    q: FoundationalLinkage, block_d: Iterable[int],
                    attachedness_p: int) -> FoundationalLinkage:
    """A V(D)-compressed relinkage of q on V(D), re-attached per bag via
    bridge stabilisation; the region G_D shrinks monotonically."""
    lam0 = frozenset(block_d)
    gamma = auxiliary_graph(sd, p)
    theta = p.theta
    for a in sorted(p.lam - lam0):
        nb_theta = {b for b in theta
                    if (min(a, b), max(a, b)) in gamma.edges}
        if len(nb_theta) > attachedness_p - 3:
            raise DomainError(f"neighbourhood bound fails at path {a}")
    cur = q
    prev_size = None
    for _ in range(sd.host.n + 1):
        compressed, witness = is_compressed(sd, p, cur, lam0)
        region = g_sub(sd, p, (lam0, _gamma_edges_within(sd, p, lam0)), q=cur)
        assert prev_size is None or len(region.vertices) < prev_size, \
            "compression round failed to shrink the region"
        prev_size = len(region.vertices)
        if compressed:
            assert verify_relinkage(sd, p, q, cur, lam0)
            return cur
        region_graph = Graph(sd.host.n, region.edges)
        xs = region.vertices & sd.first_adhesion
        ys = region.vertices & sd.last_adhesion
        value, new_paths = disjoint_set_paths(region_graph, set(xs), set(ys),
                                              removed={witness})
        assert value == len(lam0)
        new_paths = sorted(new_paths, key=lambda pp: pp.first)
        replaced = list(cur.paths)
        starts = {p.alpha_vertex(a, sd.first_adhesion): a
                  for a in sorted(lam0)}
        for pp in new_paths:
            replaced[starts[pp.first]] = pp
        candidate = FoundationalLinkage(replaced)
        # Re-attach per bag (the make-attached step folded in).
        stabilised: dict[int, list[VPath]] = {}
        for i in sd.inner_indices():
            bag_graph, _ = sd.bag_graph(i)
            restricted = [pp.restrict_to(sd.bags[i])
                          for pp in candidate.paths]
            stabilised[i] = bridge_stabilisation(bag_graph, restricted)
        cur = _splice_linkage(sd, candidate, stabilised)
        for a in range(cur.q):
            if a not in lam0:
                assert cur.paths[a] == q.paths[a], \
                    "re-attachment moved a path off the block"
    raise AssertionError("compression failed to converge")


# ---------------------------------------------------------------------------
# Richness diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RichnessReport:
    alpha: int
    qualifying: tuple[int, ...]
    average_degree: Optional[float]
    epsilon: Optional[float]
    threshold: Optional[float]
    rich: bool
    note: str = ""


def richness_report(sd: SlimDecomposition, p: FoundationalLinkage,
                    gamma_sub: tuple[frozenset[int], Iterable], alpha: int) -> RichnessReport:
    """Average degree of the boundary-relevant inner vertices of P_alpha in
    G_Gamma^P against 2 + |N_Gamma(alpha)| (2 + eps_alpha)."""
    if alpha not in p.lam:
        raise DomainError("alpha must index a non-trivial path")
    gamma_full = auxiliary_graph(sd, p)
    n_lam = {b for b in p.lam
             if (min(alpha, b), max(alpha, b)) in gamma_full.edges}
    eps = 1 / len(n_lam) if n_lam else None
    gv, ge = frozenset(gamma_sub[0]), list(gamma_sub[1])
    region = g_sub(sd, p, (gv, ge))
    lam_region = g_lambda(sd, p)
    outside = lam_region.vertices - region.vertices
    path = p.paths[alpha]
    region_adj = {v: set() for v in region.vertices}
    for u, v in region.edges:
        region_adj[u].add(v)
        region_adj[v].add(u)
    qualifying = []
    for v in path.inner_vertices():
        sees_out = bool(sd.host.neighbors(v) & outside)
        sees_in = bool(region_adj.get(v, set()) - path.vertex_set)
        if sees_out and sees_in:
            qualifying.append(v)
    n_gamma_alpha = {b for b in gv
                     if tuple(sorted((alpha, b))) in
                     {tuple(sorted(e)) for e in ge}}
    if eps is None:
        return RichnessReport(alpha, tuple(qualifying), None, None, None,
                              False, "epsilon undefined: no lambda neighbours")
    threshold = 2 + len(n_gamma_alpha) * (2 + eps)
    if not qualifying:
        return RichnessReport(alpha, (), None, eps, threshold, True,
                              "vacuously rich: no qualifying vertices")
    avg = sum(len(region_adj[v]) for v in qualifying) / len(qualifying)
    return RichnessReport(alpha, tuple(qualifying), avg, eps, threshold,
                          avg >= threshold)
