"""Exact disjoint-paths search, k-linkedness testing, the movement-to-
linkage compiler, and linking through a complete-bipartite subdivision.

disjoint_paths is an exhaustive backtracking solver with connectivity
pruning, exact up to a vertex guard.  movement_to_linkage compiles a token
movement on a subgraph of the auxiliary graph into vertex-disjoint paths
inside the corresponding region of the host graph, two bags per move.
link_via_bipartite_subdivision follows the constructive proof that a
2k-connected graph containing a subdivided K_{2k,2k} is k-linked: a fan
system to the branch vertex sets using as few edges outside the subdivision
as possible, then connector paths chosen from the unused rows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph_core import (
    DomainError,
    Graph,
    GuardExceeded,
    VPath,
    _FlowNet,
    bfs_path,
    connectivity,
    paths_disjoint,
    reachable_from,
)
from .decomposition import (
    FoundationalLinkage,
    SlimDecomposition,
    g_sub,
)
from .token_game.movements import (
    INF,
    ZERO,
    Movement,
    induced_pairing,
    is_singular,
)

DISJOINT_PATHS_GUARD = 16


@dataclass(frozen=True)
class LinkageProblem:
    graph: Graph
    pairs: tuple[tuple[int, int], ...]

    def __init__(self, graph: Graph, pairs: Iterable[tuple[int, int]]):
        ps = tuple((int(s), int(t)) for s, t in pairs)
        terminals = [v for st in ps for v in st]
        if len(set(terminals)) != len(terminals):
            raise DomainError("terminals must be pairwise distinct")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "pairs", ps)


def disjoint_paths(problem: LinkageProblem,
                   guard: int = DISJOINT_PATHS_GUARD,
                   order_hint: Optional[Sequence[int]] = None
                   ) -> Optional[list[VPath]]:
    """Pairwise vertex-disjoint s_i-t_i paths, or None (exhaustive).

    Raises GuardExceeded when the graph is larger than the guard.
    """
    g = problem.graph
    if g.n > guard:
        raise GuardExceeded(f"{g.n} vertices exceed the guard {guard}")
    pairs = list(problem.pairs)
    if order_hint is not None:
        pairs = [pairs[i] for i in order_hint]
    terminals = {v for st in pairs for v in st}

    def feasible(used: set[int], idx: int) -> bool:
        # Every remaining pair must still be connectable.
        for s, t in pairs[idx:]:
            blocked = (used | terminals) - {s, t}
            if t not in reachable_from(g.adj, [s], blocked):
                return False
        return True

    solution: list[VPath] = []

    def solve(idx: int, used: set[int]) -> bool:
        if idx == len(pairs):
            return True
        s, t = pairs[idx]
        stack = [(s, (s,))]
        while stack:
            v, walk = stack.pop()
            if v == t:
                path = VPath(walk)
                solution.append(path)
                if feasible(used | path.vertex_set, idx + 1) and \
                        solve(idx + 1, used | path.vertex_set):
                    return True
                solution.pop()
                continue
            for w in sorted(g.neighbors(v), reverse=True):
                if w in used or w in walk:
                    continue
                if w in terminals and w != t:
                    continue
                stack.append((w, walk + (w,)))
        return False

    if not feasible(set(), 0):
        return None
    if solve(0, set()):
        out = {p.first: p for p in solution}
        ordered = [out[s] for s, _ in problem.pairs]
        assert paths_disjoint(ordered)
        return ordered
    return None


def is_k_linked(g: Graph, k: int,
                guard: int = DISJOINT_PATHS_GUARD
                ) -> tuple[bool, Optional[tuple]]:
    """Exhaustive over all terminal systems; returns (verdict, witness).

    The witness is a failing pair tuple when not k-linked.
    """
    if 2 * k > g.n:
        raise DomainError("not enough vertices for 2k distinct terminals")
    for chosen in itertools.combinations(range(g.n), 2 * k):
        for pairs in _perfect_matchings(chosen):
            if disjoint_paths(LinkageProblem(g, pairs), guard) is None:
                return False, tuple(pairs)
    return True, None


def _perfect_matchings(vs: Sequence[int]):
    vs = list(vs)
    if not vs:
        yield []
        return
    a = vs[0]
    for i in range(1, len(vs)):
        b = vs[i]
        rest = vs[1:i] + vs[i + 1:]
        for m in _perfect_matchings(rest):
            yield [(a, b)] + m


# ---------------------------------------------------------------------------
# The movement-to-linkage compiler
# ---------------------------------------------------------------------------

def movement_to_linkage(sd: SlimDecomposition, p: FoundationalLinkage,
                        gamma_sub: tuple[Iterable[int], Iterable],
                        m: Movement, a_index: int, b_index: int):
    """Compile a movement on a subgraph of the auxiliary graph into disjoint
    paths of the host, consuming two inner bags per move.

    Returns (paths, mapping) where mapping pairs each induced-pairing edge
    with its path: the path ends at the left alpha-vertex of bag a iff
    (alpha, 0) lies on the edge, and at the right alpha-vertex of bag b iff
    (alpha, inf) does.
    """
    gv = frozenset(gamma_sub[0])
    ge = {tuple(sorted(e)) for e in gamma_sub[1]}
    n = m.length
    if n == 0:
        raise DomainError("movement must have at least one move")
    if b_index - a_index != 2 * n - 1:
        raise DomainError("need exactly two bags per move")
    if a_index < 1 or b_index > sd.length - 1:
        raise DomainError("bag range must be inner")
    for t in sorted(p.theta):
        if not is_singular(m, t):
            raise DomainError(f"trivial path index {t} is not singular")
    for mv in m.moves:
        if not (mv.vertex_set <= gv):
            raise DomainError("movement leaves the prescribed subgraph")
        if not all(tuple(sorted(e)) in ge
                   for e in zip(mv.vertices, mv.vertices[1:])):
            raise DomainError("move uses a non-edge of the subgraph")

    theta_vertices = {p.paths[t].first for t in p.theta}

    def left_v(alpha: int, bag: int) -> int:
        return p.alpha_vertex(alpha, sd.adhesion_set(bag))

    def right_v(alpha: int, bag: int) -> int:
        return p.alpha_vertex(alpha, sd.adhesion_set(bag + 1))

    # Per-move pieces keyed by timeline edges ((alpha, level), (beta, level)).
    piece: dict[tuple, VPath] = {}
    for i in range(1, n + 1):
        c = a_index + 2 * (i - 1)
        prev, cur = m.configs[i - 1], m.configs[i]
        mv = m.moves[i - 1]
        u, w = mv.first, mv.last
        span = sd.bag_union(c, c + 1)
        for gma in sorted(prev & cur):
            piece[((gma, i - 1), (gma, i))] = \
                p.paths[gma].restrict_to(span).between(left_v(gma, c),
                                                       right_v(gma, c + 1))
        lu = i - 1 if u in prev else i
        lw = i - 1 if w in prev else i
        q_path = _crossing_path(sd, p, gv, ge, m, i, c,
                                theta_vertices, u, w, lu, lw,
                                left_v, right_v)
        piece[((u, lu), (w, lw))] = q_path

    # Walk the timeline components (as in the induced pairing) and
    # concatenate the pieces.
    adj: dict[tuple, list[tuple]] = {}
    for (x, y) in piece:
        adj.setdefault(x, []).append(y)
        adj.setdefault(y, []).append(x)
    boundary = [(v, 0) for v in sorted(m.first_config)] + \
        [(v, n) for v in sorted(m.last_config)]
    L = induced_pairing(m)
    paths = []
    mapping = []
    seen: set[tuple] = set()
    for start in boundary:
        if start in seen:
            continue
        seen.add(start)
        walk = None
        prev_node, node = None, start
        while True:
            nbrs = list(adj[node])
            if prev_node is not None:
                nbrs.remove(prev_node)
            nxt = nbrs[0]
            key = (node, nxt) if (node, nxt) in piece else (nxt, node)
            seg = piece[key]
            if walk is None:
                walk = seg if key[0] == node else seg.reverse()
            else:
                seg = seg if seg.first == walk.last else seg.reverse()
                walk = walk.concat(seg)
            prev_node, node = node, nxt
            seen.add(node)
            if len(adj[node]) == 1 and node != start:
                break
        a_ep = (start[0], ZERO if start[1] == 0 else INF)
        b_ep = (node[0], ZERO if node[1] == 0 else INF)
        edge = frozenset({a_ep, b_ep})
        assert edge in L.edges
        paths.append(walk)
        mapping.append((edge, walk))

    assert paths_disjoint(paths), "compiled paths collide"
    region = g_sub(sd, p, (gv, ge))
    span = sd.bag_union(a_index, b_index)
    for path in paths:
        assert path.vertex_set <= (region.vertices & span), \
            "compiled path leaves the movement region"
    for edge, path in mapping:
        for (alpha, side) in edge:
            want = left_v(alpha, a_index) if side == ZERO \
                else right_v(alpha, b_index)
            assert want in (path.first, path.last)
    return paths, mapping


def _crossing_path(sd, p, gv, ge, m, i, c, theta_vertices, u, w, lu, lw,
                   left_v, right_v) -> VPath:
    """The path realising move i inside bags c, c+1."""
    prev, cur = m.configs[i - 1], m.configs[i]
    mv = m.moves[i - 1]
    # Region: the two end paths across both bags, the interior hop paths and
    # selected bridges inside bag c only.
    sub_edges = {tuple(sorted(e)) for e in zip(mv.vertices, mv.vertices[1:])}
    move_region = g_sub(sd, p, (mv.vertex_set, sub_edges))
    bag_c = sd.bags[c]
    span = sd.bag_union(c, c + 1)
    verts = set(move_region.vertices & bag_c)
    edges = {e for e in move_region.edges
             if e[0] in bag_c and e[1] in bag_c}
    for alpha in (u, w):
        pa = p.paths[alpha].restrict_to(span)
        verts |= pa.vertex_set
        edges |= pa.edge_set()
    adj: dict[int, set[int]] = {v: set() for v in verts}
    for x, y in edges:
        adj[x].add(y)
        adj[y].add(x)

    if lu == i - 1 and lw == i - 1:        # destruction
        start, goal = left_v(u, c), left_v(w, c)
    elif lu == i and lw == i:              # creation
        start, goal = right_v(u, c + 1), right_v(w, c + 1)
    else:                                  # slide
        start = left_v(u, c) if lu == i - 1 else left_v(w, c)
        goal = right_v(w, c + 1) if lw == i else right_v(u, c + 1)

    forbidden = set(theta_vertices) - {start, goal}
    retained = prev & cur
    for gma in retained:
        forbidden |= p.paths[gma].restrict_to(span).vertex_set
    forbidden |= set(sd.adhesion_set(c + 2)) - {start, goal}
    path = bfs_path(adj, [start], {goal}, forbidden - {start, goal})
    assert path is not None, \
        f"no crossing path for move {i} between bags {c}, {c + 1}"
    return path


# ---------------------------------------------------------------------------
# Complete bipartite subdivisions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BipartiteSubdivisionWitness:
    a_side: tuple[int, ...]
    b_side: tuple[int, ...]
    connecting_paths: tuple[VPath, ...]   # one a-b path per (a, b) pair

    def path_for(self, a: int, b: int) -> VPath:
        for q in self.connecting_paths:
            if {q.first, q.last} == {a, b}:
                return q if q.first == a else q.reverse()
        raise KeyError((a, b))

    def to_json_obj(self) -> dict:
        return {"a_side": list(self.a_side), "b_side": list(self.b_side),
                "paths": [list(q.vertices) for q in self.connecting_paths]}

    @staticmethod
    def from_json_obj(data: dict) -> "BipartiteSubdivisionWitness":
        return BipartiteSubdivisionWitness(
            tuple(int(v) for v in data["a_side"]),
            tuple(int(v) for v in data["b_side"]),
            tuple(VPath(p) for p in data["paths"]))


def verify_bipartite_subdivision(g: Graph, w: BipartiteSubdivisionWitness,
                                 a: int, p: int) -> bool:
    """Internally disjoint a-b paths, one per pair, forming a K_{a,p}
    subdivision with the given branch vertex sets."""
    a_side, b_side = set(w.a_side), set(w.b_side)
    if len(a_side) != a or len(b_side) != p or (a_side & b_side):
        return False
    want = {frozenset((x, y)) for x in a_side for y in b_side}
    got = set()
    inner_seen: set[int] = set()
    for q in w.connecting_paths:
        if not q.valid_in(g):
            return False
        ends = frozenset((q.first, q.last))
        if ends not in want or ends in got:
            return False
        got.add(ends)
        inner = set(q.inner_vertices())
        if inner & (a_side | b_side):
            return False
        if inner & inner_seen:
            return False
        inner_seen |= inner
    return got == want


def link_via_bipartite_subdivision(g: Graph, w: BipartiteSubdivisionWitness,
                                   problem: LinkageProblem) -> list[VPath]:
    """k disjoint terminal-linking paths from a K_{2k,2k} subdivision."""
    k = len(problem.pairs)
    if connectivity(g) < 2 * k:
        raise DomainError("graph is not 2k-connected")
    if not verify_bipartite_subdivision(g, w, 2 * k, 2 * k):
        raise DomainError("witness fails verification")
    s_vs = [s for s, _ in problem.pairs]
    t_vs = [t for _, t in problem.pairs]
    terminals = set(s_vs) | set(t_vs)
    ab = set(w.a_side) | set(w.b_side)
    q_edges = set()
    for qp in w.connecting_paths:
        q_edges |= qp.edge_set()

    # Fan system: 2k disjoint terminal-to-(A u B) paths with as few edges
    # outside the subdivision as possible (exact via min-cost flow).
    net = _FlowNet(g, set(terminals), set(ab), absorbing=set(ab),
                   edge_cost=lambda x, y: 0 if (min(x, y), max(x, y))
                   in q_edges else 1)
    value, _cost = net.min_cost_max_flow()
    if value < 2 * k:
        raise DomainError("no full fan system to the branch vertices")
    fan_paths = net.decompose_paths()
    assert len(fan_paths) == 2 * k
    by_terminal = {q.first: q for q in fan_paths}
    assert set(by_terminal) == terminals

    a1 = {q.last for q in fan_paths} & set(w.a_side)
    b1 = {q.last for q in fan_paths} & set(w.b_side)
    a0 = [v for v in w.a_side if v not in a1]
    b0 = [v for v in w.b_side if v not in b1]
    fan_vertices = set()
    for q in fan_paths:
        fan_vertices |= q.vertex_set

    # Sparsity of the minimal fan system over the subdivision rows.
    for x in a0:
        for y in b0:
            row = w.path_for(x, y)
            assert not (row.vertex_set & fan_vertices), \
                "row between unused branch vertices meets the fan system"
    for x, y in itertools.product(w.a_side, w.b_side):
        if (x in a1) != (y in b1):
            row = w.path_for(x, y)
            hit = [q for q in fan_paths if q.vertex_set & row.vertex_set]
            assert len(hit) <= 1, "half-used row met by two fan paths"

    if len(b0) < len(a0):
        # Mirror so that the larger unused side provides the meeting rows.
        mirrored = BipartiteSubdivisionWitness(
            w.b_side, w.a_side,
            tuple(q for q in w.connecting_paths))
        return link_via_bipartite_subdivision(g, mirrored, problem)
    assert len(b0) >= k
    meet = sorted(b0)[:k]
    phi = dict(zip(sorted(b1), sorted(a0)))

    links = []
    for idx, (s, t) in enumerate(problem.pairs):
        b_i = meet[idx]
        tree_edges: set[tuple[int, int]] = set()
        tree_verts: set[int] = set()
        for x in (s, t):
            fan = by_terminal[x]
            xe = fan.last
            rows = []
            if xe in set(w.a_side):
                rows.append(w.path_for(xe, b_i))
            else:
                x_a = phi[xe]
                rows.append(w.path_for(x_a, xe))
                rows.append(w.path_for(x_a, b_i))
            for part in [fan] + rows:
                tree_verts |= part.vertex_set
                tree_edges |= part.edge_set()
        adj: dict[int, set[int]] = {v: set() for v in tree_verts}
        for x, y in tree_edges:
            adj[x].add(y)
            adj[y].add(x)
        path = bfs_path(adj, [s], {t})
        assert path is not None, "terminal tree fails to connect its pair"
        links.append(path)
    assert paths_disjoint(links)
    for (s, t), path in zip(problem.pairs, links):
        assert {path.first, path.last} == {s, t}
    return links
