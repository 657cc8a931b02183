"""Constructive movement synthesizers with guaranteed length bounds.

Each solver realises a requested pairing L on (X, Y) while keeping a
marginal vertex set A singular:

* solve_simple -- balanced X-Y movement, length <= |X|, A strongly singular;
* solve_star   -- length <= 3k, via a large marginal set or an edge with
  many common marginal neighbours (the eight-case construction);
* solve_hub    -- length <= k(k+2), via a high-degree spare vertex;
* solve_block  -- length <= f(k) with f(k) = 2k + 2*n! + 4 + f(k-1), via a
  triangle-carrying block of H - A and Wilson rearrangements inside it;
* solve_wilson -- exact BFS over labelled token placements, length
  <= n!/(n-k)! on a 2-connected graph containing a triangle.

The reductions transporting an arbitrary (X, Y) instance onto convenient
sets X', Y' (at the cost of 2k extra moves) and the side flips for strongly
singular vertices are internal combinators, mirroring their role as lemmas.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable, Iterable, Optional

from ..graph_core import (
    DomainError,
    Graph,
    VPath,
    bfs_path,
    is_connected,
    reachable_from,
)
from .movements import (
    INF,
    ZERO,
    Movement,
    Pairing,
    concat_all,
    concat_movements,
    empty_movement,
    flip_vertex,
    induced_pairing,
    lift_disjoint,
    pairings_equal,
    reverse_movement,
    set_singular,
    set_strongly_singular,
    typed_movement,
    verify_movement,
)
from .oracle import reachability_oracle


def is_marginal(h: Graph, a: Iterable[int]) -> bool:
    """A is marginal if H - A is connected and nonempty and every vertex of
    A has a neighbour outside A."""
    a = set(a)
    rest = set(h.vertices()) - a
    if not rest:
        return False
    if not is_connected(h.induced(rest)):
        return False
    return all(h.neighbors(v) & rest for v in a)


def _require(cond: bool, msg: str):
    if not cond:
        raise DomainError(msg)


def _pairing_k(L: Pairing) -> int:
    total = len(L.x) + len(L.y)
    _require(total % 2 == 0, "|X| + |Y| must be even")
    return total // 2


def _path_avoiding(h: Graph, u: int, w: int, forbidden: set[int]) -> VPath:
    p = bfs_path(h.adj, [u], {w}, set(forbidden) - {u, w})
    assert p is not None, f"no {u}-{w} path avoiding {sorted(forbidden)}"
    return p


def _check_solver_output(h: Graph, m: Movement, L: Pairing, a: set[int],
                         bound: int) -> Movement:
    ok, bad = verify_movement(h, m)
    assert ok, f"solver produced an invalid move at index {bad}"
    assert pairings_equal(induced_pairing(m), L), "solver missed the pairing"
    assert set_singular(m, a), "solver broke singularity"
    assert m.length <= bound, f"length {m.length} exceeds bound {bound}"
    return m


# ---------------------------------------------------------------------------
# Simple balanced movements on a spanning tree
# ---------------------------------------------------------------------------

def _spanning_tree_with_leaves(h: Graph, a: set[int]) -> dict[int, set[int]]:
    """Spanning tree of h in which every vertex of a is a leaf."""
    rest = sorted(set(h.vertices()) - a)
    tree: dict[int, set[int]] = {v: set() for v in h.vertices()}
    seen = {rest[0]}
    frontier = [rest[0]]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(h.neighbors(u)):
                if w not in seen and w not in a:
                    seen.add(w)
                    tree[u].add(w)
                    tree[w].add(u)
                    nxt.append(w)
        frontier = nxt
    assert len(seen) == len(rest), "H - A is not connected"
    for v in sorted(a):
        anchor = min(h.neighbors(v) - a)
        tree[v].add(anchor)
        tree[anchor].add(v)
    return tree


def solve_simple(h: Graph, x: Iterable[int], y: Iterable[int],
                 a: Iterable[int]) -> Movement:
    """Balanced X-Y movement of length <= |X| with A strongly singular.

    Marginal vertices in X n Y simply keep their token for the whole
    movement, so X n Y n A need not be empty.
    """
    x, y, a = set(x), set(y), set(a)
    _require(is_connected(h.induced(h.vertices())), "graph is not connected")
    _require(is_marginal(h, a), "a is not marginal")
    _require(len(x) == len(y), "|X| != |Y|")
    tree = _spanning_tree_with_leaves(h, a)
    frozen = x & y & a
    if frozen:
        tree = {v: nbrs - frozen for v, nbrs in tree.items()
                if v not in frozen}

    def component(adj, root, banned: frozenset[int]):
        seen = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen and frozenset((u, w)) != banned:
                    seen.add(w)
                    stack.append(w)
        return seen

    def solve(verts: set[int], adj, xs: set[int], ys: set[int]) -> list[VPath]:
        if xs == ys:
            return []
        tree_edges = sorted({tuple(sorted((u, w)))
                             for u in verts for w in adj[u]})
        for u, w in tree_edges:
            side = component(adj, u, frozenset((u, w)))
            if len(xs & side) == len(ys & side):
                other = verts - side
                adj1 = {v: adj[v] & side for v in side}
                adj2 = {v: adj[v] & other for v in other}
                return solve(side, adj1, xs & side, ys & side) + \
                    solve(other, adj2, xs & other, ys & other)
        # No balanced progress edge: take a sink leaf y in Y \ X.
        sink = None
        for v in sorted(verts):
            if len(adj[v]) == 1 and v in ys and v not in xs:
                (w,) = adj[v]
                side = component(adj, w, frozenset((v, w)))
                if len(xs & side) > len(ys & side):
                    sink = v
                    break
        assert sink is not None, "no sink leaf found"
        path = bfs_path(adj, [sink], xs)
        assert path is not None
        move = path.reverse()  # from the nearest X-vertex to the sink
        mover = move.first
        rest_verts = verts - {sink}
        rest_adj = {v: adj[v] - {sink} for v in rest_verts}
        return [move] + solve(rest_verts, rest_adj, xs - {mover}, ys - {sink})

    moves = solve(set(h.vertices()) - frozen, tree, x - frozen, y - frozen)
    m = typed_movement(frozenset(x - frozen), [(p, "slide") for p in moves])
    m = lift_disjoint(m, frozen)
    assert m.last_config == frozenset(y)
    ok, bad = verify_movement(h, m)
    assert ok, f"simple mover broke axiom at move {bad}"
    assert m.length <= len(x)
    assert induced_pairing(m).is_balanced
    assert set_strongly_singular(m, a)
    return m


# ---------------------------------------------------------------------------
# Combinators: transporting X, Y and flipping sides
# ---------------------------------------------------------------------------

def _relabel_pairing(L: Pairing, phi_x: dict[int, int],
                     phi_y_inv: dict[int, int]) -> Pairing:
    def mp(ep):
        v, side = ep
        return (phi_x[v], ZERO) if side == ZERO else (phi_y_inv[v], INF)

    return Pairing([phi_x[v] for v in L.x], [phi_y_inv[v] for v in L.y],
                   [[mp(a), mp(b)] for e in L.edges for a, b in [tuple(e)]])


def _via_choose_xy(h: Graph, a: set[int], L: Pairing,
                   xp: set[int], yp: set[int],
                   inner: Callable[[Pairing], Movement]) -> Movement:
    """Shuttle X to X' and Y' to Y with the simple mover and run the inner
    solver in between; adds at most |X| + |Y| = 2k moves."""
    mx = solve_simple(h, L.x, xp, a)
    my = solve_simple(h, yp, L.y, a)
    phi_x = induced_pairing(mx).bijection()
    phi_y_inv = {w: v for v, w in induced_pairing(my).bijection().items()}
    lp = _relabel_pairing(L, phi_x, phi_y_inv)
    mid = inner(lp)
    assert mid.first_config == frozenset(xp)
    assert mid.last_config == frozenset(yp)
    full = concat_all([mx, mid, my])
    assert pairings_equal(induced_pairing(full), L)
    return full


def _unflip_all(m: Movement, flips: list[int]) -> Movement:
    for v in reversed(flips):
        m = flip_vertex(m, v)
    return m


def _tiny_pairing_movement(h: Graph, L: Pairing, a: set[int]) -> Movement:
    """Realise a single pairing edge directly (the k = 1 base case)."""
    assert len(L.edges) == 1
    (e,) = L.edges
    (p, sp), (q, sq) = sorted(e)
    if sp == ZERO and sq == ZERO:
        path = _path_avoiding(h, p, q, a)
        return typed_movement({p, q}, [(path, "destroy")])
    if sp == INF and sq == INF:
        path = _path_avoiding(h, p, q, a)
        return typed_movement(frozenset(), [(path, "create")])
    u = p if sp == ZERO else q
    w = p if sp == INF else q
    if u == w:
        return empty_movement({u})
    path = _path_avoiding(h, u, w, a)
    return typed_movement({u}, [(path, "slide")])


def _on_induced(h: Graph, keep: set[int], L: Pairing, a: set[int], run):
    """Solve a sub-instance on the induced subgraph h[keep] and translate
    the movement back to h's labels.  `run(sub, sub_L, sub_a, rel)` does the
    work on the relabeled graph."""
    order = sorted(keep)
    rel = {v: i for i, v in enumerate(order)}
    back = {i: v for v, i in rel.items()}
    sub = Graph(len(order), [(rel[u], rel[v]) for u, v in h.edges
                             if u in keep and v in keep])
    sub_L = Pairing([rel[v] for v in L.x], [rel[v] for v in L.y],
                    [[(rel[v], s) for v, s in e] for e in L.edges])
    sub_a = {rel[v] for v in a if v in keep}
    m = run(sub, sub_L, sub_a, rel)
    return Movement([[back[v] for v in c] for c in m.configs],
                    [VPath([back[v] for v in p.vertices]) for p in m.moves])


def _restricted_oracle(h: Graph, region: set[int], L: Pairing,
                       bound: int) -> Movement:
    """Shortest movement realising L using only vertices of `region`."""
    order = sorted(region)
    relabel = {v: i for i, v in enumerate(order)}
    back = {i: v for v, i in relabel.items()}
    sub = Graph(len(order), [(relabel[u], relabel[v]) for u, v in h.edges
                             if u in region and v in region])
    sub_L = Pairing([relabel[v] for v in L.x], [relabel[v] for v in L.y],
                    [[(relabel[v], s) for v, s in e] for e in L.edges])
    m = reachability_oracle(sub, sub_L.x, sub_L)
    assert m is not None, "restricted endgame infeasible"
    out = Movement([[back[v] for v in c] for c in m.configs],
                   [VPath([back[v] for v in p.vertices]) for p in m.moves])
    assert out.length <= bound, f"endgame length {out.length} > {bound}"
    return out


# ---------------------------------------------------------------------------
# Star movements (length <= 3k)
# ---------------------------------------------------------------------------

def solve_star(h: Graph, L: Pairing, a: Iterable[int],
               n_a_override: Optional[set[int]] = None) -> Movement:
    a = set(a)
    x, y = set(L.x), set(L.y)
    k = _pairing_k(L)
    if k == 0:
        return empty_movement([])
    _require(is_connected(h.induced(h.vertices())), "graph is not connected")
    _require(is_marginal(h, a), "a is not marginal")
    _require(not (x & y & a), "X, Y and A share a vertex")
    if n_a_override is not None:
        assert len(n_a_override) == 2 * k - 1 and n_a_override <= a
        m = _star_case_a(h, L, a, set(n_a_override))
    elif len(a) >= 2 * k - 1:
        n_a = set(sorted(a, key=lambda v: (v not in (x | y), v))[: 2 * k - 1])
        m = _star_case_a(h, L, a, n_a)
    else:
        hit = None
        rest = set(h.vertices()) - a
        for v, w in sorted(h.edges):
            if v in rest and w in rest and \
                    len(h.neighbors(v) & h.neighbors(w) & a) >= 2 * k - 3:
                hit = (v, w)
                break
        _require(hit is not None, "neither star hypothesis holds")
        m = _star_case_b(h, L, a, hit)
    return _check_solver_output(h, m, L, a, 3 * k)


def _destruction_schedule(h: Graph, a: set[int],
                          pairs: list[tuple[int, int]]) -> Movement:
    """Destroy the listed token pairs in order; every path is internally
    disjoint from A, and at each step all other live tokens lie in A."""
    start = frozenset(v for pq in pairs for v in pq)
    typed = []
    live = set(start)
    for u, w in pairs:
        assert not ((live - {u, w}) - a), "non-marginal token still live"
        path = _path_avoiding(h, u, w, a | (live - {u, w}))
        assert not (set(path.inner_vertices()) & a)
        typed.append((path, "destroy"))
        live -= {u, w}
    return typed_movement(start, typed)


def _star_case_a(h: Graph, L: Pairing, a: set[int], n_a: set[int]) -> Movement:
    x, y = set(L.x), set(L.y)
    xp = set(x & n_a)
    yp = set(y & n_a)
    pool = sorted(n_a - xp - yp)
    while pool and len(xp) < len(x):
        xp.add(pool.pop(0))
    while pool and len(yp) < len(y):
        yp.add(pool.pop(0))
    assert not pool
    extra = min(v for v in h.vertices()
                if v not in a and v not in xp and v not in yp)
    extra_in_x = len(xp) < len(x)
    (xp if extra_in_x else yp).add(extra)
    assert len(xp) == len(x) and len(yp) == len(y)
    assert n_a <= xp | yp and not (xp & yp)

    def inner(lp: Pairing) -> Movement:
        work, reversed_view = (lp, False) if extra_in_x else (lp.reversed(), True)
        flips = sorted(work.y)
        for v in flips:
            work = work.flip(v)
        assert not work.y
        pairs = sorted((tuple(sorted(v for v, _ in e)) for e in work.edges))
        pairs.sort(key=lambda pq: (extra not in pq, pq))
        m = _destruction_schedule(h, a, pairs)
        m = _unflip_all(m, flips)
        return reverse_movement(m) if reversed_view else m

    return _via_choose_xy(h, a, L, xp, yp, inner)


def _star_case_b(h: Graph, L: Pairing, a: set[int],
                 vw: tuple[int, int]) -> Movement:
    k = _pairing_k(L)
    if k == 1:
        # Case a catches any nonempty marginal set when k = 1, so a = {}.
        return _tiny_pairing_movement(h, L, a)
    v, w = vw
    common = h.neighbors(v) & h.neighbors(w) & a
    x, y = set(L.x), set(L.y)
    n_a = set(sorted(common, key=lambda u: (u not in (x | y), u))[: 2 * k - 3])

    placed = _star_b_place(h, a, n_a, v, w, x, y)
    if placed is not None:
        xp, yp = placed
        return _via_choose_xy(
            h, a, L, xp, yp,
            lambda lp: _star_b_inner(h, a, n_a, v, w, lp))
    placed = _star_b_place(h, a, n_a, v, w, y, x)
    assert placed is not None, "no admissible X', Y' for the star edge case"
    xp, yp = placed
    rev = L.reversed()
    m = _via_choose_xy(
        h, a, rev, xp, yp,
        lambda lp: _star_b_inner(h, a, n_a, v, w, lp))
    return reverse_movement(m)


def _star_b_place(h: Graph, a: set[int], n_a: set[int], v: int, w: int,
                  x: set[int], y: set[int]) -> Optional[tuple[set[int], set[int]]]:
    """Place {v, w} and the common neighbours for the orientation where the
    edge sits on the X' side; the one leftover slot takes either a fresh
    vertex z (X' side) or v doing double duty (Y' side)."""
    xp = {v, w} | (x & n_a)
    yp = set(y & n_a)
    if len(xp) > len(x) or len(yp) > len(y):
        return None
    pool = sorted(n_a - xp - yp)
    while pool and len(xp) < len(x):
        xp.add(pool.pop(0))
    while pool and len(yp) < len(y):
        yp.add(pool.pop(0))
    if pool:
        return None
    if len(yp) < len(y):
        yp.add(v)
    else:
        cands = sorted(u for u in h.vertices()
                       if u not in xp and u not in yp
                       and u != v and u != w
                       and (u not in a or u in x))
        if not cands:
            return None
        xp.add(cands[0])
    if len(xp) != len(x) or len(yp) != len(y):
        return None
    return xp, yp


def _star_b_inner(h: Graph, a: set[int], n_a: set[int], v: int, w: int,
                  lp: Pairing) -> Movement:
    """The eight-case construction around the edge vw.

    After flipping the common-neighbour vertices onto the 0 side, the
    pairing lives on N_A x {0} plus {v, w} x {0} plus either (z, 0) for a
    fresh vertex z or (v, inf).  The cases split by which of the edges
    v-w, v-z, w-z the pairing contains (or none), times the two shapes."""
    flips = sorted(lp.y & frozenset(n_a))
    work = lp
    for u in flips:
        work = work.flip(u)
    assert work.y <= {v}

    def partner_of(u: int):
        return tuple(work.partner((u, ZERO)))

    def pair_vertices(e):
        return tuple(sorted(q for q, _ in e))

    typed: list[tuple[VPath, str]] = []
    live = set(work.x)

    def destroy(p: int, q: int, via: Optional[int] = None):
        if via is not None:
            path = VPath([p, via, q])
        elif h.has_edge(p, q):
            path = VPath([p, q])
        else:
            path = _path_avoiding(h, p, q, a | (live - {p, q}))
        assert not (set(path.inner_vertices()) & a)
        assert not (set(path.inner_vertices()) & live)
        typed.append((path, "destroy"))
        live.difference_update((p, q))

    hub_pairs = []
    specials: list[tuple[int, int]] = []
    slide_to_v: Optional[int] = None       # token that finally slides onto v
    v_sits = False
    for e in sorted(work.edges, key=lambda e: sorted(map(repr, e))):
        ends = sorted(e)
        if (v, INF) in e:
            (other, side) = [ep for ep in ends if ep != (v, INF)][0]
            if other == v and side == ZERO:
                v_sits = True
            else:
                slide_to_v = other
            continue
        p, q = pair_vertices(e)
        if {p, q} <= n_a:
            hub_pairs.append((p, q))
        else:
            specials.append((p, q))

    # Order the special pairs: destructions that are direct edges at v or w
    # go first (v's before w's, freeing the hub), and pairs reaching outside
    # N_A u {v, w} go last, once their BFS route meets no live vertex
    # outside A any more.
    def special_key(pq):
        if set(pq) <= n_a | {v, w}:
            return (0, v not in pq, pq)
        return (1, pq)

    specials.sort(key=special_key)
    hub = w if v_sits else v
    for p, q in specials:
        destroy(p, q)
    for p, q in sorted(hub_pairs):
        assert hub not in live
        destroy(p, q, via=hub)
    if slide_to_v is not None:
        path = VPath([slide_to_v, v]) if h.has_edge(slide_to_v, v) else \
            _path_avoiding(h, slide_to_v, v, a | (live - {slide_to_v}))
        typed.append((path, "slide"))
        live.discard(slide_to_v)
        live.add(v)
    m = typed_movement(frozenset(work.x), typed)
    assert m.last_config == frozenset(work.y)
    return _unflip_all(m, flips)


# ---------------------------------------------------------------------------
# Hub movements (length <= k(k+2))
# ---------------------------------------------------------------------------

def solve_hub(h: Graph, L: Pairing, a: Iterable[int], v: int) -> Movement:
    a = set(a)
    x, y = set(L.x), set(L.y)
    k = _pairing_k(L)
    if k == 0:
        return empty_movement([])
    _require(is_connected(h.induced(h.vertices())), "graph is not connected")
    _require(is_marginal(h, a), "a is not marginal")
    _require(not (x & y & a), "X, Y and A share a vertex")
    _require(v not in x | y | a, "hub vertex must avoid X, Y and A")
    n_a = h.neighbors(v) & a
    n_b = h.neighbors(v) - a
    _require(2 * len(n_b) + len(n_a) >= 2 * k + 1,
             "hub degree inequality fails")
    m = _hub_full(h, L, a, v)
    return _check_solver_output(h, m, L, a, k * (k + 2))


def _hub_full(h: Graph, L: Pairing, a: set[int], v: int) -> Movement:
    """The strengthened hub lemma: besides A-singularity, every vertex of A
    that is not strongly singular lies in (N(v) n A) - (X u Y)."""
    k = _pairing_k(L)
    if k == 0:
        return empty_movement([])
    x, y = set(L.x), set(L.y)
    n_a = h.neighbors(v) & a
    n_b = h.neighbors(v) - a
    if len(n_a) >= 2 * k - 1:
        pref = sorted(n_a, key=lambda u: (u not in (x | y), u))[: 2 * k - 1]
        return solve_star(h, L, a, n_a_override=set(pref))
    if k == 1:
        return _tiny_pairing_movement(h, L, a)
    xp, yp = _choose_hub_sets(h, a, v, n_a, n_b, x, y)
    return _via_choose_xy(h, a, L, xp, yp,
                          lambda lp: _hub_inner(h, a, v, lp))


def _conditions_hub(h, a, v, n_a, n_b, x, y, xp, yp) -> bool:
    return (
        x & n_a <= xp and xp & a <= x | n_a
        and y & n_a <= yp and yp & a <= y | n_a
        and n_a <= xp | yp and not (xp & yp & a)
        and (n_b <= xp or xp < n_a | n_b)
        and (n_b <= yp or yp < n_a | n_b)
        and v not in xp and v not in yp
    )


def _choose_hub_sets(h, a, v, n_a, n_b, x, y):
    """First admissible (X', Y') in lexicographic order."""
    verts = [u for u in h.vertices() if u != v]
    for xp in itertools.combinations(verts, len(x)):
        xps = set(xp)
        if not (x & n_a <= xps and xps & a <= x | n_a):
            continue
        if not (n_b <= xps or xps < n_a | n_b):
            continue
        rest_forced = n_a - xps
        for yp in itertools.combinations(verts, len(y)):
            yps = set(yp)
            if not _conditions_hub(h, a, v, n_a, n_b, x, y, xps, yps):
                continue
            assert rest_forced <= yps
            return xps, yps
    raise AssertionError("no admissible X', Y' for the hub lemma")


def _hub_inner(h: Graph, a: set[int], v: int, lp: Pairing) -> Movement:
    """L'-movement of length <= k*k with A strongly singular; the chooser
    guarantees N(v) n A n V(h) is inside X' u Y'."""
    k = _pairing_k(lp)
    if k == 0:
        return empty_movement(lp.x)
    n_a = h.neighbors(v) & a
    n_b = h.neighbors(v) - a
    nv = h.neighbors(v)
    flips: list[int] = []
    work = lp
    while True:
        hit = None
        for e in sorted(work.edges, key=lambda e: sorted(map(repr, e))):
            zeros = sorted(v for v, s in e if s == ZERO)
            infs = sorted(v for v, s in e if s == INF)
            if len(zeros) == 2 and all(u in nv for u in zeros):
                hit = ("destroy", e, zeros[0], zeros[1])
                break
            if len(infs) == 2 and all(u in nv for u in infs):
                hit = ("create", e, infs[0], infs[1])
                break
            if len(zeros) == 1 and len(infs) == 1 and \
                    zeros[0] in nv and infs[0] in nv and \
                    (zeros[0] in n_a or infs[0] in n_a):
                hit = ("flip", e, zeros[0], infs[0])
                break
        if hit is None:
            break
        kind, e, p, q = hit
        if kind == "flip":
            u = q if q in n_a else p
            work = work.flip(u)
            flips.append(u)
            continue
        rest_pairing = work.drop_edge(e)
        deleted = a - (set(rest_pairing.x) | set(rest_pairing.y))
        keep = set(h.vertices()) - deleted
        sub_na = (h.neighbors(v) & a) - deleted
        sub_nb = (h.neighbors(v) - a) - deleted
        assert 2 * len(sub_nb) + len(sub_na) >= 2 * (k - 1) + 1
        rest = _on_induced(
            h, keep, rest_pairing, a,
            lambda sub, sl, sa, rel: _hub_full(sub, sl, sa, rel[v]))
        assert set_strongly_singular(rest, a - deleted)
        if kind == "destroy":
            prefix = typed_movement(work.x, [(VPath([p, v, q]), "destroy")])
            m = concat_movements(prefix, rest)
        else:
            suffix = typed_movement(rest_pairing.y,
                                    [(VPath([p, v, q]), "create")])
            m = concat_movements(rest, suffix)
        m = _unflip_all(m, flips)
        assert m.length <= k * k
        return m
    # Endgame: no reducible pair is left, so the pairing is balanced on
    # subsets of N(v) - A; route tokens through the star around v.
    assert work.is_balanced, "irreducible unbalanced hub pairing"
    assert work.x <= n_b and work.y <= n_b, "irreducible tokens off the star"
    assert len(n_b) >= k + 1
    m = _restricted_oracle(h, {v} | set(n_b), work, 2 * k)
    m = _unflip_all(m, flips)
    assert m.length <= k * k
    return m


# ---------------------------------------------------------------------------
# Block movements (length <= f(k))
# ---------------------------------------------------------------------------

def block_length_budget(n_cap: int, k: int) -> int:
    """f(0) = 0 and f(k) = 2k + 2*n! + 4 + f(k-1)."""
    total = 0
    for i in range(1, k + 1):
        total += 2 * i + 2 * math.factorial(n_cap) + 4
    return total


def solve_block(h: Graph, L: Pairing, a: Iterable[int],
                d: Iterable[int], n_cap: int) -> Movement:
    from ..graph_core import blocks as _blocks

    a = set(a)
    d = frozenset(d)
    x, y = set(L.x), set(L.y)
    k = _pairing_k(L)
    if k == 0:
        return empty_movement([])
    _require(is_connected(h.induced(h.vertices())), "graph is not connected")
    _require(h.n <= n_cap, "graph exceeds the declared size cap")
    _require(is_marginal(h, a), "a is not marginal")
    _require(not (x & y & a), "X, Y and A share a vertex")
    rest = set(h.vertices()) - a
    sub = h.induced(rest)
    blks, _ = _blocks(Graph(h.n, sub.edges))
    blks = [b for b in blks if b and (b <= rest)]
    _require(any(b == d for b in blks), "d is not a block of H - A")
    _require(_has_triangle(h, d), "block contains no triangle")
    n_d = _block_neighborhood(h, d)
    _require(2 * len(d) + len(n_d) >= 2 * k + 3,
             "block size inequality fails")
    _require(not rest <= x and not rest <= y,
             "X or Y swallows all of H - A")
    m = _block_full(h, L, a, d, n_cap)
    return _check_solver_output(h, m, L, a, block_length_budget(n_cap, k))


def _has_triangle(h: Graph, d: frozenset[int]) -> bool:
    for u, w in h.edges:
        if u in d and w in d and (h.neighbors(u) & h.neighbors(w) & d):
            return True
    return False


def _block_neighborhood(h: Graph, d: frozenset[int]) -> set[int]:
    out = set()
    for u in d:
        out |= h.neighbors(u) - d
    return out


def _block_full(h: Graph, L: Pairing, a: set[int], d: frozenset[int],
                n_cap: int) -> Movement:
    k = _pairing_k(L)
    if k == 0:
        return empty_movement([])
    x, y = set(L.x), set(L.y)
    n_d = _block_neighborhood(h, d)
    n_a = n_d & a
    n_b = n_d - a
    if len(n_a) >= 2 * k - 1:
        pref = sorted(n_a, key=lambda u: (u not in (x | y), u))[: 2 * k - 1]
        return solve_star(h, L, a, n_a_override=set(pref))
    if k == 1:
        return _tiny_pairing_movement(h, L, a)
    v, xp, yp = _choose_block_sets(h, a, d, n_a, n_b, x, y)
    return _via_choose_xy(h, a, L, xp, yp,
                          lambda lp: _block_inner(h, a, d, v, n_cap, lp))


def _choose_block_sets(h, a, d, n_a, n_b, x, y):
    dn = set(d) | n_a | n_b
    for v in sorted(d):
        verts = [u for u in h.vertices() if u != v]
        for xp in itertools.combinations(verts, len(x)):
            xps = set(xp)
            if not (x & n_a <= xps and xps & a <= x | n_a):
                continue
            if not (n_b <= xps or xps < n_a | n_b):
                continue
            if not (set(d) | n_b <= xps | {v} or xps < dn):
                continue
            for yp in itertools.combinations(verts, len(y)):
                yps = set(yp)
                if not (y & n_a <= yps and yps & a <= y | n_a):
                    continue
                if not (n_a <= xps | yps and not (xps & yps & a)):
                    continue
                if not (n_b <= yps or yps < n_a | n_b):
                    continue
                if not (set(d) | n_b <= yps | {v} or yps < dn):
                    continue
                return v, xps, yps
    raise AssertionError("no admissible (v, X', Y') for the block lemma")


def _block_inner(h: Graph, a: set[int], d: frozenset[int], v: int,
                 n_cap: int, lp: Pairing) -> Movement:
    """L'-movement of length <= f(k) - 2k keeping A strongly singular."""
    k = _pairing_k(lp)
    if k == 0:
        return empty_movement(lp.x)
    n_d = _block_neighborhood(h, d)
    n_a = n_d & a
    flips: list[int] = []
    work = lp
    # Flip slides from the block onto marginal block-neighbours.
    changed = True
    while changed:
        changed = False
        for e in sorted(work.edges, key=lambda e: sorted(map(repr, e))):
            zeros = [v for v, s in e if s == ZERO]
            infs = [v for v, s in e if s == INF]
            if len(zeros) != 1 or len(infs) != 1:
                continue
            # Any slide touching a marginal block-neighbour flips onto one
            # side, leaving a destruction (or, mirrored, a creation).
            if infs[0] in n_a:
                work = work.flip(infs[0])
                flips.append(infs[0])
                changed = True
                break
            if zeros[0] in n_a:
                work = work.flip(zeros[0])
                flips.append(zeros[0])
                changed = True
                break
    hit = _find_block_destruction(work, d, n_d)
    if hit is not None:
        m = _core_d_edge(h, a, d, n_cap, work, hit, k)
        return _unflip_all(m, flips)
    hit = _find_nd_destruction(work, d, n_d)
    if hit is not None:
        m = _core_nd_edge(h, a, d, n_cap, work, hit, k)
        return _unflip_all(m, flips)
    rev = work.reversed()

    def rev_flippable(e):
        zeros = [u for u, s in e if s == ZERO]
        infs = [u for u, s in e if s == INF]
        return len(zeros) == 1 and len(infs) == 1 and \
            zeros[0] in d and infs[0] in n_a

    if _find_block_destruction(rev, d, n_d) is not None or \
            _find_nd_destruction(rev, d, n_d) is not None or \
            any(rev_flippable(e) for e in rev.edges):
        m = reverse_movement(_block_inner(h, a, d, v, n_cap, rev))
        return _unflip_all(m, flips)
    # Both sides irreducible: the pairing is balanced and lives on
    # V(D) u N_B entirely.
    assert work.is_balanced, "irreducible unbalanced block pairing"
    n_b = n_d - a
    assert work.x <= set(d) | n_b and work.y <= set(d) | n_b, \
        "irreducible block tokens stray off D and N_B"
    m = _block_balanced(h, a, d, n_cap, work, frozenset())
    return _unflip_all(m, flips)


def _is_slide(e) -> bool:
    sides = sorted(s for _, s in e)
    return sides == [ZERO, INF]


def _find_block_destruction(L: Pairing, d, n_d):
    for e in sorted(L.edges, key=lambda e: sorted(map(repr, e))):
        (p, sp), (q, sq) = sorted(e)
        if sp == ZERO and sq == ZERO:
            if (p in d and (q in d or q in n_d)) or \
                    (q in d and (p in d or p in n_d)):
                return e
    return None


def _find_nd_destruction(L: Pairing, d, n_d):
    for e in sorted(L.edges, key=lambda e: sorted(map(repr, e))):
        (p, sp), (q, sq) = sorted(e)
        if sp == ZERO and sq == ZERO and p in n_d and q in n_d:
            return e
    return None


def _wilson_on_subset(h: Graph, d: frozenset[int],
                      phi: dict[int, int]) -> Movement:
    """Wilson rearrangement inside the block d, expressed on h's labels.

    The movement's configurations contain only the block tokens; callers
    lift it over the frozen outside tokens.
    """
    order = sorted(d)
    relabel = {v: i for i, v in enumerate(order)}
    back = {i: v for v, i in relabel.items()}
    sub = Graph(len(order), [(relabel[u], relabel[v]) for u, v in h.edges
                             if u in d and v in d])
    sub_phi = {relabel[u]: relabel[w] for u, w in phi.items()}
    m = solve_wilson(sub, sub_phi)
    return Movement([[back[v] for v in c] for c in m.configs],
                    [VPath([back[v] for v in p.vertices]) for p in m.moves])


def _wilson_retarget(h: Graph, d: frozenset[int], occupied: set[int],
                     d_tokens: set[int], phi: dict[int, int]) -> Movement:
    """Lifted Wilson move inside d; tokens outside d stay put."""
    assert set(phi) == d_tokens and d_tokens < d
    m = _wilson_on_subset(h, d, phi)
    outside = frozenset(occupied - d_tokens)
    return lift_disjoint(m, outside)


def _prefix_bijection(m: Movement) -> dict[int, int]:
    return induced_pairing(m).bijection()


def _core_d_edge(h: Graph, a: set[int], d: frozenset[int], n_cap: int,
                 work: Pairing, e, k: int) -> Movement:
    """Destroy a token pair with one token in the block: rearrange inside
    the block so the partners become adjacent, destroy them, recurse."""
    (p, _), (q, _) = sorted(e)
    if p in d and q not in d:
        x_end, y_end = p, q
    elif q in d and p not in d:
        x_end, y_end = q, p
    else:
        assert p in d and q in d
        x_end, y_end = p, q
    d_tokens = set(work.x) & d
    occupied = set(work.x)
    assert len(d_tokens) < len(d), "no spare block vertex for Wilson"
    if x_end in h.neighbors(y_end):
        y_prime = x_end  # the partners are already adjacent
        prefix = empty_movement(occupied)
        psi = {u: u for u in work.x}
    else:
        y_prime = sorted(h.neighbors(y_end) & d)[0]
        phi = {u: u for u in d_tokens}
        phi[x_end] = y_prime
        if y_prime in d_tokens:
            phi[y_prime] = x_end
        assert phi.get(y_end, y_end) == y_end
        prefix = _wilson_retarget(h, d, occupied, d_tokens, phi)
        psi = {u: u for u in work.x}
        psi.update(phi)
    after_wilson = frozenset(psi[u] for u in work.x)
    kill = typed_movement(after_wilson,
                          [(VPath([psi[y_end], y_prime]), "destroy")])
    rest_pairing = work.drop_edge(e).relabel_zero(
        {u: psi[u] for u in work.x if u not in (x_end, y_end)})
    deleted = a & {y_end}
    keep = set(h.vertices()) - deleted
    rest = _on_induced(
        h, keep, rest_pairing, a,
        lambda sub, sl, sa, rel: _block_full(
            sub, sl, sa, frozenset(rel[u] for u in d), n_cap))
    assert set_strongly_singular(rest, a - deleted)
    m = concat_all([prefix, kill, rest])
    assert m.length <= math.factorial(len(d)) + 1 + \
        block_length_budget(n_cap, k - 1)
    return m


def _core_nd_edge(h: Graph, a: set[int], d: frozenset[int], n_cap: int,
                  work: Pairing, e, k: int) -> Movement:
    """Destroy a pair with both tokens on the block boundary: slide one of
    them into the block first."""
    (p, _), (q, _) = sorted(e)
    y_end = q
    occupied = set(work.x)
    d_tokens = occupied & d
    assert len(d - set(work.x)) >= 2, "block too full for the boundary case"
    y_prime = sorted(h.neighbors(y_end) & d)[0]
    psi = {u: u for u in work.x}
    steps = []
    if y_prime in occupied:
        free = sorted(d - occupied)[0]
        phi = {u: u for u in d_tokens}
        phi[y_prime] = free
        steps.append(_wilson_retarget(h, d, occupied, d_tokens, phi))
        psi.update(phi)
    after = frozenset(psi[u] for u in work.x)
    steps.append(typed_movement(after, [(VPath([y_end, y_prime]), "slide")]))
    psi[y_end] = y_prime
    relabeled = work.relabel_zero(psi)
    new_edge = frozenset({(psi[p], ZERO), (y_prime, ZERO)})
    assert new_edge in relabeled.edges
    deleted = a & {y_end}
    keep = set(h.vertices()) - deleted
    rest = _on_induced(
        h, keep, relabeled, a,
        lambda sub, sl, sa, rel: _core_d_edge(
            sub, sa, frozenset(rel[u] for u in d), n_cap, sl,
            frozenset((rel[v], s) for v, s in new_edge), k))
    m = concat_all(steps + [rest])
    assert m.length <= 2 * math.factorial(len(d)) + 2 + \
        block_length_budget(n_cap, k - 1)
    return m


def _block_balanced(h: Graph, a: set[int], d: frozenset[int], n_cap: int,
                    work: Pairing, frozen: frozenset[int]) -> Movement:
    """Balanced endgame on V(D) u N_B: freeze boundary targets one at a
    time via block rearrangements, pull boundary tokens inside, and finish
    with one Wilson rearrangement."""
    n_b = _block_neighborhood(h, d) - a
    prefix: list[Movement] = []
    cur = work
    frozen = set(frozen)
    while True:
        pos_of = cur.bijection()  # balanced throughout this phase
        for u, t in pos_of.items():
            if u == t and u in n_b:
                frozen.add(u)  # boundary token already home
        active = {(u, t) for u, t in pos_of.items()
                  if not (u == t and u in frozen)}
        occupied = set(cur.x)
        if all(u in d and t in d for u, t in active):
            if active:
                d_tokens = occupied & d
                assert len(d_tokens) < len(d), "no spare block vertex"
                phi = {u: t for u, t in pos_of.items() if u in d}
                fin = _wilson_retarget(h, d, occupied, d_tokens, phi)
                assert fin.length <= math.factorial(len(d))
                prefix.append(fin)
            break
        if not any(u in d for u, t in active):
            # No block token is in play; route everything exhaustively
            # through the free block interior.
            region = set(d) | {u for u, _ in active} | \
                {t for _, t in active} | frozen
            fin = _restricted_oracle(h, region, cur, 2 * len(active) + 2)
            prefix.append(fin)
            cur = None
            break
        hit = next(((u, t) for u, t in sorted(active)
                    if u in d and t in n_b), None)
        if hit is not None:
            u, t = hit
            d_tokens = occupied & d
            y_prime = sorted(h.neighbors(t) & d)[0]
            nbrs = sorted(h.neighbors(y_prime) & d)
            assert len(nbrs) >= 2
            y_l, y_r = nbrs[0], nbrs[1]
            avoid = {y_prime} | ({y_r} if t in occupied else set())
            if len(d_tokens) > len(d) - len(avoid):
                region = set(d) | n_b | set(cur.x) | set(cur.y)
                fin = _restricted_oracle(h, region, cur,
                                         block_length_budget(h.n, len(active)))
                prefix.append(fin)
                cur = None
                break
            phi: dict[int, int] = {u: y_l}
            taken = {y_l} | avoid
            for tok in sorted(d_tokens - {u}):
                if tok not in taken:
                    phi[tok] = tok
                    taken.add(tok)
                else:
                    spot = min(s for s in d if s not in taken)
                    phi[tok] = spot
                    taken.add(spot)
            assert len(set(phi.values())) == len(phi)
            assert not (set(phi.values()) & avoid)
            steps = [_wilson_retarget(h, d, occupied, d_tokens, phi)]
            psi = {v: v for v in cur.x}
            psi.update(phi)
            after = frozenset(psi[v] for v in cur.x)
            if t in occupied:
                steps.append(typed_movement(
                    after, [(VPath([t, y_prime, y_r]), "slide")]))
                psi2 = {v: v for v in after}
                psi2[t] = y_r
                after = frozenset(psi2[v] for v in after)
                psi = {v: psi2[psi[v]] for v in psi}
            steps.append(typed_movement(
                after, [(VPath([y_l, y_prime, t]), "slide")]))
            psi3 = {v: v for v in after}
            psi3[y_l] = t
            psi = {v: psi3[psi[v]] for v in psi}
            prefix.append(concat_all(steps))
            cur = cur.relabel_zero(psi)
            frozen.add(t)
            continue
        # A boundary token: pull it into the block.
        u, t = next((u, t) for u, t in sorted(active) if u in n_b)
        d_tokens = occupied & d
        if len(d - occupied) < 2:
            # The block is too crowded to shuffle; finish exhaustively on
            # the block-plus-boundary region.
            region = set(d) | n_b | set(cur.x) | set(cur.y)
            fin = _restricted_oracle(h, region, cur,
                                     block_length_budget(h.n, len(active)))
            prefix.append(fin)
            cur = None
            break
        x_prime = sorted(h.neighbors(u) & d)[0]
        steps = []
        psi = {v: v for v in cur.x}
        if x_prime in occupied:
            free = sorted(d - occupied)[0]
            phi = {w: w for w in d_tokens}
            phi[x_prime] = free
            steps.append(_wilson_retarget(h, d, occupied, d_tokens, phi))
            psi.update(phi)
        after = frozenset(psi[v] for v in cur.x)
        steps.append(typed_movement(after, [(VPath([u, x_prime]), "slide")]))
        psi2 = {v: v for v in after}
        psi2[u] = x_prime
        psi = {v: psi2[psi[v]] for v in psi}
        prefix.append(concat_all(steps))
        cur = cur.relabel_zero(psi)
    out = concat_all(prefix) if prefix else empty_movement(work.x)
    assert out.first_config == frozenset(work.x)
    assert out.last_config == frozenset(work.y)
    return out


# ---------------------------------------------------------------------------
# Wilson's theorem as a BFS
# ---------------------------------------------------------------------------

def graph_has_triangle(h: Graph) -> bool:
    for u, w in h.edges:
        if h.neighbors(u) & h.neighbors(w):
            return True
    return False


def solve_wilson(h: Graph, phi: dict[int, int]) -> Movement:
    """Balanced movement realising the bijection phi by BFS over labelled
    token placements; length <= n!/(n-k)! on a 2-connected graph with a
    triangle."""
    from ..graph_core import connectivity

    tokens = sorted(phi)
    k = len(tokens)
    if k == 0:
        return empty_movement([])
    _require(len(set(phi.values())) == k, "phi is not injective")
    _require(k <= h.n - 1, "too many tokens")
    _require(h.n >= 3 and connectivity(h) >= 2, "graph is not 2-connected")
    _require(graph_has_triangle(h), "graph contains no triangle")
    bound = math.factorial(h.n) // math.factorial(h.n - k)
    start = tuple(tokens)
    goal = tuple(phi[t] for t in tokens)
    if start == goal:
        return empty_movement(tokens)
    seen = {start: None}
    queue = [start]
    found = False
    while queue and not found:
        nxt = []
        for state in queue:
            occ = frozenset(state)
            for i, u in enumerate(state):
                region = reachable_from(h.adj, [u], occ - {u}) - {u}
                for w in sorted(region):
                    new = state[:i] + (w,) + state[i + 1:]
                    if new in seen:
                        continue
                    seen[new] = (state, u, w)
                    if new == goal:
                        found = True
                    nxt.append(new)
        queue = nxt
    assert goal in seen, "Wilson target unreachable despite preconditions"
    steps = []
    state = goal
    while seen[state] is not None:
        prev, u, w = seen[state]
        steps.append((prev, u, w))
        state = prev
    steps.reverse()
    typed = []
    for prev, u, w in steps:
        occ = set(prev)
        path = bfs_path(h.adj, [u], {w}, occ - {u})
        typed.append((path, "slide"))
    m = typed_movement(frozenset(tokens), typed)
    assert m.length <= bound
    assert m.last_config == frozenset(goal)
    phi_real = induced_pairing(m).bijection()
    assert phi_real == phi
    return m
