"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL
line (run with -s to see them inline)."""

import itertools
import math
import random
import time

import pytest

from linkage_lab import generators
from linkage_lab.bridges_rerouting import (
    bridge_stabilisation,
    tutte_condition_holds,
    tutte_stabilize,
    verify_proper_rerouting,
)
from linkage_lab.decomposition import (
    auxiliary_graph,
    contract,
    find_disturbance,
    stabilize,
    verify_regular,
    verify_slim,
    verify_tree_decomposition,
)
from linkage_lab.families import (
    complete_bipartite_subdivided,
    fat_star,
    fat_star_join,
    fat_star_join_tree_decomposition,
    fat_star_terminals,
    fat_star_tree_decomposition,
    jorgensen,
)
from linkage_lab.fixtures import ladder_fixture
from linkage_lab.graph_core import (
    Graph,
    VPath,
    blocks,
    connectivity,
    disjoint_set_paths,
    is_connected,
    linkage_subgraph,
    paths_disjoint,
    s_bridges,
)
from linkage_lab.linkage import (
    BipartiteSubdivisionWitness,
    LinkageProblem,
    disjoint_paths,
    is_k_linked,
    link_via_bipartite_subdivision,
    movement_to_linkage,
    verify_bipartite_subdivision,
)
from linkage_lab.separations import Nesting, is_nested, nested_cover
from linkage_lab.society import (
    Society,
    cross_or_rural_check,
    euler_bound_check,
    hub_order_matches,
    is_rural,
    society_connectivity,
    validate_embedding,
)
from linkage_lab.society import _augmented
from linkage_lab.token_game import (
    Pairing,
    block_length_budget,
    induced_pairing,
    pairings_equal,
    reachability_oracle,
    set_singular,
    set_strongly_singular,
    solve_block,
    solve_hub,
    solve_simple,
    solve_star,
    solve_wilson,
    typed_movement,
    verify_movement,
)
from linkage_lab.token_game.movements import INF, ZERO
from linkage_lab.token_game.oracle import placement_state_graph


def report(num, name, started):
    print(f"\nACCEPTANCE {num:>2} PASS  {name}  "
          f"({time.time() - started:.1f}s)")


def test_criterion_01_jorgensen_family():
    t0 = time.time()
    for k in (2, 3):
        g = jorgensen(k)
        assert connectivity(g) == 3 * k - 3
        linked, witness = is_k_linked(g, k)
        assert linked is False and witness is not None
        assert disjoint_paths(LinkageProblem(g, witness)) is None
    report(1, "jorgensen connectivity 3k-3 and non-k-linked witness", t0)


def test_criterion_02_tightness_family():
    t0 = time.time()
    for copies in (1, 2, 3):
        fs = fat_star(copies)          # asserts planarity internally
        assert connectivity(fs.graph) == 5
        td = fat_star_tree_decomposition(fs)
        assert verify_tree_decomposition(fs.graph, td) <= 14
        (s1, t1), (s2, t2) = fat_star_terminals(fs)
        # Interleaved boundary terminals of a rural society cannot be
        # linked: two disc-drawn paths with interleaved ends must cross.
        assert is_rural(Society(fs.graph, [s1, s2, t1, t2])).rural
        if copies == 1:
            assert disjoint_paths(
                LinkageProblem(fs.graph, [(s1, t1), (s2, t2)]),
                guard=20) is None
    fj = fat_star_join(1, 3, check=False)
    assert connectivity(fj.graph) >= 7
    td = fat_star_join_tree_decomposition(fj)
    assert verify_tree_decomposition(fj.graph, td) <= 16
    report(2, "fat-star planar, kappa 5, width 14; join kappa >= 7, "
              "width <= 16; no 2-linkage", t0)


def _check_solver_instance(g, L, a, m, bound):
    ok, bad = verify_movement(g, m)
    assert ok, bad
    assert pairings_equal(induced_pairing(m), L)
    assert set_singular(m, a)
    assert m.length <= bound


def test_criterion_03_token_solver_suite():
    t0 = time.time()
    rng = random.Random(20260810)
    n_each = 500
    for i in range(n_each):
        g, xs, ys, a = generators.simple_instance(rng)
        m = solve_simple(g, xs, ys, a)
        ok, _ = verify_movement(g, m)
        assert ok and m.length <= len(xs)
        assert induced_pairing(m).is_balanced
        assert set_strongly_singular(m, a)
        if i % 25 == 0 and xs:
            assert reachability_oracle(
                g, xs, induced_pairing(m)) is not None
    for i in range(n_each):
        g, L, a, k = generators.star_instance(rng)
        m = solve_star(g, L, a)
        _check_solver_instance(g, L, a, m, 3 * k)
        if i % 25 == 0:
            assert reachability_oracle(g, L.x, L) is not None
    for i in range(n_each):
        g, L, a, v, k = generators.hub_instance(rng)
        m = solve_hub(g, L, a, v)
        _check_solver_instance(g, L, a, m, k * (k + 2))
        if i % 25 == 0:
            assert reachability_oracle(g, L.x, L) is not None
    for i in range(n_each):
        g, L, a, d, k = generators.block_instance(rng)
        m = solve_block(g, L, a, d, g.n)
        _check_solver_instance(g, L, a, m, block_length_budget(g.n, k))
        if i % 25 == 0:
            assert reachability_oracle(g, L.x, L) is not None
    report(3, f"{n_each} instances per solver: valid, pairing realised, "
              "singular, within bounds k / 3k / k(k+2) / f(k)", t0)


def _wilson_graphs(n):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        if bin(mask).count("1") < n:
            continue
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        deg = [0] * n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        if min(deg) < 2:
            continue
        g = Graph(n, edges)
        if not is_connected(g.induced(range(n))):
            continue
        if not any(g.neighbors(u) & g.neighbors(v) for u, v in edges):
            continue
        blks, cuts = blocks(g)
        if cuts or len(blks) != 1:
            continue
        yield g


def test_criterion_04_wilson_check():
    t0 = time.time()
    rng = random.Random(4)
    graphs = 0
    for n in (3, 4, 5, 6):
        for g in _wilson_graphs(n):
            graphs += 1
            for k in range(1, n):
                states, adj = placement_state_graph(g, k)
                bound = math.factorial(n) // math.factorial(n - k)
                assert len(states) == bound
                seen = {0}
                stack = [0]
                while stack:
                    x = stack.pop()
                    for y in adj[x]:
                        if y not in seen:
                            seen.add(y)
                            stack.append(y)
                # Connected placement graph: every bijection target is
                # reachable and any shortest movement has length < bound.
                assert len(seen) == len(states), (n, k, sorted(g.edges))
            if graphs % 500 == 0:
                xs = rng.sample(range(n), rng.randint(1, n - 1))
                ys = rng.sample(range(n), len(xs))
                phi = dict(zip(xs, ys))
                m = solve_wilson(g, phi)
                assert m.length <= math.factorial(n) // \
                    math.factorial(n - len(xs))
    report(4, f"every bijection reachable within n!/(n-k)! on all "
              f"{graphs} two-connected triangle graphs, n <= 6", t0)


def test_criterion_05_nested_cover():
    t0 = time.time()
    rng = random.Random(5)
    for _ in range(1000):
        g, x, y, z = generators.separation_instance(rng)
        m, _ = disjoint_set_paths(g, x, y)
        fam, bad = nested_cover(g, x, y, z)
        assert bad is None
        covered = set()
        for s in fam:
            assert s.order == m and s.is_xy(x, y)
            covered |= s.separator
        assert z <= covered
        for s1, s2 in zip(fam, fam[1:]):
            assert is_nested(s1, s2) in (Nesting.LEFT, Nesting.BOTH)
    report(5, "1000 nested covers: minimal order, totally nested, "
              "separators cover Z", t0)


def test_criterion_06_tutte_stabilization():
    t0 = time.time()
    rng = random.Random(6)
    done = 0
    while done < 500:
        n = rng.randint(5, 9)
        g = generators.random_connected_graph(rng, n, rng.uniform(0.3, 0.6))
        paths = []
        used = set()
        for _ in range(rng.randint(1, 3)):
            avail = [v for v in g.vertices() if v not in used]
            if len(avail) < 2:
                break
            walk = [rng.choice(avail)]
            while True:
                nbrs = [w for w in sorted(g.neighbors(walk[-1]))
                        if w not in used and w not in walk]
                if not nbrs or (len(walk) > 1 and rng.random() < 0.4):
                    break
                walk.append(rng.choice(nbrs))
            if len(walk) >= 2:
                paths.append(VPath(walk))
                used |= set(walk)
        if not paths:
            continue
        s = linkage_subgraph(paths)
        r = tutte_stabilize(g, s)
        assert tutte_condition_holds(g, r.rerouted)
        assert verify_proper_rerouting(g, r)
        for _, q in r.segment_map:
            for u, v in itertools.combinations(q.vertices, 2):
                if g.has_edge(u, v):
                    assert abs(q.index_of(u) - q.index_of(v)) == 1
        done += 1
    report(6, "500 stabilisations pass the cut-off verifier with induced "
              "segments", t0)


def test_criterion_07_cross_or_rural_dichotomy():
    t0 = time.time()
    rng = random.Random(7)
    tally = {"rural": 0, "cross": 0}
    for _ in range(1000):
        s = generators.society_instance(rng, n_max=10)
        kind, payload = cross_or_rural_check(s)
        tally[kind] += 1
        if kind == "rural":
            aug, hub = _augmented(s)
            assert validate_embedding(aug, payload.embedding)
            assert hub_order_matches(payload.embedding, hub, s.omega)
        else:
            r, q = payload
            assert not (r.vertex_set & q.vertex_set)
            pos = {v: i for i, v in enumerate(s.omega)}
            a, c = sorted((pos[r.first], pos[r.last]))
            b, d = sorted((pos[q.first], pos[q.last]))
            assert (a < b < c < d) or (b < a < d < c)
    report(7, f"1000 4-connected societies: dichotomy never both-fail "
              f"(rural {tally['rural']}, cross {tally['cross']})", t0)


def test_criterion_08_euler_bound():
    t0 = time.time()
    rng = random.Random(8)
    for _ in range(500):
        s = generators.rural_society_instance(rng)
        rep = euler_bound_check(s)
        assert rep.applicable and rep.holds
        assert rep.boundary_degree_sum <= 4 * len(s.omega) - 6
    report(8, "500 rural societies with interior degree >= 6 respect "
              "sum <= 4|boundary| - 6", t0)


def test_criterion_09_movement_to_linkage():
    t0 = time.time()
    rng = random.Random(9)
    done = 0
    while done < 100:
        lam = rng.randint(2, 4)
        theta = rng.randint(0, 1)
        pool = list(itertools.combinations(range(lam), 2))
        rng.shuffle(pool)
        gamma_edges = pool[: rng.randint(1, len(pool))]
        gv = set(range(lam))
        length = 9
        fx = ladder_fixture(length, lam, theta, gamma_edges=gamma_edges)
        m = _random_gamma_movement(rng, gv, gamma_edges, max_len=3)
        if m is None:
            continue
        n = m.length
        a_index = rng.randint(1, length - 1 - (2 * n - 1))
        b_index = a_index + 2 * n - 1
        paths, mapping = movement_to_linkage(
            fx.sd, fx.linkage, (gv, gamma_edges), m, a_index, b_index)
        assert paths_disjoint(paths)
        L = induced_pairing(m)
        assert {e for e, _ in mapping} == set(L.edges)
        for e, path in mapping:
            for alpha, side in e:
                adh = fx.sd.adhesion_set(
                    a_index if side == ZERO else b_index + 1)
                assert fx.linkage.alpha_vertex(alpha, adh) in \
                    (path.first, path.last)
        done += 1
    report(9, "100 compiled movements: disjoint, inside the region, "
              "endpoint bijection matches the pairing", t0)


def _random_gamma_movement(rng, gv, edges, max_len):
    adj = {v: set() for v in gv}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    cfg = frozenset(rng.sample(sorted(gv), rng.randint(0, len(gv))))
    typed = []
    cur = set(cfg)
    for _ in range(rng.randint(1, max_len)):
        kind = rng.choice(["slide", "destroy", "create"])
        free = sorted(gv - cur)
        from linkage_lab.graph_core import bfs_path

        if kind == "slide" and cur and free:
            u = rng.choice(sorted(cur))
            p = bfs_path(adj, [u], set(free), cur - {u})
        elif kind == "destroy" and len(cur) >= 2:
            u, w = rng.sample(sorted(cur), 2)
            p = bfs_path(adj, [u], {w}, cur - {u, w})
        elif kind == "create" and len(free) >= 2:
            u = rng.choice(free)
            p = bfs_path(adj, [u], set(free) - {u}, cur)
        else:
            continue
        if p is None or p.is_trivial:
            continue
        typed.append((p, kind))
        if kind == "slide":
            cur = (cur - {p.first}) | {p.last}
        elif kind == "destroy":
            cur -= {p.first, p.last}
        else:
            cur |= {p.first, p.last}
    if not typed:
        return None
    return typed_movement(cfg, typed)


def _subdivided_linkage_fixture(rows, extra_join=True):
    """K8 with some witness rows subdivided; subdivision vertices joined to
    every branch vertex to keep the host 4-connected."""
    base_edges = set(itertools.combinations(range(8), 2))
    nxt = 8
    paths = []
    for a in range(4):
        for b in range(4, 8):
            if (a, b) in rows:
                base_edges.discard((a, b))
                s = nxt
                nxt += 1
                for c in range(8):
                    base_edges.add((min(c, s), max(c, s)))
                paths.append(VPath([a, s, b]))
            else:
                paths.append(VPath([a, b]))
    g = Graph(nxt, base_edges)
    w = BipartiteSubdivisionWitness((0, 1, 2, 3), (4, 5, 6, 7),
                                    tuple(paths))
    return g, w


def test_criterion_10_tk_linkage():
    t0 = time.time()
    fixtures = [(Graph(8, itertools.combinations(range(8), 2)),
                 BipartiteSubdivisionWitness(
                     (0, 1, 2, 3), (4, 5, 6, 7),
                     tuple(VPath([a, b]) for a in range(4)
                           for b in range(4, 8))))]
    fixtures.append(_subdivided_linkage_fixture({(0, 4)}))
    fixtures.append(_subdivided_linkage_fixture({(0, 4), (1, 5)}))
    fixtures.append(_subdivided_linkage_fixture({(0, 4), (1, 5), (2, 6),
                                                 (3, 7)}))
    for g, w in fixtures:
        assert connectivity(g) >= 4
        assert verify_bipartite_subdivision(g, w, 4, 4)
        for terms in itertools.combinations(range(g.n), 4):
            for pairing in [((terms[0], terms[1]), (terms[2], terms[3])),
                            ((terms[0], terms[2]), (terms[1], terms[3])),
                            ((terms[0], terms[3]), (terms[1], terms[2]))]:
                links = link_via_bipartite_subdivision(
                    g, w, LinkageProblem(g, pairing))
                assert paths_disjoint(links)
                for (s, t), path in zip(pairing, links):
                    assert {path.first, path.last} == {s, t}
    report(10, "K8 and three subdivided fixtures: verified linkage for "
               "every 4-terminal choice", t0)


def test_criterion_11_decomposition_machinery():
    t0 = time.time()
    rng = random.Random(11)
    for _ in range(100):
        lam = rng.randint(1, 3)
        theta = rng.randint(0, 2)
        length = rng.randint(4, 7)
        pool = [e for e in itertools.combinations(range(lam + theta), 2)
                if e[0] < lam]
        rng.shuffle(pool)
        fx = ladder_fixture(length, lam, theta,
                            gamma_edges=pool[: rng.randint(0, min(3, len(pool)))])
        gamma = auxiliary_graph(fx.sd, fx.linkage)
        rep = verify_regular(fx.sd, fx.linkage, fx.attachedness_p)
        assert rep.l6_ok and rep.l7_ok and rep.l8_ok
        idx = sorted(rng.sample(range(1, length + 1),
                                rng.randint(3, length)))
        sd2, p2 = contract(fx.sd, fx.linkage, idx)
        if sd2.length < 3:
            continue
        assert auxiliary_graph(sd2, p2).edges == gamma.edges
        rep2 = verify_regular(sd2, p2, fx.attachedness_p)
        assert rep2.l6_ok and rep2.l7_ok and rep2.l8_ok

    for length in (6, 8):
        fx = ladder_fixture(length, 3, 0, gamma_edges=[(0, 1), (1, 2)],
                            seed="bridging")
        before = len(auxiliary_graph(fx.sd, fx.linkage).edges)
        out = stabilize(fx.sd, fx.linkage, fx.attachedness_p,
                        target_length=length - 1)
        sd2, p2, rounds = out
        after = len(auxiliary_graph(sd2, p2).edges)
        assert after > before
        assert rounds <= math.comb(fx.linkage.q, 2)
        for i in sd2.inner_indices():
            assert find_disturbance(sd2, p2, i) is None
    report(11, "contract preserves the auxiliary graph and flags on 100 "
               "fixtures; stabilize grows it each round and ends "
               "disturbance-free", t0)
