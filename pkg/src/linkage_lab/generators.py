"""Seeded random instance generators for the property sweeps.

Everything here is driven by an explicit random.Random so identical seeds
reproduce identical instances across the CLI, the tests, and the acceptance
harness.
"""

from __future__ import annotations

import itertools
import random

from .graph_core import Graph, blocks, is_connected
from .society import Society, society_connectivity
from .token_game.movements import INF, ZERO, Pairing


def random_connected_graph(rng: random.Random, n: int,
                           p: float = 0.5) -> Graph:
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        a, b = order[rng.randint(0, i - 1)], order[i]
        edges.add((min(a, b), max(a, b)))
    for e in itertools.combinations(range(n), 2):
        if rng.random() < p:
            edges.add(e)
    return Graph(n, edges)


def random_marginal_set(rng: random.Random, g: Graph, want: int) -> set[int]:
    a: set[int] = set()
    verts = list(g.vertices())
    rng.shuffle(verts)
    for v in verts:
        if len(a) >= want:
            break
        cand = a | {v}
        rest = set(g.vertices()) - cand
        if rest and is_connected(g.induced(rest)) and \
                all(g.neighbors(u) & rest for u in cand):
            a.add(v)
    return a


def random_pairing(rng: random.Random, xs, ys) -> Pairing:
    nodes = [(v, ZERO) for v in xs] + [(v, INF) for v in ys]
    rng.shuffle(nodes)
    edges = []
    while nodes:
        edges.append([nodes.pop(), nodes.pop()])
    return Pairing(xs, ys, edges)


def random_sets_for_k(rng: random.Random, g: Graph, k: int,
                      avoid: set[int] = frozenset(),
                      a: set[int] = frozenset()):
    """Random X, Y with |X| + |Y| = 2k, X n Y n A empty, off `avoid`."""
    avail = [v for v in g.vertices() if v not in avoid]
    for _ in range(40):
        sx = rng.randint(0, 2 * k)
        sy = 2 * k - sx
        if sx > len(avail) or sy > len(avail):
            continue
        xs = set(rng.sample(avail, sx))
        ys = set(rng.sample(avail, sy))
        if xs & ys & a:
            continue
        return xs, ys
    return None


def star_instance(rng: random.Random, n_max: int = 8):
    """A valid solve_star instance: (graph, pairing, marginal set, k)."""
    while True:
        n = rng.randint(4, n_max)
        g = random_connected_graph(rng, n, rng.uniform(0.35, 0.7))
        k = rng.randint(1, 3)
        a = random_marginal_set(rng, g, rng.randint(0, n - 2))
        rest = set(g.vertices()) - a
        case_a = len(a) >= 2 * k - 1
        case_b = any(u in rest and w in rest and
                     len(g.neighbors(u) & g.neighbors(w) & a) >= 2 * k - 3
                     for u, w in g.edges)
        if not (case_a or case_b):
            continue
        sets = random_sets_for_k(rng, g, k, a=a)
        if sets is None:
            continue
        xs, ys = sets
        return g, random_pairing(rng, xs, ys), a, k


def hub_instance(rng: random.Random, n_max: int = 8):
    """A valid solve_hub instance: (graph, pairing, marginal set, hub, k)."""
    while True:
        n = rng.randint(4, n_max)
        g = random_connected_graph(rng, n, rng.uniform(0.4, 0.75))
        k = rng.randint(1, 3)
        a = random_marginal_set(rng, g, rng.randint(0, n - 2))
        hubs = [v for v in g.vertices() if v not in a and
                2 * len(g.neighbors(v) - a) + len(g.neighbors(v) & a)
                >= 2 * k + 1]
        if not hubs:
            continue
        v = rng.choice(hubs)
        sets = random_sets_for_k(rng, g, k, avoid={v}, a=a)
        if sets is None:
            continue
        xs, ys = sets
        return g, random_pairing(rng, xs, ys), a, v, k


def block_instance(rng: random.Random, n_max: int = 8):
    """A valid solve_block instance: (graph, pairing, a, block, k)."""
    while True:
        n = rng.randint(5, n_max)
        g = random_connected_graph(rng, n, rng.uniform(0.35, 0.7))
        k = rng.randint(1, 3)
        a = random_marginal_set(rng, g, rng.randint(0, 3))
        rest = set(g.vertices()) - a
        sub = g.induced(rest)
        blks, _ = blocks(Graph(g.n, sub.edges))
        cands = []
        for d in blks:
            if not (d <= rest) or len(d) < 3:
                continue
            nd = set()
            for u in d:
                nd |= g.neighbors(u) - d
            has_tri = any(u in d and w in d and
                          (g.neighbors(u) & g.neighbors(w) & d)
                          for u, w in g.edges)
            if has_tri and 2 * len(d) + len(nd) >= 2 * k + 3:
                cands.append(d)
        if not cands:
            continue
        d = rng.choice(cands)
        sets = random_sets_for_k(rng, g, k, a=a)
        if sets is None:
            continue
        xs, ys = sets
        if rest <= xs or rest <= ys:
            continue
        return g, random_pairing(rng, xs, ys), a, d, k


def simple_instance(rng: random.Random, n_max: int = 8):
    """(graph, x, y, a) for the balanced mover."""
    n = rng.randint(3, n_max)
    g = random_connected_graph(rng, n, rng.uniform(0.3, 0.7))
    a = random_marginal_set(rng, g, rng.randint(0, n - 2))
    while True:
        k = rng.randint(0, min(4, n))
        xs = set(rng.sample(range(n), k))
        ys = set(rng.sample(range(n), k))
        if not (xs & ys & a):
            return g, xs, ys, a


def separation_instance(rng: random.Random, n_max: int = 8):
    """(graph, x, y, z) satisfying the nested-cover hypothesis."""
    from .graph_core import disjoint_set_paths

    while True:
        n = rng.randint(4, n_max)
        g = random_connected_graph(rng, n, rng.uniform(0.3, 0.6))
        vs = list(g.vertices())
        rng.shuffle(vs)
        kx = rng.randint(1, 2)
        ky = rng.randint(1, 2)
        x, y = set(vs[:kx]), set(vs[kx:kx + ky])
        m, _ = disjoint_set_paths(g, x, y)
        z = set()
        for v in g.vertices():
            fl, _ = disjoint_set_paths(g, x, y, removed={v}, cap=m)
            if fl < m:
                z.add(v)
        if z or rng.random() < 0.1:
            return g, x, y, z


def society_instance(rng: random.Random, n_max: int = 10,
                     connected_k: int = 4) -> Society:
    """A random k-connected society by rejection sampling."""
    while True:
        n = rng.randint(4, n_max)
        g = random_connected_graph(rng, n, rng.uniform(0.45, 0.8))
        size = rng.randint(min(4, n), n)
        om = rng.sample(range(n), size)
        s = Society(g, om)
        if society_connectivity(s, connected_k):
            return s


def rural_society_instance(rng: random.Random) -> Society:
    """A rural society whose interior vertices have degree exactly 6: a
    relabeled triangular grid patch, sometimes with two corners clipped."""
    m = rng.randint(3, 6)
    clip = rng.random() < 0.5 and m >= 4
    coords = [(i, j) for i in range(m + 1) for j in range(m + 1 - i)]
    if clip:
        coords.remove((m, 0))
        coords.remove((0, m))
        boundary = [(i, 0) for i in range(m)] + \
            [(m - t, t) for t in range(1, m)] + \
            [(0, j) for j in range(m - 1, 0, -1)]
    else:
        boundary = [(i, 0) for i in range(m + 1)] + \
            [(m - t, t) for t in range(1, m + 1)] + \
            [(0, j) for j in range(m - 1, 0, -1)]
    index = {c: i for i, c in enumerate(coords)}
    edges = set()
    for (i, j) in coords:
        for di, dj in ((1, 0), (0, 1), (-1, 1)):
            d = (i + di, j + dj)
            if d in index:
                a, b = index[(i, j)], index[d]
                edges.add((min(a, b), max(a, b)))
    n = len(coords)
    perm = list(range(n))
    rng.shuffle(perm)
    g = Graph(n, [(perm[u], perm[v]) for u, v in edges])
    return Society(g, [perm[index[c]] for c in boundary])
