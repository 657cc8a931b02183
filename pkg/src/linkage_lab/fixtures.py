"""Synthetic ladder decompositions.

Regular decompositions at realistic sizes are astronomically expensive to
extract from raw graphs, so verified machinery is exercised on constructed
ladders: q enumerated paths threading l+1 bags, with per-bag bridge gadgets
realising a prescribed auxiliary graph.  Optional gadget seeds plant a
bridging disturbance in every inner bag (for the stabilisation loop) or a
droppable detour inside a block region (for compression).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from .graph_core import Graph, VPath
from .decomposition import FoundationalLinkage, SlimDecomposition


@dataclass(frozen=True)
class LadderFixture:
    graph: Graph
    sd: SlimDecomposition
    linkage: FoundationalLinkage
    attachedness_p: int
    lam: tuple[int, ...]
    theta: tuple[int, ...]
    gamma_edges: tuple[tuple[int, int], ...]
    seed_kind: Optional[str]
    seed_paths: tuple[int, ...]


def ladder_fixture(length: int, lam_count: int, theta_count: int = 0,
                   gamma_edges: Iterable[tuple[int, int]] = (),
                   seed: Optional[str] = None) -> LadderFixture:
    """A slim decomposition of the given length whose auxiliary graph is
    exactly `gamma_edges` (path indices: 0..lam_count-1 non-trivial, then
    theta indices).

    seed = "bridging": every inner bag hides an alternative route for path 1
    whose use would reveal a bridge adjacency between paths 0 and 2 (both
    required to exist, with edges 01 and 12 in gamma but not 02).

    seed = "compress": every inner bag subdivides path 0 and attaches the
    middle vertex to path 1 (a block partner) and to path 2 (an outside
    path), plus a detour; compressing {0, 1} drops the middles.  Requires
    theta_count >= 1; gamma must contain 01, 02 and the lambda-theta edge
    (0, lam_count).
    """
    if length < 3 or lam_count < 1:
        raise ValueError("need length >= 3 and at least one non-trivial path")
    gamma_edges = [tuple(sorted(e)) for e in gamma_edges]
    q = lam_count + theta_count
    counter = itertools.count()
    a_vertex = {}
    for alpha in range(lam_count):
        for i in range(1, length + 1):
            a_vertex[(alpha, i)] = next(counter)
    t_vertex = {lam_count + b: next(counter) for b in range(theta_count)}
    x0 = next(counter)
    xl = next(counter)

    edges: set[tuple[int, int]] = set()
    path_chain: dict[int, list[int]] = {
        alpha: [a_vertex[(alpha, i)] for i in range(1, length + 1)]
        for alpha in range(lam_count)
    }
    bag_local: dict[int, set[int]] = {i: set() for i in range(1, length)}
    seed_paths: tuple[int, ...] = ()
    # A gadget attaching one non-trivial path and only trivial ones caps the
    # attachedness at 2 + (number of theta neighbours of that path).
    p_attach = q + 3
    for alpha in range(lam_count):
        theta_deg = sum(1 for (u, v) in gamma_edges
                        if (u == alpha and v >= lam_count)
                        or (v == alpha and u >= lam_count))
        if theta_deg:
            p_attach = min(p_attach, 2 + theta_deg)

    def on_path(alpha: int, i: int) -> int:
        return a_vertex[(alpha, i)]

    def endpoint(idx: int, i: int) -> int:
        return t_vertex[idx] if idx >= lam_count else on_path(idx, i)

    for i in range(1, length):
        for (u, v) in gamma_edges:
            b = next(counter)
            bag_local[i].add(b)
            edges.add(tuple(sorted((b, endpoint(u, i)))))
            edges.add(tuple(sorted((b, endpoint(v, i)))))

    if seed == "bridging":
        if lam_count < 3 or (0, 2) in gamma_edges:
            raise ValueError("bridging seed wants paths 0,1,2 and no 02 edge")
        seed_paths = (0, 1, 2)
        p_attach = 2
        for i in range(1, length):
            mid = next(counter)       # subdivides path 1 inside bag i
            detour = next(counter)    # alternative route for path 1
            to0 = next(counter)       # connector mid -- path 0
            to2 = next(counter)       # connector mid -- path 2
            bag_local[i] |= {mid, detour, to0, to2}
            path_chain[1].insert(path_chain[1].index(on_path(1, i)) + 1, mid)
            edges.add(tuple(sorted((on_path(1, i), mid))))
            edges.add(tuple(sorted((mid, on_path(1, i + 1)))))
            edges.add(tuple(sorted((on_path(1, i), detour))))
            edges.add(tuple(sorted((detour, on_path(1, i + 1)))))
            edges.add(tuple(sorted((mid, to0))))
            edges.add(tuple(sorted((to0, on_path(0, i)))))
            edges.add(tuple(sorted((mid, to2))))
            edges.add(tuple(sorted((to2, on_path(2, i)))))
    elif seed == "compress":
        # Block D = {0, 1} via the 01 gamma edge; path 2 hangs off path 0
        # outside the block through a connector reachable only via the mid
        # vertex, so dropping the mids compresses the block region.
        if lam_count < 3 or theta_count < 1:
            raise ValueError("compress seed wants paths 0,1,2 and a theta path")
        if (0, 1) not in gamma_edges or (0, 2) in gamma_edges or \
                (1, 2) in gamma_edges:
            raise ValueError("compress seed wants gamma edge 01 only on D")
        seed_paths = (0, 1, 2)
        p_attach = 3
        t0 = t_vertex[lam_count]
        for i in range(1, length):
            mid = next(counter)       # subdivides path 0
            detour = next(counter)    # spare route for path 0
            out = next(counter)       # connector mid -- path 2 (outsider)
            bag_local[i] |= {mid, detour, out}
            path_chain[0].insert(path_chain[0].index(on_path(0, i)) + 1, mid)
            edges.add(tuple(sorted((on_path(0, i), mid))))
            edges.add(tuple(sorted((mid, on_path(0, i + 1)))))
            edges.add(tuple(sorted((on_path(0, i), detour))))
            edges.add(tuple(sorted((detour, on_path(0, i + 1)))))
            edges.add(tuple(sorted((detour, t0))))
            edges.add(tuple(sorted((mid, out))))
            edges.add(tuple(sorted((out, on_path(2, i)))))
        gamma_edges = sorted(set(gamma_edges) | {(0, 2), (0, lam_count)})
    elif seed is not None:
        raise ValueError(f"unknown seed {seed!r}")

    for alpha in range(lam_count):
        chain = path_chain[alpha]
        for u, v in zip(chain, chain[1:]):
            edges.add(tuple(sorted((u, v))))
    edges.add(tuple(sorted((x0, on_path(0, 1)))))
    edges.add(tuple(sorted((xl, on_path(0, length)))))

    theta_set = set(t_vertex.values())
    bags = []
    adhesions = [None] + [
        frozenset({on_path(alpha, i) for alpha in range(lam_count)})
        | theta_set
        for i in range(1, length + 1)
    ]
    bags.append(adhesions[1] | {x0})
    for i in range(1, length):
        bags.append(adhesions[i] | adhesions[i + 1] | bag_local[i] | theta_set)
    bags.append(adhesions[length] | {xl})

    n = next(counter)
    g = Graph(n, edges)
    sd = SlimDecomposition(g, bags)
    paths = [VPath(path_chain[alpha]) for alpha in range(lam_count)] + [
        VPath([t_vertex[lam_count + b]]) for b in range(theta_count)
    ]
    fl = FoundationalLinkage(paths)
    return LadderFixture(g, sd, fl, p_attach, tuple(range(lam_count)),
                         tuple(range(lam_count, q)),
                         tuple(gamma_edges), seed, seed_paths)
