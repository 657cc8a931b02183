"""Generators for the explicit graph families: the clique-minus-matching
example, the pentagonal fat star and its iterated pastings, the join that
pushes its connectivity up while keeping tree-width low, and subdivided
complete bipartite graphs with their witnesses.

The fat star's single tile has an outer 5-cycle, a middle 10-cycle and an
inner 5-cycle; outer and inner vertices each see three consecutive middle
vertices (one radially, two diagonally), giving a planar 5-regular,
5-connected graph on 20 vertices.  Tiles are pasted by identifying the
inner 5-cycle with the next tile's outer 5-cycle in rotational order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

from .graph_core import DomainError, Graph, VPath, connectivity
from .decomposition import TreeDecomposition, verify_tree_decomposition
from .linkage import BipartiteSubdivisionWitness


def jorgensen(k: int) -> Graph:
    """K_{3k-1} minus a matching of size k; (3k-3)-connected, not k-linked."""
    if k < 2:
        raise DomainError("k must be at least 2")
    n = 3 * k - 1
    matching = {(2 * i, 2 * i + 1) for i in range(k)}
    edges = [e for e in itertools.combinations(range(n), 2)
             if e not in matching]
    return Graph(n, edges)


def jorgensen_matching(k: int) -> list[tuple[int, int]]:
    return [(2 * i, 2 * i + 1) for i in range(k)]


@dataclass(frozen=True)
class FatStar:
    graph: Graph
    copies: int
    outer_cycle: tuple[int, ...]      # boundary of the whole pasting
    inner_cycle: tuple[int, ...]      # boundary of the last inner face
    ring_cycles: tuple[tuple[int, ...], ...]


def _fat_star_tile(outer: list[int], middle: list[int],
                   inner: list[int]) -> set[tuple[int, int]]:
    edges = set()

    def add(u, v):
        edges.add((min(u, v), max(u, v)))

    for ring in (outer, inner):
        for i in range(len(ring)):
            add(ring[i], ring[(i + 1) % len(ring)])
    for j in range(10):
        add(middle[j], middle[(j + 1) % 10])
    for i in range(5):
        # Outer vertex i sits at middle slot 2i, inner vertex i at 2i+1.
        add(outer[i], middle[2 * i])
        add(outer[i], middle[(2 * i - 1) % 10])
        add(outer[i], middle[(2 * i + 1) % 10])
        add(inner[i], middle[(2 * i + 1) % 10])
        add(inner[i], middle[2 * i])
        add(inner[i], middle[(2 * i + 2) % 10])
    return edges


def fat_star(copies: int, check: bool = True) -> FatStar:
    """Iterated pasting of the 20-vertex tile; planar with a pentagonal
    outer boundary."""
    if copies < 1:
        raise DomainError("need at least one copy")
    outer = list(range(5))
    middles = []
    inners = []
    nxt = 5
    edges: set[tuple[int, int]] = set()
    rings = [tuple(outer)]
    cur_outer = outer
    for _ in range(copies):
        middle = list(range(nxt, nxt + 10))
        nxt += 10
        inner = list(range(nxt, nxt + 5))
        nxt += 5
        edges |= _fat_star_tile(cur_outer, middle, inner)
        rings.append(tuple(middle))
        rings.append(tuple(inner))
        middles.append(middle)
        inners.append(inner)
        cur_outer = inner
    g = Graph(nxt, edges)
    if check:
        gx = nx.Graph()
        gx.add_nodes_from(range(g.n))
        gx.add_edges_from(g.edges)
        assert nx.check_planarity(gx)[0], "fat star transcription not planar"
    return FatStar(g, copies, tuple(outer), tuple(cur_outer), tuple(rings))


def fat_star_terminals(fs: FatStar) -> tuple[tuple[int, int], tuple[int, int]]:
    """Interleaved terminal pairs on the outer boundary cycle."""
    s1, s2, t1, t2 = fs.outer_cycle[:4]
    return (s1, t1), (s2, t2)


def fat_star_tree_decomposition(fs: FatStar) -> TreeDecomposition:
    """Path-shaped decomposition of width 14: two bags per tile, split at
    the middle ring."""
    bags = []
    for c in range(fs.copies):
        outer = set(fs.ring_cycles[2 * c])
        middle = set(fs.ring_cycles[2 * c + 1])
        inner = set(fs.ring_cycles[2 * c + 2])
        bags.append(outer | middle)
        bags.append(middle | inner)
    t = Graph(len(bags), [(i, i + 1) for i in range(len(bags) - 1)])
    return TreeDecomposition(t, bags)


@dataclass(frozen=True)
class FatStarJoin:
    graph: Graph
    base: FatStar
    k: int
    spare_vertices: tuple[int, ...]   # the edgeless joined class


def fat_star_join(copies: int, k: int, check: bool = True) -> FatStarJoin:
    """The fat star joined to 2k-4 independent vertices: connectivity at
    least 2k+1 with tree-width at most 2k+10, yet not k-linked."""
    if k < 3:
        raise DomainError("use fat_star directly for k = 2")
    fs = fat_star(copies, check=check)
    h = fs.graph
    spare = tuple(range(h.n, h.n + 2 * k - 4))
    edges = set(h.edges)
    for u in h.vertices():
        for v in spare:
            edges.add((u, v))
    g = Graph(h.n + len(spare), edges)
    if check:
        kappa = connectivity(g)
        assert kappa >= 2 * k + 1, f"connectivity {kappa} < {2 * k + 1}"
        td = fat_star_join_tree_decomposition(FatStarJoin(g, fs, k, spare))
        width = verify_tree_decomposition(g, td)
        assert width <= 2 * k + 10, f"width {width} > {2 * k + 10}"
    return FatStarJoin(g, fs, k, spare)


def fat_star_join_tree_decomposition(fj: FatStarJoin) -> TreeDecomposition:
    base = fat_star_tree_decomposition(fj.base)
    bags = [set(b) | set(fj.spare_vertices) for b in base.bags]
    return TreeDecomposition(base.tree, bags)


def fat_star_join_terminals(fj: FatStarJoin) -> list[tuple[int, int]]:
    """Terminal pairs witnessing non-k-linkedness: the interleaved boundary
    pairs plus a pairing of the joined class."""
    (s1, t1), (s2, t2) = fat_star_terminals(fj.base)
    pairs = [(s1, t1), (s2, t2)]
    spare = list(fj.spare_vertices)
    while spare:
        a = spare.pop(0)
        b = spare.pop(0)
        pairs.append((a, b))
    return pairs


def complete_bipartite_subdivided(a: int, p: int, subdivisions: int
                                  ) -> tuple[Graph, BipartiteSubdivisionWitness]:
    """K_{a,p} with every edge subdivided the given number of times, plus
    its subdivision witness."""
    if a < 1 or p < 1 or subdivisions < 0:
        raise DomainError("bad parameters")
    a_side = list(range(a))
    b_side = list(range(a, a + p))
    nxt = a + p
    edges = set()
    paths = []
    for x in a_side:
        for y in b_side:
            chain = [x]
            for _ in range(subdivisions):
                chain.append(nxt)
                nxt += 1
            chain.append(y)
            for u, v in zip(chain, chain[1:]):
                edges.add((min(u, v), max(u, v)))
            paths.append(VPath(chain))
    g = Graph(nxt, edges)
    w = BipartiteSubdivisionWitness(tuple(a_side), tuple(b_side), tuple(paths))
    return g, w
