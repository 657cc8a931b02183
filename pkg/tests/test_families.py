import itertools

import networkx as nx
import pytest

from linkage_lab.decomposition import verify_tree_decomposition
from linkage_lab.families import (
    complete_bipartite_subdivided,
    fat_star,
    fat_star_join,
    fat_star_join_terminals,
    fat_star_join_tree_decomposition,
    fat_star_terminals,
    fat_star_tree_decomposition,
    jorgensen,
    jorgensen_matching,
)
from linkage_lab.graph_core import DomainError, connectivity
from linkage_lab.linkage import (
    LinkageProblem,
    disjoint_paths,
    is_k_linked,
    verify_bipartite_subdivision,
)
from linkage_lab.society import Society, is_rural


class TestJorgensen:
    def test_k2(self):
        g = jorgensen(2)
        assert g.n == 5
        assert connectivity(g) == 3
        assert min(g.degree(v) for v in g.vertices()) == 3
        linked, witness = is_k_linked(g, 2)
        assert not linked

    def test_k3(self):
        g = jorgensen(3)
        assert g.n == 8
        assert connectivity(g) == 6
        assert disjoint_paths(
            LinkageProblem(g, jorgensen_matching(3))) is None

    def test_k1_rejected(self):
        with pytest.raises(DomainError):
            jorgensen(1)


class TestFatStar:
    def test_tile_shape(self):
        fs = fat_star(1)
        assert fs.graph.n == 20
        assert len(fs.graph.edges) == 50
        assert all(fs.graph.degree(v) == 5 for v in fs.graph.vertices())

    def test_planar_up_to_four_copies(self):
        for copies in range(1, 5):
            fs = fat_star(copies, check=False)
            gx = nx.Graph()
            gx.add_nodes_from(range(fs.graph.n))
            gx.add_edges_from(fs.graph.edges)
            assert nx.check_planarity(gx)[0]

    def test_connectivity_five(self):
        for copies in (1, 2):
            assert connectivity(fat_star(copies).graph) == 5

    def test_tree_decomposition_width_14(self):
        for copies in (1, 2, 3):
            fs = fat_star(copies, check=False)
            td = fat_star_tree_decomposition(fs)
            assert verify_tree_decomposition(fs.graph, td) == 14

    def test_no_two_linkage_certificates(self):
        # The interleaved boundary terminals bound a rural society, so the
        # two required paths would have to cross inside the disc.
        for copies in (1, 2):
            fs = fat_star(copies, check=False)
            (s1, t1), (s2, t2) = fat_star_terminals(fs)
            assert is_rural(Society(fs.graph, [s1, s2, t1, t2])).rural

    def test_no_two_linkage_exhaustive_one_copy(self):
        fs = fat_star(1)
        (s1, t1), (s2, t2) = fat_star_terminals(fs)
        assert disjoint_paths(
            LinkageProblem(fs.graph, [(s1, t1), (s2, t2)]), guard=20) is None


class TestFatStarJoin:
    def test_k3_single_copy(self):
        fj = fat_star_join(1, 3)
        assert fj.graph.n == 22
        assert connectivity(fj.graph) >= 7
        td = fat_star_join_tree_decomposition(fj)
        assert verify_tree_decomposition(fj.graph, td) <= 16

    def test_terminal_pairs_cover_spares(self):
        fj = fat_star_join(1, 3, check=False)
        pairs = fat_star_join_terminals(fj)
        assert len(pairs) == 3
        flat = [v for st in pairs for v in st]
        assert len(set(flat)) == 6

    def test_planar_pairs_unlinkable_in_base(self):
        fj = fat_star_join(1, 3, check=False)
        (s1, t1), (s2, t2) = fat_star_terminals(fj.base)
        assert disjoint_paths(
            LinkageProblem(fj.base.graph, [(s1, t1), (s2, t2)]),
            guard=20) is None

    def test_k2_redirects(self):
        with pytest.raises(DomainError):
            fat_star_join(1, 2)


class TestBipartiteFixtures:
    def test_k44_plain(self):
        g, w = complete_bipartite_subdivided(4, 4, 0)
        assert g.n == 8
        assert verify_bipartite_subdivision(g, w, 4, 4)

    def test_k23_one_subdivision(self):
        g, w = complete_bipartite_subdivided(2, 3, 1)
        assert g.n == 11
        assert verify_bipartite_subdivision(g, w, 2, 3)

    def test_witness_always_passes(self):
        for a, p, s in [(1, 1, 0), (2, 2, 2), (3, 2, 1), (4, 4, 1)]:
            g, w = complete_bipartite_subdivided(a, p, s)
            assert verify_bipartite_subdivision(g, w, a, p)
