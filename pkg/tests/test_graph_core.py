import itertools
import random

import pytest

from linkage_lab.graph_core import (
    Bridge,
    DomainError,
    Graph,
    VPath,
    blocks,
    brute_force_connectivity,
    connectivity,
    disjoint_set_paths,
    fan,
    fan_size,
    graph_from_dict,
    graph_to_dict,
    linkage_subgraph,
    min_xy_separator,
    s_bridges,
    subgraph_from_edges,
)


def complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def random_graph(rng, n, p=0.5):
    return Graph(n, [e for e in itertools.combinations(range(n), 2)
                     if rng.random() < p])


class TestConnectivity:
    def test_complete_k4(self):
        assert connectivity(complete(4)) == 3

    def test_jorgensen_k2_value(self):
        g = Graph(5, [e for e in itertools.combinations(range(5), 2)
                      if e not in [(0, 1), (2, 3)]])
        assert connectivity(g) == 3

    def test_path(self):
        assert connectivity(Graph(4, [(0, 1), (1, 2), (2, 3)])) == 1

    def test_too_small(self):
        with pytest.raises(DomainError):
            connectivity(Graph(1, []))

    def test_matches_brute_force(self):
        rng = random.Random(2)
        for _ in range(150):
            n = rng.randint(2, 8)
            g = random_graph(rng, n, rng.uniform(0.2, 0.9))
            assert connectivity(g) == brute_force_connectivity(g)


class TestBlocks:
    def test_triangle_with_pendant(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 0), (2, 3)])
        result, cuts = blocks(g)
        assert sorted(map(sorted, result)) == [[0, 1, 2], [2, 3]]
        assert cuts == {2}

    def test_k4_single_block(self):
        result, cuts = blocks(complete(4))
        assert len(result) == 1 and not cuts

    def test_path_edge_blocks(self):
        result, cuts = blocks(Graph(4, [(0, 1), (1, 2), (2, 3)]))
        assert len(result) == 3
        assert cuts == {1, 2}

    def test_every_edge_in_one_block(self):
        rng = random.Random(5)
        for _ in range(100):
            g = random_graph(rng, rng.randint(2, 9))
            result, _ = blocks(g)
            for u, v in g.edges:
                hosts = [b for b in result if u in b and v in b]
                assert len(hosts) >= 1


class TestSBridges:
    def test_chord_of_cycle(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        rep = s_bridges(g, subgraph_from_edges(
            [(0, 1), (1, 2), (2, 3), (3, 0)]))
        assert len(rep.bridges) == 1
        b = rep.bridges[0]
        assert b.is_trivial and b.attachments == {0, 2}

    def test_connecting_bridge_stable(self):
        g = Graph(7, [(0, 1), (1, 2), (3, 4), (4, 5), (1, 6), (6, 4)])
        s = linkage_subgraph([VPath([0, 1, 2]), VPath([3, 4, 5])])
        rep = s_bridges(g, s)
        (b,) = rep.bridges
        assert not b.is_trivial and b.is_stable
        assert b.attachments == {1, 4}

    def test_unstable_hosted(self):
        g = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
        rep = s_bridges(g, linkage_subgraph([VPath([0, 1, 2, 3, 4])]))
        (b,) = rep.bridges
        assert b.is_trivial and not b.is_stable
        assert b.host_segment == 0

    def test_partition_of_leftover_edges(self):
        rng = random.Random(7)
        for _ in range(120):
            g = random_graph(rng, rng.randint(3, 9))
            verts = rng.sample(range(g.n), rng.randint(1, g.n))
            s = g.induced(verts)
            rep = s_bridges(g, s)
            leftover = g.edges - s.edges
            from_bridges = [e for b in rep.bridges for e in b.edges]
            assert sorted(from_bridges) == sorted(leftover)

    def test_not_subgraph_raises(self):
        g = Graph(3, [(0, 1)])
        with pytest.raises(DomainError):
            s_bridges(g, subgraph_from_edges([(0, 2)]))


class TestFan:
    def test_star(self):
        g = Graph(6, [(0, i) for i in range(1, 6)])
        paths = fan(g, 0, set(range(1, 6)), 5)
        assert sorted(p.vertices for p in paths) == \
            [(0, i) for i in range(1, 6)]

    def test_pigeonhole(self):
        g = Graph(6, [(0, i) for i in range(1, 6)])
        assert fan(g, 0, {1, 2}, 3) is None

    def test_matches_cut_value(self):
        rng = random.Random(11)
        for _ in range(120):
            n = rng.randint(3, 8)
            g = random_graph(rng, n, rng.uniform(0.3, 0.8))
            v = rng.randrange(n)
            z = set(rng.sample([u for u in range(n) if u != v],
                               rng.randint(1, n - 1)))
            size = fan_size(g, v, z)
            for p in range(1, len(z) + 1):
                assert (fan(g, v, z, p) is not None) == (p <= size)


class TestJson:
    def test_round_trip_canonical(self):
        g = Graph(4, [(3, 1), (0, 2)])
        doc = graph_to_dict(g)
        assert doc["edges"] == [[0, 2], [1, 3]]
        assert graph_from_dict(doc) == g


class TestFlow:
    def test_trivial_paths_on_overlap(self):
        g = complete(4)
        value, paths = disjoint_set_paths(g, {0, 1}, {1, 3})
        assert value == 2
        assert VPath([1]) in paths

    def test_separator_meets_all_paths(self):
        rng = random.Random(13)
        for _ in range(100):
            n = rng.randint(3, 8)
            g = random_graph(rng, n, rng.uniform(0.2, 0.8))
            xs = set(rng.sample(range(n), rng.randint(1, 2)))
            ys = set(rng.sample(range(n), rng.randint(1, 2)))
            value, paths = disjoint_set_paths(g, xs, ys)
            cut = min_xy_separator(g, xs, ys)
            assert len(cut) == value
            for p in paths:
                assert p.vertex_set & cut
