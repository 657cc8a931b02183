import itertools
import random

import pytest

from linkage_lab.decomposition import (
    AxiomViolation,
    FoundationalLinkage,
    SlimDecomposition,
    StabilizeFailure,
    TreeDecomposition,
    auxiliary_graph,
    bag_bridge_graph,
    bridge_graph,
    contract,
    find_disturbance,
    g_sub,
    induced_permutation,
    is_compressed,
    make_compressed,
    richness_report,
    stabilize,
    treewidth_exact,
    verify_regular,
    verify_relinkage,
    verify_slim,
    verify_tree_decomposition,
)
from linkage_lab.families import fat_star, fat_star_tree_decomposition
from linkage_lab.fixtures import ladder_fixture
from linkage_lab.graph_core import Graph, VPath


def k_n(n):
    return Graph(n, itertools.combinations(range(n), 2))


class TestTreeDecomposition:
    def test_path_width_one(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3)])
        td = TreeDecomposition(Graph(3, [(0, 1), (1, 2)]),
                               [{0, 1}, {1, 2}, {2, 3}])
        assert verify_tree_decomposition(g, td) == 1

    def test_k4_single_bag(self):
        td = TreeDecomposition(Graph(1, []), [{0, 1, 2, 3}])
        assert verify_tree_decomposition(k_n(4), td) == 3

    def test_fat_star_two_bag_split_width_14(self):
        fs = fat_star(1)
        td = fat_star_tree_decomposition(fs)
        assert td.tree.n == 2
        assert verify_tree_decomposition(fs.graph, td) == 14

    def test_violations_named(self):
        g = Graph(3, [(0, 1), (1, 2)])
        with pytest.raises(AxiomViolation) as err:
            verify_tree_decomposition(
                g, TreeDecomposition(Graph(2, [(0, 1)]), [{0, 1}, {1}]))
        assert err.value.axiom == "vertex-cover"
        with pytest.raises(AxiomViolation) as err:
            verify_tree_decomposition(
                g, TreeDecomposition(Graph(2, [(0, 1)]), [{0, 2}, {1, 2}]))
        assert err.value.axiom == "edge-cover"
        with pytest.raises(AxiomViolation) as err:
            verify_tree_decomposition(
                g, TreeDecomposition(Graph(3, [(0, 1), (1, 2)]),
                                     [{0, 1}, {1, 2}, {0, 2}]))
        assert err.value.axiom == "subtree"


class TestTreewidthExact:
    def test_tree(self):
        g = Graph(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5)])
        assert treewidth_exact(g) == (1, True)

    def test_cycle(self):
        g = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
        assert treewidth_exact(g) == (2, True)

    def test_complete(self):
        assert treewidth_exact(k_n(5)) == (4, True)

    def test_matches_min_fill_on_small(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(2, 8)
            g = Graph(n, [e for e in itertools.combinations(range(n), 2)
                          if rng.random() < 0.5])
            exact, flag = treewidth_exact(g)
            upper, _ = treewidth_exact(g, exact_limit=1)
            assert flag and exact <= upper


class TestVerifySlim:
    def test_ladder(self):
        fx = ladder_fixture(5, 2, 1, gamma_edges=[(0, 1)])
        adhesion, fl = verify_slim(fx.sd)
        assert adhesion == 3
        assert len(fl.paths) == 3

    def test_l2_violation(self):
        g = Graph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        sd = SlimDecomposition(g, [{0, 1}, {1, 2}, {2, 3}, {3, 0}])
        with pytest.raises(AxiomViolation) as err:
            verify_slim(sd)
        assert err.value.axiom == "L2"

    def test_l4_contained_bag(self):
        g = Graph(3, [(0, 1), (1, 2)])
        sd = SlimDecomposition(g, [{0, 1}, {0, 1, 2}])
        with pytest.raises(AxiomViolation) as err:
            verify_slim(sd)
        assert err.value.axiom == "L4"


class TestInducedPermutation:
    def test_restriction_is_identity(self):
        fx = ladder_fixture(6, 3, 1, gamma_edges=[(0, 1)])
        bag = 2
        link = [fx.linkage.paths[a].restrict_to(fx.sd.bags[bag])
                for a in range(fx.linkage.q)]
        pi = induced_permutation(fx.sd, fx.linkage, link, bag, bag)
        assert pi == tuple(range(fx.linkage.q))

    def test_crossing_rails_transposition(self):
        # Two rails with crossing chords in the middle bag.
        g = Graph(8, [(0, 2), (2, 4), (1, 3), (3, 5), (0, 3), (1, 2),
                      (6, 0), (7, 4)])
        sd = SlimDecomposition(g, [{0, 1, 6}, {0, 1, 2, 3}, {2, 3, 4, 5},
                                   {4, 5, 7}])
        adhesion, _ = verify_slim(sd)
        assert adhesion == 2
        fl = FoundationalLinkage([VPath([0, 2, 4]), VPath([1, 3, 5])])
        crossing = [VPath([0, 3]), VPath([1, 2])]
        pi = induced_permutation(sd, fl, crossing, 1, 1)
        assert pi == (1, 0)

    def test_composition_over_split(self):
        fx = ladder_fixture(7, 3, 0, gamma_edges=[(0, 1)])
        i, mid, j = 2, 4, 5
        whole = [fx.linkage.paths[a].restrict_to(fx.sd.bag_union(i, j))
                 for a in range(3)]
        pi_whole = induced_permutation(fx.sd, fx.linkage, whole, i, j)
        left = [fx.linkage.paths[a].restrict_to(fx.sd.bag_union(i, mid - 1))
                for a in range(3)]
        right = [fx.linkage.paths[a].restrict_to(fx.sd.bag_union(mid, j))
                 for a in range(3)]
        pi_l = induced_permutation(fx.sd, fx.linkage, left, i, mid - 1)
        pi_r = induced_permutation(fx.sd, fx.linkage, right, mid, j)
        assert pi_whole == tuple(pi_r[pi_l[a]] for a in range(3))


class TestBridgeAndAuxiliaryGraphs:
    def test_no_bridges_edgeless(self):
        g = Graph(4, [(0, 1), (2, 3)])
        bg = bridge_graph(g, [VPath([0, 1]), VPath([2, 3])])
        assert not bg.edges

    def test_single_connector(self):
        g = Graph(5, [(0, 1), (2, 3), (1, 4), (4, 2)])
        bg = bridge_graph(g, [VPath([0, 1]), VPath([2, 3])])
        assert bg.edges == frozenset({(0, 1)})

    def test_star_bridge_triangle(self):
        g = Graph(7, [(0, 1), (2, 3), (4, 5), (6, 0), (6, 2), (6, 4)])
        bg = bridge_graph(g, [VPath([0, 1]), VPath([2, 3]), VPath([4, 5])])
        assert bg.edges == frozenset({(0, 1), (0, 2), (1, 2)})

    def test_auxiliary_matches_fixture(self):
        fx = ladder_fixture(6, 3, 1, gamma_edges=[(0, 1), (1, 2), (0, 3)])
        gamma = auxiliary_graph(fx.sd, fx.linkage)
        assert gamma.edges == frozenset(fx.gamma_edges)

    def test_l8_per_bag_equality(self):
        fx = ladder_fixture(6, 3, 1, gamma_edges=[(0, 1), (1, 2)])
        gamma = auxiliary_graph(fx.sd, fx.linkage)
        for i in fx.sd.inner_indices():
            assert bag_bridge_graph(fx.sd, fx.linkage.paths, i).edges == \
                gamma.edges


class TestGSub:
    def test_whole_gamma_keeps_theta(self):
        fx = ladder_fixture(5, 2, 1, gamma_edges=[(0, 1), (0, 2)])
        gamma = auxiliary_graph(fx.sd, fx.linkage)
        region = g_sub(fx.sd, fx.linkage,
                       (set(range(3)), list(gamma.edges)))
        for t in fx.linkage.theta:
            assert fx.linkage.paths[t].first in region.vertices

    def test_single_edge_region(self):
        fx = ladder_fixture(5, 3, 0, gamma_edges=[(0, 1), (1, 2)])
        region = g_sub(fx.sd, fx.linkage, ({0, 1}, [(0, 1)]))
        assert fx.linkage.paths[2].vertex_set.isdisjoint(region.vertices)
        inner = fx.sd.bag_union(1, fx.sd.length - 1)
        for a in (0, 1):
            assert fx.linkage.paths[a].vertex_set <= region.vertices

    def test_private_bridges_included(self):
        fx = ladder_fixture(5, 2, 1, gamma_edges=[(0, 2)])
        region = g_sub(fx.sd, fx.linkage, ({0}, []))
        # The lambda-theta gadget attaches only path 0 among non-trivial
        # paths, so it belongs to the region of the edgeless subgraph {0}.
        gadget_sizes = len(region.vertices - fx.linkage.paths[0].vertex_set)
        assert gadget_sizes == fx.sd.length - 1


class TestVerifyRegular:
    def test_stable_fixture_all_green(self):
        fx = ladder_fixture(6, 3, 1, gamma_edges=[(0, 1), (1, 2), (0, 3)])
        rep = verify_regular(fx.sd, fx.linkage, fx.attachedness_p)
        assert rep.l6_ok and rep.l7_ok and rep.l8_ok

    def test_l8_violation_witnessed(self):
        fx = ladder_fixture(5, 2, 0, gamma_edges=[(0, 1)])
        # Remove the bag-2 gadget's edges to break bag-independence.
        bag_only = fx.sd.bags[2] - fx.sd.adhesion_set(2) - \
            fx.sd.adhesion_set(3)
        edges = [e for e in fx.graph.edges
                 if not (set(e) & bag_only)]
        g2 = Graph(fx.graph.n, edges)
        sd2 = SlimDecomposition(g2, fx.sd.bags)
        rep = verify_regular(sd2, fx.linkage, 2)
        assert not rep.l8_ok
        assert rep.witnesses["L8"][0] == 2

    def test_l7_violation(self):
        # Vertex 1 lies in three bags out of five (vertex 0 in all is fine).
        g = Graph(6, [(0, 1), (1, 2), (1, 3), (0, 4), (0, 5)])
        sd = SlimDecomposition(g, [{0, 1}, {0, 1, 2}, {0, 1, 3},
                                   {0, 4}, {0, 5}])
        fl = FoundationalLinkage([VPath([0])])
        rep = verify_regular(sd, fl, 2)
        assert not rep.l7_ok
        assert rep.witnesses["L7"] == 1


class TestDisturbances:
    def test_stable_fixture_none(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1), (1, 2)])
        for i in fx.sd.inner_indices():
            assert find_disturbance(fx.sd, fx.linkage, i) is None

    def test_bridging_disturbance_found(self):
        fx = ladder_fixture(6, 3, 0, gamma_edges=[(0, 1), (1, 2)],
                            seed="bridging")
        kind, linkage = find_disturbance(fx.sd, fx.linkage, 2)
        assert kind == "bridging"

    def test_verify_stable_fills_l10_l11(self):
        from linkage_lab.decomposition import verify_stable

        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1), (1, 2)])
        rep = verify_stable(fx.sd, fx.linkage, fx.attachedness_p)
        assert rep.l10_ok and rep.l11_ok
        fxb = ladder_fixture(6, 3, 0, gamma_edges=[(0, 1), (1, 2)],
                             seed="bridging")
        repb = verify_stable(fxb.sd, fxb.linkage, fxb.attachedness_p)
        assert repb.l10_ok and not repb.l11_ok
        assert "L11" in repb.witnesses

    def test_twisting_disturbance_found(self):
        # Crossing pair of non-twin paths inside one bag.
        fx = ladder_fixture(6, 3, 0, gamma_edges=[(0, 1), (1, 2)])
        g = fx.graph
        # Add a crossing gadget in bag 2: connect path 0's and path 1's
        # rails so they can swap.
        a02, a12 = (fx.linkage.alpha_vertex(0, fx.sd.adhesion_set(2)),
                    fx.linkage.alpha_vertex(1, fx.sd.adhesion_set(2)))
        a03, a13 = (fx.linkage.alpha_vertex(0, fx.sd.adhesion_set(3)),
                    fx.linkage.alpha_vertex(1, fx.sd.adhesion_set(3)))
        extra = {(min(a02, a13), max(a02, a13)),
                 (min(a12, a03), max(a12, a03))}
        g2 = Graph(g.n, set(g.edges) | extra)
        sd2 = SlimDecomposition(g2, fx.sd.bags)
        found = find_disturbance(sd2, fx.linkage, 2)
        assert found is not None and found[0] == "twisting"


class TestContract:
    def test_identity_indices(self):
        fx = ladder_fixture(5, 2, 1, gamma_edges=[(0, 1)])
        sd2, p2 = contract(fx.sd, fx.linkage, list(range(1, 6)))
        assert sd2.bags == fx.sd.bags
        assert [p.vertices for p in p2.paths] == \
            [p.vertices for p in fx.linkage.paths]

    def test_gamma_preserved_on_random_fixtures(self):
        rng = random.Random(41)
        for _ in range(100):
            lam = rng.randint(1, 3)
            theta = rng.randint(0, 2)
            length = rng.randint(4, 7)
            pool = [(a, b) for a, b in
                    itertools.combinations(range(lam + theta), 2)
                    if a < lam or b < lam]
            pool = [e for e in pool if e[0] < lam]
            rng.shuffle(pool)
            gamma_edges = pool[: rng.randint(0, min(3, len(pool)))]
            fx = ladder_fixture(length, lam, theta, gamma_edges=gamma_edges)
            gamma = auxiliary_graph(fx.sd, fx.linkage)
            idx = sorted(rng.sample(range(1, length + 1),
                                    rng.randint(2, length)))
            sd2, p2 = contract(fx.sd, fx.linkage, idx)
            if sd2.length >= 2:
                verify_slim(sd2)
            gamma2 = auxiliary_graph(sd2, p2)
            if sd2.length >= 3:
                assert gamma2.edges == gamma.edges
            rep = verify_regular(sd2, p2, fx.attachedness_p)
            if sd2.length >= 3:
                assert rep.l6_ok and rep.l7_ok and rep.l8_ok


class TestStabilize:
    def test_already_stable_contracts(self):
        fx = ladder_fixture(6, 2, 1, gamma_edges=[(0, 1)])
        sd2, p2, rounds = stabilize(fx.sd, fx.linkage, fx.attachedness_p,
                                    target_length=4)
        assert rounds == 0 and sd2.length == 4

    def test_bridging_seed_one_round(self):
        fx = ladder_fixture(8, 3, 0, gamma_edges=[(0, 1), (1, 2)],
                            seed="bridging")
        before = auxiliary_graph(fx.sd, fx.linkage)
        sd2, p2, rounds = stabilize(fx.sd, fx.linkage, fx.attachedness_p,
                                    target_length=7)
        after = auxiliary_graph(sd2, p2)
        assert rounds == 1
        assert set(before.edges) < set(after.edges)
        for i in sd2.inner_indices():
            assert find_disturbance(sd2, p2, i) is None

    def test_too_short_reports_failure(self):
        fx = ladder_fixture(4, 3, 0, gamma_edges=[(0, 1), (1, 2)],
                            seed="bridging")
        result = stabilize(fx.sd, fx.linkage, fx.attachedness_p,
                           target_length=8)
        assert isinstance(result, StabilizeFailure)


class TestRelinkage:
    def test_same_linkage_true(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)])
        assert verify_relinkage(fx.sd, fx.linkage, fx.linkage, fx.linkage,
                                {0, 1})

    def test_reroute_inside_region(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)], seed="compress")
        q2 = make_compressed(fx.sd, fx.linkage, fx.linkage, {0, 1},
                             fx.attachedness_p)
        assert verify_relinkage(fx.sd, fx.linkage, fx.linkage, q2, {0, 1})

    def test_outside_vertex_rejected(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)], seed="compress")
        # Reroute path 0 through its mid vertices, then claim lambda0={1}:
        # path 0 differs off lambda0.
        q_paths = list(fx.linkage.paths)
        sub = fx.sd.bag_union(0, fx.sd.length)
        assert not verify_relinkage(
            fx.sd, fx.linkage, fx.linkage,
            FoundationalLinkage(q_paths[1:] + q_paths[:1]), {1})


class TestCompression:
    def test_fixture_not_compressed(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)], seed="compress")
        ok, witness = is_compressed(fx.sd, fx.linkage, fx.linkage, {0, 1})
        assert not ok and witness is not None

    def test_empty_lambda0_vacuous(self):
        fx = ladder_fixture(5, 2, 1, gamma_edges=[(0, 1)])
        assert is_compressed(fx.sd, fx.linkage, fx.linkage, set()) == \
            (True, None)

    def test_make_compressed_drops_detours(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)], seed="compress")
        q2 = make_compressed(fx.sd, fx.linkage, fx.linkage, {0, 1},
                             fx.attachedness_p)
        ok, _ = is_compressed(fx.sd, fx.linkage, q2, {0, 1})
        assert ok
        # Off-block paths untouched.
        for a in range(2, fx.linkage.q):
            assert q2.paths[a] == fx.linkage.paths[a]

    def test_already_compressed_unchanged(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)])
        q2 = make_compressed(fx.sd, fx.linkage, fx.linkage, {0, 1},
                             fx.attachedness_p)
        assert [p.vertices for p in q2.paths] == \
            [p.vertices for p in fx.linkage.paths]


class TestRichness:
    def test_isolated_alpha_in_subgraph_vacuously_rich(self):
        # alpha keeps its lambda neighbours in the full auxiliary graph but
        # is isolated in the prescribed subgraph: no qualifying vertices.
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)])
        rep = richness_report(fx.sd, fx.linkage, ({0}, []), 0)
        assert rep.rich and not rep.qualifying
        assert rep.epsilon == 1.0

    def test_epsilon_undefined_reported(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(1, 2)])
        rep = richness_report(fx.sd, fx.linkage, ({0}, []), 0)
        assert rep.epsilon is None and "undefined" in rep.note

    def test_full_gamma_rich(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1), (0, 2)])
        gamma = auxiliary_graph(fx.sd, fx.linkage)
        lam_edges = [e for e in gamma.edges if e[0] < 3 and e[1] < 3]
        rep = richness_report(fx.sd, fx.linkage, ({0, 1, 2}, lam_edges), 0)
        assert rep.rich

    def test_average_degree_matches_hand_count(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)], seed="compress")
        # In the {0, 2} block the adhesion vertices of path 0 qualify: each
        # sees the 01-gadget outside the region and a detour inside it, and
        # carries two path edges plus two detour edges there.
        rep = richness_report(fx.sd, fx.linkage, ({0, 2}, [(0, 2)]), 0)
        assert rep.qualifying
        assert rep.average_degree == 4
        assert rep.epsilon == 0.5 and rep.threshold == 4.5
        assert not rep.rich

    def test_block_region_vacuous(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)], seed="compress")
        rep = richness_report(fx.sd, fx.linkage, ({0, 1}, [(0, 1)]), 0)
        assert rep.rich and not rep.qualifying


class TestSectionLemmas:
    def test_global_disturbance_lemma(self):
        # For foundational linkages of a stable fixture, lambda-incident
        # auxiliary edges already exist for the foundation.
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1), (1, 2)],
                            seed=None)
        gamma = auxiliary_graph(fx.sd, fx.linkage)
        _, fl2 = verify_slim(fx.sd)
        gamma2 = auxiliary_graph(fx.sd, fl2)
        lam = fx.linkage.lam
        for e in gamma2.edges:
            if set(e) & lam:
                assert e in gamma.edges

    def test_stable_bridges_lemma(self):
        # With the attachedness hypotheses and no theta neighbours on the
        # block, no inner-bag bridge attaches exactly one block path and no
        # other non-trivial path.
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1), (1, 2)])
        _, q = verify_slim(fx.sd)
        from linkage_lab.graph_core import s_bridges, linkage_subgraph

        for i in fx.sd.inner_indices():
            gi = Graph(fx.graph.n,
                       [e for e in fx.graph.edges
                        if set(e) <= fx.sd.bags[i]])
            rep = s_bridges(gi, linkage_subgraph(
                [p.restrict_to(fx.sd.bags[i]) for p in q.paths]))
            for b in rep.bridges:
                if b.is_trivial:
                    continue
                touched_lam = {a for a in fx.linkage.lam
                               if b.attachments & q.paths[a].vertex_set}
                assert len(touched_lam) != 1

    def test_block_separates_lemma(self):
        fx = ladder_fixture(5, 3, 1, gamma_edges=[(0, 1)], seed="compress")
        # Block D = {0, 1}; any bridge attaching path 2 stays out of G_D.
        region = g_sub(fx.sd, fx.linkage, ({0, 1}, [(0, 1)]))
        from linkage_lab.graph_core import s_bridges, linkage_subgraph

        inner = fx.sd.bag_union(1, fx.sd.length - 1)
        gi = Graph(fx.graph.n, [e for e in fx.graph.edges
                                if e[0] in inner and e[1] in inner])
        rep = s_bridges(gi, linkage_subgraph(
            [p.restrict_to(inner) for p in fx.linkage.paths]))
        p2 = fx.linkage.paths[2].vertex_set
        for b in rep.bridges:
            if b.attachments & p2:
                assert not (b.inner & region.vertices)
                assert not (b.edges & region.edges)
                touched = sum(1 for a in (0, 1)
                              if b.attachments &
                              fx.linkage.paths[a].vertex_set)
                assert touched <= 1
