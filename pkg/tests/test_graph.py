import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bbpmcis import (
    GraphError,
    LabeledGraph,
    build_bc_tree,
    cc_of,
    connected_components,
    decompose,
    gen_outerplanar,
)
from shapes import BC_EXAMPLE_CUTS, cycle, bc_example_graph, path, outerplanar_graphs


def brute_cutvertices(g):
    base = len(connected_components(g))
    out = set()
    for v in range(g.n):
        keep = [x for x in range(g.n) if x != v]
        sub, _ = g.subgraph(keep)
        if len(connected_components(sub)) > base:
            out.add(v)
    return out


class TestLabeledGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            LabeledGraph(["a"], [(0, 0)])

    def test_rejects_parallel_edge(self):
        with pytest.raises(GraphError):
            LabeledGraph(["a", "b"], [(0, 1), (1, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            LabeledGraph(["a", "b"], [(0, 2)])

    def test_adjacency_sorted_and_symmetric(self):
        g = LabeledGraph(list("abcd"), [(2, 0), (0, 1), (3, 0)])
        assert g.adj[0] == (1, 2, 3)
        for u in range(g.n):
            for v in g.adj[u]:
                assert u in g.adj[v] and g.has_edge(v, u)

    def test_edge_labels(self):
        g = LabeledGraph(["a", "b"], [(1, 0, "=")])
        assert g.edge_label(0, 1) == "=" and g.edge_label(1, 0) == "="
        assert LabeledGraph(["a", "b"], [(0, 1)]).edge_label(0, 1) == "-"

    def test_subgraph_renumbers(self):
        g = cycle(5)
        sub, order = g.subgraph([4, 0, 1])
        assert order == [0, 1, 4]
        assert sub.m == 2

    def test_relabeled_roundtrip(self):
        g = gen_outerplanar(12, 1.3, 5, 3, seed=4)
        perm = list(range(g.n))
        random.Random(1).shuffle(perm)
        inv = [0] * g.n
        for i, p in enumerate(perm):
            inv[p] = i
        assert g.relabeled(perm).relabeled(inv) == g


class TestConnectedComponents:
    def test_two_triangles(self):
        g = LabeledGraph(["a"] * 6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
        comps = connected_components(g)
        assert sorted(map(sorted, comps)) == [[0, 1, 2], [3, 4, 5]]

    def test_example_is_one_component(self):
        comps = connected_components(bc_example_graph())
        assert len(comps) == 1 and len(comps[0]) == 13

    def test_empty(self):
        assert connected_components(LabeledGraph([])) == []


class TestDecompose:
    def test_example_graph(self):
        blocks, bridges, cuts = decompose(bc_example_graph())
        assert len(blocks) == 4
        assert bridges == [(7, 10)]
        assert set(cuts) == set(BC_EXAMPLE_CUTS.values())
        sizes = sorted(len(v) for v, _ in blocks)
        assert sizes == [3, 3, 4, 5]

    def test_triangle(self):
        blocks, bridges, cuts = decompose(cycle(3))
        assert len(blocks) == 1 and bridges == [] and cuts == []

    def test_path(self):
        blocks, bridges, cuts = decompose(path(4))
        assert blocks == [] and len(bridges) == 3 and cuts == [1, 2]

    def test_single_edge_is_bridge(self):
        blocks, bridges, cuts = decompose(path(2))
        assert blocks == [] and bridges == [(0, 1)] and cuts == []

    def test_rejects_disconnected(self):
        with pytest.raises(GraphError):
            decompose(LabeledGraph(["a"] * 3, [(0, 1)]))

    def test_cutvertices_match_brute_force(self):
        rng = random.Random(7)
        for _ in range(500):
            n = rng.randint(1, 12)
            edges = {(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 2 * n))}
            edges = {(min(e), max(e)) for e in edges if e[0] != e[1]}
            g = LabeledGraph(["a"] * n, sorted(edges))
            comps = connected_components(g)
            if len(comps) != 1:
                continue
            _, _, cuts = decompose(g)
            assert set(cuts) == brute_cutvertices(g)


class TestBCTree:
    def test_example_topology(self):
        g = bc_example_graph()
        t = build_bc_tree(g)
        c1, c2, c3 = BC_EXAMPLE_CUTS["c1"], BC_EXAMPLE_CUTS["c2"], BC_EXAMPLE_CUTS["c3"]
        deg = {c: len(t.nodes_at[c]) for c in t.c_nodes}
        assert deg == {c1: 2, c2: 3, c3: 2}
        (bridge,) = t.bridges
        assert bridge.vertices == {c2, c3}
        at_c3 = [t.b_nodes[i] for i in t.nodes_at[c3] if i != bridge.index]
        assert at_c3[0].vertices == {10, 11, 12}
        assert t.max_c_degree == 3

    def test_biconnected(self):
        t = build_bc_tree(cycle(6))
        assert len(t.b_nodes) == 1 and t.c_nodes == () and t.max_c_degree == 0

    def test_star(self):
        g = LabeledGraph(["a"] * 4, [(0, 1), (0, 2), (0, 3)])
        t = build_bc_tree(g)
        assert len(t.bridges) == 3 and t.c_nodes == (0,) and t.max_c_degree == 3

    @given(outerplanar_graphs(max_n=14))
    def test_invariants(self, g):
        t = build_bc_tree(g)
        blocks, bridges, cuts = decompose(g)
        covered = [e for b in t.b_nodes for e in b.edges]
        assert sorted(covered) == sorted(g.edge_list)
        assert {b.vertices for b in t.blocks} == {frozenset(v) for v, _ in blocks}
        assert sorted(b.edges[0] for b in t.bridges) == bridges
        for b in t.b_nodes:
            assert (len(b.vertices) >= 3) == b.is_block
        if g.n > 1:
            for v in range(g.n):
                assert len(t.nodes_at[v]) >= 1
                assert (len(t.nodes_at[v]) >= 2) == (v in cuts)
        assert {(b, c) for b, c in t.tree_edges} == {
            (b.index, c) for b in t.b_nodes for c in b.vertices if c in cuts
        }
        # tree: |nodes| - 1 edges and connected
        nodes = len(t.b_nodes) + len(t.c_nodes)
        if nodes:
            assert len(t.tree_edges) == nodes - 1


class TestCCOf:
    def test_example_example(self):
        g = bc_example_graph()
        t = build_bc_tree(g)
        b2 = next(b for b in t.blocks if len(b.vertices) == 5)
        (b4,) = t.bridges
        keep = set(range(g.n)) - b2.vertices
        assert cc_of(g, keep, b4.vertices) == {10, 11, 12}

    def test_whole_component(self):
        g = cycle(5)
        assert cc_of(g, range(5), [3]) == set(range(5))

    def test_ambiguous_anchor(self):
        g = path(5)
        with pytest.raises(GraphError):
            cc_of(g, [0, 1, 3, 4], [0, 4])

    def test_empty_anchor(self):
        with pytest.raises(GraphError):
            cc_of(path(3), [0, 1], [2])

    @given(st.integers(0, 10**6))
    def test_component_is_connected_and_maximal(self, seed):
        rng = random.Random(seed)
        g = gen_outerplanar(rng.randint(2, 12), 1.2, 4, seed=seed)
        keep = {v for v in range(g.n) if rng.random() < 0.7}
        if not keep:
            return
        anchor = [min(keep)]
        comp = cc_of(g, keep, anchor)
        assert comp <= keep
        for u in comp:
            for w in g.adj[u]:
                if w in keep:
                    assert w in comp
