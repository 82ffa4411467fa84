import statistics

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bbpmcis import build_bc_tree, connected_components, gen_outerplanar, is_outerplanar


def mean_block_size(g):
    blocks = build_bc_tree(g).blocks
    return statistics.fmean(len(b.vertices) for b in blocks) if blocks else None


class TestGenOuterplanar:
    @given(
        st.integers(1, 60),
        st.floats(0.5, 1.95),
        st.floats(2, 30),
        st.integers(1, 5),
        st.integers(0, 10**6),
    )
    def test_connected_outerplanar(self, n, ratio, bs, labels, seed):
        g = gen_outerplanar(n, ratio, bs, labels, seed)
        assert g.n == n
        assert len(connected_components(g)) == 1
        assert is_outerplanar(g)
        assert n - 1 <= g.m <= max(n - 1, 2 * n - 3)
        assert set(g.vertex_labels) <= {str(i) for i in range(1, labels + 1)}

    def test_same_seed_same_graph(self):
        assert gen_outerplanar(30, 1.3, 6, 3, seed=9) == gen_outerplanar(30, 1.3, 6, 3, seed=9)
        assert gen_outerplanar(30, 1.3, 6, 3, seed=9) != gen_outerplanar(30, 1.3, 6, 3, seed=10)

    @pytest.mark.parametrize("n,ratio", [(40, 0.98), (40, 1.24), (40, 1.58), (160, 1.24), (20, 1.1)])
    def test_edge_ratio_on_average(self, n, ratio):
        got = statistics.fmean(gen_outerplanar(n, ratio, 8, seed=s).m / n for s in range(200))
        assert got == pytest.approx(ratio, abs=0.02)

    @pytest.mark.parametrize("bs", [3, 8, 20])
    def test_block_size_on_average(self, bs):
        sizes = [mean_block_size(gen_outerplanar(80, 1.24, bs, seed=s)) for s in range(100)]
        got = statistics.fmean(x for x in sizes if x is not None)
        assert got == pytest.approx(bs, rel=0.15)

    def test_block_size_three_means_triangles(self):
        g = gen_outerplanar(40, 1.24, 3, seed=1)
        assert all(len(b.vertices) == 3 for b in build_bc_tree(g).blocks)

    def test_edge_labels(self):
        g = gen_outerplanar(20, 1.3, 5, 1, seed=2, edge_labels=3)
        assert set(g.edge_labels.values()) <= {"1", "2", "3"}
        assert set(gen_outerplanar(20, 1.3, 5, seed=2).edge_labels.values()) == {"-"}

    def test_small_sizes(self):
        assert gen_outerplanar(1, 1.0, 3).m == 0
        assert gen_outerplanar(2, 1.5, 3).m == 1
        assert gen_outerplanar(3, 1.9, 3).m == 3

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(n=0, ratio=1.2, avg_block=4),
            dict(n=5, ratio=0, avg_block=4),
            dict(n=5, ratio=2.0, avg_block=4),
            dict(n=5, ratio=1.2, avg_block=1),
            dict(n=5, ratio=1.2, avg_block=4, labels=0),
        ],
    )
    def test_bad_parameters(self, kwargs):
        with pytest.raises(ValueError):
            gen_outerplanar(**kwargs)
