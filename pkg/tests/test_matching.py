import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bbpmcis import BipartiteWeightedGraph, max_weight_matching
from bbpmcis.matching import hungarian_max, lex_min_matching, match_indices


def brute(rows, cols, weight):
    """Best total and lexicographically smallest sorted pair list reaching it."""
    keys = sorted(weight)
    best = (0, [])

    def rec(start, used_r, used_c, acc, chosen):
        nonlocal best
        if acc > best[0] or (acc == best[0] and chosen < best[1]):
            best = (acc, list(chosen))
        for k in keys[start:]:
            if k[0] not in used_r and k[1] not in used_c:
                chosen.append(k)
                rec(keys.index(k) + 1, used_r | {k[0]}, used_c | {k[1]}, acc + weight[k], chosen)
                chosen.pop()

    rec(0, frozenset(), frozenset(), 0, [])
    return best


weights_strategy = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.tuples(
            st.just(r),
            st.just(c),
            st.dictionaries(
                st.tuples(st.integers(0, r - 1), st.integers(0, c - 1)),
                st.integers(0, 9),
                max_size=r * c,
            ),
        )
    )
)


class TestMaxWeightMatching:
    def test_single_edge(self):
        bg = BipartiteWeightedGraph(["a"], ["x"], {("a", "x"): 5})
        assert max_weight_matching(bg) == ({("a", "x")}, 5)

    def test_two_by_two(self):
        bg = BipartiteWeightedGraph([0, 1], [0, 1], {(0, 0): 3, (0, 1): 1, (1, 0): 2, (1, 1): 4})
        assert max_weight_matching(bg) == ({(0, 0), (1, 1)}, 7)

    def test_all_zero(self):
        bg = BipartiteWeightedGraph([0, 1], [0, 1], {(0, 0): 0, (1, 1): 0})
        matching, total = max_weight_matching(bg)
        assert total == 0 and matching == set()

    def test_empty(self):
        assert max_weight_matching(BipartiteWeightedGraph([], [])) == (set(), 0)
        assert max_weight_matching(BipartiteWeightedGraph([1, 2], [3])) == (set(), 0)

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            BipartiteWeightedGraph([0], [0], {(0, 0): -1})

    def test_lexicographic_tie_break(self):
        bg = BipartiteWeightedGraph([0, 1], [0, 1], {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})
        assert max_weight_matching(bg)[0] == {(0, 0), (1, 1)}
        bg = BipartiteWeightedGraph([0, 1], [0, 1], {(0, 1): 2, (1, 0): 1, (1, 1): 1})
        assert max_weight_matching(bg)[0] == {(0, 1), (1, 0)}

    @given(weights_strategy)
    def test_against_brute_force(self, case):
        r, c, w = case
        total, pairs = brute(r, c, w)
        got = lex_min_matching(r, c, w)
        assert got == (pairs, total)
        assert hungarian_max(r, c, w)[1] == total
        assert match_indices(r, c, w)[1] == total

    @given(weights_strategy, st.randoms(use_true_random=False))
    def test_permutation_invariant(self, case, rnd):
        r, c, w = case
        pr, pc = list(range(r)), list(range(c))
        rnd.shuffle(pr)
        rnd.shuffle(pc)
        moved = {(pr[i], pc[j]): x for (i, j), x in w.items()}
        assert hungarian_max(r, c, moved)[1] == hungarian_max(r, c, w)[1]

    @given(weights_strategy)
    def test_only_present_pairs(self, case):
        r, c, w = case
        for fn in (hungarian_max, match_indices, lex_min_matching):
            pairs, total = fn(r, c, w)
            assert all(p in w for p in pairs)
            assert len({i for i, _ in pairs}) == len(pairs) == len({j for _, j in pairs})
            assert total == sum(w[p] for p in pairs)

    def test_rectangular_random_floats(self):
        rng = random.Random(3)
        for _ in range(300):
            r, c = rng.randint(1, 6), rng.randint(1, 6)
            w = {(i, j): rng.random() for i in range(r) for j in range(c) if rng.random() < 0.7}
            best = brute(r, c, w)[0]
            assert hungarian_max(r, c, w)[1] == pytest.approx(best)
