"""Maximum weight matching in sparse bipartite graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping

__all__ = ["BipartiteWeightedGraph", "max_weight_matching", "hungarian_max", "lex_min_matching"]


@dataclass
class BipartiteWeightedGraph:
    """Bipartite graph with non-negative weights; absent pairs are non-edges."""

    left: list
    right: list
    weights: dict = field(default_factory=dict)

    def __post_init__(self):
        for pair, w in self.weights.items():
            if w < 0:
                raise ValueError(f"negative weight {w} on {pair}")


def hungarian_max(rows: int, cols: int, weight: Mapping[tuple[int, int], float]):
    """Maximum weight matching on index sets ``range(rows)`` x ``range(cols)``.

    Shortest augmenting paths with potentials on the smaller side, O(k^2 l).
    Absent pairs act as weight 0 during the search and are dropped from the
    result, which is exact because all present weights are non-negative.

    Returns ``(pairs, total)`` with ``pairs`` sorted.
    """
    if rows == 0 or cols == 0 or not weight:
        return [], 0
    transpose = rows > cols
    if transpose:
        rows, cols = cols, rows
        weight = {(j, i): w for (i, j), w in weight.items()}
    top = max(weight.values())
    inf = float("inf")
    # cost[i][j] = top - w (minimisation); absent -> top
    cost = [[top] * cols for _ in range(rows)]
    for (i, j), w in weight.items():
        cost[i][j] = top - w
    u = [0.0] * (rows + 1)
    v = [0.0] * (cols + 1)
    p = [0] * (cols + 1)
    way = [0] * (cols + 1)
    for i in range(1, rows + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (cols + 1)
        used = [False] * (cols + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = 0
            crow = cost[i0 - 1]
            ui0 = u[i0]
            for j in range(1, cols + 1):
                if not used[j]:
                    cur = crow[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(cols + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break
    pairs = []
    total = 0
    for j in range(1, cols + 1):
        i = p[j]
        if i == 0:
            continue
        key = (i - 1, j - 1)
        if key in weight:
            w = weight[key]
            total += w
            pairs.append((j - 1, i - 1) if transpose else key)
    pairs.sort()
    return pairs, total


def _single(weight):
    """One row or one column: the heaviest pair, smallest index on ties."""
    best = None
    bw = None
    for key, w in weight.items():
        if best is None or w > bw or (w == bw and key < best):
            best, bw = key, w
    return [best], bw


def _pairs(weight):
    """Two rows or two columns: enumerate every matching of size at most two."""
    items = sorted(weight.items())
    best, bw = _single(weight)
    for a in range(len(items)):
        (i1, j1), w1 = items[a]
        for b in range(a + 1, len(items)):
            (i2, j2), w2 = items[b]
            if i1 != i2 and j1 != j2 and w1 + w2 > bw:
                best, bw = [(i1, j1), (i2, j2)], w1 + w2
    return sorted(best), bw


def max_weight_matching(bg: BipartiteWeightedGraph):
    """Maximum weight matching of ``bg``.

    Among all maximum weight matchings the one whose sorted list of index
    pairs ``(left position, right position)`` is lexicographically smallest
    is returned.

    Returns
    -------
    matching : set of (left item, right item)
    total : number
        Sum of the matched weights; 0 for an empty graph.

    Examples
    --------
    >>> bg = BipartiteWeightedGraph([0, 1], ["x", "y"],
    ...     {(0, "x"): 3, (0, "y"): 1, (1, "x"): 2, (1, "y"): 4})
    >>> sorted(max_weight_matching(bg)[0]), max_weight_matching(bg)[1]
    ([(0, 'x'), (1, 'y')], 7)
    """
    li = {x: i for i, x in enumerate(bg.left)}
    ri = {x: j for j, x in enumerate(bg.right)}
    weight = {(li[a], ri[b]): w for (a, b), w in bg.weights.items()}
    pairs, total = lex_min_matching(len(bg.left), len(bg.right), weight)
    return {(bg.left[i], bg.right[j]) for i, j in pairs}, total


def lex_min_matching(rows: int, cols: int, weight: dict):
    """Lexicographically smallest sorted pair list among maximum weight matchings.

    Greedy over pairs in sorted order; each candidate is kept only if the
    remaining rows can still reach the optimum, which costs one matching per
    candidate.
    """
    _, best = hungarian_max(rows, cols, weight) if weight else ([], 0)
    chosen = []
    acc = 0
    used = set()
    last_row = -1
    while not _equal(acc, best):
        for key in sorted(k for k in weight if k[0] > last_row and k[1] not in used):
            i, j = key
            rest = {k: w for k, w in weight.items() if k[0] > i and k[1] not in used and k[1] != j}
            _, tail = hungarian_max(rows, cols, rest) if rest else ([], 0)
            if _equal(acc + weight[key] + tail, best):
                chosen.append(key)
                acc += weight[key]
                used.add(j)
                last_row = i
                break
        else:
            raise AssertionError("optimum not reachable")
    return chosen, best


def _equal(a, b) -> bool:
    return a == b or abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


def match_indices(rows: int, cols: int, weight: dict):
    """Matching on index sets; dispatches tiny cases before the Hungarian method."""
    if not weight:
        return [], 0
    if rows == 1 or cols == 1:
        return _single(weight)
    if rows == 2 or cols == 2:
        return _pairs(weight)
    return hungarian_max(rows, cols, weight)
