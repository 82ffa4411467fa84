"""Seeded random connected outerplanar graphs with controlled averages.

The edge count is drawn around ``ratio * n``. Every cycle of the cycle space
lives in some block, so ``E - n + 1`` independent cycles are spread over a
number of blocks chosen to match the requested average block size: each block
is a polygon with non-crossing chords taken from a random triangulation.
Blocks and the remaining bridges are glued into a random tree at random
attachment vertices, which keeps every block outerplanar.
"""

from __future__ import annotations

import math
import random

from .graph import LabeledGraph

__all__ = ["gen_outerplanar"]


def _random_round(x: float, rng: random.Random) -> int:
    lo = math.floor(x)
    return lo + (1 if rng.random() < x - lo else 0)


def _triangulation(k: int, rng: random.Random) -> list:
    """Chords of a random triangulation of the polygon ``0..k-1``."""
    chords = []
    stack = [(0, k - 1)]
    while stack:
        i, j = stack.pop()
        if j - i < 2:
            continue
        m = rng.randint(i + 1, j - 1)
        for a, b in ((i, m), (m, j)):
            if b - a > 1:
                chords.append((a, b))
                stack.append((a, b))
    return chords


def _block_sizes(n: int, cycles: int, avg_block: float, rng: random.Random):
    """Vertex counts of the blocks, or an empty list for a tree.

    ``m`` blocks with sizes ``k_i`` use ``sum(k_i - 1)`` vertices and hold at
    most ``sum(k_i - 2)`` independent cycles, so the budget must cover
    ``cycles + m`` and stay within ``n - 1``.
    """
    if cycles == 0:
        return []
    avg = max(avg_block, 3.0)
    m = min(cycles, max(1, _random_round((n - 1) / (avg - 1), rng)))
    while cycles + m > n - 1:
        m -= 1
    budget = min(max(round(m * (avg - 1)), cycles + m), n - 1)
    extra = [0] * m
    for _ in range(budget - 2 * m):
        extra[rng.randrange(m)] += 1
    return [3 + x for x in extra]


def gen_outerplanar(n: int, ratio: float, avg_block: float, labels: int = 1, seed: int = 0,
                    edge_labels: int = 1) -> LabeledGraph:
    """Random connected outerplanar graph.

    Parameters
    ----------
    n : int
        Number of vertices, at least 1.
    ratio : float
        Target mean of ``|E| / |V|``, in ``(0, 2)``.
    avg_block : float
        Target mean number of vertices per block; bridges are not blocks.
        Values below 3 act as 3 whenever the graph has a cycle.
    labels : int
        Vertex labels are drawn uniformly from ``"1" .. str(labels)``.
    seed : int
        Same seed, same graph.
    edge_labels : int
        Edge labels are ``"-"`` for 1, otherwise uniform over ``"1" ..``.

    Raises
    ------
    ValueError
        If the parameters are out of range.

    Examples
    --------
    >>> g = gen_outerplanar(40, 1.24, 8, seed=1)
    >>> g.n
    40
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 < ratio < 2:
        raise ValueError("ratio must lie in (0, 2)")
    if avg_block < 2:
        raise ValueError("avg_block must be at least 2")
    if labels < 1 or edge_labels < 1:
        raise ValueError("alphabet sizes must be positive")
    rng = random.Random(seed)
    vlab = [str(rng.randint(1, labels)) for _ in range(n)]
    if n == 1:
        return LabeledGraph(vlab)
    m_edges = _random_round(ratio * n, rng)
    m_edges = min(max(m_edges, n - 1), 2 * n - 3 if n >= 3 else n - 1)
    cycles = m_edges - n + 1
    sizes = _block_sizes(n, cycles, avg_block, rng)
    chords_left = cycles - len(sizes)
    cap = [k - 3 for k in sizes]
    per_block = [0] * len(sizes)
    slots = [i for i, c in enumerate(cap) for _ in range(c)]
    rng.shuffle(slots)
    for i in slots[:chords_left]:
        per_block[i] += 1

    units = [("block", k, c) for k, c in zip(sizes, per_block)]
    used = sum(k - 1 for k in sizes)
    units += [("bridge", 2, 0)] * (n - 1 - used)
    rng.shuffle(units)

    edges = []
    count = 1
    for kind, k, c in units:
        anchor = rng.randrange(count)
        verts = [anchor] + list(range(count, count + k - 1))
        count += k - 1
        if kind == "bridge":
            edges.append((verts[0], verts[1]))
            continue
        rot = rng.randrange(k)
        poly = verts[rot:] + verts[:rot]
        for i in range(k):
            edges.append((poly[i], poly[(i + 1) % k]))
        tri = _triangulation(k, rng)
        for a, b in rng.sample(tri, c):
            edges.append((poly[a], poly[b]))

    perm = list(range(n))
    rng.shuffle(perm)
    if edge_labels == 1:
        elab = ["-"] * len(edges)
    else:
        elab = [str(rng.randint(1, edge_labels)) for _ in edges]
    return LabeledGraph(
        _permute(vlab, perm),
        [(perm[a], perm[b], lab) for (a, b), lab in zip(edges, elab)],
    )


def _permute(vlab, perm):
    out = [None] * len(vlab)
    for old, new in enumerate(perm):
        out[new] = vlab[old]
    return out
