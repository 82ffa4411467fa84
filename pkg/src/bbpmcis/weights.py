"""Pair-scoring functions for vertices and edges of two graphs."""

from __future__ import annotations

from typing import Callable, Hashable, Mapping

__all__ = ["FORBIDDEN", "WeightFn", "UNIFORM", "LABEL_EQUALITY", "Scorer"]


class _Forbidden:
    """Marker for a pair that no admissible isomorphism may map."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "FORBIDDEN"

    def __reduce__(self):
        return (_Forbidden, ())


FORBIDDEN = _Forbidden()

Score = Callable[[Hashable, Hashable], object]


class WeightFn:
    """Scores for vertex pairs and edge pairs, looked up by label.

    Each score is a non-negative number or ``FORBIDDEN``.

    Parameters
    ----------
    vertex_score, edge_score : callable ``(label_g, label_h) -> score``
    name : str, optional
    """

    def __init__(self, vertex_score: Score, edge_score: Score, name: str = "custom"):
        self.vertex_score = vertex_score
        self.edge_score = edge_score
        self.name = name

    @classmethod
    def from_tables(cls, vertex: Mapping, edge: Mapping, name: str = "table") -> "WeightFn":
        """Weights from explicit ``(label_g, label_h) -> score`` tables.

        Pairs missing from a table are ``FORBIDDEN``.
        """
        for table in (vertex, edge):
            for key, s in table.items():
                if s is not FORBIDDEN and s < 0:
                    raise ValueError(f"negative score {s} for {key}")
        vt, et = dict(vertex), dict(edge)
        fn = cls(lambda a, b: vt.get((a, b), FORBIDDEN), lambda a, b: et.get((a, b), FORBIDDEN), name)
        fn.tables = (vt, et)
        return fn

    def transposed(self) -> "WeightFn":
        """Weights for swapped argument order (scores ``H`` against ``G``)."""
        vs, es = self.vertex_score, self.edge_score
        return WeightFn(lambda a, b: vs(b, a), lambda a, b: es(b, a), f"{self.name}^T")

    def __repr__(self) -> str:
        return f"WeightFn({self.name})"


def _uniform(a, b):
    return 1


def _equal(a, b):
    return 1 if a == b else FORBIDDEN


UNIFORM = WeightFn(_uniform, _uniform, "uniform")
LABEL_EQUALITY = WeightFn(_equal, _equal, "label-eq")


class Scorer:
    """Score tables for a fixed pair of graphs ``g`` and ``h``.

    ``vw[x][y]`` is the score of mapping vertex ``x`` of ``g`` onto ``y`` of ``h``;
    ``edge(e, f)`` scores edge pairs given as canonical vertex pairs.
    """

    __slots__ = ("g", "h", "w", "vw", "_ecache")

    def __init__(self, g, h, w: WeightFn):
        self.g, self.h, self.w = g, h, w
        # rows are shared between vertices with equal labels; treat as read-only
        hlabels = h.vertex_labels
        distinct = set(hlabels)
        by_label: dict = {}
        rows = []
        for la in g.vertex_labels:
            row = by_label.get(la)
            if row is None:
                score = {lb: _check(w.vertex_score(la, lb), (la, lb)) for lb in distinct}
                row = by_label[la] = [score[lb] for lb in hlabels]
            rows.append(row)
        self.vw = rows
        self._ecache: dict = {}

    def edge_by_label(self, la, lb):
        key = (la, lb)
        s = self._ecache.get(key)
        if s is None:
            s = self._ecache[key] = _check(self.w.edge_score(la, lb), key)
        return s

    def edge(self, e, f):
        return self.edge_by_label(self.g.edge_labels[e], self.h.edge_labels[f])


def _check(s, key):
    if s is FORBIDDEN:
        return s
    if s < 0:
        raise ValueError(f"negative score {s} for label pair {key}")
    return s
