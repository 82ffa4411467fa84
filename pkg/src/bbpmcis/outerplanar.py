"""Outerplanarity testing and embeddings of biconnected outerplanar graphs.

A biconnected outerplanar graph has a unique embedding up to mirroring: a
Hamiltonian outer cycle whose remaining edges are pairwise non-crossing chords.
The embedding is recovered by eliminating degree-2 vertices (each such vertex
sits on the outer cycle between its two neighbours) and re-inserting them in
reverse order, then validated against the chord set.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph import GraphError, LabeledGraph, connected_components, decompose

__all__ = [
    "OUTER",
    "NotOuterplanar",
    "OuterplanarEmbedding",
    "embed_block",
    "is_outerplanar",
    "canonical_face_pair",
]

OUTER = -1


class NotOuterplanar(GraphError):
    """The graph (or one of its blocks) has no outerplanar embedding."""


def _canon(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, eq=False)
class OuterplanarEmbedding:
    """Embedding of one biconnected outerplanar block.

    Attributes
    ----------
    outer_cycle : tuple
        Hamiltonian cycle, starting at the smallest vertex and continuing with
        its smaller cycle neighbour.
    faces : tuple of tuple
        Inner faces as cyclic vertex sequences, sorted by
        ``(length, sorted vertices)``; a face id is its index here.
    edges : tuple
        Block edges ``(u, v)`` with ``u < v``, sorted; an edge id is its index.
    edge_faces : tuple
        Per edge id, the face pair ``(A, B)``. ``A`` is the face with the smaller
        key; a hull edge has ``B == OUTER``.
    dual_tree : dict
        Face id -> list of ``(neighbour face id, shared edge id)``.
    face_edges : tuple of tuple
        Per face, edge ids along its cycle: entry ``j`` joins positions ``j``
        and ``j + 1``.
    """

    graph: LabeledGraph | None
    vertices: tuple
    outer_cycle: tuple
    faces: tuple
    edges: tuple
    edge_index: dict = field(repr=False)
    edge_faces: tuple = field(repr=False)
    dual_tree: dict = field(repr=False)
    face_pos: tuple = field(repr=False)
    adj: dict = field(repr=False)
    face_edges: tuple = field(default=(), repr=False)
    sizes: tuple = field(default=(), repr=False)
    edge_labels: tuple | None = field(default=None, repr=False)

    @property
    def face_sizes(self) -> tuple:
        return self.sizes

    def edge_of(self, u: int, v: int) -> int:
        return self.edge_index[_canon(u, v)]

    def walk(self, face: int, a: int, b: int) -> tuple:
        """Boundary of ``face`` starting at ``a``, leaving away from ``b``, ending at ``b``."""
        cyc = self.faces[face]
        pos = self.face_pos[face]
        n = len(cyc)
        i = pos[a]
        step = -1 if cyc[(i + 1) % n] == b else 1
        return tuple(cyc[(i + step * s) % n] for s in range(n))


def _outer_cycle(vertices, adj):
    """Hamiltonian outer cycle candidate via degree-2 elimination, or None."""
    n = len(vertices)
    work = {v: set(adj[v]) for v in vertices}
    queue = deque(sorted(v for v in vertices if len(work[v]) == 2))
    removed = []
    alive = n
    while alive > 3:
        if not queue:
            return None
        v = queue.popleft()
        if v not in work or len(work[v]) != 2:
            continue
        a, b = sorted(work.pop(v))
        work[a].discard(v)
        work[b].discard(v)
        alive -= 1
        removed.append((v, a, b))
        if b in work[a]:
            for x in (a, b):
                if len(work[x]) == 2:
                    queue.append(x)
        else:
            work[a].add(b)
            work[b].add(a)
    rest = sorted(work)
    if len(rest) != 3:
        return None
    x, y, z = rest
    if not (y in work[x] and z in work[x] and z in work[y]):
        return None
    # Doubly linked cycle; re-insert eliminated vertices between their neighbours.
    nxt = {x: y, y: z, z: x}
    prv = {y: x, z: y, x: z}
    for v, a, b in reversed(removed):
        if nxt.get(a) == b:
            nxt[a], prv[v], nxt[v], prv[b] = v, a, b, v
        elif nxt.get(b) == a:
            nxt[b], prv[v], nxt[v], prv[a] = v, b, a, v
        else:
            return None
    cycle = [x]
    cur = nxt[x]
    while cur != x:
        cycle.append(cur)
        cur = nxt[cur]
    if len(cycle) != n:
        return None
    return cycle


def _chords_nest(pos, chords) -> bool:
    """True iff chords drawn inside a convex polygon are pairwise non-crossing."""
    intervals = sorted(
        ((min(pos[u], pos[v]), -max(pos[u], pos[v])) for u, v in chords)
    )
    stack: list[int] = []
    for lo, neg_hi in intervals:
        hi = -neg_hi
        while stack and stack[-1] <= lo:
            stack.pop()
        if stack and hi > stack[-1]:
            return False
        stack.append(hi)
    return True


def embed_block(g: LabeledGraph | None = None, vertices: Iterable[int] | None = None,
                edges: Iterable | None = None) -> OuterplanarEmbedding:
    """Unique outerplanar embedding of a biconnected block.

    Give either a graph (optionally restricted to ``vertices``) or an explicit
    edge list. Output is deterministic.

    Raises
    ------
    NotOuterplanar
        If the block has fewer than three vertices, is not biconnected, or has
        no outerplanar embedding.
    """
    if edges is None:
        if g is None:
            raise TypeError("embed_block needs a graph or an edge list")
        if vertices is None:
            edge_list = list(g.edge_list)
        else:
            edge_list = g.induced_edges(vertices)
    else:
        edge_list = [_canon(e[0], e[1]) for e in edges]
    edge_list = sorted(set(edge_list))
    adj: dict = {}
    for u, v in edge_list:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if vertices is not None:
        for v in vertices:
            adj.setdefault(v, [])
    verts = tuple(sorted(adj))
    if len(verts) < 3:
        raise NotOuterplanar("a block needs at least three vertices")
    for v in verts:
        adj[v].sort()

    cycle = _outer_cycle(verts, adj)
    if cycle is None:
        raise NotOuterplanar("no outerplanar embedding (degree-2 elimination failed)")
    k = len(cycle)
    # canonical orientation
    i0 = cycle.index(verts[0])
    cycle = cycle[i0:] + cycle[:i0]
    if cycle[-1] < cycle[1]:
        cycle = [cycle[0]] + cycle[:0:-1]
    pos = {v: i for i, v in enumerate(cycle)}
    hull = {_canon(cycle[i], cycle[(i + 1) % k]) for i in range(k)}
    edge_set = set(edge_list)
    if not hull <= edge_set:
        raise NotOuterplanar("outer cycle uses a non-edge")
    chords = [e for e in edge_list if e not in hull]
    if len(edge_list) > 2 * k - 3 or not _chords_nest(pos, chords):
        raise NotOuterplanar("chords cross")

    # Each chord or the closing hull edge (0, k-1), read as a position
    # interval (lo, hi), bounds exactly one face on its inner side: walk from lo
    # to hi along the outermost chords nested inside the interval.
    reach = [[] for _ in range(k)]
    for u, v in chords:
        a, b = sorted((pos[u], pos[v]))
        reach[a].append(b)
    for r in reach:
        r.sort()
    raw_faces = []
    stack = [(0, k - 1)]
    while stack:
        lo, hi = stack.pop()
        face = [cycle[lo]]
        p = lo
        while p != hi:
            r = reach[p]
            j = bisect_left(r, hi) if p == lo else bisect_right(r, hi)
            q = r[j - 1] if j else p + 1
            if q - p > 1:
                stack.append((p, q))
            face.append(cycle[q])
            p = q
        raw_faces.append(face)

    def face_key(f):
        return (len(f), sorted(f))

    def canon_cycle(f):
        j = f.index(min(f))
        f = f[j:] + f[:j]
        if len(f) > 2 and f[-1] < f[1]:
            f = [f[0]] + f[:0:-1]
        return tuple(f)

    faces = sorted((canon_cycle(f) for f in raw_faces), key=face_key)
    if len(faces) != len(edge_list) - k + 1:
        raise NotOuterplanar("face count mismatch")
    edge_index = {e: i for i, e in enumerate(edge_list)}
    incident: list[list[int]] = [[] for _ in edge_list]
    face_edges = tuple(
        tuple(edge_index[_canon(f[j], f[(j + 1) % len(f)])] for j in range(len(f))) for f in faces
    )
    for fid, fe in enumerate(face_edges):
        for eid in fe:
            incident[eid].append(fid)
    edge_faces = []
    dual: dict = {fid: [] for fid in range(len(faces))}
    for eid, fs in enumerate(incident):
        if len(fs) == 1:
            edge_faces.append((fs[0], OUTER))
        elif len(fs) == 2:
            a, b = sorted(fs)  # face ids already follow the key order
            edge_faces.append((a, b))
            dual[a].append((b, eid))
            dual[b].append((a, eid))
        else:
            raise NotOuterplanar("edge not incident to exactly two faces")
    face_pos = tuple({v: j for j, v in enumerate(f)} for f in faces)
    return OuterplanarEmbedding(
        graph=g,
        vertices=verts,
        outer_cycle=tuple(cycle),
        faces=tuple(faces),
        edges=tuple(edge_list),
        edge_index=edge_index,
        edge_faces=tuple(edge_faces),
        dual_tree=dual,
        face_pos=face_pos,
        adj={v: frozenset(adj[v]) for v in verts},
        face_edges=face_edges,
        sizes=tuple(len(f) for f in faces),
        edge_labels=None if g is None else tuple(g.edge_labels[e] for e in edge_list),
    )


def canonical_face_pair(emb: OuterplanarEmbedding, e) -> tuple[int, int]:
    """Ordered face pair ``(A, B)`` of edge ``e`` (an id or a vertex pair)."""
    if isinstance(e, int):
        if not 0 <= e < len(emb.edges):
            raise KeyError(f"unknown edge id {e}")
        return emb.edge_faces[e]
    key = _canon(*e)
    if key not in emb.edge_index:
        raise KeyError(f"unknown edge {e}")
    return emb.edge_faces[emb.edge_index[key]]


def is_outerplanar(g: LabeledGraph) -> bool:
    """True iff every block of every component has an outerplanar embedding."""
    if g.m > 2 * g.n - 3 and g.n >= 2:
        return False
    for comp in connected_components(g):
        if len(comp) < 3:
            continue
        sub, old = g.subgraph(comp)
        blocks, _, _ = decompose(sub)
        for verts, edges in blocks:
            try:
                embed_block(edges=edges)
            except NotOuterplanar:
                return False
    return True
