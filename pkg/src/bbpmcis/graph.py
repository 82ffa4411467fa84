"""Labeled undirected graphs, connectivity and block-cut trees."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

__all__ = [
    "GraphError",
    "LabeledGraph",
    "BNode",
    "BCTree",
    "connected_components",
    "decompose",
    "build_bc_tree",
    "cc_of",
    "biconnected_parts",
]


class GraphError(ValueError):
    """Raised for malformed graphs or violated preconditions."""


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class LabeledGraph:
    """Simple undirected graph on vertices ``0..n-1`` with vertex and edge labels.

    Parameters
    ----------
    vertex_labels : sequence of str
        One label per vertex; the vertex count is ``len(vertex_labels)``.
    edges : iterable
        Items ``(u, v)`` or ``(u, v, label)``. Edges without a label get ``"-"``.

    Raises
    ------
    GraphError
        On self-loops, parallel edges or ids out of range.
    """

    __slots__ = ("n", "vertex_labels", "edge_labels", "adj", "edge_list", "edge_id", "_adjsets")

    def __init__(self, vertex_labels: Sequence[Hashable], edges: Iterable = ()):
        self.n = len(vertex_labels)
        self.vertex_labels = tuple(vertex_labels)
        labels: dict[tuple[int, int], Hashable] = {}
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for item in edges:
            if len(item) == 2:
                u, v = item
                lab = "-"
            else:
                u, v, lab = item
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has an endpoint out of range 0..{self.n - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = _canon(u, v)
            if key in labels:
                raise GraphError(f"duplicate edge ({u}, {v})")
            labels[key] = lab
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.edge_list = tuple(sorted(labels))
        self.edge_id = {e: i for i, e in enumerate(self.edge_list)}
        self.edge_labels = labels
        self.adj = tuple(tuple(sorted(s)) for s in nbrs)
        self._adjsets = tuple(frozenset(s) for s in nbrs)

    @property
    def m(self) -> int:
        return len(self.edge_list)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    def edge_label(self, u: int, v: int) -> Hashable:
        return self.edge_labels[_canon(u, v)]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> Iterable[tuple[int, int]]:
        return iter(self.edge_list)

    def induced_edges(self, vertices: Iterable[int]) -> list[tuple[int, int]]:
        vs = set(vertices)
        return [e for e in self.edge_list if e[0] in vs and e[1] in vs]

    def subgraph(self, vertices: Iterable[int]) -> tuple["LabeledGraph", list[int]]:
        """Induced subgraph with dense ids; returns the graph and the new-to-old id list."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        edges = [
            (index[u], index[v], self.edge_labels[(u, v)])
            for (u, v) in self.edge_list
            if u in index and v in index
        ]
        return LabeledGraph([self.vertex_labels[v] for v in order], edges), order

    def relabeled(self, perm: Sequence[int]) -> "LabeledGraph":
        """Copy with vertex ``v`` renamed to ``perm[v]``."""
        labels = [None] * self.n
        for v, p in enumerate(perm):
            labels[p] = self.vertex_labels[v]
        edges = [(perm[u], perm[v], lab) for (u, v), lab in self.edge_labels.items()]
        return LabeledGraph(labels, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return self.vertex_labels == other.vertex_labels and self.edge_labels == other.edge_labels

    def __hash__(self) -> int:
        return hash((self.vertex_labels, tuple(sorted(self.edge_labels.items()))))

    def __repr__(self) -> str:
        return f"LabeledGraph(n={self.n}, m={self.m})"


def connected_components(g: LabeledGraph) -> list[frozenset[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def biconnected_parts(adj, roots=None):
    """Biconnected decomposition of an adjacency mapping.

    ``adj`` maps each vertex to an iterable of neighbours (symmetric). Returns
    ``(parts, cutvertices)`` where ``parts`` is a list of edge lists, one per
    biconnected component (a single-edge part is a bridge), and ``cutvertices``
    is a set. Iterative DFS with low points, so deep graphs are fine.
    """
    disc: dict = {}
    low: dict = {}
    parts = []
    cuts = set()
    counter = 0
    for root in roots if roots is not None else adj:
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        estack = []
        stack = [(root, None, iter(adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append((u, w))
                    stack.append((w, u, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[u]:
                    estack.append((u, w))
                    if disc[w] < low[u]:
                        low[u] = disc[w]
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            if low[u] < low[parent]:
                low[parent] = low[u]
            if low[u] >= disc[parent]:
                part = []
                while True:
                    e = estack.pop()
                    part.append(e)
                    if e == (parent, u):
                        break
                parts.append(part)
                if parent == root:
                    root_children += 1
                else:
                    cuts.add(parent)
        if root_children > 1:
            cuts.add(root)
    return parts, cuts


def decompose(g: LabeledGraph):
    """Blocks, bridges and cutvertices of a connected graph.

    Returns
    -------
    blocks : list of (frozenset, list of edges)
        Maximal biconnected subgraphs with at least three vertices.
    bridges : list of (u, v)
    cutvertices : list of int, sorted
    """
    parts, cuts = biconnected_parts(g.adj, roots=(0,) if g.n else ())
    if g.n > 1 and len({v for part in parts for e in part for v in e}) != g.n:
        raise GraphError("graph must be connected")
    blocks = []
    bridges = []
    for part in parts:
        edges = sorted(_canon(u, v) for u, v in part)
        if len(edges) == 1:
            bridges.append(edges[0])
        else:
            verts = frozenset(x for e in edges for x in e)
            blocks.append((verts, edges))
    blocks.sort(key=lambda b: (min(b[0]), sorted(b[0])))
    bridges.sort()
    return blocks, bridges, sorted(cuts)


@dataclass(frozen=True)
class BNode:
    """A block or a bridge of a connected graph."""

    index: int
    vertices: frozenset
    edges: tuple
    is_block: bool

    def other(self, v: int) -> int:
        """For a bridge, the endpoint that is not ``v``."""
        a, b = self.edges[0]
        return b if v == a else a


@dataclass(frozen=True)
class BCTree:
    """Block-cut tree: B-nodes (blocks and bridges) joined to their cutvertices."""

    b_nodes: tuple
    c_nodes: tuple
    tree_edges: tuple
    max_c_degree: int
    nodes_at: tuple = field(repr=False)

    @property
    def blocks(self):
        return [b for b in self.b_nodes if b.is_block]

    @property
    def bridges(self):
        return [b for b in self.b_nodes if not b.is_block]

    def is_cutvertex(self, v: int) -> bool:
        return len(self.nodes_at[v]) > 1


def build_bc_tree(g: LabeledGraph) -> BCTree:
    """Block-cut tree of a connected graph.

    ``nodes_at[v]`` lists the indices of the B-nodes containing ``v``; a vertex
    is a cutvertex iff it lies in at least two B-nodes.
    """
    blocks, bridges, cuts = decompose(g)
    bnodes = []
    for verts, edges in blocks:
        bnodes.append(BNode(len(bnodes), verts, tuple(edges), True))
    for e in bridges:
        bnodes.append(BNode(len(bnodes), frozenset(e), (e,), False))
    nodes_at: list[list[int]] = [[] for _ in range(g.n)]
    for b in bnodes:
        for v in b.vertices:
            nodes_at[v].append(b.index)
    cut_set = set(cuts)
    tree_edges = tuple(
        (b.index, c) for b in bnodes for c in sorted(b.vertices) if c in cut_set
    )
    max_deg = max((len(nodes_at[c]) for c in cuts), default=0)
    return BCTree(
        b_nodes=tuple(bnodes),
        c_nodes=tuple(cuts),
        tree_edges=tree_edges,
        max_c_degree=max_deg,
        nodes_at=tuple(tuple(x) for x in nodes_at),
    )


def cc_of(g: LabeledGraph, keep: Iterable[int], anchor: Iterable[int]) -> frozenset[int]:
    """The connected component of ``g[keep]`` that meets ``anchor``.

    Raises
    ------
    GraphError
        If no component or more than one component meets ``anchor``.
    """
    keep = set(keep)
    hits = [a for a in anchor if a in keep]
    if not hits:
        raise GraphError("anchor does not meet the kept vertices")
    start = hits[0]
    comp = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w in keep and w not in comp:
                comp.add(w)
                queue.append(w)
    if any(a not in comp for a in hits):
        raise GraphError("anchor meets more than one component")
    return frozenset(comp)
