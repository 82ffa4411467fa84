"""Brute-force references and validity checks for small inputs.

Nothing here shares code with the fast algorithms beyond the graph container
and the weight functions. Blocks are recomputed from their definition: an edge
is a bridge when deleting it disconnects its component, and two edges share a
block when no single vertex deletion separates them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph import LabeledGraph
from .weights import FORBIDDEN, WeightFn

__all__ = ["IsoReport", "check_iso", "brute_bbp_mcis", "brute_2mcis", "is_bbp_subgraph"]

BBP_LIMIT = 10
MCIS2_LIMIT = 8


def _components(vertices, adj, removed=None):
    """Component id per vertex of ``vertices`` in the graph minus ``removed``."""
    comp = {}
    for s in vertices:
        if s in comp or s == removed:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp and w != removed:
                    comp[w] = s
                    stack.append(w)
    return comp


def _adj_of(vertices, edges):
    adj = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    return adj


def _block_structure(vertices, edges):
    """``(bridges, signature)`` where equal signatures mean the same block."""
    vertices = list(vertices)
    edges = list(edges)
    adj = _adj_of(vertices, edges)
    base = _components(vertices, adj)
    sig = {e: [base[e[0]]] for e in edges}
    for v in vertices:
        comp = _components(vertices, adj, removed=v)
        for e in edges:
            a, b = e
            if a == v:
                sig[e].append(comp[b])
            elif b == v:
                sig[e].append(comp[a])
            else:
                sig[e].append(comp[a])
    bridges = set()
    for e in edges:
        rest = [f for f in edges if f != e]
        comp = _components(vertices, _adj_of(vertices, rest))
        if comp[e[0]] != comp[e[1]]:
            bridges.add(e)
    return bridges, {e: tuple(s) for e, s in sig.items()}


class _BlockInfo:
    def __init__(self, g: LabeledGraph):
        self.bridges, self.sig = _block_structure(range(g.n), g.edge_list)


def is_bbp_subgraph(g: LabeledGraph, vertices, info: _BlockInfo | None = None) -> bool:
    """Whether the induced subgraph ``g[vertices]`` is block and bridge preserving."""
    info = info if info is not None else _BlockInfo(g)
    vs = set(vertices)
    sub_edges = [e for e in g.edge_list if e[0] in vs and e[1] in vs]
    bridges, sig = _block_structure(sorted(vs), sub_edges)
    for e in bridges:
        if e not in info.bridges:
            return False
    for e, f in combinations(sub_edges, 2):
        if info.sig[e] == info.sig[f] and sig[e] != sig[f]:
            return False
    return True


@dataclass
class IsoReport:
    """Outcome of checking one vertex map against the definitions."""

    injective: bool
    induced: bool
    connected: bool
    bbp: bool
    admissible: bool
    weight: object

    @property
    def ok(self) -> bool:
        return self.injective and self.induced and self.connected and self.bbp and self.admissible


def check_iso(g: LabeledGraph, h: LabeledGraph, phi, w: WeightFn) -> IsoReport:
    """Check ``phi`` (a dict, or an object with ``vertex_map``) literally.

    ``weight`` sums the scores of all mapped vertices and of all mapped edges
    present in both graphs; it is ``FORBIDDEN`` if any such pair is forbidden.
    """
    vmap = dict(getattr(phi, "vertex_map", phi))
    dom = sorted(vmap)
    img = [vmap[x] for x in dom]
    injective = len(set(img)) == len(img) and all(0 <= y < h.n for y in img) and all(
        0 <= x < g.n for x in dom)
    if not injective:
        return IsoReport(False, False, False, False, False, FORBIDDEN)
    induced = True
    admissible = True
    total = 0
    for x in dom:
        s = w.vertex_score(g.vertex_labels[x], h.vertex_labels[vmap[x]])
        if s is FORBIDDEN:
            admissible = False
        else:
            total += s
    for x, y in combinations(dom, 2):
        eg = g.has_edge(x, y)
        if eg != h.has_edge(vmap[x], vmap[y]):
            induced = False
        elif eg:
            s = w.edge_score(g.edge_label(x, y), h.edge_label(vmap[x], vmap[y]))
            if s is FORBIDDEN:
                admissible = False
            else:
                total += s
    if dom:
        sub_edges = [e for e in g.edge_list if e[0] in vmap and e[1] in vmap]
        connected = len(set(_components(dom, _adj_of(dom, sub_edges)).values())) == 1
    else:
        connected = True
    bbp = is_bbp_subgraph(g, dom) and is_bbp_subgraph(h, img)
    return IsoReport(True, induced, connected, bbp, admissible, total if admissible else FORBIDDEN)


def _connected_subsets(g: LabeledGraph):
    """Vertex bitmasks of all nonempty connected induced subgraphs."""
    nbr = [0] * g.n
    for a, b in g.edge_list:
        nbr[a] |= 1 << b
        nbr[b] |= 1 << a
    out = []
    for mask in range(1, 1 << g.n):
        low = mask & -mask
        seen = low
        frontier = low
        while frontier:
            v = (frontier & -frontier).bit_length() - 1
            frontier &= frontier - 1
            new = nbr[v] & mask & ~seen
            seen |= new
            frontier |= new
        if seen == mask:
            out.append(mask)
    return out


def _bits(mask):
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def _maps(g, h, verts, w, image_ok):
    """All admissible induced maps of ``g[verts]`` into ``h`` as (map, weight)."""
    gl, hl = g.vertex_labels, h.vertex_labels
    # BFS order so each later vertex has a mapped neighbour
    order = [verts[0]]
    parent = {verts[0]: None}
    vs = set(verts)
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for x in g.adj[u]:
            if x in vs and x not in parent:
                parent[x] = u
                order.append(x)
    results = []
    vmap: dict = {}
    used = set()

    def rec(k, acc):
        if k == len(order):
            if image_ok(vmap):
                results.append((dict(sorted(vmap.items())), acc))
            return
        x = order[k]
        p = parent[x]
        cands = range(h.n) if p is None else h.adj[vmap[p]]
        for y in cands:
            if y in used:
                continue
            s = w.vertex_score(gl[x], hl[y])
            if s is FORBIDDEN:
                continue
            gain = s
            ok = True
            for z in order[:k]:
                ge = g.has_edge(x, z)
                if ge != h.has_edge(y, vmap[z]):
                    ok = False
                    break
                if ge:
                    es = w.edge_score(g.edge_label(x, z), h.edge_label(y, vmap[z]))
                    if es is FORBIDDEN:
                        ok = False
                        break
                    gain += es
            if not ok:
                continue
            vmap[x] = y
            used.add(y)
            rec(k + 1, acc + gain)
            del vmap[x]
            used.discard(y)

    rec(0, 0)
    return results


def _best(candidates):
    best = None
    wits = []
    for m, wt in candidates:
        if best is None or wt > best:
            best, wits = wt, [m]
        elif wt == best:
            wits.append(m)
    return best, wits


def brute_bbp_mcis(g: LabeledGraph, h: LabeledGraph, w: WeightFn, domain=None):
    """Exhaustive BBP maximum common connected induced subgraph.

    ``domain`` optionally restricts the mapped vertices of ``g``; blocks and
    bridges are still those of the whole of ``g``.

    Returns
    -------
    weight : number
        0 when no admissible pair of vertices exists.
    witnesses : list of dict
        Every maximum weight map, in a deterministic order.

    Raises
    ------
    ValueError
        If either graph has more than 10 vertices.
    """
    if g.n > BBP_LIMIT or h.n > BBP_LIMIT:
        raise ValueError(f"oracle limited to {BBP_LIMIT} vertices")
    ginfo, hinfo = _BlockInfo(g), _BlockInfo(h)
    hcache: dict = {}

    def image_ok(vmap):
        key = frozenset(vmap.values())
        r = hcache.get(key)
        if r is None:
            r = hcache[key] = is_bbp_subgraph(h, key, hinfo)
        return r

    allowed = (1 << g.n) - 1
    if domain is not None:
        allowed = sum(1 << v for v in set(domain))
    cands = []
    for mask in _connected_subsets(g):
        if mask & ~allowed:
            continue
        verts = _bits(mask)
        if not is_bbp_subgraph(g, verts, ginfo):
            continue
        cands.extend(_maps(g, h, verts, w, image_ok))
    best, wits = _best(cands)
    if best is None:
        return 0, []
    return best, wits


def _biconnected(verts, g):
    """Definition check: at least 3 vertices, connected, no cutvertex."""
    if len(verts) < 3:
        return False
    vs = set(verts)
    edges = [e for e in g.edge_list if e[0] in vs and e[1] in vs]
    adj = _adj_of(verts, edges)
    if len(set(_components(verts, adj).values())) != 1:
        return False
    for v in verts:
        comp = _components(verts, adj, removed=v)
        if len(set(comp.values())) != 1:
            return False
    return True


def brute_2mcis(bg: LabeledGraph, bh: LabeledGraph, w: WeightFn):
    """Exhaustive maximum common biconnected induced subgraph.

    Returns ``(weight, witnesses)``; ``(0, [])`` when none exists.

    Raises
    ------
    ValueError
        If either graph has more than 8 vertices.
    """
    if bg.n > MCIS2_LIMIT or bh.n > MCIS2_LIMIT:
        raise ValueError(f"oracle limited to {MCIS2_LIMIT} vertices")
    cands = []
    for mask in _connected_subsets(bg):
        verts = _bits(mask)
        if not _biconnected(verts, bg):
            continue
        cands.extend(_maps(bg, bh, verts, w, lambda vmap: True))
    best, wits = _best(cands)
    if best is None:
        return 0, []
    return best, wits
