"""Block-and-bridge preserving maximum common induced subgraphs of outerplanar graphs.

The set of all BBP isomorphisms is partitioned along the BC-tree of ``g``:
rooted at a B-node ``b``, an isomorphism either maps an edge of ``b`` (then
``b`` lands inside one block or bridge of ``h``), maps exactly one vertex of
``b``, or avoids ``b`` entirely and lives in one subtree below it. Mappings
inside a block pair come from the 2-MCIS machinery; they are extended at every
mapped cutvertex pair by a maximum weight matching between the B-nodes hanging
off the two cutvertices. Sub-results for a fixed cutvertex pair are memoised,
which keeps the whole computation polynomial.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass

from .graph import LabeledGraph, biconnected_parts, build_bc_tree, connected_components
from .matching import match_indices
from .mcis2 import BlockPair
from .outerplanar import NotOuterplanar, embed_block
from .weights import FORBIDDEN, LABEL_EQUALITY, Scorer, WeightFn

__all__ = [
    "Isomorphism",
    "bbp_mcis",
    "BBPSolver",
    "BBPContext",
    "set_sx",
    "bbp_edge",
    "bbp_single_vertex",
]


@dataclass
class Isomorphism:
    """Common induced subgraph isomorphism ``vertex_map`` with weight ``weight``."""

    vertex_map: dict
    weight: object = 0

    def __len__(self) -> int:
        return len(self.vertex_map)

    def mapped_edges(self, g: LabeledGraph) -> list:
        dom = self.vertex_map
        return [e for e in g.edge_list if e[0] in dom and e[1] in dom]


class _Prepared:
    """BC-tree plus embeddings of every block; raises NotOuterplanar."""

    def __init__(self, g: LabeledGraph, root: int = 0):
        self.g = g
        self.root = root
        self.bct = build_bc_tree(g)
        self.bnodes = self.bct.b_nodes
        self.nodes_at = self.bct.nodes_at
        self.is_cut = [len(x) > 1 for x in self.nodes_at]
        self.children = self._orient()
        self.is_block = [b.is_block for b in self.bnodes]
        self.ends = [b.edges[0] for b in self.bnodes]
        self.bridge_label = [None if b.is_block else g.edge_labels[b.edges[0]] for b in self.bnodes]
        self.emb = {}
        for b in self.bnodes:
            if b.is_block:
                self.emb[b.index] = embed_block(g, vertices=b.vertices, edges=b.edges)

    def _orient(self):
        """Root the BC-tree at B-node ``root``; ``children[c]`` are the B-nodes below ``c``."""
        children = [()] * self.g.n
        if not self.bnodes:
            return children
        seen = {self.root}
        stack = [self.root]
        while stack:
            b = stack.pop()
            for c in sorted(self.bnodes[b].vertices):
                if not self.is_cut[c] or children[c]:
                    continue
                below = tuple(x for x in self.nodes_at[c] if x not in seen)
                if not below:
                    continue
                children[c] = below
                seen.update(below)
                stack.extend(below)
        return children


_NO_EXT = (0, ())
_MISSING = object()


class _Piece:
    """Split isomorphism between two blocks; ``edges`` are G edge ids, each
    mapped per ``etypes`` (G edge id -> (H edge id, type))."""

    __slots__ = ("vmap", "weight", "cuts", "edges", "etypes")

    def __init__(self, vmap, weight, cuts, edges, etypes):
        self.vmap = vmap
        self.weight = weight
        self.cuts = cuts
        self.edges = edges
        self.etypes = etypes


class _PairPieces:
    """All split pieces between two blocks, indexed by mapped cutvertex pairs."""

    __slots__ = ("pieces", "by_pair", "excluding")

    def __init__(self, pieces, by_pair):
        self.pieces = pieces
        self.by_pair = by_pair
        self.excluding = {}


class BBPSolver:
    """One BBP-MCIS computation between connected outerplanar graphs."""

    def __init__(self, g: LabeledGraph, h: LabeledGraph, w: WeightFn, scorer: Scorer | None = None,
                 root: int = 0):
        self.g, self.h, self.w = g, h, w
        self.G = _Prepared(g, root)
        self.H = _Prepared(h)
        self.sc = scorer if scorer is not None else Scorer(g, h, w)
        self.vw = self.sc.vw
        self._pairs: dict = {}
        self._fixed: dict = {}
        self._ext: dict = {}
        self._mat: dict = {}
        self.stats = {"block_pairs": 0, "maximal_isos": 0, "matchings": 0}

    # -- block pair pieces ------------------------------------------------

    def _pieces(self, bi: int, bj: int) -> _PairPieces:
        key = (bi, bj)
        pp = self._pairs.get(key)
        if pp is not None:
            return pp
        self.stats["block_pairs"] += 1
        eg, eh = self.G.emb[bi], self.H.emb[bj]
        pair = BlockPair(eg, eh, self.sc)
        gcut, hcut = self.G.is_cut, self.H.is_cut
        pieces = []
        by_pair: dict = {}
        for _seed, phi, split in pair.run():
            self.stats["maximal_isos"] += 1
            etypes = phi[2]
            for p in split:
                vmap = p.vmap
                cuts = []
                piece = _Piece(vmap, p.weight, cuts, p.edges, etypes)
                for c, cb in vmap.items():
                    if gcut[c]:
                        by_pair.setdefault((c, cb), []).append(piece)
                        if hcut[cb]:
                            cuts.append((c, cb))
                piece.cuts = tuple(cuts)
                pieces.append(piece)
        pp = _PairPieces(pieces, by_pair)
        self._pairs[key] = pp
        return pp

    def _pieces_excluding(self, bi: int, bj: int, x) -> list:
        """Pieces avoiding G vertex ``x``: blocks of each piece minus ``x``."""
        pp = self._pieces(bi, bj)
        if x is None:
            return pp.pieces
        got = pp.excluding.get(x)
        if got is not None:
            return got
        out = []
        vw, sc = self.vw, self.sc
        gcut, hcut = self.G.is_cut, self.H.is_cut
        eg, eh = self.G.emb[bi], self.H.emb[bj]
        gedges, glab, hlab = eg.edges, eg.edge_labels, eh.edge_labels
        for p in pp.pieces:
            if x not in p.vmap:
                out.append(p)
                continue
            adj: dict = {}
            score = {}
            for ge in p.edges:
                a, b = gedges[ge]
                if a == x or b == x:
                    continue
                score[(a, b)] = sc.edge_by_label(glab[ge], hlab[p.etypes[ge][0]])
                adj.setdefault(a, []).append(b)
                adj.setdefault(b, []).append(a)
            parts, _ = biconnected_parts(adj, roots=sorted(adj))
            for part in parts:
                if len(part) < 3:
                    continue
                es = [(a, b) if a < b else (b, a) for a, b in part]
                verts = sorted({v for e in es for v in e})
                vmap = {v: p.vmap[v] for v in verts}
                weight = sum(vw[v][vb] for v, vb in vmap.items()) + sum(score[e] for e in es)
                cuts = tuple((c, cb) for c, cb in vmap.items() if gcut[c] and hcut[cb])
                out.append(_Piece(vmap, weight, cuts, [eg.edge_index[e] for e in es], p.etypes))
        pp.excluding[x] = out
        return out

    # -- recursion ----------------------------------------------------------

    def _matrix(self, c: int, cb: int):
        """Extension weights between the child B-nodes of ``c`` and all B-nodes at ``cb``."""
        r = self._mat.get((c, cb))
        if r is not None:
            return r
        left = self.G.children[c]
        right = self.H.nodes_at[cb]
        base = self.vw[c][cb]
        weights = {}
        gk, hk = self.G.is_block, self.H.is_block
        fixed = self._fixed
        vw = self.vw
        gends, hends = self.G.ends, self.H.ends
        gch = self.G.children
        glab, hlab = self.G.bridge_label, self.H.bridge_label
        edge_score = self.sc.edge_by_label
        ext = self._ext
        ecache: dict = {}
        for i, bi in enumerate(left):
            if not gk[bi]:
                # bridge pairs inlined; plans are rebuilt by _edge_fixed on demand
                a, b = gends[bi]
                x = a + b - c
                row = vw[x]
                below = gch[x]
                la = glab[bi]
                for j, bj in enumerate(right):
                    if hk[bj]:
                        continue
                    a, b = hends[bj]
                    sx = row[a + b - cb]
                    if sx is FORBIDDEN:
                        continue
                    lb = hlab[bj]
                    se = ecache.get(lb)
                    if se is None:
                        se = ecache[lb] = edge_score(la, lb)
                    if se is FORBIDDEN:
                        continue
                    if below:
                        r = ext.get((x, a + b - cb, bj))
                        if r is None:
                            r = self._extend(x, a + b - cb, bj)
                        weights[(i, j)] = sx + se + r[0]
                    else:
                        weights[(i, j)] = sx + se
                continue
            for j, bj in enumerate(right):
                if not hk[bj]:
                    continue
                key = (bi, bj, c, cb)
                res = fixed.get(key, _MISSING)
                if res is _MISSING:
                    res = self._edge_fixed(bi, bj, c, cb)
                if res is not None:
                    weights[(i, j)] = res[0] - base
        r = self._mat[(c, cb)] = (left, right, weights)
        return r

    def _extend(self, c: int, cb: int, bb=None):
        """Best extension at the mapped pair ``c -> cb`` into the B-nodes below
        ``c`` (in g) and the B-nodes at ``cb`` other than ``bb`` (in h).

        Returns ``(gain, matched)``; ``gain`` excludes the score of ``c -> cb``.
        """
        key = (c, cb, bb)
        r = self._ext.get(key)
        if r is not None:
            return r
        right = self.H.nodes_at[cb]
        if not self.G.children[c] or (bb is not None and len(right) == 1):
            r = _NO_EXT
        elif bb is None:
            r = self._match(*self._matrix(c, cb))
        else:
            full = self._ext.get((c, cb, None)) or self._extend(c, cb)
            for pair in full[1]:
                if pair[1] == bb:
                    break
            else:
                r = full
            if r is None:
                left, right, weights = self._matrix(c, cb)
                jx = right.index(bb)
                r = self._match(left, right, {k: v for k, v in weights.items() if k[1] != jx})
        self._ext[key] = r
        return r

    def _match(self, left, right, weights):
        if not weights:
            return _NO_EXT
        self.stats["matchings"] += 1
        if len(weights) == 1:
            for (i, j), total in weights.items():
                return (total, ((left[i], right[j]),))
        pairs, total = match_indices(len(left), len(right), weights)
        return (total, tuple((left[i], right[j]) for i, j in pairs))

    def _edge_fixed(self, bi: int, bj: int, c: int, cb: int):
        """Best isomorphism mapping an edge of ``bi`` into ``bj`` with ``c -> cb``,
        extended away from ``c``; ``None`` if there is none.

        Returns ``(weight, plan)`` with ``plan = (bi, bj, pairs, ext)``.
        """
        vw = self.vw
        res = None
        if not self.G.is_block[bi]:
            a, b = self.G.ends[bi]
            x = a + b - c
            a, b = self.H.ends[bj]
            xb = a + b - cb
            sx = vw[x][xb]
            if sx is not FORBIDDEN:
                se = self.sc.edge_by_label(self.G.bridge_label[bi], self.H.bridge_label[bj])
                if se is not FORBIDDEN:
                    gain = self._extend(x, xb, bj)[0] if self.G.children[x] else 0
                    res = (vw[c][cb] + sx + se + gain, (bi, bj, ((c, cb), (x, xb)), ((x, xb),)))
        else:
            best = None
            best_piece = None
            extend = self._extend
            pp = self._pieces(bi, bj)
            if self.G.is_cut[c]:
                cands = pp.by_pair.get((c, cb), ())
            else:
                cands = [p for p in pp.pieces if p.vmap.get(c) == cb]
            for p in cands:
                val = p.weight
                for c2, cb2 in p.cuts:
                    if c2 != c:
                        val += extend(c2, cb2, bj)[0]
                if best is None or val > best:
                    best, best_piece = val, p
            if best_piece is not None:
                ext = tuple(pc for pc in best_piece.cuts if pc[0] != c)
                res = (best, (bi, bj, best_piece.vmap, ext))
        self._fixed[(bi, bj, c, cb)] = res
        return res

    def _edge_top(self, b: int, bb: int, xcut):
        """Best isomorphism mapping an edge of ``b`` into ``bb`` and avoiding ``xcut``."""
        bg, bh = self.G.bnodes[b], self.H.bnodes[bb]
        vw = self.vw
        best = None
        if not bg.is_block:
            p, q = bg.edges[0]
            if p == xcut or q == xcut:
                return None
            se = self.sc.edge(bg.edges[0], bh.edges[0])
            if se is FORBIDDEN:
                return None
            pb, qb = bh.edges[0]
            for mp, mq in ((pb, qb), (qb, pb)):
                s1, s2 = vw[p][mp], vw[q][mq]
                if s1 is FORBIDDEN or s2 is FORBIDDEN:
                    continue
                val = s1 + s2 + se + self._extend(p, mp, bb)[0] + self._extend(q, mq, bb)[0]
                if best is None or val > best[0]:
                    best = (val, (b, bb, ((p, mp), (q, mq)), ((p, mp), (q, mq))))
            return best
        for piece in self._pieces_excluding(b, bb, xcut):
            val = piece.weight
            for c, cb in piece.cuts:
                val += self._extend(c, cb, bb)[0]
            if best is None or val > best[0]:
                best = (val, (b, bb, piece.vmap, piece.cuts))
        return best

    def solve(self) -> Isomorphism:
        """Maximum weight BBP isomorphism; the empty map when nothing is admissible."""
        G, H, vw = self.G, self.H, self.vw
        best_w = 0
        best_plan = None
        if G.g.n == 0 or H.g.n == 0:
            return Isomorphism({}, 0)
        if not G.bnodes:
            for vb in range(H.g.n):
                s = vw[0][vb]
                if s is not FORBIDDEN and (best_plan is None or s > best_w):
                    best_w, best_plan = s, (None, None, ((0, vb),), ())
            return self._realize(best_w, best_plan)

        best_w, best_plan = self._set_sx(G.root, None)
        return self._realize(best_w, best_plan)

    def _set_sx(self, root: int, xcut):
        """Best ``(weight, plan)`` over isomorphisms inside the subtree of ``root``
        that avoid ``xcut``; ``(0, None)`` if none is admissible."""
        G, H, vw = self.G, self.H, self.vw
        best_w = 0
        best_plan = None
        hkinds = [[bb.index for bb in H.bnodes if not bb.is_block],
                  [bb.index for bb in H.bnodes if bb.is_block]]
        stack = [(root, xcut)]
        while stack:
            b, xcut = stack.pop()
            node = G.bnodes[b]
            # at least one edge of b mapped
            for bb in hkinds[node.is_block]:
                res = self._edge_top(b, bb, xcut)
                if res is not None and (best_plan is None or res[0] > best_w):
                    best_w, best_plan = res
            # exactly one vertex of b mapped
            for v in sorted(node.vertices):
                if v == xcut:
                    continue
                row = vw[v]
                cut = G.is_cut[v]
                for vb in range(H.g.n):
                    s = row[vb]
                    if s is FORBIDDEN:
                        continue
                    if cut:
                        gain, _ = self._extend(v, vb)
                        val = s + gain
                        plan = (b, None, ((v, vb),), ((v, vb),))
                    else:
                        val = s
                        plan = (b, None, ((v, vb),), ())
                    if best_plan is None or val > best_w:
                        best_w, best_plan = val, plan
            # no vertex of b mapped: recurse below each cutvertex
            children = []
            for c in sorted(node.vertices):
                if c == xcut or not G.is_cut[c]:
                    continue
                for child in G.nodes_at[c]:
                    if child != b:
                        children.append((child, c))
            stack.extend(reversed(children))
        return best_w, best_plan

    def _realize(self, weight, plan) -> Isomorphism:
        if plan is None:
            return Isomorphism({}, 0)
        out: dict = {}
        todo = [plan]
        while todo:
            b, bb, vmap, ext = todo.pop()
            out.update(vmap)
            for c, cb in ext:
                _, matched = self._extend(c, cb, bb)
                for bi, bj in matched:
                    res = self._fixed.get((bi, bj, c, cb))
                    if res is None:
                        res = self._edge_fixed(bi, bj, c, cb)
                    todo.append(res[1])
        return Isomorphism(dict(sorted(out.items())), weight)


class BBPContext:
    """Shared state for the partition-level operations on one connected pair.

    Solvers are memoised per BC-tree rooting of ``g``; each operation picks the
    rooting in which its excluded cutvertex sits directly above ``b``.
    """

    def __init__(self, g: LabeledGraph, h: LabeledGraph, w: WeightFn = LABEL_EQUALITY):
        self.g, self.h, self.w = g, h, w
        self.scorer = Scorer(g, h, w)
        self._solvers: dict = {}
        base = self.solver(0)
        self.bc_tree = base.G.bct

    def solver(self, root: int) -> BBPSolver:
        s = self._solvers.get(root)
        if s is None:
            s = self._solvers[root] = BBPSolver(self.g, self.h, self.w, self.scorer, root=root)
        return s

    def _rooted(self, b: int, x):
        """Solver in which ``x`` (a cutvertex of ``b`` or None) is the parent of ``b``."""
        bct = self.bc_tree
        if not 0 <= b < len(bct.b_nodes):
            raise ValueError(f"no B-node {b}")
        if x is None:
            return self.solver(b)
        if x not in bct.b_nodes[b].vertices or len(bct.nodes_at[x]) < 2:
            raise ValueError(f"{x} is not a cutvertex of B-node {b}")
        return self.solver(min(a for a in bct.nodes_at[x] if a != b))

    def _scope(self, b: int, X):
        """Rooted solver and parent cut for ``CC(V(g) - X, V(b))``."""
        X = set(X)
        inside = X & self.bc_tree.b_nodes[b].vertices
        if len(inside) > 1:
            raise ValueError("X may contain at most one vertex of b")
        x = next(iter(inside), None)
        s = self._rooted(b, x)
        rest = X - inside
        if rest & _subtree(s.G, b):
            raise ValueError("X must separate b from the rest of the graph at one cutvertex")
        return s, x


def _subtree(P: _Prepared, b: int) -> set:
    out = set()
    stack = [b]
    while stack:
        a = stack.pop()
        out |= P.bnodes[a].vertices
        for c in P.bnodes[a].vertices:
            if P.children[c] and a not in P.children[c]:
                stack.extend(P.children[c])
    return out


def set_sx(b: int, X, ctx: BBPContext) -> Isomorphism:
    """Maximum weight isomorphism inside ``CC(V(g) - X, V(b))``.

    The candidates map an edge of ``b``, exactly one vertex of ``b``, or no
    vertex of ``b`` (then they live below a cutvertex of ``b`` not in ``X``).

    Parameters
    ----------
    b : int
        B-node index in ``ctx.bc_tree``.
    X : iterable of int
        Excluded vertices. At most one lies in ``b`` and it must be a
        cutvertex; the others must lie beyond it.
    ctx : BBPContext

    Raises
    ------
    ValueError
        If ``X`` does not cut the graph at a single cutvertex of ``b``.
    """
    s, x = ctx._scope(b, X)
    return s._realize(*s._set_sx(b, x))


def bbp_edge(b: int, bb: int, X, fixed=None, ctx: BBPContext | None = None) -> Isomorphism:
    """Best isomorphism mapping at least one edge of B-node ``b`` into ``bb``.

    Without ``fixed`` the result avoids ``X`` (see :func:`set_sx`). With
    ``fixed = (v, vb)`` it maps ``v`` to ``vb`` and extends only at the other
    cutvertices of ``b``, so it stays on ``b``'s side of ``v``; ``X`` must
    not meet that side. The empty isomorphism is returned when exactly one of
    ``b`` and ``bb`` is a block, or when nothing is admissible.
    """
    if ctx is None:
        raise ValueError("ctx is required")
    if not 0 <= bb < len(ctx.solver(0).H.bnodes):
        raise ValueError(f"no B-node {bb} in h")
    if fixed is None:
        s, x = ctx._scope(b, X)
        if s.G.is_block[b] != s.H.is_block[bb]:
            return Isomorphism({}, 0)
        res = s._edge_top(b, bb, x)
    else:
        v, vb = fixed
        if v not in ctx.bc_tree.b_nodes[b].vertices:
            raise ValueError(f"{v} is not a vertex of B-node {b}")
        if vb not in ctx.solver(0).H.bnodes[bb].vertices:
            raise ValueError(f"{vb} is not a vertex of B-node {bb} in h")
        s = ctx._rooted(b, v if len(ctx.bc_tree.nodes_at[v]) > 1 else None)
        if set(X) & (_subtree(s.G, b) - {v}):
            raise ValueError("X meets the region explored below v")
        if s.G.is_block[b] != s.H.is_block[bb] or s.vw[v][vb] is FORBIDDEN:
            return Isomorphism({}, 0)
        res = s._edge_fixed(b, bb, v, vb)
    if res is None:
        return Isomorphism({}, 0)
    return s._realize(*res)


def bbp_single_vertex(b: int, X, v: int, vb: int, ctx: BBPContext) -> Isomorphism:
    """Best isomorphism mapping ``v`` to ``vb`` and no other vertex of ``b``.

    A non-cutvertex ``v`` maps alone. Otherwise the B-nodes below ``v`` are
    matched against all B-nodes containing ``vb``.

    Raises
    ------
    ValueError
        If ``v`` is not in ``b``, lies in ``X``, or the pair is forbidden.
    """
    s, x = ctx._scope(b, X)
    if v not in ctx.bc_tree.b_nodes[b].vertices or v == x:
        raise ValueError(f"{v} is not an available vertex of B-node {b}")
    score = s.vw[v][vb]
    if score is FORBIDDEN:
        raise ValueError(f"pair ({v}, {vb}) is forbidden")
    if not s.G.is_cut[v]:
        return Isomorphism({v: vb}, score)
    gain, _ = s._extend(v, vb)
    return s._realize(score + gain, (b, None, ((v, vb),), ((v, vb),)))


def _solve_connected(g, h, w, scorer=None) -> Isomorphism:
    limit = sys.getrecursionlimit()
    need = 8 * (g.n + h.n) + 1000
    if need > limit:
        sys.setrecursionlimit(need)
    try:
        return BBPSolver(g, h, w, scorer).solve()
    finally:
        if need > limit:
            sys.setrecursionlimit(limit)


def bbp_mcis(g: LabeledGraph, h: LabeledGraph, w: WeightFn = LABEL_EQUALITY) -> Isomorphism:
    """Maximum weight block-and-bridge preserving common connected induced subgraph.

    Parameters
    ----------
    g, h : LabeledGraph
        Outerplanar graphs; disconnected inputs are handled by solving every
        pair of connected components.
    w : WeightFn
        Vertex and edge pair scores (default: label equality).

    Returns
    -------
    Isomorphism
        ``vertex_map`` from vertices of ``g`` to vertices of ``h``. Empty with
        weight 0 when no pair of vertices is admissible.

    Raises
    ------
    NotOuterplanar
        If either input is not outerplanar.
    """
    comps_g = connected_components(g)
    comps_h = connected_components(h)
    if len(comps_g) <= 1 and len(comps_h) <= 1:
        return _solve_connected(g, h, w)
    subs_g = [g.subgraph(c) for c in comps_g]
    subs_h = [h.subgraph(c) for c in comps_h]
    # validate everything first so the error does not depend on iteration order
    for sub, _ in subs_g + subs_h:
        _Prepared(sub)
    best = Isomorphism({}, 0)
    for sg, old_g in subs_g:
        for sh, old_h in subs_h:
            iso = _solve_connected(sg, sh, w)
            if iso.vertex_map and (not best.vertex_map or iso.weight > best.weight):
                best = Isomorphism(
                    {old_g[x]: old_h[y] for x, y in iso.vertex_map.items()}, iso.weight
                )
    best.vertex_map = dict(sorted(best.vertex_map.items()))
    return best


# re-exported for callers that only catch errors from this module
NotOuterplanar = NotOuterplanar
