"""Maximum common biconnected induced subgraphs of biconnected outerplanar graphs.

An edge-to-edge seed together with a mapping type fixes at most one maximal
isomorphism: mapping one face forces the whole boundary cycle, and every
extension must swallow a neighbouring face across a shared chord. Maximal
isomorphisms are grown over the weak dual trees, split at forbidden pairs, and
a table over (edge of G, edge of H, type) guarantees each maximal isomorphism
is built once, for O(|G||H|) total work.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterator

from .graph import LabeledGraph, biconnected_parts
from .outerplanar import OuterplanarEmbedding, embed_block
from .weights import FORBIDDEN, Scorer, WeightFn

__all__ = [
    "MappingType",
    "BiconIso",
    "TableD",
    "type_valid",
    "maximal_iso",
    "split_iso",
    "mcis2_weight",
    "mcis2_enumerate",
    "BlockPair",
]


class MappingType(IntEnum):
    """How an edge ``uv`` with faces ``(A, B)`` lands on ``u'v'`` with ``(A', B')``.

    1: u->u', A->A'   2: u->v', A->A'   3: u->u', A->B'   4: u->v', A->B'
    """

    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4

    @property
    def endpoint_swap(self) -> bool:
        return bool((self - 1) & 1)

    @property
    def face_swap(self) -> bool:
        return bool((self - 1) >> 1)

    @classmethod
    def from_bits(cls, endpoint_swap: bool, face_swap: bool) -> "MappingType":
        return cls(1 + int(endpoint_swap) + 2 * int(face_swap))


@dataclass(eq=False)
class BiconIso:
    """Isomorphism between biconnected common induced subgraphs of two blocks.

    ``edge_types`` maps each mapped edge of G (canonical pair) to its image
    edge and :class:`MappingType`. ``weight`` is ``None`` for an unsplit
    maximal isomorphism, whose weight is undefined until forbidden pairs are
    removed.
    """

    vertex_map: dict
    edge_types: dict
    weight: object = None
    face_map: dict = field(default_factory=dict)
    seed: tuple | None = None
    emb_g: object = field(default=None, repr=False)
    emb_h: object = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.vertex_map)

    def key(self) -> frozenset:
        return frozenset(self.vertex_map.items())


class TableD:
    """Dense (edge of G, edge of H, type) table; each cell is written at most once."""

    UNDEFINED = None

    __slots__ = ("mg", "mh", "cells", "writes")

    def __init__(self, mg: int, mh: int):
        self.mg, self.mh = mg, mh
        self.cells = [None] * (4 * mg * mh)
        self.writes = 0

    def index(self, e: int, f: int, t: int) -> int:
        return ((e * self.mh) + f) * 4 + (t - 1)

    def get(self, e: int, f: int, t: int):
        return self.cells[self.index(e, f, t)]

    def is_defined(self, e: int, f: int, t: int) -> bool:
        return self.cells[self.index(e, f, t)] is not None

    def write(self, e: int, f: int, t: int, value) -> None:
        i = self.index(e, f, t)
        if self.cells[i] is not None:
            raise RuntimeError(f"cell ({e}, {f}, {t}) written twice")
        self.cells[i] = value
        self.writes += 1

    def defined_count(self) -> int:
        return sum(1 for c in self.cells if c is not None)

    def max_entry(self):
        best = None
        for c in self.cells:
            if c is None or c is FORBIDDEN:
                continue
            if best is None or c > best:
                best = c
        return best


class _Piece:
    """A split isomorphism in compact form: map, G edge ids, weight."""

    __slots__ = ("vmap", "edges", "weight")

    def __init__(self, vmap, edges, weight):
        self.vmap = vmap
        self.edges = edges
        self.weight = weight


class BlockPair:
    """Pre-indexed pair of embedded blocks; the engine behind the public functions.

    ``scorer`` is required for splitting (weights); ``maximal`` works without it.
    """

    def __init__(self, emb_g: OuterplanarEmbedding, emb_h: OuterplanarEmbedding,
                 scorer: Scorer | None = None):
        self.eg, self.eh = emb_g, emb_h
        self.scorer = scorer
        self.gsize = emb_g.sizes
        self.hsize = emb_h.sizes
        self.gfe = emb_g.edge_faces
        self.hfe = emb_h.edge_faces
        self.gface_edges = emb_g.face_edges
        self.hface_edges = emb_h.face_edges
        self.guard_rejections = 0
        if scorer is not None:
            self.glab = emb_g.edge_labels
            self.hlab = emb_h.edge_labels
            if self.glab is None or self.hlab is None:
                raise ValueError("scoring needs embeddings that carry their graphs")

    # -- seeds -----------------------------------------------------------

    def _face_pairs(self, e: int, f: int, t: int):
        ag, bg = self.gfe[e]
        ah, bh = self.hfe[f]
        if (t - 1) >> 1:
            return ((ag, bh), (bg, ah))
        return ((ag, ah), (bg, bh))

    def type_valid(self, e: int, f: int, t: int) -> bool:
        gs, hs = self.gsize, self.hsize
        for fg, fh in self._face_pairs(e, f, t):
            if fg >= 0 and fh >= 0 and gs[fg] == hs[fh]:
                return True
        return False

    @staticmethod
    def _slot_sizes(emb):
        """Per edge, the lengths of its two face slots; 0 stands for OUTER."""
        sz = emb.sizes
        return [(sz[a], sz[b] if b >= 0 else 0) for a, b in emb.edge_faces]

    # -- maximal isomorphism --------------------------------------------

    def maximal(self, e: int, f: int, t: int):
        """Grow the unique maximal isomorphism for seed ``(e, f, t)``.

        Returns ``(vmap, face_map, etypes)`` where ``etypes`` maps G edge ids
        to ``(H edge id, type)``.
        """
        eg, eh = self.eg, self.eh
        gfe, hfe = self.gfe, self.hfe
        gs, hs = self.gsize, self.hsize
        gcyc, hcyc = eg.faces, eh.faces
        gpos, hpos = eg.face_pos, eh.face_pos
        gfed, hfed = self.gface_edges, self.hface_edges
        gedges, hedges = eg.edges, eh.edges
        gadj, hadj = eg.adj, eh.adj
        u, v = gedges[e]
        u2, v2 = hedges[f]
        if (t - 1) & 1:
            u2, v2 = v2, u2
        vmap: dict = {}
        inv: dict = {}
        fmap: dict = {}
        etypes: dict = {}
        queue = deque()
        for fg, fh in self._face_pairs(e, f, t):
            if fg >= 0 and fh >= 0 and gs[fg] == hs[fh]:
                queue.append((fg, fh, u, v, u2, v2))
        while queue:
            fg, fh, a, b, a2, b2 = queue.popleft()
            if fg in fmap:
                continue
            cg, ch = gcyc[fg], hcyc[fh]
            n = len(cg)
            i = gpos[fg][a]
            i2 = hpos[fh][a2]
            # boundary from a, leaving away from b, with the edge id after each vertex
            if cg[i - 1] == b:
                sg = cg[i:] + cg[:i]
                eg_seq = gfed[fg][i:] + gfed[fg][:i]
            else:
                sg = (cg[i::-1] + cg[:i:-1])
                fe = gfed[fg]
                eg_seq = fe[i - 1::-1] + fe[:i - 1:-1] if i else fe[::-1]
            if ch[i2 - 1] == b2:
                sh = ch[i2:] + ch[:i2]
                eh_seq = hfed[fh][i2:] + hfed[fh][:i2]
            else:
                sh = (ch[i2::-1] + ch[:i2:-1])
                fe = hfed[fh]
                eh_seq = fe[i2 - 1::-1] + fe[:i2 - 1:-1] if i2 else fe[::-1]
            new = {}
            newinv = {}
            ok = True
            for x, y in zip(sg, sh):
                if x in vmap:
                    if vmap[x] != y:
                        ok = False
                        break
                elif y in inv:
                    ok = False
                    break
                else:
                    new[x] = y
                    newinv[y] = x
            if ok and new:
                # induced guard: adjacency to already mapped vertices must agree
                for x, y in new.items():
                    cnt = 0
                    hy = hadj[y]
                    for z in gadj[x]:
                        iz = vmap.get(z)
                        if iz is None:
                            iz = new.get(z)
                        if iz is not None:
                            if iz not in hy:
                                ok = False
                                break
                            cnt += 1
                    if not ok:
                        break
                    cnt2 = 0
                    for z2 in hy:
                        if z2 in inv or z2 in newinv:
                            cnt2 += 1
                    if cnt2 != cnt:
                        ok = False
                        break
            if not ok:
                self.guard_rejections += 1
                continue
            vmap.update(new)
            inv.update(newinv)
            fmap[fg] = fh
            for k in range(n):
                ge = eg_seq[k]
                he = eh_seq[k]
                pg = gfe[ge]
                ph = hfe[he]
                sgl = 0 if pg[0] == fg else 1
                shl = 0 if ph[0] == fh else 1
                if ge not in etypes:
                    es = vmap[gedges[ge][0]] != hedges[he][0]
                    etypes[ge] = (he, 1 + es + 2 * (sgl != shl))
                og = pg[1 - sgl]
                oh = ph[1 - shl]
                if og >= 0 and oh >= 0 and og not in fmap and gs[og] == hs[oh]:
                    k1 = k + 1 if k + 1 < n else 0
                    queue.append((og, oh, sg[k], sg[k1], sh[k], sh[k1]))
        return vmap, fmap, etypes

    # -- splitting ------------------------------------------------------

    def split(self, vmap: dict, fmap: dict, etypes: dict, excluded=()) -> list:
        """Split a maximal isomorphism at forbidden pairs into admissible blocks.

        Vertices in ``excluded`` are treated as forbidden on the G side.
        """
        sc = self.scorer
        vw = sc.vw
        bad_v = set()
        vsum = 0
        for x, y in vmap.items():
            s = vw[x][y]
            if s is FORBIDDEN or x in excluded:
                bad_v.add(x)
            else:
                vsum += s
        glab, hlab = self.glab, self.hlab
        escore = {}
        bad_e = set()
        for ge, (he, _t) in etypes.items():
            s = sc.edge_by_label(glab[ge], hlab[he])
            if s is FORBIDDEN:
                bad_e.add(ge)
            else:
                escore[ge] = s
        if not bad_v and not bad_e:
            return [_Piece(vmap, list(etypes), vsum + sum(escore.values()))]

        # cut the dual tree at forbidden chords
        region = {}
        dual = self.eg.dual_tree
        for start in fmap:
            if start in region:
                continue
            region[start] = start
            stack = [start]
            while stack:
                fc = stack.pop()
                for nf, eid in dual[fc]:
                    if nf in fmap and nf not in region and eid not in bad_e:
                        region[nf] = start
                        stack.append(nf)
        groups: dict = {}
        for fc, root in region.items():
            groups.setdefault(root, []).append(fc)

        gedges = self.eg.edges
        pieces = []
        for faces in groups.values():
            eids = set()
            for fc in faces:
                eids.update(self.gface_edges[fc])
            adj: dict = {}
            for ge in eids:
                if ge in bad_e:
                    continue
                x, y = gedges[ge]
                if x in bad_v or y in bad_v:
                    continue
                adj.setdefault(x, []).append(y)
                adj.setdefault(y, []).append(x)
            parts, _ = biconnected_parts(adj, roots=sorted(adj))
            for part in parts:
                if len(part) < 3:
                    continue
                pe = []
                verts = set()
                for x, y in part:
                    pe.append(self.eg.edge_index[(x, y) if x < y else (y, x)])
                    verts.add(x)
                    verts.add(y)
                pmap = {x: vmap[x] for x in sorted(verts)}
                w = sum(vw[x][y] for x, y in pmap.items()) + sum(escore[ge] for ge in pe)
                pieces.append(_Piece(pmap, sorted(pe), w))
        return pieces

    # -- enumeration ----------------------------------------------------

    def run(self, table: TableD | None = None, excluded=()) -> Iterator:
        """Yield ``(seed, (vmap, fmap, etypes), pieces)`` once per maximal isomorphism."""
        mg, mh = len(self.eg.edges), len(self.eh.edges)
        if table is None:
            table = TableD(mg, mh)
        cells = table.cells
        gslots = self._slot_sizes(self.eg)
        hslots = self._slot_sizes(self.eh)
        for e in range(mg):
            ga, gb = gslots[e]
            for f in range(mh):
                ha, hb = hslots[f]
                straight = (ga == ha) or (gb == hb and gb)
                crossed = (ga == hb) or (gb == ha and gb)
                if not (straight or crossed):
                    continue
                base = (e * mh + f) * 4
                for t in (1, 2, 3, 4):
                    if not (crossed if t > 2 else straight):
                        continue
                    if cells[base + t - 1] is not None:
                        continue
                    phi = self.maximal(e, f, t)
                    pieces = self.split(*phi, excluded=excluded)
                    owner = {}
                    for p in pieces:
                        for ge in p.edges:
                            owner[ge] = p.weight
                    for ge, (he, tt) in phi[2].items():
                        i = (ge * mh + he) * 4 + tt - 1
                        if cells[i] is not None:
                            raise RuntimeError(f"cell ({ge}, {he}, {tt}) written twice")
                        cells[i] = owner.get(ge, FORBIDDEN)
                    table.writes += len(phi[2])
                    yield (e, f, t), phi, pieces


def _face_edge_ids(emb: OuterplanarEmbedding, face: int) -> list:
    cyc = emb.faces[face]
    n = len(cyc)
    out = []
    for j in range(n):
        x, y = cyc[j], cyc[(j + 1) % n]
        out.append(emb.edge_index[(x, y) if x < y else (y, x)])
    return out


# -- public API -------------------------------------------------------------


def _as_embedding(b) -> OuterplanarEmbedding:
    if isinstance(b, OuterplanarEmbedding):
        return b
    if isinstance(b, LabeledGraph):
        return embed_block(b)
    raise TypeError(f"expected a LabeledGraph or OuterplanarEmbedding, got {type(b).__name__}")


def _edge_id(emb: OuterplanarEmbedding, e) -> int:
    if isinstance(e, int):
        return e
    u, v = e
    return emb.edge_index[(u, v) if u < v else (v, u)]


def _to_iso(pair: BlockPair, vmap, etypes, weight, fmap=None, seed=None, edges=None) -> BiconIso:
    eg, eh = pair.eg, pair.eh
    keep = etypes if edges is None else edges
    types = {eg.edges[ge]: (eh.edges[etypes[ge][0]], MappingType(etypes[ge][1])) for ge in keep}
    return BiconIso(dict(vmap), types, weight, dict(fmap or {}), seed, eg, eh)


def type_valid(eG, eH, t, embG: OuterplanarEmbedding, embH: OuterplanarEmbedding) -> bool:
    """True iff type ``t`` pairs at least one inner face of ``eG`` with an
    equally long inner face of ``eH``."""
    pair = BlockPair(embG, embH)
    return pair.type_valid(_edge_id(embG, eG), _edge_id(embH, eH), int(t))


def maximal_iso(eG, eH, t, embG: OuterplanarEmbedding, embH: OuterplanarEmbedding) -> BiconIso:
    """The unique maximal isomorphism mapping ``eG`` onto ``eH`` with type ``t``.

    Weights are ignored. Returns an empty isomorphism when ``t`` is not valid.
    """
    pair = BlockPair(embG, embH)
    e, f = _edge_id(embG, eG), _edge_id(embH, eH)
    if not pair.type_valid(e, f, int(t)):
        return BiconIso({}, {}, None, {}, (e, f, int(t)), embG, embH)
    vmap, fmap, etypes = pair.maximal(e, f, int(t))
    return _to_iso(pair, vmap, etypes, None, fmap, (e, f, int(t)))


def split_iso(phi: BiconIso, w: WeightFn) -> list:
    """Split a maximal isomorphism into admissible biconnected pieces.

    Forbidden chords cut the mapped region apart; forbidden vertices and edges
    are then deleted and each remaining block yields one piece with its weight.
    """
    embG, embH = phi.emb_g, phi.emb_h
    if embG.graph is None or embH.graph is None:
        raise ValueError("splitting needs embeddings that carry their graphs")
    pair = BlockPair(embG, embH, Scorer(embG.graph, embH.graph, w))
    etypes = {
        embG.edge_index[ge]: (embH.edge_index[he], int(t)) for ge, (he, t) in phi.edge_types.items()
    }
    pieces = pair.split(phi.vertex_map, phi.face_map, etypes)
    return [_to_iso(pair, p.vmap, etypes, p.weight, None, phi.seed, p.edges) for p in pieces]


def _prepare(bG, bH, w: WeightFn) -> BlockPair:
    eg, eh = _as_embedding(bG), _as_embedding(bH)
    if eg.graph is None or eh.graph is None:
        raise ValueError("blocks must carry their graphs for scoring")
    return BlockPair(eg, eh, Scorer(eg.graph, eh.graph, w))


def mcis2_weight(bG, bH, w: WeightFn, fixed: tuple | None = None, table: TableD | None = None):
    """Weight of a maximum common biconnected induced subgraph isomorphism.

    Parameters
    ----------
    bG, bH : LabeledGraph or OuterplanarEmbedding
        Biconnected outerplanar graphs (or embedded blocks of larger graphs).
    w : WeightFn
    fixed : (v, v_bar), optional
        Only isomorphisms mapping ``v`` onto ``v_bar`` compete.
    table : TableD, optional
        Table to fill; pass one in to inspect it afterwards.

    Returns
    -------
    (weight, witness)
        ``(0, None)`` when no admissible biconnected common subgraph exists.
        Among equal weights the witness from the smallest seed
        ``(edge of G, edge of H, type)`` wins.
    """
    pair = _prepare(bG, bH, w)
    best = None
    for seed, phi, pieces in pair.run(table):
        for p in pieces:
            if fixed is not None and p.vmap.get(fixed[0], None) != fixed[1]:
                continue
            if best is None or p.weight > best[0]:
                best = (p.weight, _to_iso(pair, p.vmap, phi[2], p.weight, None, seed, p.edges))
    if best is None:
        return 0, None
    return best


def mcis2_enumerate(bG, bH, w: WeightFn) -> Iterator[BiconIso]:
    """Yield every maximum common biconnected induced subgraph isomorphism.

    A first pass finds the maximum weight; a second pass emits each split
    piece of that weight as soon as it is produced. Pieces are unique because
    every maximal isomorphism is generated exactly once.
    """
    pair = _prepare(bG, bH, w)
    wmax = None
    for _seed, _phi, pieces in pair.run():
        for p in pieces:
            if wmax is None or p.weight > wmax:
                wmax = p.weight
    if wmax is None:
        return
    for seed, phi, pieces in pair.run():
        for p in pieces:
            if p.weight == wmax:
                yield _to_iso(pair, p.vmap, phi[2], p.weight, None, seed, p.edges)
