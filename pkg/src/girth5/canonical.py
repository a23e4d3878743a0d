"""Canonical keys for embedded graphs with rings (isomorphism up to relabelling and reflection)."""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import EmbeddedGraph


@dataclass(frozen=True, order=True)
class CanonicalForm:
    key: bytes

    def __str__(self):
        return self.key.hex()[:16]


def _ring_tags(G: EmbeddedGraph, ordered: bool):
    tags = []
    for i, r in enumerate(G.rings):
        t = (r.kind, r.length, r.weak)
        tags.append(t + ((i,) if ordered else ()))
    return tags


def _tables(G: EmbeddedGraph, ordered: bool):
    rtags = _ring_tags(G, ordered)
    vtag = {v: () for v in G.vertices}
    for i, r in enumerate(G.rings):
        for v in r.vertices:
            vtag[v] = rtags[i]
    ftag = []
    for f in G.faces:
        t = []
        if f.is_ring_face:
            t.append(("R",) + rtags[f.ring])
        for ri in f.cuff_rings:
            t.append(("V",) + rtags[ri])
        t.sort()
        ftag.append((tuple(t), f.free_cuffs))
    return vtag, ftag


def _code_from(G, vtag, ftag, corner_face, v0, d0, o0):
    labels = {v0: 0}
    orient = {v0: o0}
    start = {v0: d0}
    queue = [v0]
    code = []
    qi = 0
    rot = G.rotation
    pos = G._pos
    edges = G.edges
    signs = G.signs
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        o = orient[v]
        r = rot[v]
        n = len(r)
        i0 = pos[start[v]]
        entries = []
        for t in range(n):
            x = r[(i0 + o * t) % n]
            e = x.edge
            w = edges[e][1 - x.end]
            s = signs[e]
            if w not in labels:
                labels[w] = len(labels)
                orient[w] = o * s
                start[w] = (e, 1 - x.end)
                queue.append(w)
            corner = x if o == 1 else r[(i0 + o * t - 1) % n]
            entries.append((labels[w], o * s * orient[w], ftag[corner_face[corner]]))
        code.append((vtag[v], n, tuple(entries)))
    return code, labels


def _vertex_invariant(G, vtag, v):
    return (vtag[v], G.degree(v), tuple(sorted(G.degree(w) for w in G.adj[v])))


def canonical_form(G: EmbeddedGraph, ordered_rings: bool = False) -> CanonicalForm:
    """Minimal BFS rotation code over start darts and both local orientations.

    Rings are matched setwise by (kind, length, weak) unless ``ordered_rings``.
    Each corner records the cuff content of its face, so ring faces and
    cuff positions are part of the key.
    """
    vtag, ftag = _tables(G, ordered_rings)
    corner_face = {}
    for v in G.vertices:
        for d in G.rotation[v]:
            corner_face[d] = G.face_of_corner(d).index
    # normalise darts to (edge, end) tuples so the start table can hold either
    corner_face = {(d.edge, d.end): fi for d, fi in corner_face.items()}
    comps = []
    for comp in G.components:
        if len(comp) == 1 and not G.rotation[next(iter(comp))]:
            v = next(iter(comp))
            comps.append(((vtag[v], 0, (ftag[G.face_of_corner(v).index],)),))
            continue
        inv = {v: _vertex_invariant(G, vtag, v) for v in comp}
        best_inv = min(inv.values())
        best = None
        for v in sorted(comp):
            if inv[v] != best_inv:
                continue
            for d in G.rotation[v]:
                for o in (1, -1):
                    code, _ = _code_from(G, vtag, ftag, corner_face, v, (d.edge, d.end), o)
                    if best is None or code < best:
                        best = code
        comps.append(tuple(best))
    comps.sort()
    return CanonicalForm(repr(tuple(comps)).encode())


def canonical_key(G: EmbeddedGraph, ordered_rings: bool = False) -> bytes:
    return canonical_form(G, ordered_rings).key
