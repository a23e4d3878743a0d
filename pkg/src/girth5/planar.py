"""Plane embeddings of abstract graphs with prescribed facial rings."""

from __future__ import annotations

from typing import Iterable, Optional

import networkx as nx

from .embedding import EmbeddedGraph, RingSpec


def _apex_embedding(edges, vertices, ring_cycles):
    H = nx.Graph()
    H.add_nodes_from(vertices)
    H.add_edges_from(edges)
    apexes = []
    top = max(vertices) + 1 if vertices else 0
    for i, cyc in enumerate(ring_cycles):
        a = ("apex", i)
        apexes.append(a)
        for v in cyc:
            H.add_edge(a, v)
    ok, emb = nx.check_planarity(H)
    if not ok:
        return None
    return emb


def embed_plane(edges: Iterable, rings: Iterable = (), vertices: Optional[Iterable[int]] = None,
                vertex_rings: Iterable = ()) -> Optional[EmbeddedGraph]:
    """Embed a simple graph in the sphere so that every cycle in ``rings`` bounds a face.

    ``vertex_rings`` lists ``(v, weak)`` pairs.  Returns None when no such
    embedding exists.
    """
    edges = [tuple(e) for e in edges]
    verts = set(vertices or ()) | {v for e in edges for v in e}
    rings = [tuple(r) for r in rings]
    vertex_rings = list(vertex_rings)
    cuff_sets = rings + [(v,) for v, _ in vertex_rings]
    emb = _apex_embedding(edges, verts, cuff_sets)
    if emb is None:
        return None
    rot = {}
    for v in verts:
        rot[v] = [w for w in emb.neighbors_cw_order(v)] if v in emb else []
    # drop the apex vertices; remember where each apex sat for vertex-ring corners
    corners = {}
    for i, (v, weak) in enumerate(vertex_rings):
        a = ("apex", len(rings) + i)
        order = rot[v]
        j = order.index(a)
        real = [w for w in order if not isinstance(w, tuple)]
        prev = None
        for t in range(1, len(order) + 1):
            w = order[(j - t) % len(order)]
            if not isinstance(w, tuple):
                prev = w
                break
        corners[v] = prev if real else None
    for v in verts:
        rot[v] = [w for w in rot[v] if not isinstance(w, tuple)]
    G0 = EmbeddedGraph.from_neighbor_rotation(rot, validate=False)
    specs = []
    for cyc in rings:
        specs.append(_oriented_ring(G0, cyc))
    for v, weak in vertex_rings:
        c = corners[v]
        specs.append(RingSpec.vertex(v, weak, G0.dart(v, c) if c is not None else None))
    return G0.replace(rings=specs)


def _oriented_ring(G: EmbeddedGraph, cyc) -> RingSpec:
    cyc = tuple(cyc)
    for seq in (cyc, tuple(reversed(cyc))):
        try:
            G.replace(rings=[RingSpec.facial(seq)])
            return RingSpec.facial(seq)
        except ValueError:
            continue
    raise ValueError("cycle does not bound a face")


def is_planar(edges, vertices=()) -> bool:
    H = nx.Graph()
    H.add_nodes_from(vertices)
    H.add_edges_from(edges)
    return nx.check_planarity(H)[0]
