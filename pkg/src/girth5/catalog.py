"""Constructors and recognizers for the named graph families."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .embedding import EmbeddedGraph, EmbeddingError, RingSpec
from .planar import embed_plane


@dataclass(frozen=True)
class AbstractGraph:
    """A plain simple graph (no embedding)."""

    vertices: tuple
    edges: tuple

    def edge_pairs(self):
        return list(self.edges)

    @property
    def adj(self):
        out = {v: set() for v in self.vertices}
        for u, v in self.edges:
            out[u].add(v)
            out[v].add(u)
        return out


# -- chains -----------------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainSpec:
    steps: int
    embedding: str = "abstract"  # abstract | canonical-klein | broken-cylinder

    def __post_init__(self):
        if self.steps < 0:
            raise ValueError("steps must be non-negative")
        if self.embedding not in ("abstract", "canonical-klein", "broken-cylinder"):
            raise ValueError(f"unknown chain embedding {self.embedding!r}")


@dataclass(frozen=True)
class Chain:
    graph: object  # AbstractGraph or EmbeddedGraph
    e1: tuple
    e2: tuple
    pair_left: tuple = ()  # designated A, B on the first ring (broken chains)
    pair_right: tuple = ()  # the corresponding pair on the last ring


def chain_edges(k: int):
    """Edges of the (e1, e2)-chain after k steps, with e1 and e2."""
    edges = {(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)}
    e1, e2 = (0, 1), (2, 3)
    nxt = 4
    for _ in range(k):
        u1, u2 = e2
        y1, y2, u2p = nxt, nxt + 1, nxt + 2
        nxt += 3
        edges.discard((min(u1, u2), max(u1, u2)))
        for a, b in ((y1, y2), (u2, u2p), (u1, y1), (u1, y2), (u2p, y1), (u2p, y2)):
            edges.add((min(a, b), max(a, b)))
        e2 = (y1, y2)
    return sorted(edges), e1, e2, nxt


def _triangles_on(edges, e):
    adj = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    u, v = e
    return sorted(adj[u] & adj[v])


def make_chain(spec: ChainSpec) -> Chain:
    k = spec.steps
    edges, e1, e2, n = chain_edges(k)
    if spec.embedding == "abstract":
        return Chain(AbstractGraph(tuple(range(n)), tuple(edges)), e1, e2)
    plane = embed_plane(edges)
    if spec.embedding == "canonical-klein":
        # a crosscap on an edge is a twist of its sign
        twisted = {plane.edge_between(*e1), plane.edge_between(*e2)}
        signs = {e: (-1 if e in twisted else 1) for e in plane.edges}
        return Chain(plane.replace(signs=signs), e1, e2)
    if k < 2:
        raise EmbeddingError("broken chain needs at least two steps for vertex-disjoint rings")
    x1, x2 = _triangles_on(edges, e1)
    z1, z2 = _triangles_on(edges, e2)
    kept = [e for e in edges if e not in (e1, e2)]
    ring1 = (e1[0], x1, e1[1], x2)
    ring2 = (e2[0], z1, e2[1], z2)
    G = embed_plane(kept, rings=[ring1, ring2])
    if G is None:
        raise EmbeddingError("broken chain rings are not simultaneously facial")
    # distinct colors on the ends of e1 force distinct colors on z1, z2
    return Chain(G, e1, e2, tuple(e1), (z1, z2))


def count_triangles(adj) -> int:
    n = 0
    for u in adj:
        for v in adj[u]:
            if v > u:
                n += sum(1 for w in adj[u] & adj[v] if w > v)
    return n


# -- exceptional disk graphs ----------------------------------------------------------------------------


EXCEPTIONAL_MIN_LENGTH = {"E0": 5, "E1": 8, "E2": 9, "E3": 11, "E4": 10, "E5": 10}


@dataclass(frozen=True)
class ExceptionalClass:
    value: Optional[str]  # "E0".."E5" or None

    @property
    def very_exceptional(self) -> bool:
        return self.value in ("E1", "E2", "E3")

    def __str__(self):
        return self.value or "none"


def _default_attachment(cls, l):
    return {"E0": (), "E1": (0, 4), "E2": (0, 3, 6), "E3": (0, 3, 7),
            "E4": (0, 3, 5, 8), "E5": (0, 2, 4, 6, 8)}[cls]


_EXPECTED_FACES = {
    "E1": None,
    "E2": lambda l: [5, 5, l - 4],
    "E3": lambda l: [5, 6, l - 5],
    "E4": lambda l: [5, 5, 5, l - 5],
    "E5": lambda l: [5, 5, 5, 5, 5, l - 5],
}


def make_exceptional(cls: str, l: int, attachment=None) -> EmbeddedGraph:
    """Disk graph with ring 0..l-1 realising class ``cls``.

    ``attachment`` lists ring positions: the chord ends (E1), the three
    neighbours of the centre (E2, E3), the ring neighbours of the two adjacent
    centres (E4, first two for one centre), or of the five cycle vertices (E5).
    """
    if cls not in EXCEPTIONAL_MIN_LENGTH:
        raise ValueError(f"unknown exceptional class {cls}")
    if l < EXCEPTIONAL_MIN_LENGTH[cls]:
        raise ValueError(f"class/length mismatch: {cls} needs l >= {EXCEPTIONAL_MIN_LENGTH[cls]}")
    att = tuple(attachment) if attachment is not None else _default_attachment(cls, l)
    ring = list(range(l))
    edges = [(i, (i + 1) % l) for i in range(l)]
    c = l
    if cls == "E1":
        edges.append(tuple(att))
    elif cls in ("E2", "E3"):
        edges += [(c, a) for a in att]
    elif cls == "E4":
        edges += [(c, c + 1), (c, att[0]), (c, att[1]), (c + 1, att[2]), (c + 1, att[3])]
    elif cls == "E5":
        for i in range(5):
            edges += [(c + i, c + (i + 1) % 5), (c + i, att[i])]
    G = embed_plane(edges, rings=[ring])
    if G is None:
        raise ValueError("attachment fails: not embeddable with the ring facial")
    got = classify_exceptional(G)
    if got.value != cls:
        raise ValueError(f"attachment fails face-length check (got {got})")
    return G


def classify_exceptional(G: EmbeddedGraph) -> ExceptionalClass:
    if len(G.rings) != 1 or G.rings[0].kind != "facial" or G.euler_genus() != 0:
        raise EmbeddingError("not a disk instance")
    R = G.rings[0]
    l = R.length
    if l < 5:
        raise EmbeddingError("not a disk instance: ring shorter than five")
    inner = [v for v in G.vertices if v not in R.vertices]
    extra = len(G.edges) - l
    faces = sorted(f.length for f in G.internal_faces())
    if not inner and extra == 0:
        return ExceptionalClass("E0")
    if l >= 8 and not inner and extra == 1:
        return ExceptionalClass("E1")
    deg = {v: G.degree(v) for v in inner}
    if len(inner) == 1 and deg[inner[0]] == 3:
        if l >= 9 and faces == sorted(_EXPECTED_FACES["E2"](l)):
            return ExceptionalClass("E2")
        if l >= 11 and faces == sorted(_EXPECTED_FACES["E3"](l)):
            return ExceptionalClass("E3")
    if l >= 10 and len(inner) == 2 and all(d == 3 for d in deg.values()) and inner[1] in G.adj[inner[0]]:
        if faces == sorted(_EXPECTED_FACES["E4"](l)):
            return ExceptionalClass("E4")
    if l >= 10 and len(inner) == 5 and all(d == 3 for d in deg.values()):
        S = set(inner)
        if all(len(G.adj[v] & S) == 2 for v in inner) and faces == sorted(_EXPECTED_FACES["E5"](l)):
            # the five vertices must bound a face
            if any(f.closed_2cell and set(f.walks[0].vertices) == S for f in G.internal_faces()):
                return ExceptionalClass("E5")
    return ExceptionalClass(None)


# -- Mycielski ------------------------------------------------------------------------------------------


def make_mycielski(l: int) -> AbstractGraph:
    if l < 5 or l % 2 == 0:
        raise ValueError("Mycielski construction here needs an odd cycle of length >= 5")
    edges = set()
    for i in range(l):
        j = (i + 1) % l
        edges.add((min(i, j), max(i, j)))
        edges.add((min(l + i, j), max(l + i, j)))
        edges.add((min(l + j, i), max(l + j, i)))
        edges.add((l + i, 2 * l))
    return AbstractGraph(tuple(range(2 * l + 1)), tuple(sorted(edges)))


# -- broken chain recognition --------------------------------------------------------------------------------


def is_broken_chain(G: EmbeddedGraph):
    """(True, k) if G is a broken chain with its two 4-rings, else (False, None)."""
    from .canonical import canonical_form

    facial = [r for r in G.rings if r.kind == "facial"]
    if len(G.rings) != 2 or len(facial) != 2 or any(r.length != 4 for r in facial):
        return False, None
    n = len(G.vertices)
    if (n - 4) % 3:
        return False, None
    k = (n - 4) // 3
    if k < 2:
        return False, None
    ref = make_chain(ChainSpec(k, "broken-cylinder")).graph
    if len(ref.edges) != len(G.edges):
        return False, None
    ok = canonical_form(G) == canonical_form(ref)
    return ok, (k if ok else None)


# -- random triangle-free planar graphs ---------------------------------------------------------------------


def _segments_cross(p, q, r, s):
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    return (orient(p, q, r) * orient(p, q, s) < 0) and (orient(r, s, p) * orient(r, s, q) < 0)


def random_triangle_free_planar(n: int, rng: random.Random) -> AbstractGraph:
    """Straight-line drawing of random points, adding non-crossing edges that close no triangle."""
    pts = [(rng.random(), rng.random()) for _ in range(n)]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    adj = {i: set() for i in range(n)}
    segs = []
    for i, j in pairs:
        if adj[i] & adj[j]:
            continue
        p, q = pts[i], pts[j]
        if any(_segments_cross(p, q, pts[a], pts[b]) for a, b in segs if len({a, b, i, j}) == 4):
            continue
        # reject collinear overlaps through a third point
        if any(_on_segment(pts[m], p, q) for m in range(n) if m not in (i, j)):
            continue
        segs.append((i, j))
        adj[i].add(j)
        adj[j].add(i)
    return AbstractGraph(tuple(range(n)), tuple(sorted(segs)))


def _on_segment(m, p, q):
    cross = (q[0] - p[0]) * (m[1] - p[1]) - (q[1] - p[1]) * (m[0] - p[0])
    if cross != 0:
        return False
    return min(p[0], q[0]) <= m[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= m[1] <= max(p[1], q[1])


# -- cylinder instances for short-cycle bounds -------------------------------------------------------------------


def _ring_pair(l1, l2, links):
    """Two rings of lengths l1, l2 joined by edges ``links`` = [(i, j)] (ring positions)."""
    r1 = list(range(l1))
    r2 = list(range(l1, l1 + l2))
    edges = [(r1[i], r1[(i + 1) % l1]) for i in range(l1)] + [(r2[i], r2[(i + 1) % l2]) for i in range(l2)]
    edges += [(r1[i], r2[j]) for i, j in links]
    return edges, r1, r2


def narrow_cylinder_instances() -> list:
    """Twenty-five cylinder instances with two rings of lengths in {4, 5, 6, 7}.

    Broken chains for k = 2..10, single-edge joins for every length pair, and
    double-edge joins whose contractible cycles have length at least five.
    """
    out = []
    for k in range(2, 11):
        out.append((f"broken-chain-{k}", make_chain(ChainSpec(k, "broken-cylinder")).graph))
    lengths = (4, 5, 6, 7)
    for a in lengths:
        for b in lengths:
            if a <= b:
                edges, r1, r2 = _ring_pair(a, b, [(0, 0)])
                out.append((f"single-edge-{a}-{b}", embed_plane(edges, rings=[r1, r2])))
    for a, b in ((5, 5), (5, 6), (6, 6), (6, 7), (7, 7), (4, 7)):
        # ring arcs of length >= 2 on each side keep both contractible cycles of length >= 6
        i2 = a // 2
        j2 = b - b // 2
        edges, r1, r2 = _ring_pair(a, b, [(0, 0), (i2, j2)])
        G = embed_plane(edges, rings=[r1, r2])
        out.append((f"double-edge-{a}-{b}", G))
    return out[:25]
