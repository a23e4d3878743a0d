"""Structural properties of embedded graphs with rings and short-cycle queries."""

from __future__ import annotations

from collections import deque
from typing import Iterator, Optional

from .embedding import EmbeddedGraph, EmbeddingError
from . import topology as T


PROPERTY_NAMES = ("I0", "I1", "I2", "I3", "I4", "I5", "I6", "I7", "I8", "I9")


def simple_cycles(adj: dict, max_len: Optional[int] = None, vertices=None) -> Iterator[tuple]:
    """Each simple cycle once, as a vertex tuple starting at its minimum vertex."""
    verts = sorted(adj if vertices is None else vertices)
    allowed = set(verts)
    for s in verts:
        path = [s]
        on_path = {s}

        def dfs(u):
            for w in sorted(adj[u]):
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    yield tuple(path)
                elif w > s and w in allowed and w not in on_path and (max_len is None or len(path) < max_len):
                    path.append(w)
                    on_path.add(w)
                    yield from dfs(w)
                    path.pop()
                    on_path.discard(w)

        yield from dfs(s)


def girth(adj: dict) -> Optional[int]:
    best = None
    for s in adj:
        dist = {s: 0}
        parent = {s: None}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    if best is None or c < best:
                        best = c
    return best


def distances_from(adj: dict, sources) -> dict:
    dist = {s: 0 for s in sources}
    q = deque(sources)
    while q:
        u = q.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                q.append(w)
    return dist


# -- individual properties ------------------------------------------------------------


def _deg3_internal(G):
    return {v for v in G.internal_vertices if G.degree(v) == 3}


def check_i0(G):
    return all(G.degree(v) >= 3 for v in G.internal_vertices)


def check_i1(G):
    S = _deg3_internal(G)
    sub = {v: G.adj[v] & S for v in S}
    return not any(len(c) % 2 == 0 for c in simple_cycles(sub))


def check_i2(G):
    S = _deg3_internal(G)
    sub = {v: G.adj[v] & S for v in S}
    for c in simple_cycles(sub):
        cs = set(c)
        touch = {w for v in c for w in G.adj[v]} - cs
        for u in touch:
            if G.adj[u] & touch - {u}:
                return False
    return True


def check_i3(G):
    return all(f.closed_2cell and f.length >= 5 for f in G.internal_faces())


def check_i4(G):
    rv = G.ring_vertices
    re = G.ring_edges
    for e, (u, v) in G.edges.items():
        if u in rv and v in rv and e not in re:
            return False
    for w in G.vertices:
        ends = [u for u in G.adj[w] if u in rv]
        if len(ends) >= 2:
            if w not in rv:
                return False
            if any(G.edge_between(w, u) not in re for u in ends):
                return False
    return True


def check_i5(G):
    return not any(G.degree(u) == 2 and G.degree(v) == 2 for u, v in G.edges.values())


def internal_two_cut(G) -> Optional[tuple]:
    """A pair {x, y} witnessing an internal 2-cut, or None."""
    rv = G.ring_vertices
    vs = list(G.vertices)
    for i, x in enumerate(vs):
        for y in vs[i + 1:]:
            rest = set(vs) - {x, y}
            seen, comps = set(), []
            for s in rest:
                if s in seen:
                    continue
                comp, stack = {s}, [s]
                seen.add(s)
                while stack:
                    u = stack.pop()
                    for w in G.adj[u]:
                        if w in rest and w not in seen:
                            seen.add(w)
                            comp.add(w)
                            stack.append(w)
                comps.append(comp)
            free = [c for c in comps if not (c & rv)]
            if free and len(comps) >= 2:
                return (x, y)
    return None


def has_omnipresent_face(G):
    return any(T.is_omnipresent(G, f) for f in G.internal_faces())


def check_i6(G):
    sphere = G.euler_genus() == 0 and len(G.rings) == 1
    if sphere or has_omnipresent_face(G):
        return internal_two_cut(G) is None
    return True


def check_i7(G):
    for i, r in enumerate(G.rings):
        dist = distances_from(G.adj, list(r.vertices))
        for j, r2 in enumerate(G.rings):
            if j != i and any(dist.get(v, 99) < 4 for v in r2.vertices):
                return False
    return True


def separates(G, C) -> bool:
    return T.cycle_sides(G, C) is not None


def check_i8(G):
    for c in simple_cycles(G.adj, 6):
        if not separates(G, c):
            return False
    return True


def ring_free_disks(G, C):
    """Face sets of sides of C that are open disks in the patched surface avoiding all rings."""
    sides = T.cycle_sides(G, C)
    if sides is None:
        return []
    out = []
    cset = set(C)
    for side in sides:
        if T.side_genus(G, C, side) != 0:
            continue
        cuffs = T.side_cuffs(G, side)
        if cuffs["rings"] or cuffs["free"]:
            continue
        verts, _ = T.side_elements(G, C, side)
        if any(v in G.ring_vertices for v in verts - cset):
            continue
        out.append(side)
    return out


def check_i9(G):
    for c in simple_cycles(G.adj, 9):
        for side in ring_free_disks(G, c):
            if not _i9_disk_ok(G, c, side):
                return False
    return True


def _i9_disk_ok(G, C, side):
    if len(side) == 1:
        return True
    lengths = sorted(G.faces[i].length for i in side)
    if len(side) == 2 and lengths == sorted([5, len(C) - 3]):
        return True
    if len(C) == 9 and len(side) == 3 and lengths == [5, 5, 5]:
        verts, _ = T.side_elements(G, C, side)
        inner = verts - set(C)
        return len(inner) == 1 and all(G.degree(v) == 3 for v in inner)
    return False


_CHECKS = {"I0": check_i0, "I1": check_i1, "I2": check_i2, "I3": check_i3, "I4": check_i4,
           "I5": check_i5, "I6": check_i6, "I7": check_i7, "I8": check_i8, "I9": check_i9}


# -- allowable paths --------------------------------------------------------------------


def ring_paths(G, max_len=4):
    """Paths of length 1..max_len between ring vertices with no other ring vertex."""
    rv = G.ring_vertices
    out = []
    for u in sorted(rv):
        stack = [(u, [u])]
        while stack:
            x, path = stack.pop()
            for w in sorted(G.adj[x]):
                if w in path:
                    continue
                if w in rv:
                    if w > u and not (len(path) == 1 and G.edge_between(u, w) in G.ring_edges):
                        out.append(tuple(path + [w]))
                elif len(path) < max_len:
                    stack.append((w, path + [w]))
    return out


def _ring_subpaths(r, u, v):
    vs = list(r.vertices)
    k = len(vs)
    i, j = vs.index(u), vs.index(v)
    a = [vs[(i + t) % k] for t in range((j - i) % k + 1)]
    b = [vs[(i - t) % k] for t in range((i - j) % k + 1)]
    return [a, b]


def is_allowable(G, P) -> bool:
    u, v = P[0], P[-1]
    ri, rj = G.ring_index_of_vertex(u), G.ring_index_of_vertex(v)
    if ri is None or ri != rj:
        return False
    r = G.rings[ri]
    if r.kind != "facial":
        return False
    m = len(P) - 1
    if m < 3:
        return False
    for Q in _ring_subpaths(r, u, v):
        C = list(P) + list(reversed(Q))[1:-1]
        if len(C) > 8:
            continue
        side = T.contractible_side(G, C)
        if side is None:
            continue
        if m == 3 and not (len(C) == 5 and len(side) == 1):
            continue
        if m == 4:
            _, edges = T.side_elements(G, C, side)
            inner = edges - set(T.cycle_edges(G, C))
            if len(inner) > 1:
                continue
            if inner:
                (e,) = inner
                if len(Q) - 1 != 4 or set(G.edges[e]) != {P[2], Q[2]}:
                    continue
        return True
    return False


def is_well_behaved(G) -> bool:
    return all(is_allowable(G, P) for P in ring_paths(G))


def check_properties(G: EmbeddedGraph) -> dict:
    report = {name: fn(G) for name, fn in _CHECKS.items()}
    report["well_behaved"] = is_well_behaved(G)
    return report


# -- short-cycle queries ---------------------------------------------------------------------


def noncontractible_cycles(G, k):
    return [c for c in simple_cycles(G.adj, k) if not T.is_contractible(G, c)]


def edges_of(G, cycles):
    out = set()
    for c in cycles:
        out.update(T.cycle_edges(G, c))
    return out


def surrounds(G, C, ring: int) -> bool:
    cls = T.cycle_class(G, C)
    return cls.topology == "surrounds" and ring in cls.surrounded


def ring_disk(G, C, ring: int) -> frozenset:
    """Internal faces of the closed disk bounded by C once the cuff of ``ring`` is capped."""
    side = T.disk_side_faces(G, C, ring)
    if side is None:
        raise EmbeddingError("cycle does not surround the ring")
    return frozenset(i for i in side if G.faces[i].ring != ring)


def incomparable_edges(G, ring: int, K0, max_len=7) -> set:
    """Edges outside the disk of K0 on (<=max_len)-cycles surrounding ``ring`` that are
    incomparable with K0.  Equal disks count as comparable."""
    K0 = tuple(K0)
    if not surrounds(G, K0, ring):
        raise EmbeddingError("K0 does not surround R")
    D0 = ring_disk(G, K0, ring)
    inside_edges = T.side_elements(G, K0, T.disk_side_faces(G, K0, ring))[1]
    out = set()
    for c in simple_cycles(G.adj, max_len):
        if not surrounds(G, c, ring):
            continue
        D = ring_disk(G, c, ring)
        if D <= D0 or D0 <= D:
            continue
        out.update(e for e in T.cycle_edges(G, c) if e not in inside_edges)
    return out


def is_bound_to(G, C, ring: int) -> bool:
    R = G.rings[ring]
    rs = set(R.vertices)
    cs = set(C)
    if len(cs & rs) >= 3:
        return True
    cands = []
    for c in cs - rs:
        for r in G.adj[c]:
            if r in rs - cs:
                cands.append((c, r))
    for i, (c, r) in enumerate(cands):
        for c2, r2 in cands[i + 1:]:
            if r != r2 and r2 not in G.adj[r]:
                return True
    return False


def natr_edges(G, ring: int) -> set:
    rs = set(G.rings[ring].vertices)
    return edges_of(G, [c for c in noncontractible_cycles(G, 7) if rs & set(c)])


def near6_edges(G, ring: int) -> set:
    return edges_of(G, [c for c in noncontractible_cycles(G, 6) if is_bound_to(G, c, ring)])


def near7_edges(G, ring: int) -> set:
    rs = set(G.rings[ring].vertices)
    return edges_of(G, [c for c in noncontractible_cycles(G, 7)
                        if len(c) == 7 and len(rs & set(c)) >= 4])


def short_cycle_queries(G: EmbeddedGraph, ring: int, k: int = 7, K0=None) -> dict:
    out = {"noncontractible": edges_of(G, noncontractible_cycles(G, k))}
    if K0 is not None:
        out["incomparable"] = incomparable_edges(G, ring, K0)
    R = G.rings[ring]
    if R.kind == "facial" and R.length == 6:
        out["bound_to"] = near6_edges(G, ring)
    if R.kind == "facial" and R.length == 7:
        out["near7"] = near7_edges(G, ring)
    if R.kind == "facial" and R.length == 4:
        out["natr"] = natr_edges(G, ring)
    return out


# -- small disk shapes ------------------------------------------------------------------------


def planechar_case(G: EmbeddedGraph) -> Optional[str]:
    """Which of the three small-disk shapes G has: "a", "b", "c", or None.

    (a) the internal part is a tree with at most l-8 vertices (l >= 9);
    (b) it is connected, unicyclic with a 5-cycle and at most l-5 vertices (l >= 10);
    (c) l = 12 and every second ring vertex has degree two on a facial 5-cycle.
    """
    R = G.rings[0]
    l = R.length
    inner = set(G.internal_vertices)
    sub = {v: G.adj[v] & inner for v in inner}
    n = len(inner)
    m = sum(len(s) for s in sub.values()) // 2
    connected = bool(inner) and len(distances_from(sub, [next(iter(inner))])) == n
    if l >= 9 and connected and m == n - 1 and n <= l - 8:
        return "a"
    if l >= 10 and connected and m == n and n <= l - 5:
        cyc = [c for c in simple_cycles(sub)]
        if len(cyc) == 1 and len(cyc[0]) == 5:
            return "b"
    if l == 12:
        five = [set(f.walks[0].vertices) for f in G.internal_faces() if f.closed_2cell and f.length == 5]
        vs = R.vertices
        for off in (0, 1):
            picks = vs[off::2]
            if all(G.degree(v) == 2 and any(v in f for f in five) for v in picks):
                return "c"
    return None
