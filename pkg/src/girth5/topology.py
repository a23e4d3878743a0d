"""Cycle topology on embedded graphs: sides, classification, cuts and expansions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .embedding import Dart, EmbeddedGraph, EmbeddingError, RingSpec


class OutOfScope(EmbeddingError):
    """Requested construction is outside the supported topologies."""


@dataclass(frozen=True)
class CycleClass:
    sidedness: str  # "one-sided" | "two-sided"
    topology: str  # "contractible" | "surrounds" | "separating-noncontractible" | "nonseparating"
    surrounded: tuple = ()  # ring indices, for topology == "surrounds"

    def __str__(self):
        if self.topology == "surrounds":
            return f"{self.sidedness} surrounds({','.join(map(str, self.surrounded))})"
        return f"{self.sidedness} {self.topology}"

    def to_json(self):
        return {"sidedness": self.sidedness, "topology": self.topology, "surrounded": list(self.surrounded)}


def check_cycle(G: EmbeddedGraph, C) -> tuple:
    C = tuple(C)
    if len(C) < 3:
        raise EmbeddingError("input is not a cycle: fewer than three vertices")
    if len(set(C)) != len(C):
        raise EmbeddingError("cycle repeats a vertex")
    for i, v in enumerate(C):
        if v not in G.adj:
            raise EmbeddingError(f"unknown vertex {v}")
        if C[(i + 1) % len(C)] not in G.adj[v]:
            raise EmbeddingError(f"input is not a cycle: {v} and {C[(i + 1) % len(C)]} are not adjacent")
    return C


def cycle_edges(G: EmbeddedGraph, C) -> list:
    return [G.edge_between(C[i], C[(i + 1) % len(C)]) for i in range(len(C))]


def cycle_sign(G: EmbeddedGraph, C) -> int:
    s = 1
    for e in cycle_edges(G, C):
        s *= G.signs[e]
    return s


def face_classes(G: EmbeddedGraph, blocked: Iterable[int]) -> list:
    """Partition faces into classes connected across edges not in ``blocked``."""
    blocked = set(blocked)
    parent = list(range(len(G.faces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for e in G.edges:
        if e in blocked:
            continue
        a = G.face_of_flag((Dart(e, 0), 1)).index
        b = G.face_of_flag((Dart(e, 0), -1)).index
        parent[find(a)] = find(b)
    groups = {}
    for i in range(len(G.faces)):
        groups.setdefault(find(i), set()).add(i)
    return list(groups.values())


def cycle_sides(G: EmbeddedGraph, C) -> Optional[tuple]:
    """The two face sets on either side of a separating two-sided cycle, else None."""
    C = check_cycle(G, C)
    if cycle_sign(G, C) == -1:
        return None
    es = cycle_edges(G, C)
    classes = face_classes(G, es)
    e = es[0]
    a = G.face_of_flag((Dart(e, 0), 1)).index
    b = G.face_of_flag((Dart(e, 0), -1)).index
    ca = next(c for c in classes if a in c)
    if b in ca:
        return None
    cb = next(c for c in classes if b in c)
    return frozenset(ca), frozenset(cb)


def side_genus(G: EmbeddedGraph, C, faces: Iterable[int]) -> int:
    """Euler genus of the closed surface formed by one side of C plus a patch."""
    faces = set(faces)
    cset = set(C)
    cedges = set(cycle_edges(G, C))
    verts, edges, chi_faces = set(), set(), 0
    for i in faces:
        f = G.faces[i]
        chi_faces += 2 - len(f.walks)
        for w in f.walks:
            verts.update(v for v in w.vertices if v not in cset)
            edges.update(d.edge for d in w.darts if d.edge not in cedges)
    chi = len(verts) + len(C) - len(edges) - len(C) + chi_faces + 1
    return 2 - chi


def side_cuffs(G: EmbeddedGraph, faces: Iterable[int]) -> dict:
    """Rings (by index) and free cuffs whose cuff lies in the given faces."""
    rings, free = set(), 0
    for i in faces:
        f = G.faces[i]
        if f.is_ring_face:
            rings.add(f.ring)
        rings.update(f.cuff_rings)
        free += f.free_cuffs
    return {"rings": rings, "free": free}


def cycle_class(G: EmbeddedGraph, C) -> CycleClass:
    C = check_cycle(G, C)
    if cycle_sign(G, C) == -1:
        return CycleClass("one-sided", "nonseparating")
    sides = cycle_sides(G, C)
    if sides is None:
        return CycleClass("two-sided", "nonseparating")
    surrounded = []
    for side in sides:
        cuffs = side_cuffs(G, side)
        g = side_genus(G, C, side)
        if g == 0 and not cuffs["rings"] and cuffs["free"] == 0:
            return CycleClass("two-sided", "contractible")
        if g == 0 and cuffs["free"] == 0 and len(cuffs["rings"]) == 1:
            surrounded.extend(cuffs["rings"])
    if surrounded:
        return CycleClass("two-sided", "surrounds", tuple(sorted(surrounded)))
    return CycleClass("two-sided", "separating-noncontractible")


def is_contractible(G: EmbeddedGraph, C) -> bool:
    return cycle_class(G, C).topology == "contractible"


def contractible_side(G: EmbeddedGraph, C) -> Optional[frozenset]:
    """Faces of a cuff-free genus-0 side of C, or None if C is not contractible."""
    sides = cycle_sides(G, C)
    if sides is None:
        return None
    best = None
    for side in sides:
        cuffs = side_cuffs(G, side)
        if side_genus(G, C, side) == 0 and not cuffs["rings"] and cuffs["free"] == 0:
            if best is None or len(side) < len(best):
                best = side
    return best


def disk_side_faces(G: EmbeddedGraph, C, ring: Optional[int] = None) -> Optional[frozenset]:
    """Faces of the genus-0 side of C; with ``ring`` the side must hold exactly that ring
    (i.e. the disk in the surface with that cuff patched)."""
    sides = cycle_sides(G, C)
    if sides is None:
        return None
    for side in sides:
        cuffs = side_cuffs(G, side)
        if side_genus(G, C, side) != 0 or cuffs["free"]:
            continue
        if ring is None and not cuffs["rings"]:
            return side
        if ring is not None and cuffs["rings"] == {ring}:
            return side
    return None


def side_elements(G: EmbeddedGraph, C, faces) -> tuple:
    """(vertices, edges) of G drawn in the closure of the union of ``faces``."""
    verts, edges = set(C), set(cycle_edges(G, C))
    for i in faces:
        f = G.faces[i]
        for w in f.walks:
            verts.update(w.vertices)
            edges.update(d.edge for d in w.darts)
    return verts, edges


# -- sub-embeddings -------------------------------------------------------------


def restrict(G: EmbeddedGraph, vertices, edges, rings=None, cuffs=None, validate=True) -> EmbeddedGraph:
    """Sub-embedding induced on the given vertex and edge sets (rotation restricted)."""
    vertices = set(vertices)
    edges = set(edges)
    rot = {v: [d for d in G.rotation[v] if d.edge in edges] for v in vertices}
    if rings is None:
        rings = []
        for r in G.rings:
            if all(v in vertices for v in r.vertices):
                if r.kind == "vertex" and r.corner is not None and r.corner.edge not in edges:
                    corner = _surviving_corner(G, r.corner, edges)
                    r = RingSpec.vertex(r.vertices[0], r.weak, corner)
                rings.append(r)
    if cuffs is None:
        cuffs = [c for c in G.cuffs if (isinstance(c, Dart) and c.edge in edges) or c in vertices]
    return EmbeddedGraph(vertices, {e: G.edges[e] for e in edges}, rot,
                         {e: G.signs[e] for e in edges}, rings, cuffs, (), None, validate)


def _surviving_corner(G, d, edges):
    """Nearest dart at or before ``d`` (counter-clockwise) whose edge survives."""
    x = d
    for _ in range(G.degree(G.tail(d))):
        if x.edge in edges:
            return x
        x = G.pred(x)
    return None


def remove_edges(G: EmbeddedGraph, drop, validate=False) -> EmbeddedGraph:
    drop = set(drop)
    return restrict(G, G.vertices, [e for e in G.edges if e not in drop], validate=validate)


def disk_interior(G: EmbeddedGraph, C) -> EmbeddedGraph:
    """The part of G in the closed disk bounded by C, as a disk graph with ring C."""
    C = check_cycle(G, C)
    side = contractible_side(G, C)
    if side is None:
        raise EmbeddingError("cycle is not contractible")
    if len(side) == 1:
        raise EmbeddingError("C is facial")
    verts, edges = side_elements(G, C, side)
    inner = set(verts) - set(C)
    if any(v in G.ring_vertices for v in inner):
        raise EmbeddingError("disk side touches a ring")
    H = restrict(G, verts, edges, rings=[], cuffs=[], validate=False)
    return _attach_cycle_ring(H, C)


def _attach_cycle_ring(H: EmbeddedGraph, C) -> EmbeddedGraph:
    """Declare cycle C a facial ring of H, choosing the orientation that makes it facial."""
    C = tuple(C)
    for seq in (C, tuple(reversed(C))):
        for k in range(len(seq)):
            s = seq[k:] + seq[:k]
            try:
                return H.replace(rings=list(H.rings) + [RingSpec.facial(s)])
            except EmbeddingError:
                continue
    # no orientation worked; flip the local orientation at C[0] and retry
    v = C[0]
    signs = dict(H.signs)
    for d in H.rotation[v]:
        signs[d.edge] = -signs[d.edge]
    rot = dict(H.rotation)
    rot[v] = tuple(reversed(H.rotation[v]))
    H2 = H.replace(rotation=rot, signs=signs)
    for seq in (C, tuple(reversed(C))):
        for k in range(len(seq)):
            s = seq[k:] + seq[:k]
            try:
                return H2.replace(rings=list(H2.rings) + [RingSpec.facial(s)])
            except EmbeddingError:
                continue
    raise EmbeddingError("cycle does not bound a face of the extracted disk")


# -- cutting --------------------------------------------------------------------


@dataclass
class CutResult:
    graph: EmbeddedGraph
    copies: dict  # original cycle vertex -> tuple of copy ids
    boundary: list  # list of boundary vertex sequences (one or two)
    two_sided: bool


def _cut(G: EmbeddedGraph, C) -> CutResult:
    C = check_cycle(G, C)
    k = len(C)
    es = cycle_edges(G, C)
    next_v = max(G.vertices) + 1
    next_e = max(G.edges) + 1
    # orientation along the cycle
    o = [1] * k
    for i in range(1, k):
        o[i] = o[i - 1] * G.signs[es[i - 1]]
    two_sided = o[k - 1] * G.signs[es[k - 1]] == 1
    # for each cycle vertex, split clockwise rotation into P (after out) and Q (after in)
    copy_P, copy_Q = {}, {}
    new_tail = {}
    rot_parts = {}
    for i, v in enumerate(C):
        out = G.dart(v, C[(i + 1) % k])
        inn = G.dart(v, C[i - 1])
        r = G.rotation[v]
        j = r.index(out)
        P, Q, side = [], [], "P"
        for t in range(1, len(r)):
            d = r[(j + t) % len(r)]
            if d == inn:
                side = "Q"
                continue
            (P if side == "P" else Q).append(d)
        copy_P[v] = v
        copy_Q[v] = next_v
        next_v += 1
        for d in P:
            new_tail[d] = copy_P[v]
        for d in Q:
            new_tail[d] = copy_Q[v]
        rot_parts[v] = (P, Q)
    # left copy along the traversal: P if o=+1 else Q
    def left(i):
        v = C[i]
        return copy_P[v] if o[i] == 1 else copy_Q[v]

    def right(i):
        v = C[i]
        return copy_Q[v] if o[i] == 1 else copy_P[v]

    edges, signs = {}, {}
    for e, (u, w) in G.edges.items():
        if e in es:
            continue
        a = new_tail.get(Dart(e, 0), u)
        b = new_tail.get(Dart(e, 1), w)
        edges[e] = (a, b)
        signs[e] = G.signs[e]
    # duplicated cycle edges: "L" copy keeps the id, "R" copy gets a fresh one
    dup = {}
    for i, e in enumerate(es):
        j = (i + 1) % k
        if j != 0 or two_sided:
            pairs = [(left(i), left(j)), (right(i), right(j))]
        else:
            pairs = [(left(i), right(j)), (right(i), left(j))]
        ids = [e, next_e]
        next_e += 1
        for eid, (a, b) in zip(ids, pairs):
            edges[eid] = (a, b)
            signs[eid] = G.signs[e]
        dup[e] = list(zip(ids, pairs))

    def dup_dart(e, at):
        for eid, (a, b) in dup[e]:
            if a == at:
                return Dart(eid, 0)
            if b == at:
                return Dart(eid, 1)
        raise AssertionError("missing duplicated dart")

    rotation = {}
    for v in G.vertices:
        if v not in copy_P:
            rotation[v] = list(G.rotation[v])
    for i, v in enumerate(C):
        e_out, e_in = es[i], es[i - 1]
        P, Q = rot_parts[v]
        p, q = copy_P[v], copy_Q[v]
        rotation[p] = [dup_dart(e_out, p)] + P + [dup_dart(e_in, p)]
        rotation[q] = [dup_dart(e_in, q)] + Q + [dup_dart(e_out, q)]
    vertices = [v for v in G.vertices] + [copy_Q[v] for v in C]

    def remap_corner(c):
        if not isinstance(c, Dart):
            return c
        v = G.tail(c)
        if v not in copy_P:
            return c
        i = C.index(v)
        if c.edge == es[i] and G.tail(c) == v:  # out dart
            return dup_dart(es[i], copy_P[v])
        if c.edge == es[i - 1]:  # in dart
            return dup_dart(es[i - 1], copy_Q[v])
        return c

    rings = []
    for r in G.rings:
        if r.kind == "vertex":
            v = r.vertices[0]
            corner = remap_corner(r.corner) if r.corner is not None else None
            if v in copy_P and corner is not None:
                tail = None
                for vv, rr in rotation.items():
                    if corner in rr:
                        tail = vv
                v = tail
            rings.append(RingSpec.vertex(v, r.weak, corner))
        else:
            rings.append(r)  # re-derived below
    H = EmbeddedGraph(vertices, edges, rotation, signs, [x for x in rings if x.kind == "vertex"],
                      [remap_corner(c) for c in G.cuffs], [[remap_corner(c) for c in j] for j in G.joins],
                      None, validate=False)
    # re-derive facial rings by tracing the image of each ring face
    facial = []
    for r in G.rings:
        if r.kind != "facial":
            continue
        d = G.dart(r.vertices[0], r.vertices[1])
        corner = remap_corner(G.pred(d))
        start = (H.succ(corner), 1)
        seq, f = [], start
        while True:
            seq.append(H.tail(f[0]))
            f = H.step(f)
            if f == start:
                break
        facial.append(RingSpec.facial(seq))
    ordered, fi = [], iter(facial)
    vi = iter([x for x in rings if x.kind == "vertex"])
    for r in G.rings:
        ordered.append(next(fi) if r.kind == "facial" else next(vi))
    H = H.replace(rings=ordered)
    if two_sided:
        boundary = [[left(i) for i in range(k)], [right(i) for i in range(k)]]
    else:
        boundary = [[left(i) for i in range(k)] + [right(i) for i in range(k)]]
    copies = {v: (copy_P[v], copy_Q[v]) for v in C}
    return CutResult(H, copies, boundary, two_sided)


def cut_along_cycle(G: EmbeddedGraph, C, vertex_rings: bool = True) -> list:
    """Cut G along C; return the resulting pieces.

    Copies of cycle vertices that do not already lie on a ring become
    non-weak vertex rings whose cuff sits in the new boundary face.
    """
    res = _cut(G, C)
    H = res.graph
    boundary_vertices = {v for b in res.boundary for v in b}
    pieces = []
    for comp in H.face_components:
        verts = set(comp)
        edges = {e for e, (u, w) in H.edges.items() if u in verts}
        rings = [r for r in H.rings if r.vertices[0] in verts]
        if vertex_rings:
            on_ring = {v for r in rings for v in r.vertices}
            for b in res.boundary:
                for i, v in enumerate(b):
                    if v in verts and v not in on_ring:
                        nxt = b[(i + 1) % len(b)]
                        prv = b[i - 1]
                        d_in = H.dart(v, prv)
                        d_out = H.dart(v, nxt)
                        # corner between the two boundary darts that holds the cut face
                        corner = d_in if H.succ(d_in) == d_out else d_out
                        rings.append(RingSpec.vertex(v, False, corner))
        cuffs = [c for c in H.cuffs if (isinstance(c, Dart) and c.edge in edges) or c in verts]
        pieces.append(restrict(H, verts, edges, rings=rings, cuffs=cuffs, validate=True))
    return pieces


def cut_boundary_info(G: EmbeddedGraph, C) -> CutResult:
    return _cut(G, C)


# -- face expansion -----------------------------------------------------------------


def _is_cylinder(G: EmbeddedGraph) -> bool:
    return G.euler_genus() == 0 and len(G.rings) + len(G.cuffs) == 2


def face_expansion(G: EmbeddedGraph, J_edges, S, J_vertices=()) -> list:
    """G-expansion of a set S of faces of the subgraph J.

    ``J_edges`` are edge ids of G; ``J_vertices`` adds isolated vertices.
    Each element of ``S`` names a face of J by a flag ``(Dart, orientation)``
    of a J-dart, or by an isolated vertex of J.  Returns one embedded graph
    per face of S, each carrying its natural rings.
    """
    J_edges = set(J_edges)
    J_verts = set(J_vertices) | {v for e in J_edges for v in G.edges[e]}
    J = restrict(G, J_verts, J_edges, rings=[], cuffs=[], validate=False)
    faces = []
    for s in S:
        f = J.face_of_corner(s) if not isinstance(s, tuple) or isinstance(s, Dart) else J.face_of_flag(s)
        if f.index not in [x.index for x in faces]:
            faces.append(f)
    # property: J is the union of the boundaries of the faces in S
    covered_e = {d.edge for f in faces for w in f.walks for d in w.darts}
    covered_v = {v for f in faces for w in f.walks for v in w.vertices}
    if covered_e != J_edges or covered_v != J_verts:
        raise EmbeddingError("J is not the union of the boundaries of the faces in S")
    for v in J_verts:
        if not J.rotation[v]:
            r = G.ring_of_vertex(v)
            if r is None or r.kind != "vertex":
                raise EmbeddingError(f"isolated vertex {v} of J is not a vertex ring")
    cyl = _is_cylinder(G)
    for f in faces:
        if not f.open_2cell and not (cyl and len(f.walks) == 2):
            raise OutOfScope("out of supported scope: face is neither open 2-cell nor a cylinder face")
    # which J-face contains each non-J edge of G
    blocked = J_edges
    classes = face_classes(G, blocked)
    gface_class = {}
    for ci, c in enumerate(classes):
        for i in c:
            gface_class[i] = ci
    out = []
    for f in faces:
        out.append(_expand_face(G, J, f, classes, gface_class))
    return out


def _expand_face(G, J, f, classes, gface_class):
    # the class of G-faces inside f, found through the first walk flag
    ws = f.walks
    cls = None
    for w in ws:
        if w.flags:
            d, o = w.flags[0]
            cls = gface_class[G.face_of_flag((d, o)).index]
            break
    if cls is None:
        v = ws[0].vertex
        cls = gface_class[G.face_of_corner(G.rotation[v][0] if G.rotation[v] else v).index]
    inner_faces = classes[cls]
    J_verts = set(J.vertices)
    J_edges = set(J.edges)
    inner_edges, inner_verts = set(), set()
    for i in inner_faces:
        for w in G.faces[i].walks:
            for d in w.darts:
                if d.edge not in J_edges:
                    inner_edges.add(d.edge)
            for v in w.vertices:
                if v not in J_verts:
                    inner_verts.add(v)
            if w.vertex is not None and w.vertex not in J_verts:
                inner_verts.add(w.vertex)
    next_v = max(G.vertices) + 1
    next_e = max(G.edges) + 1
    used_v, used_e = set(inner_verts), set(inner_edges)
    new_tail = {}
    rotation = {v: list(G.rotation[v]) for v in inner_verts}
    edges, signs = {}, {}
    rings = []
    for w in ws:
        if not w.flags:
            v = w.vertex
            used_v.add(v)
            rotation[v] = list(G.rotation[v])
            r = G.ring_of_vertex(v)
            rings.append(RingSpec.vertex(v, r.weak, r.corner))
            continue
        L = len(w.flags)
        copies = []
        for i in range(L):
            v = J.tail(w.flags[i][0])
            if v in used_v:
                c = next_v
                next_v += 1
            else:
                c = v
            used_v.add(c)
            copies.append(c)
        ring_ids = []
        for i in range(L):
            d = w.flags[i][0]
            e = d.edge
            if e in used_e:
                eid = next_e
                next_e += 1
            else:
                eid = e
            used_e.add(eid)
            ring_ids.append(eid)
            edges[eid] = (copies[i], copies[(i + 1) % L])
            signs[eid] = G.signs[e]
        for i in range(L):
            d_out, o = w.flags[i]
            d_prev = w.flags[i - 1][0]
            v = J.tail(d_out)
            arrive = J.rev(d_prev)
            r = G.rotation[v]
            start = r.index(arrive)
            seq = []
            t = start
            while True:
                t = (t + o) % len(r)
                if r[t] == d_out:
                    break
                seq.append(r[t])
            c = copies[i]
            for x in seq:
                new_tail[x] = c
            out_d = Dart(ring_ids[i], 0)
            in_d = Dart(ring_ids[i - 1], 1)
            lst = [in_d] + seq + [out_d]
            if o == -1:
                lst = list(reversed(lst))
            rotation[c] = lst
        if L < 3:
            raise OutOfScope("out of supported scope: boundary walk shorter than three")
        rings.append(("facial", tuple(copies)))
    for e in inner_edges:
        u, v = G.edges[e]
        a = new_tail.get(Dart(e, 0), u)
        b = new_tail.get(Dart(e, 1), v)
        edges[e] = (a, b)
        signs[e] = G.signs[e]
    for r in G.rings:
        if r.kind == "vertex" and r.vertices[0] in inner_verts:
            rings.append(r)
    vertex_rings = [r for r in rings if isinstance(r, RingSpec)]
    cuffs = [c for c in G.cuffs if isinstance(c, Dart) and c.edge in inner_edges]
    H = EmbeddedGraph(used_v, edges, rotation, signs, vertex_rings, cuffs, (), None, validate=False)
    for r in rings:
        if isinstance(r, tuple):
            H = _attach_cycle_ring(H, r[1])
    # restore ring order: facial rings appear in walk order, then vertex rings
    return H


# -- omnipresence and components ------------------------------------------------------


def is_omnipresent(G: EmbeddedGraph, face) -> bool:
    if face.open_2cell:
        return False
    for w in face.walks:
        if not w.flags:
            r = G.ring_of_vertex(w.vertex)
            if r is None or r.kind != "vertex":
                return False
            continue
        if not w.is_cycle():
            return False
        C = w.vertices
        if cycle_sign(G, C) == -1:
            return False
        es = cycle_edges(G, C)
        classes = face_classes(G, es)
        other = set()
        for c in classes:
            if face.index not in c:
                other |= c
        if not other:
            return False
        cuffs = side_cuffs(G, other)
        if side_genus(G, C, other) != 0 or cuffs["free"] or len(cuffs["rings"]) != 1:
            return False
    return True


def ring_component_parts(G: EmbeddedGraph) -> list:
    """For each ring, the connected component holding it as its own embedded graph."""
    out = []
    for r in G.rings:
        v = r.vertices[0]
        comp = next(c for c in G.components if v in c)
        edges = {e for e, (a, b) in G.edges.items() if a in comp}
        rings = [x for x in G.rings if x.vertices[0] in comp]
        out.append((r, restrict(G, comp, edges, rings=rings, cuffs=[], validate=True)))
    return out
