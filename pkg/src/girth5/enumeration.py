"""Exhaustive generation of small ring-critical graphs in the disk and the cylinder.

Graphs are grown by ears inside the faces of a sphere map.  Rings are faces of
the map; a free cuff (a hole touching nothing) is a marked face.  Every state
is a 2-connected plane map once the virtual edge between the two rings of a
cylinder is added, so ear growth reaches every critical graph within budget:

* internal vertices of degree two must receive another edge, and an ear can
  always be started at any such vertex, so the search insists on it;
* blocks that avoid the rings would have to be non-3-colorable on their own,
  which needs more vertices than any budget used here.

Intermediate states are deduplicated by a canonical code, so the order in
which ears arrive does not multiply the work.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .coloring import Solver, colorings_of
from .embedding import EmbeddedGraph, RingSpec
from .planar import _oriented_ring


class BudgetExceeded(RuntimeError):
    pass


MAX_INTERNAL = 12
MAX_RING = 12


@dataclass(frozen=True)
class SearchSpec:
    topology: str  # "disk" or "cylinder"
    ring_lengths: tuple
    girth_floor: int = 5
    max_internal_vertices: int = 4
    require_no_contractible_short_cycles: bool = True
    induced_ring: bool = False
    free_cuff: bool = False  # cylinder with one ring and an untouched cuff

    def __post_init__(self):
        object.__setattr__(self, "ring_lengths", tuple(self.ring_lengths))
        if self.topology not in ("disk", "cylinder"):
            raise ValueError(f"unknown topology {self.topology!r}")
        if self.max_internal_vertices < 0 or self.girth_floor < 3:
            raise ValueError("budgets must be positive")
        if self.topology == "disk" and len(self.ring_lengths) != 1:
            raise ValueError("disk has one ring")
        if self.topology == "cylinder":
            want = 1 if self.free_cuff else 2
            if len(self.ring_lengths) != want:
                raise ValueError(f"cylinder search needs {want} ring(s) here")
        elif self.free_cuff:
            raise ValueError("a free cuff needs the cylinder")
        if any(l < 3 for l in self.ring_lengths):
            raise ValueError("facial rings have length at least three")
        if self.max_internal_vertices > MAX_INTERNAL or max(self.ring_lengths) > MAX_RING:
            raise BudgetExceeded("budget exceeded: raise MAX_INTERNAL / MAX_RING explicitly")


# -- plane maps ---------------------------------------------------------------------------


class PlaneMap:
    """Connected map on the sphere: ``rot[v]`` lists neighbours clockwise.

    Dart ``(u, v)`` is followed in its face by ``(v, w)`` with ``w`` the
    successor of ``u`` at ``v``.  Each ring face and the free cuff are held
    as a dart on them; ears never enter ring faces, so these darts stay put.
    """

    __slots__ = ("rot", "rings", "ring_darts", "cuff", "ring_vertices", "_faces")

    def __init__(self, rot, rings, ring_darts, cuff=None):
        self.rot = rot
        self.rings = rings
        self.ring_darts = ring_darts
        self.cuff = cuff
        self.ring_vertices = frozenset(v for r in rings for v in r)
        self._faces = None

    def succ(self, v, u):
        r = self.rot[v]
        return r[(r.index(u) + 1) % len(r)]

    def faces(self):
        """(dart -> face id, list of faces as dart lists)."""
        if self._faces is None:
            fid, faces = {}, []
            for v, ns in self.rot.items():
                for w in ns:
                    if (v, w) in fid:
                        continue
                    walk, d = [], (v, w)
                    while d not in fid:
                        fid[d] = len(faces)
                        walk.append(d)
                        a, b = d
                        d = (b, self.succ(b, a))
                    faces.append(walk)
            self._faces = (fid, faces)
        return self._faces

    def cuff_faces(self):
        fid, _ = self.faces()
        out = {fid[d] for d in self.ring_darts}
        if self.cuff is not None:
            out.add(fid[self.cuff])
        return out

    def internal_vertices(self):
        return [v for v in self.rot if v not in self.ring_vertices]

    def edges(self):
        return sorted((u, w) for u, ns in self.rot.items() for w in ns if u < w)

    def distances(self, src):
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for u in frontier:
                for w in self.rot[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def separates_cuffs(self, cycle) -> bool:
        """True when the cycle has cuffs on both sides (it is non-contractible)."""
        fid, faces = self.faces()
        k = len(cycle)
        on = {frozenset((cycle[i], cycle[(i + 1) % k])) for i in range(k)}
        parent = list(range(len(faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (u, w), f in fid.items():
            if u < w and frozenset((u, w)) not in on:
                a, b = find(f), find(fid[(w, u)])
                if a != b:
                    parent[a] = b
        a, b = cycle[0], cycle[1]
        left, right = find(fid[(a, b)]), find(fid[(b, a)])
        sides = {find(f) for f in self.cuff_faces()}
        return left in sides and right in sides

    def insert_ear(self, a, pa, b, pb, k, first_new):
        """Ear of length k from the corner after ``pa`` at ``a`` to the corner after ``pb`` at ``b``."""
        rot = {v: list(ns) for v, ns in self.rot.items()}
        path = [a] + list(range(first_new, first_new + k - 1)) + [b]
        for i in range(1, k):
            rot[path[i]] = [path[i + 1], path[i - 1]]
        ia = rot[a].index(pa) + 1
        rot[a].insert(ia, path[1])
        ib = rot[b].index(pb) + 1
        rot[b].insert(ib, path[-2])
        return PlaneMap({v: tuple(ns) for v, ns in rot.items()}, self.rings, self.ring_darts, self.cuff), path

    def with_cuff(self, dart):
        return PlaneMap(self.rot, self.rings, self.ring_darts, dart)

    # -- canonical code ----------------------------------------------------------------

    def _face_tags(self):
        fid, faces = self.faces()
        tag = [0] * len(faces)
        for r, d in zip(self.rings, self.ring_darts):
            tag[fid[d]] = len(r)
        if self.cuff is not None:
            tag[fid[self.cuff]] += 100
        return fid, tag

    def code(self) -> tuple:
        fid, tag = self._face_tags()
        lo = min(len(r) for r in self.rings)
        ring_faces = {fid[d] for r, d in zip(self.rings, self.ring_darts) if len(r) == lo}
        # start on a ring dart with the ring face on a fixed side, both mirror images
        darts = [(u, w) for (u, w), g in fid.items() if g in ring_faces]
        keys = {w: self._start_key(w) for _, w in darts}
        top = min(keys.values())
        best = None
        for u, w in darts:
            if keys[w] != top:
                continue
            for start, o in (((w, u), 1), ((w, self.succ(w, u)), -1)):
                c = self._code_from(start, o, fid, tag, best)
                if c is not None:
                    best = c
        return best

    def _start_key(self, w):
        rot = self.rot
        return (-len(rot[w]), -sum(len(rot[x]) for x in rot[w]))

    def _code_from(self, start, o, fid, tag, bound):
        """Code from one start, or None as soon as it is known to exceed ``bound``."""
        v0, w0 = start
        label = {v0: 0}
        first = {v0: w0}
        queue = [v0]
        out = []
        rot = self.rot
        qi = 0
        tight = bound is not None
        while qi < len(queue):
            v = queue[qi]
            r = rot[v]
            n = len(r)
            i0 = r.index(first[v])
            row = [n]
            for t in range(n):
                w = r[(i0 + o * t) % n]
                if w not in label:
                    label[w] = len(label)
                    first[w] = v
                    queue.append(w)
                # face of the corner swept next in this orientation
                nb = w if o == 1 else r[(i0 + o * t - 1) % n]
                row.append(label[w])
                row.append(tag[fid[(nb, v)]])
            row = tuple(row)
            if tight:
                ref = bound[qi]
                if row > ref:
                    return None
                if row < ref:
                    tight = False
            out.append(row)
            qi += 1
        if tight:
            return None  # equal to the bound
        return tuple(out)

    # -- conversion ----------------------------------------------------------------------

    def to_embedded(self) -> EmbeddedGraph:
        cuffs = [(self.cuff[1], self.cuff[0])] if self.cuff is not None else []
        G0 = EmbeddedGraph.from_neighbor_rotation({v: list(ns) for v, ns in self.rot.items()},
                                                  cuffs=cuffs, validate=False)
        specs = []
        for r, (x, y) in zip(self.rings, self.ring_darts):
            # the ring face contains dart x -> y, so the facial order runs x, y, ...
            i = r.index(x)
            seq = r[i:] + r[:i]
            if seq[1] != y:
                seq = (seq[0],) + tuple(reversed(seq[1:]))
            specs.append(RingSpec.facial(seq))
        try:
            return G0.replace(rings=specs)
        except ValueError:
            return G0.replace(rings=[_oriented_ring(G0, r.vertices) for r in specs])


def _cycle_rot(vs):
    k = len(vs)
    return {vs[i]: (vs[i - 1], vs[(i + 1) % k]) for i in range(k)}


def _start_maps(spec: SearchSpec):
    """Initial states: one ring; or a ring plus a free cuff; or two rings joined by a path."""
    ls = spec.ring_lengths
    r1 = tuple(range(ls[0]))
    if spec.topology == "disk" or spec.free_cuff:
        rot = _cycle_rot(r1)
        cuff = (0, 1) if spec.free_cuff else None
        yield PlaneMap(rot, (r1,), ((1, 0),), cuff), ls[0]
        return
    r2 = tuple(range(ls[0], ls[0] + ls[1]))
    base = len(r1) + len(r2)
    for k in range(1, spec.max_internal_vertices + 2):
        rot = {**_cycle_rot(r1), **_cycle_rot(r2)}
        rot = {v: list(ns) for v, ns in rot.items()}
        path = [r1[0]] + list(range(base, base + k - 1)) + [r2[0]]
        for i in range(1, k):
            rot[path[i]] = [path[i + 1], path[i - 1]]
        # outer corners: after the predecessor on each ring
        rot[r1[0]].insert(1, path[1])
        rot[r2[0]].insert(1, path[-2])
        m = PlaneMap({v: tuple(ns) for v, ns in rot.items()}, (r1, r2), ((1, 0), (r2[1], r2[0])))
        yield m, base + k - 1


# -- pruning -------------------------------------------------------------------------------


def _paths_between(m, b, a, max_len, avoid):
    """Simple paths from b to a of length <= max_len avoiding ``avoid``."""
    out = []
    stack = [(b, [b])]
    while stack:
        u, p = stack.pop()
        for w in m.rot[u]:
            if w == a:
                out.append(p + [a])
            elif w not in p and w not in avoid and len(p) < max_len:
                stack.append((w, p + [w]))
    return [p for p in out if len(p) - 1 <= max_len]


def _short_cycles_ok(parent: PlaneMap, child: PlaneMap, spec: SearchSpec, path) -> bool:
    """No cycle through the new ear is shorter than the floor, or contractible and short."""
    k = len(path) - 1
    a, b = path[0], path[-1]
    limit = max(spec.girth_floor - 1, 4 if spec.require_no_contractible_short_cycles else 0)
    if limit - k < 1:
        return True
    for q in _paths_between(parent, b, a, limit - k, ()):
        cyc = list(path[:-1]) + q[:-1]
        if len(cyc) < spec.girth_floor:
            return False
        if spec.require_no_contractible_short_cycles and len(cyc) <= 4 and not child.separates_cuffs(cyc):
            return False
    return True


# -- criticality -----------------------------------------------------------------------------


def critical_plain(vertices, edges, rings) -> bool:
    """Ring-criticality for plain vertex/edge lists with facial rings given as cycles."""
    ring_edges = set()
    for r in rings:
        for i in range(len(r)):
            u, v = r[i], r[(i + 1) % len(r)]
            ring_edges.add((min(u, v), max(u, v)))
    todo = [e for e in edges if e not in ring_edges]
    if not todo:
        return False
    rv = sorted({v for r in rings for v in r})
    solver = Solver(vertices, edges, 3)
    for phi in colorings_of(rv, sorted(ring_edges), canonical=True):
        dom = {v: 1 << c for v, c in phi.items()}
        if solver.solve(dom) is not None:
            continue
        todo = [e for e in todo if solver.solve(dom, skip=e) is None]
        if not todo:
            return True
    return False


# -- search ----------------------------------------------------------------------------------


@dataclass
class SearchStats:
    states: int = 0
    candidates: int = 0
    critical: int = 0
    frontier: dict = field(default_factory=dict)


def _ears(m: PlaneMap, spec: SearchSpec, n_internal: int, next_id: int):
    """Children of a state, each a (map, internal count) pair; cuff placement branches."""
    fid, faces = m.faces()
    ring_faces = {fid[d] for d in m.ring_darts}
    room = spec.max_internal_vertices - n_internal
    deficient = sorted(v for v in m.internal_vertices() if len(m.rot[v]) == 2)
    forced = deficient[0] if deficient else None
    for f, walk in enumerate(faces):
        if f in ring_faces:
            continue
        # corners of the face: dart (p, a) arrives at a, corner after p
        corners = [(d[1], d[0]) for d in walk]
        has_cuff = m.cuff is not None and fid[m.cuff] == f
        for i, (a, pa) in enumerate(corners):
            for j, (b, pb) in enumerate(corners):
                if a == b:
                    continue
                if forced is not None and a != forced:
                    continue
                if forced is None and j < i:
                    continue  # unordered pair of corners
                for k in range(1, room + 2):
                    if k == 1:
                        if b in m.rot[a]:
                            continue
                        if spec.induced_ring and a in m.ring_vertices and b in m.ring_vertices:
                            continue
                    child, path = m.insert_ear(a, pa, b, pb, k, next_id)
                    n2 = n_internal + k - 1
                    # when the ear splits the cuff face, the cuff may end up on either side
                    variants = [child.with_cuff(d) for d in ((path[0], path[1]), (path[1], path[0]))] \
                        if has_cuff else [child]
                    for c in variants:
                        if _short_cycles_ok(m, c, spec, path):
                            yield c, n2


def _explore(roots, spec: SearchSpec, stats: SearchStats):
    seen = set()
    found = {}
    stack = []
    for m, nid in roots:
        c = m.code()
        if c not in seen:
            seen.add(c)
            stack.append((m, nid))
    while stack:
        m, next_id = stack.pop()
        stats.states += 1
        n_int = len(m.rot) - len(m.ring_vertices)
        if not any(len(m.rot[v]) == 2 for v in m.internal_vertices()):
            if _is_candidate(m):
                stats.candidates += 1
                edges = m.edges()
                if critical_plain(list(m.rot), edges, m.rings):
                    stats.critical += 1
                    found.setdefault(m.code(), m)
        for child, n2 in _ears(m, spec, n_int, next_id):
            c = child.code()
            if c in seen:
                continue
            seen.add(c)
            stack.append((child, max(child.rot) + 1))
    return found


def _is_candidate(m: PlaneMap) -> bool:
    return len(m.edges()) > sum(len(r) for r in m.rings)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("GIRTH5_THREADS", "1")))
    except ValueError:
        return 1


def _run_branch(args):
    spec, root = args
    stats = SearchStats()
    found = _explore([root], spec, stats)
    return found, stats


def enumerate_critical_maps(spec: SearchSpec, stats: Optional[SearchStats] = None) -> list:
    stats = stats if stats is not None else SearchStats()
    roots = list(_start_maps(spec))
    found = {}
    workers = min(_threads(), len(roots))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part, st in ex.map(_run_branch, [(spec, r) for r in roots]):
                found.update(part)
                stats.states += st.states
                stats.candidates += st.candidates
                stats.critical += st.critical
    else:
        found = _explore(roots, spec, stats)
    return [found[c] for c in sorted(found)]


def enumerate_critical(spec: SearchSpec, stats: Optional[SearchStats] = None) -> list:
    """All ring-critical graphs within the search budget, one per isomorphism class, in canonical order."""
    return [m.to_embedded() for m in enumerate_critical_maps(spec, stats)]


# -- basic graphs ------------------------------------------------------------------------------


BASIC_INTERNAL = 2


def _adj(m: PlaneMap):
    return {v: set(ns) for v, ns in m.rot.items()}


def has_triangle(adj) -> bool:
    return any(adj[u] & adj[w] for u in adj for w in adj[u] if u < w)


def is_two_connected(adj) -> bool:
    vs = list(adj)
    if len(vs) < 3:
        return False
    for x in vs:
        rest = [v for v in vs if v != x]
        seen, stack = {rest[0]}, [rest[0]]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w != x and w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(rest):
            return False
    return True


def ring_distance(m: PlaneMap) -> int:
    r1, r2 = m.rings
    dist = {v: 0 for v in r1}
    frontier = list(r1)
    while frontier:
        nxt = []
        for u in frontier:
            for w in m.rot[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    return min(dist.get(v, 10 ** 9) for v in r2)


def _is_basic(m: PlaneMap) -> bool:
    adj = _adj(m)
    n_int = len(m.rot) - len(m.ring_vertices)
    return has_triangle(adj) or not is_two_connected(adj) or (ring_distance(m) == 1 and n_int <= 2)


@dataclass
class BasicGraph:
    graph: PlaneMap
    two_connected: bool
    triangle_free: bool

    @property
    def embedded(self) -> EmbeddedGraph:
        return self.graph.to_embedded()


def enumerate_basic_maps(allow_triangles: bool = True, max_internal: int = BASIC_INTERNAL) -> list:
    """Critical cylinder graphs with two rings of length <= 4, no contractible (<= 4)-cycle,
    at most ``max_internal`` further vertices, meeting one of the basic clauses."""
    lengths = (3, 4) if allow_triangles else (4,)
    floor = 3 if allow_triangles else 4
    out = []
    for l1 in lengths:
        for l2 in lengths:
            if l2 < l1:
                continue
            spec = SearchSpec("cylinder", (l1, l2), floor, max_internal)
            for m in enumerate_critical_maps(spec):
                if _is_basic(m):
                    adj = _adj(m)
                    out.append(BasicGraph(m, is_two_connected(adj), not has_triangle(adj)))
    return out


def enumerate_basic(allow_triangles: bool = True, max_internal: int = BASIC_INTERNAL) -> list:
    return [b.embedded for b in enumerate_basic_maps(allow_triangles, max_internal)]


def _drop_edges(m: PlaneMap, drop) -> Optional[PlaneMap]:
    drop = {frozenset(e) for e in drop}
    rot = {}
    for v, ns in m.rot.items():
        keep = tuple(w for w in ns if frozenset((v, w)) not in drop)
        if keep or v in m.ring_vertices:
            rot[v] = keep
    sub = PlaneMap(rot, m.rings, m.ring_darts, m.cuff)
    # stay connected so the sphere map is well defined
    start = next(iter(rot))
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for w in rot[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return sub if len(seen) == len(rot) else None


def subgraph_codes(m: PlaneMap) -> set:
    """Codes of all connected proper subgraphs that keep both rings."""
    ring_edges = set()
    for r in m.rings:
        for i in range(len(r)):
            ring_edges.add(frozenset((r[i], r[(i + 1) % len(r)])))
    free = [e for e in m.edges() if frozenset(e) not in ring_edges]
    out = set()
    for mask in range(1, 1 << len(free)):
        sub = _drop_edges(m, [free[i] for i in range(len(free)) if mask >> i & 1])
        if sub is not None:
            out.add(sub.code())
    return out


def maximal_elements(maps: list) -> list:
    """Members not contained (as embedded subgraphs with the same rings) in another member."""
    codes = [m.code() for m in maps]
    subs = [subgraph_codes(m) for m in maps]
    keep = []
    for i, m in enumerate(maps):
        if not any(j != i and codes[i] in subs[j] for j in range(len(maps))):
            keep.append(m)
    return keep
