"""Graphs embedded in surfaces with rings, as signed rotation systems.

An embedding is a rotation system (clockwise cyclic order of darts around
each vertex) together with a sign on each edge; an edge of sign -1 passes
through a crosscap.  Faces live in the patched surface, so a facial ring
bounds a face of its own and every cuff sits inside some face.

Darts are ``Dart(edge, end)``; end 0 leaves ``edges[edge][0]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Optional


class EmbeddingError(ValueError):
    """Invalid embedded-graph input."""


class ParseError(EmbeddingError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class Dart(NamedTuple):
    edge: int
    end: int

    def __str__(self):
        return f"{self.edge}.{self.end}"


Flag = tuple  # (Dart, orientation)


@dataclass(frozen=True)
class RingSpec:
    kind: str  # "facial" or "vertex"
    vertices: tuple
    weak: bool = False
    corner: Optional[Dart] = None

    def __post_init__(self):
        if self.kind not in ("facial", "vertex"):
            raise EmbeddingError(f"unknown ring kind {self.kind!r}")
        if self.kind == "facial":
            if self.weak:
                raise EmbeddingError("only vertex rings can be weak")
            if len(self.vertices) < 3 or len(set(self.vertices)) != len(self.vertices):
                raise EmbeddingError("facial ring must be a cycle of length >= 3")
        elif len(self.vertices) != 1:
            raise EmbeddingError("vertex ring holds exactly one vertex")

    @classmethod
    def facial(cls, cycle: Iterable[int]) -> "RingSpec":
        return cls("facial", tuple(cycle))

    @classmethod
    def vertex(cls, v: int, weak: bool = False, corner: Optional[Dart] = None) -> "RingSpec":
        return cls("vertex", (v,), weak, corner)

    @property
    def length(self) -> int:
        if self.kind == "facial":
            return len(self.vertices)
        return 0 if self.weak else 1

    def edges(self):
        """Vertex pairs of the ring cycle (empty for vertex rings)."""
        if self.kind != "facial":
            return []
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


@dataclass(frozen=True)
class Walk:
    flags: tuple  # ((Dart, orientation), ...)
    vertices: tuple
    vertex: Optional[int] = None  # set for the walk of an isolated vertex

    def __len__(self):
        return len(self.flags)

    @property
    def darts(self):
        return tuple(d for d, _ in self.flags)

    def is_cycle(self) -> bool:
        return len(self.flags) >= 3 and len(set(self.vertices)) == len(self.vertices)


@dataclass(frozen=True)
class FaceRecord:
    index: int
    walks: tuple
    length: int
    open_2cell: bool
    closed_2cell: bool
    is_ring_face: bool
    ring: Optional[int] = None
    cuff_rings: tuple = ()
    free_cuffs: int = 0

    @property
    def has_cuff(self) -> bool:
        return self.is_ring_face or bool(self.cuff_rings) or self.free_cuffs > 0

    def vertex_set(self):
        out = set()
        for w in self.walks:
            out.update(w.vertices)
            if w.vertex is not None:
                out.add(w.vertex)
        return out

    def edge_set(self):
        return {d.edge for w in self.walks for d in w.darts}


class EmbeddedGraph:
    """Immutable signed rotation system with rings, free cuffs and face joins.

    ``joins`` merge the walks of different components into a single face; each
    join lists corners (a dart, meaning the corner following it clockwise, or
    a bare vertex id for an isolated vertex).  ``cuffs`` are holes that do not
    touch the graph, located by corner in the same way.
    """

    def __init__(self, vertices, edges, rotation, signs=None, rings=(), cuffs=(),
                 joins=(), precoloring=None, validate=True):
        self.vertices = tuple(sorted(vertices))
        self.edges = {int(e): (int(u), int(v)) for e, (u, v) in edges.items()}
        self.rotation = {int(v): tuple(Dart(*d) for d in rotation.get(v, ())) for v in self.vertices}
        self.signs = {e: 1 for e in self.edges}
        if signs:
            for e, s in signs.items():
                self.signs[int(e)] = int(s)
        self.rings = tuple(rings)
        self.cuffs = tuple(cuffs)
        self.joins = tuple(tuple(j) for j in joins)
        self.precoloring = dict(precoloring or {})
        if validate:
            self._validate()

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_neighbor_rotation(cls, rot, rings=(), twisted=(), cuffs=(), joins=(),
                               precoloring=None, validate=True):
        """Build from ``{v: [neighbors in clockwise order]}``.

        Edges are numbered by sorted endpoint pair; an edge ``(u, v)`` with
        ``u < v`` has end 0 at ``u``.  Vertex rings may carry ``corner`` as a
        neighbor id (the corner after the dart towards it); free cuffs and
        joins use ``(v, w)`` pairs the same way, or a bare vertex id.
        """
        pairs = sorted({(min(u, w), max(u, w)) for u, ns in rot.items() for w in ns})
        eid = {p: i for i, p in enumerate(pairs)}
        edges = {i: p for p, i in eid.items()}

        def dart(u, w):
            return Dart(eid[(min(u, w), max(u, w))], 0 if u < w else 1)

        def corner(c):
            if isinstance(c, tuple):
                return dart(*c)
            return c

        rotation = {v: [dart(v, w) for w in ns] for v, ns in rot.items()}
        signs = {eid[(min(u, w), max(u, w))]: -1 for u, w in twisted}
        fixed = []
        for r in rings:
            if r.kind == "vertex" and r.corner is not None and not isinstance(r.corner, Dart):
                r = RingSpec.vertex(r.vertices[0], r.weak, dart(r.vertices[0], r.corner))
            fixed.append(r)
        return cls(rot.keys(), edges, rotation, signs, fixed,
                   [corner(c) for c in cuffs], [[corner(c) for c in j] for j in joins],
                   precoloring, validate)

    def replace(self, **kw) -> "EmbeddedGraph":
        args = dict(vertices=self.vertices, edges=self.edges, rotation=self.rotation,
                    signs=self.signs, rings=self.rings, cuffs=self.cuffs, joins=self.joins,
                    precoloring=self.precoloring)
        args.update(kw)
        return EmbeddedGraph(**args)

    # -- darts ----------------------------------------------------------------

    def tail(self, d: Dart) -> int:
        return self.edges[d.edge][d.end]

    def head(self, d: Dart) -> int:
        return self.edges[d.edge][1 - d.end]

    @staticmethod
    def rev(d: Dart) -> Dart:
        return Dart(d.edge, 1 - d.end)

    @cached_property
    def _pos(self):
        return {d: i for v in self.vertices for i, d in enumerate(self.rotation[v])}

    def succ(self, d: Dart) -> Dart:
        r = self.rotation[self.tail(d)]
        return r[(self._pos[d] + 1) % len(r)]

    def pred(self, d: Dart) -> Dart:
        r = self.rotation[self.tail(d)]
        return r[(self._pos[d] - 1) % len(r)]

    @cached_property
    def _edge_index(self):
        return {frozenset(p): e for e, p in self.edges.items()}

    def edge_between(self, u: int, v: int) -> Optional[int]:
        return self._edge_index.get(frozenset((u, v)))

    def dart(self, u: int, v: int) -> Dart:
        e = self._edge_index[frozenset((u, v))]
        return Dart(e, 0 if self.edges[e][0] == u else 1)

    def step(self, flag):
        """Advance a face-tracing flag across its dart."""
        d, o = flag
        o2 = o * self.signs[d.edge]
        x = self.rev(d)
        return (self.succ(x) if o2 == 1 else self.pred(x)), o2

    def reverse_flag(self, flag):
        d, o = flag
        return self.rev(d), -o * self.signs[d.edge]

    def corner_flag(self, d: Dart):
        """The flag whose face contains the corner following ``d`` clockwise."""
        return self.succ(d), 1

    # -- basic structure --------------------------------------------------------

    @cached_property
    def adj(self) -> dict:
        out = {v: set() for v in self.vertices}
        for u, v in self.edges.values():
            out[u].add(v)
            out[v].add(u)
        return out

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    @cached_property
    def ring_vertices(self) -> frozenset:
        return frozenset(v for r in self.rings for v in r.vertices)

    @cached_property
    def ring_edges(self) -> frozenset:
        return frozenset(self.edge_between(u, v) for r in self.rings for u, v in r.edges())

    @cached_property
    def internal_vertices(self) -> tuple:
        return tuple(v for v in self.vertices if v not in self.ring_vertices)

    def ring_of_vertex(self, v: int) -> Optional[RingSpec]:
        for r in self.rings:
            if v in r.vertices:
                return r
        return None

    def ring_index_of_vertex(self, v: int) -> Optional[int]:
        for i, r in enumerate(self.rings):
            if v in r.vertices:
                return i
        return None

    def is_ring_union(self) -> bool:
        return set(self.vertices) == set(self.ring_vertices) and set(self.edges) == set(self.ring_edges)

    def edge_pairs(self):
        return [self.edges[e] for e in sorted(self.edges)]

    @cached_property
    def components(self) -> list:
        """Vertex sets of connected components (graph edges only), sorted."""
        seen, comps = set(), []
        for s in self.vertices:
            if s in seen:
                continue
            comp, stack = {s}, [s]
            seen.add(s)
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        stack.append(w)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    # -- faces ----------------------------------------------------------------

    @cached_property
    def _walks(self):
        walks, flag_walk = [], {}
        for v in self.vertices:
            if not self.rotation[v]:
                flag_walk[("v", v)] = len(walks)
                walks.append(Walk((), (v,), v))
        for e in sorted(self.edges):
            for end in (0, 1):
                for o in (1, -1):
                    start = (Dart(e, end), o)
                    if start in flag_walk:
                        continue
                    flags, verts = [], []
                    f = start
                    while True:
                        flags.append(f)
                        verts.append(self.tail(f[0]))
                        f = self.step(f)
                        if f == start:
                            break
                        if len(flags) > 4 * len(self.edges) + 4:
                            raise EmbeddingError("face tracing did not close")
                    idx = len(walks)
                    for fl in flags:
                        flag_walk[fl] = idx
                        flag_walk[self.reverse_flag(fl)] = idx
                    walks.append(Walk(tuple(flags), tuple(verts)))
        return walks, flag_walk

    def walk_of_corner(self, c) -> int:
        _, flag_walk = self._walks
        if isinstance(c, Dart):
            return flag_walk[self.corner_flag(c)]
        return flag_walk[("v", c)]

    def _face_groups(self):
        walks, flag_walk = self._walks
        parent = list(range(len(walks)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for j in self.joins:
            ids = [self.walk_of_corner(c) for c in j]
            for a in ids[1:]:
                parent[find(a)] = find(ids[0])
        groups = {}
        for i in range(len(walks)):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    @cached_property
    def _face_data(self):
        walks, flag_walk = self._walks
        groups = self._face_groups()
        walk_face = {}
        for fi, g in enumerate(groups):
            for w in g:
                walk_face[w] = fi
        ring_face = {}
        for ri, r in enumerate(self.rings):
            if r.kind == "facial":
                ring_face[walk_face[self._ring_walk(r)]] = ri
        cuff_rings = {}
        for ri, r in enumerate(self.rings):
            if r.kind == "vertex":
                v = r.vertices[0]
                w = self.walk_of_corner(r.corner if self.rotation[v] else v)
                cuff_rings.setdefault(walk_face[w], []).append(ri)
        free = {}
        for c in self.cuffs:
            fi = walk_face[self.walk_of_corner(c)]
            free[fi] = free.get(fi, 0) + 1
        faces = []
        for fi, g in enumerate(groups):
            ws = tuple(walks[i] for i in g)
            length = 0
            for w in ws:
                if w.vertex is not None:
                    r = self.ring_of_vertex(w.vertex)
                    length += r.length if (r is not None and r.kind == "vertex") else 0
                else:
                    length += len(w)
            open2 = len(ws) == 1
            closed2 = open2 and ws[0].vertex is None and ws[0].is_cycle()
            faces.append(FaceRecord(fi, ws, length, open2, closed2, fi in ring_face,
                                    ring_face.get(fi), tuple(cuff_rings.get(fi, ())), free.get(fi, 0)))
        return faces, walk_face

    @property
    def faces(self) -> list:
        return self._face_data[0]

    def face_of_flag(self, flag) -> FaceRecord:
        _, flag_walk = self._walks
        return self.faces[self._face_data[1][flag_walk[flag]]]

    def face_of_corner(self, c) -> FaceRecord:
        return self.faces[self._face_data[1][self.walk_of_corner(c)]]

    def faces_of_edge(self, e: int):
        """The (one or two) faces on either side of edge e."""
        return {self.face_of_flag((Dart(e, 0), 1)).index, self.face_of_flag((Dart(e, 0), -1)).index}

    def internal_faces(self):
        return [f for f in self.faces if not f.is_ring_face]

    def ring_face(self, ring_index: int) -> FaceRecord:
        for f in self.faces:
            if f.ring == ring_index:
                return f
        raise KeyError(ring_index)

    def _ring_walk(self, r: RingSpec) -> int:
        vs = r.vertices
        e = self.edge_between(vs[0], vs[1])
        if e is None:
            raise EmbeddingError("ring is not facial: ring edge missing")
        walks, flag_walk = self._walks
        wi = flag_walk[(self.dart(vs[0], vs[1]), 1)]
        if len(walks[wi]) != len(vs):
            raise EmbeddingError("ring is not facial")
        start = (self.dart(vs[0], vs[1]), 1)
        f, seq = start, []
        while True:
            seq.append(self.tail(f[0]))
            f = self.step(f)
            if f == start or len(seq) > len(vs):
                break
        if tuple(seq) != tuple(vs):
            raise EmbeddingError("ring is not facial")
        return wi

    # -- topology -------------------------------------------------------------

    @cached_property
    def face_components(self) -> list:
        """Vertex sets of pieces connected through edges or face joins."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges.values():
            parent[find(u)] = find(v)
        for f in self.faces:
            vs = [w.vertices[0] for w in f.walks]
            for v in vs[1:]:
                parent[find(v)] = find(vs[0])
        groups = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return sorted((frozenset(g) for g in groups.values()), key=min)

    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + sum(2 - len(f.walks) for f in self.faces)

    def euler_genus(self) -> int:
        """Euler genus of the patched surface (summed over pieces)."""
        return 2 * len(self.face_components) - self.euler_characteristic()

    def is_orientable(self) -> bool:
        side = {}
        for s in self.vertices:
            if s in side:
                continue
            side[s] = 1
            stack = [s]
            while stack:
                u = stack.pop()
                for d in self.rotation[u]:
                    w = self.head(d)
                    want = side[u] * self.signs[d.edge]
                    if w not in side:
                        side[w] = want
                        stack.append(w)
                    elif side[w] != want:
                        return False
        return True

    def genus_report(self) -> dict:
        return {"euler_genus": self.euler_genus(), "orientable": self.is_orientable(),
                "cuffs": len(self.rings) + len(self.cuffs)}

    # -- validation -----------------------------------------------------------

    def _validate(self):
        vs = set(self.vertices)
        seen_pairs = set()
        for e, (u, v) in self.edges.items():
            if u not in vs or v not in vs:
                raise EmbeddingError(f"edge {e} uses an unknown vertex")
            if u == v:
                raise EmbeddingError(f"loop at vertex {u} (edge {e})")
            p = frozenset((u, v))
            if p in seen_pairs:
                raise EmbeddingError(f"parallel edge {e} between {u} and {v}")
            seen_pairs.add(p)
            if self.signs[e] not in (1, -1):
                raise EmbeddingError(f"edge {e} has sign {self.signs[e]}")
        placed = set()
        for v in self.vertices:
            for d in self.rotation[v]:
                if d.edge not in self.edges or d.end not in (0, 1):
                    raise EmbeddingError(f"rotation at {v} names unknown dart {d}")
                if self.tail(d) != v:
                    raise EmbeddingError(f"dart {d} does not leave vertex {v}")
                if d in placed:
                    raise EmbeddingError(f"dart {d} appears twice in the rotation")
                placed.add(d)
        if len(placed) != 2 * len(self.edges):
            raise EmbeddingError("some dart is missing from the rotation")
        used = set()
        for r in self.rings:
            for v in r.vertices:
                if v not in vs:
                    raise EmbeddingError(f"ring uses unknown vertex {v}")
                if v in used:
                    raise EmbeddingError("rings overlap")
                used.add(v)
            if r.kind == "facial":
                self._ring_walk(r)
            else:
                v = r.vertices[0]
                if self.rotation[v]:
                    if r.corner is None or self.tail(r.corner) != v:
                        raise EmbeddingError(f"vertex ring {v} needs a corner dart at {v}")
                elif r.corner is not None:
                    raise EmbeddingError(f"isolated vertex ring {v} cannot carry a corner")
        for c in self.cuffs:
            self._check_corner(c)
        for j in self.joins:
            for c in j:
                self._check_corner(c)
        for v, c in self.precoloring.items():
            if v not in vs or c not in (0, 1, 2):
                raise EmbeddingError(f"bad precoloring entry {v}={c}")
        self.faces  # noqa: B018 - forces face tracing and ring checks

    def _check_corner(self, c):
        if isinstance(c, Dart):
            if c.edge not in self.edges or c.end not in (0, 1):
                raise EmbeddingError(f"unknown corner dart {c}")
        elif c not in self.adj or self.rotation[c]:
            raise EmbeddingError(f"bare corner {c} must be an isolated vertex")

    # -- equality / repr ------------------------------------------------------

    def _key(self):
        return (self.vertices, tuple(sorted(self.edges.items())),
                tuple(sorted(self.rotation.items())), tuple(sorted(self.signs.items())),
                self.rings, self.cuffs, self.joins, tuple(sorted(self.precoloring.items())))

    def __eq__(self, other):
        return isinstance(other, EmbeddedGraph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return (f"EmbeddedGraph(V={len(self.vertices)}, E={len(self.edges)}, "
                f"rings={[r.kind + str(list(r.vertices)) for r in self.rings]})")

    # -- serialization --------------------------------------------------------

    def to_document(self) -> str:
        return emit_document(self)


def _corner_token(c) -> str:
    return str(c) if isinstance(c, Dart) else str(c)


def emit_document(G: EmbeddedGraph) -> str:
    lines = [f"vertex {v}" for v in G.vertices]
    for e in sorted(G.edges):
        u, v = G.edges[e]
        lines.append(f"edge {e} {u} {v}" + (" sign -1" if G.signs[e] == -1 else ""))
    for v in G.vertices:
        if G.rotation[v]:
            lines.append(f"rot {v}: " + " ".join(str(d) for d in G.rotation[v]))
    for r in G.rings:
        if r.kind == "facial":
            lines.append("ring facial " + " ".join(str(v) for v in r.vertices))
        else:
            parts = ["ring vertex", str(r.vertices[0])]
            if r.weak:
                parts.append("weak")
            if r.corner is not None:
                parts.append(str(r.corner))
            lines.append(" ".join(parts))
    for c in G.cuffs:
        lines.append(f"cuff {_corner_token(c)}")
    for j in G.joins:
        lines.append("join " + " ".join(_corner_token(c) for c in j))
    if G.precoloring:
        lines.append("precoloring " + " ".join(f"{v}={c}" for v, c in sorted(G.precoloring.items())))
    return "\n".join(lines) + "\n"


_DART = re.compile(r"^(\d+)\.([01])$")


def _parse_dart(tok: str, lineno: int) -> Dart:
    m = _DART.match(tok)
    if not m:
        raise ParseError(lineno, f"bad dart {tok!r}")
    return Dart(int(m.group(1)), int(m.group(2)))


def _parse_corner(tok: str, lineno: int):
    if "." in tok:
        return _parse_dart(tok, lineno)
    return _parse_int(tok, lineno)


def _parse_int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(lineno, f"expected an integer, got {tok!r}") from None


def parse_document(text: str) -> EmbeddedGraph:
    """Parse the line-based document format into a validated EmbeddedGraph."""
    vertices, edges, signs, rotation = [], {}, {}, {}
    rings, cuffs, joins, pre = [], [], [], {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        kw = toks[0]
        if kw == "vertex":
            if len(toks) != 2:
                raise ParseError(lineno, "usage: vertex <id>")
            vertices.append(_parse_int(toks[1], lineno))
        elif kw == "edge":
            if len(toks) not in (4, 6) or (len(toks) == 6 and toks[4:] != ["sign", "-1"]):
                raise ParseError(lineno, "usage: edge <eid> <v1> <v2> [sign -1]")
            e = _parse_int(toks[1], lineno)
            if e in edges:
                raise ParseError(lineno, f"duplicate edge id {e}")
            edges[e] = (_parse_int(toks[2], lineno), _parse_int(toks[3], lineno))
            if len(toks) == 6:
                signs[e] = -1
        elif kw == "rot":
            if not toks[1].endswith(":"):
                raise ParseError(lineno, "usage: rot <vid>: <dart>...")
            v = _parse_int(toks[1][:-1], lineno)
            rotation[v] = [_parse_dart(t, lineno) for t in toks[2:]]
        elif kw == "ring":
            if len(toks) < 3:
                raise ParseError(lineno, "usage: ring facial|vertex ...")
            try:
                if toks[1] == "facial":
                    rings.append(RingSpec.facial(_parse_int(t, lineno) for t in toks[2:]))
                elif toks[1] == "vertex":
                    v = _parse_int(toks[2], lineno)
                    rest = toks[3:]
                    weak = bool(rest) and rest[0] == "weak"
                    if weak:
                        rest = rest[1:]
                    corner = _parse_dart(rest[0], lineno) if rest else None
                    if len(rest) > 1:
                        raise ParseError(lineno, "trailing tokens after vertex ring")
                    rings.append(RingSpec.vertex(v, weak, corner))
                else:
                    raise ParseError(lineno, f"unknown ring kind {toks[1]!r}")
            except ParseError:
                raise
            except EmbeddingError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif kw == "cuff":
            cuffs.append(_parse_corner(toks[1], lineno))
        elif kw == "join":
            joins.append([_parse_corner(t, lineno) for t in toks[1:]])
        elif kw == "precoloring":
            for t in toks[1:]:
                if "=" not in t:
                    raise ParseError(lineno, f"bad precoloring entry {t!r}")
                a, b = t.split("=", 1)
                pre[_parse_int(a, lineno)] = _parse_int(b, lineno)
        else:
            raise ParseError(lineno, f"unknown keyword {kw!r}")
    if len(set(vertices)) != len(vertices):
        raise EmbeddingError("duplicate vertex id")
    return EmbeddedGraph(vertices, edges, {v: rotation.get(v, []) for v in vertices}, signs,
                         rings, cuffs, joins, pre)


def build_embedding(description: str) -> EmbeddedGraph:
    return parse_document(description)
