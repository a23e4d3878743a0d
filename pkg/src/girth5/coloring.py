"""Exact 3-coloring with ring precolorings, criticality and related checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional

from .embedding import EmbeddedGraph

COLORS = (0, 1, 2)
FULL = 0b111


class ColoringError(ValueError):
    pass


class Solver:
    """Backtracking k-coloring with forward checking on a fixed vertex set.

    Vertices are processed by smallest remaining domain, ties broken by the
    fixed vertex order, so results are deterministic.
    """

    def __init__(self, vertices: Iterable[int], edges: Iterable, k: int = 3):
        self.vertices = tuple(sorted(vertices))
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.k = k
        self.full = (1 << k) - 1
        n = len(self.vertices)
        self.nbrs = [[] for _ in range(n)]
        self.edge_list = []
        for u, v in edges:
            a, b = self.index[u], self.index[v]
            self.nbrs[a].append(b)
            self.nbrs[b].append(a)
            self.edge_list.append((a, b))

    def solve(self, domains: Optional[dict] = None, skip: Optional[tuple] = None) -> Optional[dict]:
        """Find a coloring with each vertex inside its domain bitmask.

        ``skip`` is an edge (u, v) to ignore, used for single-edge deletions.
        """
        n = len(self.vertices)
        dom = [self.full] * n
        if domains:
            for v, m in domains.items():
                dom[self.index[v]] &= m
        if any(d == 0 for d in dom):
            return None
        sa = sb = -1
        if skip is not None:
            sa, sb = self.index[skip[0]], self.index[skip[1]]
        color = [-1] * n
        nbrs = self.nbrs

        def neighbours(i):
            if i == sa:
                return [j for j in nbrs[i] if j != sb]
            if i == sb:
                return [j for j in nbrs[i] if j != sa]
            return nbrs[i]

        def rec(dom, left):
            if not left:
                return True
            best, bc = None, 99
            for i in left:
                c = _POP[dom[i]]
                if c < bc:
                    best, bc = i, c
                    if c <= 1:
                        break
            i = best
            rest = [j for j in left if j != i]
            m = dom[i]
            while m:
                bit = m & -m
                m ^= bit
                nd = dom[:]
                nd[i] = bit
                ok = True
                for j in neighbours(i):
                    if color[j] < 0 and j != i:
                        nd[j] &= ~bit
                        if nd[j] == 0:
                            ok = False
                            break
                if not ok:
                    continue
                color[i] = bit.bit_length() - 1
                if rec(nd, rest):
                    return True
                color[i] = -1
            return False

        # propagate singleton domains of pre-set vertices first
        for i in range(n):
            if _POP[dom[i]] == 1:
                for j in neighbours(i):
                    if _POP[dom[j]] == 1 and dom[j] == dom[i]:
                        return None
        if rec(dom, list(range(n))):
            return {self.vertices[i]: color[i] for i in range(n)}
        return None


_POP = [bin(i).count("1") for i in range(1 << 8)]


def is_k_colorable(vertices, edges, k: int) -> bool:
    return Solver(vertices, edges, k).solve() is not None


def chromatic_bound(G, k: int = 3) -> bool:
    """Exact k-colorability for graphs with at most 64 vertices."""
    if k not in (3, 4):
        raise ColoringError("k must be 3 or 4")
    verts = G.vertices
    if len(verts) > 64:
        raise ColoringError("budget exceeded: more than 64 vertices")
    return is_k_colorable(verts, G.edge_pairs(), k)


# -- precolorings ----------------------------------------------------------------------


def ring_graph(G: EmbeddedGraph):
    """Vertices and edges of the union of the rings."""
    verts = sorted(G.ring_vertices)
    edges = sorted({tuple(sorted(G.edges[e])) for e in G.ring_edges})
    return verts, edges


def check_precoloring(G: EmbeddedGraph, phi: dict):
    verts, edges = ring_graph(G)
    missing = [v for v in verts if v not in phi]
    if missing:
        raise ColoringError(f"precoloring undefined on ring vertices {missing}")
    for v in verts:
        if phi[v] not in COLORS:
            raise ColoringError(f"invalid color {phi[v]} at {v}")
    for u, v in edges:
        if phi[u] == phi[v]:
            raise ColoringError(f"precoloring not proper on ring edge {u}-{v}")


def colorings_of(verts, edges, canonical: bool = False):
    """All proper 3-colorings of a small graph as dicts, in lexicographic order.

    With ``canonical`` only one representative per color permutation is
    produced: colors first appear in the order 0, 1, 2 along ``verts``.
    """
    verts = list(verts)
    nb = {v: set() for v in verts}
    for u, v in edges:
        nb[u].add(v)
        nb[v].add(u)
    pos = {v: i for i, v in enumerate(verts)}
    cur = {}

    def rec(i, used):
        if i == len(verts):
            yield dict(cur)
            return
        v = verts[i]
        top = min(used + 1, 3) if canonical else 3
        for c in range(top):
            if any(cur.get(w) == c for w in nb[v] if pos[w] < i):
                continue
            cur[v] = c
            yield from rec(i + 1, max(used, c + 1))
            del cur[v]

    yield from rec(0, 0)


def precolorings(G: EmbeddedGraph, canonical: bool = False):
    verts, edges = ring_graph(G)
    return colorings_of(verts, edges, canonical)


def _domains(G: EmbeddedGraph, phi: dict) -> dict:
    dom = {}
    for r in G.rings:
        for v in r.vertices:
            if r.kind == "vertex" and r.weak:
                dom[v] = FULL & ~(1 << phi[v])
            else:
                dom[v] = 1 << phi[v]
    return dom


class ExtensionContext:
    """Pre-built solver for repeated extension queries on one graph."""

    def __init__(self, G: EmbeddedGraph):
        self.G = G
        self.solver = Solver(G.vertices, G.edge_pairs(), 3)

    def extends(self, phi: dict, skip: Optional[tuple] = None) -> Optional[dict]:
        return self.solver.solve(_domains(self.G, phi), skip)


def extends(G: EmbeddedGraph, phi: dict) -> Optional[dict]:
    """A 3-coloring of G extending phi (weak vertex rings avoid their color), or None."""
    check_precoloring(G, phi)
    return ExtensionContext(G).extends(phi)


# -- criticality --------------------------------------------------------------------------


@dataclass
class CriticalityReport:
    critical: bool
    witnesses: dict = field(default_factory=dict)  # edge id -> precoloring
    uncovered: list = field(default_factory=list)
    reason: str = ""

    def __bool__(self):
        return self.critical


def _non_ring_edges(G):
    re = G.ring_edges
    return [e for e in sorted(G.edges) if e not in re]


def is_ring_critical(G: EmbeddedGraph, stop_early: bool = True) -> CriticalityReport:
    """Ring-criticality with a certifying precoloring for every non-ring edge.

    Deleting an edge can only help colorability, and every proper subgraph
    containing the rings lies inside G - e for some non-ring edge e (or misses
    an isolated internal vertex, handled separately), so single-edge
    deletions decide criticality.
    """
    if G.is_ring_union():
        return CriticalityReport(False, reason="graph equals the union of its rings")
    iso = [v for v in G.internal_vertices if G.degree(v) == 0]
    if iso:
        return CriticalityReport(False, uncovered=[], reason=f"isolated internal vertex {iso[0]}")
    ctx = ExtensionContext(G)
    todo = _non_ring_edges(G)
    witnesses = {}
    # colour permutations preserve extendability, so one representative per class suffices
    for phi in precolorings(G, canonical=True):
        if not todo:
            break
        if ctx.extends(phi) is not None:
            continue
        left = []
        for e in todo:
            if ctx.extends(phi, skip=G.edges[e]) is not None:
                witnesses[e] = phi
            else:
                left.append(e)
        todo = left
    if todo:
        return CriticalityReport(False, witnesses, todo, reason=f"edge {todo[0]} is not needed")
    return CriticalityReport(True, witnesses)


def verify_witnesses(G: EmbeddedGraph, report: CriticalityReport) -> bool:
    """Independent re-check: each witness extends to G - e but not to G."""
    for e, phi in report.witnesses.items():
        if extends(G, phi) is not None:
            return False
        H = _delete_edge_plain(G, e)
        if Solver(H[0], H[1]).solve(_domains(G, phi)) is not None:
            continue
        return False
    return True


def _delete_edge_plain(G, e):
    return G.vertices, [G.edges[x] for x in sorted(G.edges) if x != e]


def is_phi_critical(G: EmbeddedGraph, phi: dict) -> bool:
    check_precoloring(G, phi)
    if G.is_ring_union():
        return False
    if any(G.degree(v) == 0 for v in G.internal_vertices):
        return False
    ctx = ExtensionContext(G)
    if ctx.extends(phi) is not None:
        return False
    return all(ctx.extends(phi, skip=G.edges[e]) is not None for e in _non_ring_edges(G))


def phi_critical_subgraph(G: EmbeddedGraph, phi: dict) -> list:
    """Edge ids of a phi-critical subgraph, found by greedy deletion (None if phi extends)."""
    check_precoloring(G, phi)
    verts = G.vertices
    keep = list(sorted(G.edges))
    re = G.ring_edges
    dom = _domains(G, phi)
    if Solver(verts, [G.edges[e] for e in keep]).solve(dom) is not None:
        return None
    for e in list(keep):
        if e in re:
            continue
        trial = [x for x in keep if x != e]
        if Solver(verts, [G.edges[x] for x in trial]).solve(dom) is None:
            keep = trial
    return keep


def extendable_set(G: EmbeddedGraph) -> frozenset:
    """All ring precolorings (as sorted item tuples) that extend to G."""
    ctx = ExtensionContext(G)
    return frozenset(tuple(sorted(phi.items())) for phi in precolorings(G) if ctx.extends(phi) is not None)


def _ring_signature(G):
    return [(r.kind, r.vertices, r.weak) for r in G.rings]


def subsumes(H: EmbeddedGraph, G: EmbeddedGraph) -> bool:
    """True iff every ring precoloring extending to H also extends to G."""
    if _ring_signature(H) != _ring_signature(G):
        raise ColoringError("ring mismatch")
    ch, cg = ExtensionContext(H), ExtensionContext(G)
    for phi in precolorings(H, canonical=True):
        if ch.extends(phi) is not None and cg.extends(phi) is None:
            return False
    return True


# -- 4-cycle types ------------------------------------------------------------------------------


@dataclass(frozen=True)
class FourCycleType:
    value: frozenset  # subset of {1, 2, 3, 4}: indices i with lambda(x_i) != lambda(x_{i+2})

    def __str__(self):
        if not self.value:
            return "{}"
        return "{" + ",".join(f"x{i}" for i in sorted(self.value)) + "}"


def four_cycle_type(lam: dict, C) -> FourCycleType:
    C = list(C)
    if len(C) != 4:
        raise ColoringError("type is defined for 4-cycles")
    if any(v not in lam for v in C):
        raise ColoringError("coloring undefined on the cycle")
    out = {i + 1 for i in range(4) if lam[C[i]] != lam[C[(i + 2) % 4]]}
    return FourCycleType(frozenset(out))


# -- claims on basic graphs --------------------------------------------------------------------


@dataclass
class ClaimReport:
    basicsim: bool
    basicsim_witness: Optional[tuple]
    twoone: bool
    twoone_witnesses: dict
    twoone_failure: Optional[tuple] = None
    critical_input: bool = True  # False flags input that is not ring-critical, hence not basic


def _cycle_edges(vs):
    return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


def _basicsim(G, ctx, C1, C2):
    ring_edges = _cycle_edges(C1) + _cycle_edges(C2)
    for psi in colorings_of(C1, _cycle_edges(C1), canonical=True):
        # precolorings of C2 compatible with psi (rings are vertex-disjoint)
        phis = []
        for chi in colorings_of(C2, _cycle_edges(C2)):
            phi = dict(psi)
            phi.update(chi)
            phis.append(phi)
        ext = [ctx.extends(phi) is not None for phi in phis]
        for v1 in C2:
            for v2 in C2:
                if v1 == v2:
                    continue
                for c1, c2 in product(COLORS, COLORS):
                    if c1 == c2:
                        continue
                    if all(ok for phi, ok in zip(phis, ext) if phi[v1] != c1 and phi[v2] != c2):
                        return (psi, v1, v2, c1, c2)
    return None


def _twoone(G, C1, C2):
    witnesses, failure = {}, None
    base = Solver(G.vertices, G.edge_pairs(), 3)
    chis = list(colorings_of(C2, _cycle_edges(C2)))
    for v1 in C1:
        for v2 in C1:
            if v1 == v2:
                continue
            for c1, c2 in product(COLORS, COLORS):
                if c1 == c2:
                    continue
                ok_chi = []
                for chi in chis:
                    dom = {v: 1 << c for v, c in chi.items()}
                    dom[v1] = FULL & ~(1 << c1)
                    dom[v2] = FULL & ~(1 << c2)
                    ok_chi.append(base.solve(dom) is not None)
                found = None
                for v in C2:
                    for c in COLORS:
                        if all(ok for chi, ok in zip(chis, ok_chi) if chi[v] != c):
                            found = (v, c)
                            break
                    if found:
                        break
                if found is None:
                    failure = (v1, v2, c1, c2)
                    return witnesses, failure
                witnesses[(v1, v2, c1, c2)] = found
    return witnesses, failure


def basic_claim_checks(G: EmbeddedGraph, order=None) -> ClaimReport:
    """Check both claims for ring order (C1, C2); ``order`` swaps the rings when (1, 0)."""
    facial = [r for r in G.rings if r.kind == "facial"]
    if len(G.rings) != 2 or len(facial) != 2 or any(r.length > 4 for r in facial):
        raise ColoringError("ring arity mismatch: need two facial rings of length at most 4")
    i, j = order or (0, 1)
    C1, C2 = list(G.rings[i].vertices), list(G.rings[j].vertices)
    ctx = ExtensionContext(G)
    w = _basicsim(G, ctx, C1, C2)
    tw, fail = _twoone(G, C1, C2)
    return ClaimReport(w is not None, w, fail is None, tw, fail, bool(is_ring_critical(G)))
