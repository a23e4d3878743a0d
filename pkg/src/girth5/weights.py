"""Exact rational weights, surface budgets and the cyl constraint table.

Everything here works in :class:`fractions.Fraction`; floats never appear.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable, Iterable

EPS = Fraction(2, 4113)

_S_SMALL = {
    5: Fraction(4, 4113),
    6: Fraction(72, 4113),
    7: Fraction(540, 4113),
    8: Fraction(2184, 4113),
}


class _NegInf:
    """Tagged minus-infinity marker. Compares below every number."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __str__(self):
        return "-inf"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def to_json(self):
        return {"tag": "neg_inf"}


NEG_INF = _NegInf()


def s_value(l: int) -> Fraction:
    """Face-length weight s(l), defined for l >= 5."""
    if l < 5:
        raise ValueError(f"s(l) is undefined for l={l} < 5")
    if l in _S_SMALL:
        return _S_SMALL[l]
    return Fraction(l - 8)


def face_weight(face) -> Fraction:
    """w(f): s(|f|) for open 2-cell faces of length >= 5, else |f|."""
    if face.open_2cell and face.length >= 5:
        return s_value(face.length)
    return Fraction(face.length)


def graph_weight(G) -> Fraction:
    """w(G, R): total weight of the internal faces of G."""
    return sum((face_weight(f) for f in G.faces if not f.is_ring_face), Fraction(0))


def elasticity(face_length: int, cover_lengths: Iterable[int]) -> Fraction:
    """Total length of the covering faces minus the length of the covered face."""
    return Fraction(sum(cover_lengths) - face_length)


# -- surface budgets ---------------------------------------------------------


@dataclass(frozen=True)
class SurfParams:
    g: int
    t: int
    t0: int = 0
    t1: int = 0

    def __post_init__(self):
        if min(self.g, self.t, self.t0, self.t1) < 0:
            raise ValueError("surface parameters must be non-negative")
        if self.t < self.t0 + self.t1:
            raise ValueError(f"t={self.t} < t0+t1={self.t0 + self.t1}")


def _check(g, t, t0, t1):
    if min(g, t, t0, t1) < 0 or t < t0 + t1:
        raise ValueError(f"invalid surface parameters {(g, t, t0, t1)}")


@lru_cache(maxsize=None)
def _surf_int(g: int, t: int, t0: int, t1: int) -> int:
    base = 120 * g + 48 * t - 4 * t1 - 5 * t0 - 120
    if g == 0 and t == 2 and t0 + t1 == 2:
        return base + 116 - 42 * t
    if g == 0 and t <= 2 and t0 + t1 < 2:
        return base + 114 - 42 * t
    return base


def gen(g: int, t: int, t0: int = 0, t1: int = 0) -> Fraction:
    _check(g, t, t0, t1)
    return Fraction(120 * g + 48 * t - 4 * t1 - 5 * t0 - 120)


def surf(g: int, t: int, t0: int = 0, t1: int = 0) -> Fraction:
    _check(g, t, t0, t1)
    return Fraction(_surf_int(g, t, t0, t1))


def gen_surf(p: SurfParams) -> tuple[Fraction, Fraction]:
    return gen(p.g, p.t, p.t0, p.t1), surf(p.g, p.t, p.t0, p.t1)


def surf_of_face(G, face, face_genus: int = 0) -> Fraction:
    """surf(g(f), a, a0, a1) for an internal face.

    Faces produced by rotation systems are planar domains, so the face
    genus defaults to zero.
    """
    a = len(face.walks)
    a0 = a1 = 0
    for w in face.walks:
        if not w.darts and w.vertex is not None:
            ring = G.ring_of_vertex(w.vertex)
            if ring is not None and ring.kind == "vertex":
                if ring.weak:
                    a0 += 1
                else:
                    a1 += 1
    return surf(face_genus, a, a0, a1)


def _record(clause, params, lhs, rhs, ok):
    return {"clause": clause, "params": params, "lhs": lhs, "rhs": rhs, "ok": bool(ok)}


def _splits(t: int):
    for t0 in range(t + 1):
        for t1 in range(t + 1 - t0):
            yield t0, t1


def check_surfineq(g_max: int = 6, t_max: int = 8, *, drop_hypothesis_a: bool = False) -> dict:
    """Exhaustively check the four surf inequalities on a finite grid.

    Returns ``{"checked": {clause: n}, "failures": [records]}``.  With
    ``drop_hypothesis_a`` the side condition of clause (a) is ignored, which
    is expected to produce failures.
    """
    checked = {"a": 0, "b": 0, "c": 0, "d": 0}
    failures = []

    def note(clause, params, lhs, rhs, ok):
        checked[clause] += 1
        if not ok:
            failures.append(_record(clause, params, str(lhs), str(rhs), ok))

    for g in range(g_max + 1):
        for t in range(t_max + 1):
            for t0, t1 in _splits(t):
                full = _surf_int(g, t, t0, t1)
                # (a)
                hyp = not (g == 0 and t <= 2) or t0 + t1 < t
                if t >= 2 and (hyp or drop_hypothesis_a):
                    for a0 in range(t0 + 1):
                        for a1 in range(t1 + 1):
                            if a0 + a1 < t0 + t1 - 2 or a0 + a1 > t - 1:
                                continue
                            lhs = _surf_int(g, t - 1, a0, a1)
                            note("a", [g, t, t0, t1, a0, a1], lhs, full, lhs < full)
                # (b)
                for gp in range(g):
                    if gp > 0 or t >= 2:
                        lhs = _surf_int(gp, t, t0, t1)
                        rhs = full - 120 * (g - gp) + 32
                        note("b", [g, gp, t, t0, t1], lhs, rhs, lhs <= rhs)
                # (c)
                for g1 in range(g + 1):
                    g2 = g - g1
                    for ta in range(t + 1):
                        tb = t - ta
                        if not (g2 > 0 or tb >= 1) or not (g1 > 0 or ta >= 2):
                            continue
                        for a0 in range(t0 + 1):
                            for a1 in range(t1 + 1):
                                b0, b1 = t0 - a0, t1 - a1
                                if a0 + a1 > ta or b0 + b1 > tb:
                                    continue
                                delta = 16 if (g2 == 0 and tb == 1) else 56
                                lhs = _surf_int(g1, ta, a0, a1) + _surf_int(g2, tb, b0, b1)
                                rhs = full - delta
                                note("c", [g, t, t0, t1, g1, ta, a0, a1], lhs, rhs, lhs <= rhs)
                # (d)
                if g >= 2:
                    lhs = _surf_int(g - 2, t, t0, t1)
                    rhs = full - 124
                    note("d", [g, t, t0, t1], lhs, rhs, lhs <= rhs)
    return {"checked": checked, "failures": failures}


def check_s_properties(max_l: int = 200, s: Callable[[int], Fraction] = s_value) -> dict:
    """Super/sub-additivity, monotonicity and the 5s(5) gap for s on [5, max_l]."""
    checked = {"additive": 0, "monotone": 0, "gap": 0}
    failures = []
    vals = {l: s(l) for l in range(5, max_l + 1)}
    s5 = vals[5]
    for x in range(5, max_l + 1):
        for y in range(5, max_l + 1 - x):
            lo, mid, hi = vals[x] + vals[y], vals[x + y], vals[x] + y
            checked["additive"] += 1
            if not (lo <= mid <= hi):
                failures.append(_record("additive", [x, y], str(lo), str(mid), False))
    for x in range(5, max_l):
        checked["monotone"] += 1
        if vals[x + 1] < vals[x]:
            failures.append(_record("monotone", [x], str(vals[x]), str(vals[x + 1]), False))
        for y in range(x + 1, max_l + 1):
            checked["gap"] += 1
            if not vals[y] - vals[x] > 5 * s5:
                failures.append(_record("gap", [x, y], str(vals[y] - vals[x]), str(5 * s5), False))
    return {"checked": checked, "failures": failures}


# -- cyl table ---------------------------------------------------------------


class CylTable:
    """Minimal pointwise solution of the cyl constraints on [0, xmax]^2."""

    def __init__(self, grid: list[list[Fraction]], passes: int = 0):
        self.grid = grid
        self.xmax = len(grid) - 1
        self.passes = passes

    def __call__(self, x: int, y: int) -> Fraction:
        return self.grid[x][y]

    def to_json(self) -> dict:
        return {
            "xmax": self.xmax,
            "values": [[[v.numerator, v.denominator] for v in row] for row in self.grid],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CylTable":
        return cls([[Fraction(a, b) for a, b in row] for row in data["values"]])


def _cyl_lower_bounds(c, x: int, y: int, xmax: int) -> list[Fraction]:
    """Lower bounds on cyl(x, y) imposed by the constraints, given table c."""
    s5 = s_value(5)
    out = [Fraction(0)]
    if (x, y) == (0, 0):
        # cyl(0,0) is pinned to 0; the s(x+y+11) bound is not applied here.
        return out
    for a, b in ((x, y), (y, x)):
        if a > 0:
            out.append(c[0][b] + a + 13)
        if a > 1 and b > 1:
            out.append(c[1][a] + c[1][b] + 19)
        for bp in range(b):
            out.append(c[a][bp] + s_value(b - bp + 8))
        if a >= 4:
            out.append(Fraction(886))
        if a <= 4 and 5 <= b <= 6:
            out.append((Fraction(2, 3) + 52 * EPS) * (a + b)
                       + Fraction(20, 3) * (40 + 5 * c[4][4] / s5 + 692))
        if a <= 7 and b == 7:
            out.append(Fraction(3, 2) * (a + 7)
                       + Fraction(20, 3) * (60 + 5 * c[6][6] / s5 + 692))
        if a >= 5 and b >= 5:
            out.append(c[4][a] + c[4][b] + c[4][4])
    out.append(s_value(x + y + 11))
    if (x, y) == (7, 7):
        out.append(2 * c[6][7])
    return out


def build_cyl_table(xmax: int = 12, max_passes: int = 1000) -> CylTable:
    """Iterate the constraints from zero to their least fixpoint."""
    if xmax < 7:
        raise ValueError("xmax must be at least 7")
    c = [[Fraction(0)] * (xmax + 1) for _ in range(xmax + 1)]
    for n in range(1, max_passes + 1):
        changed = False
        for x in range(xmax + 1):
            for y in range(xmax + 1):
                v = max(_cyl_lower_bounds(c, x, y, xmax))
                if v > c[x][y]:
                    c[x][y] = v
                    changed = True
        if not changed:
            return CylTable(c, passes=n)
    raise RuntimeError(f"cyl constraints did not converge in {max_passes} passes")


def verify_cyl_table(table: CylTable) -> list[dict]:
    """Re-check every constraint against a finished table, one record each."""
    c = table.grid
    n = table.xmax
    s5 = s_value(5)
    recs = []

    def add(clause, params, lhs, rhs, ok):
        recs.append(_record(clause, params, str(lhs), str(rhs), ok))

    add("zero", [0, 0], c[0][0], 0, c[0][0] == 0)
    for x in range(n + 1):
        for y in range(n + 1):
            v = c[x][y]
            add("symmetric", [x, y], v, c[y][x], v == c[y][x])
            if x > 0:
                rhs = c[0][y] + x + 13
                add("shift", [x, y], v, rhs, v >= rhs)
            if x > 1 and y > 1:
                rhs = c[1][x] + c[1][y] + 19
                add("split", [x, y], v, rhs, v >= rhs)
            for yp in range(y):
                rhs = c[x][yp] + s_value(y - yp + 8)
                add("increase", [x, y, yp], v, rhs, v >= rhs and rhs >= c[x][yp] + 1)
            if (x, y) != (0, 0):
                rhs = s_value(x + y + 11)
                add("s-floor", [x, y], v, rhs, v >= rhs)
            if x >= 4:
                add("floor886", [x, y], v, 886, v >= 886)
            if x <= 4 and 5 <= y <= 6:
                rhs = (Fraction(2, 3) + 52 * EPS) * (x + y) + Fraction(20, 3) * (40 + 5 * c[4][4] / s5 + 692)
                add("near-six", [x, y], v, rhs, v >= rhs)
            if x <= 7 and y == 7:
                rhs = Fraction(3, 2) * (x + 7) + Fraction(20, 3) * (60 + 5 * c[6][6] / s5 + 692)
                add("near-seven", [x, y], v, rhs, v >= rhs)
            if x >= 5 and y >= 5:
                rhs = c[4][x] + c[4][y] + c[4][4]
                add("wide", [x, y], v, rhs, v >= rhs)
    add("double", [7, 7], 2 * c[6][7], c[7][7], 2 * c[6][7] <= c[7][7])
    return recs


def eta_value(table: CylTable) -> Fraction:
    return 1867 + 67 * table(7, 7) / s_value(5)


def load_golden_cyl() -> CylTable:
    text = resources.files("girth5.data").joinpath("cyl_table.json").read_text()
    return CylTable.from_json(json.loads(text))


def load_golden_eta() -> Fraction:
    data = json.loads(resources.files("girth5.data").joinpath("eta.json").read_text())
    return Fraction(data["eta"][0], data["eta"][1])


# -- omnipresent faces ---------------------------------------------------------


def omnipresent_contribution(G, face, el: Fraction):
    """c(f') for an omnipresent face of G'.  Returns a Fraction or NEG_INF."""
    from .catalog import classify_exceptional
    from .topology import is_omnipresent, ring_component_parts

    if not is_omnipresent(G, face):
        raise ValueError("face is not omnipresent")
    parts = ring_component_parts(G)
    nontrivial = [(ring, H) for ring, H in parts if not H.is_ring_union()]
    s5 = s_value(5)
    if len(nontrivial) >= 2:
        return Fraction(1)
    if not nontrivial:
        cls = "E0"
    else:
        H = nontrivial[0][1]
        if H.rings[0].kind == "facial" and len(H.rings[0].vertices) >= 5:
            cls = classify_exceptional(H).value
        else:
            cls = None
    if cls in ("E0", "E1", "E2", "E3"):
        return NEG_INF
    if cls in ("E4", "E5"):
        return 5 - el - 5 * s5
    return 5 - el + 5 * s5


# -- disk weight bounds ---------------------------------------------------------


@dataclass(frozen=True)
class BoundCheck:
    name: str
    applies: bool
    bound: object  # Fraction, or None when s is undefined at the argument
    weight: Fraction

    @property
    def ok(self) -> bool:
        if not self.applies or self.bound is None:
            return True
        return self.weight <= self.bound


def _s_or_none(l: int):
    return s_value(l) if l >= 5 else None


def disk_weight_bounds(G) -> list[BoundCheck]:
    """The four weight bounds for a critical girth-5 disk graph with ring length l.

    The exceptional class decides which bounds apply.  A bound whose s-argument
    falls below 5 is undefined and reported with ``bound=None`` (vacuous).
    """
    from .catalog import classify_exceptional

    l = G.rings[0].length
    w = graph_weight(G)
    cls = classify_exceptional(G)
    s5 = s_value(5)

    def plus(base, extra):
        return None if base is None else base + extra

    return [
        BoundCheck("all", True, plus(_s_or_none(l - 3), s5), w),
        BoundCheck("not-E1", cls.value != "E1", plus(_s_or_none(l - 4), 2 * s5), w),
        BoundCheck("not-very-exceptional", not cls.very_exceptional, plus(_s_or_none(l - 5), 5 * s5), w),
        BoundCheck("not-exceptional", cls.value is None, plus(_s_or_none(l - 5), -5 * s5), w),
    ]
