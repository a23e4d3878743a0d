"""Named verification suites producing deterministic JSON reports."""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

from . import weights as W
from .catalog import (
    ChainSpec, EXCEPTIONAL_MIN_LENGTH, classify_exceptional, count_triangles, make_chain,
    make_exceptional, narrow_cylinder_instances, random_triangle_free_planar,
)
from .coloring import (
    basic_claim_checks, colorings_of, is_k_colorable, is_ring_critical, verify_witnesses,
)
from .embedding import EmbeddedGraph
from .enumeration import (
    SearchSpec, SearchStats, enumerate_basic_maps, enumerate_critical_maps, maximal_elements,
)
from .planar import embed_plane, is_planar
from .properties import (
    check_i0, check_i1, check_i2, girth, incomparable_edges, natr_edges, near6_edges,
    near7_edges, planechar_case, simple_cycles, surrounds,
)
from .topology import is_contractible


class SuiteError(ValueError):
    pass


@dataclass
class Case:
    id: str
    params: dict
    expected: object
    actual: object
    ok: bool

    def to_json(self):
        return {"id": self.id, "params": self.params, "expected": _plain(self.expected),
                "actual": _plain(self.actual), "ok": bool(self.ok)}


@dataclass
class SuiteReport:
    suite: str
    cases: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def exit(self) -> int:
        return 0 if self.ok else 1

    def add(self, id, params, expected, actual, ok=None):
        if ok is None:
            ok = expected == actual
        self.cases.append(Case(id, params, expected, actual, bool(ok)))

    def to_json(self) -> dict:
        # elapsed time is left out so reports are byte-identical across runs
        n_ok = sum(c.ok for c in self.cases)
        return {"suite": self.suite, "passed": n_ok, "failed": len(self.cases) - n_ok,
                "exit": self.exit, "cases": [c.to_json() for c in self.cases]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def summary(self) -> str:
        n_ok = sum(c.ok for c in self.cases)
        head = f"{self.suite}: {n_ok}/{len(self.cases)} ok ({self.elapsed:.1f}s)"
        bad = [f"  FAIL {c.id} expected={_plain(c.expected)} actual={_plain(c.actual)}"
               for c in self.cases if not c.ok]
        return "\n".join([head] + bad)


def _plain(x):
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(y) for y in x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


# -- budgets -------------------------------------------------------------------------------


def default_budgets() -> dict:
    return json.loads(resources.files("girth5.data").joinpath("budgets.json").read_text())


def merge_budgets(overrides: dict | None = None) -> dict:
    b = default_budgets()
    for k, v in (overrides or {}).items():
        if k not in b:
            raise SuiteError(f"unknown budget key {k!r}")
        try:
            v = int(v)
        except (TypeError, ValueError):
            raise SuiteError(f"budget {k} must be an integer") from None
        if v < 0:
            raise SuiteError(f"budget {k} out of range")
        b[k] = v
    return b


# -- suites --------------------------------------------------------------------------------


def suite_s_props(r: SuiteReport, b: dict):
    known = {5: Fraction(4, 4113), 6: Fraction(72, 4113), 7: Fraction(540, 4113), 8: Fraction(2184, 4113)}
    for l, v in known.items():
        r.add(f"s({l})", {"l": l}, v, W.s_value(l))
    max_l = b["s-props.max_l"]
    bad = [l for l in range(9, max_l + 1) if W.s_value(l) != l - 8]
    r.add("s(l)=l-8", {"range": [9, max_l]}, [], bad)
    rep = W.check_s_properties(max_l)
    for name, n in sorted(rep["checked"].items()):
        fails = [f for f in rep["failures"] if f["clause"] == name]
        r.add(f"{name}", {"max_l": max_l, "checked": n}, 0, len(fails))


def suite_surfineq(r: SuiteReport, b: dict):
    g, t = b["surfineq.g_max"], b["surfineq.t_max"]
    rep = W.check_surfineq(g, t)
    for clause in "abcd":
        fails = [f for f in rep["failures"] if f["clause"] == clause]
        r.add(f"clause-{clause}", {"g_max": g, "t_max": t, "checked": rep["checked"][clause]}, 0, len(fails))
    neg = W.check_surfineq(g, t, drop_hypothesis_a=True)
    n = sum(1 for f in neg["failures"] if f["clause"] == "a")
    r.add("clause-a-without-hypothesis", {"g_max": g, "t_max": t}, "counterexamples", n, n > 0)
    lhs, rhs = W.surf(0, 0), W.surf(2, 0) - 124
    r.add("clause-d-g2-t0", {}, "lhs <= rhs", [lhs, rhs], lhs <= rhs)


def suite_cyl(r: SuiteReport, b: dict):
    xmax = b["cyl.xmax"]
    table = W.build_cyl_table(xmax)
    recs = W.verify_cyl_table(table)
    for clause in sorted({x["clause"] for x in recs}):
        sel = [x for x in recs if x["clause"] == clause]
        r.add(f"constraint-{clause}", {"checked": len(sel)}, 0, sum(not x["ok"] for x in sel))
    sym = all(table(x, y) == table(y, x) for x in range(xmax + 1) for y in range(xmax + 1))
    r.add("symmetric", {"xmax": xmax}, True, sym)
    mono = all(table(x, y) <= table(x, y + 1) for x in range(xmax + 1) for y in range(xmax))
    r.add("monotone", {"xmax": xmax}, True, mono)
    r.add("cyl(0,0)", {}, Fraction(0), table(0, 0))
    r.add("cyl(4,4)>=886", {}, ">= 886", table(4, 4), table(4, 4) >= 886)
    if xmax == 12:
        golden = W.load_golden_cyl()
        r.add("golden-table", {"xmax": 12}, True, golden.grid == table.grid)
    eta = W.eta_value(table)
    r.add("eta", {}, W.load_golden_eta(), eta)
    r.add("eta-formula", {}, 1867 + 67 * table(7, 7) / W.s_value(5), eta)


def _propagates(G, left, right) -> tuple:
    """Count colorings where the left pair differs but the right pair does not."""
    verts = list(G.vertices)
    total = bad = 0
    for col in colorings_of(verts, G.edge_pairs()):
        total += 1
        if col[left[0]] != col[left[1]] and col[right[0]] == col[right[1]]:
            bad += 1
    return total, bad


def suite_chains(r: SuiteReport, b: dict):
    for k in range(b["chains.k_max"] + 1):
        p = {"k": k}
        ch = make_chain(ChainSpec(k))
        A = ch.graph
        r.add(f"chain-{k}-vertices", p, 4 + 3 * k, len(A.vertices))
        r.add(f"chain-{k}-planar", p, True, is_planar(A.edges, A.vertices))
        r.add(f"chain-{k}-not-3-colorable", p, False, is_k_colorable(A.vertices, A.edges, 3))
        r.add(f"chain-{k}-4-colorable", p, True, is_k_colorable(A.vertices, A.edges, 4))
        r.add(f"chain-{k}-triangles", p, 4, count_triangles(A.adj))
        plane = embed_plane(A.edges)
        lens = sorted(f.length for f in plane.faces)
        r.add(f"chain-{k}-faces", p, "four 3-faces, rest 5", lens,
              lens.count(3) == 4 and all(x == 5 for x in lens if x != 3))
        K = make_chain(ChainSpec(k, "canonical-klein")).graph
        r.add(f"klein-{k}-genus", p, [2, False], [K.euler_genus(), K.is_orientable()])
        contractible = [c for c in simple_cycles(K.adj, 4) if is_contractible(K, c)]
        r.add(f"klein-{k}-no-contractible-short", p, [], contractible)
    for k in range(2, b["chains.broken_max"] + 1):
        p = {"k": k}
        ch = make_chain(ChainSpec(k, "broken-cylinder"))
        G = ch.graph
        r.add(f"broken-{k}-cylinder", p, [0, True, 2], [G.euler_genus(), G.is_orientable(), len(G.rings)])
        rep = is_ring_critical(G)
        r.add(f"broken-{k}-critical", p, True, bool(rep) and verify_witnesses(G, rep))
        total, bad = _propagates(G, ch.pair_left, ch.pair_right)
        r.add(f"broken-{k}-propagation", {"k": k, "colorings": total}, 0, bad)


def suite_exceptional(r: SuiteReport, b: dict):
    for cls, lo in sorted(EXCEPTIONAL_MIN_LENGTH.items()):
        for l in range(lo, b["exceptional.l_max"] + 1):
            got = classify_exceptional(make_exceptional(cls, l))
            r.add(f"{cls}-{l}", {"class": cls, "l": l},
                  [cls, cls in ("E1", "E2", "E3")], [got.value, got.very_exceptional])


def suite_basic(r: SuiteReport, b: dict):
    n = b["basic.max_internal"]
    tf = enumerate_basic_maps(allow_triangles=False, max_internal=n)
    good = [x.graph for x in tf if x.two_connected and x.triangle_free]
    maxi = maximal_elements(good)
    r.add("two-connected-triangle-free-maximal", {"max_internal": n}, 5, len(maxi))
    everything = enumerate_basic_maps(allow_triangles=True, max_internal=n)
    r.add("triangles-enlarge-list", {"max_internal": n}, f"> {len(tf)}", len(everything),
          len(everything) > len(tf))
    # both claims are about triangle-free 2-connected basic graphs only
    for i, m in enumerate(good):
        G = m.to_embedded()
        for order in ((0, 1), (1, 0)):
            rep = basic_claim_checks(G, order)
            r.add(f"basic-{i}-order-{order[0]}{order[1]}",
                  {"vertices": len(G.vertices), "edges": len(G.edges)},
                  [True, True], [rep.basicsim, rep.twoone])


def critshort_shape(G: EmbeddedGraph) -> str | None:
    r1, r2 = (set(r.vertices) for r in G.rings)
    inner = list(G.internal_vertices)
    cross = [(u, v) for u, v in G.edge_pairs() if (u in r1 and v in r2) or (u in r2 and v in r1)]
    if not inner and len(cross) == 1:
        return "one-edge"
    if not inner and len(cross) == 2:
        return "two-edges"
    if len(inner) == 2 and not cross:
        x, y = inner
        if y in G.adj[x] and G.degree(x) == 3 and G.degree(y) == 3 and \
                all(G.adj[v] & r1 and G.adj[v] & r2 for v in inner):
            return "two-adjacent-degree-three"
    return None


def suite_critshort(r: SuiteReport, b: dict):
    n = b["critshort.max_internal"]
    spec = SearchSpec("cylinder", (3, 3), 3, n)
    stats = SearchStats()
    maps = enumerate_critical_maps(spec, stats)
    shapes = sorted(str(critshort_shape(m.to_embedded())) for m in maps)
    expect = sorted(["one-edge", "two-edges", "two-adjacent-degree-three"])
    r.add("shapes", {"max_internal": n, "states": stats.states}, expect, shapes)
    for i, m in enumerate(maps):
        G = m.to_embedded()
        rep = is_ring_critical(G)
        r.add(f"instance-{i}-critical", {"shape": critshort_shape(G)}, True, bool(rep))


@lru_cache(maxsize=None)
def _disk_outputs(l: int, n: int) -> tuple:
    spec = SearchSpec("disk", (l,), 5, n, induced_ring=True)
    return tuple(m.to_embedded() for m in enumerate_critical_maps(spec))


def _disk_lengths(b):
    return range(b["planechar.ring_min"], b["planechar.ring_max"] + 1)


def suite_planechar(r: SuiteReport, b: dict):
    n = b["planechar.max_internal"]
    for l in _disk_lengths(b):
        out = _disk_outputs(l, n)
        p = {"l": l, "max_internal": n}
        if l <= 8:
            r.add(f"ring-{l}-count", p, 0, len(out))
            continue
        cases = [planechar_case(G) for G in out]
        if l == 9:
            sizes = [len(G.internal_vertices) for G in out]
            r.add(f"ring-{l}-shapes", p, "all case a, one internal vertex", [cases, sizes],
                  bool(out) and all(c == "a" for c in cases) and all(s == 1 for s in sizes))
        else:
            r.add(f"ring-{l}-shapes", p, "each case a or b", cases,
                  all(c in ("a", "b") for c in cases))
        for i, G in enumerate(out):
            rep = is_ring_critical(G)
            props = [check_i0(G), check_i1(G), check_i2(G)]
            r.add(f"ring-{l}-{i}-certified", p, [True, True, True, True], [bool(rep)] + props)


def suite_diskweight(r: SuiteReport, b: dict):
    n = b["planechar.max_internal"]
    for l in _disk_lengths(b):
        for i, G in enumerate(_disk_outputs(l, n)):
            cls = classify_exceptional(G)
            checks = W.disk_weight_bounds(G)
            r.add(f"ring-{l}-{i}", {"l": l, "class": str(cls), "weight": W.graph_weight(G)},
                  [c.name for c in checks], [c.name for c in checks if c.ok],
                  all(c.ok for c in checks))


def suite_aksen(r: SuiteReport, b: dict):
    total = b["aksen.max_vertices"]
    for l in (3, 4):
        n = total - l
        spec = SearchSpec("cylinder", (l,), 3, n, free_cuff=True)
        stats = SearchStats()
        out = enumerate_critical_maps(spec, stats)
        r.add(f"ring-{l}", {"max_vertices": total, "states": stats.states}, 0, len(out))


def suite_grotzsch(r: SuiteReport, b: dict):
    n, trials = b["grotzsch.n"], b["grotzsch.trials"]
    rng = random.Random(b["grotzsch.seed"])
    bad = []
    edges = 0
    for t in range(trials):
        A = random_triangle_free_planar(n, rng)
        edges += len(A.edges)
        g = girth(A.adj)
        if g is not None and g < 4 or not is_planar(A.edges, A.vertices) or \
                not is_k_colorable(A.vertices, A.edges, 3):
            bad.append(t)
    r.add("three-colorable", {"n": n, "trials": trials, "seed": b["grotzsch.seed"], "edges": edges}, [], bad)


def suite_concentric(r: SuiteReport, b: dict):
    for name, G in narrow_cylinder_instances():
        short = [c for c in simple_cycles(G.adj, 7)]
        crit = bool(is_ring_critical(G))
        for ri, R in enumerate(G.rings):
            p = {"instance": name, "ring": ri, "critical": crit}
            worst = None
            for K0 in short:
                if not surrounds(G, K0, ri):
                    continue
                x = len(incomparable_edges(G, ri, K0))
                if worst is None or x - 10 * len(K0) > worst[0] - 10 * worst[1]:
                    worst = (x, len(K0))
            if worst is not None:
                r.add(f"{name}-R{ri}-concentric", p, f"<= {10 * worst[1]}", worst[0], worst[0] <= 10 * worst[1])
            if R.length == 4:
                x = len(natr_edges(G, ri))
                r.add(f"{name}-R{ri}-natr", p, "<= 93", x, x <= 93)
            if R.length == 6:
                x = len(near6_edges(G, ri))
                r.add(f"{name}-R{ri}-near6", p, "<= 346", x, x <= 346)
            if R.length == 7:
                x = len(near7_edges(G, ri))
                r.add(f"{name}-R{ri}-near7", p, "<= 35", x, x <= 35)


SUITES: dict[str, Callable] = {
    "s-props": suite_s_props,
    "surfineq": suite_surfineq,
    "cyl": suite_cyl,
    "chains": suite_chains,
    "exceptional": suite_exceptional,
    "basic": suite_basic,
    "critshort": suite_critshort,
    "planechar-small": suite_planechar,
    "diskweight-small": suite_diskweight,
    "aksen-small": suite_aksen,
    "grotzsch-random": suite_grotzsch,
    "concentric": suite_concentric,
}


def run_suite(name: str, overrides: dict | None = None) -> SuiteReport:
    if name not in SUITES:
        raise SuiteError(f"unknown suite {name!r}")
    b = merge_budgets(overrides)
    rep = SuiteReport(name)
    t0 = time.perf_counter()
    SUITES[name](rep, b)
    rep.elapsed = time.perf_counter() - t0
    return rep


def run_all(overrides: dict | None = None) -> list:
    return [run_suite(name, overrides) for name in SUITES]
