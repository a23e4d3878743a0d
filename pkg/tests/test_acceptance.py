"""Acceptance run: one test per criterion, each printing a single PASS/FAIL line."""

import time

import pytest

from girth5.enumeration import SearchSpec, enumerate_critical
from girth5.oracle import abstract_key, naive_critical, same_classes
from girth5.suites import run_suite


@pytest.fixture(autouse=True)
def _terminal(capsys):
    # PASS/FAIL lines bypass output capture so they show in every run
    global _capsys
    _capsys = capsys
    yield


_capsys = None


def _report(n, what, ok, elapsed, limit):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    bound = f" (limit {limit}s)" if limit else ""
    with _capsys.disabled():
        print(f"\n{status} criterion {n}: {what} [{elapsed:.1f}s{bound}]")
    return ok and within


def _suites(n, what, names, limit):
    t0 = time.perf_counter()
    reps = [run_suite(s) for s in names]
    elapsed = time.perf_counter() - t0
    for rep in reps:
        if not rep.ok:
            print(rep.summary())
    assert _report(n, what, all(r.ok for r in reps), elapsed, limit)


def test_criterion_1_constants():
    _suites(1, "s values and additivity", ["s-props"], 1)


def test_criterion_2_surface_inequalities():
    _suites(2, "surf/gen clauses for g <= 6, t <= 8", ["surfineq"], 5)


def test_criterion_3_cyl_fixpoint():
    _suites(3, "cyl fixpoint table, constraints and eta", ["cyl"], 10)


def test_criterion_4_chains():
    _suites(4, "chains k <= 4, broken chains critical and propagating", ["chains"], 60)


def test_criterion_5_disk_enumeration():
    _suites(5, "disk rings 5..10: empty below 9, claw at 9, weight bounds",
            ["planechar-small", "diskweight-small"], 600)


def test_criterion_6_short_cycle_cylinder():
    _suites(6, "(3,3) cylinder outputs are the three short-cycle shapes", ["critshort"], 300)


def test_criterion_7_basic_graphs():
    _suites(7, "five maximal basic graphs and both claims", ["basic"], 600)


def test_criterion_8_negative_search():
    _suites(8, "one short ring with a free cuff has no critical graph", ["aksen-small"], 600)


def _keys(graphs):
    return [abstract_key(G.vertices, [tuple(sorted(p)) for p in G.edge_pairs()],
                         [r.vertices for r in G.rings]) for G in graphs]


ORACLE_CASES = [("disk", (l,), 5, 3) for l in range(5, 11)] + [
    ("cylinder", (3, 3), 3, 3),
    ("cylinder", (3, 4), 3, 2),
    ("cylinder", (4, 4), 3, 2),
]


def test_criterion_9_oracle_equivalence():
    t0 = time.perf_counter()
    bad = []
    for topo, rings, floor, n in ORACLE_CASES:
        disk = topo == "disk"
        found = enumerate_critical(SearchSpec(topo, rings, floor, n, induced_ring=disk))
        naive = naive_critical(topo, rings, floor, n, True, disk)
        if not same_classes(_keys(found), [abstract_key(*x) for x in naive]):
            bad.append((topo, rings, n))
    elapsed = time.perf_counter() - t0
    if bad:
        print("mismatches:", bad)
    assert _report(9, f"search equals brute force on {len(ORACLE_CASES)} budgets", not bad, elapsed, None)


def test_criterion_10_concentric_bounds():
    _suites(10, "edge bounds on the 25 cylinder instances", ["concentric"], 120)
