from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from girth5.catalog import make_exceptional
from girth5.embedding import EmbeddedGraph, FaceRecord, RingSpec
from girth5.weights import (
    EPS, NEG_INF, CylTable, SurfParams, build_cyl_table, check_s_properties, check_surfineq,
    elasticity, eta_value, face_weight, gen, gen_surf, graph_weight, load_golden_cyl,
    load_golden_eta, omnipresent_contribution, s_value, surf, verify_cyl_table,
)



def test_epsilon():
    assert EPS == Fraction(2, 4113)


@pytest.mark.parametrize("l, v", [(5, Fraction(4, 4113)), (9, Fraction(1)), (8, Fraction(2184, 4113)),
                                  (6, Fraction(72, 4113)), (7, Fraction(540, 4113)), (30, Fraction(22))])
def test_s_values(l, v):
    assert s_value(l) == v


def test_s_undefined_below_five():
    with pytest.raises(ValueError):
        s_value(4)


def _face(length, open_2cell):
    return FaceRecord(0, (), length, open_2cell, open_2cell, False)


def test_face_weights():
    assert face_weight(_face(5, True)) == Fraction(4, 4113)
    assert face_weight(_face(7, False)) == 7
    assert face_weight(_face(4, True)) == 4
    assert graph_weight(make_exceptional("E1", 8)) == Fraction(8, 4113)


def test_graph_weight_matches_face_sum():
    G = make_exceptional("E4", 12)
    assert graph_weight(G) == sum(face_weight(f) for f in G.faces if not f.is_ring_face)


def test_elasticity():
    assert elasticity(9, [9]) == 0
    # a path of length 3 splitting a 9-face: sides of lengths 3+a and 3+b with a+b = 9
    assert elasticity(9, [3 + 4, 3 + 5]) == 6


def test_gen_surf_values():
    assert surf(0, 2, 0, 2) == 0
    assert surf(0, 2, 0, 1) == 2
    assert gen(1, 1, 0, 0) == 48
    assert gen_surf(SurfParams(1, 1, 0, 0))[0] == 48
    with pytest.raises(ValueError):
        SurfParams(0, 1, 1, 1)


def test_surface_inequality_grid():
    rep = check_surfineq()
    assert rep["failures"] == []
    assert all(n > 0 for n in rep["checked"].values())


def test_surface_inequality_negative_control():
    rep = check_surfineq(drop_hypothesis_a=True)
    assert any(f["clause"] == "a" for f in rep["failures"])


def test_surface_inequality_clause_d():
    assert surf(0, 0) <= surf(2, 0) - 124


def test_s_properties_and_negative_control():
    assert check_s_properties(200)["failures"] == []
    x, y = 5, 5
    assert s_value(x) + s_value(y) <= s_value(10) <= s_value(x) + y
    assert s_value(8) + s_value(9) <= s_value(17) <= s_value(8) + 9
    bent = lambda l: Fraction(1, 4113) if l == 7 else s_value(l)
    assert check_s_properties(40, bent)["failures"]


@pytest.fixture(scope="module")
def table():
    return build_cyl_table(12)


def test_cyl_table(table):
    assert table(0, 0) == 0
    assert table(4, 4) >= 886
    assert all(r["ok"] for r in verify_cyl_table(table))
    assert table.grid == load_golden_cyl().grid


def test_cyl_frozen_values(table):
    assert table(4, 4) == 1819
    assert eta_value(table) == load_golden_eta() == Fraction(2355777785104411011, 4)


def test_cyl_symmetric_monotone(table):
    n = table.xmax
    for x in range(n + 1):
        for y in range(n + 1):
            assert table(x, y) == table(y, x)
            if y < n:
                assert table(x, y) <= table(x, y + 1)


def test_cyl_json_round_trip(table):
    assert CylTable.from_json(table.to_json()).grid == table.grid


def test_cyl_needs_room():
    with pytest.raises(ValueError):
        build_cyl_table(6)


def test_eta_degenerate(table):
    grid = [row[:] for row in table.grid]
    grid[7][7] = Fraction(0)
    assert eta_value(CylTable(grid)) == 1867
    assert eta_value(table) > 0


# -- omnipresent faces -------------------------------------------------------------------------


def _neighbor_rotation(G, shift=0):
    return {v + shift: [G.head(d) + shift for d in G.rotation[v]] for v in G.vertices}


def _joined(parts):
    """Disjoint union of disk graphs (or bare vertex rings) with one internal face of each
    merged into a single face."""
    rot, rings, corners = {}, [], []
    for i, P in enumerate(parts):
        shift = 100 * i
        if isinstance(P, int):
            rot[shift] = []
            rings.append(RingSpec.vertex(shift))
            corners.append(shift)
            continue
        rot.update(_neighbor_rotation(P, shift))
        rings.append(RingSpec.facial(v + shift for v in P.rings[0].vertices))
        # a walk traced with forward flags lists its vertices in rotation order
        f = next(f for f in P.internal_faces() if f.walks[0].flags[0][1] == 1)
        a, b = f.walks[0].vertices[:2]
        corners.append((b + shift, a + shift))
    G = EmbeddedGraph.from_neighbor_rotation(rot, rings=rings, joins=[corners])
    face = next(f for f in G.faces if len(f.walks) == len(parts))
    assert not face.is_ring_face
    return G, face


def test_contribution_two_nontrivial_components():
    G, f = _joined([make_exceptional("E1", 8), make_exceptional("E2", 9)])
    assert omnipresent_contribution(G, f, Fraction(0)) == 1


def test_contribution_e1_is_minus_infinity():
    G, f = _joined([make_exceptional("E1", 8), 0])
    assert omnipresent_contribution(G, f, Fraction(0)) is NEG_INF


def test_contribution_e4():
    G, f = _joined([make_exceptional("E4", 10), 0])
    assert omnipresent_contribution(G, f, Fraction(2)) == 5 - 2 - Fraction(20, 4113)


def test_contribution_requires_omnipresent():
    G = make_exceptional("E2", 9)
    with pytest.raises(ValueError):
        omnipresent_contribution(G, G.internal_faces()[0], Fraction(0))


def test_neg_inf_orders_below_numbers():
    assert NEG_INF < Fraction(-10 ** 9) and not NEG_INF > 0
    assert NEG_INF.to_json() == {"tag": "neg_inf"}


@given(st.integers(5, 60), st.integers(5, 60))
def test_s_additivity(x, y):
    assert s_value(x) + s_value(y) <= s_value(x + y) <= s_value(x) + y


@given(st.integers(0, 6), st.integers(0, 8), st.data())
def test_surf_vs_gen(g, t, data):
    t0 = data.draw(st.integers(0, t))
    t1 = data.draw(st.integers(0, t - t0))
    if g > 0 or t > 3:
        assert surf(g, t, t0, t1) == gen(g, t, t0, t1)
    if g == 0 and t == 2:
        assert surf(g, t, t0, t1) <= gen(g, t, t0, t1) + 32
