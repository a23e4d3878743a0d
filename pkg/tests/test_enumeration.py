import pytest

from girth5.canonical import canonical_form
from girth5.catalog import ChainSpec, make_chain
from girth5.coloring import is_ring_critical
from girth5.embedding import EmbeddedGraph, RingSpec
from girth5.enumeration import (
    BudgetExceeded, SearchSpec, SearchStats, enumerate_basic_maps, enumerate_critical,
    maximal_elements,
)
from girth5.properties import check_properties

from conftest import ring_with_centre


def _disk(l, n):
    return enumerate_critical(SearchSpec("disk", (l,), 5, n, induced_ring=True))


@pytest.mark.parametrize("l", [5, 6, 7, 8])
def test_short_disks_have_no_critical_graph(l):
    assert _disk(l, 3) == []


def test_nine_ring_gives_the_claw():
    (G,) = _disk(9, 3)
    assert len(G.internal_vertices) == 1 and len(G.edges) == 12
    assert canonical_form(G) == canonical_form(ring_with_centre(9, [0, 3, 6]))


def test_ten_ring():
    got = _disk(10, 3)
    assert sorted(len(G.internal_vertices) for G in got) == [1, 2]


def _relabel(G, f, mirror=False):
    rot = {}
    for v in G.vertices:
        ns = [f[G.head(d)] for d in G.rotation[v]]
        rot[f[v]] = ns[::-1] if mirror else ns
    rings = []
    for r in G.rings:
        vs = [f[v] for v in r.vertices]
        rings.append(RingSpec.facial(vs[::-1] if mirror else vs))
    return EmbeddedGraph.from_neighbor_rotation(rot, rings=rings)


def test_canonical_form_ignores_labels_and_reflection(broken2):
    G = broken2.graph
    f = {v: 3 * v + 7 for v in G.vertices}
    assert canonical_form(_relabel(G, f)) == canonical_form(G)
    assert canonical_form(_relabel(G, f, mirror=True)) == canonical_form(G)


def test_canonical_form_separates(broken2, broken3):
    assert canonical_form(broken2.graph) != canonical_form(broken3.graph)
    # gaps 3,3,4 around C10 in every rotation of the attachment
    assert canonical_form(ring_with_centre(10, [0, 3, 6])) == canonical_form(ring_with_centre(10, [0, 4, 7]))
    assert canonical_form(ring_with_centre(12, [0, 4, 8])) != canonical_form(ring_with_centre(12, [0, 3, 7]))


def test_ordered_rings_distinguish_swaps():
    G = make_chain(ChainSpec(3, "broken-cylinder")).graph
    swapped = G.replace(rings=list(reversed(G.rings)))
    assert canonical_form(swapped) == canonical_form(G)
    assert canonical_form(swapped, ordered_rings=True) == canonical_form(G, ordered_rings=True)


@pytest.mark.parametrize("kwargs", [
    dict(topology="torus", ring_lengths=(5,)),
    dict(topology="disk", ring_lengths=(5, 5)),
    dict(topology="cylinder", ring_lengths=(5,)),
    dict(topology="disk", ring_lengths=(5,), free_cuff=True),
    dict(topology="disk", ring_lengths=(2,)),
    dict(topology="disk", ring_lengths=(5,), max_internal_vertices=-1),
])
def test_search_spec_validation(kwargs):
    with pytest.raises(ValueError):
        SearchSpec(**kwargs)


def test_budget_is_explicit():
    with pytest.raises(BudgetExceeded):
        SearchSpec("disk", (5,), max_internal_vertices=13)
    with pytest.raises(BudgetExceeded):
        SearchSpec("disk", (13,))


@pytest.fixture(scope="module")
def cyl33():
    stats = SearchStats()
    out = enumerate_critical(SearchSpec("cylinder", (3, 3), 3, 3), stats)
    return out, stats


def test_cylinder_outputs_are_critical_and_unique(cyl33):
    out, stats = cyl33
    assert out and stats.critical >= len(out)
    keys = [canonical_form(G) for G in out]
    assert len(set(keys)) == len(keys) == len(out)
    for G in out:
        assert G.euler_genus() == 0 and len(G.rings) == 2
        assert is_ring_critical(G).critical


def test_disk_outputs_satisfy_basic_invariants():
    for l in (9, 10):
        for G in _disk(l, 3):
            rep = check_properties(G)
            assert rep["I0"] and rep["I1"] and rep["I2"]
            assert is_ring_critical(G).critical


def test_deterministic(cyl33):
    again = enumerate_critical(SearchSpec("cylinder", (3, 3), 3, 3))
    assert [canonical_form(G) for G in again] == [canonical_form(G) for G in cyl33[0]]


def test_worker_count_does_not_change_output(monkeypatch):
    spec = SearchSpec("cylinder", (3, 4), 3, 2)
    monkeypatch.setenv("GIRTH5_THREADS", "1")
    one = [canonical_form(G) for G in enumerate_critical(spec)]
    monkeypatch.setenv("GIRTH5_THREADS", "2")
    two = [canonical_form(G) for G in enumerate_critical(spec)]
    assert one == two


@pytest.fixture(scope="module")
def basic():
    return enumerate_basic_maps()


def test_basic_maximal_count(basic):
    good = [b.graph for b in basic if b.triangle_free and b.two_connected]
    assert len(maximal_elements(good)) == 5


def test_triangles_enlarge_basic_list(basic):
    free = enumerate_basic_maps(allow_triangles=False)
    assert len(basic) > len(free)
