from itertools import product

import pytest

from girth5.catalog import (
    AbstractGraph, ChainSpec, classify_exceptional, count_triangles, is_broken_chain, make_chain,
    make_exceptional, make_mycielski, narrow_cylinder_instances,
)
from girth5.coloring import chromatic_bound, is_ring_critical, verify_witnesses
from girth5.embedding import EmbeddedGraph, EmbeddingError, RingSpec
from girth5.enumeration import has_triangle
from girth5.planar import embed_plane, is_planar
from girth5.suites import _propagates

MIN_LENGTH = {"E1": 8, "E2": 9, "E3": 11, "E4": 10, "E5": 10}


@pytest.mark.parametrize("k", range(5))
def test_chain_shape(k):
    ch = make_chain(ChainSpec(k))
    A = ch.graph
    assert len(A.vertices) == 4 + 3 * k
    assert len(A.edges) == 6 + 5 * k
    assert count_triangles(A.adj) == 4
    assert is_planar(A.edges, A.vertices)
    assert chromatic_bound(A, 3) is False and chromatic_bound(A, 4) is True


def test_chain_spec_validation():
    with pytest.raises(ValueError):
        ChainSpec(-1)
    with pytest.raises(ValueError):
        ChainSpec(1, "torus")
    with pytest.raises(EmbeddingError):
        make_chain(ChainSpec(1, "broken-cylinder"))


def test_broken_chain_layout(broken2):
    G = broken2.graph
    assert len(G.vertices) == 10 and len(G.edges) == 14
    assert [r.vertices for r in G.rings] == [(0, 2, 1, 3), (7, 4, 8, 9)]
    assert broken2.pair_left == (0, 1) and broken2.pair_right == (4, 9)
    assert sorted(f.length for f in G.internal_faces()) == [5, 5, 5, 5]


def _naive_propagation(G, left, right):
    vs = list(G.vertices)
    edges = G.edge_pairs()
    bad = 0
    for cs in product(range(3), repeat=len(vs)):
        col = dict(zip(vs, cs))
        if all(col[u] != col[v] for u, v in edges):
            if col[left[0]] != col[left[1]] and col[right[0]] == col[right[1]]:
                bad += 1
    return bad


def test_propagation_matches_brute_force(broken2):
    G = broken2.graph
    assert _naive_propagation(G, broken2.pair_left, broken2.pair_right) == 0
    assert _propagates(G, broken2.pair_left, broken2.pair_right)[1] == 0


@pytest.mark.parametrize("k", [2, 3, 4])
def test_propagation(k):
    ch = make_chain(ChainSpec(k, "broken-cylinder"))
    total, bad = _propagates(ch.graph, ch.pair_left, ch.pair_right)
    assert total > 0 and bad == 0


@pytest.mark.parametrize("k", [2, 3])
def test_broken_chain_is_critical(k):
    G = make_chain(ChainSpec(k, "broken-cylinder")).graph
    rep = is_ring_critical(G)
    assert rep.critical and verify_witnesses(G, rep)


def _relabel(G, f):
    rot = {f[v]: [f[G.head(d)] for d in G.rotation[v]] for v in G.vertices}
    rings = [RingSpec.facial(f[v] for v in r.vertices) for r in G.rings]
    return EmbeddedGraph.from_neighbor_rotation(rot, rings=rings)


def test_is_broken_chain(broken2):
    assert is_broken_chain(make_chain(ChainSpec(4, "broken-cylinder")).graph) == (True, 4)
    G = broken2.graph
    assert is_broken_chain(G.replace(rings=list(reversed(G.rings)))) == (True, 2)
    f = {v: 50 - v for v in G.vertices}
    assert is_broken_chain(_relabel(G, f)) == (True, 2)


def test_is_broken_chain_rejects_extra_edge(broken2):
    G = broken2.graph
    edges = [tuple(p) for p in G.edge_pairs()] + [(2, 6)]
    H = embed_plane(edges, rings=[r.vertices for r in G.rings])
    assert H is not None
    assert is_broken_chain(H) == (False, None)


@pytest.mark.parametrize("cls", sorted(MIN_LENGTH))
def test_exceptional_round_trip(cls):
    for l in range(MIN_LENGTH[cls], 15):
        got = classify_exceptional(make_exceptional(cls, l))
        assert got.value == cls
        assert got.very_exceptional == (cls in ("E1", "E2", "E3"))


def test_bare_ring_is_class_zero():
    assert classify_exceptional(make_exceptional("E0", 6)).value == "E0"


@pytest.mark.parametrize("cls, l, att, message", [
    ("E2", 8, None, "mismatch"),
    ("E3", 10, None, "mismatch"),
    ("E2", 9, (0, 2, 5), "face-length"),
    ("E7", 12, None, "unknown"),
])
def test_exceptional_errors(cls, l, att, message):
    with pytest.raises(ValueError, match=message):
        make_exceptional(cls, l, att)


def test_classify_rejects_non_disk(broken2):
    with pytest.raises(EmbeddingError):
        classify_exceptional(broken2.graph)


def test_mycielski():
    M = make_mycielski(5)
    assert len(M.vertices) == 11 and len(M.edges) == 20
    assert not has_triangle(M.adj)
    assert chromatic_bound(M, 3) is False
    assert len(make_mycielski(7).vertices) == 15
    with pytest.raises(ValueError):
        make_mycielski(6)


def test_narrow_instances():
    inst = narrow_cylinder_instances()
    assert len(inst) == 25
    assert len({name for name, _ in inst}) == 25
    for _, G in inst:
        assert G.euler_genus() == 0 and len(G.rings) == 2
        assert all(4 <= r.length <= 7 for r in G.rings)


def test_abstract_graph_adjacency():
    A = AbstractGraph((0, 1, 2), ((0, 1), (1, 2)))
    assert A.adj == {0: {1}, 1: {0, 2}, 2: {1}}
