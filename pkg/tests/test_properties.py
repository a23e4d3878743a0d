import pytest

from girth5.catalog import ChainSpec, make_chain, narrow_cylinder_instances
from girth5.embedding import EmbeddingError
from girth5.planar import embed_plane
from girth5.properties import (
    check_properties, edges_of, girth, incomparable_edges, is_bound_to, is_well_behaved,
    noncontractible_cycles, planechar_case, short_cycle_queries, simple_cycles,
)
from girth5.topology import cycle_class

from conftest import cycle, ring_with_centre


def test_broken_chain_properties(broken2):
    rep = check_properties(broken2.graph)
    assert rep["I0"] and rep["I3"] and rep["I8"]


def test_adjacent_degree_two_breaks_i5():
    G = embed_plane(cycle(5) + [(0, 5), (5, 6), (6, 2)], rings=[tuple(range(5))])
    assert check_properties(G)["I5"] is False


def test_nine_ring_with_centre_satisfies_i9():
    G = ring_with_centre(9, [0, 3, 6])
    assert check_properties(G)["I9"] is True


def test_chord_splits_and_i9():
    # a chord cutting C9 into a 5-face and a 6-face is the allowed two-face case
    one = embed_plane(cycle(9) + [(0, 4)], rings=[tuple(range(9))])
    assert check_properties(one)["I9"] is True
    # two chords leave faces 5, 3, 5: not an allowed disk
    two = embed_plane(cycle(9) + [(0, 4), (0, 5)], rings=[tuple(range(9))])
    assert check_properties(two)["I9"] is False


def test_simple_cycles_and_girth():
    adj = {i: {(i - 1) % 6, (i + 1) % 6} for i in range(6)}
    assert list(simple_cycles(adj)) == [(0, 1, 2, 3, 4, 5)]
    assert girth(adj) == 6
    adj[0].add(3)
    adj[3].add(0)
    assert girth(adj) == 4
    assert len(list(simple_cycles(adj))) == 3


def test_single_surrounding_cycle_gives_no_incomparable_edges():
    G = dict(narrow_cylinder_instances())["single-edge-5-5"]
    assert incomparable_edges(G, 0, G.rings[0].vertices) == set()


def test_k0_must_surround(broken2):
    G = broken2.graph
    face = next(f for f in G.internal_faces() if f.length == 5)
    with pytest.raises(EmbeddingError):
        incomparable_edges(G, 0, face.walks[0].vertices)


def test_four_cycle_edges_of_broken_chain(broken2):
    G = broken2.graph
    fours = [c for c in simple_cycles(G.adj, 4)]
    assert all(cycle_class(G, c).topology != "contractible" for c in fours)
    got = edges_of(G, noncontractible_cycles(G, 4))
    by_hand = set()
    for c in fours:
        for i in range(len(c)):
            by_hand.add(frozenset((c[i], c[(i + 1) % len(c)])))
    assert len(got) == len(by_hand) == 4 * len(fours)
    assert short_cycle_queries(G, 0, 4)["noncontractible"] == got


def test_triangle_bound_to_six_ring():
    # ring 0..5, triangle 6-7-8 with 6-0 and 7-2 where 0 and 2 are not adjacent
    edges = cycle(6) + [(6, 7), (7, 8), (8, 6), (6, 0), (7, 2)]
    G = embed_plane(edges, rings=[tuple(range(6))])
    assert len(G.vertices) == 9
    assert is_bound_to(G, (6, 7, 8), 0)
    # with adjacent ring neighbours the second clause does not fire
    H = embed_plane(cycle(6) + [(6, 7), (7, 8), (8, 6), (6, 0), (7, 1)], rings=[tuple(range(6))])
    assert not is_bound_to(H, (6, 7, 8), 0)


def test_planechar_shapes():
    assert planechar_case(ring_with_centre(9, [0, 3, 6])) == "a"
    assert planechar_case(ring_with_centre(10, [0, 3, 6])) == "a"
    assert planechar_case(embed_plane(cycle(7), rings=[tuple(range(7))])) is None


def test_well_behaved_on_bare_ring():
    assert is_well_behaved(embed_plane(cycle(7), rings=[tuple(range(7))]))
