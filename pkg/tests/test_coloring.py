import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from girth5.catalog import AbstractGraph, ChainSpec, make_chain, make_mycielski
from girth5.coloring import (
    ColoringError, basic_claim_checks, chromatic_bound, colorings_of, extends, four_cycle_type,
    is_phi_critical, is_ring_critical, phi_critical_subgraph, precolorings, subsumes,
    verify_witnesses,
)
from girth5.embedding import EmbeddedGraph, RingSpec
from girth5.planar import embed_plane
from girth5.topology import restrict

from conftest import cycle, ring_with_centre


def _naive_extends(vertices, edges, phi):
    free = [v for v in vertices if v not in phi]
    for cs in product(range(3), repeat=len(free)):
        col = dict(phi)
        col.update(zip(free, cs))
        if all(col[u] != col[v] for u, v in edges):
            return True
    return False


def test_c5_ring_extends_to_itself():
    G = embed_plane(cycle(5), rings=[tuple(range(5))])
    phi = {0: 0, 1: 1, 2: 0, 3: 1, 4: 2}
    assert extends(G, phi) == phi


def test_k4_with_triangle_ring_never_extends(k4):
    G = embed_plane([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], rings=[(0, 1, 2)])
    for phi in precolorings(G):
        assert extends(G, phi) is None


def test_weak_vertex_ring_avoids_its_color():
    G = EmbeddedGraph.from_neighbor_rotation({0: [1], 1: [0]}, rings=[RingSpec.vertex(0, True, 1)])
    psi = extends(G, {0: 0})
    assert psi[0] in (1, 2) and psi[1] != psi[0]
    strong = EmbeddedGraph.from_neighbor_rotation({0: [1], 1: [0]}, rings=[RingSpec.vertex(0, False, 1)])
    assert extends(strong, {0: 0})[0] == 0


def test_improper_precoloring_rejected():
    G = embed_plane(cycle(5), rings=[tuple(range(5))])
    with pytest.raises(ColoringError):
        extends(G, {0: 0, 1: 0, 2: 1, 3: 0, 4: 1})


@pytest.fixture(scope="module")
def six_ring_two_chords():
    return embed_plane(cycle(6) + [(0, 2), (3, 5)], rings=[tuple(range(6))])


def test_six_ring_with_two_chords(six_ring_two_chords):
    G = six_ring_two_chords
    phis = list(precolorings(G))
    assert len(phis) == 66
    rep = is_ring_critical(G)
    assert rep.critical and verify_witnesses(G, rep)
    assert not any(is_phi_critical(G, phi) for phi in phis)


def test_rings_only_is_not_critical():
    G = embed_plane(cycle(5), rings=[tuple(range(5))])
    assert not is_ring_critical(G)


def test_two_triangles_and_an_edge():
    G = embed_plane(cycle(3) + cycle(3, 3) + [(0, 3)], rings=[(0, 1, 2), (3, 4, 5)])
    rep = is_ring_critical(G)
    assert rep.critical and verify_witnesses(G, rep)


def _grotzsch_with_ring():
    A = make_mycielski(5)
    rot = {}
    for v in A.vertices:
        ns = sorted(A.adj[v])
        if v < 5:
            # ring vertices: predecessor then successor, so the 5-cycle is traced as a face
            first = [(v - 1) % 5, (v + 1) % 5]
            ns = first + [w for w in ns if w not in first]
        rot[v] = ns
    return EmbeddedGraph.from_neighbor_rotation(rot, rings=[RingSpec.facial(range(5))])


def test_phi_critical_matches_brute_force_on_grotzsch():
    G = _grotzsch_with_ring()
    edges = G.edge_pairs()
    ring = set(G.ring_edges)
    for phi in precolorings(G, canonical=True):
        expect = not _naive_extends(G.vertices, edges, phi) and all(
            _naive_extends(G.vertices, [G.edges[x] for x in G.edges if x != e], phi)
            for e in G.edges if e not in ring)
        assert is_phi_critical(G, phi) == expect


def test_subsumption(broken2):
    G = broken2.graph
    assert subsumes(G, G)
    bare = restrict(G, G.ring_vertices, G.ring_edges)
    assert not subsumes(bare, G)
    assert subsumes(G, bare)


def test_subsumption_ring_mismatch(broken2, broken3):
    with pytest.raises(ColoringError):
        subsumes(broken2.graph, broken3.graph)


@pytest.mark.parametrize("lam, expect", [
    ((0, 1, 0, 1), frozenset()),
    ((0, 1, 2, 1), frozenset({1, 3})),
    ((0, 1, 0, 2), frozenset({2, 4})),
])
def test_four_cycle_type(lam, expect):
    C = (10, 11, 12, 13)
    assert four_cycle_type(dict(zip(C, lam)), C).value == expect


def test_four_cycle_type_needs_all_vertices():
    with pytest.raises(ColoringError):
        four_cycle_type({0: 0, 1: 1}, (0, 1, 2, 3))


def test_chromatic_bounds():
    for k in range(5):
        assert chromatic_bound(make_chain(ChainSpec(k)).graph, 3) is False
    c5 = AbstractGraph(tuple(range(5)), tuple(cycle(5)))
    assert chromatic_bound(c5, 3) is True
    assert chromatic_bound(make_mycielski(5), 3) is False
    assert chromatic_bound(make_mycielski(5), 4) is True
    big = AbstractGraph(tuple(range(65)), ())
    with pytest.raises(ColoringError):
        chromatic_bound(big, 3)


def test_claims_on_rings_only():
    G = embed_plane(cycle(4) + cycle(4, 4), rings=[(0, 1, 2, 3), (4, 5, 6, 7)])
    rep = basic_claim_checks(G)
    assert rep.basicsim and rep.twoone and not rep.critical_input


def test_claims_need_two_short_rings():
    G = embed_plane(cycle(5), rings=[tuple(range(5))])
    with pytest.raises(ColoringError):
        basic_claim_checks(G)


# -- invariants ----------------------------------------------------------------------------


def _random_disk(seed):
    rng = random.Random(seed)
    l = rng.choice([5, 6, 7])
    attach = sorted(rng.sample(range(l), 3))
    return ring_with_centre(l, attach)


@given(st.integers(0, 10 ** 6))
def test_monotone_under_edge_deletion(seed):
    G = _random_disk(seed)
    rng = random.Random(seed)
    free = [e for e in G.edges if e not in G.ring_edges]
    drop = rng.sample(free, rng.randint(0, len(free)))
    H = restrict(G, G.vertices, [e for e in G.edges if e not in drop], validate=False)
    for phi in precolorings(G):
        if extends(G, phi) is not None:
            assert extends(H, phi) is not None


@given(st.integers(0, 10 ** 6))
def test_witnesses_recheck(seed):
    G = _random_disk(seed)
    rep = is_ring_critical(G, stop_early=False)
    if rep.critical:
        assert verify_witnesses(G, rep)


@given(st.integers(0, 10 ** 6))
def test_greedy_phi_critical_subgraph(seed):
    G = _random_disk(seed)
    for phi in precolorings(G, canonical=True):
        keep = phi_critical_subgraph(G, phi)
        if keep is None:
            assert extends(G, phi) is not None
            continue
        H = restrict(G, G.vertices, keep, validate=False)
        assert extends(H, phi) is None
        for e in keep:
            if e in G.ring_edges:
                continue
            pairs = [G.edges[x] for x in keep if x != e]
            assert _naive_extends(G.vertices, pairs, phi)


@given(st.integers(0, 10 ** 6))
def test_subsumes_reflexive_transitive(seed):
    G = _random_disk(seed)
    rng = random.Random(seed)
    free = [e for e in G.edges if e not in G.ring_edges]
    a = set(rng.sample(free, rng.randint(0, len(free))))
    b = a | set(rng.sample(free, rng.randint(0, len(free))))
    H1 = restrict(G, G.vertices, [e for e in G.edges if e not in b], validate=False)
    H2 = restrict(G, G.vertices, [e for e in G.edges if e not in a], validate=False)
    assert subsumes(G, G)
    # removing edges only adds extendable precolorings: G => H2 => H1
    assert subsumes(G, H2) and subsumes(H2, H1) and subsumes(G, H1)


@given(st.tuples(*[st.integers(0, 2)] * 4), st.permutations([0, 1, 2]))
def test_four_cycle_type_color_invariant(lam, perm):
    C = (0, 1, 2, 3)
    col = dict(zip(C, lam))
    if any(col[C[i]] == col[C[(i + 1) % 4]] for i in range(4)):
        return
    moved = {v: perm[c] for v, c in col.items()}
    assert four_cycle_type(col, C) == four_cycle_type(moved, C)


def test_colorings_of_counts():
    # proper 3-colorings of C_n number 2^n + 2(-1)^n
    for n in range(3, 8):
        assert len(list(colorings_of(list(range(n)), cycle(n)))) == 2 ** n + 2 * (-1) ** n
