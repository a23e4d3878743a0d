import pytest
from hypothesis import HealthCheck, settings

from girth5.catalog import ChainSpec, make_chain
from girth5.embedding import parse_document
from girth5.planar import embed_plane

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


K4_DOC = """\
# tetrahedron
vertex 0
vertex 1
vertex 2
vertex 3
edge 0 0 1
edge 1 0 2
edge 2 0 3
edge 3 1 2
edge 4 1 3
edge 5 2 3
rot 0: 0.0 1.0 2.0
rot 1: 0.1 4.0 3.0
rot 2: 1.1 3.1 5.0
rot 3: 2.1 5.1 4.1
"""


def cycle(n, start=0):
    return [(start + i, start + (i + 1) % n) for i in range(n)]


def ring_with_centre(l, attach):
    """Disk graph: ring 0..l-1 plus a centre vertex l joined to ``attach``."""
    edges = cycle(l) + [(l, a) for a in attach]
    return embed_plane(edges, rings=[tuple(range(l))])


@pytest.fixture
def k4():
    return parse_document(K4_DOC)


@pytest.fixture(scope="session")
def broken2():
    return make_chain(ChainSpec(2, "broken-cylinder"))


@pytest.fixture(scope="session")
def broken3():
    return make_chain(ChainSpec(3, "broken-cylinder"))
