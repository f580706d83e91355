import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import movable_faces, random_moves, random_relabel
from spinecensus.census import SEEDS
from spinecensus.quadgraph import enumerate_quadgraphs
from spinecensus.triangulation import (
    Triangulation,
    TriangulationError,
    from_graph,
    from_signature,
    from_text,
    isomorphism_signature,
    pachner_23,
)

SEED_TRIS = {name: from_signature(sig) for name, sig in SEEDS.items()}


@pytest.mark.parametrize("name", sorted(SEEDS))
def test_seeds_are_closed_one_vertex(name):
    tri = SEED_TRIS[name]
    assert tri.is_candidate_closed()
    assert tri.orientable
    assert len(tri.edge_classes) == tri.n + 1


def test_signature_round_trip(small_closed):
    for tri in small_closed:
        assert from_signature(tri.signature).signature == tri.signature


def test_text_round_trip(small_closed):
    for tri in small_closed:
        again = from_text(tri.to_text())
        assert again == tri


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(0, 3))
def test_signature_is_label_free(r, k):
    tri = r.choice(list(SEED_TRIS.values()))
    tri = random_moves(tri, k, r)
    assert isomorphism_signature(random_relabel(tri, r)) == tri.signature


def test_distinct_signatures_for_distinct_manifolds(small_closed):
    sigs = [t.signature for t in small_closed]
    assert len(set(sigs)) == len(sigs)


def test_pachner_adds_one_tet_and_one_edge(small_closed):
    for tri in small_closed:
        for t, f in movable_faces(tri)[:4]:
            out = pachner_23(tri, t, f)
            assert out.n == tri.n + 1
            assert len(out.edge_classes) == len(tri.edge_classes) + 1
            assert len(out.vertex_classes) == len(tri.vertex_classes)
            assert out.orientable == tri.orientable
            assert out.is_closed_manifold()


def test_pachner_rejects_bad_faces():
    # a lone tet with every face on the boundary
    lone = Triangulation(1, ((None,) * 4,))
    with pytest.raises(TriangulationError):
        pachner_23(lone, 0, 0)
    tri = next(t for t in SEED_TRIS.values() if t.n == 1)
    with pytest.raises(TriangulationError):
        pachner_23(tri, 0, 0)


def test_asymmetric_gluing_rejected():
    ident = (0, 1, 2, 3)
    with pytest.raises(TriangulationError):
        Triangulation(2, (((1, ident), None, None, None), (None, None, None, None)))


def test_face_glued_to_itself_rejected():
    with pytest.raises(TriangulationError):
        Triangulation(1, (((0, (0, 1, 2, 3)), None, None, None),))


def test_bad_text():
    with pytest.raises(TriangulationError):
        from_text("2\n1:0123 - - -\n")


def test_from_graph_follows_edges():
    g = enumerate_quadgraphs(2)[0]
    tri = from_graph(g, [0] * len(g.edges))
    assert tri.closed_faces
    assert tri.n == 2


def test_links_of_seed_sphere():
    (link,) = SEED_TRIS["S3"].links
    assert link.is_sphere and not link.is_torus
