import networkx as nx
import pytest
from hypothesis import given, settings

from bpr.coloring import Color, EdgeColoring
from bpr.generators import gen_optimal_1planar, cube, octahedron
from bpr.graph import build_graph, complete_graph
from bpr.oracle import (
    Constraints,
    Embedding,
    EmbeddingRejected,
    census,
    crossing_count,
    enumerate_embeddings,
    has_embedding,
    naive_enumerate,
    small_graph_block,
    small_graph_formula,
    validate_embedding,
)
from bpr.formula import to_sexpr

from strategies import graphs


def test_k5_census():
    assert census(complete_graph(5))["classes"] == 1
    fixed = census(complete_graph(5), Constraints.build(planar=[(0, 1), (1, 2), (0, 2)]))
    assert fixed["classes"] == 3


def test_k4_has_one_embedding_without_kite():
    embs = enumerate_embeddings(complete_graph(4))
    assert [e.crossings for e in embs] == [()]


def test_k7_has_none():
    assert enumerate_embeddings(complete_graph(7)) == []
    assert census(complete_graph(7))["classes"] == 0


def test_crossing_count_from_euler():
    # a triangulated planarization has m + k = 3(n + k) - 6 edges
    assert crossing_count(5, 10) == 1
    assert crossing_count(8, 24) == 6


def test_validate_rejects_edges_sharing_an_endpoint():
    with pytest.raises(EmbeddingRejected):
        validate_embedding(complete_graph(5), [((0, 1), (1, 2))])


def test_validate_respects_constraints():
    k5 = complete_graph(5)
    validate_embedding(k5, [((0, 2), (1, 3))])
    with pytest.raises(EmbeddingRejected):
        validate_embedding(k5, [((0, 2), (1, 3))], EdgeColoring({(0, 2): Color.BLACK}))


def test_ic_and_nic_discipline():
    q3 = gen_optimal_1planar(cube())
    assert has_embedding(q3, None, "1p")
    assert not has_embedding(q3, None, "ic")
    assert not has_embedding(q3, None, "nic")
    assert has_embedding(octahedron(), None, "ic")


def test_embedding_json_round_trip():
    emb = enumerate_embeddings(complete_graph(5))[0]
    back = Embedding.from_json(emb.to_json())
    assert back == emb
    assert {k: tuple(v) for k, v in back.rotation.items()} == dict(emb.rotation)


@given(graphs(min_n=4, max_n=5))
@settings(max_examples=40, deadline=None)
def test_two_enumerators_agree(g):
    for mode in ("1p", "ic", "nic"):
        fast = [e.crossings for e in enumerate_embeddings(g, None, mode)]
        assert fast == naive_enumerate(g, None, mode)


def test_small_block_alternatives_and_exposure():
    block = small_graph_block(complete_graph(5), mode="ic")
    assert block.kind == "small"
    # all five K4s of K5 can be the kite
    assert len(block.alternatives) == 5
    f = small_graph_formula(complete_graph(5), mode="ic", outer=(0, 1, 2))
    assert "3@" not in to_sexpr(f) and "4@" not in to_sexpr(f)


def test_graphs_with_a_quadrangular_face_are_out():
    # two triangles on a common edge leave a four-sided face
    g = build_graph(4, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)])
    assert enumerate_embeddings(g) == []
    h = nx.complete_bipartite_graph(3, 3)
    assert not has_embedding(build_graph(6, h.edges()))


@pytest.mark.parametrize("g", [octahedron(), complete_graph(6)], ids=["octahedron", "k6"])
def test_two_enumerators_agree_on_six_vertices(g):
    for mode in ("1p", "ic", "nic"):
        assert [e.crossings for e in enumerate_embeddings(g, None, mode)] == naive_enumerate(g, None, mode)
