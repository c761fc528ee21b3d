from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings

from bpr.graph import (
    GraphError,
    NotPlanarError,
    articulation_points,
    build_graph,
    complete_graph,
    edge,
    enumerate_k4,
    enumerate_k5,
    faces,
    from_adjacency,
    induced_subgraph,
    is_k_connected,
    is_triangulated_planar,
    planar_rotation,
    separation_pairs,
)
from bpr.generators import cube, octahedron

from strategies import graphs


def test_edge_is_canonical():
    assert edge(3, 1) == (1, 3)
    with pytest.raises(GraphError):
        edge(2, 2)


@pytest.mark.parametrize("bad", [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)]])
def test_build_rejects_loops_duplicates_and_unknown_ids(bad):
    with pytest.raises(GraphError):
        build_graph(3, bad)


def test_complete_graph_counts():
    g = complete_graph(6)
    assert (g.n, g.m) == (6, 15)
    assert all(g.degree(v) == 5 for v in g.vertices)


def test_induced_subgraph_keeps_labels():
    g = complete_graph(5)
    sub = induced_subgraph(g, [4, 1, 3])
    assert sub.n == 3 and sub.m == 3
    assert [sub.label(v) for v in sub.vertices] == [1, 3, 4]


def test_from_adjacency_relabels_densely():
    g, ids = from_adjacency({10: {20, 30}, 20: {10}, 30: {10}})
    assert ids == [10, 20, 30]
    assert g.sorted_edges() == [(0, 1), (0, 2)]


def test_k4_enumeration_order_and_count():
    assert enumerate_k4(complete_graph(5)) == sorted(combinations(range(5), 4))
    assert len(enumerate_k4(complete_graph(7))) == 35
    assert enumerate_k4(cube()) == []


@given(graphs(max_n=8))
@settings(max_examples=60, deadline=None)
def test_clique_enumeration_matches_networkx(g):
    h = g.to_networkx()
    want4 = sorted({tuple(sorted(c)) for c in nx.enumerate_all_cliques(h) if len(c) == 4})
    want5 = sorted({tuple(sorted(c)) for c in nx.enumerate_all_cliques(h) if len(c) == 5})
    assert enumerate_k4(g) == want4
    assert sorted(enumerate_k5(g.adjacency())) == want5


@given(graphs(min_n=2, max_n=8))
@settings(max_examples=60, deadline=None)
def test_connectivity_matches_networkx(g):
    h = g.to_networkx()
    assert articulation_points(g.adjacency()) == set(nx.articulation_points(h))
    for k in (1, 2, 3):
        want = g.n > k and nx.is_connected(h) and nx.node_connectivity(h) >= k
        assert is_k_connected(g, k) == want


def test_separation_pairs_of_a_cycle():
    c6 = build_graph(6, [(i, (i + 1) % 6) for i in range(6)])
    assert (0, 3) in separation_pairs(c6.adjacency())
    assert separation_pairs(complete_graph(4).adjacency()) == []


def test_rotation_and_faces_of_octahedron():
    rot = planar_rotation(octahedron())
    fs = faces(rot)
    assert len(fs) == 8 and all(len(f) == 3 for f in fs)
    assert is_triangulated_planar(octahedron())


def test_faces_of_cube_are_quadrangles():
    fs = faces(planar_rotation(cube()))
    assert sorted(len(f) for f in fs) == [4] * 6


def test_nonplanar_rotation_raises():
    with pytest.raises(NotPlanarError):
        planar_rotation(complete_graph(5))
