import pytest
from hypothesis import given, settings

from bpr.graph import GraphError, complete_graph
from bpr.io import parse_edgelist, parse_graph, parse_graph6, to_edgelist, to_graph6

from strategies import graphs


def test_k5_graph6_is_standard():
    assert to_graph6(complete_graph(5)) == "D~{"
    assert parse_graph6(">>graph6<<D~{").m == 10


@given(graphs(max_n=12))
@settings(max_examples=80, deadline=None)
def test_graph6_round_trip(g):
    back = parse_graph6(to_graph6(g))
    assert back.n == g.n and back.edges == g.edges


@given(graphs(max_n=12))
@settings(max_examples=80, deadline=None)
def test_edgelist_round_trip(g):
    back = parse_edgelist(to_edgelist(g))
    assert back.n == g.n and back.edges == g.edges


def test_edgelist_comments_and_blank_lines():
    g = parse_edgelist("# a path\n3 2\n\n0 1  # first\n1 2\n")
    assert g.sorted_edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text", ["", "3 2\n0 1\n", "2 1\n0 x\n", "2 1\n0 0\n"])
def test_bad_edgelists(text):
    with pytest.raises(GraphError):
        parse_edgelist(text)


@pytest.mark.parametrize("text", ["", "D~", "G~"])
def test_truncated_graph6(text):
    with pytest.raises(GraphError):
        parse_graph6(text)


def test_format_guess():
    assert parse_graph("D~{").m == 10
    assert parse_graph("2 1\n0 1\n").m == 1
    with pytest.raises(ValueError):
        parse_graph("D~{", "dimacs")
