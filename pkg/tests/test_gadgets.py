from itertools import combinations

import pytest

from bpr.coloring import Color, EdgeColoring
from bpr.gadgets import (
    ORDER,
    RICEBALL,
    SC,
    SEP3,
    SEP4,
    KITE,
    all_k4,
    check_sep3,
    check_sepedge,
    classify_mc4,
    components,
    crossable,
    find_k5,
    k5s_touching,
    next_gadget,
    separates,
)
from bpr.generators import gen_k5_star, k2222, octahedron, sc_graph
from bpr.graph import build_graph, complete_graph


def stacked_k4():
    # K4 with a fifth vertex placed in the face 0, 1, 2
    return build_graph(5, list(combinations(range(4), 2)) + [(0, 4), (1, 4), (2, 4)]).adjacency()


def test_separating_triangle():
    adj = stacked_k4()
    assert separates(adj, (0, 1, 2))
    assert sorted(map(sorted, components(adj, (0, 1, 2)))) == [[3], [4]]
    g = check_sep3(adj, EdgeColoring(), (0, 1, 2))
    assert g.kind == SEP3 and g.cycle == (0, 1, 2)
    assert check_sep3(adj, EdgeColoring(), (0, 1, 3)) is None


def test_next_gadget_follows_order():
    assert ORDER[0] == SEP3
    assert next_gadget(stacked_k4(), EdgeColoring()).kind == SEP3
    # the equator of the octahedron separates its poles
    assert next_gadget(octahedron().adjacency(), EdgeColoring()).kind == SEP4
    assert next_gadget(complete_graph(5).adjacency(), EdgeColoring()) is None


def test_crossable_skips_colored_edges():
    adj = complete_graph(5).adjacency()
    assert sorted(crossable(adj, EdgeColoring(), 0, 1)) == [(2, 3), (2, 4), (3, 4)]
    assert sorted(crossable(adj, EdgeColoring({(2, 3): Color.BLACK}), 0, 1)) == [(2, 4), (3, 4)]


def test_no_separating_edge_in_k5():
    adj = complete_graph(5).adjacency()
    assert all(check_sepedge(adj, EdgeColoring(), e) is None for e in combinations(range(5), 2))


def test_tetrahedron_k4_reads_as_riceball():
    adj = k2222().adjacency()
    readings = classify_mc4(adj, EdgeColoring(), all_k4(adj)[0])
    assert readings[0].kind == RICEBALL
    assert len(readings[0].pairs) == 6


def test_sc_center_k4():
    adj = sc_graph().adjacency()
    kinds = [r.kind for r in classify_mc4(adj, EdgeColoring(), (0, 1, 2, 3))]
    assert kinds[0] == SC and set(kinds[1:]) == {KITE}


@pytest.mark.parametrize("k", [2, 3, 5])
def test_every_k5_of_a_star_is_found(k):
    adj = gen_k5_star(k).adjacency()
    assert find_k5(adj) is not None
    assert len(k5s_touching(adj, list(adj))) == k
