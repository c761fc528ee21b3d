import pytest
from hypothesis import given
import hypothesis.strategies as st

from bpr.coloring import Color, ColoringConflict, EdgeColoring, extend


def test_first_color_sticks_and_repeats_are_fine():
    c = EdgeColoring()
    assert c.extend((2, 1), "red") is Color.RED
    assert c.extend((1, 2), Color.RED) is Color.RED
    assert c[(1, 2)] is Color.RED


@pytest.mark.parametrize("old", [Color.BLUE, Color.CYAN])
@pytest.mark.parametrize("new", [Color.BLACK, Color.GREY])
def test_blue_and_cyan_survive_black_and_grey(old, new):
    c = EdgeColoring({(0, 1): old})
    assert c.extend((0, 1), new) is old


@pytest.mark.parametrize("old,new", [
    (Color.BLACK, Color.RED),
    (Color.RED, Color.BLACK),
    (Color.ORANGE, Color.CYAN),
    (Color.BLUE, Color.RED),
])
def test_conflicts(old, new):
    c = EdgeColoring({(0, 1): old})
    with pytest.raises(ColoringConflict) as info:
        c.extend((0, 1), new)
    assert info.value.edge == (0, 1)


def test_functional_extend_copies():
    c = EdgeColoring()
    d = extend(c, (0, 1), "black")
    assert (0, 1) not in c and d[(0, 1)] is Color.BLACK


edges = st.tuples(st.integers(0, 20), st.integers(0, 20)).filter(lambda p: p[0] < p[1])


@given(st.dictionaries(edges, st.sampled_from(list(Color))))
def test_json_round_trip(data):
    c = EdgeColoring(data)
    assert EdgeColoring.from_json(c.to_json()) == c
