from itertools import combinations

import hypothesis.strategies as st

from bpr.graph import build_graph


@st.composite
def graphs(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return build_graph(n, chosen)
