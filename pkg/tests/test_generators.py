import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from bpr.generators import (
    FAMILIES,
    cube,
    cylinder_quadrangulation,
    gen_k5_star,
    gen_kite_augmented_planar,
    gen_optimal_1planar,
    generate,
    kite_covered_tetrahedron,
    octahedron,
    optimal_crossings,
    pseudo_double_wheel,
    quadrangular_faces,
    random_triangulated_1planar,
    random_triangulation,
    sc_graph,
)
from bpr.graph import GraphError, faces, is_k_connected, is_triangulated_planar, planar_rotation
from bpr.oracle import has_embedding
from bpr.recognizer import recognize


def test_optimal_cube():
    g = gen_optimal_1planar(cube())
    assert (g.n, g.m) == (8, 24)
    assert len(optimal_crossings(cube())) == len(quadrangular_faces(cube())) == 6


@pytest.mark.parametrize("k,n", [(4, 10), (5, 12), (8, 18)])
def test_pseudo_double_wheels(k, n):
    q = pseudo_double_wheel(k)
    g = gen_optimal_1planar(q)
    assert g.n == n and g.m == 4 * n - 8
    assert len(quadrangular_faces(q)) == n - 2


def test_cylinder_sizes():
    q = cylinder_quadrangulation(5, 4)
    assert q.n == 20 and q.m == 2 * q.n - 4


def test_triangulated_input_is_not_a_quadrangulation():
    with pytest.raises(GraphError):
        gen_optimal_1planar(octahedron())


@given(st.integers(4, 30), st.integers(0, 1000))
@settings(max_examples=30, deadline=None)
def test_random_triangulations(n, seed):
    g = random_triangulation(n, seed)
    assert is_triangulated_planar(g)
    assert g == random_triangulation(n, seed)


def test_k5_star_shape():
    g = gen_k5_star(3)
    assert g.n == 14
    assert is_k_connected(g, 3)
    with pytest.raises(ValueError):
        gen_k5_star(1)


def test_fixture_sizes():
    assert (kite_covered_tetrahedron().n, kite_covered_tetrahedron().m) == (16, 48)
    refined = kite_covered_tetrahedron(refine=True)
    assert (refined.n, refined.m) == (28, 84)
    sc = sc_graph()
    assert (sc.n, sc.m) == (14, 39)
    assert is_k_connected(sc, 3)


def test_kite_augmented_octahedron_single_slot():
    g = gen_kite_augmented_planar(octahedron(), [sorted(octahedron().edges)[0]], "ic")
    assert g.m == 13
    for mode in ("1p", "ic", "nic"):
        assert has_embedding(g, None, mode)
        assert recognize(g, mode).accepted


def _slot_pairs(base):
    fs = faces(planar_rotation(base))
    for s, t in itertools.combinations(sorted(base.edges), 2):
        kites = []
        for e in (s, t):
            apex = [next(x for x in f if x not in e) for f in fs if set(e) <= set(f)]
            kites.append(set(e) | set(apex))
        yield s, t, len(kites[0] & kites[1])


def _find(shared, want):
    """A small triangulation with two slots whose kites share ``shared``
    vertices and whose oracle verdicts per mode equal ``want``."""
    for n in (7, 8):
        for seed in range(6):
            base = random_triangulation(n, seed)
            for s, t, k in _slot_pairs(base):
                if k != shared:
                    continue
                try:
                    g = gen_kite_augmented_planar(base, [s, t], "1p")
                except GraphError:
                    continue
                got = tuple(has_embedding(g, None, m) for m in ("1p", "ic", "nic"))
                if got == want:
                    return g
    return None


def test_slots_sharing_a_vertex_are_nic_not_ic():
    g = _find(1, (True, False, True))
    assert g is not None
    assert [recognize(g, m).accepted for m in ("1p", "ic", "nic")] == [True, False, True]


def test_slots_sharing_an_edge_are_1p_only():
    g = _find(2, (True, False, False))
    assert g is not None
    assert [recognize(g, m).accepted for m in ("1p", "ic", "nic")] == [True, False, False]


def test_discipline_is_enforced():
    base = random_triangulation(8, 0)
    for s, t, k in _slot_pairs(base):
        if k == 1:
            try:
                gen_kite_augmented_planar(base, [s, t], "1p")
            except GraphError:
                continue
            with pytest.raises(GraphError):
                gen_kite_augmented_planar(base, [s, t], "ic")
            return
    pytest.fail("no vertex-sharing slot pair found")


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_every_family_is_deterministic_and_simple(family):
    g = generate(family)
    assert g == generate(family)
    assert g.m == len(g.edges)


def test_unknown_family():
    with pytest.raises(ValueError):
        generate("petersen")


@given(st.integers(8, 12), st.integers(0, 4), st.integers(0, 999), st.sampled_from(["1p", "ic", "nic"]))
@settings(max_examples=20, deadline=None)
def test_planted_graphs_are_planted_in_the_right_class(n, kites, seed, mode):
    g = random_triangulated_1planar(n, kites, seed, mode)
    if n <= 8:
        assert has_embedding(g, None, mode)
    assert g.m <= 3 * n - 6 + kites
