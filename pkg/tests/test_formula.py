import hypothesis.strategies as st
import pytest
from hypothesis import given, settings

from bpr.formula import (
    FALSE,
    TRUE,
    And,
    Block,
    BlockSolver,
    Certificate,
    ThirdOccurrence,
    Lit,
    NotTwoCNF,
    Or,
    Var,
    brute_force_satisfiable,
    conj,
    disj,
    eta_star,
    evaluate,
    extension,
    from_json,
    ic_satisfiable,
    make_alpha,
    make_kite,
    make_sigma,
    minimal_transversals,
    nic_satisfiable,
    select_kites,
    small_block_is_2cnf,
    solve_2sat,
    to_json,
    to_sexpr,
)


def v(name, k=1):
    return Var(name, k)


def test_conj_and_disj_simplify():
    a, b = Lit(v("a")), Lit(v("b"))
    assert conj() == TRUE and disj() == FALSE
    assert conj(a, TRUE, a) == a
    assert conj(a, FALSE) == FALSE
    assert disj(a, TRUE) == TRUE
    assert conj(conj(a, b), a) == And((a, b))


def test_kite_entities():
    k = make_kite((0, 2), (1, 3), 7)
    assert k.vertices == (0, 1, 2, 3)
    assert k.planar_edges == ((0, 1), (0, 3), (1, 2), (2, 3))
    assert to_sexpr(make_alpha(k, "ic")) == "(and 0@7 1@7 2@7 3@7)"
    with pytest.raises(ValueError):
        make_kite((0, 1), (1, 2), 1)


def test_sigma_factored_form():
    ks = [make_kite((0, 1), (2, 3), 4), make_kite((0, 1), (5, 6), 4)]
    f = make_sigma(0, 1, ks, "ic", factored=True)
    assert to_sexpr(f) == "(and 0@4 1@4 (or (and 2@4 3@4) (and 5@4 6@4)))"
    with pytest.raises(ValueError):
        make_sigma(0, 1, [], "ic")


def test_extension_adds_one_clause_per_shared_entity():
    k1 = make_kite((0, 2), (1, 3), 1)
    k2 = make_kite((3, 5), (4, 6), 2)
    f = extension(conj(make_alpha(k1, "ic"), make_alpha(k2, "ic")))
    # vertex 3 is shared, so the IC extension is unsatisfiable
    assert not brute_force_satisfiable(f)
    assert to_sexpr(f).endswith("(or (not 3@1) (not 3@2)))")


lits = st.builds(Lit, st.builds(Var, st.integers(0, 5), st.just(0)), st.booleans())
clauses = st.lists(st.lists(lits, min_size=1, max_size=2), max_size=14)


@given(clauses)
@settings(max_examples=200, deadline=None)
def test_2sat_agrees_with_truth_table(cs):
    f = conj(*(disj(*c) for c in cs))
    ok, assignment = solve_2sat(cs)
    assert ok == brute_force_satisfiable(f)
    if ok:
        full = {x: assignment.get(x, False) for c in cs for lit in c for x in [lit.var]}
        assert all(any(full[lit.var] == lit.positive for lit in c) for c in cs)


def test_2sat_rejects_wide_clauses():
    with pytest.raises(NotTwoCNF):
        solve_2sat([[Lit(v(1)), Lit(v(2)), Lit(v(3))]])


formulas = st.recursive(
    lits | st.sampled_from([TRUE, FALSE]),
    lambda kids: st.builds(lambda xs: And(tuple(xs)), st.lists(kids, min_size=2, max_size=3))
    | st.builds(lambda xs: Or(tuple(xs)), st.lists(kids, min_size=2, max_size=3)),
    max_leaves=10,
)


@given(formulas)
def test_json_round_trip(f):
    assert from_json(to_json(f)) == f


@given(formulas, st.dictionaries(st.builds(Var, st.integers(0, 5), st.just(0)), st.booleans()))
def test_conj_disj_preserve_meaning(f, assignment):
    g = Lit(v(0, 0))
    assert evaluate(conj(f, g), assignment) == (evaluate(f, assignment) and evaluate(g, assignment))
    assert evaluate(disj(f, g), assignment) == (evaluate(f, assignment) or evaluate(g, assignment))


def test_minimal_transversals():
    ts = minimal_transversals([{1, 2}, {2, 3}])
    assert sorted(map(sorted, ts)) == [[1, 3], [2]]


def test_small_block_2cnf_check():
    ks = [make_kite((0, 2), (1, 3), 1), make_kite((4, 6), (5, 7), 2)]
    # two alternatives on disjoint vertex sets: transversals have size 2
    assert small_block_is_2cnf(Block("small", [(ks[0],), (ks[1],)]))
    k3 = make_kite((8, 10), (9, 11), 3)
    three = Block("small", [(ks[0],), (ks[1],), (k3,)])
    assert not small_block_is_2cnf(three)


def _cert(mode, *alts):
    c = Certificate(mode)
    for a in alts:
        c.add(Block("sigma", [tuple(x) for x in a]))
    return c


def test_ic_satisfiability_of_certificates():
    k1 = make_kite((0, 2), (1, 3), 1)
    k2 = make_kite((3, 5), (4, 6), 2)
    k3 = make_kite((7, 9), (8, 10), 3)
    assert not ic_satisfiable(_cert("ic", [[k1]], [[k2]]))
    assert ic_satisfiable(_cert("ic", [[k1]], [[k2], [k3]]))


def test_nic_rewrite_and_third_occurrence_guard():
    k1 = make_kite((0, 2), (1, 3), 1)
    # both kites have the planar edge (0, 1)
    k2 = make_kite((0, 4), (1, 5), 2)
    assert not nic_satisfiable(_cert("nic", [[k1]], [[k2]]))
    assert nic_satisfiable(_cert("nic", [[k1]], [[k2], [make_kite((6, 8), (7, 9), 3)]]))
    third = make_kite((0, 6), (1, 7), 4)
    with pytest.raises(ThirdOccurrence):
        eta_star(_cert("nic", [[k1]], [[k2]], [[third]]))


def test_block_solver_picks_compatible_alternatives():
    solver = BlockSolver([[frozenset({1}), frozenset({2})], [frozenset({1})]])
    ok, choice = solver.solve()
    assert ok and choice == [1, 0]
    ok, _ = BlockSolver([[frozenset({1})], [frozenset({1})]]).solve()
    assert not ok


def test_select_kites_respects_mode():
    k1 = make_kite((0, 2), (1, 3), 1)
    k2 = make_kite((3, 5), (4, 6), 2)
    blocks = [Block("alpha", [(k1,)]), Block("alpha", [(k2,)])]
    assert select_kites(blocks, "1p") == [0, 0]
    assert select_kites(blocks, "nic") == [0, 0]
    assert select_kites(blocks, "ic") is None
