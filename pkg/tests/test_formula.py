import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fuzzyaba import formula as fm
from fuzzyaba.formula import And, Const, Or, Var
from fuzzyaba.lattice import BOOLEAN, RATIONAL_UNIT, parse_lattice
from fuzzyaba.sampling import FIVE_CHAIN, random_formula
from helpers import subsets

U = RATIONAL_UNIT
PROD = parse_lattice("product:chain:3*chain:3 negation:standard")
THETA1 = "0.5 | (x2 & 0.2 & x3) | (0.8 & x2)"
THETA2 = "0.5 | (((0.3 & x3) | 0.8) & x2)"


def p(text, lat=U):
    return fm.parse(text, lat)


def terms(f, lat=U):
    return {(c, frozenset(vs)) for c, vs in fm.simplest_final_expansion(f, lat)}


def test_parse_shapes():
    assert p("(0.5 & q2) | 0.3") == Or((And((Const(Fr(1, 2)), Var("q2"))), Const(Fr(3, 10))))
    assert p("true") == fm.TRUE
    assert p("a | b & c") == Or((Var("a"), And((Var("b"), Var("c")))))
    assert p("q' & \"pair{U=[q0],V=[]}\"") == And((Var("q'"), Var("pair{U=[q0],V=[]}")))
    assert fm.parse("(0.5,1) & x", PROD) == And((Const((Fr(1, 2), Fr(1))), Var("x")))


@pytest.mark.parametrize("text", ["q1 & (q2 | q3)", "0.3 | (0.5 & q2)", "true", "false",
                                  "q1 & q2 & q3", "\"a b\" | x"])
def test_render_round_trip(text):
    f = p(text)
    assert fm.render(f, U) == fm.render(p(fm.render(f, U)), U)
    assert p(fm.render(f, U)) == fm.canonical(f, U)


def test_render_is_canonical():
    assert fm.render(p("q1 & (q2 | q3)"), U) == "q1 & (q2 | q3)"
    assert fm.render(p("(q3 | q2) & q1"), U) == "q1 & (q2 | q3)"


@pytest.mark.parametrize("text,pos", [("q1 &", 4), ("(q1", 3), ("q1 q2", 3), ("1.5 & q", 0),
                                      ("q1 $ q2", 3)])
def test_syntax_errors_carry_position(text, pos):
    with pytest.raises(fm.FormulaSyntaxError) as info:
        p(text)
    assert info.value.pos == pos


def test_evaluate():
    assert fm.evaluate(p(THETA1), {"x2", "x3"}, U) == Fr(4, 5)
    assert fm.evaluate(fm.TRUE, set(), U) == 1
    assert fm.evaluate(p("q1"), set(), U) == 0
    assert fm.evaluate(fm.FALSE, {"q1"}, U) == 0


def test_standard_form():
    sf = fm.standard_form(p(THETA1), U)
    assert {(c, vs) for c, vs in sf} == {(Fr(1, 2), frozenset()), (Fr(1, 5), frozenset({"x2", "x3"})),
                                         (Fr(4, 5), frozenset({"x2"}))}
    assert len(fm.standard_form(fm.FALSE, U)) == 0
    assert {(c, vs) for c, vs in fm.standard_form(p("(q1 | q2) & q3"), U)} == \
        {(1, frozenset({"q1", "q3"})), (1, frozenset({"q2", "q3"}))}


def test_standard_form_merges_same_varset():
    sf = fm.standard_form(p("(0.3 & q) | (0.6 & q)"), U)
    assert list(sf) == [fm.Term(Fr(3, 5), frozenset({"q"}))]


def test_simplest_final_expansion():
    want = {(Fr(1, 2), frozenset()), (Fr(4, 5), frozenset({"x2"}))}
    assert terms(p(THETA1)) == want
    assert terms(p(THETA2)) == want
    assert terms(p("q1 | (q1 & q2)")) == {(1, frozenset({"q1"}))}


def test_absorption_respects_partial_order():
    # incomparable coefficients on nested varsets both survive
    f = fm.parse("((1,0) & x) | ((0,1) & x & y)", PROD)
    assert len(fm.simplest_final_expansion(f, PROD)) == 2


def test_equivalent_examples():
    assert fm.equivalent(p(THETA1), p(THETA2), U)
    assert fm.equivalent(fm.TRUE, Const(U.top), U)
    assert not fm.equivalent(p("q1"), p("q2"), U)


def test_product_equivalence_needs_enumeration():
    # different irredundant expansions with the same value function
    f = fm.parse("((1,0) & x) | ((0,1) & x) | (0.5,0.5)", PROD)
    g = fm.parse("x | (0.5,0.5)", PROD)
    assert fm.equivalent(f, g, PROD)


def test_minimal_satisfaction_sets():
    assert sorted(fm.minimal_satisfaction_sets(p(THETA1), U), key=lambda t: t[1]) == \
        [(frozenset(), Fr(1, 2)), (frozenset({"x2"}), Fr(4, 5))]
    assert fm.minimal_satisfaction_sets(fm.FALSE, U) == []
    assert fm.minimal_satisfaction_sets(fm.TRUE, U) == [(frozenset(), 1)]
    assert fm.minimal_satisfaction_sets(p("q1 & q2"), U) == [(frozenset({"q1", "q2"}), 1)]


def test_dual_examples():
    assert fm.equivalent(fm.dual(p("(0.5 & q2) | 0.3"), U), p("(0.5 | q2) & 0.7"), U)
    assert fm.equivalent(fm.dual(p("0.6 & q1"), U), p("0.4 | q1"), U)
    assert fm.dual(fm.TRUE, U) == fm.FALSE


def test_release():
    f = fm.release(p("q & r"), 2, lambda q, i: f"{q}{i}")
    assert terms(f) == {(1, frozenset(s)) for s in
                        [{"q1", "r1"}, {"q1", "r2"}, {"q2", "r1"}, {"q2", "r2"}]}


def test_term_cap():
    big = And(tuple(Or((Var(f"a{i}"), Var(f"b{i}"))) for i in range(8)))
    with fm.term_cap(100):
        with pytest.raises(fm.TermCapExceeded):
            fm.standard_form(big, U)
    assert len(fm.standard_form(big, U)) == 256


def test_boolean_specialization():
    f = fm.parse("(q1 | q2) & 1", BOOLEAN)
    assert terms(f, BOOLEAN) == {(1, frozenset({"q1"})), (1, frozenset({"q2"}))}


# --- properties ------------------------------------------------------------------

NAMES = ["x1", "x2", "x3", "x4"]


@st.composite
def formulas(draw, lattice=FIVE_CHAIN):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return random_formula(random.Random(seed), NAMES, lattice, depth=draw(st.integers(0, 4)))


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_normalization_preserves_values(f):
    g = fm.normalize(f, FIVE_CHAIN)
    for y in subsets(NAMES):
        assert fm.evaluate(f, y, FIVE_CHAIN) == fm.evaluate(g, y, FIVE_CHAIN)


@settings(max_examples=150, deadline=None)
@given(formulas())
def test_sfe_is_irredundant(f):
    ts = list(fm.simplest_final_expansion(f, FIVE_CHAIN))
    for t1 in ts:
        assert t1.coefficient != FIVE_CHAIN.bot
        for t2 in ts:
            if t1 != t2:
                assert not (t2.variables <= t1.variables
                            and FIVE_CHAIN.leq(t1.coefficient, t2.coefficient))


@settings(max_examples=100, deadline=None)
@given(formulas(), formulas())
def test_equivalent_matches_enumeration(f, g):
    assert fm.equivalent(f, g, FIVE_CHAIN) == fm.equivalent_by_enumeration(f, g, FIVE_CHAIN)


@settings(max_examples=100, deadline=None)
@given(formulas(PROD))
def test_dual_law_on_products(f):
    d = fm.dual(f, PROD)
    assert fm.dual(d, PROD) == f
    for y in subsets(NAMES):
        assert fm.evaluate(d, y, PROD) == PROD.negate(fm.evaluate(f, set(NAMES) - y, PROD))


@settings(max_examples=100, deadline=None)
@given(formulas())
def test_render_parse_round_trip(f):
    text = fm.render(f, FIVE_CHAIN)
    assert fm.parse(text, FIVE_CHAIN) == fm.canonical(f, FIVE_CHAIN)
