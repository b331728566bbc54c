from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzyaba.lattice import (BOOLEAN, RATIONAL_UNIT, Chain, LatticeError, NegationUnavailable,
                              Product, finite_sublattice_closure, join_irreducibles,
                              parse_lattice)

UNIT2 = Product((RATIONAL_UNIT, RATIONAL_UNIT), True)
unit = st.fractions(min_value=0, max_value=1, max_denominator=20)
pairs = st.tuples(unit, unit)


def test_basic_operations():
    lat = RATIONAL_UNIT
    assert lat.join(Fr(1, 2), Fr(3, 10)) == Fr(1, 2)
    assert lat.negate(Fr(3, 10)) == Fr(7, 10)
    assert lat.meet(Fr(2, 5), lat.top) == Fr(2, 5)
    assert lat.meet(Fr(3, 5), Fr(7, 10)) == Fr(3, 5)


def test_negation_unavailable():
    with pytest.raises(NegationUnavailable):
        Chain(None, False).negate(Fr(1, 2))


def test_parse_values_exactly():
    assert RATIONAL_UNIT.parse_value("0.3") == Fr(3, 10)
    assert RATIONAL_UNIT.parse_value("3/10") == Fr(3, 10)
    assert UNIT2.parse_value("(0.3,0.5)") == (Fr(3, 10), Fr(1, 2))
    with pytest.raises(LatticeError):
        RATIONAL_UNIT.parse_value("1.5")
    with pytest.raises(LatticeError):
        Chain(5, True).parse_value("0.3")


def test_describe():
    assert RATIONAL_UNIT.describe(Fr(3, 10)) == "3/10 (0.3)"
    assert RATIONAL_UNIT.describe(Fr(1, 3)) == "1/3"
    assert RATIONAL_UNIT.describe(Fr(0)) == "0"


@pytest.mark.parametrize("text", ["rational-unit", "chain:4 negation:standard", "boolean",
                                  "product:rational-unit*chain:3 negation:standard"])
def test_spec_round_trip(text):
    assert parse_lattice(text).spec() == text


@pytest.mark.parametrize("text", ["", "chain:x", "rational-unit negation:weird", "interval"])
def test_bad_spec(text):
    with pytest.raises(LatticeError):
        parse_lattice(text)


def test_product_is_partial():
    a, b = (Fr(1), Fr(0)), (Fr(0), Fr(1))
    assert not UNIT2.leq(a, b) and not UNIT2.leq(b, a)
    assert UNIT2.join(a, b) == UNIT2.top
    assert UNIT2.negate((Fr(1, 5), Fr(1))) == (Fr(4, 5), Fr(0))


def test_closure_examples():
    assert finite_sublattice_closure(RATIONAL_UNIT, {Fr(1, 5), Fr(1, 2)}) == \
        {Fr(0), Fr(1, 5), Fr(1, 2), Fr(1)}
    assert finite_sublattice_closure(BOOLEAN, {Fr(0)}) == {Fr(0), Fr(1)}
    x, y = (Fr(1, 5), Fr(1, 2)), (Fr(1, 2), Fr(1, 5))
    closed = finite_sublattice_closure(UNIT2, {x, y})
    assert (Fr(1, 5), Fr(1, 5)) in closed and (Fr(1, 2), Fr(1, 2)) in closed


def test_join_irreducible_examples():
    closed = {Fr(0), Fr(3, 10), Fr(1, 2), Fr(4, 5), Fr(1)}
    assert join_irreducibles(RATIONAL_UNIT, closed) == [Fr(3, 10), Fr(1, 2), Fr(4, 5), Fr(1)]
    assert join_irreducibles(BOOLEAN, {Fr(0), Fr(1)}) == [Fr(1)]
    closed = finite_sublattice_closure(UNIT2, {(Fr(1), Fr(0)), (Fr(0), Fr(1))})
    assert sorted(join_irreducibles(UNIT2, closed)) == [(Fr(0), Fr(1)), (Fr(1), Fr(0))]


def test_join_irreducibles_rejects_open_sets():
    with pytest.raises(LatticeError):
        join_irreducibles(UNIT2, {UNIT2.bot, UNIT2.top, (Fr(1), Fr(0)), (Fr(1, 2), Fr(1, 2))})


@given(pairs, pairs, pairs)
def test_product_distributive(x, y, z):
    assert UNIT2.meet(x, UNIT2.join(y, z)) == UNIT2.join(UNIT2.meet(x, y), UNIT2.meet(x, z))
    assert UNIT2.join(x, UNIT2.meet(y, z)) == UNIT2.meet(UNIT2.join(x, y), UNIT2.join(x, z))


@given(pairs, pairs)
def test_product_de_morgan(x, y):
    n = UNIT2.negate
    assert n(UNIT2.join(x, y)) == UNIT2.meet(n(x), n(y))
    assert n(n(x)) == x
    if UNIT2.leq(x, y):
        assert UNIT2.leq(n(y), n(x))


@given(st.sets(pairs, min_size=1, max_size=4))
def test_birkhoff_decomposition(values):
    closed = finite_sublattice_closure(UNIT2, values)
    irr = join_irreducibles(UNIT2, closed)
    for y in closed:
        assert UNIT2.join_all(j for j in irr if UNIT2.leq(j, y)) == y


@given(st.sets(unit, min_size=1, max_size=5))
def test_chain_irreducibles_are_nonzero_elements(values):
    closed = finite_sublattice_closure(RATIONAL_UNIT, values)
    assert join_irreducibles(RATIONAL_UNIT, closed) == sorted(closed - {Fr(0)})
