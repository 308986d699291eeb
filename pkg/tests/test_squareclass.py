import pytest
from hypothesis import given

from qfpowers.squareclass import (
    MINUS_ONE,
    NEG_ONE,
    ONE,
    Atom,
    FieldMode,
    SquareClass,
    canonicalize,
    class_mul,
    class_negate,
    rational_class,
    sq,
)

from conftest import classes


def test_mul_examples():
    assert class_mul(sq("a"), sq("a")) == ONE
    assert class_mul(sq("a"), sq("b")) == sq("a", "b")
    assert class_mul(sq("-1", "a"), sq("-1", "b")) == sq("a", "b")


def test_negate_examples():
    assert class_negate(ONE) == NEG_ONE
    assert class_negate(NEG_ONE) == ONE
    assert class_negate(sq("a", "b")) == sq("-1", "a", "b")


@pytest.mark.parametrize(
    "c, mode, expected",
    [
        (sq("-1", "a"), FieldMode.GENERIC, sq("-1", "a")),
        (sq("-1", "a"), FieldMode.MINUS_ONE_SQUARE, sq("a")),
        (ONE, FieldMode.MINUS_ONE_SQUARE, ONE),
    ],
)
def test_canonicalize(c, mode, expected):
    assert canonicalize(c, mode) == expected


def test_atom_ordering_minus_one_first():
    atoms = sorted([Atom("b"), MINUS_ONE, Atom("a"), Atom("2")])
    assert atoms[0] is MINUS_ONE
    assert [str(a) for a in atoms[1:]] == ["2", "a", "b"]
    assert sq("b", "-1", "a").atoms == (MINUS_ONE, Atom("a"), Atom("b"))


def test_minus_one_not_constructible_from_name():
    with pytest.raises(ValueError):
        Atom("-1")
    with pytest.raises(ValueError):
        Atom("4")  # not prime
    with pytest.raises(ValueError):
        Atom("")


def test_duplicate_atoms_cancel():
    assert SquareClass.of(["a", "b", "a"]) == sq("b")


@pytest.mark.parametrize(
    "value, expected",
    [(4, ONE), (2, sq("2")), (-8, sq("-1", "2")), (12, sq("3")), (-1, NEG_ONE), (1, ONE), (18, sq("2"))],
)
def test_rational_class(value, expected):
    assert rational_class(value) == expected


def test_field_mode_parse():
    assert FieldMode.parse("r") is FieldMode.GENERIC
    assert FieldMode.parse("c") is FieldMode.MINUS_ONE_SQUARE
    with pytest.raises(ValueError):
        FieldMode.parse("q")


@given(classes, classes, classes)
def test_exponent_two_abelian_group(c, d, e):
    assert c * d == d * c
    assert (c * d) * e == c * (d * e)
    assert c * c == ONE
    assert c * ONE == c


@given(classes)
def test_negate_involutive(c):
    assert class_negate(class_negate(c)) == c


@given(classes)
def test_canonicalize_idempotent(c):
    for mode in FieldMode:
        once = canonicalize(c, mode)
        assert canonicalize(once, mode) == once
