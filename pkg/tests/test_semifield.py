from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropcong.errors import InputError
from tropcong.semifield import (Scalar, SemifieldTag, exponent_literal, parse_exponent,
                                parse_scalar, scalar_literal)

TQ = SemifieldTag.TQ


def test_literals():
    assert parse_exponent("0") is None
    assert parse_exponent("1") == 0
    assert parse_exponent("t") == 1
    assert parse_exponent("t^-2") == -2
    assert parse_exponent("t^(3/6)") == Fraction(1, 2)
    for e in (None, 0, 1, Fraction(-7, 3)):
        assert parse_exponent(exponent_literal(e)) == e
    with pytest.raises(InputError):
        parse_exponent("2")
    with pytest.raises(InputError):
        parse_exponent(3)


def test_carriers():
    assert Scalar("B", 0).tag is SemifieldTag.B
    with pytest.raises(InputError):
        Scalar("B", 1)
    with pytest.raises(InputError):
        Scalar("Zmax", Fraction(1, 2))
    with pytest.raises(InputError):
        parse_scalar("t^1/2", "Zmax")
    assert scalar_literal(parse_scalar("t^1/2", "TQ")) == "t^1/2"
    with pytest.raises(InputError):
        Scalar("Zmax", 1) + Scalar("TQ", 1)
    with pytest.raises(InputError):
        SemifieldTag.parse("R")


def test_operations():
    a, b = Scalar(TQ, Fraction(1, 2)), Scalar(TQ, -1)
    assert a + b == a
    assert a * b == Scalar(TQ, Fraction(-1, 2))
    assert a * Scalar.zero(TQ) == Scalar.zero(TQ)
    assert b + Scalar.zero(TQ) == b
    assert b <= a and not a <= b


scalars = st.one_of(st.none(), st.fractions(max_denominator=6, min_value=-5, max_value=5)).map(
    lambda e: Scalar(TQ, e))


@given(scalars, scalars, scalars)
def test_semifield_axioms(a, b, c):
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + a == a
    assert a * Scalar.one(TQ) == a
    # a <= b iff a + b = b, a total order on the carrier
    assert (a <= b) or (b <= a)
    if a <= b and b <= a:
        assert a == b
