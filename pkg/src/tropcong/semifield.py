"""The coefficient semifields B, Z_max and T_Q.

Elements are written multiplicatively as ``t^c``: addition is max of the
exponents, multiplication adds them, and ``Zero`` (exponent -inf) is the
additive identity. B has only Zero and the unit ``t^0``; Z_max exponents are
integers and T_Q exponents are rationals (an exact stand-in for R_max).

In this module ``a <= b`` means ``a + b = b``, i.e. the sum is the larger
element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import InputError
from .exactnum import rat, rat_str


class SemifieldTag(str, Enum):
    B = "B"
    Zmax = "Zmax"
    TQ = "TQ"

    @classmethod
    def parse(cls, s) -> "SemifieldTag":
        if isinstance(s, cls):
            return s
        try:
            return cls(s)
        except ValueError:
            raise InputError(f"unknown semifield {s!r} (expected B, Zmax or TQ)") from None


def check_exponent(tag: SemifieldTag, e):
    """Normalise a coefficient exponent for ``tag`` or raise InputError."""
    if tag is SemifieldTag.B:
        if e != 0:
            raise InputError(f"B admits only the coefficients 0 and 1, got t^{e}")
        return 0
    if tag is SemifieldTag.Zmax:
        e = rat(e)
        if e.denominator != 1:
            raise InputError(f"Zmax exponents are integers, got t^{rat_str(e)}")
        return int(e)
    return rat(e)


@dataclass(frozen=True)
class Scalar:
    tag: SemifieldTag
    exp: Optional[object] = None  # None is Zero

    def __post_init__(self):
        object.__setattr__(self, "tag", SemifieldTag.parse(self.tag))
        if self.exp is not None:
            object.__setattr__(self, "exp", check_exponent(self.tag, self.exp))

    @classmethod
    def zero(cls, tag) -> "Scalar":
        return cls(tag, None)

    @classmethod
    def one(cls, tag) -> "Scalar":
        return cls(tag, 0)

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    def _same(self, other):
        if not isinstance(other, Scalar):
            raise InputError(f"not a scalar: {other!r}")
        if other.tag is not self.tag:
            raise InputError(f"mixed semifields {self.tag.value} and {other.tag.value}")

    def __add__(self, other):
        return scalar_add(self, other)

    def __mul__(self, other):
        return scalar_mul(self, other)

    def __le__(self, other):
        return scalar_leq(self, other)

    def __str__(self):
        return scalar_literal(self)


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    a._same(b)
    if a.exp is None:
        return b
    if b.exp is None:
        return a
    return a if a.exp >= b.exp else b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    a._same(b)
    if a.exp is None or b.exp is None:
        return Scalar(a.tag, None)
    return Scalar(a.tag, a.exp + b.exp)


def scalar_leq(a: Scalar, b: Scalar) -> bool:
    return scalar_add(a, b) == b


_LITERAL = re.compile(r"^\s*t\s*(?:\^\s*\(?\s*([+-]?\d+(?:\s*/\s*\d+)?)\s*\)?)?\s*$")


def parse_exponent(text: str):
    """Coefficient exponent of a literal: ``"0"`` gives None, ``"1"`` gives 0,
    ``"t"`` gives 1 and ``"t^p/q"`` gives p/q."""
    if not isinstance(text, str):
        raise InputError(f"scalar literal must be a string, got {text!r}")
    s = text.strip()
    if s == "0":
        return None
    if s == "1":
        return 0
    m = _LITERAL.match(s)
    if not m:
        raise InputError(f"bad scalar literal {text!r}")
    return Fraction(1) if m.group(1) is None else rat(m.group(1).replace(" ", ""))


def parse_scalar(text: str, tag) -> Scalar:
    return Scalar(tag, parse_exponent(text))


def exponent_literal(e) -> str:
    if e is None:
        return "0"
    e = rat(e)
    return "1" if e == 0 else f"t^{rat_str(e)}"


def scalar_literal(a: Scalar) -> str:
    return exponent_literal(a.exp)
