"""Formal (Laurent) polynomials over B, Z_max and T_Q.

A :class:`TropPoly` is a canonical mapping from exponent vectors to nonzero
coefficients. Coefficients are stored as their exponents (``t^c`` is stored
as ``c``), so ``0`` is the unit coefficient and a missing key is Zero.
Equality is formal: two polynomials are equal iff their mappings are.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple

from .errors import InputError
from .exactnum import rat, rat_str
from .semifield import (Scalar, SemifieldTag, check_exponent, exponent_literal,
                        parse_exponent)

ExpVec = Tuple[int, ...]


class _NegInf:
    """The coordinate 0 of T^k (exponent -inf)."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "NEG_INF"

    def __reduce__(self):
        return (_NegInf, ())


NEG_INF = _NegInf()


@dataclass(frozen=True)
class Context:
    tag: SemifieldTag
    k: int
    laurent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tag", SemifieldTag.parse(self.tag))
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 0:
            raise InputError(f"k must be a natural number, got {self.k!r}")
        object.__setattr__(self, "laurent", bool(self.laurent))

    @property
    def weighted(self) -> bool:
        """True when coefficients carry a t-exponent coordinate."""
        return self.tag is not SemifieldTag.B

    @property
    def ambient(self) -> int:
        """Dimension of the Newton-polytope space."""
        return self.k + (1 if self.weighted else 0)


def _check_exp(ctx: Context, e) -> ExpVec:
    e = tuple(e)
    if len(e) != ctx.k:
        raise InputError(f"exponent {list(e)} has length {len(e)}, expected k = {ctx.k}")
    out = []
    for v in e:
        if isinstance(v, bool) or not isinstance(v, int):
            raise InputError(f"exponents must be integers, got {v!r}")
        if v < 0 and not ctx.laurent:
            raise InputError(f"negative exponent {list(e)} outside a Laurent context")
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class TropPoly:
    ctx: Context
    terms: Tuple[Tuple[ExpVec, object], ...] = ()

    @classmethod
    def from_terms(cls, ctx: Context, items: Iterable) -> "TropPoly":
        """Build from ``(exp, coeff_exponent)`` items; ``None`` coefficients
        (Zero) are dropped and duplicates merged by max."""
        acc: Dict[ExpVec, object] = {}
        for e, c in items:
            if c is None:
                continue
            e = _check_exp(ctx, e)
            c = check_exponent(ctx.tag, c)
            old = acc.get(e)
            if old is None or c > old:
                acc[e] = c
        return cls(ctx, tuple(sorted(acc.items())))

    @property
    def tag(self):
        return self.ctx.tag

    @property
    def k(self):
        return self.ctx.k

    @property
    def laurent(self):
        return self.ctx.laurent

    def as_dict(self) -> Dict[ExpVec, object]:
        return dict(self.terms)

    def support(self):
        return [e for e, _ in self.terms]

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, e) -> Scalar:
        return Scalar(self.tag, self.as_dict().get(tuple(e)))

    def degree(self) -> int:
        """Largest total |degree| of a term (0 for the zero polynomial)."""
        return max((sum(abs(v) for v in e) for e, _ in self.terms), default=0)

    def points(self):
        """Newton-polytope points: ``n`` over B, ``(c, n)`` otherwise."""
        if self.ctx.weighted:
            return [(rat(c),) + tuple(Fraction(v) for v in e) for e, c in self.terms]
        return [tuple(Fraction(v) for v in e) for e, _ in self.terms]

    def __add__(self, other):
        return poly_add(self, other)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __str__(self):
        return poly_str(self)


def _same_ctx(f: TropPoly, g: TropPoly):
    if not isinstance(f, TropPoly) or not isinstance(g, TropPoly):
        raise InputError("expected polynomials")
    if f.ctx != g.ctx:
        raise InputError(f"context mismatch: {f.ctx} vs {g.ctx}")


def zero(ctx: Context) -> TropPoly:
    return TropPoly(ctx, ())


def one(ctx: Context) -> TropPoly:
    return TropPoly(ctx, (((0,) * ctx.k, 0),))


def monomial(ctx: Context, exp, coeff=0) -> TropPoly:
    return TropPoly.from_terms(ctx, [(exp, coeff)])


def constant(ctx: Context, coeff) -> TropPoly:
    return monomial(ctx, (0,) * ctx.k, coeff)


def variable(ctx: Context, i: int) -> TropPoly:
    e = [0] * ctx.k
    e[i] = 1
    return monomial(ctx, e)


def poly_add(f: TropPoly, g: TropPoly) -> TropPoly:
    _same_ctx(f, g)
    return TropPoly.from_terms(f.ctx, f.terms + g.terms)


def poly_mul(f: TropPoly, g: TropPoly) -> TropPoly:
    _same_ctx(f, g)
    acc: Dict[ExpVec, object] = {}
    for e1, c1 in f.terms:
        for e2, c2 in g.terms:
            e = tuple(a + b for a, b in zip(e1, e2))
            c = c1 + c2
            old = acc.get(e)
            if old is None or c > old:
                acc[e] = c
    return TropPoly(f.ctx, tuple(sorted(acc.items())))


def poly_pow(f: TropPoly, n: int) -> TropPoly:
    out = one(f.ctx)
    for _ in range(n):
        out = poly_mul(out, f)
    return out


def poly_sum(ctx: Context, polys: Iterable[TropPoly]) -> TropPoly:
    items = []
    for p in polys:
        _same_ctx(p, zero(ctx))
        items.extend(p.terms)
    return TropPoly.from_terms(ctx, items)


# ---------------------------------------------------------------------------
# points and evaluation
# ---------------------------------------------------------------------------


def make_point(ctx: Context, coords) -> tuple:
    """Validate point coordinates. Coordinates are exponents (Rat-like);
    NEG_INF, None or ``"-inf"`` stand for the coordinate Zero."""
    coords = tuple(coords)
    if len(coords) != ctx.k:
        raise InputError(f"point has {len(coords)} coordinates, expected {ctx.k}")
    out = []
    for a in coords:
        if a is NEG_INF or a is None or (isinstance(a, str) and a.strip() == "-inf"):
            if ctx.laurent:
                raise InputError("NegInf coordinate in a Laurent context")
            out.append(NEG_INF)
        else:
            out.append(check_exponent(ctx.tag, rat(a)))
    return tuple(out)


def poly_eval(f: TropPoly, a) -> Scalar:
    """Value of ``f`` at the point ``a`` (coordinates are exponents)."""
    a = make_point(f.ctx, a)
    best = None
    for e, c in f.terms:
        v = rat(c)
        for n, d in zip(e, a):
            if n == 0:
                continue
            if d is NEG_INF:
                v = None
                break
            v += n * d
        if v is not None and (best is None or v > best):
            best = v
    return Scalar(f.tag, best)


# ---------------------------------------------------------------------------
# text and JSON
# ---------------------------------------------------------------------------


def var_names(k: int):
    return ["x", "y", "z"][:k] if k <= 3 else [f"x{i + 1}" for i in range(k)]


def poly_str(f: TropPoly) -> str:
    if f.is_zero:
        return "0"
    names = var_names(f.k)
    parts = []
    for e, c in sorted(f.terms, key=lambda t: (-sum(t[0]), tuple(-v for v in t[0]))):
        mono = []
        for name, n in zip(names, e):
            if n == 1:
                mono.append(name)
            elif n:
                mono.append(f"{name}^{n}")
        coeff = exponent_literal(c)
        if not mono:
            parts.append(coeff)
        elif coeff == "1":
            parts.append("*".join(mono))
        else:
            parts.append(coeff + "*" + "*".join(mono))
    return " + ".join(parts)


_FACTOR = re.compile(r"^([A-Za-z]\w*)(?:\^\(?(-?\d+)\)?)?$")


def parse_poly(text: str, ctx: Context, names=None) -> TropPoly:
    """Parse ``"x^2 + t^(1/2)*x*y + 1"``. Variables default to x, y, z
    (or x1..xk when k > 3); ``t`` denotes the coefficient variable."""
    names = list(names or var_names(ctx.k))
    index = {n: i for i, n in enumerate(names)}
    text = text.strip()
    if text == "0" or not text:
        return zero(ctx)
    items = []
    for term in text.split("+"):
        term = term.strip()
        if not term:
            raise InputError(f"empty term in {text!r}")
        e = [0] * ctx.k
        c = Fraction(0)
        for factor in re.split(r"\s*\*\s*|\s+", term):
            if factor == "1":
                continue
            if factor == "0":
                c = None
                continue
            if factor.startswith("t") and (factor == "t" or factor[1] == "^"):
                c = None if c is None else c + parse_exponent(factor)
                continue
            m = _FACTOR.match(factor)
            if not m or m.group(1) not in index:
                raise InputError(f"bad factor {factor!r} in {text!r}")
            e[index[m.group(1)]] += int(m.group(2) or 1)
        items.append((e, c))
    return TropPoly.from_terms(ctx, items)


def poly_to_json(f: TropPoly, with_context=True) -> dict:
    doc = {"terms": [{"coeff": exponent_literal(c), "exp": list(e)} for e, c in f.terms]}
    if with_context:
        doc = {"semifield": f.tag.value, "k": f.k, "laurent": f.laurent, **doc}
    return doc


def context_from_json(doc: dict, default: Context = None) -> Context:
    if not isinstance(doc, dict):
        raise InputError("polynomial document must be an object")
    if default is not None:
        tag = doc.get("semifield", default.tag)
        k = doc.get("k", default.k)
        laurent = doc.get("laurent", default.laurent)
    else:
        try:
            tag, k = doc["semifield"], doc["k"]
        except KeyError as err:
            raise InputError(f"polynomial document lacks {err.args[0]!r}") from None
        laurent = doc.get("laurent", False)
    return Context(tag, k, laurent)


def poly_from_json(doc, default: Context = None) -> TropPoly:
    """Load a polynomial document; a bare string is parsed as text."""
    if isinstance(doc, str):
        if default is None:
            raise InputError("a textual polynomial needs a context")
        return parse_poly(doc, default)
    ctx = context_from_json(doc, default)
    if default is not None and ctx != default:
        raise InputError(f"context mismatch: {ctx} vs {default}")
    terms = doc.get("terms")
    if not isinstance(terms, list):
        raise InputError("polynomial document needs a 'terms' list")
    items = []
    for t in terms:
        if not isinstance(t, dict) or "exp" not in t:
            raise InputError(f"bad term {t!r}")
        items.append((t["exp"], parse_exponent(str(t.get("coeff", "1")))))
    return TropPoly.from_terms(ctx, items)


def point_to_json(a) -> list:
    return ["-inf" if v is NEG_INF else rat_str(rat(v)) for v in a]
