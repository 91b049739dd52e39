"""Term orderings given by rational matrices, and the prime congruences they define.

A matrix ``U`` with linearly independent rows orders monomials by the
lexicographic order of ``U n`` (over B) or ``U (c, n)`` for ``t^c x^n``
(over Z_max and T_Q, column 0 being the t-column). Together with a kill set
``H`` of variables it defines a prime congruence: monomials containing a
killed variable become 0, and two polynomials are congruent iff the
lexicographically largest ``U``-values of their surviving monomials agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Optional, Tuple

from .errors import InputError
from .exactnum import dot, nullspace, primitive, rank, rat, rat_str
from .pairalg import Pair
from .semifield import SemifieldTag
from .tropoly import Context, TropPoly, monomial


@dataclass(frozen=True)
class OrderMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]
    ncols: int
    tag: SemifieldTag = SemifieldTag.B

    def __post_init__(self):
        rows = tuple(tuple(rat(v) for v in r) for r in self.rows)
        for r in rows:
            if len(r) != self.ncols:
                raise InputError(f"matrix row of length {len(r)}, expected {self.ncols}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "tag", SemifieldTag.parse(self.tag))

    @classmethod
    def of(cls, rows, tag="B", ncols=None) -> "OrderMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            if not rows:
                raise InputError("an empty matrix needs an explicit column count")
            ncols = len(rows[0])
        return cls(tuple(tuple(r) for r in rows), ncols, tag)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def prefix(self, i: int) -> "OrderMatrix":
        return OrderMatrix(self.rows[:i], self.ncols, self.tag)

    def apply(self, v) -> Tuple[Fraction, ...]:
        return tuple(dot(r, v) for r in self.rows)


@dataclass(frozen=True)
class PrimeSpec:
    ctx: Context
    U: OrderMatrix
    kill: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "kill", frozenset(self.kill))

    @property
    def survivors(self) -> List[int]:
        return [i for i in range(self.ctx.k) if i not in self.kill]

    @property
    def ncols(self) -> int:
        return len(self.survivors) + (1 if self.ctx.weighted else 0)

    def point_of(self, exp, coeff) -> Optional[tuple]:
        """Extended exponent vector of a monomial, or None if it is killed."""
        if any(exp[i] for i in self.kill):
            return None
        n = tuple(Fraction(exp[i]) for i in self.survivors)
        return (rat(coeff),) + n if self.ctx.weighted else n

    def value(self, f: TropPoly):
        """Lexicographically largest ``U``-value over the surviving monomials
        of ``f``, or None when none survive."""
        best = None
        for e, c in f.terms:
            p = self.point_of(e, c)
            if p is None:
                continue
            v = self.U.apply(p)
            if best is None or v > best:
                best = v
        return best


def identity(n: int, tag="B") -> OrderMatrix:
    return OrderMatrix.of([[int(i == j) for j in range(n)] for i in range(n)], tag, n)


def make_spec(ctx: Context, rows, kill=()) -> PrimeSpec:
    kill = frozenset(kill)
    ncols = ctx.k - len(kill) + (1 if ctx.weighted else 0)
    return PrimeSpec(ctx, OrderMatrix.of(rows, ctx.tag, ncols), kill)


def diagnose(spec: PrimeSpec) -> List[str]:
    """Violated conditions of a prime specification (empty when valid)."""
    probs = []
    ctx, U = spec.ctx, spec.U
    if any(not isinstance(i, int) or i < 0 or i >= ctx.k for i in spec.kill):
        probs.append(f"kill set {sorted(spec.kill)} is not contained in the variables 0..{ctx.k - 1}")
        return probs
    if ctx.laurent and spec.kill:
        probs.append("Laurent contexts admit no killed variables")
    if U.tag is not ctx.tag:
        probs.append(f"matrix semifield {U.tag.value} differs from context {ctx.tag.value}")
    if U.ncols != spec.ncols:
        probs.append(f"matrix has {U.ncols} columns, expected {spec.ncols}")
        return probs
    if U.nrows > U.ncols:
        probs.append(f"{U.nrows} rows exceed {U.ncols} columns")
    if U.rows and rank(U.rows) < U.nrows:
        probs.append("rows are linearly dependent")
    if ctx.weighted:
        col = [r[0] for r in U.rows]
        lead = next((v for v in col if v != 0), None)
        if lead is not None and lead < 0:
            probs.append("first nonzero entry of the t-column is negative")
    return probs


def validate(spec: PrimeSpec) -> Tuple[bool, List[str]]:
    probs = diagnose(spec)
    return not probs, probs


def _require(spec: PrimeSpec):
    probs = diagnose(spec)
    if probs:
        raise InputError("invalid prime specification: " + "; ".join(probs))


def phi(U: OrderMatrix, point) -> Tuple[Fraction, ...]:
    """``U`` applied to an extended exponent vector ``(c, n)`` (or ``n`` over B)."""
    point = tuple(rat(v) for v in point)
    if len(point) != U.ncols:
        raise InputError(f"vector of length {len(point)} for a matrix with {U.ncols} columns")
    return U.apply(point)


def prime_member(spec: PrimeSpec, p: Pair) -> bool:
    _require(spec)
    if p.ctx != spec.ctx:
        raise InputError(f"context mismatch: {p.ctx} vs {spec.ctx}")
    return spec.value(p.lhs) == spec.value(p.rhs)


def dimension(spec: PrimeSpec) -> int:
    _require(spec)
    return spec.U.nrows


def is_minimal(spec: PrimeSpec) -> bool:
    """Minimal primes have no kernel and a full-column-rank matrix."""
    _require(spec)
    return not spec.kill and (spec.U.nrows == spec.U.ncols)


def _separator(spec: PrimeSpec, i: int) -> Pair:
    """A pair in the prime of ``U(i-1)`` but not in the prime of ``U(i)``."""
    U = spec.U
    prev = [list(r) for r in U.rows[: i - 1]]
    row = U.rows[i - 1]
    basis = nullspace(prev, U.ncols) if prev else [
        [int(j == c) for j in range(U.ncols)] for c in range(U.ncols)]
    n = next(v for v in basis if dot(row, v) != 0)
    ctx = spec.ctx
    if ctx.weighted:
        c, n = n[0], n[1:]
    else:
        c = 0
    pos = [0] * ctx.k
    neg = [0] * ctx.k
    for var, v in zip(spec.survivors, n):
        if ctx.laurent:
            pos[var] = v
        elif v > 0:
            pos[var] = v
        else:
            neg[var] = -v
    return Pair(monomial(ctx, pos, c), monomial(ctx, neg, 0))


def prime_chain(spec: PrimeSpec):
    """The primes of the leading-row prefixes ``U(r), ..., U(0)`` and, for each
    consecutive step, a pair separating the smaller prime from the larger."""
    _require(spec)
    r = spec.U.nrows
    chain = [PrimeSpec(spec.ctx, spec.U.prefix(i), spec.kill) for i in range(r, -1, -1)]
    seps = [_separator(spec, i) for i in range(r, 0, -1)]
    return chain, seps


def canonicalize(U: OrderMatrix) -> OrderMatrix:
    """Orthogonal primitive-integer form of ``U`` defining the same ordering."""
    if U.rows and rank(U.rows) < U.nrows:
        raise InputError("rows are linearly dependent")
    done = []
    for r in U.rows:
        v = list(r)
        for b in done:
            f = dot(v, b) / dot(b, b)
            v = [x - f * y for x, y in zip(v, b)]
        done.append(v)
    return OrderMatrix(tuple(tuple(Fraction(x) for x in primitive(v)) for v in done), U.ncols, U.tag)


def collapse_weights(spec: PrimeSpec, pairs) -> Tuple[PrimeSpec, Tuple[Fraction, ...]]:
    """A single row ``w U`` (``w`` positive) inducing the same membership
    verdicts as ``U`` on every pair in ``pairs``.

    Over Z_max and T_Q the t-direction is included among the vectors whose
    sign must be kept, so the collapsed row keeps the t-column condition.
    """
    _require(spec)
    U = spec.U
    l = U.nrows
    if l == 0:
        return spec, ()
    vecs = set()
    for p in pairs:
        pts = [spec.point_of(e, c) for f in (p.lhs, p.rhs) for e, c in f.terms]
        pts = [pt for pt in pts if pt is not None]
        for a in pts:
            for b in pts:
                s = U.apply([x - y for x, y in zip(a, b)])
                if any(s):
                    vecs.add(s)
    if spec.ctx.weighted:
        s = U.apply([1] + [0] * (U.ncols - 1))
        if any(s):
            vecs.add(s)
    w = [Fraction(1)] * l
    for i in range(l - 2, -1, -1):
        need = Fraction(0)
        for s in vecs:
            lead = next(j for j, v in enumerate(s) if v != 0)
            if lead != i:
                continue
            tail = sum((w[j] * abs(s[j]) for j in range(i + 1, l)), Fraction(0))
            need = max(need, tail / abs(s[i]))
        w[i] = Fraction(math.floor(need) + 1)
    row = tuple(sum((w[j] * U.rows[j][c] for j in range(l)), Fraction(0)) for c in range(U.ncols))
    return PrimeSpec(spec.ctx, OrderMatrix((row,), U.ncols, U.tag), spec.kill), tuple(w)


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def matrix_to_json(U: OrderMatrix) -> dict:
    return {"rows": [[rat_str(v) for v in r] for r in U.rows]}


def spec_to_json(spec: PrimeSpec) -> dict:
    return {"kill": sorted(i + 1 for i in spec.kill), "matrix": matrix_to_json(spec.U)}


def spec_from_json(doc, ctx: Context) -> PrimeSpec:
    if not isinstance(doc, dict):
        raise InputError("prime specification must be an object")
    kill = doc.get("kill", [])
    if not isinstance(kill, list) or any(isinstance(i, bool) or not isinstance(i, int) for i in kill):
        raise InputError("'kill' must be a list of variable indices (1-based)")
    if any(i < 1 or i > ctx.k for i in kill):
        raise InputError(f"kill indices must lie in 1..{ctx.k}")
    m = doc.get("matrix", {"rows": []})
    rows = m.get("rows", []) if isinstance(m, dict) else m
    if not isinstance(rows, list):
        raise InputError("'matrix.rows' must be a list of rows")
    return make_spec(ctx, rows, [i - 1 for i in kill])
