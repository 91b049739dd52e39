"""Exact rational linear feasibility and suprema by Fourier-Motzkin elimination.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator). Constraints are ``coeffs . x >= bound`` or ``coeffs . x = bound``;
strict inequalities are never stored. Internally every constraint is scaled
to an integer row and variables are eliminated in index order, so witnesses
are deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import _accel
from .errors import InputError

Rat = Fraction

GE = ">="
EQ = "="


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise InputError(f"not a rational literal: {x!r}") from None
    raise InputError(f"not a rational: {x!r}")


def rat_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LinConstraint:
    coeffs: tuple
    bound: Fraction
    relation: str = GE

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))
        object.__setattr__(self, "bound", rat(self.bound))
        if self.relation not in (GE, EQ):
            raise InputError(f"unknown relation {self.relation!r}")

    def value(self, x) -> Fraction:
        return sum((c * xi for c, xi in zip(self.coeffs, x)), Fraction(0))

    def holds(self, x) -> bool:
        v = self.value(x)
        return v == self.bound if self.relation == EQ else v >= self.bound


def ge(coeffs, bound=0) -> LinConstraint:
    return LinConstraint(tuple(coeffs), bound, GE)


def eq(coeffs, bound=0) -> LinConstraint:
    return LinConstraint(tuple(coeffs), bound, EQ)


@dataclass(frozen=True)
class LinSystem:
    dim: int
    constraints: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            if len(c.coeffs) != self.dim:
                raise InputError(
                    f"constraint has {len(c.coeffs)} coefficients, system dimension is {self.dim}"
                )

    def extended(self, *more: LinConstraint) -> "LinSystem":
        return LinSystem(self.dim, self.constraints + tuple(more))

    def holds(self, x) -> bool:
        return len(x) == self.dim and all(c.holds(x) for c in self.constraints)


@dataclass(frozen=True)
class Infeasible:
    pass


@dataclass(frozen=True)
class Finite:
    value: Fraction
    witness: tuple


@dataclass(frozen=True)
class Unbounded:
    ray: tuple
    witness: tuple  # a feasible point; point + s*ray is feasible for s >= 0


# ---------------------------------------------------------------------------
# integer rows
# ---------------------------------------------------------------------------


def _int_row(coeffs, bound):
    den = 1
    for v in (*coeffs, bound):
        den = den * v.denominator // math.gcd(den, v.denominator)
    row = [int(v * den) for v in coeffs] + [int(bound * den)]
    g = 0
    for v in row:
        g = math.gcd(g, v)
    if g > 1:
        row = [v // g for v in row]
    return row


def _rows_of(sys: LinSystem):
    rows = []
    for c in sys.constraints:
        row = _int_row(c.coeffs, c.bound)
        rows.append(row)
        if c.relation == EQ:
            rows.append([-v for v in row])
    return rows


def _as_array(rows, width):
    if not rows:
        return np.empty((0, width), dtype=np.int64)
    big = max(abs(v) for r in rows for v in r) >= _accel.SAFE_BOUND
    return np.array(rows, dtype=object if big else np.int64)


def _combine_py(pos, neg, col):
    out = []
    for p in pos:
        a = p[col]
        for n in neg:
            b = -n[col]
            row = [b * pv + a * nv for pv, nv in zip(p, n)]
            row[col] = 0
            g = 0
            for v in row:
                g = math.gcd(g, v)
            if g > 1:
                row = [v // g for v in row]
            out.append(row)
    return np.array(out, dtype=object).reshape(-1, pos.shape[1])


def _prune(rows, width):
    """Drop trivial and duplicate rows, keep the tightest of parallel rows.

    Returns None when a row reads ``0 >= b`` with ``b > 0``.
    """
    if rows.shape[0] == 0:
        return rows
    coef = rows[:, :-1]
    trivial = (coef == 0).all(axis=1)
    if (rows[trivial, -1] > 0).any():
        return None
    rows = rows[~trivial]
    if rows.shape[0] == 0:
        return rows
    if rows.dtype != object:
        kept = _parallel_prune_int(rows)
        if kept is not None:
            return kept
    # group rows by primitive normal; keep the largest bound / scale
    best = {}
    for r in rows.tolist():
        g = 0
        for v in r[:-1]:
            g = math.gcd(g, v)
        key = tuple(v // g for v in r[:-1])
        b = Fraction(r[-1], g)
        old = best.get(key)
        if old is None or b > old[0]:
            best[key] = (b, r)
    kept = sorted(r for _, r in best.values())
    return _as_array(kept, width) if rows.dtype == object else np.array(kept, dtype=np.int64)


def _parallel_prune_int(rows):
    return rows[_accel.parallel_prune(rows)]


def _eliminate(rows, dim):
    """Eliminate columns ``0 .. dim-1``; returns (stages, remaining rows).

    ``remaining`` is None when a contradiction appears.
    """
    width = dim + 1
    stages = []
    for col in range(dim):
        rows = _prune(rows, width)
        if rows is None:
            return stages, None
        c = rows[:, col]
        pos, neg, zero = rows[c > 0], rows[c < 0], rows[c == 0]
        stages.append((col, pos, neg))
        if rows.dtype != object and pos.size and neg.size:
            if max(np.abs(pos).max(), np.abs(neg).max()) >= _accel.SAFE_BOUND:
                pos, neg, zero = pos.astype(object), neg.astype(object), zero.astype(object)
        if pos.dtype == object or neg.dtype == object:
            new = _combine_py(pos.astype(object), neg.astype(object), col)
            zero = zero.astype(object)
        else:
            new = _accel.fm_combine(pos, neg, col)
        rows = np.vstack([zero, new]) if new.shape[0] else zero
    return stages, _prune(rows, width)


def _pick(lo, hi):
    # deterministic "nice" choice within [lo, hi]; None means unbounded
    if (lo is None or lo <= 0) and (hi is None or hi >= 0):
        return Fraction(0)
    if lo is not None and lo > 0:
        c = Fraction(math.ceil(lo))
        return c if hi is None or c <= hi else lo
    f = Fraction(math.floor(hi))
    return f if lo is None or f >= lo else hi


def _bounds(stage_rows, col, x, lo=None, hi=None):
    pos_rows, neg_rows = stage_rows
    for r in pos_rows.tolist():
        rest = sum((r[t] * x[t] for t in range(col + 1, len(x)) if r[t]), Fraction(0))
        v = (r[-1] - rest) / r[col]
        lo = v if lo is None or v > lo else lo
    for r in neg_rows.tolist():
        rest = sum((r[t] * x[t] for t in range(col + 1, len(x)) if r[t]), Fraction(0))
        v = (r[-1] - rest) / r[col]
        hi = v if hi is None or v < hi else hi
    return lo, hi


def _back_substitute(stages, x):
    for col, pos, neg in reversed(stages):
        lo, hi = _bounds((pos, neg), col, x)
        assert lo is None or hi is None or lo <= hi, "FM back-substitution lost feasibility"
        x[col] = _pick(lo, hi)
    return x


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def lin_solve(sys: LinSystem):
    """A rational feasible point of ``sys`` as a tuple, or None."""
    if sys.dim == 0:
        return () if _prune(_as_array(_rows_of(sys), 1), 1) is not None else None
    rows = _as_array(_rows_of(sys), sys.dim + 1)
    stages, rest = _eliminate(rows, sys.dim)
    if rest is None:
        return None
    x = _back_substitute(stages, [Fraction(0)] * sys.dim)
    return tuple(x)


def lin_feasible(sys: LinSystem) -> bool:
    rows = _as_array(_rows_of(sys), sys.dim + 1)
    if sys.dim == 0:
        return _prune(rows, 1) is not None
    return _eliminate(rows, sys.dim)[1] is not None


def lin_sup(objective: Sequence, sys: LinSystem):
    """Exact supremum of ``objective . x`` over the solutions of ``sys``.

    Returns :class:`Infeasible`, :class:`Finite` with an attaining point, or
    :class:`Unbounded` with a recession ray of positive objective.
    """
    objective = tuple(rat(c) for c in objective)
    if len(objective) != sys.dim:
        raise InputError(f"objective has {len(objective)} entries, system dimension is {sys.dim}")
    d = sys.dim
    ext = [ge(c.coeffs + (0,), c.bound) if c.relation == GE else eq(c.coeffs + (0,), c.bound)
           for c in sys.constraints]
    ext.append(eq(tuple(-c for c in objective) + (1,), 0))
    rows = _as_array(_rows_of(LinSystem(d + 1, ext)), d + 2)
    stages, rest = _eliminate(rows, d)
    if rest is None:
        return Infeasible()
    z = [Fraction(0)] * (d + 1)
    lo, hi = _bounds((rest[rest[:, d] > 0], rest[rest[:, d] < 0]), d, z)
    if lo is not None and hi is not None and lo > hi:
        return Infeasible()
    if hi is None:
        point = lin_solve(sys)
        homog = [ge(c.coeffs, 0) if c.relation == GE else eq(c.coeffs, 0) for c in sys.constraints]
        ray = lin_solve(LinSystem(d, homog + [ge(objective, 1)]))
        assert point is not None and ray is not None
        return Unbounded(ray, point)
    z[d] = hi
    x = _back_substitute(stages, z)
    return Finite(hi, tuple(x[:d]))


# ---------------------------------------------------------------------------
# exact matrices
# ---------------------------------------------------------------------------


def rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [[rat(v) for v in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """A basis of ``{x : rows . x = 0}`` as primitive integer vectors."""
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, p in zip(red, pivots):
            x[p] = -r[f]
        basis.append(primitive(x))
    return basis


def primitive(vec):
    """Scale a rational vector to coprime integers, keeping its direction."""
    vec = [rat(v) for v in vec]
    den = 1
    for v in vec:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints] if g else ints


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))
