"""Seeded random instances for property checks and benchmarks."""

from __future__ import annotations

import random
from fractions import Fraction

from .exactnum import rank
from .order import make_spec
from .pairalg import CongPresentation, Pair
from .polytope import hat_eq, poly_newt
from .semifield import SemifieldTag
from .tropoly import Context, TropPoly, monomial, poly_add

_TQ_COEFFS = [Fraction(v, 2) for v in range(-4, 5)]


def random_coeff(rng: random.Random, tag: SemifieldTag):
    if tag is SemifieldTag.B:
        return 0
    if tag is SemifieldTag.Zmax:
        return rng.randint(-2, 2)
    return rng.choice(_TQ_COEFFS)


def random_exp(rng: random.Random, ctx: Context, max_deg: int):
    e = [0] * ctx.k
    if ctx.laurent:
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(ctx.k)] += rng.choice((1, -1))
    else:
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(ctx.k)] += 1
    return e


def random_poly(rng: random.Random, ctx: Context, max_terms=4, max_deg=3, allow_zero=False):
    lo = 0 if allow_zero else 1
    items = [(random_exp(rng, ctx, max_deg), random_coeff(rng, ctx.tag))
             for _ in range(rng.randint(lo, max_terms))]
    return TropPoly.from_terms(ctx, items)


def random_pair(rng: random.Random, ctx: Context, max_terms=4, max_deg=3):
    return Pair(random_poly(rng, ctx, max_terms, max_deg), random_poly(rng, ctx, max_terms, max_deg))


def random_radical_pair(rng: random.Random, ctx: Context, max_terms=4, max_deg=3, extra=3):
    """A pair ``(f, f + h)`` with ``h`` hidden under the polytope (B) or hat."""
    f = random_poly(rng, ctx, max_terms, max_deg)
    P = poly_newt(f)
    g = f
    for _ in range(extra * 4):
        if extra <= 0:
            break
        m = monomial(ctx, random_exp(rng, ctx, max_deg), random_coeff(rng, ctx.tag) - 1
                     if ctx.weighted else 0)
        cand = poly_add(g, m)
        Q = poly_newt(cand)
        same = Q.vertices == P.vertices if not ctx.weighted else hat_eq(P, Q)
        if same and cand != g:
            g = cand
            extra -= 1
    return Pair(f, g) if rng.random() < 0.5 else Pair(g, f)


def random_matrix(rng: random.Random, nrows: int, ncols: int, lo=-3, hi=3, t_positive=False):
    while True:
        rows = [[rng.randint(lo, hi) for _ in range(ncols)] for _ in range(nrows)]
        if nrows and rank(rows) < nrows:
            continue
        if t_positive:
            # negating one row keeps independence and fixes the t-column sign
            i = next((i for i, r in enumerate(rows) if r[0] != 0), None)
            if i is not None and rows[i][0] < 0:
                rows[i] = [-v for v in rows[i]]
        return rows


def random_spec(rng: random.Random, ctx: Context, nrows=None, kill=()):
    ncols = ctx.k - len(kill) + (1 if ctx.weighted else 0)
    nrows = ncols if nrows is None else nrows
    rows = random_matrix(rng, nrows, ncols, t_positive=ctx.weighted)
    return make_spec(ctx, rows, kill)


def random_presentation(rng: random.Random, ctx: Context, max_gens=3, max_terms=3, max_deg=2):
    gens = [random_pair(rng, ctx, max_terms, max_deg) for _ in range(rng.randint(1, max_gens))]
    return CongPresentation(ctx, tuple(gens))
