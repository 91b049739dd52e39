"""Deciders for radical membership and the tropical Nullstellensatz.

Two independent routes are provided for each question:

* ``rad_trivial_member`` compares Newton polytopes (B) or their hats
  (Z_max, T_Q); ``rad_member_fg`` searches for a separating prime of
  dimension at most one and works for any finite generator set.
* ``null_member`` searches for a separating point of ``V(E)`` directly in
  coordinate space; ``eplus_member`` asks whether ``p (1, eps)`` lies in the
  radical, using only primes that do not contain ``(1, eps)``.

Non-membership verdicts carry a witness that can be re-checked with
:func:`tropcong.order.prime_member` or :func:`tropcong.tropoly.poly_eval`.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import InputError, ResourceError
from .exactnum import (Finite, LinSystem, Unbounded, eq, ge, lin_feasible, lin_solve,
                       lin_sup)
from .order import OrderMatrix, PrimeSpec, prime_member
from .pairalg import CongPresentation, GpWitness, Pair, gp_element, twisted_mul
from .polytope import hat_vertices, hull_vertices, poly_newt
from .semifield import Scalar, SemifieldTag
from .tropoly import NEG_INF, Context, TropPoly, monomial, one, poly_add, poly_eval, poly_mul, zero

log = logging.getLogger(__name__)

DEFAULT_K_BOUND = 3


@dataclass(frozen=True)
class SeparatingPrime:
    spec: PrimeSpec

    @property
    def kill(self):
        return self.spec.kill

    @property
    def row(self):
        return self.spec.U.rows[0] if self.spec.U.rows else None


@dataclass(frozen=True)
class SeparationPoint:
    point: tuple


@dataclass(frozen=True)
class Verdict:
    member: bool
    witness: Optional[object] = None
    cases: int = 0


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _check_k(ctx: Context, k_bound):
    if ctx.k > k_bound:
        raise ResourceError(f"k = {ctx.k} exceeds the configured bound {k_bound}")


def _kill_sets(ctx: Context):
    """Kill sets in canonical order: by size, then lexicographically."""
    if ctx.laurent:
        return [()]
    idx = range(ctx.k)
    return [c for r in range(ctx.k + 1) for c in itertools.combinations(idx, r)]


def _survivors(f: TropPoly, kill, dim_point):
    """Vertices of the Newton polytope of the surviving part of ``f``."""
    pts = []
    for e, c in f.terms:
        if any(e[i] for i in kill):
            continue
        pts.append(dim_point(e, c))
    if not pts:
        return []
    return list(hull_vertices(pts, len(pts[0])).vertices)


def _point_fn(ctx: Context, kill):
    surv = [i for i in range(ctx.k) if i not in kill]
    if ctx.weighted:
        return lambda e, c: (Fraction(c),) + tuple(Fraction(e[i]) for i in surv)
    return lambda e, c: tuple(Fraction(e[i]) for i in surv)


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _max_rows(a, others):
    # u.(a - m) >= 0: ``a`` attains the maximum over ``others``
    return [ge(_sub(a, m), 0) for m in others if m != a]


def _spec_of(ctx, kill, row, ncols):
    rows = () if row is None else (tuple(row),)
    return PrimeSpec(ctx, OrderMatrix(rows, ncols, ctx.tag), frozenset(kill))


class _Counter:
    def __init__(self):
        self.n = 0

    def feasible(self, sys):
        self.n += 1
        return lin_feasible(sys)

    def sup(self, obj, sys):
        self.n += 1
        return lin_sup(obj, sys)


def _solve_row(base, dim):
    # a rational row satisfying the homogeneous system ``base``
    x = lin_solve(LinSystem(dim, base))
    assert x is not None
    return x


def _gen_assignments(gen_sides, dim, base, counter):
    """Depth-first over achieving-vertex choices per generator; yields the
    constraint lists of every consistent full assignment."""
    if not gen_sides:
        yield base
        return
    (fv, gv), rest = gen_sides[0], gen_sides[1:]
    if not fv and not gv:
        yield from _gen_assignments(rest, dim, base, counter)
        return
    for a in fv:
        for b in gv:
            cons = base + _max_rows(a, fv) + _max_rows(b, gv) + [eq(_sub(a, b), 0)]
            if counter.feasible(LinSystem(dim, cons)):
                yield from _gen_assignments(rest, dim, cons, counter)


# ---------------------------------------------------------------------------
# polytope route
# ---------------------------------------------------------------------------


def _support_separator(P, Q, dim, weighted, counter):
    """A row ``u`` whose maximum over ``P`` strictly exceeds that over ``Q``."""
    base = [ge([1] + [0] * (dim - 1), 0)] if weighted else []
    for a in P:
        cons = base + _max_rows(a, P) + [ge(_sub(a, m), 1) for m in Q]
        if counter.feasible(LinSystem(dim, cons)):
            return _solve_row(cons, dim)
    return None


def rad_trivial_member(p: Pair) -> Verdict:
    """Membership in the radical of the trivial congruence by comparing
    Newton polytopes (B) or hats (Z_max, T_Q)."""
    ctx = p.ctx
    counter = _Counter()
    if p.lhs.is_zero or p.rhs.is_zero:
        if p.lhs.is_zero and p.rhs.is_zero:
            return Verdict(True, None, 0)
        return Verdict(False, SeparatingPrime(_spec_of(ctx, (), None, ctx.ambient)), 0)
    P, Q = poly_newt(p.lhs), poly_newt(p.rhs)
    if ctx.weighted:
        P, Q = hat_vertices(P), hat_vertices(Q)
    if P.vertices == Q.vertices:
        return Verdict(True, None, counter.n)
    dim = ctx.ambient
    for X, Y in ((P.vertices, Q.vertices), (Q.vertices, P.vertices)):
        u = _support_separator(X, Y, dim, ctx.weighted, counter)
        if u is not None:
            return Verdict(False, SeparatingPrime(_spec_of(ctx, (), u, dim)), counter.n)
    raise AssertionError("distinct hats without a separating row")


# ---------------------------------------------------------------------------
# separating primes of dimension <= 1
# ---------------------------------------------------------------------------


def _rad_branch(gens: Sequence[Pair], p: Pair, kill, positive_t: bool):
    """Search one kill set; returns (witness or None, lp calls)."""
    ctx = p.ctx
    counter = _Counter()
    pt = _point_fn(ctx, kill)
    gen_sides = []
    for g in gens:
        fv, gv = _survivors(g.lhs, kill, pt), _survivors(g.rhs, kill, pt)
        if bool(fv) != bool(gv):
            return None, counter.n  # no prime with this kill set contains g
        gen_sides.append((fv, gv))
    lv, rv = _survivors(p.lhs, kill, pt), _survivors(p.rhs, kill, pt)
    dim = ctx.k - len(kill) + (1 if ctx.weighted else 0)
    if not lv and not rv:
        return None, counter.n
    if bool(lv) != bool(rv):
        # the dimension-0 prime of this kill set contains every generator
        if not positive_t:
            return _spec_of(ctx, kill, None, dim), counter.n
        lv = lv or []
        rv = rv or []
    if dim == 0:
        return None, counter.n
    base = []
    if ctx.weighted:
        base.append(ge([1] + [0] * (dim - 1), 1 if positive_t else 0))
    # the probe's strict orientation comes first so partial systems prune
    for X, Y in ((lv, rv), (rv, lv)):
        for a in X:
            cons = base + _max_rows(a, X) + [ge(_sub(a, m), 1) for m in Y]
            if not X or not counter.feasible(LinSystem(dim, cons)):
                continue
            for full in _gen_assignments(gen_sides, dim, cons, counter):
                u = _solve_row(full, dim)
                return _spec_of(ctx, kill, u, dim), counter.n
    return None, counter.n


def _rad_branch_star(args):
    return _rad_branch(*args)


def _rad_search(E: CongPresentation, p: Pair, positive_t: bool, k_bound, jobs):
    if p.ctx != E.ctx:
        raise InputError(f"context mismatch: {p.ctx} vs {E.ctx}")
    _check_k(p.ctx, k_bound)
    kills = _kill_sets(p.ctx)
    tasks = [(E.generators, p, kill, positive_t) for kill in kills]
    total = 0
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_rad_branch_star, tasks))
        # the canonically least separating branch wins, whatever the schedule
        for spec, n in results:
            total += n
            if spec is not None:
                return Verdict(False, SeparatingPrime(spec), total)
        return Verdict(True, None, total)
    for t in tasks:
        spec, n = _rad_branch(*t)
        total += n
        if spec is not None:
            return Verdict(False, SeparatingPrime(spec), total)
    return Verdict(True, None, total)


def rad_member_fg(E: CongPresentation, p: Pair, k_bound: int = DEFAULT_K_BOUND,
                  jobs: int = 1) -> Verdict:
    """Decide ``p`` in the radical of the congruence generated by ``E``."""
    return _rad_search(E, p, False, k_bound, jobs)


def check_separating_prime(E: CongPresentation, p: Pair, w: SeparatingPrime) -> bool:
    """The witness prime contains every generator but not ``p``."""
    return (all(prime_member(w.spec, g) for g in E.generators)
            and not prime_member(w.spec, p))


# ---------------------------------------------------------------------------
# Nullstellensatz
# ---------------------------------------------------------------------------


def _require_tq(ctx: Context):
    if ctx.tag is not SemifieldTag.TQ:
        raise InputError(f"this decider works over TQ only, got {ctx.tag.value}")


def _affine(a, m):
    # value(a) - value(m) at t^d is (a_c - m_c) + (a_n - m_n).d
    diff = _sub(a, m)
    return diff[1:], -diff[0]


def _affine_gen_assignments(gen_sides, dim, base, counter):
    if not gen_sides:
        yield base
        return
    (fv, gv), rest = gen_sides[0], gen_sides[1:]
    if not fv and not gv:
        yield from _affine_gen_assignments(rest, dim, base, counter)
        return
    for a in fv:
        for b in gv:
            cons = list(base)
            for side, top in ((fv, a), (gv, b)):
                for m in side:
                    if m != top:
                        c, rhs = _affine(top, m)
                        cons.append(ge(c, rhs))
            c, rhs = _affine(a, b)
            cons.append(eq(c, rhs))
            if counter.feasible(LinSystem(dim, cons)):
                yield from _affine_gen_assignments(rest, dim, cons, counter)


def _null_branch(gens, p: Pair, stratum):
    ctx = p.ctx
    counter = _Counter()
    pt = _point_fn(ctx, stratum)
    gen_sides = []
    for g in gens:
        fv, gv = _survivors(g.lhs, stratum, pt), _survivors(g.rhs, stratum, pt)
        if bool(fv) != bool(gv):
            return None, counter.n  # V(E) misses this stratum
        gen_sides.append((fv, gv))
    lv, rv = _survivors(p.lhs, stratum, pt), _survivors(p.rhs, stratum, pt)
    if not lv and not rv:
        return None, counter.n
    dim = ctx.k - len(stratum)
    surv = [i for i in range(ctx.k) if i not in stratum]

    def point_of(d):
        a = [NEG_INF] * ctx.k
        for i, v in zip(surv, d):
            a[i] = v
        return tuple(a)

    for full in _affine_gen_assignments(gen_sides, dim, [], counter):
        if bool(lv) != bool(rv):
            d = lin_solve(LinSystem(dim, full))
            return point_of(d), counter.n
        # slack variable s is the last coordinate; maximise it, capped at 1
        ext = [ge(c.coeffs + (0,), c.bound) if c.relation == ">=" else eq(c.coeffs + (0,), c.bound)
               for c in full]
        for X, Y in ((lv, rv), (rv, lv)):
            for a in X:
                cons = list(ext)
                for m in X:
                    if m != a:
                        c, rhs = _affine(a, m)
                        cons.append(ge(tuple(c) + (0,), rhs))
                for m in Y:
                    c, rhs = _affine(a, m)
                    cons.append(ge(tuple(c) + (-1,), rhs))
                cons.append(ge((0,) * dim + (-1,), -1))
                res = counter.sup((0,) * dim + (1,), LinSystem(dim + 1, cons))
                if isinstance(res, Finite) and res.value > 0:
                    return point_of(res.witness[:dim]), counter.n
                assert not isinstance(res, Unbounded)
    return None, counter.n


def null_member(E: CongPresentation, p: Pair, k_bound: int = DEFAULT_K_BOUND) -> Verdict:
    """Decide whether ``p.lhs`` and ``p.rhs`` agree at every point of ``V(E)``."""
    if p.ctx != E.ctx:
        raise InputError(f"context mismatch: {p.ctx} vs {E.ctx}")
    _require_tq(p.ctx)
    _check_k(p.ctx, k_bound)
    total = 0
    for stratum in _kill_sets(p.ctx):
        a, n = _null_branch(E.generators, p, stratum)
        total += n
        if a is not None:
            return Verdict(False, SeparationPoint(a), total)
    return Verdict(True, None, total)


def check_separation_point(E: CongPresentation, p: Pair, w: SeparationPoint) -> bool:
    """The point lies in ``V(E)`` and separates ``p``."""
    a = w.point
    return (all(poly_eval(g.lhs, a) == poly_eval(g.rhs, a) for g in E.generators)
            and poly_eval(p.lhs, a) != poly_eval(p.rhs, a))


def default_epsilon(ctx: Context) -> Scalar:
    return Scalar(ctx.tag, 1)


def eplus_member(E: CongPresentation, p: Pair, epsilon: Scalar = None,
                 k_bound: int = DEFAULT_K_BOUND, jobs: int = 1) -> Verdict:
    """Decide ``p (1, eps)`` in the radical of ``E`` over the primes that do
    not contain ``(1, eps)``; these are the rows with positive t-entry."""
    ctx = p.ctx
    _require_tq(ctx)
    eps = default_epsilon(ctx) if epsilon is None else epsilon
    if eps.tag is not ctx.tag or eps.exp is None or eps.exp == 0:
        raise InputError("epsilon must be a TQ scalar other than 0 and 1")
    q = twisted_mul(p, Pair(one(ctx), monomial(ctx, (0,) * ctx.k, eps.exp)))
    return _rad_search(E, q, True, k_bound, jobs)


# ---------------------------------------------------------------------------
# generalized-power witnesses for the trivial congruence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NotFoundWithinBounds:
    tried: int


def gp_witness_verify(p: Pair, w: GpWitness) -> bool:
    return gp_element(p, w).diagonal


def _monomials(ctx: Context, deg: int):
    rng = range(-deg, deg + 1) if ctx.laurent else range(deg + 1)
    out = [e for e in itertools.product(rng, repeat=ctx.k) if sum(abs(v) for v in e) <= deg]
    out.sort(key=lambda e: (sum(abs(v) for v in e), e))
    return [monomial(ctx, e) for e in out]


def _c_candidates(p: Pair, deg_cap: int, max_pow: int):
    ctx = p.ctx
    s = poly_add(p.lhs, p.rhs)
    seen = {}

    def add(c):
        if c not in seen:
            seen[c] = True

    add(zero(ctx))
    monos = _monomials(ctx, deg_cap)
    for m in monos:
        add(m)
    spow = one(ctx)
    for _ in range(max_pow + 1):
        for m in monos:
            c = poly_mul(m, spow)
            if c.degree() <= deg_cap + s.degree() * max_pow:
                add(c)
        spow = poly_mul(spow, s)
    singles = list(seen)
    for a, b in itertools.combinations(singles[1:], 2):
        add(poly_add(a, b))
    return list(seen)


def gp_witness_search(p: Pair, bound: int = 4, deg_cap: int = 2, min_lpow: int = 0,
                      max_c: int = 400):
    """Enumerate generalized powers of ``p`` until one is diagonal.

    Exponent pairs are tried by increasing ``kpow + lpow`` (then by ``kpow``);
    for each pair ``c`` runs over 0, monomials, products of monomials with
    powers of ``lhs + rhs``, and sums of two such terms. A miss is not a
    proof of non-membership.
    """
    cands = _c_candidates(p, deg_cap, bound)[:max_c]
    tried = 0
    for total in range(bound + 1):
        for kpow in range(total + 1):
            lpow = total - kpow
            if lpow < min_lpow:
                continue
            for c in cands:
                tried += 1
                w = GpWitness(kpow, lpow, c)
                if gp_witness_verify(p, w):
                    return w
    return NotFoundWithinBounds(tried)


def gp_witness_normalize(p: Pair, i: int, j: int, h: TropPoly) -> GpWitness:
    """Turn an ``(i, j, h)`` generalized power into one with ``lpow = 1``:
    ``(i + j - 1, 1, h (lhs + rhs)^(j - 1))``."""
    if j < 1:
        raise InputError("normalization needs j >= 1")
    if h.ctx != p.ctx:
        raise InputError(f"context mismatch: {h.ctx} vs {p.ctx}")
    s = poly_add(p.lhs, p.rhs)
    c = h
    for _ in range(j - 1):
        c = poly_mul(c, s)
    return GpWitness(i + j - 1, 1, c)
