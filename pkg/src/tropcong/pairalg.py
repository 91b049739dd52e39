"""Pairs of polynomials under the twisted product.

A pair ``(a, b)`` stands for the formal difference ``a - b``: the twisted
product ``(a, b)(c, d) = (ac + bd, ad + bc)`` mimics ``(a - b)(c - d)``.
This module also builds generalized powers and offers a bounded,
sound-but-incomplete search for membership in a finitely generated
congruence.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Tuple

from .errors import InputError
from .tropoly import (Context, TropPoly, _same_ctx, monomial, one, poly_add,
                      poly_from_json, poly_mul, poly_to_json, zero)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Pair:
    lhs: TropPoly
    rhs: TropPoly

    def __post_init__(self):
        _same_ctx(self.lhs, self.rhs)

    @property
    def ctx(self) -> Context:
        return self.lhs.ctx

    @property
    def diagonal(self) -> bool:
        return self.lhs == self.rhs

    def swap(self) -> "Pair":
        return Pair(self.rhs, self.lhs)

    def __mul__(self, other):
        return twisted_mul(self, other)

    def __add__(self, other):
        return pair_add(self, other)

    def __str__(self):
        return f"({self.lhs}, {self.rhs})"


def unit_pair(ctx: Context) -> Pair:
    return Pair(one(ctx), zero(ctx))


def elem_pair(f: TropPoly) -> Pair:
    """The pair ``(f, 0)``."""
    return Pair(f, zero(f.ctx))


def _check(a: Pair, b: Pair):
    if a.ctx != b.ctx:
        raise InputError(f"context mismatch: {a.ctx} vs {b.ctx}")


def pair_add(a: Pair, b: Pair) -> Pair:
    _check(a, b)
    return Pair(poly_add(a.lhs, b.lhs), poly_add(a.rhs, b.rhs))


def scale(f: TropPoly, a: Pair) -> Pair:
    """``(f a1, f a2)``, which equals ``(f, 0) a``."""
    return Pair(poly_mul(f, a.lhs), poly_mul(f, a.rhs))


def twisted_mul(a: Pair, b: Pair) -> Pair:
    _check(a, b)
    return Pair(poly_add(poly_mul(a.lhs, b.lhs), poly_mul(a.rhs, b.rhs)),
                poly_add(poly_mul(a.lhs, b.rhs), poly_mul(a.rhs, b.lhs)))


def twisted_pow(a: Pair, n: int) -> Pair:
    if n < 0:
        raise InputError("negative power")
    out = unit_pair(a.ctx)
    base = a
    while n:
        if n & 1:
            out = twisted_mul(out, base)
        n >>= 1
        if n:
            base = twisted_mul(base, base)
    return out


def star(a: Pair) -> Pair:
    return Pair(poly_add(a.lhs, a.rhs), zero(a.ctx))


@dataclass(frozen=True)
class GpWitness:
    kpow: int
    lpow: int
    c: TropPoly

    def __post_init__(self):
        for v in (self.kpow, self.lpow):
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise InputError(f"witness powers must be natural numbers, got {v!r}")


def gp_element(a: Pair, w: GpWitness) -> Pair:
    """The generalized power ``((a*)^k + (c, 0)) a^l``."""
    if w.c.ctx != a.ctx:
        raise InputError(f"context mismatch: {w.c.ctx} vs {a.ctx}")
    s = poly_add(a.lhs, a.rhs)
    coef = one(a.ctx)
    for _ in range(w.kpow):
        coef = poly_mul(coef, s)
    # (a*)^k + (c, 0) = (s^k + c, 0), and (f, 0) b is a scaling
    return scale(poly_add(coef, w.c), twisted_pow(a, w.lpow))


@dataclass(frozen=True)
class CongPresentation:
    ctx: Context
    generators: Tuple[Pair, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        for g in self.generators:
            if g.ctx != self.ctx:
                raise InputError(f"generator context {g.ctx} differs from {self.ctx}")


# ---------------------------------------------------------------------------
# bounded closure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Yes:
    steps: int = 0


@dataclass(frozen=True)
class Unknown:
    reason: str = ""


def _leq(f: TropPoly, h: dict) -> bool:
    # f <= h formally: every term of f is dominated by h at the same exponent
    for e, c in f.terms:
        d = h.get(e)
        if d is None or c > d:
            return False
    return True


def _multipliers(a: TropPoly, h: TropPoly):
    """Monomials ``m`` with ``m a <= h`` that touch ``h`` in some term."""
    hd = h.as_dict()
    out = {}
    for ea, ca in a.terms:
        for eh, ch in h.terms:
            e = tuple(x - y for x, y in zip(eh, ea))
            if not h.laurent and min(e, default=0) < 0:
                continue
            m = monomial(h.ctx, e, ch - ca)
            if m not in out and _leq(poly_mul(m, a), hd):
                out[m] = True
    return list(out)


def _free_multipliers(b: TropPoly, h: TropPoly, bound: int):
    """Monomials ``m`` for the move ``h -> h + m b`` (generator side 0).

    Any ``m`` is allowed; we use every exponent within the degree bound,
    with the coefficient that makes ``m b`` reach the top coefficient of ``h``.
    """
    ctx = h.ctx
    top = max((c for _, c in h.terms), default=0)
    lead = max(c for _, c in b.terms)
    rng = range(-bound, bound + 1) if ctx.laurent else range(bound + 1)
    room = bound - b.degree()
    for e in itertools.product(rng, repeat=ctx.k):
        if sum(abs(v) for v in e) <= room:
            yield monomial(ctx, e, top - lead)


def _moves(h: TropPoly, gens, bound, subset_cap=3):
    for a, b in gens:
        if a.is_zero:
            for m in _free_multipliers(b, h, bound):
                new = poly_add(h, poly_mul(m, b))
                if new != h:
                    yield new
            continue
        for m in _multipliers(a, h):
            ma = poly_mul(m, a).as_dict()
            mb = poly_mul(m, b)
            # terms of h strictly above m a must stay; equal ones may go
            keep = [(e, c) for e, c in h.terms if ma.get(e) is None or ma[e] < c]
            loose = [(e, c) for e, c in h.terms if ma.get(e) == c]
            if len(loose) <= subset_cap:
                choices = itertools.chain.from_iterable(
                    itertools.combinations(loose, r) for r in range(len(loose) + 1))
            else:
                choices = [(), tuple(loose)]
            for t in choices:
                new = TropPoly.from_terms(h.ctx, keep + list(t) + list(mb.terms))
                if new.degree() <= bound and new != h:
                    yield new


def _single_kernel_member(gen: TropPoly, q: Pair, bound: int) -> bool:
    """``q`` lies in the congruence generated by ``(gen, 0)``: there is ``r`` with
    ``q1 + r gen = q2 + r gen``. Enlarging ``r`` only helps, so ``r`` is taken
    as every monomial of degree at most ``bound`` with a dominating coefficient."""
    ctx = q.ctx
    if gen.is_zero:
        return q.diagonal
    covered = set()
    rng = range(-bound, bound + 1) if ctx.laurent else range(bound + 1)
    for e in itertools.product(rng, repeat=ctx.k):
        if sum(abs(v) for v in e) > bound:
            continue
        for eg, _ in gen.terms:
            covered.add(tuple(x + y for x, y in zip(e, eg)))
    l, r = q.lhs.as_dict(), q.rhs.as_dict()
    for e in set(l) | set(r):
        if e not in covered and l.get(e) != r.get(e):
            return False
    return True


def bounded_closure_member(E: CongPresentation, q: Pair, degree_bound: int,
                           max_states: int = 3000):
    """Search for ``q`` in the congruence generated by ``E``.

    States are polynomials reachable from ``q.lhs`` by elementary moves
    ``s + m a -> s + m b`` with ``(a, b)`` a generator in either orientation
    and ``m`` a monomial, keeping total degree within ``degree_bound``.
    Both ends are searched at once. Returns :class:`Yes` when they meet and :class:`Unknown`
    otherwise; never claims non-membership.
    """
    if q.ctx != E.ctx:
        raise InputError(f"context mismatch: {q.ctx} vs {E.ctx}")
    if q.diagonal:
        return Yes(0)
    gens = list(E.generators)
    if len(gens) == 1 and (gens[0].lhs.is_zero or gens[0].rhs.is_zero):
        g = gens[0].lhs if gens[0].rhs.is_zero else gens[0].rhs
        if _single_kernel_member(g, q, degree_bound):
            return Yes(1)
        return Unknown("single kernel generator: no multiplier within the degree bound")
    oriented = [(g.lhs, g.rhs) for g in gens] + [(g.rhs, g.lhs) for g in gens]
    # grow both ends: a move may be visible from one side only, when the
    # other side hides m a under larger terms
    sides = ({q.lhs: 0}, {q.rhs: 0})
    queues = (deque([q.lhs]), deque([q.rhs]))
    turn = 0
    while queues[0] or queues[1]:
        if not queues[turn]:
            turn = 1 - turn
        seen, other = sides[turn], sides[1 - turn]
        h = queues[turn].popleft()
        depth = seen[h]
        for new in _moves(h, oriented, degree_bound):
            if new in other:
                return Yes(depth + 1 + other[new])
            if new not in seen:
                if len(sides[0]) + len(sides[1]) >= max_states:
                    log.debug("closure search hit %d states", max_states)
                    return Unknown(f"state cap {max_states} reached")
                seen[new] = depth + 1
                queues[turn].append(new)
        turn = 1 - turn
    return Unknown("closed class within the degree bound does not contain the target")


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------


def pair_to_json(p: Pair, with_context=True) -> dict:
    return {"lhs": poly_to_json(p.lhs, with_context), "rhs": poly_to_json(p.rhs, with_context)}


def pair_from_json(doc, default: Context = None) -> Pair:
    if isinstance(doc, list) and len(doc) == 2:
        doc = {"lhs": doc[0], "rhs": doc[1]}
    if not isinstance(doc, dict) or "lhs" not in doc or "rhs" not in doc:
        raise InputError("pair document needs 'lhs' and 'rhs'")
    lhs = poly_from_json(doc["lhs"], default)
    rhs = poly_from_json(doc["rhs"], default or lhs.ctx)
    return Pair(lhs, rhs)


def presentation_from_json(doc, ctx: Context) -> CongPresentation:
    gens = doc.get("generators", []) if isinstance(doc, dict) else doc
    if not isinstance(gens, list):
        raise InputError("'generators' must be a list of pairs")
    return CongPresentation(ctx, tuple(pair_from_json(g, ctx) for g in gens))


def witness_to_json(w: GpWitness) -> dict:
    return {"kpow": w.kpow, "lpow": w.lpow, "c": poly_to_json(w.c, False)}


def witness_from_json(doc, ctx: Context) -> GpWitness:
    if not isinstance(doc, dict):
        raise InputError("witness document must be an object")
    try:
        c = doc.get("c", "0")
        return GpWitness(doc["kpow"], doc["lpow"], poly_from_json(c, ctx))
    except KeyError as err:
        raise InputError(f"witness lacks {err.args[0]!r}") from None
