import random
import time

import pytest
from hypothesis import given, strategies as st

from _strategies import ctx_and, polys
from tropcong.errors import InputError
from tropcong.pairalg import (CongPresentation, GpWitness, Pair, Unknown, Yes,
                              bounded_closure_member, elem_pair, gp_element, pair_add,
                              pair_from_json, pair_to_json, presentation_from_json, scale, star,
                              twisted_mul, twisted_pow, unit_pair, witness_from_json,
                              witness_to_json)
from tropcong.randgen import random_pair, random_poly
from tropcong.tropoly import (Context, monomial, parse_poly, poly_add, poly_eval, poly_mul,
                              variable, zero)

B2 = Context("B", 2)
B3 = Context("B", 3)


def P(ctx, a, b):
    return Pair(parse_poly(a, ctx), parse_poly(b, ctx))


def test_twisted_product_of_binomials():
    out = twisted_mul(P(B2, "x+y", "x"), P(B2, "x+y", "y"))
    expect = parse_poly("x^2 + x*y + y^2", B2)
    assert out.lhs == expect and out.rhs == expect


def test_powers_and_star():
    a = P(B2, "x", "y")
    assert twisted_pow(a, 2) == P(B2, "x^2 + y^2", "x*y")
    assert twisted_pow(a, 0) == unit_pair(B2)
    assert twisted_pow(a, 3) == twisted_mul(a, twisted_pow(a, 2))
    assert star(a) == elem_pair(parse_poly("x + y", B2))
    with pytest.raises(InputError):
        twisted_pow(a, -1)


def test_gp_element():
    a = P(B2, "x", "y")
    w = GpWitness(1, 2, parse_poly("x*y", B2))
    left = scale(poly_add(parse_poly("x+y", B2), parse_poly("x*y", B2)), twisted_pow(a, 2))
    assert gp_element(a, w) == left
    assert gp_element(a, GpWitness(0, 0, zero(B2))) == unit_pair(B2)
    with pytest.raises(InputError):
        GpWitness(-1, 0, zero(B2))


def _pp(ctx):
    return st.tuples(polys(ctx, 3, 2), polys(ctx, 3, 2)).map(lambda t: Pair(*t))


@given(ctx_and(_pp, _pp, _pp, max_k=2))
def test_twisted_algebra_laws(data):
    ctx, a, b, c = data
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * unit_pair(ctx) == a
    assert a.swap() * b == (a * b).swap()
    # the star map is multiplicative up to the quotient: (ab)* = a* b*
    assert star(a * b) == star(a) * star(b)


@given(ctx_and(_pp, polys, max_k=2))
def test_scaling_is_multiplication_by_elem_pair(data):
    ctx, a, f = data
    assert scale(f, a) == twisted_mul(elem_pair(f), a)


def test_closure_examples():
    E = CongPresentation(B2, (P(B2, "x", "0"),))
    assert isinstance(bounded_closure_member(E, P(B2, "y + x", "y"), 4), Yes)
    assert isinstance(bounded_closure_member(E, P(B2, "y", "1"), 4), Unknown)
    E = CongPresentation(B2, (P(B2, "x", "y"),))
    assert isinstance(bounded_closure_member(E, P(B2, "x^2 + y", "x*y + y"), 4), Yes)
    assert bounded_closure_member(E, P(B2, "x", "x"), 1) == Yes(0)


def test_closure_reports_unknown_on_radical_example():
    x, y, z = (variable(B3, i) for i in range(3))
    E = CongPresentation(B3, (twisted_pow(Pair(x, y), 2), twisted_pow(Pair(y, z), 2)))
    for m in range(1, 7):
        t0 = time.perf_counter()
        assert isinstance(bounded_closure_member(E, twisted_pow(Pair(x, z), m), 12), Unknown)
        assert time.perf_counter() - t0 < 5


def _one_move(rng, ctx, gen):
    s = random_poly(rng, ctx, 3, 2, allow_zero=True)
    m = monomial(ctx, [rng.randint(0, 1) for _ in range(ctx.k)],
                 0 if not ctx.weighted else rng.randint(-1, 1))
    return Pair(poly_add(s, poly_mul(m, gen.lhs)), poly_add(s, poly_mul(m, gen.rhs)))


@pytest.mark.parametrize("tag", ["B", "Zmax", "TQ"])
def test_closure_finds_constructed_members(tag):
    rng = random.Random(5)
    ctx = Context(tag, 2)
    for _ in range(30):
        g = random_pair(rng, ctx, 2, 2)
        q = _one_move(rng, ctx, g)
        if rng.random() < 0.5:
            q = q.swap()
        res = bounded_closure_member(CongPresentation(ctx, (g,)), q, 6)
        assert isinstance(res, Yes), (g, q)


@pytest.mark.parametrize("tag", ["B", "Zmax"])
def test_closure_yes_is_sound_under_evaluation(tag):
    # evaluation at a point of V(E) is a semiring map, so it must identify q
    rng = random.Random(11)
    ctx = Context(tag, 2)
    grid = [(a, b) for a in range(-3, 4) for b in range(-3, 4)] + [("-inf", 0), (0, "-inf")]
    if tag == "B":
        grid = [(0, 0), ("-inf", 0), (0, "-inf"), ("-inf", "-inf")]
    for _ in range(40):
        gens = tuple(random_pair(rng, ctx, 2, 2) for _ in range(rng.randint(1, 2)))
        q = random_pair(rng, ctx, 3, 2) if rng.random() < 0.5 else _one_move(rng, ctx, gens[0])
        res = bounded_closure_member(CongPresentation(ctx, gens), q, 5, max_states=500)
        if not isinstance(res, Yes):
            continue
        for a in grid:
            if all(poly_eval(g.lhs, a) == poly_eval(g.rhs, a) for g in gens):
                assert poly_eval(q.lhs, a) == poly_eval(q.rhs, a)


def test_json_forms():
    p = P(B2, "x + 1", "y")
    assert pair_from_json(pair_to_json(p)) == p
    assert pair_from_json(["x + 1", "y"], B2) == p
    E = presentation_from_json({"generators": [["x", "y"]]}, B2)
    assert E.generators == (P(B2, "x", "y"),)
    w = GpWitness(2, 1, parse_poly("x", B2))
    assert witness_from_json(witness_to_json(w), B2) == w
    with pytest.raises(InputError):
        pair_from_json({"lhs": "x"}, B2)
    with pytest.raises(InputError):
        witness_from_json({"kpow": 1}, B2)
    with pytest.raises(InputError):
        pair_add(p, P(B3, "x", "y"))
