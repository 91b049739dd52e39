import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from _strategies import points as eval_points, polys
from tropcong.errors import InputError
from tropcong.polytope import (Polytope, hat_eq, hat_vertices, hull_vertices, poly_newt,
                               polytope_add, polytope_from_json, polytope_mul, polytope_svg,
                               polytope_to_json)
from tropcong.tropoly import Context, TropPoly, parse_poly, poly_add, poly_eval, poly_mul

B2 = Context("B", 2)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def monotone_chain(pts):
    """Textbook planar hull, dropping collinear points."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return sorted(set(lower[:-1] + upper[:-1]))


pt2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


@given(st.lists(pt2, min_size=1, max_size=12))
def test_planar_hull_matches_monotone_chain(pts):
    want = [tuple(Fraction(v) for v in p) for p in monotone_chain(pts)]
    assert list(hull_vertices(pts, 2).vertices) == want


pt3 = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
dirs3 = st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))


@given(st.lists(pt3, min_size=1, max_size=10), st.lists(dirs3, min_size=1, max_size=5))
def test_hull_preserves_support_function(pts, dirs):
    V = hull_vertices(pts, 3).vertices
    assert set(V) <= {tuple(Fraction(v) for v in p) for p in pts}
    for u in dirs:
        f = lambda p: sum(a * b for a, b in zip(u, p))
        assert max(map(f, V)) == max(map(f, pts))


def test_hull_examples():
    square = [(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0)]
    assert hull_vertices(square, 2).vertices == tuple(
        tuple(map(Fraction, p)) for p in [(0, 0), (0, 2), (2, 0), (2, 2)])
    assert hull_vertices([(1, 1), (1, 1)], 2).vertices == ((1, 1),)
    assert hull_vertices([], 2).is_empty
    with pytest.raises(InputError):
        hull_vertices([])
    with pytest.raises(InputError):
        hull_vertices([(0,), (0, 1)])


def test_newton_polytope_of_example():
    f = parse_poly("x^2 + x*y + y^2", B2)
    g = parse_poly("x^2 + y^2", B2)
    assert poly_newt(f) == poly_newt(g)
    assert poly_newt(parse_poly("x*y", B2)).vertices == ((1, 1),)


@given(st.data())
def test_newt_homomorphism_over_boolean(data):
    ctx = Context("B", data.draw(st.integers(1, 3)))
    f, g = data.draw(polys(ctx, 5, 3)), data.draw(polys(ctx, 5, 3))
    assert poly_newt(poly_add(f, g)) == polytope_add(poly_newt(f), poly_newt(g))
    assert poly_newt(poly_mul(f, g)) == polytope_mul(poly_newt(f), poly_newt(g))


@given(st.data())
def test_hat_homomorphism_over_weighted(data):
    # merging equal exponents drops the smaller coefficient, so only hats agree
    ctx = Context(data.draw(st.sampled_from(["Zmax", "TQ"])), data.draw(st.integers(1, 2)))
    f, g = data.draw(polys(ctx, 4, 2)), data.draw(polys(ctx, 4, 2))
    assert hat_eq(poly_newt(poly_add(f, g)), polytope_add(poly_newt(f), poly_newt(g)))
    assert hat_eq(poly_newt(poly_mul(f, g)), polytope_mul(poly_newt(f), poly_newt(g)))


def test_weighted_newt_is_not_a_homomorphism():
    ctx = Context("Zmax", 1)
    f, g = parse_poly("x", ctx), parse_poly("t^-1*x", ctx)
    # {(0,1)} vs hull{(0,1),(-1,1)}: the formal sum forgets the lower coefficient
    assert poly_newt(poly_add(f, g)) != polytope_add(poly_newt(f), poly_newt(g))
    assert hat_eq(poly_newt(poly_add(f, g)), polytope_add(poly_newt(f), poly_newt(g)))


def _hat_poly(f):
    H = hat_vertices(poly_newt(f))
    return TropPoly.from_terms(f.ctx, [(tuple(int(v) for v in p[1:]), p[0]) for p in H.vertices])


@given(st.data())
def test_hat_determines_the_function(data):
    ctx = Context(data.draw(st.sampled_from(["Zmax", "TQ"])), data.draw(st.integers(1, 3)))
    f = data.draw(polys(ctx, 6, 3))
    h = _hat_poly(f)
    for _ in range(5):
        a = data.draw(eval_points(ctx, allow_neg_inf=False))
        assert poly_eval(f, a) == poly_eval(h, a)


def test_hat_examples():
    ctx = Context("TQ", 1)
    f = parse_poly("1 + t^-5*x + x^2", ctx)
    # (−5,1) lies below the segment from (0,0) to (0,2)
    assert hat_vertices(poly_newt(f)).vertices == ((0, 0), (0, 2))
    # max(0, a, 2a) = max(0, 2a): the middle term is not a vertex
    assert hat_eq(poly_newt(f), poly_newt(parse_poly("1 + x + x^2", ctx)))
    assert not hat_eq(poly_newt(f), poly_newt(parse_poly("1 + t*x + x^2", ctx)))


def test_random_hat_inequality_shows_up_in_values():
    # if hats differ, some point separates the functions
    rng = random.Random(3)
    ctx = Context("TQ", 1)
    for _ in range(40):
        f = TropPoly.from_terms(ctx, [((rng.randint(0, 3),), rng.randint(-2, 2)) for _ in range(3)])
        g = TropPoly.from_terms(ctx, [((rng.randint(0, 3),), rng.randint(-2, 2)) for _ in range(3)])
        same = hat_eq(poly_newt(f), poly_newt(g))
        # slopes are integers in 0..3, so breakpoints are multiples of 1/6 within [-5, 5]
        agree = all(poly_eval(f, [Fraction(a, 12)]) == poly_eval(g, [Fraction(a, 12)])
                    for a in range(-120, 121))
        assert same == agree


def test_json_and_svg():
    P = poly_newt(parse_poly("1 + x + y^2", B2))
    assert polytope_from_json(polytope_to_json(P)) == P
    svg = polytope_svg(P)
    assert svg.startswith("<svg") and "polygon" in svg and "(0,2)" in svg
    with pytest.raises(InputError):
        polytope_svg(Polytope(3, ()))
    with pytest.raises(InputError):
        polytope_add(P, Polytope(3, ()))


def test_listed_polytope_cases():
    tri = hull_vertices([(0, 0), (2, 0), (0, 2), (1, 1)], 2)
    assert tri.vertices == ((0, 0), (0, 2), (2, 0))
    assert poly_newt(parse_poly("0", B2)).is_empty
    seg = hull_vertices([(0, 0), (1, 0)], 2)
    pt = hull_vertices([(0, 1)], 2)
    assert len(polytope_add(seg, pt).vertices) == 3
    assert polytope_mul(seg, hull_vertices([(0, 0), (0, 1)], 2)).vertices == (
        (0, 0), (0, 1), (1, 0), (1, 1))
    empty = Polytope(2, ())
    assert polytope_add(seg, empty) == seg and polytope_mul(seg, empty).is_empty
    assert polytope_mul(seg, hull_vertices([(0, 0)], 2)) == seg
    assert hat_vertices(hull_vertices([(0, 0), (1, 1), (0, 1)], 2)).vertices == ((0, 0), (1, 1))
    assert hat_vertices(hull_vertices([(0, 0), (1, 0)], 2)).vertices == ((1, 0),)
    tq = Context("TQ", 1)
    assert hat_eq(poly_newt(parse_poly("1 + t*x", tq)), poly_newt(parse_poly("1 + t*x + x", tq)))


polytopes2 = st.lists(pt2, max_size=5).map(lambda ps: hull_vertices(ps, 2))


@given(polytopes2, polytopes2, polytopes2)
def test_polytopes_form_an_idempotent_semiring(P, Q, R):
    assert P + Q == Q + P and P * Q == Q * P
    assert (P + Q) + R == P + (Q + R)
    assert (P * Q) * R == P * (Q * R)
    assert P * (Q + R) == P * Q + P * R
    assert P + P == P
    assert hull_vertices(P.vertices, 2) == P
