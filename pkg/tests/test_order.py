import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropcong.errors import InputError
from tropcong.order import (OrderMatrix, PrimeSpec, canonicalize, collapse_weights, dimension,
                            identity, is_minimal, make_spec, phi, prime_chain, prime_member,
                            spec_from_json, spec_to_json, validate)
from tropcong.pairalg import Pair
from tropcong.randgen import random_matrix, random_pair, random_spec
from tropcong.tropoly import Context, parse_poly, poly_mul

B2 = Context("B", 2)
Z1 = Context("Zmax", 1)


def P(ctx, a, b):
    return Pair(parse_poly(a, ctx), parse_poly(b, ctx))


def test_validation():
    assert validate(make_spec(B2, [[1, 0], [0, 1]])) == (True, [])
    ok, probs = validate(make_spec(B2, [[1, 2], [2, 4]]))
    assert not ok and "dependent" in probs[0]
    ok, probs = validate(make_spec(Context("Zmax", 1), [[-1, 0]]))
    assert not ok and "t-column" in probs[0]
    ok, probs = validate(make_spec(Context("B", 2, True), [[1]], kill=[0]))
    assert not ok and "Laurent" in probs[0]
    ok, probs = validate(make_spec(B2, [[1, 0], [0, 1], [1, 1]]))
    assert not ok
    with pytest.raises(InputError):
        prime_member(make_spec(B2, [[1, 2], [2, 4]]), P(B2, "x", "y"))


def test_phi():
    assert phi(identity(2), (1, 2)) == (1, 2)
    assert phi(OrderMatrix.of([[1, 2]], "Zmax"), (1, 2)) == (5,)
    with pytest.raises(InputError):
        phi(identity(2), (1,))


def test_membership_examples():
    lex = make_spec(B2, [[1, 0], [0, 1]])
    assert prime_member(lex, P(B2, "x + y^2", "x"))
    assert not prime_member(lex, P(B2, "x + y", "y"))
    assert prime_member(make_spec(Z1, [[1, 2]]), P(Z1, "1 + t*x", "t*x"))
    killed = make_spec(B2, [[1]], kill=[1])
    assert prime_member(killed, P(B2, "x + y", "x"))
    assert prime_member(killed, P(B2, "y", "0"))


def test_chain_and_dimension():
    lex = make_spec(B2, [[1, 0], [0, 1]])
    chain, seps = prime_chain(lex)
    assert [s.U.nrows for s in chain] == [2, 1, 0]
    assert len(seps) == 2
    for i, sep in enumerate(seps):
        assert prime_member(chain[i + 1], sep) and not prime_member(chain[i], sep)
    assert dimension(lex) == 2
    assert dimension(PrimeSpec(B2, OrderMatrix((), 2))) == 0
    one_row = make_spec(B2, [[1, 1]])
    assert len(prime_chain(one_row)[0]) == 2 and dimension(one_row) == 1


def test_minimality():
    assert is_minimal(make_spec(B2, [[1, 0], [0, 1]]))
    assert not is_minimal(make_spec(B2, [[1, 1]]))
    assert is_minimal(make_spec(Context("TQ", 1), [[1, Fraction(3, 7)], [0, 1]]))
    assert not is_minimal(make_spec(B2, [[1]], kill=[0]))


def test_canonical_forms():
    assert canonicalize(OrderMatrix.of([[2, 0], [1, 1]])).rows == ((1, 0), (0, 1))
    assert canonicalize(OrderMatrix.of([[1, 1], [1, 0]])).rows == ((1, 1), (1, -1))
    U = OrderMatrix.of([[1, 1], [1, -1]])
    assert canonicalize(U) == U
    with pytest.raises(InputError):
        canonicalize(OrderMatrix.of([[1, 1], [2, 2]]))


def _lex_sign(U, v):
    w = U.apply(v)
    return next((1 if x > 0 else -1 for x in w if x != 0), 0)


@given(st.data())
def test_canonical_form_keeps_the_ordering(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    n = data.draw(st.integers(1, 3))
    r = data.draw(st.integers(1, n))
    U = OrderMatrix.of(random_matrix(rng, r, n))
    C = canonicalize(U)
    assert canonicalize(C) == C
    for i in range(C.nrows):
        for j in range(i):
            assert sum(a * b for a, b in zip(C.rows[i], C.rows[j])) == 0
    for _ in range(20):
        v = [rng.randint(-4, 4) for _ in range(n)]
        assert _lex_sign(U, v) == _lex_sign(C, v)


def test_canonical_form_keeps_membership(rng):
    ctx = Context("B", 2)
    spec = make_spec(ctx, [[2, 0], [1, 1]])
    canon = PrimeSpec(ctx, canonicalize(spec.U))
    for _ in range(200):
        p = random_pair(rng, ctx)
        assert prime_member(spec, p) == prime_member(canon, p)


def test_collapse_examples():
    lex = make_spec(B2, [[1, 0], [0, 1]])
    one_row, w = collapse_weights(lex, [P(B2, "x + y", "x")])
    assert w == (2, 1) and one_row.U.rows == ((2, 1),)
    assert collapse_weights(lex, [])[1] == (1, 1)


@pytest.mark.parametrize("tag", ["B", "Zmax", "TQ"])
def test_prime_is_a_congruence(tag, rng):
    ctx = Context(tag, 2)
    for _ in range(15):
        spec = random_spec(rng, ctx, kill=rng.choice([(), (0,)]))
        ps = [random_pair(rng, ctx, 3, 2) for _ in range(12)]
        f = parse_poly("x + 1", ctx)
        for a in ps:
            assert prime_member(spec, Pair(a.lhs, a.lhs))
            assert prime_member(spec, a) == prime_member(spec, a.swap())
            if prime_member(spec, a):
                assert prime_member(spec, Pair(poly_mul(f, a.lhs), poly_mul(f, a.rhs)))
                for b in ps:
                    if prime_member(spec, b):
                        assert prime_member(spec, a + b)
                        assert prime_member(spec, a * b)
                        if a.rhs == b.lhs:
                            assert prime_member(spec, Pair(a.lhs, b.rhs))


@pytest.mark.parametrize("tag", ["B", "Zmax", "TQ"])
def test_prime_quotient_is_cancellative(tag, rng):
    # primes are those congruences for which the twisted product leaves no zero divisors
    ctx = Context(tag, 2)
    for _ in range(15):
        spec = random_spec(rng, ctx)
        for _ in range(20):
            a, b = random_pair(rng, ctx, 3, 2), random_pair(rng, ctx, 3, 2)
            if prime_member(spec, a * b):
                assert prime_member(spec, a) or prime_member(spec, b)


def test_json_roundtrip():
    ctx = Context("TQ", 3)
    spec = make_spec(ctx, [[1, Fraction(1, 2), 0]], kill=[1])
    doc = spec_to_json(spec)
    assert doc["kill"] == [2]
    assert spec_from_json(doc, ctx) == spec
    with pytest.raises(InputError):
        spec_from_json({"kill": [0]}, ctx)
    with pytest.raises(InputError):
        spec_from_json({"kill": ["a"]}, ctx)
