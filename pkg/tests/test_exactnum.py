from fractions import Fraction
import itertools

import pytest
from hypothesis import given, strategies as st

from tropcong.errors import InputError
from tropcong.exactnum import (Finite, Infeasible, LinSystem, Unbounded, dot, eq, ge,
                               lin_feasible, lin_solve, lin_sup, nullspace, primitive, rank,
                               rat, rat_str, rref)


def test_rat_parsing():
    assert rat("3/6") == Fraction(1, 2)
    assert rat(" -4 ") == -4
    assert rat_str(Fraction(-3, 9)) == "-1/3"
    assert rat_str(Fraction(5)) == "5"
    with pytest.raises(InputError):
        rat("1.5e")
    with pytest.raises(InputError):
        rat(0.5)


def test_small_systems():
    # x >= 1, y >= 1, x + y <= 1 is empty
    s = LinSystem(2, [ge([1, 0], 1), ge([0, 1], 1), ge([-1, -1], -1)])
    assert not lin_feasible(s)
    assert lin_solve(s) is None
    s = LinSystem(2, [ge([1, 0], 1), ge([0, 1], 1), ge([-1, -1], -3)])
    x = lin_solve(s)
    assert s.holds(x)
    assert lin_sup([1, 1], s) == Finite(Fraction(3), lin_sup([1, 1], s).witness)
    assert isinstance(lin_sup([1, -1], LinSystem(2, [ge([1, 0], 0)])), Unbounded)
    assert isinstance(lin_sup([1], LinSystem(1, [ge([1], 2), ge([-1], -1)])), Infeasible)


def test_equalities_and_zero_dim():
    s = LinSystem(2, [eq([1, 1], Fraction(1, 3)), eq([1, -1], 0)])
    assert lin_solve(s) == (Fraction(1, 6), Fraction(1, 6))
    assert lin_feasible(LinSystem(0, [ge([], -1)]))
    assert not lin_feasible(LinSystem(0, [ge([], 1)]))


def test_dimension_mismatch():
    with pytest.raises(InputError):
        LinSystem(2, [ge([1], 0)])
    with pytest.raises(InputError):
        lin_sup([1, 2], LinSystem(1))


coef = st.integers(-4, 4)
constraint2 = st.tuples(coef, coef, st.integers(-6, 6))


def _vertices_sup(obj, cons):
    """Brute force over pairwise intersections of the constraint lines plus a box."""
    box = 50
    cons = cons + [(1, 0, -box), (-1, 0, -box), (0, 1, -box), (0, -1, -box)]
    best = None
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(cons, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = Fraction(c1 * b2 - c2 * b1, det)
        y = Fraction(a1 * c2 - a2 * c1, det)
        if all(a * x + b * y >= c for a, b, c in cons):
            v = obj[0] * x + obj[1] * y
            best = v if best is None or v > best else best
    return best


@given(st.lists(constraint2, min_size=1, max_size=6), st.tuples(coef, coef))
def test_lin_sup_matches_vertex_enumeration(cons, obj):
    # the box keeps the brute force finite; bounded answers must agree exactly
    box = [(1, 0, -50), (-1, 0, -50), (0, 1, -50), (0, -1, -50)]
    sys = LinSystem(2, [ge([a, b], c) for a, b, c in cons + box])
    res = lin_sup(obj, sys)
    want = _vertices_sup(obj, cons)
    if want is None:
        assert isinstance(res, Infeasible)
        assert not lin_feasible(sys)
    else:
        assert isinstance(res, Finite) and res.value == want
        assert sys.holds(res.witness)
        assert lin_feasible(sys)


@given(st.lists(st.tuples(coef, coef, coef, st.integers(-5, 5)), max_size=7))
def test_solution_certificate(cons):
    sys = LinSystem(3, [ge(c[:3], c[3]) for c in cons])
    x = lin_solve(sys)
    assert (x is not None) == lin_feasible(sys)
    if x is not None:
        assert sys.holds(x)


def test_rref_and_rank():
    rows, piv = rref([[2, 4], [1, 2]])
    assert rows == [[1, 2]] and piv == [0]
    assert rank([[1, 0, 1], [0, 1, 1], [1, 1, 2]]) == 2
    assert rank([]) == 0


@given(st.lists(st.lists(coef, min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_is_kernel_basis(rows):
    basis = nullspace(rows, 4)
    assert len(basis) == 4 - rank(rows)
    for v in basis:
        assert all(dot(r, v) == 0 for r in rows)
        assert primitive(v) == v
    if basis:
        assert rank(basis) == len(basis)


def test_primitive():
    assert primitive([Fraction(2, 3), Fraction(-4, 3)]) == [1, -2]
    assert primitive([0, 0]) == [0, 0]


def test_listed_feasibility_cases():
    assert not lin_feasible(LinSystem(1, [ge([1], 1), ge([-1], 0)]))
    assert lin_feasible(LinSystem(2, [ge([1, 0]), ge([0, 1]), ge([-1, -1], -1)]))
    assert lin_feasible(LinSystem(1, [ge([2], 1), ge([-3], -2)]))
    res = lin_sup([1, 1], LinSystem(2, [ge([1, 0]), ge([0, 1]), ge([-1, -1], -1)]))
    assert res.value == 1 and sum(res.witness) == 1
    assert lin_sup([1], LinSystem(1, [ge([1])])).ray == (Fraction(1),)


@given(st.lists(st.tuples(coef, coef, st.integers(-5, 5)), max_size=6))
def test_feasible_iff_zero_objective_sup_exists(cons):
    sys = LinSystem(2, [ge(c[:2], c[2]) for c in cons])
    assert lin_feasible(sys) == (not isinstance(lin_sup([0, 0], sys), Infeasible))
