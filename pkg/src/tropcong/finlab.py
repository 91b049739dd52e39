"""Finite B-algebras: exhaustive congruence enumeration and structure checks.

An algebra on ``{0, .., n-1}`` is given by its addition and multiplication
tables. A congruence is stored as a canonical block labelling (a restricted
growth string: element ``i`` gets the label of its block, blocks are
numbered in order of first appearance). Pairs ``(a, b)`` of elements are
handled as index pairs.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import _accel
from .errors import InputError, ResourceError

MAX_N = 8


@dataclass(frozen=True)
class FiniteAlgebra:
    n: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    names: Tuple[str, ...] = ()

    def name(self, i: int) -> str:
        return self.names[i] if self.names else str(i)

    def __hash__(self):
        return hash((self.n, self.add.tobytes(), self.mul.tobytes(), self.zero, self.one))

    def __eq__(self, other):
        return (isinstance(other, FiniteAlgebra) and self.n == other.n
                and np.array_equal(self.add, other.add) and np.array_equal(self.mul, other.mul)
                and self.zero == other.zero and self.one == other.one)


def algebra_violations(n, add, mul, zero, one) -> List[str]:
    """Every violated semiring axiom, as readable messages."""
    out = []
    add = np.asarray(add)
    mul = np.asarray(mul)
    if add.shape != (n, n) or mul.shape != (n, n):
        return [f"tables must be {n}x{n}"]
    if ((add < 0) | (add >= n)).any() or ((mul < 0) | (mul >= n)).any():
        return ["table entries must be element indices 0..n-1"]
    if not (0 <= zero < n and 0 <= one < n):
        return ["zero and one must be element indices"]
    if zero == one:
        out.append("1 = 0")
    r = np.arange(n)
    for name, t in (("addition", add), ("multiplication", mul)):
        if not np.array_equal(t, t.T):
            a, b = np.argwhere(t != t.T)[0]
            out.append(f"{name} is not commutative at ({a}, {b})")
        lhs = t[t[r[:, None, None], r[None, :, None]], r[None, None, :]]
        rhs = t[r[:, None, None], t[r[None, :, None], r[None, None, :]]]
        if not np.array_equal(lhs, rhs):
            a, b, c = np.argwhere(lhs != rhs)[0]
            out.append(f"{name} is not associative at ({a}, {b}, {c})")
    if not (add[r, r] == r).all():
        a = int(np.argwhere(add[r, r] != r)[0][0])
        out.append(f"addition is not idempotent at {a}")
    if not (add[zero] == r).all():
        out.append("zero is not neutral for addition")
    if not (mul[zero] == zero).all():
        out.append("zero is not absorbing for multiplication")
    if not (mul[one] == r).all():
        out.append("one is not neutral for multiplication")
    left = mul[r[:, None, None], add[r[None, :, None], r[None, None, :]]]
    right = add[mul[r[:, None, None], r[None, :, None]], mul[r[:, None, None], r[None, None, :]]]
    if not np.array_equal(left, right):
        a, b, c = np.argwhere(left != right)[0]
        out.append(f"distributivity fails at ({a}, {b}, {c})")
    return out


def validate_algebra(n, add, mul, zero, one, names=()) -> FiniteAlgebra:
    probs = algebra_violations(n, add, mul, zero, one)
    if probs:
        raise InputError("not a B-algebra: " + "; ".join(probs))
    return FiniteAlgebra(n, np.asarray(add, dtype=np.int64), np.asarray(mul, dtype=np.int64),
                         int(zero), int(one), tuple(names))


def algebra_from_json(doc) -> FiniteAlgebra:
    if not isinstance(doc, dict):
        raise InputError("algebra document must be an object")
    try:
        return validate_algebra(doc["n"], doc["add"], doc["mul"], doc["zero"], doc["one"],
                                doc.get("names", ()))
    except KeyError as err:
        raise InputError(f"algebra document lacks {err.args[0]!r}") from None


def algebra_to_json(A: FiniteAlgebra) -> dict:
    doc = {"n": A.n, "add": A.add.tolist(), "mul": A.mul.tolist(), "zero": A.zero, "one": A.one}
    if A.names:
        doc["names"] = list(A.names)
    return doc


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def chain_algebra(n: int) -> FiniteAlgebra:
    """The chain ``0 < 1 < .. < n-1`` with max as addition and min as
    multiplication (the top element is the unit)."""
    r = np.arange(n)
    return validate_algebra(n, np.maximum.outer(r, r), np.minimum.outer(r, r), 0, n - 1,
                            [str(i) for i in r])


def product_algebra(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    n = A.n * B.n
    idx = lambda a, b: a * B.n + b  # noqa: E731

    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for a1, b1, a2, b2 in itertools.product(range(A.n), range(B.n), range(A.n), range(B.n)):
        add[idx(a1, b1), idx(a2, b2)] = idx(A.add[a1, a2], B.add[b1, b2])
        mul[idx(a1, b1), idx(a2, b2)] = idx(A.mul[a1, a2], B.mul[b1, b2])
    names = [f"({A.name(a)},{B.name(b)})" for a in range(A.n) for b in range(B.n)]
    return validate_algebra(n, add, mul, idx(A.zero, B.zero), idx(A.one, B.one), names)


def monoid_algebra(elements: Sequence[str], table: Dict[Tuple[str, str], Optional[str]]):
    """B[M] for a finite commutative monoid ``M`` whose product may be
    ``None`` (an absorbing zero that is identified with 0 of B[M]).

    Elements of B[M] are the subsets of ``M``; addition is union.
    """
    m = len(elements)
    pos = {e: i for i, e in enumerate(elements)}
    subsets = list(range(1 << m))
    op = [[0] * m for _ in range(m)]
    for (a, b), c in table.items():
        op[pos[a]][pos[b]] = 0 if c is None else 1 << pos[c]
        op[pos[b]][pos[a]] = op[pos[a]][pos[b]]
    n = len(subsets)
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for s in subsets:
        for t in subsets:
            add[s, t] = s | t
            prod = 0
            for i in range(m):
                if s >> i & 1:
                    for j in range(m):
                        if t >> j & 1:
                            prod |= op[i][j]
            mul[s, t] = prod
    names = ["0" if s == 0 else "+".join(elements[i] for i in range(m) if s >> i & 1) for s in subsets]
    return validate_algebra(n, add, mul, 0, 1 << pos[elements[0]], names)


FIXTURE_NAMES = ("b", "chain3", "chain4", "dual", "bx_idem", "bx_sq0", "example_4elt",
                 "bxb", "b_chain3", "dual_b", "bx_cube")


def load_fixture(name: str) -> FiniteAlgebra:
    text = resources.files("tropcong").joinpath("fixtures", f"{name}.json").read_text()
    return algebra_from_json(json.loads(text))


def fixtures() -> Dict[str, FiniteAlgebra]:
    return {name: load_fixture(name) for name in FIXTURE_NAMES}


# ---------------------------------------------------------------------------
# congruences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CongRelation:
    labels: Tuple[int, ...]

    @classmethod
    def from_labels(cls, labels) -> "CongRelation":
        seen: Dict[int, int] = {}
        return cls(tuple(seen.setdefault(v, len(seen)) for v in labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def improper(self) -> bool:
        return len(set(self.labels)) == 1

    @property
    def trivial(self) -> bool:
        return len(set(self.labels)) == self.n

    def contains(self, a: int, b: int) -> bool:
        return self.labels[a] == self.labels[b]

    def blocks(self) -> List[List[int]]:
        out: Dict[int, List[int]] = {}
        for i, v in enumerate(self.labels):
            out.setdefault(v, []).append(i)
        return list(out.values())

    def leq(self, other: "CongRelation") -> bool:
        """``self`` is contained in ``other``."""
        return all(other.labels[b[0]] == other.labels[i] for b in self.blocks() for i in b)

    def meet(self, other: "CongRelation") -> "CongRelation":
        return CongRelation.from_labels(list(zip(self.labels, other.labels)))

    def array(self) -> np.ndarray:
        return np.array(self.labels, dtype=np.int64)


def diagonal(A: FiniteAlgebra) -> CongRelation:
    return CongRelation(tuple(range(A.n)))


def full(A: FiniteAlgebra) -> CongRelation:
    return CongRelation((0,) * A.n)


def _restricted_growth(n: int) -> np.ndarray:
    out = []
    lab = [0] * n

    def rec(i, top):
        if i == n:
            out.append(list(lab))
            return
        for v in range(top + 2):
            lab[i] = v
            rec(i + 1, max(top, v))

    if n:
        rec(1, 0)
    return np.array(out, dtype=np.int64).reshape(-1, n)


def enumerate_congruences(A: FiniteAlgebra) -> List[CongRelation]:
    """All congruences of ``A`` (including the trivial and improper ones),
    in the order of their restricted growth strings."""
    if A.n > MAX_N:
        raise ResourceError(f"n = {A.n} exceeds the enumeration guard {MAX_N}")
    parts = _restricted_growth(A.n)
    ok = _accel.compatible_partitions(parts, A.add, A.mul)
    return [CongRelation(tuple(int(v) for v in row)) for row in parts[ok]]


def is_congruence(A: FiniteAlgebra, labels) -> bool:
    lab = np.asarray(labels, dtype=np.int64).reshape(1, -1)
    return bool(_accel.compatible_partitions(lab, A.add, A.mul)[0])


def is_prime_cong(A: FiniteAlgebra, P: CongRelation) -> bool:
    return _accel.is_prime_labels(P.array(), A.add, A.mul)


def is_qc(A: FiniteAlgebra, P: CongRelation) -> bool:
    """The quotient is a cancellative B-algebra (so in particular 1 != 0)."""
    if P.contains(A.one, A.zero):
        return False
    return _accel.is_qc_labels(P.array(), A.mul, A.zero)


def is_indecomposable(A: FiniteAlgebra, P: CongRelation, all_congs) -> bool:
    above = [K for K in all_congs if K != P and P.leq(K)]
    for K, L in itertools.combinations(above, 2):
        if K.meet(L) == P:
            return False
    return True


def _meet_all(A: FiniteAlgebra, congs) -> CongRelation:
    out = full(A)
    for K in congs:
        out = out.meet(K)
    return out


def radical_cong(A: FiniteAlgebra, I: CongRelation, all_congs=None) -> CongRelation:
    """Intersection of the primes containing ``I`` (improper if none)."""
    all_congs = enumerate_congruences(A) if all_congs is None else all_congs
    return _meet_all(A, [P for P in all_congs if I.leq(P) and is_prime_cong(A, P)])


def nilpotent_pairs(A: FiniteAlgebra, I: CongRelation) -> np.ndarray:
    """``M[a, b]``: some generalized power of ``(a, b)`` lies in ``I``."""
    return _accel.nilpotent_matrix(I.array(), A.add, A.mul, A.one, A.zero)


def relation_matrix(R: CongRelation) -> np.ndarray:
    lab = R.array()
    return lab[:, None] == lab[None, :]


def _twist(A, a, b):
    a1, a2 = a
    b1, b2 = b
    return (int(A.add[A.mul[a1, b1], A.mul[a2, b2]]), int(A.add[A.mul[a1, b2], A.mul[a2, b1]]))


def is_primary(A: FiniteAlgebra, I: CongRelation, all_congs=None) -> bool:
    """Every pair that multiplies some pair outside ``I`` into ``I`` lies in
    the radical of ``I``."""
    rad = radical_cong(A, I, all_congs)
    n = A.n
    outside = [(b1, b2) for b1 in range(n) for b2 in range(n) if not I.contains(b1, b2)]
    for a1 in range(n):
        for a2 in range(n):
            if rad.contains(a1, a2):
                continue
            if any(I.contains(*_twist(A, (a1, a2), b)) for b in outside):
                return False
    return True


def is_totally_ordered_quotient(A: FiniteAlgebra, P: CongRelation) -> bool:
    """In ``A/P`` every two elements are comparable (``a + b`` is one of them)."""
    for a in range(A.n):
        for b in range(A.n):
            s = int(A.add[a, b])
            if not (P.contains(s, a) or P.contains(s, b)):
                return False
    return True


def relation_is_transitive(M: np.ndarray) -> bool:
    Mi = M.astype(np.int64)
    return bool(((Mi @ Mi > 0) <= M).all())


def ann_elem(A: FiniteAlgebra, a: int) -> CongRelation:
    """``{b : a b1 = a b2}``, which is always a congruence."""
    row = A.mul[a]
    R = CongRelation.from_labels(row.tolist())
    if not is_congruence(A, R.labels):
        raise AssertionError("element annihilator is not a congruence")
    return R


def ann_pair(A: FiniteAlgebra, alpha) -> Tuple[np.ndarray, bool]:
    """``{b : alpha b is diagonal}`` as a relation matrix, and whether it is
    transitive (it need not be)."""
    n = A.n
    M = np.zeros((n, n), dtype=bool)
    for b1 in range(n):
        for b2 in range(n):
            l, r = _twist(A, alpha, (b1, b2))
            M[b1, b2] = l == r
    return M, relation_is_transitive(M)


def gann(A: FiniteAlgebra, alpha, all_congs=None) -> CongRelation:
    """``{b : alpha b nilpotent}``; checked against the intersection of the
    primes not containing ``alpha``."""
    all_congs = enumerate_congruences(A) if all_congs is None else all_congs
    nil = nilpotent_pairs(A, diagonal(A))
    n = A.n
    M = np.zeros((n, n), dtype=bool)
    for b1 in range(n):
        for b2 in range(n):
            M[b1, b2] = nil[_twist(A, alpha, (b1, b2))]
    primes = [P for P in all_congs if is_prime_cong(A, P) and not P.contains(*alpha)]
    R = _meet_all(A, primes)
    if not np.array_equal(relation_matrix(R), M):
        raise AssertionError("generalized annihilator differs from the prime intersection")
    return R


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def pairs_of(A: FiniteAlgebra, R: CongRelation) -> List[List[str]]:
    """The non-diagonal pairs ``{a, b}`` of ``R`` (each once)."""
    out = []
    for b in R.blocks():
        for i, j in itertools.combinations(b, 2):
            out.append([A.name(i), A.name(j)])
    return out


def analyze(A: FiniteAlgebra) -> dict:
    congs = enumerate_congruences(A)
    rows = []
    index = {C: i for i, C in enumerate(congs)}
    for C in congs:
        rad = radical_cong(A, C, congs)
        nil = nilpotent_pairs(A, C)
        rows.append({
            "index": index[C],
            "labels": list(C.labels),
            "blocks": [[A.name(i) for i in b] for b in C.blocks()],
            "pairs": pairs_of(A, C),
            "trivial": C.trivial,
            "improper": C.improper,
            "prime": is_prime_cong(A, C),
            "qc": is_qc(A, C),
            "indecomposable": is_indecomposable(A, C, congs),
            "primary": is_primary(A, C, congs),
            "radical": index[rad],
            "radical_is_nilpotent_pairs": bool(np.array_equal(relation_matrix(rad), nil)),
        })
    return {"n": A.n, "count": len(congs), "congruences": rows}
