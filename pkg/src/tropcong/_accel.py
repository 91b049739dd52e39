"""
Hot integer kernels
===================

Fourier-Motzkin row combination and the exhaustive finite-algebra scans
live here. Every kernel exists twice: a numba ``@njit`` version and a
vectorised numpy version with identical results. The numba path is used
when numba imports and ``TROPCONG_NUMBA`` is not set to ``0``.

All kernels work on ``int64`` arrays. Callers guarantee the magnitude
bounds stated per kernel; the FM driver falls back to Python integers
when they do not hold.
"""

import os

import numpy as np

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False

# |entry| below this bound keeps b*p + a*n inside int64
SAFE_BOUND = 1 << 30


def numba_enabled():
    flag = os.environ.get("TROPCONG_NUMBA", "1").strip().lower()
    return _HAVE_NUMBA and flag not in ("0", "false", "no", "off")


USE_NUMBA = numba_enabled()


def _njit(fn):
    if _HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# Fourier-Motzkin
# ---------------------------------------------------------------------------


@_njit
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@_njit
def _fm_combine_nb(pos, neg, col):
    n_pos, width = pos.shape
    n_neg = neg.shape[0]
    out = np.empty((n_pos * n_neg, width), dtype=np.int64)
    r = 0
    for i in range(n_pos):
        a = pos[i, col]
        for j in range(n_neg):
            b = -neg[j, col]
            g = 0
            for t in range(width):
                v = b * pos[i, t] + a * neg[j, t]
                out[r, t] = v
                g = _gcd(g, abs(v))
            out[r, col] = 0
            if g > 1:
                for t in range(width):
                    out[r, t] //= g
            r += 1
    return out


def _fm_combine_np(pos, neg, col):
    a = pos[:, col][:, None, None]
    b = -neg[:, col][None, :, None]
    out = (b * pos[:, None, :] + a * neg[None, :, :]).reshape(-1, pos.shape[1])
    out[:, col] = 0
    g = np.gcd.reduce(np.abs(out), axis=1)
    g[g == 0] = 1
    return out // g[:, None]


def fm_combine(pos, neg, col):
    """All positive combinations of ``pos`` and ``neg`` rows cancelling
    column ``col``, each divided by the gcd of its entries.

    Rows are ``[a_1 .. a_d, b]`` meaning ``a.x >= b``; ``pos[:, col] > 0``
    and ``neg[:, col] < 0``. Entries must be below ``SAFE_BOUND``.
    """
    if pos.shape[0] == 0 or neg.shape[0] == 0:
        return np.empty((0, pos.shape[1]), dtype=np.int64)
    if USE_NUMBA:
        return _fm_combine_nb(pos, neg, col)
    return _fm_combine_np(pos, neg, col)


@_njit
def _prune_nb(rows):
    n, width = rows.shape
    d = width - 1
    g = np.empty(n, dtype=np.int64)
    for i in range(n):
        v = 0
        for t in range(d):
            v = _gcd(v, abs(rows[i, t]))
        g[i] = v
    keep = np.ones(n, dtype=np.bool_)
    for i in range(n):
        for j in range(n):
            if i == j or not keep[j]:
                continue
            same = True
            for t in range(d):
                if rows[i, t] * g[j] != rows[j, t] * g[i]:
                    same = False
                    break
            if not same:
                continue
            # row j is at least as tight; ties go to the lower index
            lhs = rows[j, d] * g[i]
            rhs = rows[i, d] * g[j]
            if lhs > rhs or (lhs == rhs and j < i):
                keep[i] = False
                break
    return keep


def _prune_np(rows):
    g = np.gcd.reduce(np.abs(rows[:, :-1]), axis=1)
    keys = np.ascontiguousarray(rows[:, :-1] // g[:, None])
    _, group = np.unique(keys.view(np.dtype((np.void, keys.dtype.itemsize * keys.shape[1]))),
                         return_inverse=True)
    group = group.reshape(-1)
    keep = np.zeros(rows.shape[0], dtype=bool)
    best = {}
    for i in range(rows.shape[0]):
        gi = int(group[i])
        j = best.get(gi)
        if j is None or rows[i, -1] * g[j] > rows[j, -1] * g[i]:
            best[gi] = i
    keep[list(best.values())] = True
    return keep


PRUNE_SCAN_MAX = 200  # measured crossover, see benchmarks/bench_kernels.py


def parallel_prune(rows):
    """Mask keeping, for each primitive normal, the single tightest row.

    Rows have a nonzero coefficient part and entries below ``SAFE_BOUND``.
    The jitted scan is quadratic; past ``PRUNE_SCAN_MAX`` rows the sort-based
    grouping is faster even with numba available.
    """
    if USE_NUMBA and rows.shape[0] <= PRUNE_SCAN_MAX:
        return _prune_nb(rows)
    return _prune_np(rows)


# ---------------------------------------------------------------------------
# Finite B-algebras
# ---------------------------------------------------------------------------


@_njit
def _compatible_nb(parts, add, mul):
    n_parts, n = parts.shape
    ok = np.ones(n_parts, dtype=np.bool_)
    for p in range(n_parts):
        lab = parts[p]
        good = True
        for a in range(n):
            if not good:
                break
            for b in range(a + 1, n):
                if lab[a] != lab[b]:
                    continue
                for c in range(n):
                    if lab[add[a, c]] != lab[add[b, c]] or lab[mul[a, c]] != lab[mul[b, c]]:
                        good = False
                        break
                if not good:
                    break
        ok[p] = good
    return ok


def _compatible_np(parts, add, mul):
    same = parts[:, :, None] == parts[:, None, :]
    ok = np.ones(parts.shape[0], dtype=bool)
    for table in (add, mul):
        img = parts[:, table]
        rows_eq = (img[:, :, None, :] == img[:, None, :, :]).all(axis=-1)
        ok &= ~(same & ~rows_eq).any(axis=(1, 2))
    return ok


def compatible_partitions(parts, add, mul):
    """Mask of the label rows in ``parts`` that respect both tables."""
    if USE_NUMBA:
        return _compatible_nb(parts, add, mul)
    return _compatible_np(parts, add, mul)


@_njit
def _prime_nb(lab, add, mul):
    n = lab.shape[0]
    proper = False
    for a in range(n):
        if lab[a] != lab[0]:
            proper = True
    if not proper:
        return False
    for a1 in range(n):
        for a2 in range(n):
            if lab[a1] == lab[a2]:
                continue
            for b1 in range(n):
                for b2 in range(n):
                    if lab[b1] == lab[b2]:
                        continue
                    l = add[mul[a1, b1], mul[a2, b2]]
                    r = add[mul[a1, b2], mul[a2, b1]]
                    if lab[l] == lab[r]:
                        return False
    return True


def _twisted_tables(add, mul):
    n = add.shape[0]
    a1, a2, b1, b2 = np.meshgrid(*(np.arange(n),) * 4, indexing="ij")
    left = add[mul[a1, b1], mul[a2, b2]]
    right = add[mul[a1, b2], mul[a2, b1]]
    return left.reshape(n * n, n * n), right.reshape(n * n, n * n)


def _prime_np(lab, add, mul):
    if (lab == lab[0]).all():
        return False
    left, right = _twisted_tables(add, mul)
    inside = (lab[:, None] == lab[None, :]).reshape(-1)
    outside = ~inside
    prod_in = lab[left] == lab[right]
    return not (prod_in & outside[:, None] & outside[None, :]).any()


def is_prime_labels(lab, add, mul):
    """Proper, and no twisted product of two outside pairs lands inside."""
    if USE_NUMBA:
        return bool(_prime_nb(lab, add, mul))
    return bool(_prime_np(lab, add, mul))


@_njit
def _qc_nb(lab, mul, zero):
    n = lab.shape[0]
    for a in range(n):
        if lab[a] == lab[zero]:
            continue
        for b in range(n):
            for c in range(n):
                if lab[mul[a, b]] == lab[mul[a, c]] and lab[b] != lab[c]:
                    return False
    return True


def _qc_np(lab, mul, zero):
    nonzero = lab != lab[zero]
    prod = lab[mul]
    eq_prod = prod[:, :, None] == prod[:, None, :]
    neq = lab[:, None] != lab[None, :]
    return not (eq_prod & neq[None, :, :] & nonzero[:, None, None]).any()


def is_qc_labels(lab, mul, zero):
    """Quotient cancellativity: ab = ac implies a = 0 or b = c."""
    if USE_NUMBA:
        return bool(_qc_nb(lab, mul, zero))
    return bool(_qc_np(lab, mul, zero))


@_njit
def _twist(add, mul, a1, a2, b1, b2):
    return add[mul[a1, b1], mul[a2, b2]], add[mul[a1, b2], mul[a2, b1]]


@_njit
def _powers_nb(add, mul, p1, p2, one, zero, out):
    # distinct twisted powers p^0, p^1, ... in order of first appearance
    n = add.shape[0]
    seen = np.zeros(n * n, dtype=np.bool_)
    c1, c2 = one, zero
    m = 0
    while not seen[c1 * n + c2]:
        seen[c1 * n + c2] = True
        out[m, 0] = c1
        out[m, 1] = c2
        m += 1
        c1, c2 = _twist(add, mul, c1, c2, p1, p2)
    return m


@_njit
def _nilpotent_nb(lab, add, mul, one, zero):
    n = lab.shape[0]
    res = np.zeros((n, n), dtype=np.bool_)
    spow = np.empty((n * n, 2), dtype=np.int64)
    apow = np.empty((n * n, 2), dtype=np.int64)
    for a1 in range(n):
        for a2 in range(n):
            ns = _powers_nb(add, mul, add[a1, a2], zero, one, zero, spow)
            na = _powers_nb(add, mul, a1, a2, one, zero, apow)
            found = False
            for i in range(ns):
                for c in range(n):
                    g1 = add[spow[i, 0], c]
                    g2 = spow[i, 1]
                    for j in range(na):
                        r1, r2 = _twist(add, mul, g1, g2, apow[j, 0], apow[j, 1])
                        if lab[r1] == lab[r2]:
                            found = True
                            break
                    if found:
                        break
                if found:
                    break
            res[a1, a2] = found
    return res


def _powers_py(add, mul, p1, p2, one, zero):
    seen = []
    cur = (one, zero)
    while cur not in seen:
        seen.append(cur)
        cur = (add[mul[cur[0], p1], mul[cur[1], p2]], add[mul[cur[0], p2], mul[cur[1], p1]])
    return np.array(seen, dtype=np.int64)


def _nilpotent_np(lab, add, mul, one, zero):
    n = lab.shape[0]
    res = np.zeros((n, n), dtype=bool)
    cs = np.arange(n)
    for a1 in range(n):
        for a2 in range(n):
            spow = _powers_py(add, mul, add[a1, a2], zero, one, zero)
            apow = _powers_py(add, mul, a1, a2, one, zero)
            g1 = add[spow[:, 0][:, None], cs[None, :]].reshape(-1)
            g2 = np.repeat(spow[:, 1], n)
            r1 = add[mul[g1[:, None], apow[None, :, 0]], mul[g2[:, None], apow[None, :, 1]]]
            r2 = add[mul[g1[:, None], apow[None, :, 1]], mul[g2[:, None], apow[None, :, 0]]]
            res[a1, a2] = bool((lab[r1] == lab[r2]).any())
    return res


def nilpotent_matrix(lab, add, mul, one, zero):
    """``res[a1, a2]`` is true iff some generalized power of ``(a1, a2)``
    lies in the congruence with labels ``lab``.

    The enumeration is complete: star powers and ordinary powers are taken
    over their full (finite) orbits and the added element over the carrier.
    """
    if USE_NUMBA:
        return _nilpotent_nb(lab, add, mul, one, zero)
    return _nilpotent_np(lab, add, mul, one, zero)
