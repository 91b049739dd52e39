import json
import os
import subprocess
import sys

import numpy as np
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from tropcong import _accel

rows = st.integers(1, 6).flatmap(
    lambda w: st.tuples(arrays(np.int64, st.tuples(st.integers(0, 6), st.just(w)),
                               elements=st.integers(-9, 9)),
                        st.integers(0, w - 2 if w > 1 else 0)))


@given(rows)
def test_fm_combine_kernels_agree(data):
    m, col = data
    pos = m[m[:, col] > 0]
    neg = m[m[:, col] < 0]
    if len(pos) and len(neg):
        a = _accel._fm_combine_nb(pos, neg, col)
        b = _accel._fm_combine_np(pos, neg, col)
        assert np.array_equal(a, b)
        assert (a[:, col] == 0).all()


@given(arrays(np.int64, st.tuples(st.integers(0, 12), st.integers(2, 4)),
              elements=st.integers(-3, 3)))
def test_prune_kernels_agree(m):
    m = m[(m[:, :-1] != 0).any(axis=1)]  # callers drop zero normals first
    a = _accel._prune_nb(m)
    assert np.array_equal(a, _accel._prune_np(m))
    # one survivor per primitive normal, carrying the tightest bound
    g = np.gcd.reduce(np.abs(m[:, :-1]), axis=1)
    normals = {tuple(r[:-1] // gi) for r, gi in zip(m, g)}
    assert a.sum() == len(normals)
    for r, gi, kept in zip(m, g, a):
        same = [(s, h) for s, h in zip(m[a], g[a]) if tuple(s[:-1] // h) == tuple(r[:-1] // gi)]
        (s, h), = same
        assert s[-1] * gi >= r[-1] * h


SCRIPT = r"""
import json, random
from tropcong import _accel
from tropcong.finlab import analyze, load_fixture
from tropcong.randgen import random_pair
from tropcong.radnull import rad_member_fg, rad_trivial_member
from tropcong.pairalg import CongPresentation
from tropcong.tropoly import Context
rng = random.Random(1)
ctx = Context("TQ", 2)
out = {"numba": _accel.USE_NUMBA, "finlab": analyze(load_fixture("example_4elt"))}
out["rad"] = [rad_member_fg(CongPresentation(ctx, ()), random_pair(rng, ctx)).member
              for _ in range(15)]
print(json.dumps(out, sort_keys=True))
"""


def _run(flag):
    env = dict(os.environ, TROPCONG_NUMBA=flag)
    res = subprocess.run([sys.executable, "-c", SCRIPT], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def test_fallback_path_gives_identical_results():
    fast, slow = _run("1"), _run("0")
    assert fast.pop("numba") is True and slow.pop("numba") is False
    assert fast == slow
