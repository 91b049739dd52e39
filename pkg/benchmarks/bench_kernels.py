"""Compare the numba kernels with the numpy fallback.

Two views: each kernel called directly on the same inputs, and end-to-end
workloads run in child processes with TROPCONG_NUMBA set to 1 and 0.

    python3 benchmarks/bench_kernels.py [--repeat N] [--json]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from tropcong import _accel
from tropcong.finlab import enumerate_congruences, fixtures, _restricted_growth


def _best(fn, repeat):
    fn()  # compile / warm caches
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_cases(rng):
    pos = rng.integers(1, 9, size=(60, 6))
    neg = rng.integers(-8, 9, size=(60, 6))
    neg[:, 2] = -rng.integers(1, 9, size=60)
    pos[:, 2] = rng.integers(1, 9, size=60)
    prune = rng.integers(-3, 4, size=(120, 5))
    prune = prune[(prune[:, :-1] != 0).any(axis=1)]
    big = rng.integers(-3, 4, size=(400, 5))
    big = big[(big[:, :-1] != 0).any(axis=1)]
    A = fixtures()["bx_cube"]
    parts = _restricted_growth(A.n)
    labs = [C.array() for C in enumerate_congruences(A)]
    return {
        "fm_combine 60x60": (
            lambda: _accel._fm_combine_nb(pos, neg, 2), lambda: _accel._fm_combine_np(pos, neg, 2)),
        "parallel_prune 120 rows": (
            lambda: _accel._prune_nb(prune), lambda: _accel._prune_np(prune)),
        # above PRUNE_SCAN_MAX the dispatcher uses the numpy grouping
        "parallel_prune 400 rows": (
            lambda: _accel._prune_nb(big), lambda: _accel._prune_np(big)),
        "compatible_partitions n=8": (
            lambda: _accel._compatible_nb(parts, A.add, A.mul),
            lambda: _accel._compatible_np(parts, A.add, A.mul)),
        "is_prime_labels n=8": (
            lambda: [_accel._prime_nb(l, A.add, A.mul) for l in labs],
            lambda: [_accel._prime_np(l, A.add, A.mul) for l in labs]),
        "nilpotent_matrix n=8": (
            lambda: [_accel._nilpotent_nb(l, A.add, A.mul, A.one, A.zero) for l in labs],
            lambda: [_accel._nilpotent_np(l, A.add, A.mul, A.one, A.zero) for l in labs]),
    }


WORKLOAD = r"""
import random, time
from tropcong.finlab import analyze, fixtures
from tropcong.pairalg import CongPresentation
from tropcong.radnull import rad_member_fg
from tropcong.randgen import random_pair, random_radical_pair
from tropcong.tropoly import Context
analyze(fixtures()["b"])
t0 = time.perf_counter()
for A in fixtures().values():
    analyze(A)
t1 = time.perf_counter()
rng = random.Random(3)
for tag in ("B", "Zmax", "TQ"):
    for i in range(30):
        ctx = Context(tag, 2)
        p = random_radical_pair(rng, ctx) if i % 2 else random_pair(rng, ctx)
        rad_member_fg(CongPresentation(ctx, ()), p)
t2 = time.perf_counter()
print(t1 - t0, t2 - t1)
"""


def end_to_end():
    out = {}
    for flag in ("1", "0"):
        env = dict(os.environ, TROPCONG_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", WORKLOAD], env=env, capture_output=True,
                             text=True, check=True)
        fin, rad = map(float, res.stdout.split())
        out[flag] = {"finlab analyze (all fixtures)": fin, "radical decider (90 pairs)": rad}
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)
    rng = np.random.default_rng(0)
    rows = []
    for name, (nb, npy) in kernel_cases(rng).items():
        rows.append((name, _best(nb, args.repeat), _best(npy, args.repeat)))
    e2e = end_to_end()
    for name in e2e["1"]:
        rows.append((name + " [process]", e2e["1"][name], e2e["0"][name]))
    if args.json:
        print(json.dumps([{"case": n, "numba_s": a, "numpy_s": b} for n, a, b in rows], indent=2))
        return
    print(f"{'case':44s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, a, b in rows:
        print(f"{name:44s} {a * 1e3:9.2f}ms {b * 1e3:9.2f}ms {b / a:7.1f}x")


if __name__ == "__main__":
    main()
