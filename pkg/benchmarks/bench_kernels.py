"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Each workload calls both implementations directly with identical inputs,
checks the outputs agree, and reports the best wall time of N runs.
"""

import argparse
import random
import time
from fractions import Fraction

from weberhex import _pykernels
from weberhex import f2geom as fg
from weberhex import latticekit as lk

try:
    from weberhex import _ckernels
except ImportError:
    _ckernels = None


def stabilizers(impl):
    table = fg._perm_table()
    return [len(impl.stabilizer_members(table, w.mask)) for w in fg.enumerate_weber_hexads()]


def orbits(impl):
    table = fg._perm_table()
    return [len(set(impl.mask_images(table, w.mask))) for w in fg.enumerate_weber_hexads()[:24]]


def sign_products(impl):
    rng = random.Random(0)
    out = []
    for _ in range(100):
        lam = [rng.randint(1, 10**6) for _ in range(5)]
        lamprod = []
        for m in range(32):
            p = 1
            for i in range(5):
                if m >> i & 1:
                    p *= lam[i]
            lamprod.append(p)
        acc = [1] + [0] * 31
        for rest in range(16):
            lin = [0] * 32
            lin[1] = 1
            for i in range(4):
                lin[2 << i] = -1 if rest >> i & 1 else 1
            acc = impl.sqrt_mul(acc, lin, lamprod)
        out.append(acc[0])
    return out


def dual_search(impl):
    t = lk.lattice_T()
    basis = t.dual_basis
    n = t.rank
    gram = [[t.pair(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    scale = 16
    ints = [[int(x * scale) for x in row] for row in gram]
    return impl.box_search(ints, int(Fraction(-5, 4) * scale), lk.search_values(4))


WORKLOADS = [
    ("stabilizers of 192 hexads", stabilizers),
    ("orbit images of 24 hexads", orbits),
    ("16-factor sign products x100", sign_products),
    ("dual-vector box search, 9^5 points", dual_search),
]


def best_time(fn, impl, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(impl)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    fg._perm_table()  # build the group table outside the timings
    print(f"{'workload':38s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for name, fn in WORKLOADS:
        tp, rp = best_time(fn, _pykernels, args.repeat)
        if _ckernels is None:
            print(f"{name:38s} {tp:10.4f} {'n/a':>10s} {'n/a':>8s}")
            continue
        tc, rc = best_time(fn, _ckernels, args.repeat)
        if rp != rc:
            raise SystemExit(f"backends disagree on {name}")
        print(f"{name:38s} {tp:10.4f} {tc:10.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
