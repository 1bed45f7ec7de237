"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--sieve-max 1000000]
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from trinogen import _backend
from trinogen import _kernels_py


def workloads(sieve_max: int):
    rng = random.Random(1)
    pairs = [(rng.randrange(1, 100), rng.randrange(10**12), rng.randrange(2, 2**62)) for _ in range(2000)]
    periods = [(k, m) for k in (1, 2, 3) for m in (997, 10007, 99991)]

    def pair_mod(kern):
        for k, n, m in pairs:
            kern.lucas_pair_mod(k, n, m)

    def period_iter(kern):
        for k, m in periods:
            kern.period_iter(k, m, 6 * m)

    def sieve(kern):
        kern.wss_chunk(1, 5, 3, sieve_max)

    return [
        ("lucas_pair_mod x2000 (n < 1e12, m < 2^62)", pair_mod),
        ("period_iter (m up to 1e5)", period_iter),
        (f"wss_chunk k=1, p <= {sieve_max:.0e}", sieve),
    ]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--sieve-max", type=int, default=10**6)
    args = ap.parse_args(argv)

    compiled = _backend.compiled_kernels
    if compiled is None:
        print("compiled extension not built; only the Python kernels are available", file=sys.stderr)
    print(f"{'kernel':45s} {'python s':>10s} {'cython s':>10s} {'speedup':>8s}")
    for name, fn in workloads(args.sieve_max):
        t_py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{name:45s} {t_py:10.4f} {'-':>10s} {'-':>8s}")
            continue
        t_c = min(timeit.repeat(lambda: fn(compiled), number=1, repeat=args.repeat))
        print(f"{name:45s} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
