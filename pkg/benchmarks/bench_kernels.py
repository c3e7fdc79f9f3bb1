"""Time the numba and numpy enumeration kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

The backend is read from POTTSKIT_BACKEND on every call, so both run in one
process; the numba run is warmed up first so compilation is not timed.
"""

import argparse
import os
import timeit

import numpy as np

from pottskit import kernels

CASES = [
    # (label, kind, n, vertices, pairs)
    ("hist K4 n=5", "hist", 5, 4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    ("hist cycle8 n=4", "hist", 4, 8, [(i, (i + 1) % 8) for i in range(8)]),
    ("hist grid3x3 n=3", "hist", 3, 9,
     [(r * 3 + c, r * 3 + c + 1) for r in range(3) for c in range(2)]
     + [(r * 3 + c, r * 3 + c + 3) for r in range(2) for c in range(3)]),
    ("flows K4 n=6", "flow", 6, 4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    ("flows theta n=5", "flow", 5, 2, [(0, 1)] * 7),
]


def run(kind, n, nv, pairs):
    if kind == "hist":
        return kernels.agreement_histogram(n, nv, pairs)
    return kernels.count_flows(n, nv, pairs, True)


def bench(backend, case, repeat):
    os.environ["POTTSKIT_BACKEND"] = backend
    _, kind, n, nv, pairs = case
    out = run(kind, n, nv, pairs)
    best = min(timeit.repeat(lambda: run(kind, n, nv, pairs), number=1, repeat=repeat))
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"threads: {os.environ.get('POTTSKIT_THREADS', 'default')}")
    print(f"{'case':20s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for case in CASES:
        t_nb, r_nb = bench("numba", case, args.repeat)
        t_np, r_np = bench("numpy", case, args.repeat)
        assert np.array_equal(r_nb, r_np), f"backends disagree on {case[0]}"
        print(f"{case[0]:20s} {t_nb * 1e3:10.2f} {t_np * 1e3:10.2f} {t_np / t_nb:8.1f}x")
    os.environ.pop("POTTSKIT_BACKEND", None)


if __name__ == "__main__":
    main()
