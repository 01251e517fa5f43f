"""Compare the compiled and pure-Python table-enumeration kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Each case times ``max_table_gain`` on the same integer instance in both
backends and checks that they agree.
"""

import argparse
import time

import numpy as np

from marketeff import _pykernels
from marketeff.analytics import SplitMix64

try:
    from marketeff import _ckernels
except ImportError:
    _ckernels = None


def instance(k, entries, seed):
    rng = SplitMix64(seed)
    ctx = np.array([rng.below(k) for _ in range(entries)], dtype=np.int64)
    signs = np.array([rng.below(3) - 1 for _ in range(entries)], dtype=np.int8)
    weights = np.array([1 + rng.below(100) for _ in range(entries)], dtype=np.int64)
    return ctx, signs, weights


def best_of(fn, args, repeat):
    best, value = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        value = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, value


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-k", type=int, default=18)
    args = parser.parse_args()

    print(f"{'k':>3} {'tables':>10} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for k in range(6, args.max_k + 1, 3):
        ctx, signs, weights = instance(k, 4 * k, seed=k)
        t_py, v_py = best_of(_pykernels.max_table_gain, (ctx, signs, weights, k), args.repeat)
        if _ckernels is None:
            print(f"{k:>3} {3 ** k:>10} {t_py:>10.4f} {'n/a':>11} {'':>8}")
            continue
        t_c, v_c = best_of(_ckernels.max_table_gain, (ctx, signs, weights, k), args.repeat)
        assert int(v_py) == int(v_c), (k, v_py, v_c)
        print(f"{k:>3} {3 ** k:>10} {t_py:>10.4f} {t_c:>11.4f} {t_py / max(t_c, 1e-9):>7.1f}x")


if __name__ == "__main__":
    main()
