"""Time the compiled kernels against the pure Python fallback.

    python3 bench/benchmark.py [--repeat N]
"""
import argparse
import time

import numpy as np

from tqforms import _kernels_py as pure

try:
    from tqforms import _kernels as compiled
except ImportError:
    compiled = None

ANISO = (1, 1, -3, 0, 0, 0)

CASES = [
    ("box_min r=24", lambda m: m.box_min(ANISO, 24)),
    ("box_min r=48", lambda m: m.box_min((2, 3, -7, 1, 0, 1), 48)),
    ("spectrum_scan b=6", lambda m: m.spectrum_scan(6, 2, 9, 2)),
    ("iso_box X=4", lambda m: m.iso_box(4)),
]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def same(a, b):
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(np.asarray(a), np.asarray(b))
    return a == b


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the pure backend is available")
    print(f"{'kernel':<20}{'python s':>12}{'cython s':>12}{'speedup':>10}  agree")
    for name, fn in CASES:
        tp, op = best_of(lambda: fn(pure), args.repeat)
        if compiled is None:
            print(f"{name:<20}{tp:>12.4f}{'-':>12}{'-':>10}")
            continue
        tc, oc = best_of(lambda: fn(compiled), args.repeat)
        print(f"{name:<20}{tp:>12.4f}{tc:>12.4f}{tp / tc:>10.1f}  {same(op, oc)}")


if __name__ == "__main__":
    main()
