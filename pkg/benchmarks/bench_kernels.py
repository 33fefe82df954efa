"""Time the compiled and pure-Python weight-table convolution on tensor powers.

Run with: python3 benchmarks/bench_kernels.py
"""

import time

from replab import _kernels_py
from replab.char_ring import std_char
from replab.rep_core import Sp

try:
    from replab import _kernels
except ImportError:
    _kernels = None


def power_tables(g, d):
    h = dict(std_char(Sp(g)).table)
    tables = [h]
    for _ in range(d - 1):
        tables.append(_kernels_py.convolve(tables[-1], h))
    return h, tables


def best_of(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def main():
    print(f"{'case':>12} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for g, d in ((4, 6), (6, 6), (8, 5), (12, 4)):
        h, tables = power_tables(g, d)
        left = tables[-2]
        t_py = best_of(lambda: _kernels_py.convolve(left, h))
        if _kernels is None:
            print(f"{f'g={g} d={d}':>12} {t_py:>10.4f} {'n/a':>11} {'n/a':>8}")
            continue
        assert _kernels.convolve(left, h) == _kernels_py.convolve(left, h)
        t_c = best_of(lambda: _kernels.convolve(left, h))
        print(f"{f'g={g} d={d}':>12} {t_py:>10.4f} {t_c:>11.4f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
