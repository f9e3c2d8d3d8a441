"""Timing comparison of the compiled and pure-Python kernel backends.

Runs the three hot kernels on identical inputs through both implementations
and prints per-kernel timings with the speedup factor. The pure backend is
always available; the compiled one is skipped (with a note) if the extension
was not built.

    python benchmarks/bench_kernels.py --p 2003 --repeat 5
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fplab._kernels import pybits
from fplab.field import least_primitive_root

try:
    from fplab._kernels import _bitcore
except ImportError:
    _bitcore = None


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _bench_build_tables(mod, p: int, g: int, repeat: int) -> float:
    return _time(lambda: mod.build_exp_dlog(p, g), repeat)


def _bench_sumset(mod, p: int, repeat: int) -> float:
    rng = np.random.Generator(np.random.PCG64(7))
    mask = 0
    for e in rng.choice(p, size=p // 3, replace=False).tolist():
        mask |= 1 << int(e)
    shifts = np.sort(rng.choice(p, size=p // 3, replace=False)).astype(np.int64)
    return _time(lambda: mod.shift_or_union(mask, shifts, p), repeat)


def _bench_moments(mod, p: int, g: int, repeat: int) -> float:
    _, dlog = pybits.build_exp_dlog(p, g)
    sign = np.where(dlog % 2 == 0, 1, -1).astype(np.int64)
    sign[0] = 0
    return _time(lambda: mod.pair_corr_moments_int(sign, 0, 4, 2), repeat)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, default=2003, help="prime modulus for the workload")
    ap.add_argument("--repeat", type=int, default=3, help="repeats; best time wins")
    args = ap.parse_args()
    p, repeat = args.p, args.repeat
    g = least_primitive_root(p)

    rows = [
        ("build_exp_dlog", lambda mod: _bench_build_tables(mod, p, g, repeat)),
        ("shift_or_union", lambda mod: _bench_sumset(mod, p, repeat)),
        ("pair_corr_moments_int", lambda mod: _bench_moments(mod, p, g, repeat)),
    ]

    print(f"p = {p}, repeat = {repeat}, best-of timing in ms")
    print(f"{'kernel':<24} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, runner in rows:
        t_py = runner(pybits) * 1e3
        if _bitcore is None:
            print(f"{name:<24} {t_py:>10.3f} {'(absent)':>10} {'-':>8}")
            continue
        t_cy = runner(_bitcore) * 1e3
        ratio = t_py / t_cy if t_cy > 0 else float("inf")
        print(f"{name:<24} {t_py:>10.3f} {t_cy:>10.3f} {ratio:>7.1f}x")
    if _bitcore is None:
        print("compiled backend not built; showing pure-Python times only")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
