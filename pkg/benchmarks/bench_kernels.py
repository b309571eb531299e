"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--harness-trials N]

Times the fused ``all_bits`` kernel on random joints of several sizes and
one reduced ``flowinfo check`` run per backend (each in a fresh
interpreter, since the backend is chosen at import).
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

from flowinfo import _kernels_py
from flowinfo.dist import sample_joint

try:
    from flowinfo import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

SIZES = ((2, 2), (4, 7), (10, 10), (50, 50), (200, 200))


def bench_kernel(mod, J, repeat):
    args = (J.probs, J.row_probs, J.col_probs)
    n = max(1, 20_000 // (J.probs.size + 10))
    best = min(timeit.repeat(lambda: mod.all_bits(*args), number=n, repeat=repeat))
    return best / n


def bench_harness(pure: bool, trials: int) -> float:
    env = dict(os.environ)
    env.pop("FLOWINFO_PURE_PYTHON", None)
    if pure:
        env["FLOWINFO_PURE_PYTHON"] = "1"
    code = (
        "import time; from flowinfo.harness import HarnessConfig, run_checks; "
        f"t = time.perf_counter(); run_checks(HarnessConfig(trials={trials})); "
        "print(time.perf_counter() - t)"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--harness-trials", type=int, default=2000)
    args = ap.parse_args(argv)

    print(f"{'size':>9}  {'python us':>10}  {'cython us':>10}  {'speedup':>7}")
    for rows, cols in SIZES:
        J = sample_joint(rows, cols, 1)
        tp = bench_kernel(_kernels_py, J, args.repeat) * 1e6
        if _kernels_c is None:
            print(f"{rows:>4}x{cols:<4}  {tp:10.2f}  {'n/a':>10}  {'':>7}")
            continue
        tc = bench_kernel(_kernels_c, J, args.repeat) * 1e6
        print(f"{rows:>4}x{cols:<4}  {tp:10.2f}  {tc:10.2f}  {tp / tc:6.1f}x")

    print(f"\nharness, {args.harness_trials} trials per size:")
    tp = bench_harness(True, args.harness_trials)
    print(f"  python  {tp:6.2f} s")
    if _kernels_c is not None:
        tc = bench_harness(False, args.harness_trials)
        print(f"  cython  {tc:6.2f} s  ({tp / tc:.1f}x)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
