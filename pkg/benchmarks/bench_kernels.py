"""Compare the compiled kernels with the numpy fallback.

Each kernel is run on identical random inputs under both backends; outputs
must agree exactly.  An end-to-end timing of H_n(z, w) is taken in a fresh
interpreter per backend, since the backend is fixed at import.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--higgs 5 2]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hkbetti import _kernels_py
from hkbetti.modular import BoxSeries, safe_prime

try:
    from hkbetti import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def kernel_cases(rng, p):
    box = BoxSeries((6, 6, 6))
    npts = 64
    A = rng.integers(0, p, size=(box.n, npts), dtype=np.int64)
    B = rng.integers(0, p, size=(box.n, npts), dtype=np.int64)
    A1 = A.copy()
    A1[0] = 1
    ptr, ia, ib = box.mul_idx
    iptr, iia, iib = box.inv
    lptr, lia, lib, lw = box.log
    invdeg = box.invdeg(p)
    x = rng.integers(1, p, size=4096, dtype=np.int64)
    Y = rng.integers(0, p, size=(256, 96), dtype=np.int64)
    return {
        "series_mul": lambda K: K.series_mul(A, B, ptr, ia, ib, p),
        "series_inv1": lambda K: K.series_inv1(A1, iptr, iia, iib, p),
        "series_log1": lambda K: K.series_log1(A1, lptr, lia, lib, lw, invdeg, p),
        "pow_table": lambda K: K.pow_table(x, -40, 40, p),
        "newton_interp": lambda K: K.newton_interp(Y, 3, p),
    }


def end_to_end(backend, n, g):
    code = ("import time; from hkbetti.families import higgs_H; t=time.perf_counter(); "
            f"H=higgs_H({n}, {g}); print(time.perf_counter()-t, H.n_terms())")
    env = dict(os.environ, HKBETTI_BACKEND=backend)
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True)
    t, terms = res.stdout.split()
    return float(t), int(terms)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--higgs", type=int, nargs=2, default=(5, 2), metavar=("N", "G"))
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the numpy backend is available")
        return 1
    rng = np.random.default_rng(0)
    p = safe_prime(0)
    print(f"{'kernel':<16}{'numpy (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, fn in kernel_cases(rng, p).items():
        t_py, out_py = best_of(lambda: fn(_kernels_py), args.repeat)
        t_cy, out_cy = best_of(lambda: fn(_kernels), args.repeat)
        if not np.array_equal(np.asarray(out_py), np.asarray(out_cy)):
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<16}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>10.1f}")
    n, g = args.higgs
    t_py, m_py = end_to_end("numpy", n, g)
    t_cy, m_cy = end_to_end("cython", n, g)
    if m_py != m_cy:
        raise SystemExit("end-to-end results disagree")
    print(f"{f'higgs_H({n},{g})':<16}{t_py:>12.4f}{t_cy:>12.4f}{t_py / t_cy:>10.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
