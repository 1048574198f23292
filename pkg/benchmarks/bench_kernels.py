"""Time the compiled kernels against the numpy fallback.

Run with ``python benchmarks/bench_kernels.py [--repeat N]``.  Prints one row
per kernel with the best-of-N time for each backend and the speedup.
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from chebsturm import _pykernels
from chebsturm.families import legendre
from chebsturm.recurrence import jacobi_matrix

try:
    from chebsturm import _ckernels
except ImportError:  # extension not built
    _ckernels = None


def cases(rng):
    sys = legendre().system(400)
    diag, off2 = jacobi_matrix(sys.alpha, sys.beta, sys.gamma, sys.rho, 401)
    lams = np.ascontiguousarray(rng.uniform(-1, 1, 200))
    table = np.ascontiguousarray(rng.standard_normal((4, 30)))
    signs = np.ascontiguousarray(rng.integers(-1, 2, 4000).astype(np.int8))
    twelve_zeros = np.ascontiguousarray(np.tile(np.array([1, 0], dtype=np.int8), 12))
    return {
        "eigvals_bisect (q=400)": lambda k: k.eigvals_bisect(diag, off2),
        "eval_polys_many (l=400, 200 pts)": lambda k: k.eval_polys_many(
            sys.alpha, sys.beta, sys.gamma, sys.rho, 399, lams),
        "det_sweep (n=4, q=29)": lambda k: k.det_sweep(table, 0.0),
        "oscillation_counts (4000 pts)": lambda k: k.oscillation_counts(signs),
        "splus_bruteforce (12 zeros)": lambda k: k.splus_bruteforce(twelve_zeros),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _ckernels is None:
        raise SystemExit("compiled extension not available; build with pip install -e .")
    rng = np.random.default_rng(0)
    print(f"{'kernel':36s} {'cython [s]':>12s} {'python [s]':>12s} {'speedup':>9s}")
    for name, call in cases(rng).items():
        t_c = min(timeit.repeat(lambda: call(_ckernels), number=1, repeat=args.repeat))
        t_p = min(timeit.repeat(lambda: call(_pykernels), number=1, repeat=args.repeat))
        print(f"{name:36s} {t_c:12.5f} {t_p:12.5f} {t_p / t_c:9.1f}x")


if __name__ == "__main__":
    main()
