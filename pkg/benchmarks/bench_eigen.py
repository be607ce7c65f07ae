"""Timing comparison of the two Jacobi eigensolver backends.

Both backends execute the same cyclic rotation sequence, so agreement is
checked to 1e-9 on every instance while timing.  Matrices are real
workloads: full Laplacians of the nine-point geometry complex, of random
complexes from the seeded generator, and (unless skipped) the 780x780
degree-1 Laplacian of the forty-point geometry.

Run:
    python3 benchmarks/bench_eigen.py
    python3 benchmarks/bench_eigen.py --repeats 5 --skip-pg33
"""

import argparse
import time

import numpy as np

from scx.homology import laplacians
from scx.matroids import ag23_complex, pg33_complex
from scx.numerics.eigen import HAS_NUMBA, eigenvalues_sym
from scx.randomgen import random_complex, trial_rng


def collect_instances(skip_pg33):
    mats = []
    x = ag23_complex()
    mats.append(("ag23 deg 1", laplacians(x, 1).full.astype(np.float64)))
    for t in range(6):
        rng = trial_rng(2024, t)
        x = random_complex(rng, 7, 3)
        k = x.dim
        mats.append((f"random {t} deg {k}", laplacians(x, k).full.astype(np.float64)))
    if not skip_pg33:
        x = pg33_complex()
        mats.append(("pg33 deg 1", laplacians(x, 1).full.astype(np.float64)))
    return mats


def best_time(mat, backend, repeats):
    best = float("inf")
    out = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = eigenvalues_sym(mat, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--skip-pg33", action="store_true",
                    help="leave out the 780x780 instance")
    args = ap.parse_args()

    if not HAS_NUMBA:
        print("numba is not importable; only the numpy backend will run")

    mats = collect_instances(args.skip_pg33)
    if HAS_NUMBA:
        # Compile outside the timed region.
        eigenvalues_sym(np.eye(4), backend="numba")

    print(f"{'instance':<16} {'side':>5} {'numpy (s)':>10} {'numba (s)':>10} {'speedup':>8}")
    for label, mat in mats:
        t_np, w_np = best_time(mat, "numpy", args.repeats)
        if HAS_NUMBA:
            t_nb, w_nb = best_time(mat, "numba", args.repeats)
            gap = float(np.max(np.abs(w_np - w_nb)))
            if gap > 1e-9:
                raise SystemExit(f"backends disagree on {label}: max diff {gap:.3e}")
            print(f"{label:<16} {mat.shape[0]:>5} {t_np:>10.4f} {t_nb:>10.4f} "
                  f"{t_np / t_nb:>7.1f}x")
        else:
            print(f"{label:<16} {mat.shape[0]:>5} {t_np:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
