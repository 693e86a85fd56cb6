"""Compare the numba and numpy kernel backends on representative workloads.

    python3 benchmarks/bench_kernels.py [--repeat N]

Numba timings exclude the first (compiling) call. Outputs are checked for
equality before anything is timed.
"""

import argparse
import timeit

import numpy as np

from normlab import _kernels_nb as nb
from normlab import _kernels_np as npk
from normlab.algebra import make_matrix_algebra
from normlab.ffield import finite_field
from normlab.normal import conjugate_matrices
from normlab.tower import build_tower


def workloads():
    T = build_tower(2, 1, 10)
    kt = T.k_tables
    values = np.arange(T.order, dtype=np.int64)
    mats = conjugate_matrices(T, values)
    yield "rank_batch F_1024/F_2 (1024 x 10x10)", lambda m: m.rank_batch(mats, kt.add, kt.mul, kt.neg, kt.inv)

    T = build_tower(3, 1, 6)
    kt = T.k_tables
    mats = conjugate_matrices(T, np.arange(T.order, dtype=np.int64))
    yield "rank_batch F_729/F_3 (729 x 6x6)", lambda m: m.rank_batch(mats, kt.add, kt.mul, kt.neg, kt.inv)

    F = finite_field(2, 16)
    small = finite_field(2, 1).small_tables
    mat = np.array([F.coords(F.mul(2, 2 ** j)) for j in range(16)], dtype=np.int64)  # multiplication by t
    v0 = np.zeros(16, dtype=np.int64)
    v0[0] = 1
    yield "orbit 2^16 steps, 16x16 over F_2", lambda m: m.orbit(v0, mat, 2 ** 16, small.add, small.mul)

    A = make_matrix_algebra(finite_field(3, 1), 2)
    t = A.tables
    X = A.all_elements
    Y = X[::-1].copy()
    yield "struct_mul M_2(F_3), 81 pairs x 200", lambda m: [m.struct_mul(X, Y, A.consts, t.add, t.mul) for _ in range(200)]
    yield "left_mult M_2(F_3), all 81", lambda m: m.left_mult(X, A.consts, t.add, t.mul)

    rng = np.random.default_rng(0)
    a = rng.integers(0, 3 ** 12, 2 ** 18)
    b = rng.integers(0, 3 ** 12, 2 ** 18)
    yield "digit_add 2^18 encodings, p = 3, 12 digits", lambda m: m.digit_add(a, b, 3, 12)

    vecs = rng.integers(0, 4, (2 ** 16, 8))
    mat4 = rng.integers(0, 4, (8, 8))
    t4 = finite_field(2, 2).small_tables
    yield "vecmat 2^16 x 8 @ 8x8 over F_4", lambda m: m.vecmat(vecs, mat4, t4.add, t4.mul)


def same(x, y):
    if isinstance(x, list):
        return all(np.array_equal(a, b) for a, b in zip(x, y))
    return np.array_equal(x, y)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'workload':48s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, fn in workloads():
        r_np, r_nb = fn(npk), fn(nb)  # also compiles the numba path
        if not same(r_np, r_nb):
            raise SystemExit(f"backends disagree on {name}")
        t_np = min(timeit.repeat(lambda: fn(npk), number=1, repeat=args.repeat)) * 1e3
        t_nb = min(timeit.repeat(lambda: fn(nb), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:48s} {t_np:10.2f} {t_nb:10.2f} {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
