"""Loop implementations of the hot kernels, compiled with numba when present.

Signatures match ``_kernels_np`` exactly.
"""

import numpy as np

from ._accel import njit


@njit
def vecmat(vecs, mat, add, mul):
    n, r = vecs.shape
    c = mat.shape[1]
    out = np.zeros((n, c), dtype=np.int64)
    for s in range(n):
        for i in range(r):
            v = vecs[s, i]
            if v == 0:
                continue
            for j in range(c):
                out[s, j] = add[out[s, j], mul[v, mat[i, j]]]
    return out


@njit
def rank_batch(mats, add, mul, neg, inv):
    n, rows, cols = mats.shape
    ranks = np.zeros(n, dtype=np.int64)
    a = np.empty((rows, cols), dtype=np.int64)
    for s in range(n):
        for i in range(rows):
            for j in range(cols):
                a[i, j] = mats[s, i, j]
        r = 0
        for col in range(cols):
            if r == rows:
                break
            piv = -1
            for i in range(r, rows):
                if a[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(cols):
                    t = a[piv, j]
                    a[piv, j] = a[r, j]
                    a[r, j] = t
            scale = inv[a[r, col]]
            for j in range(cols):
                a[r, j] = mul[scale, a[r, j]]
            for i in range(rows):
                if i == r:
                    continue
                f = a[i, col]
                if f == 0:
                    continue
                for j in range(cols):
                    a[i, j] = add[a[i, j], neg[mul[f, a[r, j]]]]
            r += 1
        ranks[s] = r
    return ranks


@njit
def orbit(vec0, mat, count, add, mul):
    r = vec0.shape[0]
    out = np.empty((count, r), dtype=np.int64)
    if count == 0:
        return out
    for j in range(r):
        out[0, j] = vec0[j]
    for s in range(1, count):
        for j in range(r):
            acc = 0
            for i in range(r):
                acc = add[acc, mul[out[s - 1, i], mat[i, j]]]
            out[s, j] = acc
    return out


@njit
def digit_add(a, b, p, ndigits):
    n = a.shape[0]
    out = np.empty(n, dtype=np.int64)
    for s in range(n):
        x = a[s]
        y = b[s]
        acc = 0
        place = 1
        for _ in range(ndigits):
            acc += ((x % p + y % p) % p) * place
            x //= p
            y //= p
            place *= p
        out[s] = acc
    return out


@njit
def digit_neg(a, p, ndigits):
    n = a.shape[0]
    out = np.empty(n, dtype=np.int64)
    for s in range(n):
        x = a[s]
        acc = 0
        place = 1
        for _ in range(ndigits):
            acc += ((p - x % p) % p) * place
            x //= p
            place *= p
        out[s] = acc
    return out


@njit
def struct_mul(x, y, consts, add, mul):
    n, d = x.shape
    out = np.zeros((n, d), dtype=np.int64)
    for s in range(n):
        for i in range(d):
            xi = x[s, i]
            if xi == 0:
                continue
            for j in range(d):
                coef = mul[xi, y[s, j]]
                if coef == 0:
                    continue
                for k in range(d):
                    out[s, k] = add[out[s, k], mul[coef, consts[i, j, k]]]
    return out


@njit
def left_mult(x, consts, add, mul):
    n, d = x.shape
    out = np.zeros((n, d, d), dtype=np.int64)
    for s in range(n):
        for i in range(d):
            xi = x[s, i]
            if xi == 0:
                continue
            for j in range(d):
                for k in range(d):
                    out[s, k, j] = add[out[s, k, j], mul[xi, consts[i, j, k]]]
    return out
