"""Vectorised numpy implementations of the hot kernels.

Every function takes small-field arithmetic as lookup tables
(``add``/``mul`` of shape (q, q), ``neg``/``inv`` of shape (q,)) and works on
int64 arrays of field encodings.
"""

import numpy as np


def vecmat(vecs, mat, add, mul):
    n, r = vecs.shape
    out = np.zeros((n, mat.shape[1]), dtype=np.int64)
    for i in range(r):
        out = add[out, mul[vecs[:, i:i + 1], mat[i][None, :]]]
    return out


def rank_batch(mats, add, mul, neg, inv):
    a = np.array(mats, dtype=np.int64, copy=True)
    n, rows, cols = a.shape
    ranks = np.zeros(n, dtype=np.int64)
    row_ids = np.arange(rows)
    for col in range(cols):
        cand = (a[:, :, col] != 0) & (row_ids[None, :] >= ranks[:, None])
        live = np.nonzero(cand.any(axis=1))[0]
        if live.size == 0:
            continue
        piv = np.argmax(cand[live], axis=1)
        top = ranks[live]
        pivot_rows = a[live, piv].copy()
        a[live, piv] = a[live, top]
        a[live, top] = pivot_rows
        scale = inv[a[live, top, col]]
        a[live, top] = mul[scale[:, None], a[live, top]]
        factor = a[live, :, col].copy()
        factor[np.arange(live.size), top] = 0
        sub = neg[mul[factor[:, :, None], a[live, top][:, None, :]]]
        a[live] = add[a[live], sub]
        ranks[live] += 1
    return ranks


def orbit(vec0, mat, count, add, mul):
    r = vec0.shape[0]
    out = np.empty((count, r), dtype=np.int64)
    if count == 0:
        return out
    out[0] = vec0
    filled = 1
    step = np.array(mat, dtype=np.int64)
    while filled < count:
        take = min(filled, count - filled)
        out[filled:filled + take] = vecmat(out[:take], step, add, mul)
        filled += take
        step = vecmat(step, step, add, mul)
    return out


def digit_add(a, b, p, ndigits):
    if p == 2:
        return np.bitwise_xor(a, b)
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    place = 1
    for _ in range(ndigits):
        out += ((a // place + b // place) % p) * place
        place *= p
    return out


def digit_neg(a, p, ndigits):
    if p == 2:
        return np.array(a, dtype=np.int64, copy=True)
    out = np.zeros_like(a, dtype=np.int64)
    place = 1
    for _ in range(ndigits):
        out += ((p - (a // place) % p) % p) * place
        place *= p
    return out


def struct_mul(x, y, consts, add, mul):
    n, d = x.shape
    out = np.zeros((n, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            row = consts[i, j]
            if not row.any():
                continue
            coef = mul[x[:, i], y[:, j]]
            out = add[out, mul[coef[:, None], row[None, :]]]
    return out


def left_mult(x, consts, add, mul):
    n, d = x.shape
    out = np.zeros((n, d, d), dtype=np.int64)
    for i in range(d):
        block = consts[i].T  # [k, j]
        out = add[out, mul[x[:, i][:, None, None], block[None, :, :]]]
    return out
