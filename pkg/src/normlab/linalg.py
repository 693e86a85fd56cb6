"""Gaussian elimination over a finite field, on lists of integer encodings.

This is the element-level path used by single-object queries. Batched scans
go through ``kernels.rank_batch`` instead; tests cross-check the two.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DivisionByZero
from .ffield import Field

Matrix = list[list[int]]


def rref(F: Field, rows: Sequence[Sequence[int]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in rows]
    if not a:
        return a, []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        s = F.inv(a[r][col])
        a[r] = [F.mul(s, x) for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(F: Field, rows: Sequence[Sequence[int]]) -> int:
    return len(rref(F, rows)[1])


def nullspace(F: Field, rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis of {v : M v = 0} for the matrix with the given rows."""
    if ncols is None:
        ncols = len(rows[0])
    red, pivots = rref(F, rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(red[i][fc])
        basis.append(v)
    return basis


def matmul(F: Field, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for t in range(k):
            x = a[i][t]
            if x == 0:
                continue
            row = b[t]
            for j in range(m):
                if row[j]:
                    out[i][j] = F.add(out[i][j], F.mul(x, row[j]))
    return out


def vecmat(F: Field, v: Sequence[int], m: Sequence[Sequence[int]]) -> list[int]:
    return matmul(F, [list(v)], m)[0]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def inverse(F: Field, m: Sequence[Sequence[int]]) -> Matrix:
    n = len(m)
    aug = [list(row) + e for row, e in zip(m, identity(n))]
    red, pivots = rref(F, aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return [row[n:] for row in red]


def in_span(F: Field, basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    if not basis:
        return not any(v)
    return rank(F, list(basis) + [list(v)]) == rank(F, basis)
