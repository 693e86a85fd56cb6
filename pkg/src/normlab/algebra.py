"""Finite-dimensional associative algebras given by structure constants.

An element is a coordinate vector over the base field (a small finite
field, handled through its lookup tables). Its canonical encoding is the
mixed-radix value ``sum(x_i * q**i)``, which is also the row index into
``all_elements()``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels, linalg
from .errors import BadAlgebra, CapExceeded, MixedFields
from .ffield import Field

ELEMENT_CAP = 2 ** 16


@dataclass(eq=False)
class StructureAlgebra:
    """e_i * e_j = sum_k consts[i, j, k] e_k, with declared structural metadata.

    ``f2_components`` is the declared number of simple components of A/J(A)
    isomorphic to F_2; the two exception flags are derived from it. Declared
    metadata is checked against brute force by the probe, never trusted.
    """

    F: Field
    consts: np.ndarray
    identity: tuple[int, ...]
    name: str
    kind: str = "generic"
    f2_components: int = 0
    simple: bool = False
    known_radical: list[list[int]] | None = None
    group_table: object = None
    semisimple_dim: int | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.consts = np.ascontiguousarray(self.consts, dtype=np.int64)
        d = self.consts.shape[0]
        if self.consts.shape != (d, d, d):
            raise BadAlgebra(f"{self.name}: structure constants must be d x d x d")
        if len(self.identity) != d:
            raise BadAlgebra(f"{self.name}: identity has wrong length")
        self.identity = tuple(int(x) for x in self.identity)

    # ---------------------------------------------------------------- shape
    @property
    def dim(self) -> int:
        return self.consts.shape[0]

    @property
    def q(self) -> int:
        return self.F.order

    @property
    def size(self) -> int:
        return self.q ** self.dim

    @property
    def has_F2_cube_factor(self) -> bool:
        return self.q == 2 and self.f2_components >= 3

    @property
    def has_F2_square_factor(self) -> bool:
        return self.q == 2 and self.f2_components >= 2

    @property
    def tables(self):
        return self.F.small_tables

    def basis_vector(self, i: int) -> tuple[int, ...]:
        v = [0] * self.dim
        v[i] = 1
        return tuple(v)

    def encode(self, x: Sequence[int]) -> int:
        v = 0
        for c in reversed(list(x)):
            v = v * self.q + int(c)
        return v

    def decode(self, n: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.dim):
            n, r = divmod(n, self.q)
            out.append(r)
        return tuple(out)

    # ------------------------------------------------------------ arithmetic
    def mul(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        t = self.tables
        out = kernels.struct_mul(np.array([x]), np.array([y]), self.consts, t.add, t.mul)
        return tuple(int(c) for c in out[0])

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.F.add(int(a), int(b)) for a, b in zip(x, y))

    def sub(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.F.sub(int(a), int(b)) for a, b in zip(x, y))

    def scale(self, c: int, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.F.mul(c, int(a)) for a in x)

    def power(self, x: Sequence[int], e: int) -> tuple[int, ...]:
        out = self.identity
        for _ in range(e):
            out = self.mul(out, x)
        return out

    def left_matrix(self, x: Sequence[int]) -> list[list[int]]:
        """Matrix of y -> x*y acting on column coordinate vectors."""
        F = self.F
        d = self.dim
        m = [[0] * d for _ in range(d)]
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            for j in range(d):
                for k in range(d):
                    c = int(self.consts[i, j, k])
                    if c:
                        m[k][j] = F.add(m[k][j], F.mul(int(xi), c))
        return m

    # ------------------------------------------------------------ validation
    def validate(self) -> None:
        """Associativity on all basis triples and a two-sided identity."""
        d = self.dim
        if d == 0 or not any(self.identity):
            raise BadAlgebra(f"{self.name}: need 0 != 1")
        t = self.tables
        eye = np.eye(d, dtype=np.int64)
        idx = np.array([(i, j, k) for i in range(d) for j in range(d) for k in range(d)], dtype=np.int64)
        if idx.size:
            ei, ej, ek = eye[idx[:, 0]], eye[idx[:, 1]], eye[idx[:, 2]]
            left = kernels.struct_mul(kernels.struct_mul(ei, ej, self.consts, t.add, t.mul), ek,
                                      self.consts, t.add, t.mul)
            right = kernels.struct_mul(ei, kernels.struct_mul(ej, ek, self.consts, t.add, t.mul),
                                       self.consts, t.add, t.mul)
            bad = np.nonzero((left != right).any(axis=1))[0]
            if bad.size:
                i, j, k = idx[bad[0]]
                raise BadAlgebra(f"{self.name}: (e{i} e{j}) e{k} != e{i} (e{j} e{k})")
        one = np.broadcast_to(np.array(self.identity), (d, d))
        if not (np.array_equal(kernels.struct_mul(one, eye, self.consts, t.add, t.mul), eye)
                and np.array_equal(kernels.struct_mul(eye, one, self.consts, t.add, t.mul), eye)):
            raise BadAlgebra(f"{self.name}: identity is not two-sided")

    # ---------------------------------------------------------- enumeration
    def check_enumerable(self, cap: int = ELEMENT_CAP) -> None:
        if self.size > cap:
            raise CapExceeded(f"{self.name}: |A| = {self.size} exceeds the element cap {cap}")

    @cached_property
    def all_elements(self) -> np.ndarray:
        self.check_enumerable()
        return kernels.all_vectors(self.q, self.dim)

    @cached_property
    def unit_mask(self) -> np.ndarray:
        """Units among all elements: left multiplication has full rank."""
        t = self.tables
        mats = kernels.left_mult(self.all_elements, self.consts, t.add, t.mul)
        return kernels.rank_batch(mats, t.add, t.mul, t.neg, t.inv) == self.dim

    @cached_property
    def nilpotent_mask(self) -> np.ndarray:
        # L_x^d = 0 iff x^d = 0, since x^d = L_x^d(1) and L_x^d(y) = x^d y
        t = self.tables
        X = self.all_elements
        acc = np.broadcast_to(np.array(self.identity, dtype=np.int64), X.shape).copy()
        for _ in range(self.dim):
            acc = kernels.struct_mul(acc, X, self.consts, t.add, t.mul)
        return ~acc.any(axis=1)

    def unit_encodings(self) -> np.ndarray:
        return np.nonzero(self.unit_mask)[0]

    def nilpotent_encodings(self) -> np.ndarray:
        return np.nonzero(self.nilpotent_mask)[0]


# ---------------------------------------------------------------- element tests


def is_unit_elem(A: StructureAlgebra, x: Sequence[int]) -> bool:
    return linalg.rank(A.F, A.left_matrix(x)) == A.dim


def is_nilpotent_elem(A: StructureAlgebra, x: Sequence[int]) -> bool:
    m = A.left_matrix(x)
    p = m
    for _ in range(A.dim - 1):
        p = linalg.matmul(A.F, p, m)
    return not any(any(row) for row in p)


def is_zero_divisor(A: StructureAlgebra, x: Sequence[int]) -> bool:
    """x*y = 0 or y*x = 0 for some nonzero y, by exhaustive search."""
    t = A.tables
    Y = A.all_elements[1:]
    X = np.broadcast_to(np.array(x, dtype=np.int64), Y.shape)
    left = kernels.struct_mul(X, Y, A.consts, t.add, t.mul)
    right = kernels.struct_mul(Y, X, A.consts, t.add, t.mul)
    return bool((~left.any(axis=1)).any() or (~right.any(axis=1)).any())


def unit_set(A: StructureAlgebra, cap: int = ELEMENT_CAP) -> list[tuple[int, ...]]:
    A.check_enumerable(cap)
    return [A.decode(int(n)) for n in A.unit_encodings()]


# ---------------------------------------------------------------- constructors


def _finish(A: StructureAlgebra, cap: int) -> StructureAlgebra:
    A.check_enumerable(cap)
    A.validate()
    return A


def matrix_unit_index(n: int, i: int, j: int) -> int:
    """Basis index of E_{i,j} (1-based i, j) in M_n, row-major."""
    return (i - 1) * n + (j - 1)


def make_matrix_algebra(F: Field, n: int, cap: int = ELEMENT_CAP) -> StructureAlgebra:
    """M_n(F) on the basis E_{i,j} in row-major order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if F.order ** (n * n) > cap:
        raise CapExceeded(f"|M_{n}({F.name})| exceeds the element cap {cap}")
    d = n * n
    c = np.zeros((d, d, d), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                c[i * n + j, j * n + l, i * n + l] = 1
    ident = [0] * d
    for i in range(n):
        ident[i * n + i] = 1
    A = StructureAlgebra(
        F, c, tuple(ident), f"M_{n}({F.name})", kind="matrix",
        f2_components=1 if (n == 1 and F.order == 2) else 0,
        simple=True, known_radical=[], semisimple_dim=d, params={"n": n},
    )
    return _finish(A, cap)


def make_triangular(F: Field, n: int, cap: int = ELEMENT_CAP) -> StructureAlgebra:
    """Upper triangular n x n matrices; A/J is F^n, J the strictly upper part."""
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    pos = {p: s for s, p in enumerate(pairs)}
    d = len(pairs)
    if F.order ** d > cap:
        raise CapExceeded(f"|T_{n}({F.name})| exceeds the element cap {cap}")
    c = np.zeros((d, d, d), dtype=np.int64)
    for (i, j), a in pos.items():
        for (k, l), b in pos.items():
            if j == k:
                c[a, b, pos[(i, l)]] = 1
    ident = [0] * d
    for i in range(n):
        ident[pos[(i, i)]] = 1
    radical = []
    for (i, j), a in pos.items():
        if i < j:
            v = [0] * d
            v[a] = 1
            radical.append(v)
    A = StructureAlgebra(
        F, c, tuple(ident), f"T_{n}({F.name})", kind="triangular",
        f2_components=n if F.order == 2 else 0,
        simple=(n == 1), known_radical=radical, semisimple_dim=n, params={"n": n},
    )
    return _finish(A, cap)


def make_field_algebra(F: Field, E: Field, cap: int = ELEMENT_CAP) -> StructureAlgebra:
    """The extension field E viewed as an algebra over its base field F."""
    if E.base != F and not (E == F):
        raise MixedFields(f"{E.name} is not a direct extension of {F.name}")
    if E == F:
        return make_matrix_algebra(F, 1, cap)
    d = E.rel_degree
    basis = [F.order ** i for i in range(d)]
    c = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            c[i, j] = E.coords(E.mul(basis[i], basis[j]))
    ident = tuple(E.coords(1))
    A = StructureAlgebra(
        F, c, ident, f"{E.name}/{F.name}", kind="field",
        f2_components=0, simple=True, known_radical=[], semisimple_dim=d,
        params={"degree": d},
    )
    return _finish(A, cap)


def make_direct_sum(parts: Sequence[StructureAlgebra], cap: int = ELEMENT_CAP, name: str | None = None) -> StructureAlgebra:
    if not parts:
        raise ValueError("empty direct sum")
    F = parts[0].F
    if any(P.F != F for P in parts):
        raise MixedFields("direct summands must share a base field")
    d = sum(P.dim for P in parts)
    if F.order ** d > cap:
        raise CapExceeded(f"direct sum of dimension {d} exceeds the element cap {cap}")
    c = np.zeros((d, d, d), dtype=np.int64)
    ident = []
    radical: list[list[int]] | None = []
    off = 0
    for P in parts:
        s = slice(off, off + P.dim)
        c[s, s, s] = P.consts
        ident.extend(P.identity)
        if radical is not None and P.known_radical is not None:
            for v in P.known_radical:
                radical.append([0] * off + list(v) + [0] * (d - off - P.dim))
        else:
            radical = None
        off += P.dim
    semis = None
    if all(P.semisimple_dim is not None for P in parts):
        semis = sum(P.semisimple_dim for P in parts)
    A = StructureAlgebra(
        F, c, tuple(ident), name or " + ".join(P.name for P in parts), kind="direct_sum",
        f2_components=sum(P.f2_components for P in parts),
        simple=(len(parts) == 1 and parts[0].simple), known_radical=radical,
        semisimple_dim=semis, params={"parts": [P.name for P in parts]},
    )
    return _finish(A, cap)


def make_power(F: Field, j: int, cap: int = ELEMENT_CAP) -> StructureAlgebra:
    """F^j = F + ... + F."""
    one = make_matrix_algebra(F, 1, cap)
    return make_direct_sum([one] * j, cap, name=f"{F.name}^{j}")


def make_group_algebra_struct(F: Field, table, cap: int = ELEMENT_CAP) -> StructureAlgebra:
    """FG on the group-element basis. Over F_2 exactly one simple component is
    F_2 (any algebra map FG -> F_2 sends every g to 1)."""
    n = table.order
    if F.order ** n > cap:
        raise CapExceeded(f"|{F.name}{table.name}| exceeds the element cap {cap}")
    c = np.zeros((n, n, n), dtype=np.int64)
    for g in range(n):
        for h in range(n):
            c[g, h, table.mul(g, h)] = 1
    ident = [0] * n
    ident[table.identity] = 1
    A = StructureAlgebra(
        F, c, tuple(ident), f"{F.name}{table.name}", kind="group_algebra",
        f2_components=1 if F.order == 2 else 0,
        simple=(n == 1), known_radical=[] if n == 1 else None, group_table=table,
        params={"group": table.name},
    )
    return _finish(A, cap)
