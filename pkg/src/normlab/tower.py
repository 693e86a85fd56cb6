"""The Galois extension K = F_{p^k} inside L = F_{q^m}, its Frobenius and trace."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import kernels, linalg
from .errors import CapExceeded, FieldMismatch
from .ffield import (
    Field,
    FieldElement,
    extension,
    finite_field,
    least_irreducible,
    prime_field,
)

TOWER_CARD_CAP = 2 ** 20
# apply_tau switches from exponentiation to cached Frobenius matrices above this size
POW_SIGMA_LIMIT = 2 ** 12


@dataclass(frozen=True, eq=False)
class Tower:
    p: int
    k: int
    m: int
    K: Field
    L: Field

    @property
    def q(self) -> int:
        return self.K.order

    @property
    def order(self) -> int:
        return self.L.order

    @property
    def id(self) -> str:
        kmod = self.K.modulus.text("t") if self.K.modulus is not None else "none"
        return f"{self.p}^{self.k}:{self.m}:{kmod}:{self.L.modulus.text('x')}"

    def __repr__(self):
        return f"Tower({self.id})"

    # ---------------------------------------------------------------- elements
    def _lift(self, alpha: FieldElement) -> FieldElement:
        if not isinstance(alpha, FieldElement):
            raise FieldMismatch(f"expected an element of {self.L.name}")
        if alpha.field == self.L:
            return alpha
        if alpha.field == self.K:
            return FieldElement(self.L, alpha.value)
        raise FieldMismatch(f"{alpha.field.name} element is not in {self.L.name}")

    def in_K(self, alpha: FieldElement) -> bool:
        """K sits in L as the constants, i.e. the encodings below q."""
        return self._lift(alpha).value < self.q

    def to_K(self, alpha: FieldElement) -> FieldElement:
        alpha = self._lift(alpha)
        if alpha.value >= self.q:
            raise ValueError(f"{alpha} does not lie in {self.K.name}")
        return FieldElement(self.K, alpha.value)

    def k_coords(self, alpha: FieldElement) -> list[int]:
        return self.L.coords(self._lift(alpha).value)

    def from_k_coords(self, coords) -> FieldElement:
        return FieldElement(self.L, self.L.from_coords([int(c) for c in coords]))

    # ------------------------------------------------------------- Frobenius
    @cached_property
    def sigma_matrices(self) -> list[list[list[int]]]:
        """Matrices of sigma^i on K-coordinates (row vector convention)."""
        mats = []
        basis = [self.q ** j for j in range(self.m)]
        for i in range(self.m):
            e = self.q ** i
            mats.append([self.L.coords(self.L.pow(b, e)) for b in basis])
        return mats

    def apply_tau(self, i: int, alpha: FieldElement) -> FieldElement:
        """sigma^(i mod m)(alpha) = alpha^(q^(i mod m))."""
        alpha = self._lift(alpha)
        i %= self.m
        if self.L.order <= POW_SIGMA_LIMIT:
            return alpha ** (self.q ** i)
        return self._apply_tau_matrix(i, alpha)

    def _apply_tau_matrix(self, i: int, alpha: FieldElement) -> FieldElement:
        row = linalg.vecmat(self.K, self.L.coords(alpha.value), self.sigma_matrices[i % self.m])
        return FieldElement(self.L, self.L.from_coords(row))

    def conjugates(self, alpha: FieldElement) -> list[FieldElement]:
        return [self.apply_tau(i, alpha) for i in range(self.m)]

    # ------------------------------------------------------------------ trace
    def trace(self, alpha: FieldElement) -> FieldElement:
        total = self.L.zero
        for c in self.conjugates(alpha):
            total = total + c
        if total.value >= self.q:
            raise AssertionError(f"trace of {alpha} left K: {total}")
        return FieldElement(self.K, total.value)

    def trace_kernel(self) -> TraceData:
        functional = [self.trace(FieldElement(self.L, self.q ** j)).value for j in range(self.m)]
        vecs = linalg.nullspace(self.K, [functional], self.m)
        return TraceData(self, tuple(self.from_k_coords(v) for v in vecs))

    # ------------------------------------------------------ vectorised helpers
    @property
    def tables(self):
        return self.L.log_tables

    @property
    def k_tables(self):
        return self.K.small_tables

    def tau_values(self, i: int, values) -> np.ndarray:
        return self.tables.pow(values, self.q ** (i % self.m))

    def coords_array(self, values) -> np.ndarray:
        return kernels.to_digits(values, self.q, self.m)

    def from_coords_array(self, coords) -> np.ndarray:
        return kernels.from_digits(coords, self.q)

    def trace_values(self, values) -> np.ndarray:
        values = np.asarray(values, dtype=np.int64)
        total = np.zeros_like(values)
        for i in range(self.m):
            total = self.tables.add(total, self.tau_values(i, values))
        return total

    def elements_array(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)


@dataclass(frozen=True)
class TraceData:
    tower: Tower
    basis: tuple[FieldElement, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def members(self) -> np.ndarray:
        """Every element of N, sorted by encoding."""
        t = self.tower
        coeffs = kernels.all_vectors(t.q, len(self.basis))
        if not self.basis:
            return np.zeros(1, dtype=np.int64)
        mat = np.array([t.L.coords(b.value) for b in self.basis], dtype=np.int64)
        kt = t.k_tables
        return np.sort(t.from_coords_array(kernels.vecmat(coeffs, mat, kt.add, kt.mul)))


def build_tower(p: int, k: int, m: int, cap: int = TOWER_CARD_CAP) -> Tower:
    K0 = prime_field(p)
    if k < 1 or m < 1:
        raise ValueError(f"k and m must be positive, got k={k}, m={m}")
    if p ** (k * m) > cap:
        raise CapExceeded(f"|L| = {p}^{k * m} exceeds the cardinality cap {cap}")
    K = K0 if k == 1 else finite_field(p, k)
    f = least_irreducible(K, m)
    L = extension(K, f)
    return Tower(p, k, m, K, L)
