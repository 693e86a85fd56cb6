"""Group algebras FG, augmentation, units, and the maps between KG and L.

For a tower K in L with Galois group G = <sigma> of order m, the group
algebra KG uses the cyclic table with index i standing for sigma^i. Fixing a
normal element a, ``a_tilde`` sends sum r_i sigma^i to sum r_i sigma^i(a),
and ``gamma_transport`` pulls multiplication by gamma on L back to KG.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels, linalg
from .algebra import StructureAlgebra, make_group_algebra_struct
from .errors import BadTable, FieldMismatch, NotNormal, ZeroElement
from .ffield import Field, FieldElement
from .normal import is_normal
from .tower import Tower


# ---------------------------------------------------------------- groups


class GroupTable:
    """Finite group on indices 0..n-1 given by its multiplication table."""

    def __init__(self, table: Sequence[Sequence[int]], name: str = "G", labels=None):
        t = np.array(table, dtype=np.int64)
        n = t.shape[0]
        if t.shape != (n, n):
            raise BadTable("table must be square")
        self.table = t
        self.order = n
        self.name = name
        self.labels = labels
        self._validate()
        self.identity = next(e for e in range(n) if (t[e] == np.arange(n)).all() and (t[:, e] == np.arange(n)).all())
        self.inverse = np.array([int(np.nonzero(t[g] == self.identity)[0][0]) for g in range(n)], dtype=np.int64)

    def _validate(self):
        t, n = self.table, self.order
        ids = np.arange(n)
        if ((t < 0) | (t >= n)).any():
            raise BadTable("entries out of range")
        for g in range(n):
            if sorted(t[g]) != list(ids) or sorted(t[:, g]) != list(ids):
                raise BadTable(f"row/column {g} is not a permutation")
        if not any((t[e] == ids).all() and (t[:, e] == ids).all() for e in range(n)):
            raise BadTable("no identity element")
        left = t[t[:, :, None], ids[None, None, :]]  # (gh)k
        right = t[ids[:, None, None], t[None, :, :]]  # g(hk)
        if not np.array_equal(left, right):
            raise BadTable("table is not associative")

    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def __repr__(self):
        return f"GroupTable({self.name}, order={self.order})"


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise BadTable("cyclic group order must be >= 1")
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)], name=f"C{n}")


def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    """Pairs (g, h) indexed g * |H| + h."""
    nh = H.order
    n = G.order * nh
    tab = [[G.mul(a // nh, b // nh) * nh + H.mul(a % nh, b % nh) for b in range(n)] for a in range(n)]
    return GroupTable(tab, name=f"{G.name}x{H.name}")


def symmetric_group(n: int) -> GroupTable:
    """S_n on permutations of range(n) in lexicographic order (identity first)."""
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    # (g h)(x) = g(h(x))
    tab = [[index[tuple(g[h[x]] for x in range(n))] for h in perms] for g in perms]
    return GroupTable(tab, name=f"S{n}", labels=perms)


def parse_group(text: str) -> GroupTable:
    """'C6', 'S3', 'C2xC2', ... ; factors joined by 'x'."""
    parts = [s.strip() for s in text.split("x") if s.strip()]
    if not parts:
        raise BadTable(f"empty group description {text!r}")
    groups = []
    for s in parts:
        if s[0] in "Cc" and s[1:].isdigit():
            groups.append(cyclic_group(int(s[1:])))
        elif s[0] in "Ss" and s[1:].isdigit():
            groups.append(symmetric_group(int(s[1:])))
        else:
            raise BadTable(f"unknown group factor {s!r}")
    G = groups[0]
    for H in groups[1:]:
        G = direct_product(G, H)
    return G


# ---------------------------------------------------------- group algebras


class GroupAlgebra:
    """Parent handle for FG."""

    def __init__(self, F: Field, table: GroupTable):
        self.F = F
        self.group = table

    @property
    def dim(self) -> int:
        return self.group.order

    @property
    def name(self) -> str:
        return f"{self.F.name}{self.group.name}"

    def __eq__(self, other):
        return (isinstance(other, GroupAlgebra) and self.F == other.F
                and np.array_equal(self.group.table, other.group.table))

    def __hash__(self):
        return hash((self.F.key, self.group.order))

    def __call__(self, coeffs: Sequence) -> GroupAlgebraElement:
        cs = tuple(c.value if isinstance(c, FieldElement) else int(c) for c in coeffs)
        if len(cs) != self.dim:
            raise ValueError(f"expected {self.dim} coefficients")
        return GroupAlgebraElement(self, cs)

    def g(self, i: int) -> GroupAlgebraElement:
        cs = [0] * self.dim
        cs[i] = 1
        return GroupAlgebraElement(self, tuple(cs))

    @property
    def one(self) -> GroupAlgebraElement:
        return self.g(self.group.identity)

    @property
    def zero(self) -> GroupAlgebraElement:
        return GroupAlgebraElement(self, (0,) * self.dim)

    def from_encoding(self, n: int) -> GroupAlgebraElement:
        q = self.F.order
        cs = []
        for _ in range(self.dim):
            n, r = divmod(n, q)
            cs.append(r)
        return GroupAlgebraElement(self, tuple(cs))

    def elements(self):
        for n in range(self.F.order ** self.dim):
            yield self.from_encoding(n)

    @cached_property
    def structure(self) -> StructureAlgebra:
        return make_group_algebra_struct(self.F, self.group)


def group_ring(F: Field, table: GroupTable) -> GroupAlgebra:
    return GroupAlgebra(F, table)


@dataclass(frozen=True)
class GroupAlgebraElement:
    parent: GroupAlgebra
    coeffs: tuple[int, ...]

    def _same(self, other):
        if not isinstance(other, GroupAlgebraElement) or other.parent != self.parent:
            raise FieldMismatch("group algebra elements from different parents")

    def __add__(self, other):
        self._same(other)
        F = self.parent.F
        return GroupAlgebraElement(self.parent, tuple(F.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        F = self.parent.F
        return GroupAlgebraElement(self.parent, tuple(F.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        F = self.parent.F
        return GroupAlgebraElement(self.parent, tuple(F.neg(a) for a in self.coeffs))

    def __mul__(self, other):
        F = self.parent.F
        if isinstance(other, (int, FieldElement)):
            c = int(other) % F.p if isinstance(other, int) else other.value
            return GroupAlgebraElement(self.parent, tuple(F.mul(c, a) for a in self.coeffs))
        self._same(other)
        G = self.parent.group
        out = [0] * G.order
        for g, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for h, b in enumerate(other.coeffs):
                if b:
                    gh = G.mul(g, h)
                    out[gh] = F.add(out[gh], F.mul(a, b))
        return GroupAlgebraElement(self.parent, tuple(out))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, e: int):
        out = self.parent.one
        for _ in range(e):
            out = out * self
        return out

    @property
    def coefficients(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.parent.F, c) for c in self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def encode(self) -> int:
        q = self.parent.F.order
        v = 0
        for c in reversed(self.coeffs):
            v = v * q + c
        return v

    def regular_matrix(self) -> list[list[int]]:
        """Left multiplication by self on column coefficient vectors."""
        F = self.parent.F
        G = self.parent.group
        n = G.order
        m = [[0] * n for _ in range(n)]
        for g, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for h in range(n):
                gh = G.mul(g, h)
                m[gh][h] = F.add(m[gh][h], a)
        return m


def augmentation(x: GroupAlgebraElement) -> FieldElement:
    F = x.parent.F
    total = 0
    for c in x.coeffs:
        total = F.add(total, c)
    return FieldElement(F, total)


def aug_ideal_basis(parent: GroupAlgebra) -> list[GroupAlgebraElement]:
    """{g - 1 : g != 1}, spanning the augmentation ideal."""
    one = parent.one
    return [parent.g(i) - one for i in range(parent.dim) if i != parent.group.identity]


def is_unit_ga(x: GroupAlgebraElement) -> bool:
    return linalg.rank(x.parent.F, x.regular_matrix()) == x.parent.dim


def is_nilpotent_ga(x: GroupAlgebraElement) -> bool:
    F = x.parent.F
    m = x.regular_matrix()
    p = m
    for _ in range(x.parent.dim - 1):
        p = linalg.matmul(F, p, m)
    return not any(any(row) for row in p)


# ------------------------------------------------------------ bridge to L


def tower_group_algebra(tower: Tower) -> GroupAlgebra:
    """K<sigma>, index i standing for sigma^i."""
    return GroupAlgebra(tower.K, cyclic_group(tower.m))


def _require_normal(tower: Tower, a: FieldElement) -> FieldElement:
    a = tower._lift(a)
    if not is_normal(tower, a):
        raise NotNormal(f"{a} is not a normal element of {tower.id}")
    return a


def a_tilde(tower: Tower, a: FieldElement, r: GroupAlgebraElement) -> FieldElement:
    """sum_i r_i sigma^i(a)."""
    a = _require_normal(tower, a)
    if r.parent.F != tower.K or r.parent.dim != tower.m:
        raise FieldMismatch("r must lie in K<sigma>")
    total = tower.L.zero
    for i, c in enumerate(r.coeffs):
        if c:
            total = total + FieldElement(tower.L, c) * tower.apply_tau(i, a)
    return total


def a_tilde_matrix(tower: Tower, a: FieldElement) -> list[list[int]]:
    """Rows are K-coordinates of sigma^i(a); coords(a_tilde(r)) = r @ matrix."""
    a = _require_normal(tower, a)
    return [tower.k_coords(c) for c in tower.conjugates(a)]


def multiplication_matrix(tower: Tower, gamma: FieldElement) -> list[list[int]]:
    """Rows are K-coordinates of gamma * x^j."""
    gamma = tower._lift(gamma)
    return [tower.k_coords(gamma * FieldElement(tower.L, tower.q ** j)) for j in range(tower.m)]


def gamma_matrix(tower: Tower, a: FieldElement, gamma: FieldElement) -> list[list[int]]:
    """Matrix of the transported map on KG (row vector convention)."""
    gamma = tower._lift(gamma)
    if gamma.value == 0:
        raise ZeroElement("gamma must be nonzero")
    K = tower.K
    A = a_tilde_matrix(tower, a)
    return linalg.matmul(K, linalg.matmul(K, A, multiplication_matrix(tower, gamma)), linalg.inverse(K, A))


def gamma_transport(tower: Tower, a: FieldElement, gamma: FieldElement, r: GroupAlgebraElement) -> GroupAlgebraElement:
    """The unique r' with a_tilde(r') = gamma * a_tilde(r)."""
    a = _require_normal(tower, a)
    gamma = tower._lift(gamma)
    if gamma.value == 0:
        raise ZeroElement("gamma must be nonzero")
    K = tower.K
    target = gamma * a_tilde(tower, a, r)
    inv = linalg.inverse(K, a_tilde_matrix(tower, a))
    coeffs = linalg.vecmat(K, tower.k_coords(target), inv)
    out = GroupAlgebraElement(r.parent, tuple(coeffs))
    if a_tilde(tower, a, out) != target:
        raise AssertionError("transport diagram does not commute")
    return out


# ----------------------------------------------------------- batched bridge


def kg_all(tower: Tower) -> np.ndarray:
    """All elements of K<sigma> as coefficient rows; row index = encoding."""
    return kernels.all_vectors(tower.q, tower.m)


def a_tilde_values(tower: Tower, a: FieldElement, R: np.ndarray | None = None) -> np.ndarray:
    """Encodings of a_tilde(r) for each coefficient row r."""
    if R is None:
        R = kg_all(tower)
    kt = tower.k_tables
    mat = np.array(a_tilde_matrix(tower, a), dtype=np.int64)
    return tower.from_coords_array(kernels.vecmat(R, mat, kt.add, kt.mul))


def augmentation_ideal_rows(tower: Tower) -> np.ndarray:
    """Coefficient rows of every element of the augmentation ideal of K<sigma>."""
    R = kg_all(tower)
    kt = tower.k_tables
    ones = np.ones((tower.m, 1), dtype=np.int64)
    aug = kernels.vecmat(R, ones, kt.add, kt.mul)[:, 0]
    return R[aug == 0]


@dataclass
class BridgeReport:
    tower_id: str
    a: int
    bijective: bool
    units_to_B: bool
    aug_to_N: bool
    aug_basis_spans_N: bool
    kg_linear: bool
    failures: list

    @property
    def ok(self) -> bool:
        return (self.bijective and self.units_to_B and self.aug_to_N
                and self.aug_basis_spans_N and self.kg_linear)


def bridge_report(tower: Tower, a: FieldElement, B_mask: np.ndarray, N_members: np.ndarray, unit_mask: np.ndarray) -> BridgeReport:
    """Check that a_tilde is a KG-isomorphism carrying units onto B and the
    augmentation ideal onto N. ``unit_mask`` is indexed by KG encoding."""
    a = tower._lift(a)
    R = kg_all(tower)
    img = a_tilde_values(tower, a, R)
    failures = []
    bijective = np.unique(img).size == tower.order
    if not bijective:
        failures.append(("bijective", []))
    units_img = np.sort(img[unit_mask])
    units_to_B = np.array_equal(units_img, np.nonzero(B_mask)[0])
    if not units_to_B:
        failures.append(("units_to_B", []))
    ws = augmentation_ideal_rows(tower)
    w_img = np.sort(a_tilde_values(tower, a, ws))
    aug_to_N = np.array_equal(w_img, np.sort(N_members))
    if not aug_to_N:
        failures.append(("aug_to_N", []))
    KGp = tower_group_algebra(tower)
    basis_imgs = [a_tilde(tower, a, b) for b in aug_ideal_basis(KGp)]
    rows = [tower.k_coords(x) for x in basis_imgs]
    spans = (all(tower.trace(x).value == 0 for x in basis_imgs)
             and linalg.rank(tower.K, rows) == tower.m - 1) if rows else tower.m == 1
    if not spans:
        failures.append(("aug_basis_spans_N", []))
    shifted = np.roll(R, 1, axis=1)  # sigma * r
    lhs = a_tilde_values(tower, a, shifted)
    rhs = tower.tau_values(1, img)
    kg_linear = np.array_equal(lhs, rhs)
    if not kg_linear:
        failures.append(("kg_linear", [int(x) for x in np.nonzero(lhs != rhs)[0][:5]]))
    return BridgeReport(tower.id, a.value, bool(bijective), bool(units_to_B), bool(aug_to_N),
                        bool(spans), bool(kg_linear), failures)


def transport_values(tower: Tower, a: FieldElement, gamma: FieldElement, R: np.ndarray) -> np.ndarray:
    """Coefficient rows of Gamma(r) for each row r."""
    kt = tower.k_tables
    G = np.array(gamma_matrix(tower, a, gamma), dtype=np.int64)
    return kernels.vecmat(R, G, kt.add, kt.mul)


def diagram_commutes(tower: Tower, a: FieldElement, gamma: FieldElement) -> bool:
    """a_tilde(Gamma(r)) == gamma * a_tilde(r) on all of KG."""
    gamma = tower._lift(gamma)
    R = kg_all(tower)
    lhs = a_tilde_values(tower, a, transport_values(tower, a, gamma, R))
    rhs = tower.tables.mul(gamma.value, a_tilde_values(tower, a, R))
    return bool(np.array_equal(lhs, rhs))


def transported_ideal_meets_units(tower: Tower, a: FieldElement, gamma: FieldElement, unit_mask: np.ndarray) -> np.ndarray:
    """Encodings of units of KG lying in Gamma(augmentation ideal)."""
    ws = augmentation_ideal_rows(tower)
    img = transport_values(tower, a, gamma, ws)
    enc = kernels.from_digits(img, tower.q)
    return np.sort(enc[unit_mask[enc]])


def transport_scan(tower: Tower, a: FieldElement, gammas, unit_mask: np.ndarray):
    """Batched ``diagram_commutes`` and ``transported_ideal_meets_units`` over many gammas.

    Returns (commutes, hits): a bool per gamma and, per gamma, the sorted unit
    encodings found in Gamma(augmentation ideal).
    """
    K, kt = tower.K, tower.k_tables
    A = a_tilde_matrix(tower, a)
    A_inv = linalg.inverse(K, A)
    A_np = np.array(A, dtype=np.int64)
    R = kg_all(tower)
    img = tower.from_coords_array(kernels.vecmat(R, A_np, kt.add, kt.mul))
    ws = augmentation_ideal_rows(tower)
    commutes, hits = [], []
    for g in gammas:
        gamma = FieldElement(tower.L, int(g))
        if gamma.value == 0:
            raise ZeroElement("gamma must be nonzero")
        G = np.array(linalg.matmul(K, linalg.matmul(K, A, multiplication_matrix(tower, gamma)), A_inv), dtype=np.int64)
        moved = kernels.vecmat(R, G, kt.add, kt.mul)
        lhs = tower.from_coords_array(kernels.vecmat(moved, A_np, kt.add, kt.mul))
        commutes.append(bool(np.array_equal(lhs, tower.tables.mul(gamma.value, img))))
        enc = kernels.from_digits(kernels.vecmat(ws, G, kt.add, kt.mul), tower.q)
        hits.append(np.sort(enc[unit_mask[enc]]))
    return commutes, hits
