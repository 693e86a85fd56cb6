"""Normal elements, primitive elements, and the multiplier group C of a tower.

Single-element queries (``is_normal``, ``mult_order``, ``theorem1_conditions``,
``cocycle``) use exact element arithmetic. Whole-field scans go through the
log tables and batched kernels; the test suite checks the two against each
other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

from . import kernels, linalg
from .errors import CapExceeded, NotFound, NotInC, ZeroElement
from .ffield import FieldElement, Polynomial, element_order, factor_poly
from .tower import Tower

ENUM_CAP = 2 ** 20
_CHUNK = 1 << 16


# ---------------------------------------------------------------- normality


def is_normal(tower: Tower, alpha: FieldElement) -> bool:
    """True iff the conjugates of alpha are linearly independent over K."""
    rows = [tower.k_coords(c) for c in tower.conjugates(alpha)]
    return linalg.rank(tower.K, rows) == tower.m


def conjugate_matrices(tower: Tower, values) -> np.ndarray:
    """(N, m, m) array; row i of block n holds the K-coordinates of sigma^i(values[n])."""
    values = np.asarray(values, dtype=np.int64)
    rows = [tower.coords_array(tower.tau_values(i, values)) for i in range(tower.m)]
    return np.stack(rows, axis=1)


def normal_mask(tower: Tower) -> np.ndarray:
    """Boolean mask over all encodings of L marking the normal elements."""
    kt = tower.k_tables
    out = np.zeros(tower.order, dtype=bool)
    for lo in range(0, tower.order, _CHUNK):
        vals = np.arange(lo, min(lo + _CHUNK, tower.order), dtype=np.int64)
        ranks = kernels.rank_batch(conjugate_matrices(tower, vals), kt.add, kt.mul, kt.neg, kt.inv)
        out[lo:lo + len(vals)] = ranks == tower.m
    return out


@dataclass(frozen=True, eq=False)
class NormalSet:
    """The set B of elements whose conjugates form a K-basis of L."""

    tower: Tower
    encodings: np.ndarray

    @property
    def cardinality(self) -> int:
        return int(self.encodings.size)

    def __len__(self):
        return self.cardinality

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.tower.order, dtype=bool)
        m[self.encodings] = True
        return m

    @cached_property
    def members(self) -> frozenset:
        return frozenset(FieldElement(self.tower.L, int(v)) for v in self.encodings)

    def __contains__(self, alpha) -> bool:
        v = alpha.value if isinstance(alpha, FieldElement) else int(alpha)
        return bool(self.mask[v])


def _check_cap(tower: Tower, cap: int):
    if tower.order > cap:
        raise CapExceeded(f"|L| = {tower.order} exceeds the enumeration cap {cap}")


def enumerate_B(tower: Tower, cap: int = ENUM_CAP) -> NormalSet:
    _check_cap(tower, cap)
    enc = np.nonzero(normal_mask(tower))[0].astype(np.int64)
    if enc.size == 0:
        raise NotFound(f"no normal element in {tower.id}")
    return NormalSet(tower, enc)


def normal_count_formula(tower: Tower) -> int:
    """prod q^(d_i (e_i - 1)) (q^d_i - 1) over x^m - 1 = prod f_i^e_i."""
    K = tower.K
    xm1 = Polynomial(K, [K.neg(1)] + [0] * (tower.m - 1) + [1])
    total = 1
    q = tower.q
    for f, e in factor_poly(xm1):
        d = f.degree
        total *= q ** (d * (e - 1)) * (q ** d - 1)
    return total


# ---------------------------------------------------------- primitive elements


def mult_order(tower: Tower, alpha: FieldElement) -> int:
    alpha = tower._lift(alpha)
    if alpha.value == 0:
        raise ZeroElement("0 has no multiplicative order")
    return element_order(tower.L, alpha.value)


def is_primitive(tower: Tower, alpha: FieldElement) -> bool:
    return mult_order(tower, alpha) == tower.order - 1


def primitive_mask(tower: Tower) -> np.ndarray:
    out = np.zeros(tower.order, dtype=bool)
    nz = np.arange(1, tower.order, dtype=np.int64)
    out[1:] = tower.tables.order_of(nz) == tower.order - 1
    return out


def find_primitive_normal(tower: Tower, cap: int = ENUM_CAP, B: NormalSet | None = None) -> FieldElement:
    """Least element (by encoding) that is both primitive and normal.

    The candidate found by the table scan is re-certified with exact element
    arithmetic before it is returned.
    """
    _check_cap(tower, cap)
    nmask = B.mask if B is not None else normal_mask(tower)
    hits = np.nonzero(nmask & primitive_mask(tower))[0]
    if hits.size == 0:
        raise NotFound(f"no primitive normal element in {tower.id}")
    alpha = FieldElement(tower.L, int(hits[0]))
    if not (is_primitive(tower, alpha) and is_normal(tower, alpha)):
        raise AssertionError(f"table scan and exact check disagree on {alpha}")
    return alpha


# --------------------------------------------------------------- the group C


def w_count(tower: Tower) -> int:
    """Number of m-th roots of unity in K*, by exhaustive count."""
    K = tower.K
    return sum(1 for mu in range(1, K.order) if K.pow(mu, tower.m) == 1)


@dataclass(frozen=True)
class Conditions:
    c1: bool
    c2: bool
    c3: bool
    c4: bool

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (self.c1, self.c2, self.c3, self.c4)

    @property
    def agree(self) -> bool:
        return len(set(self.as_tuple())) == 1


def theorem1_conditions(tower: Tower, gamma: FieldElement, B: NormalSet, w: int | None = None) -> Conditions:
    """The four conditions on gamma, each evaluated on its own terms."""
    gamma = tower._lift(gamma)
    if gamma.value == 0:
        raise ZeroElement("gamma must be nonzero")
    if w is None:
        w = w_count(tower)
    members = B.members
    image = {gamma * beta for beta in members}
    c1 = all(x in members for x in image)
    c2 = image == members
    c3 = all(tower.in_K(tower.apply_tau(i, gamma) / gamma) for i in range(tower.m))
    c4 = tower.in_K(gamma ** w)
    return Conditions(c1, c2, c3, c4)


@dataclass(frozen=True, eq=False)
class ConditionSweep:
    """Condition vectors for every gamma in L*, indexed by encoding - 1."""

    tower: Tower
    gammas: np.ndarray
    c1: np.ndarray
    c2: np.ndarray
    c3: np.ndarray
    c4: np.ndarray

    def discrepancies(self) -> np.ndarray:
        same = (self.c1 == self.c2) & (self.c2 == self.c3) & (self.c3 == self.c4)
        return self.gammas[~same]

    def vector(self, v: int) -> tuple[bool, bool, bool, bool]:
        i = v - 1
        return (bool(self.c1[i]), bool(self.c2[i]), bool(self.c3[i]), bool(self.c4[i]))


def theorem1_sweep(tower: Tower, B: NormalSet, w: int | None = None) -> ConditionSweep:
    if w is None:
        w = w_count(tower)
    t = tower.tables
    q = tower.q
    gammas = np.arange(1, tower.order, dtype=np.int64)
    n = tower.order - 1
    bsorted = np.sort(B.encodings)
    blog = t.log[bsorted]
    c1 = np.empty(n, dtype=bool)
    c2 = np.empty(n, dtype=bool)
    rows = max(1, (1 << 22) // max(1, bsorted.size))
    for lo in range(0, n, rows):
        g = gammas[lo:lo + rows]
        prod = t.exp[(t.log[g][:, None] + blog[None, :]) % n]
        c1[lo:lo + len(g)] = B.mask[prod].all(axis=1)
        c2[lo:lo + len(g)] = (np.sort(prod, axis=1) == bsorted[None, :]).all(axis=1)
    c3 = np.ones(n, dtype=bool)
    for i in range(tower.m):
        ratio = t.div(tower.tau_values(i, gammas), gammas)
        c3 &= ratio < q
    c4 = t.pow(gammas, w) < q
    return ConditionSweep(tower, gammas, c1, c2, c3, c4)


@dataclass(frozen=True, eq=False)
class GammaGroup:
    """C = {gamma in L* : gamma^w in K*} with its subgroup certification."""

    tower: Tower
    encodings: np.ndarray
    w: int
    contains_K: bool
    closed_mul: bool
    closed_inv: bool

    @property
    def cardinality(self) -> int:
        return int(self.encodings.size)

    @property
    def is_subgroup(self) -> bool:
        return self.contains_K and self.closed_mul and self.closed_inv

    @cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.tower.order, dtype=bool)
        m[self.encodings] = True
        return m

    @cached_property
    def members(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.tower.L, int(v)) for v in self.encodings)


def compute_C(tower: Tower, cap: int = ENUM_CAP, w: int | None = None) -> GammaGroup:
    _check_cap(tower, cap)
    if w is None:
        w = w_count(tower)
    t = tower.tables
    nz = np.arange(1, tower.order, dtype=np.int64)
    enc = nz[t.pow(nz, w) < tower.q]
    mask = np.zeros(tower.order, dtype=bool)
    mask[enc] = True
    contains_K = bool(mask[1:tower.q].all())
    closed_mul = bool(mask[t.mul(enc[:, None], enc[None, :])].all())
    closed_inv = bool(mask[t.inv(enc)].all())
    return GammaGroup(tower, enc, w, contains_K, closed_mul, closed_inv)


# ------------------------------------------------------- characters of G


@dataclass(frozen=True)
class CharacterTable:
    """Hom(G, K*), each homomorphism stored as the image of sigma."""

    tower: Tower
    homs: tuple[FieldElement, ...]

    @property
    def trivial(self) -> FieldElement:
        return self.tower.K.one

    def value(self, hom: FieldElement, i: int) -> FieldElement:
        return hom ** (i % self.tower.m)

    def product(self, a: FieldElement, b: FieldElement) -> FieldElement:
        return a * b

    def __len__(self):
        return len(self.homs)


def character_table(tower: Tower) -> CharacterTable:
    K = tower.K
    homs = tuple(FieldElement(K, mu) for mu in range(1, K.order) if K.pow(mu, tower.m) == 1)
    return CharacterTable(tower, homs)


def hom_values(tower: Tower, gamma: FieldElement) -> list[FieldElement]:
    """sigma^i(gamma)/gamma for i = 0..m-1 (elements of L)."""
    gamma = tower._lift(gamma)
    if gamma.value == 0:
        raise ZeroElement("gamma must be nonzero")
    return [tower.apply_tau(i, gamma) / gamma for i in range(tower.m)]


def cocycle(tower: Tower, gamma: FieldElement) -> FieldElement:
    """The homomorphism sigma^i -> sigma^i(gamma)/gamma, given by its value at sigma."""
    vals = hom_values(tower, gamma)
    for i, v in enumerate(vals):
        if not tower.in_K(v):
            raise NotInC(f"sigma^{i}({gamma})/{gamma} = {v} is not in {tower.K.name}")
    return tower.to_K(vals[1 % tower.m]) if tower.m > 1 else tower.K.one


@dataclass
class HomIsoReport:
    tower_id: str
    n_cosets: int
    n_homs: int
    w: int
    well_defined: bool = True
    homomorphism: bool = True
    multiplicative_in_G: bool = True
    injective: bool = True
    surjective: bool = True
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.well_defined and self.homomorphism and self.multiplicative_in_G
                and self.injective and self.surjective and self.n_cosets == self.n_homs == self.w)


def verify_hom_iso(tower: Tower, C: GammaGroup | None = None, cap: int = ENUM_CAP) -> HomIsoReport:
    """Check that gamma K* -> (tau -> tau(gamma)/gamma) is an isomorphism C/K* -> Hom(G, K*)."""
    if C is None:
        C = compute_C(tower, cap)
    table = character_table(tower)
    L = tower.L
    kstar = [FieldElement(L, c) for c in range(1, tower.q)]
    values = {}
    for g in C.members:
        try:
            values[g] = cocycle(tower, g)
        except NotInC as exc:
            raise AssertionError(f"C member outside the cocycle domain: {exc}") from exc
    coset_rep = {g: min(c * g for c in kstar).value for g in C.members}
    reps = sorted(set(coset_rep.values()))
    rep = FieldElement
    report = HomIsoReport(tower.id, len(reps), len(table), C.w)

    for g in C.members:
        for c in kstar:
            if values[c * g] != values[g]:
                report.well_defined = False
                report.failures.append(("well_defined", [g.value, c.value]))
        hv = hom_values(tower, g)
        for i in range(tower.m):
            for j in range(tower.m):
                if hv[(i + j) % tower.m] != hv[i] * hv[j]:
                    report.multiplicative_in_G = False
                    report.failures.append(("multiplicative_in_G", [g.value, i, j]))
    members = C.members
    for a in members:
        for b in members:
            if values[a * b] != values[a] * values[b]:
                report.homomorphism = False
                report.failures.append(("homomorphism", [a.value, b.value]))
    seen = {}
    for r in reps:
        v = values[rep(L, r)]
        if v in seen:
            report.injective = False
            report.failures.append(("injective", [seen[v], r]))
        seen[v] = r
    image = {v.value for v in values.values()}
    target = {h.value for h in table.homs}
    if image != target:
        report.surjective = False
        report.failures.append(("surjective", sorted(target - image)))
    return report


# ---------------------------------------------------- supporting invariants


def check_observations(tower: Tower, B: NormalSet, good_gammas=None, pair_limit: int = 256) -> list:
    """Scaling by K*, Galois stability, and composition of multipliers; returns failures.

    ``good_gammas`` are encodings with gamma*B inside B (condition (i)); pairs of
    them are checked when |L| <= pair_limit.
    """
    t = tower.tables
    failures = []
    bsorted = np.sort(B.encodings)
    for a in range(1, tower.q):
        img = np.sort(t.mul(a, bsorted))
        if not np.array_equal(img, bsorted):
            failures.append(("scale_by_K", [a]))
    for i in range(tower.m):
        img = np.sort(tower.tau_values(i, bsorted))
        if not np.array_equal(img, bsorted):
            failures.append(("galois_stable", [i]))
    if good_gammas is not None and tower.order <= pair_limit:
        for g1 in good_gammas:
            g1B = t.mul(int(g1), bsorted)
            g1mask = np.zeros(tower.order, dtype=bool)
            g1mask[g1B] = True
            for g2 in good_gammas:
                g12B = t.mul(t.mul(int(g1), int(g2)), bsorted)
                if not (g1mask[g12B].all() and B.mask[g12B].all()):
                    failures.append(("composition", [int(g1), int(g2)]))
    return failures


def sigma_stability(tower: Tower, C: GammaGroup, N_members: np.ndarray) -> list:
    """gamma*N is sigma-stable exactly when gamma lies in C; returns mismatching gammas."""
    t = tower.tables
    bad = []
    for g in range(1, tower.order):
        gN = np.sort(t.mul(g, N_members))
        sgN = np.sort(tower.tau_values(1, gN))
        stable = bool(np.array_equal(gN, sgN))
        if stable != bool(C.mask[g]):
            bad.append(g)
    return bad


def roots_of_unity_check(tower: Tower, w: int) -> bool:
    """{mu in K* : mu^m = 1} is exactly the set of roots of x^w - 1 in L."""
    S = {mu for mu in range(1, tower.q) if tower.K.pow(mu, tower.m) == 1}
    nz = np.arange(1, tower.order, dtype=np.int64)
    roots = set(int(v) for v in nz[tower.tables.pow(nz, w) == 1])
    return len(S) == w and roots == S and w == gcd(tower.m, tower.q - 1)
