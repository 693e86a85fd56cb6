"""Exhaustive hyperplane/unit checks on small algebras.

Every hyperplane H = ker(f) of an algebra A is sorted into one pattern:

* ``ideal``           H is a two-sided ideal (then H misses every unit),
* ``mixed``           H contains a unit and omits a unit,
* ``avoids-units``    H contains no unit and is not an ideal,
* ``contains-units``  H contains every unit.

The theorem checks read their verdicts off these patterns. "H omits a unit"
is the reading used for the second half of the unit/hyperplane statements:
the literal "H minus U(A) is nonempty" always holds because 0 lies in H.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels, linalg
from .algebra import StructureAlgebra, matrix_unit_index
from .errors import CapExceeded, NotGroupAlgebra, NotSimple
from .ffield import Field

HYPERPLANE_CAP = 2 ** 12
RADICAL_CAP = 4096

CONSISTENT = "consistent"
EXCEPTION = "exception-witnessed"
FALSIFIED = "FALSIFIED"
_RANK = {CONSISTENT: 0, EXCEPTION: 1, FALSIFIED: 2}


# ---------------------------------------------------------------- hyperplanes


@dataclass(frozen=True)
class Hyperplane:
    """ker(functional), functional normalised so its first nonzero entry is 1."""

    algebra: StructureAlgebra
    functional: tuple[int, ...]

    @cached_property
    def basis(self) -> list[list[int]]:
        return linalg.nullspace(self.algebra.F, [list(self.functional)], self.algebra.dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def value(self, x: Sequence[int]) -> int:
        F = self.algebra.F
        total = 0
        for a, b in zip(self.functional, x):
            if a and b:
                total = F.add(total, F.mul(a, int(b)))
        return total

    def __contains__(self, x) -> bool:
        return self.value(x) == 0


def canonical_functional(F: Field, f: Sequence[int]) -> tuple[int, ...]:
    lead = next((c for c in f if c), None)
    if lead is None:
        raise ValueError("zero functional defines no hyperplane")
    s = F.inv(lead)
    return tuple(F.mul(s, int(c)) for c in f)


def hyperplane_count(A: StructureAlgebra) -> int:
    return (A.q ** A.dim - 1) // (A.q - 1)


def hyperplanes(A: StructureAlgebra, cap: int = HYPERPLANE_CAP) -> list[Hyperplane]:
    """All hyperplanes, one canonical functional each, ascending by tuple."""
    count = hyperplane_count(A)
    if count > cap:
        raise CapExceeded(f"{A.name}: {count} hyperplanes exceed the cap {cap}")
    q, d = A.q, A.dim
    funcs = []
    for lead in range(d):
        for tail in range(q ** (d - lead - 1)):
            f = [0] * lead + [1]
            for _ in range(d - lead - 1):
                tail, r = divmod(tail, q)
                f.append(r)
            funcs.append(tuple(f))
    funcs.sort()
    return [Hyperplane(A, f) for f in funcs]


def _functional_matrix(hs: Sequence[Hyperplane]) -> np.ndarray:
    return np.array([h.functional for h in hs], dtype=np.int64).T


def ideal_violation(A: StructureAlgebra, H: Hyperplane) -> tuple | None:
    """A pair (b, e_j, side) with the product leaving H, or None if H is an ideal."""
    t = A.tables
    B = np.array(H.basis, dtype=np.int64).reshape(-1, A.dim)
    if B.size == 0:
        return None
    eye = np.eye(A.dim, dtype=np.int64)
    bb = np.repeat(B, A.dim, axis=0)
    ee = np.tile(eye, (B.shape[0], 1))
    f = np.array(H.functional, dtype=np.int64)[:, None]
    for side, prod in (("left", kernels.struct_mul(ee, bb, A.consts, t.add, t.mul)),
                       ("right", kernels.struct_mul(bb, ee, A.consts, t.add, t.mul))):
        vals = kernels.vecmat(prod, f, t.add, t.mul)[:, 0]
        bad = np.nonzero(vals)[0]
        if bad.size:
            s = bad[0]
            return (tuple(int(x) for x in bb[s]), int(np.argmax(ee[s])), side)
    return None


def is_two_sided_ideal(A: StructureAlgebra, H: Hyperplane) -> bool:
    return ideal_violation(A, H) is None


@dataclass
class HyperplaneProfile:
    """Per-hyperplane facts about one algebra, computed once and shared by all checks."""

    algebra: StructureAlgebra
    hyperplanes: list[Hyperplane]
    patterns: list[str]
    unit_in_H: list[np.ndarray]  # encodings of units inside H
    unit_out_H: list[np.ndarray]  # encodings of units outside H
    nil_out_H: list[np.ndarray]  # encodings of nilpotents outside H
    violations: list

    def tally(self) -> dict:
        out = {"ideal": 0, "mixed": 0, "avoids-units": 0, "contains-units": 0}
        for p in self.patterns:
            out[p] += 1
        return out


def profile(A: StructureAlgebra, cap: int = HYPERPLANE_CAP) -> HyperplaneProfile:
    A.check_enumerable()
    hs = hyperplanes(A, cap)
    t = A.tables
    X = A.all_elements
    vals = kernels.vecmat(X, _functional_matrix(hs), t.add, t.mul)  # (|A|, #H)
    inH = vals == 0
    units = A.unit_mask
    nils = A.nilpotent_mask
    enc = np.arange(A.size)
    patterns, uin, uout, nout, viol = [], [], [], [], []
    for s, H in enumerate(hs):
        col = inH[:, s]
        ui = enc[units & col]
        uo = enc[units & ~col]
        v = ideal_violation(A, H)
        if v is None:
            pat = "ideal"
        elif ui.size and uo.size:
            pat = "mixed"
        elif ui.size == 0:
            pat = "avoids-units"
        else:
            pat = "contains-units"
        patterns.append(pat)
        uin.append(ui)
        uout.append(uo)
        nout.append(enc[nils & ~col])
        viol.append(v)
    return HyperplaneProfile(A, hs, patterns, uin, uout, nout, viol)


# ---------------------------------------------------------------- verdicts


@dataclass
class Verdict:
    theorem: str
    algebra: str
    status: str = CONSISTENT
    witnesses: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def raise_to(self, status: str, witness: dict):
        if _RANK[status] > _RANK[self.status]:
            self.status = status
        self.witnesses.append({"status": status, **witness})


def _hw(P: HyperplaneProfile, s: int, **extra) -> dict:
    w = {"hyperplane": list(P.hyperplanes[s].functional), "pattern": P.patterns[s]}
    w.update(extra)
    return w


def _violation_json(v) -> dict:
    if v is None:
        return {}
    b, j, side = v
    return {"non_ideal": {"element": list(b), "basis_index": j, "side": side}}


def _get_profile(A, P):
    return P if P is not None else profile(A)


def check_theorem2(A: StructureAlgebra, P: HyperplaneProfile | None = None) -> Verdict:
    """Unit-avoiding hyperplanes must be ideals, barring the F_2^3 exception."""
    P = _get_profile(A, P)
    V = Verdict("theorem2", A.name, details={"hyperplanes": len(P.hyperplanes)})
    for s, pat in enumerate(P.patterns):
        if pat != "avoids-units":
            continue
        w = _hw(P, s, **_violation_json(P.violations[s]))
        if A.has_F2_cube_factor:
            V.raise_to(EXCEPTION, w)
        else:
            V.raise_to(FALSIFIED, w)
    return V


def check_theorem3(A: StructureAlgebra, P: HyperplaneProfile | None = None) -> Verdict:
    """No hyperplane contains U(A), barring the F_2^2 exception."""
    P = _get_profile(A, P)
    V = Verdict("theorem3", A.name, details={"hyperplanes": len(P.hyperplanes)})
    for s, pat in enumerate(P.patterns):
        if pat != "contains-units":
            continue
        w = _hw(P, s, units=[int(u) for u in P.unit_in_H[s]])
        V.raise_to(EXCEPTION if A.has_F2_square_factor else FALSIFIED, w)
    return V


def check_theorem4(A: StructureAlgebra, P: HyperplaneProfile | None = None) -> Verdict:
    if A.kind != "group_algebra":
        raise NotGroupAlgebra(f"{A.name} was not built as a group algebra")
    P = _get_profile(A, P)
    V = Verdict("theorem4", A.name, details={"hyperplanes": len(P.hyperplanes)})
    for s, pat in enumerate(P.patterns):
        if pat in ("ideal", "mixed"):
            continue
        extra = _violation_json(P.violations[s])
        if pat == "contains-units":
            extra["units"] = [int(u) for u in P.unit_in_H[s]]
        V.raise_to(FALSIFIED, _hw(P, s, **extra))
    return V


def check_lemma5(A: StructureAlgebra, P: HyperplaneProfile | None = None) -> Verdict:
    """Over F_2 the augmentation ideal is the only codimension-one ideal."""
    if A.kind != "group_algebra":
        raise NotGroupAlgebra(f"{A.name} was not built as a group algebra")
    if A.q != 2:
        raise ValueError("the augmentation-ideal uniqueness check needs a group algebra over F_2")
    P = _get_profile(A, P)
    aug = (1,) * A.dim
    ideals = [P.hyperplanes[s].functional for s, p in enumerate(P.patterns) if p == "ideal"]
    V = Verdict("lemma5", A.name, details={"ideals": [list(f) for f in ideals]})
    if ideals != [aug]:
        V.raise_to(FALSIFIED, {"ideals": [list(f) for f in ideals], "expected": list(aug)})
    return V


def check_lemma6(A: StructureAlgebra, P: HyperplaneProfile | None = None) -> Verdict:
    """If U(A) is inside H or misses H, then every nilpotent lies in H."""
    P = _get_profile(A, P)
    V = Verdict("lemma6", A.name)
    qualifying = 0
    for s, pat in enumerate(P.patterns):
        if pat == "mixed":
            continue
        qualifying += 1
        if P.nil_out_H[s].size:
            V.raise_to(FALSIFIED, _hw(P, s, nilpotent=int(P.nil_out_H[s][0])))
    V.details["qualifying"] = qualifying
    return V


def _require_simple(A: StructureAlgebra):
    if not A.simple:
        raise NotSimple(f"{A.name} is not declared simple")


def check_lemma7(A: StructureAlgebra, P: HyperplaneProfile | None = None) -> Verdict:
    """In a simple algebra a unit-free hyperplane forces A = F and H = {0}."""
    _require_simple(A)
    P = _get_profile(A, P)
    V = Verdict("lemma7", A.name)
    for s, pat in enumerate(P.patterns):
        if P.unit_in_H[s].size:
            continue
        if not (A.dim == 1 and P.hyperplanes[s].dim == 0):
            V.raise_to(FALSIFIED, _hw(P, s))
    return V


def check_lemma8(A: StructureAlgebra, P: HyperplaneProfile | None = None) -> Verdict:
    """No hyperplane of a simple algebra contains every unit."""
    _require_simple(A)
    P = _get_profile(A, P)
    V = Verdict("lemma8", A.name)
    for s, pat in enumerate(P.patterns):
        if P.unit_out_H[s].size == 0:
            V.raise_to(FALSIFIED, _hw(P, s))
    return V


# ------------------------------------------------------- structural probes


@dataclass
class RadicalResult:
    basis: list[list[int]]
    is_ideal: bool
    all_nilpotent: bool
    matches_declared: bool | None
    brute_force: bool

    @property
    def dim(self) -> int:
        return len(self.basis)


def _span_basis(F: Field, vecs) -> list[list[int]]:
    red, piv = linalg.rref(F, [list(map(int, v)) for v in vecs])
    return [row for row in red[:len(piv)]]


def jacobson_radical(A: StructureAlgebra, cap: int = RADICAL_CAP) -> RadicalResult:
    """J = {t : 1 - a t is a unit for every a}, by brute force when |A| <= cap."""
    t = A.tables
    if A.size > cap:
        if A.known_radical is None:
            raise CapExceeded(f"{A.name}: |A| = {A.size} exceeds the radical cap {cap}")
        basis = _span_basis(A.F, A.known_radical) if A.known_radical else []
        return RadicalResult(basis, True, True, True, brute_force=False)
    X = A.all_elements
    units = A.unit_mask
    one = np.array(A.identity, dtype=np.int64)
    members = []
    for s in range(A.size):
        T = np.broadcast_to(X[s], X.shape)
        at = kernels.struct_mul(X, T, A.consts, t.add, t.mul)
        diff = t.add[one[None, :], t.neg[at]]
        if units[kernels.from_digits(diff, A.q)].all():
            members.append(X[s])
    basis = _span_basis(A.F, members) if len(members) > 1 else []
    if len(members) != A.q ** len(basis):
        raise AssertionError(f"{A.name}: radical candidates are not a subspace")
    is_ideal = True
    eye = np.eye(A.dim, dtype=np.int64)
    for b in basis:
        bb = np.broadcast_to(np.array(b), eye.shape)
        for prod in (kernels.struct_mul(eye, bb, A.consts, t.add, t.mul),
                     kernels.struct_mul(bb, eye, A.consts, t.add, t.mul)):
            if not all(linalg.in_span(A.F, basis, list(map(int, p))) for p in prod):
                is_ideal = False
    nil = A.nilpotent_mask
    all_nil = bool(all(nil[A.encode(m)] for m in members))
    matches = None
    if A.known_radical is not None:
        declared = _span_basis(A.F, A.known_radical) if A.known_radical else []
        matches = (len(declared) == len(basis)
                   and all(linalg.in_span(A.F, basis, v) for v in declared))
    return RadicalResult(basis, is_ideal, all_nil, matches, brute_force=True)


def is_simple_bruteforce(A: StructureAlgebra) -> bool:
    """Every nonzero x generates A as a two-sided ideal (span of e_i x e_j)."""
    t = A.tables
    d = A.dim
    eye = np.eye(d, dtype=np.int64)
    li = np.repeat(eye, d, axis=0)
    rj = np.tile(eye, (d, 1))
    for x in A.all_elements[1:]:
        xx = np.broadcast_to(x, li.shape)
        prods = kernels.struct_mul(kernels.struct_mul(li, xx, A.consts, t.add, t.mul), rj,
                                   A.consts, t.add, t.mul)
        if linalg.rank(A.F, prods.tolist()) < d:
            return False
    return True


def count_f2_characters(A: StructureAlgebra) -> int:
    """Number of unital algebra maps A -> F_2, i.e. simple components of A/J equal to F_2."""
    if A.q != 2:
        return 0
    d = A.dim
    phis = kernels.all_vectors(2, d)
    one = np.array(A.identity)
    ok = (phis @ one) % 2 == 1
    c = A.consts
    for i in range(d):
        for j in range(d):
            lhs = (phis @ c[i, j]) % 2
            rhs = phis[:, i] * phis[:, j]
            ok &= lhs == rhs
    return int(ok.sum())


def check_flags(A: StructureAlgebra, P: HyperplaneProfile | None = None) -> Verdict:
    """Declared exception flags against brute force: character count, and a
    witnessed exception exactly when the flag is set."""
    P = _get_profile(A, P)
    V = Verdict("flags", A.name)
    if A.q == 2:
        chars = count_f2_characters(A)
        V.details["f2_characters"] = chars
        if chars != A.f2_components:
            V.raise_to(FALSIFIED, {"declared": A.f2_components, "counted": chars})
    avoid = any(p == "avoids-units" for p in P.patterns)
    contain = any(p == "contains-units" for p in P.patterns)
    if avoid != A.has_F2_cube_factor:
        V.raise_to(FALSIFIED, {"flag": "has_F2_cube_factor", "declared": A.has_F2_cube_factor, "witnessed": avoid})
    if contain != A.has_F2_square_factor:
        V.raise_to(FALSIFIED, {"flag": "has_F2_square_factor", "declared": A.has_F2_square_factor, "witnessed": contain})
    V.details["tally"] = P.tally()
    return V


# ------------------------------------------------------ explicit matrices


def _zero(n):
    return [[0] * n for _ in range(n)]


def cyclic_permutation_matrix(F: Field, n: int) -> list[list[int]]:
    """E_{n,1} + E_{1,2} + ... + E_{n-1,n}."""
    m = _zero(n)
    m[n - 1][0] = 1
    for i in range(n - 1):
        m[i][i + 1] = 1
    return m


def lemma8_Q(F: Field, n: int, d: int) -> list[list[int]]:
    """(d E_{1,1} + E_{n,1}) + E_{1,2} + ... + E_{n-1,n}."""
    m = cyclic_permutation_matrix(F, n)
    m[0][0] = F.add(m[0][0], d)
    return m


def lemma8_Q_inverse(F: Field, n: int, d: int) -> list[list[int]]:
    """E_{1,n} + E_{2,1} - d E_{2,n} + E_{3,2} + ... + E_{n,n-1}."""
    m = _zero(n)
    m[0][n - 1] = F.add(m[0][n - 1], 1)
    m[1][n - 1] = F.add(m[1][n - 1], F.neg(d))
    for i in range(1, n):
        m[i][i - 1] = F.add(m[i][i - 1], 1)
    return m


def matrix_trace(F: Field, m) -> int:
    total = 0
    for i in range(len(m)):
        total = F.add(total, m[i][i])
    return total


def verify_lemma8_matrices(F: Field, n: int, d) -> bool:
    if n < 2:
        raise ValueError("n must be >= 2")
    d = int(d)
    Q = lemma8_Q(F, n, d)
    Qi = lemma8_Q_inverse(F, n, d)
    I = linalg.identity(n)
    return (linalg.matmul(F, Q, Qi) == I and linalg.matmul(F, Qi, Q) == I
            and matrix_trace(F, Q) == d)


def matrix_to_element(n: int, m) -> tuple[int, ...]:
    """Coordinates of an n x n matrix in M_n's E_{i,j} basis."""
    v = [0] * (n * n)
    for i in range(n):
        for j in range(n):
            v[matrix_unit_index(n, i + 1, j + 1)] = m[i][j]
    return tuple(v)


def square_zero_matrix(F: Field, n: int, i: int, j: int) -> list[list[int]]:
    """E_{i,i} + E_{i,j} - E_{j,i} - E_{j,j} (1-based, i != j)."""
    m = _zero(n)
    i, j = i - 1, j - 1
    m[i][i] = 1
    m[i][j] = 1
    m[j][i] = F.neg(1)
    m[j][j] = F.neg(1)
    return m


def worst(statuses) -> str:
    out = CONSISTENT
    for s in statuses:
        if _RANK[s] > _RANK[out]:
            out = s
    return out
