"""Check suites that turn towers and catalog algebras into report records."""

from __future__ import annotations

from functools import cached_property
from math import gcd
from time import perf_counter

import numpy as np

from . import algebra_probe as ap
from . import linalg
from .algebra import ELEMENT_CAP, StructureAlgebra, is_unit_elem, is_zero_divisor
from .algebra_probe import CONSISTENT, FALSIFIED
from .catalog import expectation_mismatches, load_catalog
from .errors import DivisionByZero, NotFound
from .ffield import FieldElement, prime_field
from .group_algebra import (
    bridge_report,
    diagram_commutes,
    tower_group_algebra,
    transport_scan,
    transported_ideal_meets_units,
)
from .normal import (
    check_observations,
    compute_C,
    enumerate_B,
    find_primitive_normal,
    is_normal,
    mult_order,
    normal_count_formula,
    roots_of_unity_check,
    sigma_stability,
    theorem1_conditions,
    theorem1_sweep,
    verify_hom_iso,
    w_count,
)
from .report import Record
from .tower import Tower, build_tower

DEFAULT_TOWERS = (
    [(2, 1, m) for m in range(2, 11)]
    + [(3, 1, m) for m in range(2, 7)]
    + [(5, 1, m) for m in range(2, 5)]
    + [(7, 1, 2), (7, 1, 3)]
    + [(2, 2, m) for m in range(2, 5)]
    + [(2, 3, 2), (3, 2, 2)]
)

EXHAUSTIVE_CAP = 1024  # pairwise and per-element exhaustive tower checks
UNIT_COUNT_CAP = 1024  # |U(KG)| cross-check
SMALL_CAP = 256  # transport diagram, sigma-stability, observation pairs
EXACT_SAMPLE = 64


def _rec(check, subject, fn) -> Record:
    t0 = perf_counter()
    status, witnesses, details = fn()
    return Record(check, subject, status, witnesses, details, perf_counter() - t0)


def _status(failures) -> str:
    return FALSIFIED if failures else CONSISTENT


def _ints(a, limit=16):
    return [int(x) for x in list(a)[:limit]]


class TowerContext:
    """Shared, lazily computed data for one tower."""

    def __init__(self, tower: Tower):
        self.T = tower

    @cached_property
    def all(self):
        return self.T.elements_array()

    @cached_property
    def B(self):
        return enumerate_B(self.T)

    @cached_property
    def w(self):
        return w_count(self.T)

    @cached_property
    def C(self):
        return compute_C(self.T, w=self.w)

    @cached_property
    def sweep(self):
        return theorem1_sweep(self.T, self.B, self.w)

    @cached_property
    def N(self):
        return self.T.trace_kernel()

    @cached_property
    def N_members(self):
        return self.N.members()

    @cached_property
    def kg_units(self):
        return tower_group_algebra(self.T).structure.unit_mask

    def sample(self):
        n = self.T.order
        if n <= SMALL_CAP:
            return list(range(n))
        return sorted(set(range(min(n, EXACT_SAMPLE))) | set(_ints(self.B.encodings, EXACT_SAMPLE)))


# ------------------------------------------------------------ tower checks


def check_frobenius(ctx: TowerContext):
    T, X = ctx.T, ctx.all
    fails = []
    if not np.array_equal(T.tau_values(T.m, X), X):
        fails.append({"claim": "sigma^m = id"})
    for d in range(1, T.m):
        if T.m % d == 0 and np.array_equal(T.tau_values(d, X), X):
            fails.append({"claim": "order of sigma", "divisor": d})
    fixed = X[T.tau_values(1, X) == X]
    if not np.array_equal(fixed, np.arange(T.q)):
        fails.append({"claim": "fixed field is K", "fixed": _ints(fixed)})
    if T.order <= EXHAUSTIVE_CAP:
        for i in range(T.m):
            for j in range(T.m):
                if not np.array_equal(T.tau_values(i, T.tau_values(j, X)), T.tau_values(i + j, X)):
                    fails.append({"claim": "sigma^i sigma^j = sigma^(i+j)", "i": i, "j": j})
    for v in ctx.sample()[:EXACT_SAMPLE]:
        a = FieldElement(T.L, v)
        for i in range(T.m):
            exact = T.apply_tau(i, a).value
            if exact != int(T.tau_values(i, np.array([v]))[0]) or exact != T._apply_tau_matrix(i, a).value:
                fails.append({"claim": "exact/table/matrix agreement", "alpha": v, "i": i})
    return _status(fails), fails, {"order": T.order, "q": T.q, "m": T.m, "fixed_field_size": int(fixed.size)}


def check_trace(ctx: TowerContext):
    T, X = ctx.T, ctx.all
    t = T.tables
    fails = []
    tr = T.trace_values(X)
    if (tr >= T.q).any():
        fails.append({"claim": "trace lands in K", "alpha": _ints(X[tr >= T.q], 4)})
    if not np.array_equal(T.trace_values(T.tau_values(1, X)), tr):
        fails.append({"claim": "Tr o sigma = Tr"})
    for c in range(T.q):
        if not np.array_equal(T.trace_values(t.mul(c, X)), t.mul(c, tr)):
            fails.append({"claim": "Tr(c x) = c Tr(x)", "c": c})
    # additivity against an F_p-basis of L implies additivity everywhere
    for e in (T.p ** i for i in range(T.k * T.m)):
        if not np.array_equal(T.trace_values(t.add(X, e)), t.add(tr, tr[e])):
            fails.append({"claim": "Tr additive", "basis_element": e})
    image = np.unique(tr)
    if image.size != T.q:
        fails.append({"claim": "Tr surjective", "image": _ints(image)})
    N = ctx.N
    rows = [T.k_coords(b) for b in N.basis]
    if N.dimension != T.m - 1 or any(T.trace(b).value for b in N.basis) or (rows and linalg.rank(T.K, rows) != len(rows)):
        fails.append({"claim": "kernel basis", "basis": [b.value for b in N.basis]})
    zeros = np.nonzero(tr == 0)[0]
    if not np.array_equal(zeros, ctx.N_members):
        fails.append({"claim": "span of kernel basis = Ker Tr"})
    if not np.array_equal(np.sort(T.tau_values(1, ctx.N_members)), ctx.N_members):
        fails.append({"claim": "sigma(N) = N"})
    for v in ctx.sample()[:EXACT_SAMPLE]:
        if T.trace(FieldElement(T.L, v)).value != int(tr[v]):
            fails.append({"claim": "exact/table trace agreement", "alpha": v})
    details = {"dim_N": N.dimension, "kernel_basis": [b.value for b in N.basis], "image_size": int(image.size)}
    return _status(fails), fails, details


def check_normal_count(ctx: TowerContext):
    T = ctx.T
    fails = []
    nB = ctx.B.cardinality
    formula = normal_count_formula(T)
    details = {"B": nB, "formula": formula}
    if formula != nB:
        fails.append({"claim": "|B| = closed form", "B": nB, "formula": formula})
    if T.order <= UNIT_COUNT_CAP:
        units = int(ctx.kg_units.sum())
        details["units_KG"] = units
        if units != nB:
            fails.append({"claim": "|B| = |U(KG)|", "B": nB, "units": units})
    for v in ctx.sample():
        if is_normal(T, FieldElement(T.L, v)) != bool(ctx.B.mask[v]):
            fails.append({"claim": "exact/batched normality agreement", "alpha": v})
    return _status(fails), fails, details


def check_observations_rec(ctx: TowerContext):
    good = ctx.sweep.gammas[ctx.sweep.c1]
    fails = [{"claim": c, "args": a} for c, a in check_observations(ctx.T, ctx.B, good, SMALL_CAP)]
    return _status(fails), fails, {"pairs_checked": ctx.T.order <= SMALL_CAP}


def check_pnb(ctx: TowerContext):
    T = ctx.T
    try:
        a = find_primitive_normal(T, B=ctx.B)
    except NotFound:
        return FALSIFIED, [{"claim": "primitive normal element exists", "searched": T.order}], {}
    return CONSISTENT, [], {"witness": a.value, "order": mult_order(T, a), "conjugates": [c.value for c in T.conjugates(a)]}


def check_w(ctx: TowerContext):
    T = ctx.T
    fails = []
    g = gcd(T.m, T.q - 1)
    if ctx.w != g:
        fails.append({"claim": "w = gcd(m, q-1)", "w": ctx.w, "gcd": g})
    if not roots_of_unity_check(T, ctx.w):
        fails.append({"claim": "S is the root set of x^w - 1"})
    return _status(fails), fails, {"w": ctx.w}


def check_theorem1(ctx: TowerContext, details_on: bool = False):
    T, sw = ctx.T, ctx.sweep
    fails = []
    for v in _ints(sw.discrepancies(), 32):
        fails.append({"gamma": v, "conditions": list(sw.vector(v))})
    sample = range(1, T.order) if T.order <= 64 else sorted(set(_ints(ctx.C.encodings, 64)) | set(range(1, 33)))
    for v in sample:
        exact = theorem1_conditions(T, FieldElement(T.L, v), ctx.B, ctx.w).as_tuple()
        if exact != sw.vector(v):
            fails.append({"gamma": v, "claim": "exact/batched agreement", "exact": list(exact), "batched": list(sw.vector(v))})
    details = {
        "gammas": int(sw.gammas.size),
        "true_counts": [int(sw.c1.sum()), int(sw.c2.sum()), int(sw.c3.sum()), int(sw.c4.sum())],
        "discrepancies": int(sw.discrepancies().size),
    }
    if details_on:
        details["vectors"] = {str(int(g)): [int(sw.c1[i]), int(sw.c2[i]), int(sw.c3[i]), int(sw.c4[i])]
                              for i, g in enumerate(sw.gammas)}
    return _status(fails), fails, details


def check_C(ctx: TowerContext):
    T, C = ctx.T, ctx.C
    fails = []
    if C.cardinality != ctx.w * (T.q - 1):
        fails.append({"claim": "|C| = w (q-1)", "C": C.cardinality})
    if not C.is_subgroup:
        fails.append({"claim": "C is a subgroup containing K*", "contains_K": C.contains_K,
                      "closed_mul": C.closed_mul, "closed_inv": C.closed_inv})
    all_true = ctx.sweep.gammas[ctx.sweep.c1 & ctx.sweep.c2 & ctx.sweep.c3 & ctx.sweep.c4]
    if not np.array_equal(all_true, C.encodings):
        fails.append({"claim": "C = {gamma : (i)-(iv)}", "C": _ints(C.encodings), "conditions": _ints(all_true)})
    return _status(fails), fails, {"C": C.cardinality, "members": _ints(C.encodings, 64)}


def check_hom_iso(ctx: TowerContext):
    r = verify_hom_iso(ctx.T, ctx.C)
    fails = [{"claim": c, "args": a} for c, a in r.failures]
    if not r.ok and not fails:
        fails.append({"claim": "|C/K*| = |Hom(G,K*)| = w", "cosets": r.n_cosets, "homs": r.n_homs, "w": r.w})
    return _status(fails), fails, {"cosets": r.n_cosets, "homs": r.n_homs, "w": r.w}


def check_sigma_stability(ctx: TowerContext):
    bad = sigma_stability(ctx.T, ctx.C, ctx.N_members)
    fails = [{"gamma": g, "in_C": bool(ctx.C.mask[g])} for g in bad[:16]]
    return _status(fails), fails, {"gammas": ctx.T.order - 1}


def normal_witnesses(ctx: TowerContext, count: int = 3) -> list[FieldElement]:
    return [FieldElement(ctx.T.L, v) for v in _ints(ctx.B.encodings, count)]


def check_bridge(ctx: TowerContext):
    T = ctx.T
    fails = []
    for a in normal_witnesses(ctx):
        r = bridge_report(T, a, ctx.B.mask, ctx.N_members, ctx.kg_units)
        fails += [{"a": a.value, "claim": c, "args": x} for c, x in r.failures]
    return _status(fails), fails, {"normal_elements": [a.value for a in normal_witnesses(ctx)]}


def check_transport(ctx: TowerContext):
    T = ctx.T
    fails = []
    meets_outside_C = 0
    gammas = range(1, T.order)
    for a in normal_witnesses(ctx):
        commutes, hits = transport_scan(T, a, gammas, ctx.kg_units)
        for g, ok, hit in zip(gammas, commutes, hits):
            if not ok:
                fails.append({"claim": "diagram commutes", "a": a.value, "gamma": g})
            if ctx.C.mask[g] and hit.size:
                fails.append({"claim": "Gamma(omega KG) misses U(KG) for gamma in C",
                              "a": a.value, "gamma": g, "unit": int(hit[0])})
            if not ctx.C.mask[g]:
                if hit.size:
                    meets_outside_C += 1
                else:
                    fails.append({"claim": "Gamma(omega KG) meets U(KG) for gamma outside C",
                                  "a": a.value, "gamma": g})
    # one exact spot check through the unbatched path
    a, gamma = normal_witnesses(ctx, 1)[0], FieldElement(T.L, T.order - 1)
    if not diagram_commutes(T, a, gamma) or (
            transported_ideal_meets_units(T, a, gamma, ctx.kg_units).size > 0) != (not ctx.C.mask[gamma.value]):
        fails.append({"claim": "batched/unbatched transport agreement", "a": a.value, "gamma": gamma.value})
    return _status(fails), fails, {"gammas": T.order - 1, "meets_outside_C": meets_outside_C}


TOWER_CHECKS = {
    "tower": [("tower.frobenius", check_frobenius), ("tower.trace", check_trace)],
    "normal": [("normal.count", check_normal_count), ("normal.observations", check_observations_rec)],
    "pnb": [("pnb.witness", check_pnb)],
    "gamma": [("gamma.w", check_w), ("gamma.theorem1", check_theorem1), ("gamma.C", check_C),
              ("gamma.hom_iso", check_hom_iso), ("gamma.sigma_stability", check_sigma_stability),
              ("bridge.a_tilde", check_bridge), ("bridge.transport", check_transport)],
}
SIZE_LIMITS = {
    "normal.observations": None,
    "gamma.sigma_stability": SMALL_CAP,
    "bridge.a_tilde": EXHAUSTIVE_CAP,
    "bridge.transport": SMALL_CAP,
}


def tower_records(params: tuple[int, int, int], groups: list[str], cap: int, details_on: bool = False) -> list[Record]:
    T = build_tower(*params, cap=cap)
    ctx = TowerContext(T)
    out = []
    for g in groups:
        for name, fn in TOWER_CHECKS[g]:
            limit = SIZE_LIMITS.get(name)
            if limit is not None and T.order > limit:
                continue
            if name == "gamma.theorem1":
                out.append(_rec(name, T.id, lambda: check_theorem1(ctx, details_on)))
            else:
                out.append(_rec(name, T.id, lambda fn=fn: fn(ctx)))
    return out


# ---------------------------------------------------------- algebra checks


def _verdict(V) -> tuple:
    return V.status, V.witnesses, V.details


def check_structure(A: StructureAlgebra):
    fails = []
    units, nils = A.unit_mask, A.nilpotent_mask
    if (units & nils).any():
        fails.append({"claim": "units and nilpotents disjoint", "element": int(np.nonzero(units & nils)[0][0])})
    if A.size <= SMALL_CAP:
        for n in range(A.size):
            x = A.decode(n)
            if is_unit_elem(A, x) != bool(units[n]):
                fails.append({"claim": "exact/batched unit agreement", "element": n})
            if is_zero_divisor(A, x) == bool(units[n]) and n:
                fails.append({"claim": "unit iff not a zero divisor", "element": n})
    R = ap.jacobson_radical(A)
    if not (R.is_ideal and R.all_nilpotent):
        fails.append({"claim": "radical is a nilpotent ideal", "basis": R.basis})
    if R.matches_declared is False:
        fails.append({"claim": "radical matches declared", "basis": R.basis, "declared": A.known_radical})
    if A.semisimple_dim is not None and A.dim - R.dim != A.semisimple_dim:
        fails.append({"claim": "quotient dimension", "radical_dim": R.dim, "semisimple_dim": A.semisimple_dim})
    simple = ap.is_simple_bruteforce(A)
    if simple != A.simple:
        fails.append({"claim": "declared simplicity", "declared": A.simple, "brute_force": simple})
    details = {"dim": A.dim, "base": A.F.name, "units": int(units.sum()), "nilpotents": int(nils.sum()),
               "radical_dim": R.dim}
    return _status(fails), fails, details


def algebra_records(entry, A: StructureAlgebra, hcap: int) -> list[Record]:
    out = []
    subj = A.name

    def expect():
        mm = expectation_mismatches(entry, A) if entry is not None else {}
        fails = [{"flag": k, **v} for k, v in sorted(mm.items())]
        return _status(fails), fails, {"expect": entry.expect if entry is not None else {}}

    out.append(_rec("catalog.expect", subj, expect))
    out.append(_rec("algebra.structure", subj, lambda: check_structure(A)))
    holder = {}

    def prof():
        holder["P"] = ap.profile(A, hcap)
        return CONSISTENT, [], {"hyperplanes": len(holder["P"].hyperplanes), "tally": holder["P"].tally()}

    out.append(_rec("algebra.hyperplanes", subj, prof))
    P = holder["P"]
    out.append(_rec("theorem2", subj, lambda: _verdict(ap.check_theorem2(A, P))))
    out.append(_rec("theorem3", subj, lambda: _verdict(ap.check_theorem3(A, P))))
    if A.kind == "group_algebra":
        out.append(_rec("theorem4", subj, lambda: _verdict(ap.check_theorem4(A, P))))
        if A.q == 2:
            out.append(_rec("lemma5", subj, lambda: _verdict(ap.check_lemma5(A, P))))
    out.append(_rec("lemma6", subj, lambda: _verdict(ap.check_lemma6(A, P))))
    if A.simple:
        out.append(_rec("lemma7", subj, lambda: _verdict(ap.check_lemma7(A, P))))
        out.append(_rec("lemma8", subj, lambda: _verdict(ap.check_lemma8(A, P))))
    out.append(_rec("flags", subj, lambda: _verdict(ap.check_flags(A, P))))
    return out


def lemma8_matrix_records(primes=(2, 3, 5), sizes=(2, 3, 4, 5)) -> list[Record]:
    out = []
    for p in primes:
        F = prime_field(p)
        for n in sizes:
            def run(F=F, n=n):
                bad = [d for d in range(F.order) if not ap.verify_lemma8_matrices(F, n, d)]
                return _status(bad), [{"d": d} for d in bad], {"d_values": F.order}
            out.append(_rec("lemma8.matrices", f"M_{n}({F.name})", run))
    return out


def matrix_unit_records(primes=(2, 3, 5), sizes=(2, 3, 4, 5)) -> list[Record]:
    """The cyclic permutation matrix is invertible; E_ii + E_ij - E_ji - E_jj squares to zero."""
    out = []
    for p in primes:
        F = prime_field(p)
        for n in sizes:
            def run(F=F, n=n):
                fails = []
                M = ap.cyclic_permutation_matrix(F, n)
                try:
                    Mi = linalg.inverse(F, M)
                except DivisionByZero:
                    fails.append({"claim": "permutation matrix is a unit"})
                else:
                    if linalg.matmul(F, M, Mi) != linalg.identity(n):
                        fails.append({"claim": "permutation matrix inverse"})
                zero = [[0] * n for _ in range(n)]
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        if i != j:
                            S = ap.square_zero_matrix(F, n, i, j)
                            if linalg.matmul(F, S, S) != zero:
                                fails.append({"claim": "square-zero matrix", "i": i, "j": j})
                return _status(fails), fails, {}
            out.append(_rec("matrices.units", f"M_{n}({F.name})", run))
    return out


def probe_records(catalog_path=None, hcap: int = ap.HYPERPLANE_CAP, element_cap: int = ELEMENT_CAP) -> list[Record]:
    out = []
    for entry, A in load_catalog(catalog_path, element_cap):
        out += algebra_records(entry, A, hcap)
    out += lemma8_matrix_records()
    out += matrix_unit_records()
    return out


def select_towers(max_card: int, towers=None) -> list[tuple[int, int, int]]:
    towers = DEFAULT_TOWERS if towers is None else towers
    return [t for t in towers if t[0] ** (t[1] * t[2]) <= max_card]
