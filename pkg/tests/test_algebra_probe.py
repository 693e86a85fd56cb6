import dataclasses

import numpy as np
import pytest

from normlab import algebra_probe as ap
from normlab.algebra import (
    is_nilpotent_elem,
    is_unit_elem,
    make_direct_sum,
    make_field_algebra,
    make_group_algebra_struct,
    make_matrix_algebra,
    make_power,
    make_triangular,
    unit_set,
)
from normlab.algebra_probe import CONSISTENT, EXCEPTION, FALSIFIED
from normlab.catalog import expectation_mismatches, load_catalog, parse_catalog
from normlab.errors import BadAlgebra, CapExceeded, CatalogError, MixedFields, NotGroupAlgebra, NotSimple
from normlab.ffield import finite_field, prime_field
from normlab.group_algebra import cyclic_group, parse_group

F2, F3, F5 = prime_field(2), prime_field(3), prime_field(5)


def ga(F, group):
    return make_group_algebra_struct(F, parse_group(group))


@pytest.fixture(scope="module")
def catalog():
    return {A.name: A for _, A in load_catalog()}


# ------------------------------------------------------------ constructors

def test_matrix_algebra_n1_is_field():
    A = make_matrix_algebra(F3, 1)
    assert A.dim == 1 and A.simple and int(A.unit_mask.sum()) == 2


def test_unit_counts(catalog):
    assert int(catalog["M2F2"].unit_mask.sum()) == 6
    assert int(catalog["M2F3"].unit_mask.sum()) == 48
    assert int(catalog["T2F2"].unit_mask.sum()) == 2
    assert int(catalog["F2C3"].unit_mask.sum()) == 3
    assert len(unit_set(catalog["F4+F2"])) == 3


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        make_direct_sum([make_power(F2, 1), make_power(F3, 1)])


def test_validate_rejects_non_associative():
    A = make_power(F2, 2)
    c = A.consts.copy()
    c[0, 1, 0] = 1  # e0 e1 = e0 breaks associativity/identity
    with pytest.raises(BadAlgebra):
        dataclasses.replace(A, consts=c).validate()


def test_identity_and_zero(catalog):
    for A in catalog.values():
        assert is_unit_elem(A, A.identity)
        assert is_nilpotent_elem(A, (0,) * A.dim)
        assert A.nilpotent_mask[0] and not A.unit_mask[0]


def test_lemma_matrices_units_and_nilpotents():
    for F in (F2, F3):
        for n in (2, 3, 4):
            M = ap.cyclic_permutation_matrix(F, n)
            if F.order ** (n * n) <= 2 ** 16:
                A = make_matrix_algebra(F, n)
                assert is_unit_elem(A, ap.matrix_to_element(n, M))
                for i in range(1, n + 1):
                    for j in range(1, n + 1):
                        if i != j:
                            S = ap.matrix_to_element(n, ap.square_zero_matrix(F, n, i, j))
                            assert is_nilpotent_elem(A, S)
                            assert not any(A.mul(S, S))


# ---------------------------------------------------------------- hyperplanes

@pytest.mark.parametrize("name,count", [("F2^2", 3), ("M2F2", 15), ("F3^2", 4), ("F3^3", 13), ("M2F3", 40), ("F2C6", 63)])
def test_hyperplane_counts(catalog, name, count):
    A = catalog[name]
    hs = ap.hyperplanes(A)
    assert ap.hyperplane_count(A) == len(hs) == count
    assert len({h.functional for h in hs}) == count
    assert all(h.dim == A.dim - 1 for h in hs)


def test_hyperplane_cap(catalog):
    with pytest.raises(CapExceeded):
        ap.hyperplanes(catalog["F2C6"], cap=10)


def test_ideal_examples(catalog):
    A = catalog["F2C2"]
    assert ap.is_two_sided_ideal(A, ap.Hyperplane(A, (1, 1)))
    B = catalog["F2^3"]
    H = ap.Hyperplane(B, (1, 1, 1))
    assert not ap.is_two_sided_ideal(B, H)
    M = catalog["M2F2"]
    assert not any(ap.is_two_sided_ideal(M, h) for h in ap.hyperplanes(M))


def test_ideal_test_against_definition(catalog):
    """Compare against a check over every element of H and every element of A."""
    for name in ("T2F2", "F2C3", "F3^2", "F4+F2"):
        A = catalog[name]
        els = [A.decode(n) for n in range(A.size)]
        for h in ap.hyperplanes(A):
            members = [x for x in els if x in h]
            brute = all(A.mul(a, x) in h and A.mul(x, a) in h for x in members for a in els)
            assert ap.is_two_sided_ideal(A, h) == brute


# ------------------------------------------------------------------ radical

def test_radical_examples(catalog):
    assert ap.jacobson_radical(catalog["M2F2"]).dim == 0
    r = ap.jacobson_radical(catalog["T2F2"])
    assert r.basis == [[0, 1, 0]]
    r = ap.jacobson_radical(catalog["F2C2"])
    assert r.basis == [[1, 1]]


def test_radical_definition_and_declared(catalog):
    for A in catalog.values():
        r = ap.jacobson_radical(A)
        assert r.brute_force and r.is_ideal and r.all_nilpotent
        assert r.matches_declared in (True, None)
        if A.semisimple_dim is not None:
            assert A.dim - r.dim == A.semisimple_dim


def test_radical_cap_without_declaration():
    A = make_group_algebra_struct(F3, cyclic_group(6), cap=3 ** 6)
    with pytest.raises(CapExceeded):
        ap.jacobson_radical(A, cap=100)


def test_simplicity_bruteforce(catalog):
    for A in catalog.values():
        assert ap.is_simple_bruteforce(A) == A.simple


@pytest.mark.parametrize("name,count", [("F2^1", 1), ("F2^3", 3), ("F2^4", 4), ("T3F2", 3), ("T2F2", 2), ("F2C3", 1), ("F2S3", 1), ("M2F2", 0), ("F4/F2", 0), ("F4+F2", 1)])
def test_f2_character_count(catalog, name, count):
    assert ap.count_f2_characters(catalog[name]) == count == catalog[name].f2_components


# ---------------------------------------------------------------- theorems

def test_theorem2_examples(catalog):
    V = ap.check_theorem2(catalog["F2^3"])
    assert V.status == EXCEPTION
    assert any(w["hyperplane"] == [1, 1, 1] and "non_ideal" in w for w in V.witnesses)
    assert ap.check_theorem2(catalog["M2F2"]).status == CONSISTENT
    assert ap.check_theorem2(catalog["F3^3"]).status == CONSISTENT


def test_theorem3_examples(catalog):
    V = ap.check_theorem3(catalog["F2^2"])
    assert V.status == EXCEPTION
    assert V.witnesses[0]["hyperplane"] == [1, 1] and V.witnesses[0]["units"] == [3]
    assert ap.check_theorem3(catalog["F3^1"]).status == CONSISTENT
    assert ap.check_theorem3(catalog["M2F2"]).status == CONSISTENT


def test_theorem4_examples(catalog):
    P = ap.profile(catalog["F2C2"])
    assert dict(zip([h.functional for h in P.hyperplanes], P.patterns)) == {
        (0, 1): "mixed", (1, 0): "mixed", (1, 1): "ideal"}
    assert ap.check_theorem4(catalog["F2C2"], P).status == CONSISTENT
    P3 = ap.profile(catalog["F2C3"])
    assert len(P3.hyperplanes) == 7 and P3.tally()["ideal"] == 1
    assert ap.check_theorem4(catalog["F2C3"], P3).status == CONSISTENT
    with pytest.raises(NotGroupAlgebra):
        ap.check_theorem4(catalog["M2F2"])


def test_misdeclared_flags_are_falsified(catalog):
    """Negative control: the same algebra with its F_2 components hidden."""
    A = dataclasses.replace(catalog["F2^3"], f2_components=0)
    V = ap.check_theorem2(A)
    assert V.status == FALSIFIED and V.witnesses
    assert ap.check_theorem3(A).status == FALSIFIED
    F = ap.check_flags(A)
    assert F.status == FALSIFIED and any(w.get("counted") == 3 for w in F.witnesses)


@pytest.mark.parametrize("group", ["C2", "C3", "C4", "C5", "C6", "C2xC2", "S3"])
def test_lemma5_unique_ideal(group):
    A = ga(F2, group)
    V = ap.check_lemma5(A)
    assert V.status == CONSISTENT
    assert V.details["ideals"] == [[1] * A.dim]


def test_lemma5_requires_f2_group_algebra(catalog):
    with pytest.raises(ValueError):
        ap.check_lemma5(catalog["F3C2"])
    with pytest.raises(NotGroupAlgebra):
        ap.check_lemma5(catalog["F2^2"])


def test_lemma6_examples(catalog):
    V = ap.check_lemma6(catalog["F2C2"])
    assert V.status == CONSISTENT and V.details["qualifying"] == 1
    V = ap.check_lemma6(catalog["M2F2"])
    assert V.status == CONSISTENT and V.details["qualifying"] == 0
    assert ap.check_lemma6(catalog["T3F2"]).status == CONSISTENT


def test_lemma7_8_examples(catalog):
    for name in ("F2^1", "M2F2", "M2F3", "F4/F2"):
        assert ap.check_lemma7(catalog[name]).status == CONSISTENT
        assert ap.check_lemma8(catalog[name]).status == CONSISTENT
    with pytest.raises(NotSimple):
        ap.check_lemma7(catalog["T2F2"])


def test_all_flags_consistent(catalog):
    for A in catalog.values():
        assert ap.check_flags(A).status == CONSISTENT, A.name


# ------------------------------------------------------- explicit matrices

def test_lemma8_matrix_examples():
    assert ap.verify_lemma8_matrices(F5, 3, 2)
    for F in (F2, F3, F5):
        for d in range(F.order):
            assert ap.verify_lemma8_matrices(F, 2, d)
        assert ap.lemma8_Q(F, 4, 0) == ap.cyclic_permutation_matrix(F, 4)
    with pytest.raises(ValueError):
        ap.verify_lemma8_matrices(F2, 1, 0)


def test_lemma8_textual_inverse_is_wrong():
    """With the unit entry at (1,2) instead of (1,n) the product is not I."""
    from normlab import linalg
    n, d = 3, 2
    Q = ap.lemma8_Q(F5, n, d)
    Qi = ap.lemma8_Q_inverse(F5, n, d)
    Qi[0][n - 1], Qi[0][1] = 0, 1
    assert linalg.matmul(F5, Q, Qi) != linalg.identity(n)


def test_lemma8_over_extension_field():
    F4 = finite_field(2, 2)
    assert all(ap.verify_lemma8_matrices(F4, n, d) for n in (2, 3, 4) for d in range(4))


# ----------------------------------------------------------------- catalog

def test_catalog_contents(catalog):
    expected = {"M2F2", "M2F3", "F2^1", "F2^2", "F2^3", "F2^4", "F3^1", "F3^2", "F3^3", "F4+F2",
                "T2F2", "T2F3", "T3F2", "F2C2", "F2C3", "F2C4", "F2C5", "F2C6",
                "F3C2", "F3C3", "F3C4", "F2C2xC2", "F2S3"}
    assert expected <= set(catalog)


def test_catalog_expectations_hold():
    for e, A in load_catalog():
        assert expectation_mismatches(e, A) == {}


@pytest.mark.parametrize("text", [
    "X bogus p=2",
    "X power p=2 j=1\nX power p=2 j=2",
    "X power p=2 j",
    "X power p=2 j=1 cube=2",
    "X",
])
def test_catalog_parse_errors(text):
    with pytest.raises(CatalogError):
        parse_catalog(text)


def test_catalog_build_errors(tmp_path):
    for body in ("S sum parts=NOPE", "P power p=4 j=1", "G group p=2 g=D4"):
        f = tmp_path / "c.txt"
        f.write_text(body + "\n")
        with pytest.raises(CatalogError):
            load_catalog(f)


def test_catalog_expectation_mismatch(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("# comment\n\nA power p=2 j=2 square=0\n")
    (e, A), = load_catalog(f)
    assert expectation_mismatches(e, A) == {"square": {"expected": False, "constructed": True}}


def test_field_algebra():
    A = make_field_algebra(F2, finite_field(2, 2))
    assert A.dim == 2 and A.simple and int(A.unit_mask.sum()) == 3
    T = make_triangular(F3, 2)
    assert T.dim == 3 and int(T.unit_mask.sum()) == 2 * 2 * 3
    assert np.array_equal(A.unit_encodings(), np.array([1, 2, 3]))
