import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from normlab.errors import DivisionByZero, TooLarge, FieldMismatch, NotPrime, Reducible, ZeroPolynomial
from normlab.ffield import (
    FieldElement,
    Polynomial,
    element_order,
    extension,
    factor_integer,
    factor_poly,
    finite_field,
    is_irreducible,
    is_prime,
    least_irreducible,
    least_primitive,
    multiply_factors,
    prime_field,
)

import oracle

F2, F3, F5, F7 = (prime_field(p) for p in (2, 3, 5, 7))


# --------------------------------------------------------------- prime fields

def test_prime_field_examples():
    assert F2.order == 2 and [e.value for e in F2.elements()] == [0, 1]
    with pytest.raises(NotPrime):
        prime_field(4)
    assert F7(3) * F7(5) == F7.one


@pytest.mark.parametrize("n", [0, 1, -3, 9, 91])
def test_not_prime(n):
    with pytest.raises(NotPrime):
        prime_field(n)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


# --------------------------------------------------------- least_irreducible

def test_least_irreducible_examples():
    assert least_irreducible(F2, 2).coeffs == (1, 1, 1)
    assert least_irreducible(F2, 3).coeffs == (1, 1, 0, 1)
    assert least_irreducible(F3, 2).coeffs == (1, 0, 1)


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)])
def test_least_irreducible_matches_bruteforce(p, d):
    assert list(least_irreducible(prime_field(p), d).coeffs) == oracle.least_irreducible_bruteforce(p, d)


def test_least_irreducible_over_extension_is_irreducible_and_least():
    F4 = finite_field(2, 2)
    f = least_irreducible(F4, 2)
    assert is_irreducible(f) and f.degree == 2
    # every monic quadratic with a smaller canonical integer has a root in F_4
    for n in range(f.canonical_int() - 16):
        g = Polynomial(F4, [n % 4, n // 4, 1])
        assert any(g(a) == F4.zero for a in F4.elements())


@pytest.mark.parametrize("p,d", [(2, 4), (3, 3), (5, 2)])
def test_rabin_agrees_with_bruteforce(p, d):
    F = prime_field(p)
    for tail in itertools.product(range(p), repeat=d):
        f = list(tail) + [1]
        assert is_irreducible(Polynomial(F, f)) == oracle.is_irreducible_bruteforce(f, p)


# ---------------------------------------------------------------- extension

def test_extension_examples():
    assert extension(F2, Polynomial(F2, [1, 1, 1])).order == 4
    with pytest.raises(Reducible):
        extension(F2, Polynomial(F2, [1, 0, 1]))
    assert extension(F3, Polynomial(F3, [1, 0, 1])).order == 9


def test_f4_arithmetic_examples():
    F4 = finite_field(2, 2)
    w = F4.gen
    assert w * w ** 2 == F4.one
    with pytest.raises(DivisionByZero):
        F4.zero.inverse()
    with pytest.raises(DivisionByZero):
        F4.one / F4.zero
    with pytest.raises(FieldMismatch):
        F4.one + F3.one
    with pytest.raises(FieldMismatch):
        finite_field(3, 2).gen * finite_field(3, 3).gen
    # the prime subfield coerces into F_4
    assert F4.one + F2.one == F4.zero


@pytest.mark.parametrize("p,d", [(2, 3), (3, 2), (5, 1), (2, 4), (7, 2)])
def test_lagrange(p, d):
    F = finite_field(p, d)
    for a in list(F.elements())[1:]:
        assert a ** (F.order - 1) == F.one


def test_nested_extension_cardinality_and_embedding():
    F4 = finite_field(2, 2)
    L = extension(F4, least_irreducible(F4, 3))
    assert L.order == 64 and L.degree == 6 and L.contains_subfield(F4)
    # K sits inside L as the encodings below q
    for a in range(4):
        for b in range(4):
            assert L.mul(a, b) == F4.mul(a, b)
            assert L.add(a, b) == F4.add(a, b)


fields = [finite_field(2, 3), finite_field(3, 2), extension(finite_field(2, 2), least_irreducible(finite_field(2, 2), 2))]


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(fields), st.data())
def test_field_axioms(F, data):
    el = st.integers(0, F.order - 1).map(lambda v: FieldElement(F, v))
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == F.zero and a + (-a) == F.zero
    if b.value:
        assert (a / b) * b == a and b * b.inverse() == F.one
    n = data.draw(st.integers(0, 40))
    expect = F.one
    for _ in range(n):
        expect = expect * a
    assert a ** n == expect


@pytest.mark.parametrize("F", fields)
def test_log_tables_match_scalar_ops(F):
    t = F.log_tables
    X = np.arange(F.order)
    xs, ys = np.meshgrid(X, X, indexing="ij")
    xs, ys = xs.ravel(), ys.ravel()
    assert t.mul(xs, ys).tolist() == [F.mul(int(a), int(b)) for a, b in zip(xs, ys)]
    assert t.add(xs, ys).tolist() == [F.add(int(a), int(b)) for a, b in zip(xs, ys)]
    assert t.inv(X[1:]).tolist() == [F.inv(int(a)) for a in X[1:]]
    assert t.pow(X, 5).tolist() == [F.pow(int(a), 5) for a in X]


def test_flat_coefficients_and_coords():
    F4 = finite_field(2, 2)
    L = extension(F4, least_irreducible(F4, 2))
    a = L(13)  # 13 = 1 + 3*4: coordinates (1, 3) over F_4
    assert [c.value for c in a.coords] == [1, 3]
    assert a.coefficients == (1, 0, 1, 1)
    assert L.from_coords([1, 3]) == 13


# ------------------------------------------------------------- factorisation

def test_factor_poly_examples():
    x3m1 = Polynomial(F2, [1, 0, 0, 1])
    assert [(f.coeffs, e) for f, e in factor_poly(x3m1)] == [((1, 1), 1), ((1, 1, 1), 1)]
    x2m1 = Polynomial(F3, [2, 0, 1])
    assert [(f.coeffs, e) for f, e in factor_poly(x2m1)] == [((1, 1), 1), ((2, 1), 1)]
    x4m1 = Polynomial(F2, [1, 0, 0, 0, 1])
    assert [(f.coeffs, e) for f, e in factor_poly(x4m1)] == [((1, 1), 4)]


@pytest.mark.parametrize("p,m", [(2, m) for m in range(2, 11)] + [(3, m) for m in range(2, 7)] + [(5, 4), (7, 3)])
def test_factor_poly_multiplies_back(p, m):
    F = prime_field(p)
    f = Polynomial(F, [F.neg(1)] + [0] * (m - 1) + [1])
    fac = factor_poly(f)
    assert multiply_factors(F, fac) == f
    for g, _ in fac:
        assert g.is_monic and oracle.is_irreducible_bruteforce(list(g.coeffs), p)


def test_factor_poly_zero():
    with pytest.raises(ZeroPolynomial):
        factor_poly(Polynomial(F2, []))


def test_factor_integer_examples():
    assert factor_integer(15) == [(3, 1), (5, 1)]
    assert factor_integer(1023) == [(3, 1), (11, 1), (31, 1)]
    assert factor_integer(1) == []


@given(st.integers(1, 10 ** 6))
def test_factor_integer_roundtrip(n):
    out = 1
    for q, e in factor_integer(n):
        assert is_prime(q)
        out *= q ** e
    assert out == n


def test_factor_integer_cap():
    with pytest.raises(TooLarge):
        factor_integer(2 ** 41)


# -------------------------------------------------------------------- orders

@pytest.mark.parametrize("p,d", [(2, 4), (3, 2), (5, 2), (2, 5)])
def test_element_order_matches_naive(p, d):
    F = finite_field(p, d)
    of = oracle.FlatField(p, d)
    ours = sorted(element_order(F, a) for a in range(1, F.order))
    theirs = sorted(of.order(a) for a in of.elements if a != of.zero)
    assert ours == theirs


def test_primitive_count_f16():
    F = finite_field(2, 4)
    assert sum(element_order(F, a) == 15 for a in range(1, 16)) == oracle.totient(15) == 8
    assert element_order(F, least_primitive(F)) == 15
