import random

import numpy as np
import pytest

from normlab.errors import BadTable, NotNormal, ZeroElement
from normlab.ffield import FieldElement, prime_field
from normlab.group_algebra import (
    GroupTable,
    a_tilde,
    aug_ideal_basis,
    augmentation,
    bridge_report,
    cyclic_group,
    diagram_commutes,
    gamma_transport,
    group_ring,
    is_nilpotent_ga,
    is_unit_ga,
    parse_group,
    symmetric_group,
    tower_group_algebra,
    transport_scan,
    transported_ideal_meets_units,
)
from normlab.normal import compute_C, enumerate_B
from normlab.tower import build_tower

import oracle

F2, F3 = prime_field(2), prime_field(3)


def test_cyclic_group_and_ring_examples():
    G = cyclic_group(2)
    assert G.order == 2 and G.mul(1, 1) == G.identity == 0
    A = group_ring(F2, G)
    assert len(list(A.elements())) == 4
    x = A.one + A.g(1)
    assert (x * x).is_zero
    assert is_nilpotent_ga(x) and not is_unit_ga(x)


@pytest.mark.parametrize("table", [
    [[0, 1], [0, 1]],                       # column not a permutation
    [[0, 1, 2], [1, 0, 2], [2, 2, 0]],      # not a latin square
    [[0, 1], [1, 2]],                       # entry out of range
])
def test_bad_tables(table):
    with pytest.raises(BadTable):
        GroupTable(table)


def test_identity_need_not_be_index_zero():
    assert GroupTable([[1, 0], [0, 1]]).identity == 1


def test_non_associative_latin_square():
    # a loop of order 5 that is not a group
    t = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(BadTable):
        GroupTable(t)


def test_parse_group():
    assert parse_group("C2xC2").order == 4 and parse_group("C2xC2").is_abelian
    S3 = parse_group("S3")
    assert S3.order == 6 and not S3.is_abelian
    with pytest.raises(BadTable):
        parse_group("D4")


@pytest.mark.parametrize("F,G", [(F2, cyclic_group(3)), (F2, symmetric_group(3)), (F3, cyclic_group(2)), (F2, parse_group("C2xC2"))])
def test_augmentation_is_ring_hom(F, G):
    A = group_ring(F, G)
    els = list(A.elements())
    for g in range(G.order):
        assert augmentation(A.g(g)) == F.one
    rnd = random.Random(1)
    pairs = [(x, y) for x in els for y in els] if len(els) <= 16 else [(rnd.choice(els), rnd.choice(els)) for _ in range(400)]
    for x, y in pairs:
        assert augmentation(x * y) == augmentation(x) * augmentation(y)
        assert augmentation(x + y) == augmentation(x) + augmentation(y)
    basis = aug_ideal_basis(A)
    assert len(basis) == G.order - 1 and all(augmentation(b) == F.zero for b in basis)


@pytest.mark.parametrize("F,G", [(F2, cyclic_group(3)), (F2, cyclic_group(4)), (F3, cyclic_group(3)), (F2, symmetric_group(3)), (F2, parse_group("C2xC2"))])
def test_units_and_nilpotents(F, G):
    A = group_ring(F, G)
    S = A.structure
    for x in A.elements():
        u, n = is_unit_ga(x), is_nilpotent_ga(x)
        assert not (u and n)
        assert u == bool(S.unit_mask[x.encode()])
        # unit iff not a zero divisor
        zd = any((x * y).is_zero or (y * x).is_zero for y in A.elements() if not y.is_zero)
        assert u != zd
    for g in range(G.order):
        assert is_unit_ga(A.g(g))


def test_unit_count_f2c3():
    A = group_ring(F2, cyclic_group(3))
    assert sum(is_unit_ga(x) for x in A.elements()) == 3


@pytest.mark.parametrize("p,m", [(2, 3), (2, 5), (3, 3), (5, 2)])
def test_cyclic_unit_counts_match_oracle(p, m):
    A = group_ring(prime_field(p), cyclic_group(m))
    assert int(A.structure.unit_mask.sum()) == oracle.cyclic_group_algebra_units(p, m)


# ------------------------------------------------------------------- bridge

BRIDGE = [(2, 1, 3), (2, 1, 4), (3, 1, 2), (3, 1, 3), (2, 2, 2), (5, 1, 2), (2, 3, 2)]


def test_a_tilde_identity_and_refusal():
    T = build_tower(3, 1, 2)
    KG = tower_group_algebra(T)
    a = FieldElement(T.L, 4)
    assert a_tilde(T, a, KG.one) == a
    with pytest.raises(NotNormal):
        a_tilde(T, FieldElement(T.L, 3), KG.one)


@pytest.mark.parametrize("params", BRIDGE)
def test_bridge(params):
    T = build_tower(*params)
    B = enumerate_B(T)
    N = T.trace_kernel().members()
    units = tower_group_algebra(T).structure.unit_mask
    for v in B.encodings[:3]:
        r = bridge_report(T, FieldElement(T.L, int(v)), B.mask, N, units)
        assert r.ok, r.failures


@pytest.mark.parametrize("params", BRIDGE)
def test_gamma_transport_random(params):
    T = build_tower(*params)
    KG = tower_group_algebra(T)
    a = FieldElement(T.L, int(enumerate_B(T).encodings[0]))
    rnd = random.Random(7)
    assert all(gamma_transport(T, a, T.L.one, r) == r for r in list(KG.elements())[:50])
    for _ in range(100):
        gamma = FieldElement(T.L, rnd.randrange(1, T.order))
        r = KG.from_encoding(rnd.randrange(T.order))
        out = gamma_transport(T, a, gamma, r)
        assert a_tilde(T, a, out) == gamma * a_tilde(T, a, r)
    with pytest.raises(ZeroElement):
        gamma_transport(T, a, T.L.zero, KG.one)


@pytest.mark.parametrize("params", [(2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (3, 1, 3)])
def test_transport_and_C(params):
    T = build_tower(*params)
    B = enumerate_B(T)
    C = compute_C(T)
    units = tower_group_algebra(T).structure.unit_mask
    a = FieldElement(T.L, int(B.encodings[-1]))
    gammas = list(range(1, T.order))
    commutes, hits = transport_scan(T, a, gammas, units)
    assert all(commutes)
    for g, hit in zip(gammas, hits):
        assert (hit.size == 0) == bool(C.mask[g])
    for g in gammas[:10]:
        gamma = FieldElement(T.L, g)
        assert diagram_commutes(T, a, gamma)
        assert np.array_equal(transported_ideal_meets_units(T, a, gamma, units), hits[g - 1])
