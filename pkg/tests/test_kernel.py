"""Tests for the Cayley-table kernel: construction, invariants, products."""

import math

import numpy as np
import pytest

from psi_lab import kernel
from psi_lab.families import (
    Abelian,
    Alt4,
    Cyclic,
    Dihedral,
    DirectProduct,
    KLEIN,
    Quaternion,
    SemidirectCyclic,
    Sym3,
    build,
)
from psi_lab.kernel import (
    Automorphism,
    CapExceeded,
    centralizer,
    direct_product,
    element_order,
    from_table,
    generated_subgroup,
    identity_automorphism,
    is_normal,
    order_spectrum,
    quotient,
    semidirect_product,
    subgroup,
)
from psi_lab.structure import isomorphic


def small_group_zoo():
    specs = [
        Cyclic(1), Cyclic(2), Cyclic(6), Cyclic(12), Cyclic(16),
        KLEIN, Abelian((4, 2)), Abelian((3, 3)),
        Sym3(), Alt4(), Quaternion(8), Dihedral(8), Dihedral(12),
        SemidirectCyclic(7, Cyclic(3), 2),
        DirectProduct((Sym3(), Cyclic(5))),
        Quaternion(16), Dihedral(16),
        DirectProduct((Quaternion(8), Cyclic(3))),
        Cyclic(60), Abelian((2, 2, 2, 2)),
    ]
    return [build(s) for s in specs]


def test_table_invariants_exhaustive_up_to_64():
    # Latin square + identity + full associativity for every zoo member.
    for g in small_group_zoo():
        assert g.order <= 64
        revalidated = from_table(g.table, g.label)
        assert revalidated.identity == g.identity


def test_element_order_examples():
    for g in (build(Sym3()), build(Cyclic(9))):
        assert element_order(g, g.identity) == 1
    c6 = build(Cyclic(6))
    assert element_order(c6, 1) == 6  # additive generator
    q8 = build(Quaternion(8))
    involutions = [x for x in q8.elements() if element_order(q8, x) == 2]
    assert len(involutions) == 1


def test_element_order_range_check():
    g = build(Cyclic(4))
    with pytest.raises(IndexError):
        element_order(g, 4)


def test_element_orders_divide_group_order():
    for g in small_group_zoo():
        orders = g.element_orders()
        assert all(g.order % int(o) == 0 for o in orders)


def test_order_spectrum_examples():
    assert order_spectrum(build(Cyclic(4))) == {1: 1, 2: 1, 4: 2}
    assert order_spectrum(build(Sym3())) == {1: 1, 2: 3, 3: 2}
    assert order_spectrum(build(Quaternion(8))) == {1: 1, 2: 1, 4: 6}


def test_order_spectrum_totals():
    for g in small_group_zoo():
        spec = order_spectrum(g)
        assert sum(spec.values()) == g.order
        assert spec[1] == 1


def test_generated_subgroup():
    s3 = build(Sym3())
    assert generated_subgroup(s3, []).members == (s3.identity,)
    c6 = build(Cyclic(6))
    assert generated_subgroup(c6, [3]).size == 2  # 3 has order 2 additively
    transpositions = [x for x in s3.elements() if element_order(s3, x) == 2]
    assert generated_subgroup(s3, transpositions[:2]).size == 6


def test_centralizer():
    c6 = build(Cyclic(6))
    syl3 = generated_subgroup(c6, [2])
    syl2 = generated_subgroup(c6, [3])
    # abelian: the centralizer of anything within a subgroup is that subgroup
    assert centralizer(c6, syl3, syl3).members == syl3.members
    assert centralizer(c6, syl3, syl2).members == syl2.members
    s3 = build(Sym3())
    orders = s3.element_orders()
    syl3 = generated_subgroup(s3, [int(np.where(orders == 3)[0][0])])
    syl2 = generated_subgroup(s3, [int(np.where(orders == 2)[0][0])])
    assert centralizer(s3, syl3, syl2).members == (s3.identity,)


def test_is_normal():
    s3 = build(Sym3())
    whole = subgroup(s3, range(6))
    assert is_normal(s3, whole)
    orders = s3.element_orders()
    syl3 = generated_subgroup(s3, [int(np.where(orders == 3)[0][0])])
    assert is_normal(s3, syl3)
    for x in np.where(orders == 2)[0]:
        assert not is_normal(s3, generated_subgroup(s3, [int(x)]))


def test_quotient():
    s3 = build(Sym3())
    trivial = generated_subgroup(s3, [])
    assert isomorphic(quotient(s3, trivial), s3).exists
    orders = s3.element_orders()
    syl3 = generated_subgroup(s3, [int(np.where(orders == 3)[0][0])])
    q = quotient(s3, syl3)
    assert q.order == 2
    q8 = build(Quaternion(8))
    z = kernel.center(q8)
    assert z.size == 2
    assert order_spectrum(quotient(q8, z)) == {1: 1, 2: 3}
    with pytest.raises(ValueError):
        quotient(s3, generated_subgroup(s3, [int(np.where(orders == 2)[0][0])]))


def test_quotient_order_invariant():
    a4 = build(Alt4())
    from psi_lab.structure import normal_subgroups

    for n in normal_subgroups(a4):
        q = quotient(a4, n)
        assert q.order * n.size == a4.order


def test_direct_product_examples():
    c1 = build(Cyclic(1))
    s3 = build(Sym3())
    assert isomorphic(direct_product(c1, s3), s3).exists
    prod = direct_product(s3, build(Cyclic(5)))
    assert int(prod.element_orders().sum()) == 273
    klein = direct_product(build(Cyclic(2)), build(Cyclic(2)))
    assert order_spectrum(klein) == {1: 1, 2: 3}


def test_direct_product_spectrum_is_lcm_convolution():
    pairs = [
        (Cyclic(4), Cyclic(9)),
        (Sym3(), Cyclic(5)),
        (Quaternion(8), Cyclic(3)),
        (KLEIN, Cyclic(15)),
    ]
    for sa, sb in pairs:
        a, b = build(sa), build(sb)
        assert math.gcd(a.order, b.order) == 1
        expected: dict[int, int] = {}
        for oa, ca in order_spectrum(a).items():
            for ob, cb in order_spectrum(b).items():
                key = math.lcm(oa, ob)
                expected[key] = expected.get(key, 0) + ca * cb
        assert order_spectrum(direct_product(a, b)) == expected


def test_semidirect_product_trivial_action_is_direct_product():
    p, h = build(Cyclic(5)), build(Cyclic(4))
    action = [identity_automorphism(p)] * 4
    sd = semidirect_product(p, h, action)
    dp = direct_product(p, h)
    assert np.array_equal(sd.table, dp.table)
    assert isomorphic(sd, dp).exists


def test_cyclic_exponent_automorphism():
    c9 = build(Cyclic(9))
    sigma = kernel.cyclic_exponent_automorphism(c9, 4)
    assert sigma(1) == 4  # additive table: x -> 4x
    with pytest.raises(ValueError):
        kernel.cyclic_exponent_automorphism(c9, 3)  # not a unit
    with pytest.raises(ValueError):
        kernel.cyclic_exponent_automorphism(build(KLEIN), 1)  # not cyclic


def test_semidirect_product_examples():
    s3 = build(SemidirectCyclic(3, Cyclic(2), 2))
    assert order_spectrum(s3) == {1: 1, 2: 3, 3: 2}
    g21 = build(SemidirectCyclic(7, Cyclic(3), 2))
    assert order_spectrum(g21) == {1: 1, 3: 14, 7: 6}
    assert int(g21.element_orders().sum()) == 85


def test_semidirect_product_rejects_bad_action():
    p, h = build(Cyclic(5)), build(Cyclic(2))
    # not an automorphism: swapping 1 and 2 in C5 is not additive
    with pytest.raises(ValueError):
        semidirect_product(p, h, [tuple(range(5)), (0, 2, 1, 3, 4)])
    # each map fine, but h -> x2 map is not an action of C2 (order 4 image)
    doubling = tuple((2 * x) % 5 for x in range(5))
    with pytest.raises(ValueError):
        semidirect_product(p, h, [tuple(range(5)), doubling])


def test_automorphism_validation():
    c5 = build(Cyclic(5))
    Automorphism(c5, tuple((2 * x) % 5 for x in range(5)))  # x -> 2x is fine
    with pytest.raises(ValueError):
        Automorphism(c5, (0, 2, 1, 3, 4))
    with pytest.raises(ValueError):
        Automorphism(c5, (1, 0, 2, 3, 4))  # moves the identity


def test_order_cap():
    with pytest.raises(CapExceeded):
        direct_product(build(Cyclic(64)), build(Cyclic(64)), max_order=2048)
    with pytest.raises(CapExceeded):
        build(Cyclic(100), max_order=64)


def test_from_table_rejects_garbage():
    with pytest.raises(ValueError):  # not Latin
        from_table([[0, 0], [1, 1]])
    with pytest.raises(ValueError):  # Latin square without identity
        from_table([[1, 0, 3, 2], [3, 2, 1, 0], [0, 1, 2, 3], [2, 3, 0, 1]],
                   identity=0)
    # the smallest non-associative Latin square with an identity row
    bad = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(ValueError):
        from_table(bad)


def test_subgroup_validation():
    s3 = build(Sym3())
    orders = s3.element_orders()
    three_cycle = int(np.where(orders == 3)[0][0])
    with pytest.raises(ValueError):
        subgroup(s3, [0, three_cycle])  # misses the cycle's square
    x = int(np.where(orders == 2)[0][0])
    sub = subgroup(s3, [0, x])
    assert sub.size == 2
    std = sub.as_group()
    assert std.order == 2


def test_tables_are_immutable():
    g = build(Cyclic(4))
    with pytest.raises(ValueError):
        g.table[0, 0] = 1
