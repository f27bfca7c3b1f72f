"""Cayley-table validation and the structural queries."""

import numpy as np
import pytest

from unitary_lab import group_catalog as cat
from unitary_lab.errors import (
    IndexOutOfRange,
    NoIdentity,
    NotAssociative,
    NotCentralInvolution,
    NotLatin,
    NotNormal,
)
from unitary_lab.group_core import (
    SubgroupHandle,
    coset_representatives,
    validate_group,
)

# a Latin square with identity that is not a group (element 1 would need
# order 2 and 5 at once)
NONASSOC_LOOP = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 3, 4, 0, 1],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
]


def test_validate_trivial_and_c2():
    g1 = validate_group([[0]])
    assert g1.n == 1
    g2 = validate_group([[0, 1], [1, 0]])
    assert g2.n == 2 and g2.inverse(1) == 1


def test_validate_rejects_non_latin():
    with pytest.raises(NotLatin):
        validate_group([[0, 1], [1, 1]])


def test_validate_rejects_missing_identity():
    with pytest.raises(NoIdentity):
        validate_group([[1, 0], [0, 1]])


def test_validate_rejects_non_associative_with_witness():
    with pytest.raises(NotAssociative) as exc:
        validate_group(NONASSOC_LOOP)
    i, j, k = exc.value.witness
    t = np.array(NONASSOC_LOOP)
    assert t[t[i, j], k] != t[i, t[j, k]]


def test_element_queries_cyclic():
    c4 = cat.build("cyclic:4")
    assert c4.inverse(0) == 0 and c4.order_of(0) == 1
    assert c4.inverse(1) == 3
    assert c4.order_of(1) == 4


def test_element_queries_dihedral_reflection():
    d8 = cat.build("dihedral:8")
    s = 4
    assert d8.inverse(s) == s
    assert d8.order_of(s) == 2


def test_element_queries_bounds():
    c4 = cat.build("cyclic:4")
    with pytest.raises(IndexOutOfRange):
        c4.inverse(7)


def test_special_sets_d8():
    d8 = cat.build("dihedral:8")
    s = d8.special_sets()
    assert len(s.order_two) == 6
    assert s.center == (0, 2)
    assert s.central_order_two == (2,)


def test_special_sets_q8():
    q8 = cat.build("quaternion:8")
    s = q8.special_sets()
    assert len(s.order_two) == 2
    assert s.central_order_two == (2,)


def test_special_sets_c4():
    c4 = cat.build("cyclic:4")
    s = c4.special_sets()
    assert s.squares == (0, 2)
    assert s.square_order_two == (0, 2)
    assert len(s.square_order_two) == 2


def test_square_roots_d8():
    d8 = cat.build("dihedral:8")
    t = d8.square_roots(2)
    assert t == (1, 3)
    assert d8.is_pairwise_commuting(t)


def test_square_roots_q8_not_commuting():
    q8 = cat.build("quaternion:8")
    t = q8.square_roots(2)
    assert len(t) == 6
    assert not q8.is_pairwise_commuting(t)


def test_square_roots_c4():
    c4 = cat.build("cyclic:4")
    assert c4.square_roots(2) == (1, 3)
    assert c4.is_pairwise_commuting((1, 3))


def test_square_roots_rejects_non_central():
    d8 = cat.build("dihedral:8")
    with pytest.raises(NotCentralInvolution):
        d8.square_roots(4)  # a reflection: involution but not central
    with pytest.raises(NotCentralInvolution):
        d8.square_roots(0)


def test_subgroup_generated():
    d8 = cat.build("dihedral:8")
    assert d8.subgroup_generated([0]).members == (0,)
    assert d8.subgroup_generated([1]).members == (0, 1, 2, 3)
    q8 = cat.build("quaternion:8")
    assert q8.subgroup_generated([2]).members == (0, 2)


def test_subgroup_handle_rejects_non_closed():
    d8 = cat.build("dihedral:8")
    with pytest.raises(ValueError):
        SubgroupHandle(d8, (0, 1))  # r alone is not closed


def test_quotient_d8_by_center_is_klein():
    d8 = cat.build("dihedral:8")
    center = d8.subgroup_generated([2])
    gbar, proj = d8.quotient(center)
    assert gbar.n == 4
    assert all(gbar.mul(g, g) == 0 for g in gbar.elements())
    assert proj[0] == 0


def test_quotient_c4_by_squares_is_c2():
    c4 = cat.build("cyclic:4")
    gbar, proj = c4.quotient(c4.subgroup_generated([2]))
    assert gbar.n == 2
    assert proj == (0, 1, 0, 1)


def test_quotient_by_trivial_is_same_table():
    d8 = cat.build("dihedral:8")
    gbar, proj = d8.quotient(SubgroupHandle(d8, (0,)))
    assert np.array_equal(gbar.table, d8.table)
    assert proj == tuple(range(8))


def test_quotient_rejects_non_normal():
    d8 = cat.build("dihedral:8")
    with pytest.raises(NotNormal):
        d8.quotient(d8.subgroup_generated([4]))  # <s> is not normal in D8


def test_projection_lift_round_trip():
    for name in ("dihedral:8", "cyclic:16", "quaternion:16"):
        g = cat.build(name)
        for c in g.special_sets().central_order_two:
            gbar, proj = g.quotient(g.subgroup_generated([c]))
            reps = coset_representatives(proj, gbar.n)
            assert [proj[r] for r in reps] == list(range(gbar.n))


def test_quotient_order_two_count_identity():
    # |Gbar{2}| = (|G{2}| + |T_c|) / 2 for H = <c>, across all catalog 2-groups
    for g in cat.sweep(16, 2):
        g2 = len(g.special_sets().order_two)
        for c in g.special_sets().central_order_two:
            t_c = len(g.square_roots(c))
            gbar, _ = g.quotient(g.subgroup_generated([c]))
            assert len(gbar.special_sets().order_two) == (g2 + t_c) // 2, g.id


def test_fixed_point_free_pairing_parity():
    # |G| - |G_sigma| is even for the inversion involution (G_sigma = G{2})
    for g in cat.sweep(16, 2) + cat.sweep(27, 3):
        g2 = len(g.special_sets().order_two)
        assert (g.n - g2) % 2 == 0


def test_group_equality_and_key():
    a = cat.build("dihedral:8")
    b = cat.build("dihedral:8")
    assert a == b
    assert a.key == b.key


def test_sampled_associativity_accepts_large_group():
    import unitary_lab.group_catalog as cat
    g = cat.build("product:dihedral:64*cyclic:2")  # order 128: sampled path
    assert g.n == 128
    assert g.order_of(2) == 32  # (r, 1) sits at index 1*|B| = 2


def test_sampled_associativity_catches_large_loop():
    # direct cube of the order-5 loop: still Latin with identity, and roughly
    # 79% of triples fail associativity, so the seeded sample must find one
    base = np.array(NONASSOC_LOOP)
    n = 125
    table = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a = (i % 5, i // 5 % 5, i // 25)
        for j in range(n):
            b = (j % 5, j // 5 % 5, j // 25)
            c = (base[a[0], b[0]], base[a[1], b[1]], base[a[2], b[2]])
            table[i, j] = c[0] + 5 * c[1] + 25 * c[2]
    with pytest.raises(NotAssociative):
        validate_group(table)
