"""FG arithmetic, involutions, inversion, and the quotient map."""

import itertools
import random

import pytest

from unitary_lab import group_algebra as ga
from unitary_lab.errors import (
    EvenCharacteristic,
    NotAntiAutomorphism,
    NotAUnit,
    NotOrderTwo,
    NotPGroupOverField,
    SpecMismatch,
)
from unitary_lab.finite_field import make_field
from unitary_lab.group_catalog import build

GF2 = make_field(2, 1)
GF3 = make_field(3, 1)
GF4 = make_field(2, 2)


def _random_element(rng, field, group):
    return ga.from_coeffs(field, group, [rng.randrange(field.p) for _ in range(group.n)])


def _all_elements(field, group):
    for combo in itertools.product(range(field.order), repeat=group.n):
        yield ga.AlgebraElement(field, group,
                                tuple(field.from_code(c) for c in combo))


def test_basis_multiplication_follows_table():
    d8 = build("dihedral:8")
    for g in d8.elements():
        x = ga.basis_element(GF2, d8, g)
        y = ga.basis_element(GF2, d8, d8.inverse(g))
        assert x * y == ga.algebra_one(GF2, d8)


def test_fc4_gf2_product_example():
    c4 = build("cyclic:4")
    x = ga.from_coeffs(GF2, c4, [1, 1, 1, 0])
    y = ga.from_coeffs(GF2, c4, [1, 0, 1, 1])
    assert x * y == ga.algebra_one(GF2, c4)


def test_multiply_by_zero():
    c4 = build("cyclic:4")
    x = ga.from_coeffs(GF3, c4, [1, 2, 0, 1])
    assert (x * ga.algebra_zero(GF3, c4)).is_zero()


def test_ring_axioms_exhaustive_fc2_gf2():
    c2 = build("cyclic:2")
    elems = list(_all_elements(GF2, c2))
    assert len(elems) == 4
    for x, y, z in itertools.product(elems, repeat=3):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert (x + y) * z == x * z + y * z


@pytest.mark.parametrize("group_name,field", [
    ("cyclic:4", GF3), ("dihedral:8", GF2), ("heisenberg:3", GF3),
])
def test_ring_axioms_sampled(group_name, field):
    group = build(group_name)
    rng = random.Random(0)
    for _ in range(1000):
        x, y, z = (_random_element(rng, field, group) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x


def test_augmentation_examples():
    c2 = build("cyclic:2")
    assert ga.basis_element(GF2, c2, 1).augmentation() == GF2.one
    x = ga.from_coeffs(GF2, c2, [1, 1])
    assert x.augmentation().is_zero()
    y = ga.from_coeffs(GF3, c2, [2, 2])
    assert y.augmentation() == GF3.one and y.is_normalized_unit()


def test_augmentation_is_multiplicative():
    q8 = build("quaternion:8")
    rng = random.Random(1)
    for _ in range(200):
        x, y = _random_element(rng, GF4, q8), _random_element(rng, GF4, q8)
        assert (x * y).augmentation() == x.augmentation() * y.augmentation()


def test_normalized_unit_count_small():
    c2 = build("cyclic:2")
    normalized = [x for x in _all_elements(GF2, c2) if x.is_normalized_unit()]
    assert len(normalized) == GF2.order ** (c2.n - 1)


def test_invert_examples():
    c4 = build("cyclic:4")
    one = ga.algebra_one(GF2, c4)
    assert one.invert() == one
    g = ga.basis_element(GF2, c4, 1)
    assert g.invert() == ga.basis_element(GF2, c4, 3)
    x = ga.from_coeffs(GF2, c4, [1, 1, 1, 0])
    assert x.invert() == ga.from_coeffs(GF2, c4, [1, 0, 1, 1])


def test_invert_refuses_augmentation_zero():
    c2 = build("cyclic:2")
    with pytest.raises(NotAUnit):
        ga.from_coeffs(GF2, c2, [1, 1]).invert()


def test_invert_refuses_non_p_group():
    c3 = build("cyclic:3")
    with pytest.raises(NotPGroupOverField):
        ga.algebra_one(GF2, c3).invert()


@pytest.mark.parametrize("group_name,field", [
    ("cyclic:9", GF3), ("dihedral:8", GF2), ("quaternion:8", GF4),
])
def test_invert_random_units(group_name, field):
    group = build(group_name)
    rng = random.Random(2)
    one = ga.algebra_one(field, group)
    count = 0
    while count < 25:
        x = _random_element(rng, field, group)
        if x.augmentation().is_zero():
            continue
        count += 1
        inv = x.invert()
        assert x * inv == one and inv * x == one


def test_canonical_star_abelian_is_automorphism():
    c9 = build("cyclic:9")
    star = ga.canonical_star(c9)
    for g in c9.elements():
        for h in c9.elements():
            assert star.sigma[c9.mul(g, h)] == c9.mul(star.sigma[g], star.sigma[h])


def test_canonical_star_q8_fixed_points():
    q8 = build("quaternion:8")
    assert ga.canonical_star(q8).fixed_points() == (0, 2)


def test_identity_map_on_d8_is_not_anti_automorphism():
    d8 = build("dihedral:8")
    with pytest.raises(NotAntiAutomorphism) as exc:
        ga.involution_from_map(d8, list(d8.elements()))
    assert exc.value.witness == (1, 4)  # (r, s): rs != sr


def test_identity_map_on_abelian_is_accepted():
    c4 = build("cyclic:4")
    inv = ga.involution_from_map(c4, list(c4.elements()), name="identity")
    assert inv.fixed_points() == (0, 1, 2, 3)


def test_involution_from_map_rejects_higher_order():
    c4 = build("cyclic:4")
    with pytest.raises(NotOrderTwo):
        ga.involution_from_map(c4, [0, 2, 3, 1])


def test_involution_from_map_rejects_non_permutation():
    c4 = build("cyclic:4")
    with pytest.raises(ValueError):
        ga.involution_from_map(c4, [0, 0, 1, 2])


def test_apply_involution_relabels_coefficients():
    c4 = build("cyclic:4")
    star = ga.canonical_star(c4)
    x = ga.from_coeffs(GF3, c4, [1, 2, 0, 0])      # 1 + 2g
    assert ga.apply_involution(x, star) == ga.from_coeffs(GF3, c4, [1, 0, 0, 2])


def test_apply_involution_fixes_symmetrized_basis():
    d8 = build("dihedral:8")
    star = ga.canonical_star(d8)
    g = ga.basis_element(GF2, d8, 1)
    sym = g + ga.apply_involution(g, star)
    assert ga.apply_involution(sym, star) == sym


def test_involution_reverses_products():
    q8 = build("quaternion:8")
    star = ga.canonical_star(q8)
    rng = random.Random(3)
    for _ in range(200):
        x, y = _random_element(rng, GF3, q8), _random_element(rng, GF3, q8)
        assert ga.apply_involution(x * y, star) == \
            ga.apply_involution(y, star) * ga.apply_involution(x, star)
        assert ga.apply_involution(ga.apply_involution(x, star), star) == x


def test_star_fixed_points_d8_are_involutions():
    d8 = build("dihedral:8")
    assert len(ga.canonical_star(d8).fixed_points()) == 6


def test_skew_basis_sizes():
    c3, c9, h27 = build("cyclic:3"), build("cyclic:9"), build("heisenberg:3")
    star3 = ga.canonical_star(c3)
    basis = ga.skew_symmetric_basis(c3, star3, GF3)
    assert len(basis) == 1
    assert basis[0] == ga.basis_element(GF3, c3, 1) - ga.basis_element(GF3, c3, 2)
    assert len(ga.skew_symmetric_basis(c9, ga.canonical_star(c9), GF3)) == 4
    assert len(ga.skew_symmetric_basis(h27, ga.canonical_star(h27), GF3)) == 13


def test_skew_basis_vectors_are_skew():
    c9 = build("cyclic:9")
    star = ga.canonical_star(c9)
    for b in ga.skew_symmetric_basis(c9, star, GF3):
        assert ga.apply_involution(b, star) == -b


def test_skew_basis_refuses_char2():
    c4 = build("cyclic:4")
    with pytest.raises(EvenCharacteristic):
        ga.skew_symmetric_basis(c4, ga.canonical_star(c4), GF2)


def test_ideal_and_quotient_d8():
    d8 = build("dihedral:8")
    center = d8.subgroup_generated([2])
    ideal, psi, lift = ga.ideal_and_quotient(d8, center, GF2)
    assert ideal.dimension == 4
    assert ideal.unit_coset_order() == 16
    one = ga.algebra_one(GF2, d8)
    assert psi(one) == ga.algebra_one(GF2, ideal.quotient_group)
    hat = one + ga.basis_element(GF2, d8, 2)
    assert psi(hat).is_zero()


def test_psi_is_homomorphism():
    c8 = build("cyclic:8")
    sub = c8.subgroup_generated([4])
    _, psi, _ = ga.ideal_and_quotient(c8, sub, GF4)
    rng = random.Random(4)
    for _ in range(100):
        x = _random_element(rng, GF4, c8)
        y = _random_element(rng, GF4, c8)
        assert psi(x * y) == psi(x) * psi(y)
        assert psi(x + y) == psi(x) + psi(y)


def test_psi_lift_is_identity():
    q16 = build("quaternion:16")
    sub = q16.subgroup_generated([4])
    ideal, psi, lift = ga.ideal_and_quotient(q16, sub, GF2)
    gbar = ideal.quotient_group
    rng = random.Random(5)
    for _ in range(50):
        xbar = _random_element(rng, GF2, gbar)
        assert psi(lift(xbar)) == xbar


def test_kernel_dimension_for_larger_subgroup():
    c8 = build("cyclic:8")
    sub = c8.subgroup_generated([2])   # order 4
    ideal, psi, _ = ga.ideal_and_quotient(c8, sub, GF2)
    assert ideal.dimension == c8.n - c8.n // len(sub)
    for b in ideal.kernel_basis:
        assert psi(b).is_zero()


def test_spec_mismatch_between_algebras():
    c4, c2 = build("cyclic:4"), build("cyclic:2")
    x = ga.algebra_one(GF2, c4)
    y = ga.algebra_one(GF2, c2)
    with pytest.raises(SpecMismatch):
        x + y
    with pytest.raises(SpecMismatch):
        x * ga.algebra_one(GF4, c4)


def test_algebra_literals_round_trip():
    c4 = build("cyclic:4")
    x = ga.from_coeffs(GF4, c4, [GF4.one, GF4.element([0, 1]), GF4.zero, GF4.one])
    text = ga.format_algebra_literal(x)
    assert text == "10*g0 + 01*g1 + 10*g3"
    assert ga.parse_algebra_literal(GF4, c4, text) == x
    assert ga.format_algebra_literal(ga.algebra_zero(GF4, c4)) == "0"
