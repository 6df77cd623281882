"""Star products, T-products, VEVs and full-contraction enumeration."""

import pytest

from wardwick.coeff import I
from wardwick.expr import Expr, all_indices
from wardwick.kernels import canonicalize
from wardwick.fields import current, interaction, phi, phis
from wardwick.wick import (
    brute_force_vev, causal_wick_expand, enumerate_full_contractions, feynman_star,
    isolate_dummies, poisson_bracket, star_commutator, star_product, tproduct_vev,
    unrenormalized_tproduct, vev,
)

HB = Expr.scalar(1, hbar_power=1)


def test_basic_commutators():
    assert star_commutator(phi("x"), phis("y")) == (HB * Expr.kernel("D", "x", "y")).scale(I)
    assert star_commutator(phi("x"), phi("y")).is_zero()
    assert star_commutator(phis("x"), phis("y")).is_zero()


def test_star_product_single_contraction():
    assert star_product(phi("x"), phis("z")) == phi("x") * phis("z") + HB * Expr.kernel("DP", "x", "z")
    assert star_product(phi("x"), phi("z")) == phi("x") * phi("z")


def test_star_product_double_contraction_factor():
    assert vev(star_product(phi("x") ** 2, phis("z") ** 2)) == \
        (HB * HB * Expr.kernel("DP", "x", "z") ** 2).scale(2)


def test_feynman_star_uses_feynman_propagator():
    assert feynman_star(phi("x"), phis("z")) == phi("x") * phis("z") + HB * Expr.kernel("DF", "x", "z")


def test_poisson_bracket_of_basic_fields():
    assert poisson_bracket(phi("x"), phis("y")) == Expr.kernel("D", "x", "y")


def test_two_point_tproduct():
    t = unrenormalized_tproduct([phis("x1"), phi("x2")])
    assert t == phis("x1") * phi("x2") + HB * Expr.kernel("DF", "x1", "x2")
    assert vev(t) == HB * Expr.kernel("DF", "x1", "x2")


def test_tproduct_is_symmetric():
    a, b, c = interaction("x1"), phis("x2") * phi("x2") ** 2, phis("x3") ** 2 * phi("x3")
    assert unrenormalized_tproduct([a, b, c]) == unrenormalized_tproduct([c, a, b])


def test_tproduct_rejects_repeated_labels():
    with pytest.raises(ValueError):
        unrenormalized_tproduct([phi("x"), phis("x")])


def test_shared_free_index_is_contracted():
    t = tproduct_vev([phis("x1", "mu"), phi("x2", "mu")])
    assert t.free_indices() == set()


def test_three_point_interaction_vev_and_diagrams():
    args = [interaction("x1"), phis("x2") * phi("x2") ** 2, phis("x3") ** 2 * phi("x3")]
    want = (HB ** 5 * Expr.kernel("DF", "x1", "x2") ** 2 * Expr.kernel("DF", "x1", "x3") ** 2
            * Expr.kernel("DF", "x2", "x3")).scale(20)
    assert tproduct_vev(args) == want
    assert brute_force_vev(args) == want
    assert sorted(d.scheme.multiplicity for d in enumerate_full_contractions(args)) == [4, 16]


def test_charge_imbalance_has_no_contractions():
    assert enumerate_full_contractions([phi("x1"), phi("x2")]) == []
    assert tproduct_vev([phi("x1") ** 2, phis("x2")]).is_zero()


def test_causal_wick_expansion_matches_tproduct():
    args = [phi("x1") ** 2, phis("x2") ** 2]
    assert causal_wick_expand(args) == unrenormalized_tproduct(args)
    args = [current("mu", "x1"), phis("x2") * phi("x2"), phi("x3", "nu")]
    assert causal_wick_expand(args) == unrenormalized_tproduct(args)


def test_isolate_dummies_keeps_value():
    e = phi("x", "mu") * phis("x", "mu")
    tagged = isolate_dummies(e, "t")
    assert all(i.startswith("_t") for i in all_indices(tagged))
    assert canonicalize(tagged) == e
