"""Algebraic laws checked on random field polynomials."""

from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import INDICES, monomials, polynomials
from wardwick.coeff import I
from wardwick.expr import Expr
from wardwick.fields import charge_conjugate, charge_number, mass_dimension, theta
from wardwick.kernels import (
    apply_klein_gordon, canonicalize, delta_support_reduce, differentiate, expand_commutator_function,
)
from wardwick.wick import poisson_bracket, star_commutator, star_product

SETTINGS = settings(max_examples=60, deadline=None)


@SETTINGS
@given(polynomials("x"), polynomials("z"))
def test_theta_is_a_derivation(f, g):
    assert theta(star_product(f, g)) == star_product(theta(f), g) + star_product(f, theta(g))


@SETTINGS
@given(polynomials("x"), polynomials("z"))
def test_charge_conjugation_is_multiplicative(f, g):
    assert charge_conjugate(star_product(f, g)) == star_product(charge_conjugate(f), charge_conjugate(g))


@SETTINGS
@given(polynomials("x"), st.sampled_from([1, -1, I, -I]))
def test_charge_conjugation_is_an_involution(f, eta):
    assert charge_conjugate(charge_conjugate(f, eta), eta) == f


@SETTINGS
@given(polynomials("x"))
def test_canonicalization_is_idempotent(f):
    assert canonicalize(canonicalize(f)) == canonicalize(f)


@SETTINGS
@given(polynomials("x", max_fields=2, indices=("mu", "a")), polynomials("y", max_fields=2, indices=("nu", "a")),
       polynomials("z", max_fields=2, indices=("rho",)))
def test_star_product_is_associative(f, g, h):
    assert star_product(star_product(f, g), h) == star_product(f, star_product(g, h))


@SETTINGS
@given(polynomials("x"), polynomials("z"))
def test_classical_limit_and_poisson(f, g):
    assert star_product(f, g).hbar_part(0) == f * g
    first = star_commutator(f, g, rewrite=False).hbar_part(1)
    want = expand_commutator_function(poisson_bracket(f, g)).scale(I, hbar_power=1)
    assert first == want


@SETTINGS
@given(st.sampled_from(["DF", "D", "delta"]), st.lists(st.sampled_from(["mu", "nu"]), max_size=2, unique=True),
       st.lists(st.sampled_from(["rho", "a"]), max_size=2, unique=True))
def test_orientation_flip(kind, dy, dx):
    sign = -1 if kind == "D" else 1
    flipped = Expr.kernel(kind, "y", "x", tuple(dy), tuple(dx))
    assert flipped == Expr.kernel(kind, "x", "y", tuple(dx), tuple(dy)).scale(sign)


@SETTINGS
@given(st.lists(st.sampled_from(["mu", "nu"]), max_size=2, unique=True),
       st.lists(st.sampled_from(["rho", "a"]), max_size=2, unique=True))
def test_positive_frequency_keeps_orientation(dy, dx):
    k = Expr.kernel("DP", "y", "x", tuple(dy), tuple(dx))
    assert k != Expr.kernel("DP", "x", "y", tuple(dx), tuple(dy))
    assert differentiate(k, "x", "s") == canonicalize(differentiate(k, "x", "s"))


@SETTINGS
@given(polynomials("x"), st.sampled_from(INDICES), st.sampled_from(INDICES))
def test_partial_derivatives_commute(f, a, b):
    assert differentiate(differentiate(f, "x", a), "x", b) == differentiate(differentiate(f, "x", b), "x", a)


@SETTINGS
@given(polynomials("x"))
def test_relabel_round_trip(f):
    assert f.relabel({"x": "w"}).relabel({"w": "x"}) == f


@SETTINGS
@given(polynomials("x"), polynomials("z"))
def test_kg_idempotent_and_delta_free_identity(f, g):
    e = star_product(f, g, kind="DF")
    boxed = differentiate(differentiate(e, "z", "s"), "z", "s")
    once = apply_klein_gordon(boxed)
    assert apply_klein_gordon(once) == once
    assert delta_support_reduce(e, eliminate="z") == e


@SETTINGS
@given(monomials("x"))
def test_theta_eigenvalue_is_charge_number(m):
    assert theta(m) == m.scale(charge_number(m))


@SETTINGS
@given(monomials("x"), monomials("x"), st.integers(3, 8))
def test_mass_dimension_is_additive(p, q, d):
    assert mass_dimension(p * q, d) == mass_dimension(p, d) + mass_dimension(q, d)
