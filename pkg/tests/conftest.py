"""Shared hypothesis strategies: random field polynomials in the basic fields."""

from hypothesis import strategies as st

from wardwick.coeff import GaussQ
from wardwick.expr import Expr
from wardwick.fields import phi, phis

INDICES = ("mu", "nu", "rho")


@st.composite
def basic_fields(draw, label, indices=INDICES):
    make = draw(st.sampled_from([phi, phis]))
    derivs = draw(st.lists(st.sampled_from(indices), max_size=1))
    return make(label, *derivs)


@st.composite
def monomials(draw, label="x", min_fields=0, max_fields=4, indices=INDICES):
    n = draw(st.integers(min_fields, max_fields))
    out = Expr.scalar(1)
    for _ in range(n):
        out = out * draw(basic_fields(label, indices))
    return out


@st.composite
def coefficients(draw):
    re = draw(st.integers(-3, 3))
    im = draw(st.integers(-3, 3))
    if re == 0 and im == 0:
        re = 1
    return GaussQ(re, im)


@st.composite
def polynomials(draw, label="x", max_terms=2, max_fields=4, indices=INDICES):
    """A sum of up to ``max_terms`` monomials at ``label`` with small Gaussian-integer coefficients."""
    total = Expr()
    for _ in range(draw(st.integers(1, max_terms))):
        total = total + draw(monomials(label, 0, max_fields, indices)).scale(draw(coefficients()))
    return total
