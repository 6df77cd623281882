from fractions import Fraction

import pytest

from wardwick.coeff import GaussQ, I, ONE, ZERO, ScalarCoeff, format_gauss


def test_gaussian_arithmetic():
    assert I * I == GaussQ(-1)
    assert (GaussQ(1, 2) + 3) == GaussQ(4, 2)
    assert GaussQ(1, 1) / GaussQ(1, 1) == ONE
    assert GaussQ(3, 4).norm() == 25
    assert GaussQ(2, -1).conjugate() == GaussQ(2, 1)
    assert not ZERO and ONE


def test_division_is_exact():
    q = GaussQ(1) / GaussQ(0, 3)
    assert q == GaussQ(0, Fraction(-1, 3))
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@pytest.mark.parametrize("value, text", [
    (GaussQ(1), "1"), (GaussQ(0, 1), "i"), (GaussQ(0, -2), "-2*i"), (GaussQ(Fraction(1, 2)), "1/2"),
])
def test_format(value, text):
    assert format_gauss(value) == text


def test_scalar_coeff_multiplication_adds_powers():
    a = ScalarCoeff.of(2, hbar_power=1)
    b = ScalarCoeff.of(I, hbar_power=2, mass2_power=1)
    c = a * b
    assert c.number == GaussQ(0, 2)
    assert (c.hbar_power, c.mass2_power) == (3, 1)
