"""Exact coefficients: Gaussian rationals, optionally times powers of hbar and m^2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational


class GaussQ:
    """A Gaussian rational ``re + i*im`` with exact :class:`Fraction` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, value) -> "GaussQ":
        if isinstance(value, GaussQ):
            return value
        if isinstance(value, (int, Rational)):
            return cls(value)
        if isinstance(value, complex):
            return cls(Fraction(value.real).limit_denominator(), Fraction(value.imag).limit_denominator())
        if isinstance(value, tuple) and len(value) == 2:
            return cls(*value)
        raise TypeError(f"cannot use {value!r} as an exact coefficient")

    def __add__(self, other):
        other = GaussQ.coerce(other)
        return GaussQ(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussQ.coerce(other))

    def __rsub__(self, other):
        return GaussQ.coerce(other) - self

    def __mul__(self, other):
        other = GaussQ.coerce(other)
        return GaussQ(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussQ.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero coefficient")
        return self * GaussQ(other.re / n, -other.im / n)

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            other = GaussQ.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"

    def __str__(self):
        return format_gauss(self)


I = GaussQ(0, 1)
ONE = GaussQ(1)
ZERO = GaussQ(0)


def _frac_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gauss(c: GaussQ) -> str:
    """Render in the expression grammar: ``3``, ``-1/2``, ``2*i``, ``(1+2*i)``."""
    if not c.im:
        return _frac_text(c.re)
    if not c.re:
        if c.im == 1:
            return "i"
        if c.im == -1:
            return "-i"
        return f"{_frac_text(c.im)}*i"
    im = c.im
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    imtxt = "i" if mag == 1 else f"{_frac_text(mag)}*i"
    return f"({_frac_text(c.re)}{sign}{imtxt})"


@dataclass(frozen=True)
class ScalarCoeff:
    """``(re + i*im) * hbar**hbar_power * (m^2)**mass2_power``."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)
    hbar_power: int = 0
    mass2_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))
        if self.hbar_power < 0 or self.mass2_power < 0:
            raise ValueError("hbar and m^2 powers must be non-negative")
        if not self.re and not self.im:
            # canonical zero
            object.__setattr__(self, "hbar_power", 0)
            object.__setattr__(self, "mass2_power", 0)

    @property
    def number(self) -> GaussQ:
        return GaussQ(self.re, self.im)

    @classmethod
    def of(cls, number, hbar_power: int = 0, mass2_power: int = 0) -> "ScalarCoeff":
        g = GaussQ.coerce(number)
        return cls(g.re, g.im, hbar_power, mass2_power)

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __mul__(self, other: "ScalarCoeff") -> "ScalarCoeff":
        if not isinstance(other, ScalarCoeff):
            other = ScalarCoeff.of(other)
        g = self.number * other.number
        return ScalarCoeff(g.re, g.im, self.hbar_power + other.hbar_power,
                           self.mass2_power + other.mass2_power)

    __rmul__ = __mul__

    def __neg__(self):
        return ScalarCoeff(-self.re, -self.im, self.hbar_power, self.mass2_power)

    def __str__(self):
        parts = []
        if self.hbar_power:
            parts.append("hbar" if self.hbar_power == 1 else f"hbar^{self.hbar_power}")
        if self.mass2_power:
            parts.append("m2" if self.mass2_power == 1 else f"m2^{self.mass2_power}")
        num = format_gauss(self.number)
        if num not in ("1",) or not parts:
            parts.insert(0, num)
        return "*".join(parts)
