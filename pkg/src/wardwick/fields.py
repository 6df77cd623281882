"""Local field polynomials in phi, phi* and their derivatives.

Polynomials are plain :class:`~wardwick.expr.Expr` objects without kernel
factors.  The operators here (``theta``, ``theta_mu``, ``charge_conjugate``)
act on the field part only, so they also apply to operator expressions.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, prod
from collections import Counter
import itertools

from .coeff import GaussQ, I
from .expr import PHI, PHIS, Expr, FieldFactor

FieldPolynomial = Expr
FieldMonomial = Expr


def phi(label="x", *derivs) -> Expr:
    return Expr.field(label, PHI, *derivs)


def phis(label="x", *derivs) -> Expr:
    return Expr.field(label, PHIS, *derivs)


def monomial(label, n_phi=0, n_phis=0, coeff=1) -> Expr:
    """``coeff * phi^n_phi * phi*^n_phis`` at ``label``."""
    return (phi(label) ** n_phi) * (phis(label) ** n_phis) * coeff


def interaction(label="x") -> Expr:
    """The quartic interaction ``L = (phi* phi)^2``."""
    return monomial(label, 2, 2)


def current(index="mu", label="x") -> Expr:
    """``j^index = i (phi d^index phi* - phi* d^index phi)``."""
    return (phi(label) * phis(label, index) - phis(label) * phi(label, index)) * I


def noether_q(label="x") -> Expr:
    """``Q = s phi = i phi``."""
    return phi(label) * I


def basis_b(indices=("mu", "nu", "rho"), label="x"):
    """The basis {phi^m phi*^n (m, n <= 2), d phi, d phi*, j}.

    Returns ``(name, factory)`` pairs; ``factory(label, index)`` builds the element.
    """
    out = []
    for m in range(3):
        for n in range(3):
            name = f"phi^{m}*phis^{n}"
            out.append((name, lambda lab, idx, m=m, n=n: monomial(lab, m, n)))
    out.append(("d phi", lambda lab, idx: phi(lab, idx)))
    out.append(("d phis", lambda lab, idx: phis(lab, idx)))
    out.append(("j", lambda lab, idx: current(idx, lab)))
    return out


# ---------------------------------------------------------------------------


def _fields_of(m: Expr):
    if len(m.terms) != 1:
        raise ValueError("expected a single monomial")
    return next(iter(m.terms))[3]


def charge_of_fields(fields) -> int:
    return sum(1 if f.species == PHI else -1 for f in fields)


def charge_number(m: Expr) -> int:
    """``a - b``: number of phi-type minus number of phi*-type factors."""
    return charge_of_fields(_fields_of(m))


def charge_numbers(p: Expr) -> set:
    return {charge_of_fields(key[3]) for key in p.terms}


def mass_dimension(p: Expr, d: int = 4) -> Fraction:
    """Mass dimension, with ``dim d^a phi = (d-2)/2 + |a|``.

    Polynomials are accepted only when all terms agree.
    """
    if d < 3:
        raise ValueError("spacetime dimension must be >= 3")
    dims = set()
    for key in p.terms:
        dims.add(sum(Fraction(d - 2, 2) + len(f.derivs) for f in key[3]))
    if not dims:
        return Fraction(0)
    if len(dims) > 1:
        raise ValueError("polynomial is not homogeneous in mass dimension")
    return dims.pop()


def is_p1(p: Expr) -> bool:
    """At most first derivatives on every basic field."""
    return all(len(f.derivs) <= 1 for key in p.terms for f in key[3])


def _require_p1(p: Expr):
    if not is_p1(p):
        raise ValueError("theta is only defined on polynomials with at most first derivatives")


def theta(p: Expr) -> Expr:
    """Charge number operator; multiplies each term by its ``a - b``."""
    _require_p1(p)
    return Expr({k: c * charge_of_fields(k[3]) for k, c in p.terms.items() if charge_of_fields(k[3])})


def theta_mu(p: Expr, index: str = "mu") -> Expr:
    """``phi d/d(d^mu phi) - phi* d/d(d^mu phi*)``; leaves one free index ``index``."""
    _require_p1(p)
    items = []
    for (hb, m2, ks, fs, ms), c in p.terms.items():
        for pos, f in enumerate(fs):
            if not f.derivs:
                continue
            sign = 1 if f.species == PHI else -1
            new_fs = fs[:pos] + (FieldFactor(f.label, f.species, ()),) + fs[pos + 1:]
            items.append((c * sign, hb, m2, ks, new_fs, ms + ((index, f.derivs[0]),)))
    return Expr.from_terms(items)


def charge_conjugate(p: Expr, eta=1) -> Expr:
    """``beta_C``: phi -> eta phi*, phi* -> conj(eta) phi."""
    eta = GaussQ.coerce(eta)
    if eta.norm() != 1:
        raise ValueError("eta_C must have unit modulus")
    items = []
    for (hb, m2, ks, fs, ms), c in p.terms.items():
        factor = GaussQ(1)
        new_fs = []
        for f in fs:
            if f.species == PHI:
                factor = factor * eta
                new_fs.append(FieldFactor(f.label, PHIS, f.derivs))
            else:
                factor = factor * eta.conjugate()
                new_fs.append(FieldFactor(f.label, PHI, f.derivs))
        items.append((c * factor, hb, m2, ks, tuple(new_fs), ms))
    return Expr.from_terms(items)


def conjugation_eigenvalue(p: Expr, eta=1):
    """Return +1 or -1 if ``p`` is a beta_C eigenvector, else None."""
    if p.is_zero():
        return None
    c = charge_conjugate(p, eta)
    if c == p:
        return 1
    if c == -p:
        return -1
    return None


def submonomials(a: Expr):
    """All splits of a monomial into (contracted, spectator, multiplicity).

    The contracted part has coefficient 1; the spectator carries ``a``'s
    coefficient, so ``underline * overline`` has the same fields as ``a``.
    """
    if len(a.terms) != 1:
        raise ValueError("submonomials needs a single monomial")
    (hb, m2, ks, fs, ms), c = next(iter(a.terms.items()))
    if ks or ms:
        raise ValueError("submonomials needs a plain field monomial")
    classes = sorted(Counter(fs).items())
    out = []
    for choice in itertools.product(*(range(n + 1) for _, n in classes)):
        under = tuple(f for (f, _), u in zip(classes, choice) for _ in range(u))
        over = tuple(f for (f, n), u in zip(classes, choice) for _ in range(n - u))
        factor = prod(comb(n, u) for (_, n), u in zip(classes, choice))
        out.append((Expr.from_terms([(1, 0, 0, (), under, ())]),
                    Expr.from_terms([(c, hb, m2, (), over, ())]),
                    factor))
    return out
