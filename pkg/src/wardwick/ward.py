"""Ward identity for the U(1) current at vacuum-expectation level.

For arguments ``P_1(x_1), ..., P_n(x_n)`` and the current at ``y``::

    d_mu^y t(P_1, ..., P_n, j^mu)
        = hbar sum_l delta(y - x_l) t(..., theta P_l, ...)
        - hbar d^mu_y sum_l delta(y - x_l) t(..., theta_mu P_l, ...)

Both sides are brought to the normal form ``sum c(x) d^a delta(x_l - y)`` by
Klein-Gordon contact rewriting and delta reduction, and compared exactly.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from math import gcd

from .coeff import GaussQ
from .expr import DIRAC, Expr, all_indices, fresh_index
from .fields import (
    charge_conjugate, charge_numbers, conjugation_eigenvalue, current, is_p1,
    theta, theta_mu,
)
from .kernels import differentiate, simplify
from .wick import enumerate_full_contractions, tproduct_vev

NON_COINCIDENCE = "all distinct point labels are assumed pairwise non-coincident"


class Verdict(str, enum.Enum):
    VERIFIED = "Verified"
    ANOMALY_CANDIDATE = "AnomalyCandidate"


class Exclusion(str, enum.Enum):
    FORCED_ZERO = "ForcedZero"
    NOT_APPLICABLE = "NotApplicable"


def _place(P, labels):
    P = list(P)
    if labels is None:
        labels = []
        for p in P:
            labs = p.field_labels()
            if len(labs) != 1:
                raise ValueError("each argument needs exactly one point label (or pass labels=)")
            labels.append(next(iter(labs)))
    labels = list(labels)
    if len(labels) != len(P):
        raise ValueError("one label per argument is required")
    if len(set(labels)) != len(labels):
        raise ValueError("labels must be pairwise distinct")
    placed = [p.at(l) if p.field_labels() else p for p, l in zip(P, labels)]
    for p in placed:
        if not is_p1(p):
            raise ValueError("Ward identity arguments must have at most first derivatives")
    return placed, labels


def _current_index(P, index=None):
    if index is not None:
        return index
    used = set()
    for p in P:
        used |= all_indices(p)
    return fresh_index(used, "mu")


def build_mwi_lhs(P, labels=None, y="y", index=None, trace=None) -> Expr:
    """``d_mu^y t(P_1, ..., P_n, j^mu(y))`` in normal form."""
    P, labels = _place(P, labels)
    mu = _current_index(P, index)
    t = tproduct_vev(P + [current(mu, y)])
    return simplify(differentiate(t, y, mu), eliminate=y, trace=trace)


def _theta_terms(P, labels, y, mu):
    """The undifferentiated contact pieces of the right-hand side, per label."""
    out = []
    for l, (p, x) in enumerate(zip(P, labels)):
        tp = theta(p)
        tm = theta_mu(p, mu)
        delta = Expr.kernel(DIRAC, x, y)
        first = Expr()
        if not tp.is_zero():
            first = delta * tproduct_vev(P[:l] + [tp] + P[l + 1:])
        second = Expr()
        if not tm.is_zero():
            second = delta * tproduct_vev(P[:l] + [tm] + P[l + 1:])
        out.append((x, tp, tm, first, second))
    return out


def build_mwi_rhs(P, labels=None, y="y", index=None, trace=None) -> Expr:
    """Contact terms built with theta and theta_mu, in normal form."""
    P, labels = _place(P, labels)
    mu = _current_index(P, index)
    total = Expr()
    for _, _, _, first, second in _theta_terms(P, labels, y, mu):
        total = total + first.scale(1, hbar_power=1)
        if not second.is_zero():
            total = total - differentiate(second, y, mu).scale(1, hbar_power=1)
    return simplify(total, eliminate=y, trace=trace)


@dataclass
class MwiReport:
    args: list
    labels: list
    y: str
    index: str
    lhs: Expr
    rhs: Expr
    residual: Expr
    verdict: Verdict
    contact_terms: list = field(default_factory=list)
    diagram_unit: int = 1
    normalized_rhs: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return self.verdict is Verdict.VERIFIED

    def to_dict(self) -> dict:
        return {
            "schema": "wardwick.mwi-report/1",
            "assumption": NON_COINCIDENCE,
            "args": [str(a) for a in self.args],
            "labels": list(self.labels),
            "current": {"label": self.y, "index": self.index},
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "residual": str(self.residual),
            "verdict": self.verdict.value,
            "contact_terms": self.contact_terms,
            "diagram_unit": self.diagram_unit,
            "normalized_rhs": {k: str(v) for k, v in self.normalized_rhs.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"# {NON_COINCIDENCE}",
                 f"args: {', '.join(f'{a} @ {l}' for a, l in zip(self.args, self.labels))}",
                 f"current: j[{self.index}]({self.y})"]
        for ct in self.contact_terms:
            lines.append(f"contact {ct['kind']} at {ct['label']}: {ct['prefactor']}")
        lines += [f"diagram unit: {self.diagram_unit}"]
        for k, v in self.normalized_rhs.items():
            lines.append(f"normalized RHS coefficient on {k}: {v}")
        lines += [f"lhs: {self.lhs}", f"rhs: {self.rhs}", f"residual: {self.residual}",
                  f"verdict: {self.verdict.value}"]
        return "\n".join(lines)


def _integer_content(e: Expr) -> int:
    g = 0
    for c in e.terms.values():
        for part in (c.re, c.im):
            if part:
                if part.denominator != 1:
                    return 1
                g = gcd(g, abs(part.numerator))
    return g or 1


def _prefactor_text(p, tp, tm, x, y, mu):
    out = []
    if not tp.is_zero():
        ratio = _ratio(tp, p)
        if ratio is None:
            txt = f"hbar*[{tp}]"
        else:
            txt = {"1": "hbar", "-1": "-hbar"}.get(str(ratio), f"{ratio}*hbar")
        out.append({"label": x, "kind": "theta", "prefactor": f"{txt} * delta({x}-{y})"})
    if not tm.is_zero():
        out.append({"label": x, "kind": "theta_mu",
                    "prefactor": f"-hbar * d[{mu};{y}] delta({x}-{y}) * [{tm}]"})
    return out


def _ratio(a: Expr, b: Expr):
    """``a / b`` if ``a`` is a scalar multiple of ``b``."""
    if b.is_zero() or set(a.terms) != set(b.terms):
        return None
    key = next(iter(b.terms))
    r = a.terms[key] / b.terms[key]
    if a == b.scale(r):
        return r
    return None


def check_mwi(P, labels=None, y="y", index=None, with_trace=False) -> MwiReport:
    """Build both sides, canonicalize the difference and report."""
    P, labels = _place(P, labels)
    mu = _current_index(P, index)
    trace = [] if with_trace else None
    lhs = build_mwi_lhs(P, labels, y, mu, trace)
    rhs = build_mwi_rhs(P, labels, y, mu, trace)
    residual = simplify(lhs - rhs, eliminate=y)
    verdict = Verdict.VERIFIED if residual.is_zero() else Verdict.ANOMALY_CANDIDATE
    contacts = []
    normalized = {}
    for x, tp, tm, first, second in _theta_terms(P, labels, y, mu):
        contacts += _prefactor_text(P[labels.index(x)], tp, tm, x, y, mu)
    # diagram unit: integer content of t(P_1, ..., P_n, j^mu)
    unit = _integer_content(tproduct_vev(P + [current(mu, y)]))
    for x in labels:
        part = Expr({k: c for k, c in rhs.terms.items()
                     if any(kf.kind == DIRAC and x in (kf.first, kf.second) for kf in k[2])})
        if not part.is_zero():
            normalized[f"delta({x}-{y})"] = _normalized_coefficient(part, unit)
    return MwiReport(P, labels, y, mu, lhs, rhs, residual, verdict, contacts, unit, normalized,
                     trace or [])


def _normalized_coefficient(part: Expr, unit: int):
    """The common coefficient of a contact term divided by the diagram unit."""
    coeffs = {c for c in part.terms.values()}
    if len(coeffs) == 1:
        return coeffs.pop() / unit
    return GaussQ(_integer_content(part)) / unit


# ---------------------------------------------------------------------------
# exclusion tests


def furry_check(args, eta=1) -> Exclusion:
    """Odd number of charge-conjugation-odd arguments forces the VEV to vanish."""
    odd = 0
    for a in args:
        ev = conjugation_eigenvalue(a, eta)
        if ev is None:
            raise ValueError(f"{a} is not a charge-conjugation eigenvector")
        odd += ev == -1
    return Exclusion.FORCED_ZERO if odd % 2 else Exclusion.NOT_APPLICABLE


def total_charge(args) -> int:
    total = 0
    for a in args:
        qs = charge_numbers(a)
        if len(qs) > 1:
            raise ValueError(f"{a} mixes charge numbers")
        total += qs.pop() if qs else 0
    return total


def charge_conservation_check(args) -> Exclusion:
    """A nonzero total charge number forces every full contraction to be absent."""
    return Exclusion.FORCED_ZERO if total_charge(args) else Exclusion.NOT_APPLICABLE


def furry_cross_check(args, eta=1) -> bool:
    """The enumerated VEV of a Furry-excluded tuple sums to zero."""
    return tproduct_vev(args).is_zero()


def charge_cross_check(args) -> bool:
    return not enumerate_full_contractions(args)
