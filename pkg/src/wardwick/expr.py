"""Core term algebra shared by field polynomials, kernels and operator expressions.

A term is ``coefficient * hbar^k * (m^2)^j * kernels * metrics * fields`` where

* ``kernels`` is a sorted tuple of :class:`KernelFactor` (symbolic two-point
  distributions, all derivatives moved onto the second label),
* ``metrics`` is a sorted tuple of index pairs standing for ``g^{ab}``,
* ``fields`` is a sorted tuple of :class:`FieldFactor` (basic fields at labels,
  pointwise and therefore commutative).

Lorentz indices are strings.  An index occurring twice in a term is a dummy and
gets renamed canonically (``_0``, ``_1``, ...); an index occurring once is free.
User-facing free indices must not start with an underscore.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from functools import lru_cache
from typing import Iterable, NamedTuple

from .coeff import GaussQ, ScalarCoeff, format_gauss

SPACETIME_DIM = 4

PHI = "phi"
PHIS = "phis"
SPECIES = (PHI, PHIS)

DELTA_PLUS = "DP"
DELTA_F = "DF"
DELTA_COMM = "D"
DIRAC = "delta"
KERNEL_KINDS = (DELTA_PLUS, DELTA_F, DELTA_COMM, DIRAC)
# sign picked up by K(a - b) -> K(b - a); DeltaPlus has no symmetry
_PARITY = {DELTA_F: 1, DIRAC: 1, DELTA_COMM: -1}


class FieldFactor(NamedTuple):
    """A basic field ``d^{derivs} species`` sitting at a spacetime label."""

    label: str
    species: str
    derivs: tuple = ()


class KernelFactor(NamedTuple):
    """``d_second^{derivs} box_second^{boxes} K(first - second)``."""

    kind: str
    first: str
    second: str
    derivs: tuple = ()
    boxes: int = 0


_NUM = re.compile(r"(\d+)")


def label_key(label: str):
    """Natural sort key, so that ``x2 < x10``."""
    return tuple((0, int(t)) if t.isdigit() else (1, t) for t in _NUM.split(label) if t)


def basic_field(label: str, species: str, *derivs: str) -> FieldFactor:
    if species not in SPECIES:
        raise ValueError(f"unknown species {species!r}")
    return FieldFactor(label, species, tuple(sorted(derivs)))


def make_kernel(kind, first, second, d_first=(), d_second=(), boxes=0):
    """Build a kernel with derivatives on either label; returns ``(sign, factor)``.

    Uses ``d_first K(first - second) = -d_second K(first - second)``.
    """
    if kind not in KERNEL_KINDS:
        raise ValueError(f"unknown kernel kind {kind!r}")
    sign = -1 if len(d_first) % 2 else 1
    return sign, KernelFactor(kind, first, second, tuple(sorted(tuple(d_first) + tuple(d_second))), boxes)


# ---------------------------------------------------------------------------
# term canonicalization


def _term_indices(kernels, fields, metrics) -> Counter:
    c = Counter()
    for k in kernels:
        c.update(k.derivs)
    for f in fields:
        c.update(f.derivs)
    for a, b in metrics:
        c[a] += 1
        c[b] += 1
    return c


def _rename(kernels, fields, metrics, mapping):
    ks = tuple(
        KernelFactor(k.kind, k.first, k.second, tuple(sorted(mapping.get(i, i) for i in k.derivs)), k.boxes)
        for k in kernels
    )
    fs = tuple(FieldFactor(f.label, f.species, tuple(sorted(mapping.get(i, i) for i in f.derivs))) for f in fields)
    ms = tuple(tuple(sorted((mapping.get(a, a), mapping.get(b, b)))) for a, b in metrics)
    return ks, fs, ms


def _contract_metrics(kernels, fields, metrics):
    """Eliminate metric factors sharing an index with something else.  Returns (factor, k, f, m)."""
    factor = 1
    metrics = list(metrics)
    changed = True
    while changed:
        changed = False
        for pos, (a, b) in enumerate(metrics):
            rest = metrics[:pos] + metrics[pos + 1:]
            if a == b:
                factor *= SPACETIME_DIM
                metrics = rest
                changed = True
                break
            others = _term_indices(kernels, fields, rest)
            for keep, drop in ((b, a), (a, b)):
                if others.get(drop):
                    kernels, fields, rest_t = _rename(kernels, fields, tuple(rest), {drop: keep})
                    metrics = list(rest_t)
                    changed = True
                    break
            if changed:
                break
    return factor, tuple(kernels), tuple(fields), tuple(metrics)


def _normalize_kernel(k: KernelFactor):
    """Extract boxes and fix orientation.  Returns ``(sign, kernel)`` or ``(0, None)``."""
    derivs = list(k.derivs)
    boxes = k.boxes
    if k.kind != DIRAC:
        cnt = Counter(derivs)
        derivs = []
        for idx, n in sorted(cnt.items()):
            boxes += n // 2
            if n % 2:
                derivs.append(idx)
    derivs = tuple(sorted(derivs))
    first, second = k.first, k.second
    sign = 1
    parity = _PARITY.get(k.kind)
    if parity is not None:
        flip_sign = parity * (-1 if len(derivs) % 2 else 1)
        if first == second:
            if flip_sign == -1:
                return 0, None
        elif label_key(first) > label_key(second):
            first, second = second, first
            sign = flip_sign
    return sign, KernelFactor(k.kind, first, second, derivs, boxes)


def _dummy_names(n, taken):
    out = []
    i = 0
    while len(out) < n:
        name = f"_{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


@lru_cache(maxsize=1 << 18)
def canon_term(hb, m2, kernels, fields, metrics):
    """Canonical form of a term's structural part.

    Returns ``(factor, key)`` with ``factor`` an integer multiplier, or ``(0, None)``.
    """
    factor, kernels, fields, metrics = _contract_metrics(kernels, fields, metrics)
    new_kernels = []
    for k in kernels:
        s, nk = _normalize_kernel(k)
        if not s:
            return 0, None
        factor *= s
        new_kernels.append(nk)
    kernels = tuple(new_kernels)
    counts = _term_indices(kernels, fields, metrics)
    bad = [i for i, n in counts.items() if n > 2]
    if bad:
        raise ValueError(f"index {bad[0]!r} occurs more than twice in one term")
    dummies = sorted(i for i, n in counts.items() if n == 2)
    free = {i for i, n in counts.items() if n == 1}
    if not dummies:
        return factor, (hb, m2, tuple(sorted(kernels)), tuple(sorted(fields)), tuple(sorted(metrics)))
    targets = _dummy_names(len(dummies), free)
    best = None
    for perm in itertools.permutations(targets):
        ks, fs, ms = _rename(kernels, fields, metrics, dict(zip(dummies, perm)))
        cand = (tuple(sorted(ks)), tuple(sorted(fs)), tuple(sorted(ms)))
        if best is None or cand < best:
            best = cand
    return factor, (hb, m2) + best


def _indices_of_key(key):
    _, _, ks, fs, ms = key
    return _term_indices(ks, fs, ms)


def _freshen(key, avoid):
    """Rename the dummies of ``key`` away from the index names in ``avoid``."""
    counts = _indices_of_key(key)
    dummies = [i for i, n in counts.items() if n == 2 and i in avoid]
    if not dummies:
        return key
    taken = set(avoid) | set(counts)
    mapping = {}
    n = 0
    for d in dummies:
        while f"_t{n}" in taken:
            n += 1
        mapping[d] = f"_t{n}"
        taken.add(mapping[d])
    hb, m2, ks, fs, ms = key
    ks, fs, ms = _rename(ks, fs, ms, mapping)
    return (hb, m2, ks, fs, ms)


# ---------------------------------------------------------------------------


class Expr:
    """A finite sum of canonical terms with exact coefficients.

    The same class houses local field polynomials (no kernels), numerical
    distributions (no fields) and general operator expressions.  Values are
    immutable by convention: every operation returns a new object.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    # construction -----------------------------------------------------
    @classmethod
    def from_terms(cls, items: Iterable) -> "Expr":
        """Build from ``(coeff, hb, m2, kernels, fields, metrics)`` tuples, canonicalizing each."""
        acc = {}
        for coeff, hb, m2, kernels, fields, metrics in items:
            c = GaussQ.coerce(coeff)
            if not c:
                continue
            f, key = canon_term(hb, m2, tuple(kernels), tuple(fields), tuple(metrics))
            if not f:
                continue
            _accumulate(acc, key, c * f)
        return cls(acc)

    @classmethod
    def scalar(cls, value, hbar_power=0, mass2_power=0) -> "Expr":
        return cls.from_terms([(value, hbar_power, mass2_power, (), (), ())])

    @classmethod
    def field(cls, label, species, *derivs) -> "Expr":
        return cls.from_terms([(1, 0, 0, (), (basic_field(label, species, *derivs),), ())])

    @classmethod
    def kernel(cls, kind, first, second, d_first=(), d_second=(), boxes=0) -> "Expr":
        s, k = make_kernel(kind, first, second, d_first, d_second, boxes)
        return cls.from_terms([(s, 0, 0, (k,), (), ())])

    @classmethod
    def metric(cls, a, b) -> "Expr":
        return cls.from_terms([(1, 0, 0, (), (), ((a, b),))])

    # inspection -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def items(self):
        """Yield ``(ScalarCoeff, kernels, fields, metrics)`` in canonical order."""
        for key in sorted(self.terms):
            hb, m2, ks, fs, ms = key
            c = self.terms[key]
            yield ScalarCoeff(c.re, c.im, hb, m2), ks, fs, ms

    def labels(self) -> set:
        out = set()
        for _, _, ks, fs, _ in self.terms:
            for k in ks:
                out.update((k.first, k.second))
            for f in fs:
                out.add(f.label)
        return out

    def field_labels(self) -> set:
        return {f.label for key in self.terms for f in key[3]}

    def free_indices(self) -> set:
        """Free indices, required to be the same in every term."""
        sets = {frozenset(i for i, n in _indices_of_key(k).items() if n == 1) for k in self.terms}
        if len(sets) > 1:
            raise ValueError("terms carry different free indices")
        return set(next(iter(sets))) if sets else set()

    def has_fields(self) -> bool:
        return any(key[3] for key in self.terms)

    def has_kernels(self) -> bool:
        return any(key[2] for key in self.terms)

    def monomials(self):
        """Split into single-term expressions."""
        for key in sorted(self.terms):
            yield Expr({key: self.terms[key]})

    def coefficient(self) -> GaussQ:
        if len(self.terms) != 1:
            raise ValueError("coefficient() needs a single-term expression")
        return next(iter(self.terms.values()))

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _as_expr(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _accumulate(acc, k, c)
        return Expr(acc)

    __radd__ = __add__

    def __neg__(self):
        return Expr({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_expr(other))

    def __rsub__(self, other):
        return _as_expr(other) - self

    def scale(self, factor, hbar_power=0, mass2_power=0) -> "Expr":
        f = GaussQ.coerce(factor)
        if not f:
            return Expr()
        return Expr({(hb + hbar_power, m2 + mass2_power, ks, fs, ms): c * f
                     for (hb, m2, ks, fs, ms), c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Expr):
            return self.scale(other)
        acc = {}
        for k1, c1 in self.terms.items():
            used = _indices_of_key(k1)
            for k2, c2 in other.terms.items():
                key, f = multiply_keys(k1, k2, used)
                if f:
                    _accumulate(acc, key, c1 * c2 * f)
        return Expr(acc)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are defined")
        out = Expr.scalar(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Expr):
            try:
                other = _as_expr(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # structural maps --------------------------------------------------
    def map_structure(self, fn) -> "Expr":
        """Apply ``fn(kernels, fields, metrics) -> (factor, kernels, fields, metrics)`` termwise."""
        items = []
        for (hb, m2, ks, fs, ms), c in self.terms.items():
            f, nk, nf, nm = fn(ks, fs, ms)
            items.append((c * f, hb, m2, nk, nf, nm))
        return Expr.from_terms(items)

    def relabel(self, mapping: dict) -> "Expr":
        """Rename spacetime labels; kernel orientation signs are recomputed."""
        def fn(ks, fs, ms):
            nk = tuple(KernelFactor(k.kind, mapping.get(k.first, k.first), mapping.get(k.second, k.second),
                                    k.derivs, k.boxes) for k in ks)
            nf = tuple(FieldFactor(mapping.get(f.label, f.label), f.species, f.derivs) for f in fs)
            return 1, nk, nf, ms
        return self.map_structure(fn)

    def rename_indices(self, mapping: dict) -> "Expr":
        def fn(ks, fs, ms):
            nk, nf, nm = _rename(ks, fs, ms, mapping)
            return 1, nk, nf, nm
        return self.map_structure(fn)

    def at(self, label: str) -> "Expr":
        """Move every field and kernel label to ``label`` (for local polynomials)."""
        labs = self.labels()
        return self.relabel({l: label for l in labs})

    def hbar_part(self, power: int) -> "Expr":
        return Expr({k: c for k, c in self.terms.items() if k[0] == power})

    def field_free_part(self) -> "Expr":
        return Expr({k: c for k, c in self.terms.items() if not k[3]})

    def __repr__(self):
        return f"Expr({format_expr(self)!r})"

    def __str__(self):
        return format_expr(self)


def _accumulate(acc, key, c):
    prev = acc.get(key)
    s = c if prev is None else prev + c
    if s:
        acc[key] = s
    elif prev is not None:
        del acc[key]


def _as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Expr.scalar(x)


def multiply_keys(k1, k2, used=None):
    """Pointwise product of two canonical term keys.  Returns ``(key, factor)``."""
    if used is None:
        used = _indices_of_key(k1)
    k2 = _freshen(k2, used)
    hb = k1[0] + k2[0]
    m2 = k1[1] + k2[1]
    f, key = canon_term(hb, m2, k1[2] + k2[2], k1[3] + k2[3], k1[4] + k2[4])
    return key, f


def fresh_index(expr_or_indices, base="mu") -> str:
    if isinstance(expr_or_indices, Expr):
        taken = set()
        for k in expr_or_indices.terms:
            taken.update(_indices_of_key(k))
    else:
        taken = set(expr_or_indices)
    if base not in taken:
        return base
    n = 1
    while f"{base}{n}" in taken:
        n += 1
    return f"{base}{n}"


def all_indices(e: Expr) -> set:
    out = set()
    for k in e.terms:
        out.update(_indices_of_key(k))
    return out


# ---------------------------------------------------------------------------
# text rendering (the grammar understood by wardwick.parser)

_KERNEL_TEXT = {DELTA_PLUS: "DP", DELTA_F: "DF", DELTA_COMM: "D", DIRAC: "delta"}


def _derivs_text(derivs, label=None):
    if not derivs:
        return ""
    inner = ",".join(derivs)
    return f"d[{inner};{label}] " if label is not None else f"d[{inner}] "


def format_kernel(k: KernelFactor) -> str:
    body = f"{_KERNEL_TEXT[k.kind]}({k.first}-{k.second})"
    box = "".join(f"box[{k.second}] " for _ in range(k.boxes))
    return _derivs_text(k.derivs, k.second) + box + body


def format_field(f: FieldFactor) -> str:
    return _derivs_text(f.derivs) + f"{f.species}({f.label})"


def format_term(coeff: ScalarCoeff, ks, fs, ms) -> str:
    factors = []
    if coeff.hbar_power:
        factors.append("hbar" if coeff.hbar_power == 1 else f"hbar^{coeff.hbar_power}")
    if coeff.mass2_power:
        factors.append("m2" if coeff.mass2_power == 1 else f"m2^{coeff.mass2_power}")
    for a, b in ms:
        factors.append(f"g[{a},{b}]")
    for k, n in _runs(ks):
        t = format_kernel(k)
        factors.append(t if n == 1 else f"({t})^{n}")
    for fld, n in _runs(fs):
        t = format_field(fld)
        factors.append(t if n == 1 else f"({t})^{n}")
    num = coeff.number
    body = " * ".join(factors)
    if not factors:
        return format_gauss(num)
    if num == 1:
        return body
    if num == -1:
        return "-" + body
    return f"{format_gauss(num)} * {body}"


def _runs(seq):
    out = []
    for x in seq:
        if out and out[-1][0] == x:
            out[-1][1] += 1
        else:
            out.append([x, 1])
    return [(x, n) for x, n in out]


def format_expr(e: Expr) -> str:
    if e.is_zero():
        return "0"
    parts = [format_term(*item) for item in e.items()]
    text = parts[0]
    for p in parts[1:]:
        text += " - " + p[1:] if p.startswith("-") else " + " + p
    return text
