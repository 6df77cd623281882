"""Wick contractions: star products, unrenormalized T-products, VEVs and the
causal Wick expansion.

Contractions are counted at the level of *leg classes* (identical factors at
the same point).  A contraction pattern is a matrix ``n_e`` over pairs of
classes; the number of leg-level pairings realizing it is

    prod_c k_c! / (k_c - s_c)!  /  prod_e n_e!

where ``k_c`` is the size of class ``c`` and ``s_c`` the number of its legs
that are used.  :func:`brute_force_vev` enumerates legs directly and serves as
the oracle for this formula.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .coeff import GaussQ, I
from .expr import (
    DELTA_COMM, DELTA_F, DELTA_PLUS, PHI, Expr, KernelFactor,
    _indices_of_key, _freshen, _rename, canon_term,
)
from .fields import submonomials

OperatorExpr = Expr


# ---------------------------------------------------------------------------
# contraction patterns


def _edges(left, right, allow_same_label=True):
    """Admissible (i, j) class pairs: opposite species."""
    out = []
    for i, (f, _) in enumerate(left):
        for j, (g, _) in enumerate(right):
            if f.species == g.species:
                continue
            if not allow_same_label and f.label == g.label:
                continue
            out.append((i, j))
    return out


def _transport(edges, row_cap, col_cap, full=False):
    """All assignments ``n`` on ``edges`` with row/column sums within caps.

    With ``full`` the sums must equal the caps exactly.
    """
    rows = list(row_cap)
    cols = list(col_cap)
    n = [0] * len(edges)

    def rec(pos):
        if pos == len(edges):
            if full and (any(rows) or any(cols)):
                return
            yield tuple(n)
            return
        i, j = edges[pos]
        hi = min(rows[i], cols[j])
        lo = 0
        if full:
            # the last edge touching row i / column j must close it
            if all(e[0] != i for e in edges[pos + 1:]):
                lo = max(lo, rows[i])
            if all(e[1] != j for e in edges[pos + 1:]):
                lo = max(lo, cols[j])
        for v in range(lo, hi + 1):
            n[pos] = v
            rows[i] -= v
            cols[j] -= v
            yield from rec(pos + 1)
            rows[i] += v
            cols[j] += v
        n[pos] = 0

    yield from rec(0)


def _classes(fields):
    return sorted(Counter(fields).items())


def _contract_keys(k1, k2, kind):
    """Star product of two canonical keys.  Yields ``(coeff, hb, m2, ks, fs, ms)``."""
    k2 = _freshen(k2, _indices_of_key(k1))
    hb1, m21, ks1, fs1, ms1 = k1
    hb2, m22, ks2, fs2, ms2 = k2
    left, right = _classes(fs1), _classes(fs2)
    edges = _edges(left, right)
    for n in _transport(edges, [c for _, c in left], [c for _, c in right]):
        used_l = [0] * len(left)
        used_r = [0] * len(right)
        kernels = []
        sign = 1
        for (i, j), v in zip(edges, n):
            if not v:
                continue
            used_l[i] += v
            used_r[j] += v
            f, g = left[i][0], right[j][0]
            # F-leg derivatives act on the first argument, G-leg ones on the second
            if len(f.derivs) % 2 and v % 2:
                sign = -sign
            kf = KernelFactor(kind, f.label, g.label, tuple(sorted(f.derivs + g.derivs)), 0)
            kernels += [kf] * v
        mult = 1
        for (_, k), u in zip(left, used_l):
            mult *= factorial(k) // factorial(k - u)
        for (_, k), u in zip(right, used_r):
            mult *= factorial(k) // factorial(k - u)
        for v in n:
            mult //= factorial(v)
        mult *= sign
        rest = tuple(f for (f, k), u in zip(left, used_l) for _ in range(k - u))
        rest += tuple(g for (g, k), u in zip(right, used_r) for _ in range(k - u))
        yield (mult, hb1 + hb2 + sum(n), m21 + m22, ks1 + ks2 + tuple(kernels), rest, ms1 + ms2)


def star_product(F: Expr, G: Expr, kind: str = DELTA_PLUS) -> Expr:
    """Complex star product: all partial phi/phi* cross-contractions, hbar per propagator.

    ``kind`` selects the propagator (``DP`` for the star product, ``DF`` for the
    Feynman star product).
    """
    items = []
    for k1, c1 in F.terms.items():
        for k2, c2 in G.terms.items():
            c = c1 * c2
            for mult, hb, m2, ks, fs, ms in _contract_keys(k1, k2, kind):
                items.append((c * mult, hb, m2, ks, fs, ms))
    return Expr.from_terms(items)


def feynman_star(F: Expr, G: Expr) -> Expr:
    return star_product(F, G, DELTA_F)


def rewrite_commutator_function(e: Expr) -> Expr:
    """Combine ``DP(a-b)`` and ``DP(b-a)`` term pairs into ``i Delta(a-b)``."""
    terms = dict(e.terms)
    changed = True
    while changed:
        changed = False
        for key in sorted(terms):
            if key not in terms:
                continue
            c = terms[key]
            hb, m2, ks, fs, ms = key
            for pos, k in enumerate(ks):
                if k.kind != DELTA_PLUS or k.first == k.second:
                    continue
                partner_k = KernelFactor(DELTA_PLUS, k.second, k.first, k.derivs, k.boxes)
                f, pkey = canon_term(hb, m2, ks[:pos] + (partner_k,) + ks[pos + 1:], fs, ms)
                if not f or pkey == key or pkey not in terms:
                    continue
                want = -c * f * (-1 if len(k.derivs) % 2 else 1)
                if terms[pkey] != want:
                    continue
                del terms[key]
                del terms[pkey]
                dk = KernelFactor(DELTA_COMM, k.first, k.second, k.derivs, k.boxes)
                g, nkey = canon_term(hb, m2, ks[:pos] + (dk,) + ks[pos + 1:], fs, ms)
                if g:
                    val = terms.get(nkey, GaussQ(0)) + c * I * g
                    if val:
                        terms[nkey] = val
                    else:
                        terms.pop(nkey, None)
                changed = True
                break
    return Expr(terms)


def star_commutator(F: Expr, G: Expr, rewrite: bool = True) -> Expr:
    """``F * G - G * F``; with ``rewrite`` the DP pairs become ``i Delta``."""
    out = star_product(F, G) - star_product(G, F)
    return rewrite_commutator_function(out) if rewrite else out


def poisson_bracket(F: Expr, G: Expr) -> Expr:
    """Single phi/phi* cross-contractions with kernel ``Delta(x_F - x_G)``."""
    items = []
    for k1, c1 in F.terms.items():
        for k2, c2 in G.terms.items():
            k2f = _freshen(k2, _indices_of_key(k1))
            hb1, m21, ks1, fs1, ms1 = k1
            hb2, m22, ks2, fs2, ms2 = k2f
            left, right = _classes(fs1), _classes(fs2)
            for i, j in _edges(left, right):
                (f, kf), (g, kg) = left[i], right[j]
                sign = -1 if len(f.derivs) % 2 else 1
                kern = KernelFactor(DELTA_COMM, f.label, g.label, tuple(sorted(f.derivs + g.derivs)), 0)
                rest = list(fs1)
                rest.remove(f)
                rest2 = list(fs2)
                rest2.remove(g)
                items.append((c1 * c2 * (sign * kf * kg), hb1 + hb2, m21 + m22,
                              ks1 + ks2 + (kern,), tuple(rest) + tuple(rest2), ms1 + ms2))
    return Expr.from_terms(items)


# ---------------------------------------------------------------------------
# T-products


def _arg_labels(args):
    sets = [a.field_labels() | {l for key in a.terms for k in key[2] for l in (k.first, k.second)} for a in args]
    seen = set()
    for s in sets:
        if s & seen:
            raise ValueError(f"repeated point label(s) {sorted(s & seen)}: T-products need pairwise distinct points")
        seen |= s
    return sets


def isolate_dummies(e: Expr, tag: str) -> Expr:
    """Rename the dummies of every term to ``_<tag>_<n>`` so arguments cannot clash."""
    items = []
    for (hb, m2, ks, fs, ms), c in e.terms.items():
        counts = _indices_of_key((hb, m2, ks, fs, ms))
        dummies = sorted(i for i, n in counts.items() if n == 2)
        mapping = {d: f"_{tag}_{n}" for n, d in enumerate(dummies)}
        nk, nf, nm = _rename(ks, fs, ms, mapping)
        items.append((c, hb, m2, nk, nf, nm))
    # keep the renamed (non-canonical) dummies: build the dict directly
    out = {}
    for c, hb, m2, ks, fs, ms in items:
        key = (hb, m2, tuple(sorted(ks)), tuple(sorted(fs)), tuple(sorted(ms)))
        out[key] = out.get(key, GaussQ(0)) + c
    return Expr({k: v for k, v in out.items() if v})


def unrenormalized_tproduct(args) -> Expr:
    """Left-associated Feynman star product of arguments at distinct points."""
    args = list(args)
    _arg_labels(args)
    if not args:
        return Expr.scalar(1)
    out = args[0]
    for a in args[1:]:
        out = star_product(out, a, DELTA_F)
    return out


def vev(e: Expr) -> Expr:
    """Vacuum expectation value: the field-free part."""
    return e.field_free_part()


@dataclass(frozen=True)
class ContractionScheme:
    """A full contraction pattern between leg classes.

    ``edges`` holds ``((arg_i, field_i), (arg_j, field_j), count)`` with ``arg_i < arg_j``.
    """

    edges: tuple
    multiplicity: int


@dataclass(frozen=True)
class Diagram:
    scheme: ContractionScheme
    monomials: tuple  # the monomial chosen from each argument
    term: Expr


def _full_contractions_of_keys(keys, kind=DELTA_F):
    """Full contraction diagrams for single-term arguments given as canonical keys."""
    classes = []
    for a, key in enumerate(keys):
        for f, k in _classes(key[3]):
            classes.append((a, f, k))
    phis_ = [c for c in classes if c[1].species == PHI]
    stars = [c for c in classes if c[1].species != PHI]
    if sum(c[2] for c in phis_) != sum(c[2] for c in stars):
        return []
    edges = [(i, j) for i, p in enumerate(phis_) for j, s in enumerate(stars) if p[0] != s[0]]
    base_hb = sum(k[0] for k in keys)
    base_m2 = sum(k[1] for k in keys)
    base_ks = tuple(itertools.chain.from_iterable(k[2] for k in keys))
    base_ms = tuple(itertools.chain.from_iterable(k[4] for k in keys))
    out = []
    for n in _transport(edges, [c[2] for c in phis_], [c[2] for c in stars], full=True):
        mult = prod(factorial(c[2]) for c in classes)
        sign = 1
        kernels = []
        scheme = []
        for (i, j), v in zip(edges, n):
            if not v:
                continue
            mult //= factorial(v)
            a, b = phis_[i], stars[j]
            lo, hi = (a, b) if a[0] < b[0] else (b, a)
            if len(lo[1].derivs) % 2 and v % 2:
                sign = -sign
            kf = KernelFactor(kind, lo[1].label, hi[1].label, tuple(sorted(lo[1].derivs + hi[1].derivs)), 0)
            kernels += [kf] * v
            scheme.append(((lo[0], lo[1]), (hi[0], hi[1]), v))
        out.append((tuple(sorted(scheme)), mult, sign,
                    (base_hb + sum(n), base_m2, base_ks + tuple(kernels), (), base_ms)))
    return out


def _isolated_args(args):
    return [isolate_dummies(a, f"a{n}") for n, a in enumerate(args)]


def enumerate_full_contractions(args, kind=DELTA_F):
    """All full phi/phi* cross-matchings of the arguments, grouped into diagrams.

    Multi-term arguments are expanded multilinearly.  The diagram terms sum to
    ``vev(unrenormalized_tproduct(args))``.
    """
    args = list(args)
    _arg_labels(args)
    args = _isolated_args(args)
    out = []
    for choice in itertools.product(*(sorted(a.terms.items()) for a in args)):
        keys = tuple(k for k, _ in choice)
        coeff = GaussQ(1)
        for _, c in choice:
            coeff = coeff * c
        for scheme, mult, sign, (hb, m2, ks, fs, ms) in _full_contractions_of_keys(keys, kind):
            term = Expr.from_terms([(coeff * (mult * sign), hb, m2, ks, fs, ms)])
            out.append(Diagram(ContractionScheme(scheme, mult), keys, term))
    return out


def tproduct_vev(args, kind=DELTA_F) -> Expr:
    """``vev(T(args))`` directly from the full-contraction enumeration."""
    out = Expr()
    for d in enumerate_full_contractions(args, kind):
        out = out + d.term
    return out


def brute_force_vev(args, kind=DELTA_F) -> Expr:
    """Leg-level oracle: every bijection of phi legs onto phi* legs, no grouping."""
    args = _isolated_args(list(args))
    total = Expr()
    for choice in itertools.product(*(sorted(a.terms.items()) for a in args)):
        coeff = GaussQ(1)
        for _, c in choice:
            coeff = coeff * c
        keys = [k for k, _ in choice]
        legs_phi = [(a, f) for a, k in enumerate(keys) for f in k[3] if f.species == PHI]
        legs_star = [(a, f) for a, k in enumerate(keys) for f in k[3] if f.species != PHI]
        if len(legs_phi) != len(legs_star):
            continue
        hb = sum(k[0] for k in keys) + len(legs_phi)
        m2 = sum(k[1] for k in keys)
        base_ks = tuple(itertools.chain.from_iterable(k[2] for k in keys))
        ms = tuple(itertools.chain.from_iterable(k[4] for k in keys))
        items = []
        for perm in itertools.permutations(legs_star):
            if any(p[0] == s[0] for p, s in zip(legs_phi, perm)):
                continue
            sign = 1
            ks = []
            for p, s in zip(legs_phi, perm):
                lo, hi = (p, s) if p[0] < s[0] else (s, p)
                if len(lo[1].derivs) % 2:
                    sign = -sign
                ks.append(KernelFactor(kind, lo[1].label, hi[1].label, tuple(sorted(lo[1].derivs + hi[1].derivs)), 0))
            items.append((coeff * sign, hb, m2, base_ks + tuple(ks), (), ms))
        total = total + Expr.from_terms(items)
    return total


def causal_wick_expand(args, t_oracle=None) -> Expr:
    """Sum over submonomial splits of ``t(underlines) * overlines`` with multiplicities.

    ``t_oracle`` maps a tuple of contracted monomials to their VEV; the default
    is the full-contraction enumeration.
    """
    args = list(args)
    _arg_labels(args)
    args = _isolated_args(args)
    oracle = t_oracle or _cached_vev
    out = Expr()
    for choice in itertools.product(*(list(a.monomials()) for a in args)):
        splits = [submonomials(m) for m in choice]
        for combo in itertools.product(*splits):
            factor = prod(s[2] for s in combo)
            t = oracle(tuple(s[0] for s in combo))
            if t.is_zero():
                continue
            over = Expr.scalar(factor)
            for s in combo:
                over = over * s[1]
            out = out + t * over
    return out


@lru_cache(maxsize=1 << 14)
def _cached_vev_keys(keys):
    return tproduct_vev([Expr({k: GaussQ(1)}) for k in keys])


def _cached_vev(unders):
    keys = []
    scale = GaussQ(1)
    for u in unders:
        (k, c), = u.terms.items()
        keys.append(k)
        scale = scale * c
    return _cached_vev_keys(tuple(keys)) * scale
