"""Rewrite rules for the symbolic kernels DeltaPlus, DeltaF, Delta and delta.

All distinct point labels are assumed pairwise non-coincident.  A delta
between two labels is therefore only kept when one of them is the label being
eliminated (the current's point in a Ward identity); otherwise it is zero.
"""

from __future__ import annotations

import itertools
from collections import Counter

from .coeff import GaussQ
from .expr import (
    DELTA_COMM, DELTA_F, DELTA_PLUS, DIRAC, Expr, FieldFactor, KernelFactor,
    _indices_of_key, canon_term, label_key, make_kernel,
)

DistExpr = Expr

KIND_NAMES = {
    "DeltaPlus": DELTA_PLUS,
    "DeltaFeynman": DELTA_F,
    "DeltaCommutator": DELTA_COMM,
    "DiracDelta": DIRAC,
}


def canonicalize(e: Expr) -> Expr:
    """Re-run term canonicalization (a no-op on values built through ``Expr``)."""
    return Expr.from_terms((c, hb, m2, ks, fs, ms) for (hb, m2, ks, fs, ms), c in e.terms.items())


def _diff_key(key, label, index):
    """Product rule on one term; yields ``(sign, kernels, fields)``."""
    hb, m2, ks, fs, ms = key
    for pos, k in enumerate(ks):
        if k.first == k.second:
            # d/da of K(a - a) vanishes
            continue
        if k.second == label:
            sign = 1
        elif k.first == label:
            sign = -1
        else:
            continue
        nk = KernelFactor(k.kind, k.first, k.second, tuple(sorted(k.derivs + (index,))), k.boxes)
        yield sign, ks[:pos] + (nk,) + ks[pos + 1:], fs
    for pos, f in enumerate(fs):
        if f.label != label:
            continue
        nf = FieldFactor(f.label, f.species, tuple(sorted(f.derivs + (index,))))
        yield 1, ks, fs[:pos] + (nf,) + fs[pos + 1:]


def differentiate(e: Expr, label: str, index: str) -> Expr:
    """``d^index`` with respect to the point ``label`` (product rule, canonical result)."""
    items = []
    for key, c in e.terms.items():
        hb, m2, _, _, ms = key
        for sign, ks, fs in _diff_key(key, label, index):
            items.append((c * sign, hb, m2, ks, fs, ms))
    return Expr.from_terms(items)


def _fresh_names(n, taken, stem="_k"):
    out, i = [], 0
    while len(out) < n:
        name = f"{stem}{i}"
        if name not in taken:
            out.append(name)
        i += 1
    return out


def apply_klein_gordon(e: Expr) -> Expr:
    """Resolve every box: box DF -> -m2 DF - i delta, box DP -> -m2 DP, box D -> -m2 D."""
    minus_i = GaussQ(0, -1)
    out = {}
    work = list(e.terms.items())
    done = []
    while work:
        key, c = work.pop()
        hb, m2, ks, fs, ms = key
        pos = next((p for p, k in enumerate(ks) if k.boxes), None)
        if pos is None:
            done.append((c, hb, m2, ks, fs, ms))
            continue
        k = ks[pos]
        if k.kind == DIRAC:
            raise ValueError("box on a delta factor is never produced by the pipeline")
        rest = ks[:pos] + ks[pos + 1:]
        lower = KernelFactor(k.kind, k.first, k.second, k.derivs, k.boxes - 1)
        work.append(((hb, m2 + 1, rest + (lower,), fs, ms), -c))
        if k.kind == DELTA_F:
            # remaining boxes on delta become explicit contracted derivative pairs
            taken = set(_indices_of_key(key))
            extra = []
            for name in _fresh_names(k.boxes - 1, taken):
                extra += [name, name]
            dk = KernelFactor(DIRAC, k.first, k.second, tuple(sorted(k.derivs + tuple(extra))), 0)
            work.append(((hb, m2, rest + (dk,), fs, ms), c * minus_i))
    return Expr.from_terms(done)


def _delta_count(ks):
    cnt = Counter()
    for k in ks:
        if k.kind == DIRAC and k.first != k.second:
            cnt[k.first] += 1
            cnt[k.second] += 1
    return cnt


def _choose_label(ks):
    cnt = _delta_count(ks)
    if not cnt:
        return None
    return max(cnt, key=lambda lab: (cnt[lab], label_key(lab)))


def _reduce_term(key, c, eliminate):
    """Apply the delta-support identity once.  Returns a list of (coeff, key-parts) items."""
    hb, m2, ks, fs, ms = key
    if not any(k.kind == DIRAC and k.first != k.second for k in ks):
        return [(c, hb, m2, ks, fs, ms)]
    y = eliminate if eliminate is not None else _choose_label(ks)
    pos = next((p for p, k in enumerate(ks)
                if k.kind == DIRAC and k.first != k.second and y in (k.first, k.second)), None)
    if pos is None:
        # only deltas between external points: zero by non-coincidence
        return []
    dk = ks[pos]
    x = dk.first if dk.second == y else dk.second
    derivs = dk.derivs
    # express derivatives as acting on y
    sign0 = -1 if (dk.first == y and len(derivs) % 2) else 1
    rest = Expr.from_terms([(1, 0, 0, ks[:pos] + ks[pos + 1:], fs, ms)])
    out = []
    n = len(derivs)
    for r in range(n + 1):
        for subset in itertools.combinations(range(n), r):
            g = rest
            for i in subset:
                g = differentiate(g, y, derivs[i])
                if g.is_zero():
                    break
            if g.is_zero():
                continue
            g = g.relabel({y: x})
            remaining = tuple(derivs[i] for i in range(n) if i not in subset)
            s, nk = make_kernel(DIRAC, x, y, (), remaining)
            coeff = c * (sign0 * s * (-1) ** r)
            for (ghb, gm2, gks, gfs, gms), gc in g.terms.items():
                # after substitution a second delta at y would join two external points
                if any(k.kind == DIRAC and k.first != k.second and y not in (k.first, k.second) for k in gks):
                    continue
                out.append((coeff * gc, hb + ghb, m2 + gm2, gks + (nk,), gfs, gms))
    return out


def delta_support_reduce(e: Expr, eliminate: str | None = None) -> Expr:
    """Move all dependence on a delta's eliminated label onto the delta itself.

    Uses ``g(y) d^A delta(y-x) = sum_B (-1)^|B| (d^B g)(x) d^{A-B} delta(y-x)``.
    The eliminated label defaults to the one in the most delta factors (ties go to
    the later label in natural order).  Terms without deltas pass through unchanged.
    """
    items = []
    for key, c in e.terms.items():
        items.extend(_reduce_term(key, c, eliminate))
    return Expr.from_terms(items)


def simplify(e: Expr, eliminate: str | None = None, trace=None, max_rounds: int = 50) -> Expr:
    """Klein-Gordon contact rewriting and delta reduction iterated to a fixpoint."""
    for rnd in range(max_rounds):
        kg = apply_klein_gordon(e)
        if trace is not None and kg != e:
            trace.append(("klein_gordon", rnd, kg))
        red = delta_support_reduce(kg, eliminate)
        if trace is not None and red != kg:
            trace.append(("delta_support", rnd, red))
        if red == e:
            return red
        e = red
    raise RuntimeError("rewriting did not reach a fixpoint")


def scaling_degree_delta(order, k: int) -> int:
    """Scaling degree of ``d^a delta`` on R^k: ``k + |a|``."""
    if k < 1:
        raise ValueError("k must be positive")
    a = order if isinstance(order, int) else len(order)
    return k + a


def kernel(kind: str, first: str, second: str, d_first=(), d_second=()) -> Expr:
    """Convenience constructor accepting long kind names (``DeltaFeynman``...)."""
    return Expr.kernel(KIND_NAMES.get(kind, kind), first, second, d_first, d_second)


def expand_commutator_function(e: Expr) -> Expr:
    """Rewrite every ``Delta`` factor as ``-i (DP(x) - DP(-x))``; useful for comparisons."""
    result = Expr()
    for key, c in e.terms.items():
        hb, m2, ks, fs, ms = key
        term = Expr.from_terms([(c, hb, m2, tuple(k for k in ks if k.kind != DELTA_COMM), fs, ms)])
        for k in ks:
            if k.kind != DELTA_COMM:
                continue
            fwd = Expr.kernel(DELTA_PLUS, k.first, k.second, (), k.derivs)
            bwd = Expr.kernel(DELTA_PLUS, k.second, k.first, k.derivs, ())
            # restore boxes
            if k.boxes:
                fwd = _with_boxes(fwd, k.boxes)
                bwd = _with_boxes(bwd, k.boxes)
            term = term * ((fwd - bwd) * GaussQ(0, -1))
        result = result + term
    return result


def _with_boxes(e: Expr, n):
    return Expr.from_terms((c, hb, m2, tuple(KernelFactor(k.kind, k.first, k.second, k.derivs, k.boxes + n) for k in ks), fs, ms)
                           for (hb, m2, ks, fs, ms), c in e.terms.items())
