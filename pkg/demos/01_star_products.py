"""Star products, commutators and time-ordered products of the free complex scalar.

Run with ``python3 demos/01_star_products.py``.
"""

from wardwick import (
    causal_wick_expand, format_expr, parse_expr, phi, phis, poisson_bracket, star_commutator,
    star_product, unrenormalized_tproduct, vev,
)

# The star product contracts a phi on the left with a phi* on the right (and
# vice versa), each contraction weighted by hbar times the positive-frequency
# two-point function DP.
print("phi(x) * phis(z) =", format_expr(star_product(phi("x"), phis("z"))))

# Commutators reproduce the canonical ones; the DP pair is recombined into the
# commutator function D.
print("[phi(x), phis(y)] =", format_expr(star_commutator(phi("x"), phis("y"))))
print("[phi(x), phi(y)]  =", format_expr(star_commutator(phi("x"), phi("y"))))
print("{phi(x), phis(y)} =", format_expr(poisson_bracket(phi("x"), phis("y"))))

# Replacing DP by the Feynman propagator DF gives the unrenormalized
# time-ordered product at pairwise distinct points.
t = unrenormalized_tproduct([phi("x1") ** 2, phis("x2") ** 2])
print("T(phi^2, phis^2)  =", format_expr(t))
print("its VEV           =", format_expr(vev(t)))

# The causal Wick expansion (VEVs of sub-monomials times spectators) is an
# independent route to the same answer.
print("causal Wick agrees:", causal_wick_expand([phi("x1") ** 2, phis("x2") ** 2]) == t)

# Everything is also reachable from the expression language.
print(format_expr(parse_expr("vev(tproduct(L(x1), (phis*phi^2)(x2), (phis^2*phi)(x3)))")))
