"""Symbolic Wick calculus and current Ward identity checks for the free complex scalar field.

The main entry points are re-exported here; see the submodules for details.
"""

from .anomaly import (
    AnomalyVerdict, Case1Report, Classification, TensorBasis, anomaly_scan, case1_reduce,
    classify, invariant_tensor_basis, omega, table1,
)
from .coeff import GaussQ, I, ScalarCoeff
from .diagrams import diagrams_to_dot, diagrams_to_json
from .expr import Expr, FieldFactor, KernelFactor, format_expr
from .fields import (
    basis_b, charge_conjugate, charge_number, conjugation_eigenvalue, current, interaction,
    mass_dimension, monomial, noether_q, phi, phis, submonomials, theta, theta_mu,
)
from .kernels import (
    apply_klein_gordon, canonicalize, delta_support_reduce, differentiate,
    expand_commutator_function, scaling_degree_delta, simplify,
)
from .parser import ParseError, parse, parse_expr, to_text
from .ward import (
    Exclusion, MwiReport, Verdict, build_mwi_lhs, build_mwi_rhs, charge_conservation_check,
    check_mwi, furry_check,
)
from .wick import (
    brute_force_vev, causal_wick_expand, enumerate_full_contractions, feynman_star,
    poisson_bracket, star_commutator, star_product, tproduct_vev, unrenormalized_tproduct, vev,
)

__version__ = "0.1.0"
