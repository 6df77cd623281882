"""Current Ward identity at VEV level and the exclusion tests."""

import json

import pytest

from wardwick.coeff import GaussQ, I
from wardwick.expr import Expr
from wardwick.fields import current, interaction, phi, phis
from wardwick.kernels import differentiate
from wardwick.ward import (
    Exclusion, Verdict, build_mwi_lhs, build_mwi_rhs, charge_conservation_check, charge_cross_check,
    check_mwi, furry_check, furry_cross_check, total_charge,
)

HB = Expr.scalar(1, hbar_power=1)


def delta(x):
    return Expr.kernel("delta", x, "y")


def test_quadratic_pair():
    P = [phi("x1") ** 2, phis("x2") ** 2]
    t = HB * HB * Expr.kernel("DF", "x1", "x2") ** 2 * Expr.scalar(2)
    want = (HB * (delta("x1") - delta("x2")) * t).scale(2)
    assert build_mwi_rhs(P) == want
    assert build_mwi_lhs(P) == want
    rep = check_mwi(P)
    assert rep.verdict is Verdict.VERIFIED and rep.residual.is_zero()
    assert [c["prefactor"] for c in rep.contact_terms] == ["2*hbar * delta(x1-y)", "-2*hbar * delta(x2-y)"]


def test_cubic_pair_has_unit_theta_factor():
    P = [phis("x1") * phi("x1") ** 2, phi("x2") * phis("x2") ** 2]
    rep = check_mwi(P)
    assert rep.verified
    assert [c["prefactor"] for c in rep.contact_terms] == ["hbar * delta(x1-y)", "-hbar * delta(x2-y)"]
    assert rep.normalized_rhs == {"delta(x1-y)": GaussQ(1), "delta(x2-y)": GaussQ(-1)}


def test_density_and_current():
    P = [phis("x1") * phi("x1"), current("nu", "x2")]
    lhs = build_mwi_lhs(P)
    assert lhs.free_indices() == {"nu"}
    t = HB * HB * Expr.kernel("DF", "x1", "x2") ** 2
    want = (HB * differentiate(delta("x2"), "y", "nu") * t).scale(2 * I)
    assert build_mwi_rhs(P) == want
    rep = check_mwi(P)
    assert rep.verified and rep.normalized_rhs == {"delta(x2-y)": I}


def test_three_point_with_interaction():
    P = [interaction("x1"), phis("x2") * phi("x2") ** 2, phis("x3") ** 2 * phi("x3")]
    rep = check_mwi(P)
    assert rep.verified
    assert rep.diagram_unit == 4
    assert rep.normalized_rhs == {"delta(x2-y)": GaussQ(5), "delta(x3-y)": GaussQ(-5)}


def test_single_density_and_single_field():
    assert check_mwi([phis("x1") * phi("x1")]).verified
    assert build_mwi_lhs([phi("x1")]).is_zero()


def test_all_interaction_rhs_vanishes():
    assert build_mwi_rhs([interaction("x1"), interaction("x2")]).is_zero()
    assert check_mwi([interaction("x1"), interaction("x2")]).verified


def test_explicit_labels_and_index():
    rep = check_mwi([phi("x") ** 2, phis("x") ** 2], labels=["a", "b"], y="z", index="rho")
    assert rep.verified and rep.labels == ["a", "b"] and rep.index == "rho" and rep.y == "z"


def test_argument_errors():
    with pytest.raises(ValueError):
        check_mwi([phi("x1", "mu", "nu") * phis("x1")])
    with pytest.raises(ValueError):
        check_mwi([phi("x1"), phis("x1")])
    with pytest.raises(ValueError):
        check_mwi([phi("x") ** 2, phis("x") ** 2], labels=["a"])


def test_report_serialization():
    rep = check_mwi([phi("x1") ** 2, phis("x2") ** 2], with_trace=True)
    d = json.loads(rep.to_json())
    assert d["verdict"] == "Verified" and d["residual"] == "0"
    assert "non-coincident" in d["assumption"]
    assert rep.trace
    assert rep.to_text().startswith("# ")


@pytest.mark.parametrize("args, verdict", [
    ([current("mu", "x1"), interaction("x2"), interaction("x3")], Exclusion.FORCED_ZERO),
    ([current("mu", "x1"), current("nu", "x2"), interaction("x3")], Exclusion.NOT_APPLICABLE),
    ([current("mu", "x1"), current("nu", "x2"), current("rho", "x3")], Exclusion.FORCED_ZERO),
])
def test_furry(args, verdict):
    assert furry_check(args) is verdict
    if verdict is Exclusion.FORCED_ZERO:
        assert furry_cross_check(args)


def test_furry_rejects_non_eigenvectors():
    with pytest.raises(ValueError):
        furry_check([phi("x1"), phis("x2")])


def test_charge_conservation():
    args = [phi("x1") ** 2, phis("x2")]
    assert total_charge(args) == 1
    assert charge_conservation_check(args) is Exclusion.FORCED_ZERO
    assert charge_cross_check(args)
    assert charge_conservation_check([phi("x1"), phis("x2")]) is Exclusion.NOT_APPLICABLE
