"""Checking the U(1) current Ward identity at vacuum-expectation level.

Each check builds d_mu^y t(P_1, ..., P_n, j^mu(y)), rewrites box DF into
contact terms, moves everything onto the delta functions and compares with
the theta / theta_mu contact terms.
"""

from wardwick import check_mwi, current, interaction, phi, phis

cases = {
    "phi^2, phis^2": [phi("x1") ** 2, phis("x2") ** 2],
    "phis phi^2, phi phis^2": [phis("x1") * phi("x1") ** 2, phi("x2") * phis("x2") ** 2],
    "phis phi, j^nu": [phis("x1") * phi("x1"), current("nu", "x2")],
    "L, phis phi^2, phis^2 phi": [interaction("x1"), phis("x2") * phi("x2") ** 2,
                                  phis("x3") ** 2 * phi("x3")],
}

for name, args in cases.items():
    rep = check_mwi(args)
    print(f"== {name}: {rep.verdict.value}")
    for ct in rep.contact_terms:
        print(f"   {ct['kind']:>8} at {ct['label']}: {ct['prefactor']}")
    print(f"   rhs = {rep.rhs}")
    # Coefficients in units of the smallest diagram weight of t(P..., j);
    # for the last case this exposes the factor 5 = 20 / 4.
    for delta, c in rep.normalized_rhs.items():
        print(f"   {delta}: {c} (diagram unit {rep.diagram_unit})")
