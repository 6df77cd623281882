"""Parser, printer and evaluator for the expression language."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import polynomials
from wardwick.coeff import I
from wardwick.expr import Expr, format_expr
from wardwick.fields import charge_conjugate, current, interaction, phi, phis, theta
from wardwick.parser import (
    At, Atom, BinOp, Box, Call, Deriv, Kernel, Metric, Neg, Num, ParseError, Pow, Sym, parse,
    parse_expr, to_text,
)
from wardwick.wick import star_commutator, star_product, unrenormalized_tproduct, vev

LABELS = st.sampled_from(["x", "y", "z", "x1", "x2"])
INDICES = st.sampled_from(["mu", "nu", "rho", "a"])


def _leaves():
    return st.one_of(
        st.integers(0, 50).map(Num),
        st.sampled_from(["i", "hbar", "m2"]).map(Sym),
        st.sampled_from(["phi", "phis", "L", "Q"]).map(Atom),
        INDICES.map(lambda i: Atom("j", i)),
        st.builds(Kernel, st.sampled_from(["DP", "DF", "D", "delta"]), LABELS, LABELS),
        st.builds(Metric, INDICES, INDICES),
    )


def _extend(children):
    return st.one_of(
        st.builds(Neg, children),
        st.builds(Deriv, st.lists(INDICES, min_size=1, max_size=2).map(tuple),
                  st.one_of(st.none(), LABELS), children),
        st.builds(Box, LABELS, children),
        st.builds(At, children, LABELS),
        st.builds(Pow, children, st.integers(0, 4)),
        st.builds(BinOp, st.sampled_from("+-*/"), children, children),
        st.builds(Call, st.sampled_from(["star", "fstar", "comm", "poisson"]),
                  st.tuples(children, children)),
        st.builds(Call, st.sampled_from(["vev", "theta", "beta"]), st.tuples(children)),
        st.builds(Call, st.just("thetamu"), st.tuples(children), INDICES),
        st.builds(Call, st.just("tproduct"), st.lists(children, min_size=1, max_size=3).map(tuple)),
    )


ASTS = st.recursive(_leaves(), _extend, max_leaves=12)


@settings(max_examples=1200, deadline=None)
@given(ASTS)
def test_print_parse_round_trip(ast):
    assert parse(to_text(ast)) == ast


@settings(max_examples=200, deadline=None)
@given(polynomials("x"), polynomials("z"))
def test_expression_output_parses_back(f, g):
    for e in (f, star_product(f, g), unrenormalized_tproduct([f, g]) if f.field_labels() and g.field_labels() else f):
        assert parse_expr(format_expr(e)) == e


def test_precedence():
    assert parse("1 + 2 * 3") == BinOp("+", Num(1), BinOp("*", Num(2), Num(3)))
    assert parse("1 - 2 - 3") == BinOp("-", BinOp("-", Num(1), Num(2)), Num(3))
    assert parse("-phi^2") == Neg(Pow(Atom("phi"), 2))
    assert parse("d[mu] phi(x) * phis(x)") == BinOp("*", Deriv(("mu",), None, At(Atom("phi"), "x")),
                                                     At(Atom("phis"), "x"))


def test_evaluation_matches_constructors():
    assert parse_expr("phi^2(x1)") == phi("x1") ** 2
    assert parse_expr("(phis*phi^2)(x)") == phis("x") * phi("x") ** 2
    assert parse_expr("j[mu](y)") == current("mu", "y")
    assert parse_expr("L(x)") == interaction("x")
    assert parse_expr("d[mu] phi(x)") == phi("x", "mu")
    assert parse_expr("2*i*hbar") == Expr.scalar(2 * I, hbar_power=1)
    assert parse_expr("phi(x) / 2") == phi("x").scale(Fraction(1, 2))
    assert parse_expr("theta(phi^2(x))") == theta(phi("x") ** 2)
    assert parse_expr("beta(phi(x))", eta=I) == charge_conjugate(phi("x"), I)


def test_function_calls():
    assert parse_expr("comm(phi(x), phis(y))") == star_commutator(phi("x"), phis("y"))
    assert parse_expr("vev(tproduct(phis(x1), phi(x2)))") == vev(unrenormalized_tproduct([phis("x1"), phi("x2")]))
    assert parse_expr("box[y] DF(x-y)") == Expr.kernel("DF", "x", "y", boxes=1)


@pytest.mark.parametrize("text, position", [
    ("phi(", 3), ("phi $ 2", 4), ("star(phi(x))", 11), ("j(x)", 0), ("DF(x-L)", 5), ("phi(x) phis(x)", 7),
])
def test_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert err.value.position == position


def test_evaluation_errors():
    with pytest.raises(ParseError):
        parse_expr("phi(x) / phi(x)")
    with pytest.raises(ParseError):
        parse_expr("phi(x) / 0")
    with pytest.raises(ParseError):
        parse_expr("phi(x)(y)")
    with pytest.raises(ParseError):
        parse_expr("d[mu] (phi(x) * phi(y))")
