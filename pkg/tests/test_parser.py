from fractions import Fraction

import pytest
from hypothesis import given

from ncqsde.errors import (BadExponent, CapRequired, DegreeOverflow, ExpressionSyntaxError,
                           SeriesArgumentError, UnknownVariable)
from ncqsde.ncpoly import I, NcPoly, Scalar, VarId, p, q
from ncqsde.parser import (BinOp, Neg, Pow, elaborate, expand_words, parse, parse_poly,
                           parse_scalar, parse_variable, tokenize)

from conftest import polys_any_modes

Q1, P1, P2 = VarId("q", 1), VarId("p", 1), VarId("p", 2)


def test_word_order_preserved():
    (w,) = expand_words(parse("p*q^2"))
    assert w.factors == (P1, Q1, Q1) and w.coefficient == 1


def test_complex_rational_coefficient():
    (w,) = expand_words(parse("(1/2 + i)*q1*p2", 2))
    assert w.coefficient == Scalar(Fraction(1, 2), 1)
    assert w.factors == (Q1, P2)


def test_ccr_after_elaboration():
    assert parse_poly("q*p - p*q") == NcPoly.const(I)
    assert str(parse_poly("p*q")) != str(parse_poly("q*p"))
    assert parse_poly("q*p") - parse_poly("p*q") == NcPoly.const(I)


def test_precedence():
    ast = parse("-q^2 + p").root
    assert isinstance(ast, BinOp) and ast.op == "+"
    assert isinstance(ast.left, Neg) and isinstance(ast.left.operand, Pow)
    assert parse_poly("-q^2") == -(q() ** 2)
    assert parse_poly("2*-q") == -q().scale(2)
    assert parse_poly("q^2^3") == q() ** 6
    assert parse_poly("1 - q - p") == 1 - q() - p()
    assert parse_poly("  q *\tp ") == q() * p()


@pytest.mark.parametrize("src,exc,pos", [
    ("q^-1", BadExponent, 2),
    ("q^p", BadExponent, 2),
    ("0.5*q", ExpressionSyntaxError, 0),
    ("q + * p", ExpressionSyntaxError, 4),
    ("(q + p", ExpressionSyntaxError, 6),
    ("q $", ExpressionSyntaxError, 2),
    ("x", UnknownVariable, 0),
    ("q3", UnknownVariable, 0),
    ("", ExpressionSyntaxError, 0),
    ("q/2", ExpressionSyntaxError, 1),
    ("1/0", ExpressionSyntaxError, 2),
])
def test_errors_carry_positions(src, exc, pos):
    with pytest.raises(exc) as info:
        parse_poly(src)
    assert info.value.position == pos


def test_bare_names_only_single_mode():
    with pytest.raises(UnknownVariable):
        parse("q", 2)
    assert parse_poly("q1*p2", 2) == NcPoly({(1, 0, 0, 1): 1}, 2)
    assert parse_poly("q1", 1) == q()
    assert parse_variable("p2", 2) == P2


def test_elaborate_series():
    assert parse_poly("cos(q)", cap=4) == 1 - (q() ** 2).scale(Fraction(1, 2)) + (q() ** 4).scale(Fraction(1, 24))
    assert parse_poly("q^3", cap=3) == q() ** 3
    s = q() - (q() ** 3).scale(Fraction(1, 6)) + (q() ** 5).scale(Fraction(1, 120))
    assert parse_poly("sin(q)*p", cap=5) == s * p()
    assert parse_poly("exp(q)", cap=2) == 1 + q() + (q() ** 2).scale(Fraction(1, 2))


def test_series_of_noncommuting_argument():
    X = parse_poly("exp(q + p)", cap=2)
    qp = q() + p()
    assert X == 1 + qp + (qp * qp).scale(Fraction(1, 2))


def test_elaborate_errors():
    with pytest.raises(CapRequired):
        parse_poly("cos(q)")
    with pytest.raises(SeriesArgumentError):
        parse_poly("exp(1 + q)", cap=3)
    with pytest.raises(DegreeOverflow):
        parse_poly("cos(q^5)", cap=4)
    with pytest.raises(CapRequired):
        expand_words(parse("sin(q)"))


def test_parse_scalar():
    assert parse_scalar("1/2 - 3*i") == Scalar(Fraction(1, 2), -3)
    with pytest.raises(ExpressionSyntaxError):
        parse_scalar("q")


def test_tokenize_positions():
    assert [t[2] for t in tokenize("q1 + 22")] == [0, 3, 5, 7]


@given(polys_any_modes(max_modes=3, max_degree=6, max_terms=5))
def test_render_parse_round_trip(X):
    assert elaborate(parse(str(X), X.modes)) == X
