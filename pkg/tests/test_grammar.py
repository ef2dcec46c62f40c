import random
from fractions import Fraction

import pytest

from helpers import random_expr
from jetlaw.errors import DivisionByZero, ExprSyntaxError, NonPolynomial
from jetlaw.expr import jet, t, u, x
from jetlaw.grammar import format_expr, parse_expr


def test_parse_basic_forms():
    assert parse_expr("u") == u
    assert parse_expr("t*x") == t * x
    assert parse_expr("u_t") == jet(1, 0)
    assert parse_expr("u_txx") == jet(1, 2)
    assert parse_expr("u_xtx") == jet(1, 2)
    assert parse_expr("u_xt") == parse_expr("u_tx")
    assert parse_expr("u[1,2]") == jet(1, 2)
    assert parse_expr("u[0,0]") == u
    assert parse_expr("  u  +\t1 ") == u + 1


def test_parse_precedence_and_unary():
    assert parse_expr("1 + 2*u^2") == 1 + 2 * u**2
    assert parse_expr("-u^2") == -(u**2)
    assert parse_expr("(-u)^2") == u**2
    assert parse_expr("2 - -u") == 2 + u
    assert parse_expr("u - u_x*t - 1") == u - jet(0, 1) * t - 1


def test_parse_constant_division():
    assert parse_expr("u/2") == u * Fraction(1, 2)
    assert parse_expr("u / (1 + 1)") == u * Fraction(1, 2)
    assert parse_expr("3/4") == parse_expr("6/8")


def test_syntax_errors_carry_positions():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("u + * 2")
    assert info.value.pos == 4
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("u_y")
    assert info.value.pos == 1
    with pytest.raises(ExprSyntaxError):
        parse_expr("(u")
    with pytest.raises(ExprSyntaxError):
        parse_expr("")
    with pytest.raises(ExprSyntaxError):
        parse_expr("u^x")


def test_nonpolynomial_rejections():
    with pytest.raises(NonPolynomial):
        parse_expr("1/u")
    with pytest.raises(NonPolynomial):
        parse_expr("u^-2")
    with pytest.raises(NonPolynomial):
        parse_expr("t/(u+1)")


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        parse_expr("u/0")
    with pytest.raises(DivisionByZero):
        parse_expr("u/(2-2)")


def test_format_is_canonical():
    assert format_expr(parse_expr("- u*u_x - u_xxx")) == "-u_xxx - u*u_x"
    assert format_expr(parse_expr("(u+1)^2/2")) == "1/2*u^2 + u + 1/2"
    assert format_expr(parse_expr("3 - 2*t*x^2*u_x^3")) == "-2*t*x^2*u_x^3 + 3"
    assert format_expr(parse_expr("0")) == "0"
    assert format_expr(parse_expr("u[2,1]")) == "u_ttx"


def test_unit_coefficients_are_suppressed():
    assert format_expr(u) == "u"
    assert format_expr(-u) == "-u"
    assert format_expr(u - t) == "-t + u"
    assert format_expr(Fraction(1, 2) * u) == "1/2*u"


def test_round_trip_random():
    # format then re-parse must reproduce the expression exactly
    rng = random.Random(2024)
    for _ in range(50):
        f = random_expr(rng, allow_fractions=True)
        assert parse_expr(format_expr(f)) == f
