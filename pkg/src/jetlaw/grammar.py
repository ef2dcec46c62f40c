"""Parsing and printing of differential polynomials.

Grammar (whitespace insensitive):

    expr     := term (('+' | '-') term)*
    term     := factor (('*' | '/') factor)*
    factor   := '-' factor | power
    power    := atom ('^' ['-'] INT)?
    atom     := INT | 't' | 'x' | jet | '(' expr ')'
    jet      := 'u' | 'u_' [tx]+ | 'u[' INT ',' INT ']'

u_ttx means d^2/dt^2 d/dx u; the letters after the underscore may come
in any order and are counted, but the printer always emits t's first.
u[i,j] is an alias for the same jet with explicit counts.  Exponents
are integer literals; a negative exponent or a division by anything but
a nonzero constant leaves the polynomial ring and raises NonPolynomial
(division by the zero constant raises DivisionByZero).

format_expr is the canonical printer: terms in descending monomial
order, explicit '*' between factors, coefficients as integers or
fractions.  parse(format_expr(e)) == e for every expression.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DivisionByZero, ExprSyntaxError, NonPolynomial
from .expr import DiffExpr, Monomial, const, jet, t, x

_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<int>\d+)
      | (?P<jet>u_[tx]+)
      | (?P<name>[utx])
      | (?P<op>[-+*/^()\[\],])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, value, position) triples, without whitespace."""
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}", pos)

    def parse(self) -> DiffExpr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {val!r}", pos)
        return e

    def expr(self) -> DiffExpr:
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                e = e + rhs if val == "+" else e - rhs
            else:
                return e

    def term(self) -> DiffExpr:
        e = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                if val == "*":
                    e = e * rhs
                else:
                    if not rhs.is_constant():
                        raise NonPolynomial(
                            "division by a non-constant expression"
                        )
                    c = rhs.constant_value()
                    if not c:
                        raise DivisionByZero("division by zero")
                    e = e / c
            else:
                return e

    def factor(self) -> DiffExpr:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.factor()
        return self.power()

    def power(self) -> DiffExpr:
        e = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            negative = False
            kind, val, pos = self.next()
            if kind == "op" and val == "-":
                negative = True
                kind, val, pos = self.next()
            if kind != "int":
                raise ExprSyntaxError("exponent must be an integer literal", pos)
            if negative:
                raise NonPolynomial("negative exponent leaves the polynomial ring")
            return e ** int(val)
        return e

    def atom(self) -> DiffExpr:
        kind, val, pos = self.next()
        if kind == "int":
            return const(int(val))
        if kind == "jet":
            letters = val[2:]
            return jet(letters.count("t"), letters.count("x"))
        if kind == "name":
            if val == "t":
                return t
            if val == "x":
                return x
            # bare u, or the bracket form u[i,j]
            k2, v2, _ = self.peek()
            if k2 == "op" and v2 == "[":
                self.next()
                nt = self._int_literal()
                self.expect_op(",")
                nx = self._int_literal()
                self.expect_op("]")
                return jet(nt, nx)
            return jet(0, 0)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ExprSyntaxError(
            "expected a number, variable, or parenthesized expression", pos
        )

    def _int_literal(self) -> int:
        kind, val, pos = self.next()
        if kind != "int":
            raise ExprSyntaxError("expected an integer", pos)
        return int(val)


def parse_expr(text: str) -> DiffExpr:
    """Parse text in the canonical grammar into a DiffExpr."""
    return _Parser(text).parse()


def _format_jet(nt: int, nx: int) -> str:
    if nt == 0 and nx == 0:
        return "u"
    return "u_" + "t" * nt + "x" * nx


def _format_monomial(key) -> str:
    t_deg, x_deg, jets = key
    parts = []
    if t_deg:
        parts.append("t" if t_deg == 1 else f"t^{t_deg}")
    if x_deg:
        parts.append("x" if x_deg == 1 else f"x^{x_deg}")
    for nt, nx, e in jets:
        name = _format_jet(nt, nx)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_expr(e: DiffExpr) -> str:
    """Canonical printer; round-trips through parse_expr exactly."""
    if e.is_zero:
        return "0"
    out = []
    for mono, coeff in e.sorted_terms():
        mag = abs(coeff)
        body = _format_monomial(mono.key)
        if not body:
            piece = str(mag)
        elif mag == 1:
            piece = body
        else:
            piece = f"{mag}*{body}"
        if not out:
            out.append(piece if coeff > 0 else f"-{piece}")
        else:
            out.append(f" + {piece}" if coeff > 0 else f" - {piece}")
    return "".join(out)
