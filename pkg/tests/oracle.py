"""Independent reference implementations backed by sympy.

Everything here recomputes the calculus operators straight from their
defining formulas on sympy expressions, sharing no code with the
package under test.  Jet coordinates map to plain symbols u{nt}_{nx},
so D_t and D_x are the usual chain-rule sums and the Euler operator,
Frechet derivative, and adjoint are literal transcriptions.
"""

from fractions import Fraction

import sympy as sp

T = sp.Symbol("t")
X = sp.Symbol("x")


def jet_sym(nt, nx):
    return sp.Symbol("u%d_%d" % (nt, nx))


def to_sympy(e):
    """Convert a DiffExpr to an expanded sympy expression."""
    total = sp.Integer(0)
    for mono, coeff in e.terms.items():
        term = sp.Rational(coeff.numerator, coeff.denominator)
        term *= T ** mono.t_deg * X ** mono.x_deg
        for idx, p in mono.jet_powers.items():
            term *= jet_sym(idx.nt, idx.nx) ** p
        total += term
    return sp.expand(total)


def from_sympy(expr):
    """Convert a polynomial sympy expression back to a DiffExpr."""
    from jetlaw.expr import DiffExpr, Monomial

    expr = sp.expand(expr)
    gens = sorted(expr.free_symbols, key=lambda s: s.name)
    if not gens:
        q = sp.Rational(expr)
        return DiffExpr({Monomial(): Fraction(q.p, q.q)}) if q else DiffExpr({})
    poly = sp.Poly(expr, *gens)
    terms = {}
    for powers, coeff in poly.terms():
        t_deg = x_deg = 0
        jets = {}
        for g, p in zip(gens, powers):
            if p == 0:
                continue
            if g == T:
                t_deg = p
            elif g == X:
                x_deg = p
            else:
                nt, nx = g.name[1:].split("_")
                jets[(int(nt), int(nx))] = p
        q = sp.Rational(coeff)
        terms[Monomial(t_deg, x_deg, jets)] = Fraction(q.p, q.q)
    return DiffExpr(terms)


def jets_in(expr):
    """The jet symbols appearing in expr, as (nt, nx, symbol) triples."""
    out = []
    for s in expr.free_symbols:
        name = s.name
        if name.startswith("u") and "_" in name:
            nt, nx = name[1:].split("_")
            out.append((int(nt), int(nx), s))
    return out


def Dt(expr):
    out = sp.diff(expr, T)
    for nt, nx, s in jets_in(expr):
        out += sp.diff(expr, s) * jet_sym(nt + 1, nx)
    return sp.expand(out)


def Dx(expr):
    out = sp.diff(expr, X)
    for nt, nx, s in jets_in(expr):
        out += sp.diff(expr, s) * jet_sym(nt, nx + 1)
    return sp.expand(out)


def DJ(expr, nt, nx):
    for _ in range(nt):
        expr = Dt(expr)
    for _ in range(nx):
        expr = Dx(expr)
    return expr


def euler(expr):
    out = sp.Integer(0)
    for nt, nx, s in jets_in(expr):
        out += (-1) ** (nt + nx) * DJ(sp.diff(expr, s), nt, nx)
    return sp.expand(out)


def frechet(f, g):
    out = sp.Integer(0)
    for nt, nx, s in jets_in(f):
        out += sp.diff(f, s) * DJ(g, nt, nx)
    return sp.expand(out)


def frechet_adjoint(f, h):
    out = sp.Integer(0)
    for nt, nx, s in jets_in(f):
        out += (-1) ** (nt + nx) * DJ(h * sp.diff(f, s), nt, nx)
    return sp.expand(out)


def restrict(expr, lead, rhs_sympy):
    """Substitute every derivative of the lead jet until none remain."""
    lt, lx = lead
    while True:
        hits = [
            (nt, nx, s)
            for nt, nx, s in jets_in(expr)
            if nt >= lt and nx >= lx
        ]
        if not hits:
            return sp.expand(expr)
        nt, nx, s = max(hits, key=lambda h: (h[0], h[1]))
        expr = sp.expand(expr.subs(s, DJ(rhs_sympy, nt - lt, nx - lx)))


def multiplier_space_dimension(G_sympy, lead, candidates):
    """Dimension of the multiplier space spanned by candidate monomials.

    Solves E_u(Q * G) = 0 for Q a linear combination of the candidate
    sympy expressions, by collecting polynomial coefficients in the jet
    variables and t, x.  Returns the nullspace dimension.
    """
    cs = sp.symbols("c0:%d" % len(candidates))
    Q = sum(c * m for c, m in zip(cs, candidates))
    expr = euler(sp.expand(Q * G_sympy))
    lt, lx = lead
    gens = sorted(
        (s for s in expr.free_symbols if s not in cs), key=lambda s: s.name
    )
    if not gens:
        eqs = [expr]
    else:
        eqs = sp.Poly(expr, *gens).coeffs()
    if not any(eqs):
        return len(cs)
    A, _ = sp.linear_eq_to_matrix(eqs, list(cs))
    return len(cs) - A.rank()
