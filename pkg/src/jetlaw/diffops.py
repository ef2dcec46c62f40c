"""Total derivatives, Fréchet derivatives, and the Euler operator.

Conventions, with J = (i, j) ranging over jet indices and D_t, D_x the
total derivatives:

    frechet(f, g)          f'(g)  = sum_J (df/du_J) D_t^i D_x^j g
    frechet_adjoint(f, h)  f'*(h) = sum_J (-D_t)^i (-D_x)^j (h df/du_J)
    euler(f)               E_u(f) = f'*(1)

A differential polynomial is a total divergence D_t T + D_x X exactly
when its Euler operator image vanishes; boundary_current produces the
current certifying the integration-by-parts identity

    h f'(g) - g f'*(h) = D_t Psi^t + D_x Psi^x

and invert_divergence reconstructs a current (T, X) from a divergence.
"""

from __future__ import annotations

from fractions import Fraction

from ._kernel import impl as _k
from .errors import NotADivergence
from .expr import DiffExpr, JetIndex

from typing import NamedTuple


class ConservedCurrent(NamedTuple):
    """A current (T, X); conserved when D_t T + D_x X vanishes on the
    solution space of a PDE."""

    T: DiffExpr
    X: DiffExpr

    def __str__(self) -> str:
        return f"(T = {self.T}, X = {self.X})"


def total_derivative(f: DiffExpr, axis: str) -> DiffExpr:
    """Total derivative D_t (axis 't') or D_x (axis 'x') of f."""
    if axis == "t":
        return DiffExpr._raw(_k.total_t(f._d))
    if axis == "x":
        return DiffExpr._raw(_k.total_x(f._d))
    raise ValueError(f"axis must be 't' or 'x', not {axis!r}")


def divergence(current) -> DiffExpr:
    """D_t T + D_x X of a current pair."""
    T, X = current
    return DiffExpr._raw(_k.add(_k.total_t(T._d), _k.total_x(X._d)))


class _DerivCache:
    """Mixed total derivatives D_t^i D_x^j of one expression, computed
    incrementally and memoized.  Derivatives commute, so each entry is
    reached by raising j from (i, 0), which itself is raised from (0, 0)."""

    def __init__(self, f: DiffExpr):
        self._cache = {(0, 0): f._d}

    def get(self, i: int, j: int) -> dict:
        d = self._cache.get((i, j))
        if d is not None:
            return d
        if j:
            d = _k.total_x(self.get(i, j - 1))
        else:
            d = _k.total_t(self.get(i - 1, 0))
        self._cache[(i, j)] = d
        return d


def frechet(f: DiffExpr, g: DiffExpr) -> DiffExpr:
    """Fréchet derivative of f in the direction g."""
    dg = _DerivCache(g)
    out: dict = {}
    for idx in sorted(f.jet_indices()):
        pf = _k.diff_jet(f._d, idx.nt, idx.nx)
        if pf:
            out = _k.add(out, _k.mul(pf, dg.get(idx.nt, idx.nx)))
    return DiffExpr._raw(out)


def frechet_adjoint(f: DiffExpr, h: DiffExpr) -> DiffExpr:
    """Adjoint Fréchet derivative of f applied to h."""
    out: dict = {}
    for idx in sorted(f.jet_indices()):
        pf = _k.diff_jet(f._d, idx.nt, idx.nx)
        if not pf:
            continue
        w = _k.mul(h._d, pf)
        for _ in range(idx.nt):
            w = _k.total_t(w)
        for _ in range(idx.nx):
            w = _k.total_x(w)
        if (idx.nt + idx.nx) % 2:
            w = _k.neg(w)
        out = _k.add(out, w)
    return DiffExpr._raw(out)


_ONE = DiffExpr._raw({_k.ONE_MONO: Fraction(1)})


def euler(f: DiffExpr) -> DiffExpr:
    """Euler operator E_u(f); vanishes exactly on total divergences."""
    return frechet_adjoint(f, _ONE)


def is_divergence(f: DiffExpr) -> bool:
    return euler(f).is_zero


def boundary_current(f: DiffExpr, g: DiffExpr, h: DiffExpr) -> ConservedCurrent:
    """The current Psi_f(g, h) of the integration-by-parts identity

        h f'(g) - g f'*(h) = D_t Psi^t + D_x Psi^x.

    Each jet J = (i, j) of f contributes the boundary terms of moving
    (-D_t)^i (-D_x)^j off h (df/du_J), t-derivatives peeled first:

        Psi^t_J = sum_{k<i} (-1)^k (D_t^k w) (D_t^{i-1-k} D_x^j g)
        Psi^x_J = (-1)^i sum_{l<j} (-1)^l (D_t^i D_x^l w) (D_x^{j-1-l} g)

    with w = h df/du_J.  The identity holds exactly, not merely on a
    solution space.
    """
    dg = _DerivCache(g)
    psi_t: dict = {}
    psi_x: dict = {}
    for idx in sorted(f.jet_indices()):
        i, j = idx.nt, idx.nx
        pf = _k.diff_jet(f._d, i, j)
        if not pf:
            continue
        dw = _DerivCache(DiffExpr._raw(_k.mul(h._d, pf)))
        for k in range(i):
            piece = _k.mul(dw.get(k, 0), dg.get(i - 1 - k, j))
            psi_t = _k.add(psi_t, _k.neg(piece) if k % 2 else piece)
        for l in range(j):
            piece = _k.mul(dw.get(i, l), dg.get(0, j - 1 - l))
            psi_x = _k.add(psi_x, _k.neg(piece) if (i + l) % 2 else piece)
    return ConservedCurrent(DiffExpr._raw(psi_t), DiffExpr._raw(psi_x))


def _integrate_x(d: dict) -> dict:
    """Antiderivative in x of a jet-free polynomial in t and x."""
    out = {}
    for (a, b, jets), c in d.items():
        assert not jets
        out[(a, b + 1, ())] = c / (b + 1)
    return out


def invert_divergence(f: DiffExpr) -> ConservedCurrent:
    """A current (T, X) with D_t T + D_x X = f, if one exists.

    Raises NotADivergence when euler(f) != 0.  The jet-dependent part of
    f is inverted through the boundary current Psi_f(u, 1) with each
    monomial weighted by the reciprocal of its jet degree (the scaling
    homotopy in the dependent variable, evaluated in closed form); the
    jet-free remainder is integrated in x.  The construction is exact
    and deterministic, and the result is one representative of the
    current's equivalence class.
    """
    if not euler(f).is_zero:
        raise NotADivergence(f"euler image is nonzero: {euler(f)}")
    jet_free: dict = {}
    jet_part: dict = {}
    for k, c in f._d.items():
        if k[2]:
            jet_part[k] = c
        else:
            jet_free[k] = c
    psi_t, psi_x = boundary_current(
        DiffExpr._raw(jet_part), DiffExpr._raw({(0, 0, ((0, 0, 1),)): Fraction(1)}), _ONE
    )

    def weight(d: dict) -> dict:
        out = {}
        for k, c in d.items():
            deg = sum(e for _, _, e in k[2])
            out[k] = c / deg
        return out

    T = DiffExpr._raw(weight(psi_t._d))
    X = DiffExpr._raw(_k.add(weight(psi_x._d), _integrate_x(jet_free)))
    assert divergence((T, X)) == f, "divergence inversion failed"
    return ConservedCurrent(T, X)
