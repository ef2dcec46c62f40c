"""Symmetries of a normal PDE and their action on conservation laws.

A symmetry is represented by its characteristic P, which satisfies the
determining equation frechet(G, P) = 0 on the solution space; a point
generator tau d/dt + xi d/dx + eta d/du has characteristic
P = eta - tau u_t - xi u_x.

The action of a symmetry with characteristic P on a conservation law
can be computed at the level of multipliers without ever building the
current:

    Q_acted = R_P*(Q) - R_Q*(P)

where R_P(G) = frechet(G, P) and R_Q(G) = frechet_adjoint(G, Q).  The
same multiplier arises, modulo expressions vanishing on the solution
space, from the boundary current Psi_G(P, Q) and from transforming the
current itself; psi_current and act_on_current expose those routes.

classify compares Q_acted with Q on the solution space: a multiplier
with Q_acted = 0 is invariant under the symmetry, one with
Q_acted = lambda Q for a rational constant lambda != 0 is homogeneous
of weight lambda, anything else is inhomogeneous.  action_matrix does
the same for a whole multiplier space at once and reports the rational
eigenvalues: the eigenvectors are exactly the combinations on which
the symmetry acts homogeneously.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .conslaw import check_multiplier, check_adjoint_symmetry
from .diffops import (
    ConservedCurrent,
    boundary_current,
    frechet,
    frechet_adjoint,
    total_derivative,
)
from .errors import (
    AnsatzError,
    NotAdjointSymmetry,
    NotAMultiplier,
    NotASymmetry,
    NotClosed,
    TrivialMultiplier,
)
from .expr import DiffExpr, jet
from .ratlin import QMatrix, rank, rational_eigenpairs, solve
from .soln import NormalPDE, extract_operator, restrict
from .conslaw import Ansatz, ansatz_monomials, solve_determining_system


@dataclass(frozen=True)
class SymmetryGen:
    """A point symmetry generator tau d/dt + xi d/dx + eta d/du.

    Use SymmetryGen.evolutionary(P) for a generator already in
    characteristic form.
    """

    tau: DiffExpr
    xi: DiffExpr
    eta: DiffExpr

    @classmethod
    def evolutionary(cls, p: DiffExpr) -> "SymmetryGen":
        zero = DiffExpr()
        return cls(zero, zero, p)

    @property
    def is_evolutionary(self) -> bool:
        return self.tau.is_zero and self.xi.is_zero


def characteristic(gen) -> DiffExpr:
    """The characteristic P = eta - tau u_t - xi u_x; the identity on
    generators given directly as characteristics."""
    if isinstance(gen, DiffExpr):
        return gen
    return gen.eta - gen.tau * jet(1, 0) - gen.xi * jet(0, 1)


def check_symmetry(gen, pde: NormalPDE) -> bool:
    """The determining equation: frechet(G, P) = 0 on the solution space."""
    p = characteristic(gen)
    return restrict(frechet(pde.G, p), pde).is_zero


def solve_symmetries(pde: NormalPDE, ansatz: Ansatz) -> list[DiffExpr]:
    """Basis of symmetry characteristics within the ansatz, solving the
    determining equation on the solution space as an exact linear
    system.  Unlike multiplier candidates, the ansatz monomials may
    involve any jet (u_t is needed for time translation), so the
    ansatz order must still be below the PDE order."""
    from .conslaw import _require_low_order

    _require_low_order(pde, ansatz)
    basis = ansatz_monomials(pde, ansatz, include_consequences=True)
    images = [restrict(frechet(pde.G, m), pde) for m in basis]
    return solve_determining_system(basis, images)


def act_on_current(gen, current, pde: NormalPDE) -> ConservedCurrent:
    """The symmetry action on a conserved current.

    For an evolutionary generator the components transform by the
    Fréchet derivative along P.  For a full point generator the
    transport and divergence terms of the independent variables enter:

        T' = frechet(T, P) + tau D_t T + xi D_x T + T D_x xi - X D_x tau
        X' = frechet(X, P) + tau D_t X + xi D_x X + X D_t tau - T D_t xi

    The result is conserved whenever (T, X) is and the generator is a
    symmetry.
    """
    T, X = current
    p = characteristic(gen)
    tp = frechet(T, p)
    xp = frechet(X, p)
    if isinstance(gen, DiffExpr) or gen.is_evolutionary:
        return ConservedCurrent(tp, xp)
    tau, xi = gen.tau, gen.xi
    dt = lambda f: total_derivative(f, "t")
    dx = lambda f: total_derivative(f, "x")
    t_new = tp + tau * dt(T) + xi * dx(T) + T * dx(xi) - X * dx(tau)
    x_new = xp + tau * dt(X) + xi * dx(X) + X * dt(tau) - T * dt(xi)
    return ConservedCurrent(t_new, x_new)


def _operator_pair(p: DiffExpr, q: DiffExpr, pde: NormalPDE):
    r_p = extract_operator(frechet(pde.G, p), pde)
    r_q = extract_operator(frechet_adjoint(pde.G, q), pde)
    return r_p, r_q


def act_on_multiplier(gen, q: DiffExpr, pde: NormalPDE) -> DiffExpr:
    """The multiplier of the transformed conservation law,

        R_P*(Q) - R_Q*(P),

    computed without building any current.  Requires P to be a
    symmetry and Q a multiplier."""
    p = characteristic(gen)
    if not check_symmetry(p, pde):
        raise NotASymmetry(f"determining equation fails for P = {p}")
    if not check_multiplier(q, pde):
        raise NotAMultiplier(f"E_u(q G) != 0 for q = {q}")
    r_p, r_q = _operator_pair(p, q, pde)
    return r_p.adjoint(q) - r_q.adjoint(p)


def psi_current(gen, q: DiffExpr, pde: NormalPDE) -> ConservedCurrent:
    """The boundary current Psi_G(P, Q) of the pairing identity

        Q frechet(G, P) - P frechet_adjoint(G, Q) = D_t T + D_x X.

    Conserved whenever P is a symmetry and Q an adjoint-symmetry, and
    its multiplier agrees with act_on_multiplier(P, Q) on the solution
    space."""
    p = characteristic(gen)
    if not check_symmetry(p, pde):
        raise NotASymmetry(f"determining equation fails for P = {p}")
    if not check_adjoint_symmetry(q, pde):
        raise NotAdjointSymmetry(f"not an adjoint-symmetry: {q}")
    return boundary_current(pde.G, p, q)


@dataclass(frozen=True)
class ClassificationResult:
    """Outcome of classify: verdict is 'Invariant', 'Homogeneous', or
    'NotHomogeneous'; lam is the weight (0 for invariant, None when not
    homogeneous); action is the compared form of the acted multiplier."""

    verdict: str
    lam: Fraction | None
    action: DiffExpr


def classify(
    gen, q: DiffExpr, pde: NormalPDE, *, strict_off_e: bool = False
) -> ClassificationResult:
    """Classify a conservation law under a symmetry through the action
    on its multiplier.

    By default the acted multiplier is compared with Q on the solution
    space, where the conservation law itself lives; strict_off_e
    demands proportionality of the unrestricted expressions instead.
    A trivial multiplier (vanishing on the solution space) cannot be
    classified and raises TrivialMultiplier.
    """
    dq = act_on_multiplier(gen, q, pde)
    if strict_off_e:
        compare_dq, compare_q = dq, q
    else:
        compare_dq, compare_q = restrict(dq, pde), restrict(q, pde)
    if compare_q.is_zero:
        raise TrivialMultiplier(f"q vanishes on the solution space: {q}")
    if compare_dq.is_zero:
        return ClassificationResult("Invariant", Fraction(0), compare_dq)
    key = min(compare_q._d)
    lam = compare_dq._d.get(key, Fraction(0)) / compare_q._d[key]
    if lam and compare_dq == compare_q * lam:
        return ClassificationResult("Homogeneous", lam, compare_dq)
    return ClassificationResult("NotHomogeneous", None, compare_dq)


@dataclass(frozen=True)
class SymmetryAction:
    """The matrix of a symmetry action on a multiplier basis, columns
    holding the coordinates of each acted basis element, together with
    its rational eigenvalues and canonical eigenvector bases."""

    matrix: QMatrix
    eigenpairs: list[tuple[Fraction, list[tuple[Fraction, ...]]]]


def action_matrix(gen, basis: list[DiffExpr], pde: NormalPDE) -> SymmetryAction:
    """Represent the symmetry action on the span of the given
    multipliers.

    The basis must consist of multipliers whose restrictions to the
    solution space are linearly independent.  If some acted multiplier
    leaves the span, the action is not closed on it and NotClosed is
    raised.  Eigenvectors of the returned matrix are the combinations
    on which the symmetry acts homogeneously, with the eigenvalue as
    weight.
    """
    if not basis:
        raise AnsatzError("empty multiplier basis")
    restricted = [restrict(b, pde) for b in basis]
    acted = [restrict(act_on_multiplier(gen, b, pde), pde) for b in basis]
    mono_keys = sorted(
        {k for e in restricted for k in e._d} | {k for e in acted for k in e._d}
    )
    row_of = {k: i for i, k in enumerate(mono_keys)}
    zero = Fraction(0)
    rows = [[zero] * len(basis) for _ in mono_keys]
    for j, e in enumerate(restricted):
        for k, c in e._d.items():
            rows[row_of[k]][j] = c
    b_matrix = QMatrix(rows)
    if rank(b_matrix) != len(basis):
        raise AnsatzError(
            "multiplier basis is linearly dependent on the solution space"
        )
    cols = []
    for j, img in enumerate(acted):
        vec = [img._d.get(k, zero) for k in mono_keys]
        coords = solve(b_matrix, vec)
        if coords is None:
            raise NotClosed(
                f"action leaves the span of the basis on element {basis[j]}"
            )
        cols.append(coords)
    n = len(basis)
    m = QMatrix([[cols[j][i] for j in range(n)] for i in range(n)])
    return SymmetryAction(m, rational_eigenpairs(m))
