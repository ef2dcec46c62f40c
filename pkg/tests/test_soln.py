import random

import pytest

import oracle
from helpers import random_expr
from jetlaw.diffops import euler, frechet, total_derivative
from jetlaw.errors import NotNormal, NotOnSolutionSpace
from jetlaw.expr import ONE, ZERO, const, jet, t, u, x
from jetlaw.grammar import parse_expr
from jetlaw.soln import LinDiffOp, extract_operator, make_pde, restrict

u_t = jet(1, 0)
u_x = jet(0, 1)
u_xx = jet(0, 2)


def test_make_pde_validates_the_lead():
    with pytest.raises(NotNormal):
        make_pde((0, 2), u)  # solved for an x-derivative
    with pytest.raises(ValueError):
        make_pde((-1, 0), u)


def test_make_pde_rejects_rhs_not_below_lead():
    with pytest.raises(NotNormal):
        make_pde((1, 0), u_t)
    with pytest.raises(NotNormal):
        make_pde((1, 1), jet(2, 0))  # u_tt is lexicographically above u_tx
    with pytest.raises(NotNormal):
        make_pde((1, 0), jet(1, 1))


def test_make_pde_accepts_lower_t_derivatives():
    pde = make_pde((2, 0), u_t + u_xx)
    assert pde.G == jet(2, 0) - u_t - u_xx


def test_is_consequence(kdv, wave):
    assert kdv.is_consequence((1, 0))
    assert kdv.is_consequence((3, 2))
    assert not kdv.is_consequence((0, 5))
    assert wave.is_consequence((2, 0))
    assert not wave.is_consequence((1, 4))


def test_restrict_examples(kdv):
    assert restrict(u_t, kdv) == kdv.rhs
    assert restrict(kdv.G, kdv) == ZERO
    assert restrict(jet(1, 1), kdv) == total_derivative(kdv.rhs, "x")
    # second consequence needs the first one substituted inside D_t(rhs)
    dt_rhs = total_derivative(kdv.rhs, "t")
    assert restrict(jet(2, 0), kdv) == restrict(dt_rhs, kdv)
    # expressions free of consequences pass through
    f = t * u + u_x**2
    assert restrict(f, kdv) == f


def test_restrict_is_idempotent_and_linear(kdv, wave):
    rng = random.Random(21)
    for pde in (kdv, wave):
        for _ in range(8):
            f = random_expr(rng, max_terms=3)
            g = random_expr(rng, max_terms=3)
            rf = restrict(f, pde)
            assert restrict(rf, pde) == rf
            assert restrict(f + g, pde) == rf + restrict(g, pde)
            # restriction is evaluation, so it respects products too
            assert restrict(f * g, pde) == restrict(rf * restrict(g, pde), pde)


def test_restrict_matches_reference(kdv, wave):
    rng = random.Random(22)
    for pde in (kdv, wave):
        lead = (pde.lead.nt, pde.lead.nx)
        rhs_s = oracle.to_sympy(pde.rhs)
        for _ in range(6):
            f = random_expr(rng, max_terms=3, max_order=3, max_jet_degree=2)
            assert oracle.to_sympy(restrict(f, pde)) == oracle.restrict(
                oracle.to_sympy(f), lead, rhs_s
            )


def test_lin_diff_op_apply_and_order():
    R = LinDiffOp({(0, 0): u, (0, 1): const(-1)})
    assert R.order() == 1
    assert R.apply(u) == u**2 - u_x
    assert LinDiffOp({}).apply(u) == ZERO
    assert LinDiffOp({}).order() == -1
    # zero coefficients are dropped at construction
    assert LinDiffOp({(1, 0): ZERO}) == LinDiffOp({})


def test_adjoint_pairing_is_a_divergence():
    # h R(g) - g R*(h) must be a total divergence for any R, g, h
    rng = random.Random(23)
    for _ in range(8):
        R = LinDiffOp(
            {
                (rng.randint(0, 2), rng.randint(0, 2)): random_expr(rng, max_terms=2)
                for _ in range(rng.randint(1, 3))
            }
        )
        g = random_expr(rng, max_terms=2)
        h = random_expr(rng, max_terms=2)
        assert euler(h * R.apply(g) - g * R.adjoint(h)) == ZERO


def test_adjoint_coeffs_reproduce_adjoint():
    rng = random.Random(24)
    for _ in range(8):
        R = LinDiffOp(
            {
                (rng.randint(0, 2), rng.randint(0, 2)): random_expr(rng, max_terms=2)
                for _ in range(rng.randint(1, 3))
            }
        )
        Rstar = LinDiffOp(R.adjoint_coeffs())
        h = random_expr(rng, max_terms=2)
        assert Rstar.apply(h) == R.adjoint(h)


def test_adjoint_is_an_involution():
    rng = random.Random(25)
    for _ in range(8):
        R = LinDiffOp(
            {
                (rng.randint(0, 2), rng.randint(0, 2)): random_expr(rng, max_terms=2)
                for _ in range(rng.randint(1, 3))
            }
        )
        Rss = LinDiffOp(LinDiffOp(R.adjoint_coeffs()).adjoint_coeffs())
        assert Rss == R


def test_extract_operator_is_exact(kdv, heat, wave):
    rng = random.Random(26)
    for pde in (kdv, heat, wave):
        G = pde.G
        for _ in range(6):
            a = random_expr(rng, max_terms=2, max_order=1)
            b = random_expr(rng, max_terms=2, max_order=1)
            c = random_expr(rng, max_terms=2, max_order=1)
            f = a * G + b * total_derivative(G, "t") + c * total_derivative(G, "x")
            R = extract_operator(f, pde)
            assert R.apply(G) == f


def test_extract_operator_handles_products_of_consequences(kdv):
    f = kdv.G * kdv.G
    R = extract_operator(f, kdv)
    assert R.apply(kdv.G) == f


def test_extract_operator_known_coefficients(kdv):
    # scaling characteristic: frechet(G, P) = R(G) with
    # R = -5 - 3t D_t - x D_x
    P = -2 * u - 3 * t * u_t - x * u_x
    R = extract_operator(frechet(kdv.G, P), kdv)
    assert R.coeffs == {
        (0, 0): const(-5),
        (1, 0): -3 * t,
        (0, 1): -x,
    }
    assert R.adjoint(ONE) == const(-1)


def test_extract_operator_rejects_off_solution_input(kdv):
    with pytest.raises(NotOnSolutionSpace):
        extract_operator(kdv.G + u, kdv)
    with pytest.raises(NotOnSolutionSpace):
        extract_operator(ONE, kdv)


def test_pde_str(kdv):
    assert str(kdv) == "u_t = -u_xxx - u*u_x"
    assert repr(parse_expr("u") * 0 + kdv.G) == repr(kdv.G)
