"""Shared test utilities: seeded random expression generation."""

from fractions import Fraction

from jetlaw.expr import DiffExpr, Monomial


def random_expr(
    rng,
    max_terms=5,
    max_order=3,
    max_jet_degree=3,
    max_tx_degree=2,
    coeff_bound=9,
    allow_fractions=False,
):
    """A random differential polynomial within the given bounds.

    Coefficients are nonzero integers in [-coeff_bound, coeff_bound]
    (or small fractions when allow_fractions is set); jets have total
    order at most max_order and each monomial has total jet degree at
    most max_jet_degree.
    """
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        powers = {}
        for _ in range(rng.randint(0, max_jet_degree)):
            order = rng.randint(0, max_order)
            nt = rng.randint(0, order)
            idx = (nt, order - nt)
            powers[idx] = powers.get(idx, 0) + 1
        mono = Monomial(
            t_deg=rng.randint(0, max_tx_degree),
            x_deg=rng.randint(0, max_tx_degree),
            jet_powers=powers,
        )
        num = rng.choice([c for c in range(-coeff_bound, coeff_bound + 1) if c])
        den = rng.randint(1, 4) if allow_fractions else 1
        terms[mono] = Fraction(num, den)
    return DiffExpr(terms)
