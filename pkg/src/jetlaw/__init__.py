"""jetlaw: conservation laws of scalar PDEs by the multiplier method.

The package works on the jet space of a single dependent variable
u(t, x).  It verifies and classifies conservation laws of normal PDEs
in solved form, converts between conserved currents and their
multipliers, solves for low-order multipliers and symmetries within a
polynomial ansatz, and applies symmetries to conservation laws.
"""

from ._kernel import BACKEND
from .expr import DiffExpr, JetIndex, Monomial, const, jet, t, u, x
from .grammar import format_expr, parse_expr

__all__ = [
    "BACKEND",
    "DiffExpr",
    "JetIndex",
    "Monomial",
    "const",
    "format_expr",
    "jet",
    "parse_expr",
    "t",
    "u",
    "x",
]

__version__ = "0.1.0"
