"""Differential polynomials on the jet space of u(t, x).

A DiffExpr is a polynomial with rational coefficients in the explicit
variables t, x and the jet variables u_(nt,nx), where u_(nt,nx) denotes
the mixed derivative d^nt/dt^nt d^nx/dx^nx u and u_(0,0) is u itself.
Expressions are kept in a canonical sparse form (monomial -> nonzero
coefficient), so equality of expressions is equality of the maps and
the zero polynomial has no terms.

Term arithmetic is delegated to jetlaw._kernel, which is either a
compiled extension or its pure-Python twin.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, NamedTuple, Union

from ._kernel import impl as _k

Scalar = Union[int, Fraction]


class JetIndex(NamedTuple):
    """Multi-index (nt, nx) of a jet variable; orders by (nt, nx)."""

    nt: int
    nx: int

    @property
    def order(self) -> int:
        return self.nt + self.nx

    def __str__(self) -> str:
        return "u_" + "t" * self.nt + "x" * self.nx if (self.nt or self.nx) else "u"


def _as_jet_index(v) -> JetIndex:
    nt, nx = v
    if nt < 0 or nx < 0:
        raise ValueError(f"jet index must be non-negative, got ({nt}, {nx})")
    return JetIndex(nt, nx)


class Monomial:
    """A single monomial t^a * x^b * prod u_J^e, hashable and ordered.

    The ordering key is (t_deg, x_deg, jets) compared left to right,
    with jets the sorted tuple of (nt, nx, exp) triples; this is the
    order used everywhere output must be deterministic.
    """

    __slots__ = ("key",)

    def __init__(self, t_deg: int = 0, x_deg: int = 0, jet_powers=None):
        if t_deg < 0 or x_deg < 0:
            raise ValueError("negative degree")
        jets = []
        if jet_powers:
            items = jet_powers.items() if isinstance(jet_powers, Mapping) else jet_powers
            for idx, e in items:
                if e < 0:
                    raise ValueError("negative jet exponent")
                if e:
                    nt, nx = idx
                    jets.append((nt, nx, e))
        jets.sort()
        for i in range(1, len(jets)):
            if jets[i - 1][:2] == jets[i][:2]:
                raise ValueError(f"repeated jet index {jets[i][:2]}")
        self.key = (t_deg, x_deg, tuple(jets))

    @classmethod
    def _from_key(cls, key) -> "Monomial":
        obj = object.__new__(cls)
        obj.key = key
        return obj

    @property
    def t_deg(self) -> int:
        return self.key[0]

    @property
    def x_deg(self) -> int:
        return self.key[1]

    @property
    def jet_powers(self) -> dict[JetIndex, int]:
        return {JetIndex(nt, nx): e for nt, nx, e in self.key[2]}

    @property
    def jet_degree(self) -> int:
        return sum(e for _, _, e in self.key[2])

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "Monomial") -> bool:
        return self.key < other.key

    def __repr__(self) -> str:
        return f"Monomial(key={self.key!r})"


class DiffExpr:
    """Immutable differential polynomial.

    Supports +, -, * (by expressions and scalars), ** (non-negative
    integer), / (by a nonzero scalar), exact equality, and hashing.
    """

    __slots__ = ("_d", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        d = {}
        if terms:
            for mono, coeff in terms.items():
                c = Fraction(coeff)
                if c:
                    d[mono.key] = c
        self._d = d
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "DiffExpr":
        obj = object.__new__(cls)
        obj._d = d
        obj._hash = None
        return obj

    # -- inspection ---------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return {Monomial._from_key(k): c for k, c in self._d.items()}

    @property
    def is_zero(self) -> bool:
        return not self._d

    def is_constant(self) -> bool:
        """True when the expression is a rational constant (possibly 0)."""
        return not self._d or (len(self._d) == 1 and _k.ONE_MONO in self._d)

    def constant_value(self) -> Fraction:
        if not self._d:
            return Fraction(0)
        if self.is_constant():
            return self._d[_k.ONE_MONO]
        raise ValueError("expression is not constant")

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._d.get(mono.key, Fraction(0))

    def jet_indices(self) -> set[JetIndex]:
        """All jet variables occurring with nonzero exponent."""
        out = set()
        for _, _, jets in self._d:
            for nt, nx, _ in jets:
                out.add(JetIndex(nt, nx))
        return out

    def max_order(self) -> int:
        """Highest total order nt + nx of any jet present; -1 if jet-free."""
        best = -1
        for _, _, jets in self._d:
            for nt, nx, _ in jets:
                if nt + nx > best:
                    best = nt + nx
        return best

    def depends_on(self, v) -> bool:
        """Whether the expression involves 't', 'x', or a given jet index."""
        if v == "t":
            return any(k[0] for k in self._d)
        if v == "x":
            return any(k[1] for k in self._d)
        nt, nx = _as_jet_index(v)
        return any(jt == nt and jx == nx for k in self._d for jt, jx, _ in k[2])

    def jet_degree_split(self) -> dict[int, "DiffExpr"]:
        """Split into jet-degree homogeneous parts; zero maps to {}."""
        parts: dict[int, dict] = {}
        for k, c in self._d.items():
            d = sum(e for _, _, e in k[2])
            parts.setdefault(d, {})[k] = c
        return {d: DiffExpr._raw(p) for d, p in sorted(parts.items())}

    # -- calculus -----------------------------------------------------

    def partial(self, v) -> "DiffExpr":
        """Partial derivative with respect to 't', 'x', or a jet index."""
        if v == "t":
            return DiffExpr._raw(_k.diff_t(self._d))
        if v == "x":
            return DiffExpr._raw(_k.diff_x(self._d))
        nt, nx = _as_jet_index(v)
        return DiffExpr._raw(_k.diff_jet(self._d, nt, nx))

    # -- arithmetic ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "DiffExpr | None":
        if isinstance(other, DiffExpr):
            return other
        if isinstance(other, (int, Fraction)):
            return const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DiffExpr._raw(_k.add(self._d, o._d))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DiffExpr._raw(_k.sub(self._d, o._d))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DiffExpr._raw(_k.sub(o._d, self._d))

    def __neg__(self):
        return DiffExpr._raw(_k.neg(self._d))

    def __mul__(self, other):
        if isinstance(other, DiffExpr):
            return DiffExpr._raw(_k.mul(self._d, other._d))
        if isinstance(other, (int, Fraction)):
            return DiffExpr._raw(_k.scale(self._d, Fraction(other)))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of an expression by zero")
            return DiffExpr._raw(_k.scale(self._d, Fraction(1, 1) / Fraction(other)))
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise ValueError("negative exponent leaves the polynomial ring")
        return DiffExpr._raw(_k.pow_(self._d, n))

    def __eq__(self, other) -> bool:
        if isinstance(other, DiffExpr):
            return self._d == other._d
        if isinstance(other, (int, Fraction)):
            return self._d == const(other)._d
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._d)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending monomial order (the printing order)."""
        return [
            (Monomial._from_key(k), self._d[k])
            for k in sorted(self._d, reverse=True)
        ]

    def __str__(self) -> str:
        from .grammar import format_expr

        return format_expr(self)

    def __repr__(self) -> str:
        return f"DiffExpr({str(self)!r})"


def const(value: Scalar) -> DiffExpr:
    c = Fraction(value)
    return DiffExpr._raw({_k.ONE_MONO: c} if c else {})


def jet(nt: int = 0, nx: int = 0) -> DiffExpr:
    """The jet variable u_(nt,nx) as an expression."""
    idx = _as_jet_index((nt, nx))
    return DiffExpr._raw({(0, 0, ((idx.nt, idx.nx, 1),)): Fraction(1)})


ZERO = const(0)
ONE = const(1)
t = DiffExpr._raw({(1, 0, ()): Fraction(1)})
x = DiffExpr._raw({(0, 1, ()): Fraction(1)})
u = jet(0, 0)
