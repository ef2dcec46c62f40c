"""Term-level arithmetic kernel, pure-Python reference implementation.

A differential polynomial is stored as a dict mapping monomials to
nonzero Fraction coefficients.  A monomial is a tuple

    (t_deg, x_deg, jets)

where jets is a tuple of (nt, nx, exp) triples sorted by (nt, nx), each
with exp > 0.  The triple (nt, nx, exp) stands for the jet variable
u_(nt,nx) = d^nt/dt^nt d^nx/dx^nx u raised to the power exp.  The empty
dict is the zero polynomial; ONE_MONO is the unit monomial.

jetlaw._kernel selects this module or its compiled twin _speedups at
import time.  Both expose the same functions with identical semantics
and identical outputs; the test suite cross-checks them on randomized
inputs.  Keep the two in sync.
"""

from fractions import Fraction

ONE_MONO = (0, 0, ())

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _acc(out, mono, coeff):
    """Accumulate coeff on mono, dropping the entry if it cancels."""
    s = out.get(mono)
    if s is None:
        out[mono] = coeff
    else:
        s = s + coeff
        if s:
            out[mono] = s
        else:
            del out[mono]


def add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for mono, coeff in b.items():
        _acc(out, mono, coeff)
    return out


def sub(a, b):
    out = dict(a)
    for mono, coeff in b.items():
        _acc(out, mono, -coeff)
    return out


def neg(a):
    return {mono: -coeff for mono, coeff in a.items()}


def scale(a, c):
    if not c:
        return {}
    return {mono: coeff * c for mono, coeff in a.items()}


def _merge_jets(ja, jb):
    """Merge two sorted jet tuples, adding exponents of equal jets."""
    if not ja:
        return jb
    if not jb:
        return ja
    out = []
    i = j = 0
    na, nb = len(ja), len(jb)
    while i < na and j < nb:
        at, ax, ae = ja[i]
        bt, bx, be = jb[j]
        if at == bt and ax == bx:
            out.append((at, ax, ae + be))
            i += 1
            j += 1
        elif (at, ax) < (bt, bx):
            out.append(ja[i])
            i += 1
        else:
            out.append(jb[j])
            j += 1
    out.extend(ja[i:])
    out.extend(jb[j:])
    return tuple(out)


def mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for (ta, xa, ja), ca in a.items():
        for (tb, xb, jb), cb in b.items():
            _acc(out, (ta + tb, xa + xb, _merge_jets(ja, jb)), ca * cb)
    return out


def pow_(a, n):
    if n == 0:
        return {ONE_MONO: _ONE}
    if n == 1:
        return dict(a)
    half = pow_(a, n // 2)
    sq = mul(half, half)
    return mul(sq, a) if n % 2 else sq


def diff_t(a):
    """Partial derivative with respect to the explicit variable t."""
    out = {}
    for (t, x, jets), coeff in a.items():
        if t:
            _acc(out, (t - 1, x, jets), coeff * t)
    return out


def diff_x(a):
    out = {}
    for (t, x, jets), coeff in a.items():
        if x:
            _acc(out, (t, x - 1, jets), coeff * x)
    return out


def diff_jet(a, nt, nx):
    """Partial derivative with respect to the jet variable u_(nt,nx)."""
    out = {}
    for (t, x, jets), coeff in a.items():
        for i, (jt, jx, e) in enumerate(jets):
            if jt == nt and jx == nx:
                if e == 1:
                    nj = jets[:i] + jets[i + 1 :]
                else:
                    nj = jets[:i] + ((jt, jx, e - 1),) + jets[i + 1 :]
                _acc(out, (t, x, nj), coeff * e)
                break
    return out


def _jets_step(jets, i, dt, dx):
    """Differentiate the i-th jet factor once: its exponent drops by one
    and the raised jet (nt+dt, nx+dx) gains one, keeping the sort order."""
    jt, jx, e = jets[i]
    if e == 1:
        base = jets[:i] + jets[i + 1 :]
    else:
        base = jets[:i] + ((jt, jx, e - 1),) + jets[i + 1 :]
    rt = jt + dt
    rx = jx + dx
    out = []
    placed = False
    for bt, bx, be in base:
        if not placed:
            if bt == rt and bx == rx:
                out.append((bt, bx, be + 1))
                placed = True
                continue
            if (bt, bx) > (rt, rx):
                out.append((rt, rx, 1))
                placed = True
        out.append((bt, bx, be))
    if not placed:
        out.append((rt, rx, 1))
    return tuple(out)


def total_t(a):
    """Total derivative D_t: explicit t plus the chain rule over jets."""
    out = {}
    for (t, x, jets), coeff in a.items():
        if t:
            _acc(out, (t - 1, x, jets), coeff * t)
        for i in range(len(jets)):
            e = jets[i][2]
            _acc(out, (t, x, _jets_step(jets, i, 1, 0)), coeff * e)
    return out


def total_x(a):
    out = {}
    for (t, x, jets), coeff in a.items():
        if x:
            _acc(out, (t, x - 1, jets), coeff * x)
        for i in range(len(jets)):
            e = jets[i][2]
            _acc(out, (t, x, _jets_step(jets, i, 0, 1)), coeff * e)
    return out


def rref(rows):
    """Reduced row echelon form over Fraction, returning (rows, pivot_cols).

    Gauss-Jordan with exact arithmetic.  The pivot in each column is the
    candidate of smallest representation size (bit length of numerator
    plus denominator), which keeps intermediate coefficients small; ties
    go to the lowest row index, so the result is deterministic.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivot_cols = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_key = 0
        for i in range(r, nrows):
            v = m[i][c]
            if v:
                key = v.numerator.bit_length() + v.denominator.bit_length()
                if best < 0 or key < best_key:
                    best = i
                    best_key = key
        if best < 0:
            continue
        m[r], m[best] = m[best], m[r]
        row_r = m[r]
        pv = row_r[c]
        if pv != _ONE:
            inv = _ONE / pv
            for k in range(c, ncols):
                if row_r[k]:
                    row_r[k] = row_r[k] * inv
        for i in range(nrows):
            if i == r:
                continue
            f = m[i][c]
            if f:
                row_i = m[i]
                for k in range(c, ncols):
                    if row_r[k]:
                        row_i[k] = row_i[k] - f * row_r[k]
        pivot_cols.append(c)
        r += 1
    return m, pivot_cols
