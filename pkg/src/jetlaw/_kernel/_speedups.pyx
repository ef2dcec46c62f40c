# cython: language_level=3
"""Compiled twin of jetlaw._kernel.pure.

Same representation, same functions, same outputs; see pure.py for the
documentation of the monomial encoding.  The speed comes from doing
coefficient arithmetic directly on numerator/denominator integer pairs
(one gcd-normalization per result instead of the full Fraction protocol
per intermediate) and from Cython loop compilation.  Results are
ordinary Fraction objects; when the running fractions implementation
admits it, they are built by filling the slots of Fraction.__new__
directly, with a correctness probe at import time and a constructor
fallback otherwise.

Keep this file in sync with pure.py: the test suite cross-checks the
two backends on randomized inputs.
"""

from fractions import Fraction
from math import gcd

ONE_MONO = (0, 0, ())

cdef object _Fraction = Fraction
cdef bint _FAST_FRACTION

try:
    _probe = _Fraction.__new__(_Fraction)
    _probe._numerator = 3
    _probe._denominator = 2
    _FAST_FRACTION = (
        _probe == _Fraction(3, 2)
        and _probe + _probe == _Fraction(3, 1)
        and hash(_probe) == hash(_Fraction(3, 2))
    )
except (AttributeError, TypeError):
    _FAST_FRACTION = False


cdef inline object _frac(object n, object d):
    """Fraction n/d for already-reduced n, d with d > 0."""
    if _FAST_FRACTION:
        f = _Fraction.__new__(_Fraction)
        f._numerator = n
        f._denominator = d
        return f
    return _Fraction(n, d)


cdef inline object _frac_reduce(object n, object d):
    """Fraction n/d, reducing and fixing the sign of d."""
    if d < 0:
        n = -n
        d = -d
    g = gcd(n, d)
    if g > 1:
        n = n // g
        d = d // g
    return _frac(n, d)


cdef inline object _mul_frac(object a, object b):
    """Exact product of two Fractions via integer pairs."""
    na = a.numerator
    da = a.denominator
    nb = b.numerator
    db = b.denominator
    g1 = gcd(na, db)
    if g1 > 1:
        na = na // g1
        db = db // g1
    g2 = gcd(nb, da)
    if g2 > 1:
        nb = nb // g2
        da = da // g2
    return _frac(na * nb, da * db)


cdef inline object _add_frac(object a, object b):
    """Exact sum of two Fractions via integer pairs (Knuth's method)."""
    na = a.numerator
    da = a.denominator
    nb = b.numerator
    db = b.denominator
    g = gcd(da, db)
    if g == 1:
        return _frac(na * db + nb * da, da * db)
    s = da // g
    t = na * (db // g) + nb * s
    g2 = gcd(t, g)
    if g2 == 1:
        return _frac(t, s * db)
    return _frac(t // g2, s * (db // g2))


cdef inline object _mul_frac_int(object a, object k):
    """Exact product of a Fraction and a Python int."""
    da = a.denominator
    g = gcd(k, da)
    if g > 1:
        k = k // g
        da = da // g
    return _frac(a.numerator * k, da)


cdef inline void _acc(dict out, tuple mono, object coeff) except *:
    s = out.get(mono)
    if s is None:
        out[mono] = coeff
    else:
        s = _add_frac(s, coeff)
        if s:
            out[mono] = s
        else:
            del out[mono]


def add(a, b):
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    cdef dict out = dict(a)
    for mono, coeff in (<dict> b).items():
        _acc(out, <tuple> mono, coeff)
    return out


def sub(a, b):
    cdef dict out = dict(a)
    for mono, coeff in (<dict> b).items():
        _acc(out, <tuple> mono, -coeff)
    return out


def neg(a):
    cdef dict out = {}
    for mono, coeff in (<dict> a).items():
        out[mono] = -coeff
    return out


def scale(a, c):
    if not c:
        return {}
    cdef dict out = {}
    for mono, coeff in (<dict> a).items():
        out[mono] = _mul_frac(coeff, c)
    return out


cdef tuple _merge_jets(tuple ja, tuple jb):
    if not ja:
        return jb
    if not jb:
        return ja
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0, na = len(ja), nb = len(jb)
    cdef int at, ax, ae, bt, bx, be
    while i < na and j < nb:
        at, ax, ae = <tuple> ja[i]
        bt, bx, be = <tuple> jb[j]
        if at == bt and ax == bx:
            out.append((at, ax, ae + be))
            i += 1
            j += 1
        elif at < bt or (at == bt and ax < bx):
            out.append(ja[i])
            i += 1
        else:
            out.append(jb[j])
            j += 1
    while i < na:
        out.append(ja[i])
        i += 1
    while j < nb:
        out.append(jb[j])
        j += 1
    return tuple(out)


def mul(a, b):
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    cdef dict out = {}
    cdef int ta, xa, tb, xb
    cdef tuple ja, jb, mono
    for ma, ca in (<dict> a).items():
        ta, xa, ja = <tuple> ma
        for mb, cb in (<dict> b).items():
            tb, xb, jb = <tuple> mb
            mono = (ta + tb, xa + xb, _merge_jets(ja, jb))
            _acc(out, mono, _mul_frac(ca, cb))
    return out


def pow_(a, n):
    if n == 0:
        return {ONE_MONO: _frac(1, 1)}
    if n == 1:
        return dict(a)
    half = pow_(a, n // 2)
    sq = mul(half, half)
    return mul(sq, a) if n % 2 else sq


def diff_t(a):
    cdef dict out = {}
    cdef int t, x
    cdef tuple jets
    for mono, coeff in (<dict> a).items():
        t, x, jets = <tuple> mono
        if t:
            _acc(out, (t - 1, x, jets), _mul_frac_int(coeff, t))
    return out


def diff_x(a):
    cdef dict out = {}
    cdef int t, x
    cdef tuple jets
    for mono, coeff in (<dict> a).items():
        t, x, jets = <tuple> mono
        if x:
            _acc(out, (t, x - 1, jets), _mul_frac_int(coeff, x))
    return out


def diff_jet(a, nt, nx):
    cdef dict out = {}
    cdef int t, x, jt, jx, e
    cdef int mt = nt, mx = nx
    cdef Py_ssize_t i
    cdef tuple jets, nj
    for mono, coeff in (<dict> a).items():
        t, x, jets = <tuple> mono
        for i in range(len(jets)):
            jt, jx, e = <tuple> jets[i]
            if jt == mt and jx == mx:
                if e == 1:
                    nj = jets[:i] + jets[i + 1:]
                else:
                    nj = jets[:i] + ((jt, jx, e - 1),) + jets[i + 1:]
                _acc(out, (t, x, nj), _mul_frac_int(coeff, e))
                break
    return out


cdef tuple _jets_step(tuple jets, Py_ssize_t i, int dt, int dx):
    cdef int jt, jx, e, rt, rx, bt, bx, be
    jt, jx, e = <tuple> jets[i]
    cdef tuple base
    if e == 1:
        base = jets[:i] + jets[i + 1:]
    else:
        base = jets[:i] + ((jt, jx, e - 1),) + jets[i + 1:]
    rt = jt + dt
    rx = jx + dx
    cdef list out = []
    cdef bint placed = False
    for item in base:
        bt, bx, be = <tuple> item
        if not placed:
            if bt == rt and bx == rx:
                out.append((bt, bx, be + 1))
                placed = True
                continue
            if bt > rt or (bt == rt and bx > rx):
                out.append((rt, rx, 1))
                placed = True
        out.append(item)
    if not placed:
        out.append((rt, rx, 1))
    return tuple(out)


def total_t(a):
    cdef dict out = {}
    cdef int t, x, e
    cdef Py_ssize_t i
    cdef tuple jets
    for mono, coeff in (<dict> a).items():
        t, x, jets = <tuple> mono
        if t:
            _acc(out, (t - 1, x, jets), _mul_frac_int(coeff, t))
        for i in range(len(jets)):
            e = (<tuple> jets[i])[2]
            _acc(out, (t, x, _jets_step(jets, i, 1, 0)), _mul_frac_int(coeff, e))
    return out


def total_x(a):
    cdef dict out = {}
    cdef int t, x, e
    cdef Py_ssize_t i
    cdef tuple jets
    for mono, coeff in (<dict> a).items():
        t, x, jets = <tuple> mono
        if x:
            _acc(out, (t, x - 1, jets), _mul_frac_int(coeff, x))
        for i in range(len(jets)):
            e = (<tuple> jets[i])[2]
            _acc(out, (t, x, _jets_step(jets, i, 0, 1)), _mul_frac_int(coeff, e))
    return out


cdef inline object _sub_mul(object a, object f, object b):
    """a - f*b exactly, via integer pairs."""
    return _add_frac(a, _mul_frac(-f, b))


def rref(rows):
    """Reduced row echelon form over Fraction; see pure.rref.

    Same pivot rule as the pure kernel: smallest numerator-plus-
    denominator bit length, ties to the lowest row index.
    """
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols = len(<list> m[0]) if nrows else 0
    cdef list pivot_cols = []
    cdef Py_ssize_t r = 0, i, k, best
    cdef long key, best_key
    cdef list row_r, row_i
    one = _frac(1, 1)
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_key = 0
        for i in range(r, nrows):
            v = (<list> m[i])[c]
            if v:
                key = v.numerator.bit_length() + v.denominator.bit_length()
                if best < 0 or key < best_key:
                    best = i
                    best_key = key
        if best < 0:
            continue
        m[r], m[best] = m[best], m[r]
        row_r = <list> m[r]
        pv = row_r[c]
        if pv != one:
            inv = _frac_reduce(pv.denominator, pv.numerator)
            for k in range(c, ncols):
                if row_r[k]:
                    row_r[k] = _mul_frac(row_r[k], inv)
        for i in range(nrows):
            if i == r:
                continue
            row_i = <list> m[i]
            f = row_i[c]
            if f:
                for k in range(c, ncols):
                    if row_r[k]:
                        row_i[k] = _sub_mul(row_i[k], f, row_r[k])
        pivot_cols.append(c)
        r += 1
    return m, pivot_cols
