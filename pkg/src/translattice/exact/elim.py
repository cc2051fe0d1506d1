"""Resultants, discriminants and gcds in K[x1..xn], K = Q(sqrt d)."""
from __future__ import annotations

from .poly import MPoly
from .quad import QuadElem

__all__ = [
    "resultant",
    "sylvester_resultant",
    "discriminant",
    "gcd",
    "squarefree_part",
    "content",
    "primitive_part",
    "prem",
    "is_squarefree",
]


def _dense(f: MPoly, var: str) -> list[MPoly]:
    cs = f.coeffs_in(var)
    n = max(cs) if cs else -1
    zero = MPoly.zero(f.vars, f.d)
    return [cs.get(k, zero) for k in range(n + 1)]


def _undense(coeffs: list[MPoly], var: str, vars, d) -> MPoly:
    return MPoly.from_univariate({k: c for k, c in enumerate(coeffs) if c}, var, vars, d)


def _trim(a: list[MPoly]) -> list[MPoly]:
    while a and not a[-1]:
        a.pop()
    return a


def _prem_dense(a: list[MPoly], b: list[MPoly]) -> list[MPoly]:
    """Pseudo-remainder of dense coefficient lists (``b`` nonzero)."""
    r = list(a)
    _trim(r)
    db = len(b) - 1
    lb = b[db]
    e = len(r) - 1 - db + 1
    while len(r) - 1 >= db and r:
        k = len(r) - 1 - db
        c = r[-1]
        r = [x * lb for x in r]
        for i in range(db + 1):
            if b[i]:
                r[i + k] = r[i + k] - c * b[i]
        _trim(r)
        e -= 1
    if e > 0 and r:
        m = lb ** e
        r = [x * m for x in r]
    return r


def prem(f: MPoly, g: MPoly, var: str) -> MPoly:
    b = _trim(_dense(g, var))
    if not b:
        raise ZeroDivisionError("pseudo-division by zero")
    return _undense(_prem_dense(_dense(f, var), b), var, f.vars, f.d or g.d)


def resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Resultant in ``var`` by the subresultant pseudo-remainder sequence."""
    if f.vars != g.vars:
        raise ValueError("resultant of polynomials in different rings")
    d = f.d or g.d
    zero = MPoly.zero(f.vars, d)
    one = MPoly.const(1, f.vars, d)
    if not f or not g:
        return zero
    a = _trim(_dense(f, var))
    b = _trim(_dense(g, var))
    da, db = len(a) - 1, len(b) - 1
    if da == 0 and db == 0:
        raise ValueError(f"both polynomials are constant in {var}")
    s = 1
    if da < db:
        a, b = b, a
        if da % 2 and db % 2:
            s = -1
        da, db = db, da
    if db == 0:
        return b[0] ** da * s
    g_ = one
    h = one
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        r = _prem_dense(a, b)
        a = b
        if not r:
            return zero
        div = g_ * h ** delta
        b = [c.exact_div(div) for c in r]
        g_ = a[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g_
        else:
            h = (g_ ** delta).exact_div(h ** (delta - 1))
        if len(b) - 1 <= 0:
            break
    da = len(a) - 1
    lb = b[-1]
    if da == 0:
        out = h
    elif da == 1:
        out = lb
    else:
        out = (lb ** da).exact_div(h ** (da - 1))
    return out * s


def _bareiss_det(m: list[list[MPoly]], zero: MPoly, one: MPoly) -> MPoly:
    n = len(m)
    if n == 0:
        return one
    m = [list(row) for row in m]
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_resultant(f: MPoly, g: MPoly, var: str) -> MPoly:
    """Resultant as the determinant of the Sylvester matrix (fraction-free Bareiss)."""
    d = f.d or g.d
    zero = MPoly.zero(f.vars, d)
    one = MPoly.const(1, f.vars, d)
    a = _trim(_dense(f, var))
    b = _trim(_dense(g, var))
    if not a or not b:
        return zero
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    if size == 0:
        return one
    rows = []
    for i in range(n):
        row = [zero] * size
        for k, c in enumerate(reversed(a)):
            row[i + k] = c
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k, c in enumerate(reversed(b)):
            row[i + k] = c
        rows.append(row)
    return _bareiss_det(rows, zero, one)


def discriminant(f: MPoly, var: str) -> MPoly:
    """``(-1)^(n(n-1)/2) * Res(f, df/dvar) / lc(f)``."""
    n = f.degree(var)
    if n < 1:
        raise ValueError(f"polynomial has no positive degree in {var}")
    if n == 1:
        return MPoly.const(1, f.vars, f.d)
    r = resultant(f, f.diff(var), var)
    r = r.exact_div(f.lc_in(var))
    return -r if (n * (n - 1) // 2) % 2 else r


def _monic(f: MPoly) -> MPoly:
    if not f:
        return f
    return f / f.leading_term()[1]


def _first_var(*polys: MPoly):
    vars = polys[0].vars
    for v in vars:
        for p in polys:
            if p.degree(v) > 0:
                return v
    return None


def content(f: MPoly, var: str) -> MPoly:
    """gcd of the coefficients of ``f`` viewed as a polynomial in ``var`` (monic)."""
    result = MPoly.zero(f.vars, f.d)
    for c in f.coeffs_in(var).values():
        result = gcd(result, c)
        if result.is_constant() and result:
            break
    return result


def primitive_part(f: MPoly, var: str) -> MPoly:
    if not f:
        return f
    return f.exact_div(content(f, var))


def gcd(f: MPoly, g: MPoly) -> MPoly:
    """Monic (lex-leading coefficient 1) greatest common divisor."""
    if f.vars != g.vars:
        raise ValueError("gcd of polynomials in different rings")
    if not f:
        return _monic(g)
    if not g:
        return _monic(f)
    d = f.d or g.d
    v = _first_var(f, g)
    if v is None:
        return MPoly.const(1, f.vars, d)
    if f.degree(v) <= 0:
        return gcd(f, content(g, v))
    if g.degree(v) <= 0:
        return gcd(content(f, v), g)
    cf = content(f, v)
    cg = content(g, v)
    c = gcd(cf, cg)
    a = _dense(f.exact_div(cf), v)
    b = _dense(g.exact_div(cg), v)
    _trim(a)
    _trim(b)
    if len(a) < len(b):
        a, b = b, a
    while True:
        r = _prem_dense(a, b)
        if not r:
            break
        if len(r) == 1:
            return _monic(c)
        rp = _undense(r, v, f.vars, d)
        a, b = b, _trim(_dense(primitive_part(rp, v), v))
    gb = primitive_part(_undense(b, v, f.vars, d), v)
    return _monic(gb * c)


def squarefree_part(f: MPoly, var: str) -> MPoly:
    """``f / gcd(f, df/dvar)``."""
    if not f:
        raise ValueError("squarefree part of zero")
    df = f.diff(var)
    if not df:
        return f / f.leading_term()[1] if f.is_constant() else f
    return f.exact_div(gcd(f, df))


def is_squarefree(f: MPoly) -> bool:
    """True iff no nonconstant factor of ``f`` occurs squared."""
    if not f:
        return False
    for v in f.free_vars():
        g = gcd(f, f.diff(v))
        if g.degree(v) > 0:
            return False
    return True
