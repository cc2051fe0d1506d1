"""Exact integer matrices: Smith and Hermite forms, saturated kernels."""
from __future__ import annotations

import numpy as np


def as_int_matrix(a) -> np.ndarray:
    """Copy into a 2-D object array of Python ints."""
    m = np.array(a, dtype=object)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    out = np.empty(m.shape, dtype=object)
    for idx, v in np.ndenumerate(m):
        iv = int(v)
        if iv != v:
            raise ValueError(f"non-integer entry {v!r}")
        out[idx] = iv
    return out


def identity(n: int) -> np.ndarray:
    out = _zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def _zeros(r, c) -> np.ndarray:
    out = np.empty((r, c), dtype=object)
    out.fill(0)
    return out


def smith_normal_form(a):
    """Return ``(D, U, V)`` with ``U @ A @ V == D`` diagonal, ``d_i | d_{i+1}``, ``d_i >= 0``.

    ``U`` and ``V`` are unimodular.
    """
    d = as_int_matrix(a)
    m, n = d.shape
    u = identity(m)
    v = identity(n)
    t = 0
    while t < min(m, n):
        nz = [(abs(d[i, j]), i, j) for i in range(t, m) for j in range(t, n) if d[i, j] != 0]
        if not nz:
            break
        _, i, j = min(nz)
        d[[t, i]] = d[[i, t]]
        u[[t, i]] = u[[i, t]]
        d[:, [t, j]] = d[:, [j, t]]
        v[:, [t, j]] = v[:, [j, t]]
        while True:
            done = True
            for i in range(t + 1, m):
                if d[i, t]:
                    q = d[i, t] // d[t, t]
                    d[i] = d[i] - q * d[t]
                    u[i] = u[i] - q * u[t]
                    if d[i, t]:
                        done = False
            for j in range(t + 1, n):
                if d[t, j]:
                    q = d[t, j] // d[t, t]
                    d[:, j] = d[:, j] - q * d[:, t]
                    v[:, j] = v[:, j] - q * v[:, t]
                    if d[t, j]:
                        done = False
            if done:
                # divisibility: every remaining entry must be a multiple of the pivot
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i, j] % d[t, t]]
                if not bad:
                    break
                i, _ = bad[0]
                d[t] = d[t] + d[i]
                u[t] = u[t] + u[i]
                continue
            # move the smallest nonzero entry of row/column t into the pivot
            cands = [(abs(d[i, t]), i, t) for i in range(t, m) if d[i, t]]
            cands += [(abs(d[t, j]), t, j) for j in range(t, n) if d[t, j]]
            _, i, j = min(cands)
            if i != t:
                d[[t, i]] = d[[i, t]]
                u[[t, i]] = u[[i, t]]
            if j != t:
                d[:, [t, j]] = d[:, [j, t]]
                v[:, [t, j]] = v[:, [j, t]]
        if d[t, t] < 0:
            d[t] = -d[t]
            u[t] = -u[t]
        t += 1
    return d, u, v


def smith_invariants(a) -> list[int]:
    d, _, _ = smith_normal_form(a)
    return [int(d[i, i]) for i in range(min(d.shape)) if d[i, i] != 0]


def rank(a) -> int:
    return len(smith_invariants(a))


def integer_kernel(a) -> np.ndarray:
    """Columns form a basis of the saturated lattice ``{x in Z^n : A x = 0}``."""
    d, _, v = smith_normal_form(a)
    r = sum(1 for i in range(min(d.shape)) if d[i, i] != 0)
    return np.ascontiguousarray(v[:, r:])


def hermite_normal_form(a):
    """Row-style HNF: returns ``(H, U)`` with ``U @ A == H``, ``U`` unimodular.

    ``H`` is upper echelon, pivots positive, entries above a pivot reduced into ``[0, pivot)``.
    """
    h = as_int_matrix(a)
    m, n = h.shape
    u = identity(m)
    row = 0
    for col in range(n):
        if row >= m:
            break
        while True:
            nz = [(abs(h[i, col]), i) for i in range(row, m) if h[i, col]]
            if not nz:
                break
            _, p = min(nz)
            h[[row, p]] = h[[p, row]]
            u[[row, p]] = u[[p, row]]
            clean = True
            for i in range(row + 1, m):
                if h[i, col]:
                    q = h[i, col] // h[row, col]
                    h[i] = h[i] - q * h[row]
                    u[i] = u[i] - q * u[row]
                    if h[i, col]:
                        clean = False
            if clean:
                break
        if h[row, col] == 0:
            continue
        if h[row, col] < 0:
            h[row] = -h[row]
            u[row] = -u[row]
        for i in range(row):
            q = h[i, col] // h[row, col]
            h[i] = h[i] - q * h[row]
            u[i] = u[i] - q * u[row]
        row += 1
    return h, u


def det(a) -> int:
    """Exact determinant (fraction-free Bareiss)."""
    m = as_int_matrix(a)
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = [list(r) for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_unimodular(a) -> bool:
    m = as_int_matrix(a)
    return m.shape[0] == m.shape[1] and abs(det(m)) == 1


def saturate(rows) -> np.ndarray:
    """Rows spanning ``(span_Q rows) ∩ Z^n``."""
    a = as_int_matrix(rows)
    ker = integer_kernel(a)
    if ker.shape[1] == 0:
        return identity(a.shape[1])
    return np.ascontiguousarray(integer_kernel(ker.T).T)


def unimodular_inverse(a) -> np.ndarray:
    """Exact inverse of a unimodular integer matrix."""
    from fractions import Fraction

    m = as_int_matrix(a)
    n = m.shape[0]
    if m.shape != (n, n) or abs(det(m)) != 1:
        raise ValueError("matrix is not unimodular")
    aug = [[Fraction(int(m[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = _zeros(n, n)
    for i in range(n):
        for j in range(n):
            v = aug[i][n + j]
            assert v.denominator == 1
            out[i, j] = int(v)
    return out
