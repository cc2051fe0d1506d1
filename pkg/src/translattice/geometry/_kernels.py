"""Hot numerical kernels with a numba implementation and a numpy fallback.

Set ``TRANSLATTICE_DISABLE_NUMBA=1`` to force the numpy versions.
"""
from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("TRANSLATTICE_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on environment
    HAVE_NUMBA = False


# numpy reference versions


def coeffs_at_np(C: np.ndarray, z: complex):
    """``a[k] = sum_j C[k, j] z^j`` and its z-derivative."""
    nz = C.shape[1]
    powers = z ** np.arange(nz)
    a = C @ powers
    dpow = np.zeros(nz, dtype=np.complex128)
    if nz > 1:
        dpow[1:] = np.arange(1, nz) * z ** np.arange(nz - 1)
    return a, C @ dpow


def _polyval_pair(a: np.ndarray, y: np.ndarray):
    """Value and derivative of ``sum a[k] y^k`` at every entry of ``y`` (Horner)."""
    p = np.full(y.shape, a[-1], dtype=np.complex128)
    dp = np.zeros(y.shape, dtype=np.complex128)
    for k in range(len(a) - 2, -1, -1):
        dp = dp * y + p
        p = p * y + a[k]
    return p, dp


def velocity_np(a, da, y):
    """``dy/dz = -B_z / B_y`` at each root."""
    _, by = _polyval_pair(a, y)
    bz, _ = _polyval_pair(da, y)
    return -bz / by


NOISE_FACTOR = 32.0
EPS = float(np.finfo(np.float64).eps)


def newton_np(a, y0, maxit: int, tol: float):
    """Newton on every root until each correction is below ``tol`` or the rounding-error bound
    of the polynomial evaluation at that root.

    Returns ``(y, last_corr, first_corr, iters, ok)``.
    """
    y = y0.astype(np.complex128).copy()
    first = 0.0
    last = np.inf
    absa = np.abs(a)
    for it in range(1, maxit + 1):
        p, dp = _polyval_pair(a, y)
        if np.any(dp == 0):
            return y, np.inf, np.inf, it, False
        corr = p / dp
        y = y - corr
        mag = np.abs(corr)
        c = float(np.max(mag))
        if it == 1:
            first = c
        last = c
        ay = np.abs(y)
        noise = np.zeros(y.shape)
        for k in range(len(a) - 1, -1, -1):
            noise = noise * ay + absa[k]
        noise = NOISE_FACTOR * EPS * noise / np.abs(dp)
        if np.all(mag <= np.maximum(tol, noise)):
            return y, last, first, it, True
    return y, last, first, maxit, False


def min_gap_np(y):
    d = np.abs(y[:, None] - y[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def segment_candidates_np(P0, P1, Q0, Q1, margin):
    """Index pairs ``(i, j)`` whose segment bounding boxes overlap (up to ``margin``)."""
    px0 = np.minimum(P0.real, P1.real)[:, None] - margin
    px1 = np.maximum(P0.real, P1.real)[:, None] + margin
    py0 = np.minimum(P0.imag, P1.imag)[:, None] - margin
    py1 = np.maximum(P0.imag, P1.imag)[:, None] + margin
    qx0 = np.minimum(Q0.real, Q1.real)[None, :]
    qx1 = np.maximum(Q0.real, Q1.real)[None, :]
    qy0 = np.minimum(Q0.imag, Q1.imag)[None, :]
    qy1 = np.maximum(Q0.imag, Q1.imag)[None, :]
    hit = (px0 <= qx1) & (qx0 <= px1) & (py0 <= qy1) & (qy0 <= py1)
    i, j = np.nonzero(hit)
    return np.stack([i, j], axis=1).astype(np.int64)


# numba versions

if HAVE_NUMBA:

    @njit(cache=True)
    def coeffs_at_nb(C, z):
        n, nz = C.shape
        a = np.zeros(n, dtype=np.complex128)
        da = np.zeros(n, dtype=np.complex128)
        for k in range(n):
            p = C[k, nz - 1]
            dp = 0j
            for j in range(nz - 2, -1, -1):
                dp = dp * z + p
                p = p * z + C[k, j]
            a[k] = p
            da[k] = dp
        return a, da

    @njit(cache=True)
    def _horner_nb(a, y):
        p = a[len(a) - 1]
        dp = 0j
        for k in range(len(a) - 2, -1, -1):
            dp = dp * y + p
            p = p * y + a[k]
        return p, dp

    @njit(cache=True)
    def velocity_nb(a, da, y):
        out = np.empty(len(y), dtype=np.complex128)
        for i in range(len(y)):
            _, by = _horner_nb(a, y[i])
            bz, _ = _horner_nb(da, y[i])
            out[i] = -bz / by
        return out

    @njit(cache=True)
    def newton_nb(a, y0, maxit, tol):
        y = y0.copy()
        first = 0.0
        last = np.inf
        eps = np.finfo(np.float64).eps
        for it in range(1, maxit + 1):
            c = 0.0
            done = True
            for i in range(len(y)):
                p, dp = _horner_nb(a, y[i])
                if dp == 0:
                    return y, np.inf, np.inf, it, False
                corr = p / dp
                y[i] = y[i] - corr
                m = abs(corr)
                if m > c:
                    c = m
                ay = abs(y[i])
                noise = 0.0
                for k in range(len(a) - 1, -1, -1):
                    noise = noise * ay + abs(a[k])
                noise = NOISE_FACTOR * eps * noise / abs(dp)
                if m > max(tol, noise):
                    done = False
            if it == 1:
                first = c
            last = c
            if done:
                return y, last, first, it, True
        return y, last, first, maxit, False

    @njit(cache=True)
    def min_gap_nb(y):
        g = np.inf
        for i in range(len(y)):
            for j in range(i + 1, len(y)):
                d = abs(y[i] - y[j])
                if d < g:
                    g = d
        return g

    @njit(cache=True)
    def segment_candidates_nb(P0, P1, Q0, Q1, margin):
        m = len(Q0)
        qx0 = np.empty(m)
        qx1 = np.empty(m)
        qy0 = np.empty(m)
        qy1 = np.empty(m)
        for j in range(m):
            qx0[j] = min(Q0[j].real, Q1[j].real)
            qx1[j] = max(Q0[j].real, Q1[j].real)
            qy0[j] = min(Q0[j].imag, Q1[j].imag)
            qy1[j] = max(Q0[j].imag, Q1[j].imag)
        # two passes (count, then fill) keep the inner loop free of reallocation
        cnt = 0
        out = np.empty((0, 2), dtype=np.int64)
        for fill in range(2):
            for i in range(len(P0)):
                ax0 = min(P0[i].real, P1[i].real) - margin
                ax1 = max(P0[i].real, P1[i].real) + margin
                ay0 = min(P0[i].imag, P1[i].imag) - margin
                ay1 = max(P0[i].imag, P1[i].imag) + margin
                for j in range(m):
                    if ax0 <= qx1[j] and qx0[j] <= ax1 and ay0 <= qy1[j] and qy0[j] <= ay1:
                        if fill:
                            out[cnt, 0] = i
                            out[cnt, 1] = j
                        cnt += 1
            if fill == 0:
                out = np.empty((cnt, 2), dtype=np.int64)
                cnt = 0
        return out

    coeffs_at = coeffs_at_nb
    velocity = velocity_nb
    newton = newton_nb
    min_gap = min_gap_nb
    segment_candidates = segment_candidates_nb
else:
    coeffs_at = coeffs_at_np
    velocity = velocity_np
    newton = newton_np
    min_gap = min_gap_np
    segment_candidates = segment_candidates_np

BACKEND = "numba" if HAVE_NUMBA else "numpy"
