"""Exact intersection of plane segments given by float endpoints."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels


def _fr(z: complex) -> tuple[Fraction, Fraction]:
    return Fraction(float(z.real)), Fraction(float(z.imag))


def _cross(ax, ay, bx, by) -> Fraction:
    return ax * by - ay * bx


@dataclass(frozen=True)
class Crossing:
    i: int          # segment index on the first polyline
    j: int          # segment index on the second polyline
    s: Fraction     # parameter along segment i
    t: Fraction     # parameter along segment j
    point: complex
    sign: int       # sign of cross(direction_i, direction_j); 0 if collinear overlap


def segment_intersection(p0: complex, p1: complex, q0: complex, q1: complex):
    """Exact intersection of closed segments ``[p0, p1]`` and ``[q0, q1]``.

    Returns ``None``, or ``(s, t, sign)`` with the unique intersection at parameters s, t
    (``sign`` of the direction cross product), or ``"overlap"`` for collinear overlap.
    """
    ax, ay = _fr(p0)
    bx, by = _fr(p1)
    cx, cy = _fr(q0)
    dx, dy = _fr(q1)
    rx, ry = bx - ax, by - ay
    sx, sy = dx - cx, dy - cy
    denom = _cross(rx, ry, sx, sy)
    qpx, qpy = cx - ax, cy - ay
    if denom == 0:
        if _cross(qpx, qpy, rx, ry) != 0:
            return None
        # collinear: check projection overlap
        rr = rx * rx + ry * ry
        if rr == 0:
            return None
        t0 = (qpx * rx + qpy * ry) / rr
        t1 = t0 + (sx * rx + sy * ry) / rr
        lo, hi = min(t0, t1), max(t0, t1)
        if hi < 0 or lo > 1:
            return None
        return "overlap"
    s = _cross(qpx, qpy, sx, sy) / denom
    t = _cross(qpx, qpy, rx, ry) / denom
    if 0 <= s <= 1 and 0 <= t <= 1:
        return s, t, 1 if denom > 0 else -1
    return None


def polyline_crossings(P: np.ndarray, Q: np.ndarray, same: bool = False) -> list:
    """All intersections between segments of polylines ``P`` and ``Q``.

    With ``same=True`` the two arguments are the same polyline and intersections between
    consecutive segments at their shared vertex are skipped. Collinear overlaps are reported
    with ``sign = 0`` and parameters ``s = t = -1``.
    """
    P = np.asarray(P, dtype=np.complex128)
    Q = np.asarray(Q, dtype=np.complex128)
    if len(P) < 2 or len(Q) < 2:
        return []
    scale = max(float(np.max(np.abs(P))), float(np.max(np.abs(Q))), 1.0)
    cand = _kernels.segment_candidates(P[:-1], P[1:], Q[:-1], Q[1:], 1e-12 * scale)
    out = []
    for i, j in cand:
        i = int(i)
        j = int(j)
        if same and j <= i:
            continue
        r = segment_intersection(P[i], P[i + 1], Q[j], Q[j + 1])
        if r is None:
            continue
        if same and j == i + 1 and r != "overlap" and r[0] == 1 and r[1] == 0:
            continue
        if r == "overlap":
            if same and j == i + 1:
                # consecutive collinear segments folding back on themselves
                d1 = P[i + 1] - P[i]
                d2 = P[j + 1] - P[j]
                if (d1 * d2.conjugate()).real > 0:
                    continue
            out.append(Crossing(i, j, Fraction(-1), Fraction(-1), complex(P[i]), 0))
            continue
        s, t, sign = r
        pt = complex(P[i] + float(s) * (P[i + 1] - P[i]))
        out.append(Crossing(i, j, s, t, pt, sign))
    return out


def winding_number(P: np.ndarray, point: complex) -> int:
    """Winding number of the closed polyline ``P`` around ``point``."""
    w = np.asarray(P, dtype=np.complex128) - point
    if np.any(w == 0):
        raise ValueError("point lies on the curve")
    ang = np.angle(w[1:] / w[:-1])
    return int(round(float(np.sum(ang)) / (2 * np.pi)))


def distance_to_polyline(P: np.ndarray, point: complex) -> float:
    P = np.asarray(P, dtype=np.complex128)
    a, b = P[:-1], P[1:]
    d = b - a
    dd = np.abs(d) ** 2
    t = np.where(dd > 0, ((point - a) * d.conjugate()).real / np.where(dd > 0, dd, 1), 0.0)
    t = np.clip(t, 0.0, 1.0)
    return float(np.min(np.abs(a + t * d - point)))
