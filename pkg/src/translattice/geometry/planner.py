"""Loops around removed points and paths to critical values, as piecewise-linear curves."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ..errors import PlannerError
from .segments import distance_to_polyline, polyline_crossings, winding_number
from .special import SpecialPoints

ARC_SEGMENTS = 96
MAX_RETRIES = 8


@dataclass
class PLCurve:
    """``kind`` is ``"loop"`` (closed, based at the first vertex) or ``"path"`` (ends at ``target``)."""

    vertices: np.ndarray
    kind: str
    target: complex
    index: int
    label: str = ""

    @property
    def start(self) -> complex:
        return complex(self.vertices[0])

    def length(self) -> float:
        return float(np.sum(np.abs(np.diff(self.vertices))))

    def reversed(self) -> "PLCurve":
        return PLCurve(self.vertices[::-1].copy(), self.kind, self.target, self.index, self.label + "^-1")

    def then(self, other: "PLCurve") -> "PLCurve":
        if abs(self.vertices[-1] - other.vertices[0]) > 1e-12 * (1 + abs(other.vertices[0])):
            raise ValueError("curves do not compose")
        v = np.concatenate([self.vertices, other.vertices[1:]])
        return PLCurve(v, self.kind, self.target, self.index, f"{self.label}*{other.label}")


def _seg_distance(a: complex, b: complex, p: complex) -> float:
    d = b - a
    dd = abs(d) ** 2
    t = 0.0 if dd == 0 else max(0.0, min(1.0, ((p - a) * d.conjugate()).real / dd))
    return abs(a + t * d - p)


def _loop_radii(b: complex, removed: list[complex], pts: list[complex]) -> list[float]:
    """Teardrop radius per removed point: clear of b, of other special points and of other rays."""
    out = []
    for p in removed:
        others = [q for q in pts if q != p]
        r = abs(b - p) / 2
        if others:
            r = min(r, min(abs(p - q) for q in others) / 4)
            r = min(r, min(_seg_distance(b, q, p) for q in others) / 3)
            # the wedge between the two spokes must not swallow another special point
            dpsi = min(abs(cmath.phase((q - b) / (p - b))) for q in others)
            r = min(r, abs(b - p) * math.sin(min(dpsi, math.pi / 2)) / 2)
        out.append(r)
    return out


def _teardrop(b: complex, p: complex, r: float, half_angle: float, label: str, index: int) -> PLCurve:
    """Counterclockwise loop: spoke out, circle around ``p``, spoke back."""
    phi = cmath.phase(b - p)
    a0 = phi + half_angle
    a1 = phi - half_angle + 2 * math.pi
    m = max(16, int(ARC_SEGMENTS * (a1 - a0) / (2 * math.pi)))
    arc = [p + r * cmath.exp(1j * (a0 + (a1 - a0) * k / m)) for k in range(m + 1)]
    return PLCurve(np.array([b] + arc + [b], dtype=np.complex128), "loop", p, index, label)


def _plan(sp: SpecialPoints, seed: int) -> list[PLCurve]:
    b = sp.base_point
    pts = list(sp.removed) + list(sp.critical)
    ang = sorted(cmath.phase(q - b) for q in pts)
    gaps = [ang[i + 1] - ang[i] for i in range(len(ang) - 1)]
    if gaps and min(gaps) < 1e-9:
        raise PlannerError("two special points are seen from the base point in the same direction",
                           hint="supply a different base point")
    shrink = 0.8 ** seed
    radii = _loop_radii(b, list(sp.removed), pts)
    curves = []
    for i, p in enumerate(sp.removed):
        half = math.pi / 6 * (1 + 0.5 * (seed % 2))
        curves.append(_teardrop(b, p, radii[i] * shrink, half, f"loop[{i}]", i))
    for j, c in enumerate(sp.critical):
        curves.append(PLCurve(np.array([b, c], dtype=np.complex128), "path", c, j, f"path[{j}]"))
    return curves


def verify_plan(curves: list[PLCurve], sp: SpecialPoints) -> None:
    """Raise PlannerError unless the curves meet only at the base point and loops are lassos."""
    b = sp.base_point
    pts = list(sp.removed) + list(sp.critical)
    for c in curves:
        if abs(c.vertices[0] - b) > 0:
            raise PlannerError(f"{c.label} does not start at the base point")
        if c.kind == "loop":
            if abs(c.vertices[-1] - b) > 0:
                raise PlannerError(f"{c.label} is not closed")
            for q in pts:
                w = winding_number(c.vertices, q)
                expect = 1 if q == c.target else 0
                if w != expect:
                    raise PlannerError(f"{c.label} winds {w} times around {q}")
        else:
            if c.vertices[-1] != c.target:
                raise PlannerError(f"{c.label} does not end at its critical value")
        for q in pts:
            if q == c.target:
                continue
            if distance_to_polyline(c.vertices, q) <= 1e-9 * (1 + abs(q)):
                raise PlannerError(f"{c.label} passes through the special point {q}")
        # self-intersections
        last = len(c.vertices) - 2
        for x in polyline_crossings(c.vertices, c.vertices, same=True):
            if c.kind == "loop" and x.i == 0 and x.j == last and x.s == 0 and x.t == 1:
                continue
            raise PlannerError(f"{c.label} is not injective")
    for a in range(len(curves)):
        for bb in range(a + 1, len(curves)):
            A, B = curves[a], curves[bb]
            for x in polyline_crossings(A.vertices, B.vertices):
                if x.sign != 0 and _at_base(A, x.i, x.s) and _at_base(B, x.j, x.t):
                    continue
                raise PlannerError(f"{A.label} and {B.label} meet away from the base point")


def _at_base(c: PLCurve, seg: int, s) -> bool:
    n = len(c.vertices) - 1
    return (seg == 0 and s == 0) or (c.kind == "loop" and seg == n - 1 and s == 1)


def plan_paths(sp: SpecialPoints, seed: int = 0, retries: int = MAX_RETRIES) -> list[PLCurve]:
    """Loops (one per removed point) then paths (one per critical value), all based at ``b``."""
    last_err = None
    for attempt in range(retries):
        try:
            curves = _plan(sp, seed + attempt)
            verify_plan(curves, sp)
            return curves
        except PlannerError as err:
            last_err = err
    raise PlannerError(f"planner failed after {retries} attempts: {last_err}",
                       hint="supply an explicit base point")
