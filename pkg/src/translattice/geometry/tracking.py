"""Continuation of the fiber roots along planned curves and braid-word extraction.

Strands are ordered by ``Re(y * exp(-i*theta))`` (the projection). When the strands at positions
k, k+1 (1-based) exchange, the letter ``(k, +1)`` is recorded if the left strand passes on the
side of larger ``Im(y * exp(-i*theta))``, i.e. a clockwise half-twist; ``(k, -1)`` otherwise.
With the fiber conventions of :mod:`translattice.fiberhom`, ``(k, +1)`` acts on homology by
``x -> x + <x, c_k> c_k``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import AssumptionViolation, TrackingError
from . import _kernels
from .planner import PLCurve
from .problem import BranchProblem

MAX_NEWTON = 4
NEWTON_REL_TOL = 1e-9
H_MAX = 1.0 / 16
H_MIN = 1e-13
COLLISION_TOL = 1e-6
THETAS = tuple(0.0731 * k for k in range(14))


class NonGenericProjection(Exception):
    """The projection direction produced a tie; the caller should pick another direction."""


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for k, e in self.letters:
            if not 1 <= k <= self.n - 1 or e not in (1, -1):
                raise ValueError(f"invalid braid letter {(k, e)} for {self.n} strands")

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if other.n != self.n:
            raise ValueError("braid words on different strand counts")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, tuple((k, -e) for k, e in reversed(self.letters)))

    def permutation(self) -> tuple[int, ...]:
        """``perm[i]`` = final position of the strand starting at position ``i`` (0-based)."""
        at = list(range(self.n))  # at[pos] = strand
        for k, _ in self.letters:
            at[k - 1], at[k] = at[k], at[k - 1]
        perm = [0] * self.n
        for pos, strand in enumerate(at):
            perm[strand] = pos
        return tuple(perm)

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        if not self.letters:
            return "1"
        return " ".join(f"s{k}" if e > 0 else f"s{k}^-1" for k, e in self.letters)

    @classmethod
    def parse(cls, n: int, text: str) -> "BraidWord":
        letters = []
        for tok in text.split():
            if tok == "1":
                continue
            if not tok.startswith("s"):
                raise ValueError(f"bad braid letter {tok!r}")
            if tok.endswith("^-1"):
                letters.append((int(tok[1:-3]), -1))
            else:
                letters.append((int(tok[1:]), 1))
        return cls(n, tuple(letters))


@dataclass
class TrackedMotion:
    curve: PLCurve
    word: BraidWord
    theta: float
    start_roots: np.ndarray          # in start position order
    end_roots: np.ndarray            # strand-indexed (strand = start position)
    end_order: list[int]             # strands by end position
    permutation: tuple[int, ...]
    colliding: list[int] = field(default_factory=list)   # 0-based left positions of colliding pairs
    sheet_sign: int = 1              # (-1)^(winding of the leading coefficient) along the curve
    stop_distance: float = 0.0
    steps: int = 0
    rejected: int = 0
    min_separation_ratio: float = math.inf
    samples: list = field(default_factory=list, repr=False)


def _proj(y: np.ndarray, theta: float):
    w = y * cmath.exp(-1j * theta)
    return w.real, w.imag


def base_roots(prob: BranchProblem, b: complex) -> np.ndarray:
    """Fiber roots at ``b``, Newton-polished."""
    y0 = prob.roots_at(b).astype(np.complex128)
    a, _ = _kernels.coeffs_at(prob.coeff_array(), complex(b))
    y, _, _, _, ok = _kernels.newton(a, y0, 50, 0.0)
    if not ok or _kernels.min_gap(y) <= 0:
        raise TrackingError("could not resolve the base fiber roots")
    return y


def sorted_base(prob, b, theta) -> np.ndarray:
    y = base_roots(prob, b)
    x, _ = _proj(y, theta)
    order = np.argsort(x, kind="stable")
    xs = x[order]
    gap = _kernels.min_gap(y)
    if len(xs) > 1 and np.min(np.diff(xs)) < 1e-6 * gap:
        raise NonGenericProjection("projection tie in the base fiber")
    return y[order]


def track(prob: BranchProblem, curve: PLCurve, theta: float = 0.0, *,
          h_max: float = H_MAX, collision_tol: float = COLLISION_TOL,
          local_scale: float | None = None, keep_samples: bool = False,
          allow_multinode: bool = False) -> TrackedMotion:
    """Track all fiber roots along ``curve``; record the braid word of projection exchanges."""
    C = prob.coeff_array()
    y = sorted_base(prob, curve.start, theta)
    n = len(y)
    start = y.copy()
    order = list(range(n))          # order[pos] = strand
    letters: list[tuple[int, int]] = []
    verts = curve.vertices
    nseg = len(verts) - 1
    steps = rejected = 0
    min_ratio = math.inf
    samples = [(complex(verts[0]), y.copy())] if keep_samples else []
    approach: list[tuple[float, float]] = []
    stop_dist = 0.0
    if curve.kind == "path":
        if local_scale is None:
            local_scale = abs(verts[-1] - verts[-2])
        stop_dist = collision_tol * local_scale
    for s in range(nseg):
        z0, z1 = complex(verts[s]), complex(verts[s + 1])
        seglen = abs(z1 - z0)
        if seglen == 0:
            continue
        t_end = 1.0
        last = curve.kind == "path" and s == nseg - 1
        if last:
            t_end = 1.0 - stop_dist / seglen
            if t_end <= 0:
                raise TrackingError("collision tolerance exceeds the last path segment")
        t = 0.0
        h = min(h_max, t_end)
        z = z0
        a, da = _kernels.coeffs_at(C, z)
        while t_end - t > 1e-14:
            h = min(h, t_end - t)
            if h < H_MIN:
                raise TrackingError(f"step size underflow on {curve.label} at z={z}",
                                    hint="increase precision or move the base point")
            if t_end - (t + h) < 1e-14:
                h = t_end - t
            z_new = z0 + (t + h) * (z1 - z0)
            v = _kernels.velocity(a, da, y)
            y_pred = y + v * (z_new - z)
            a_new, da_new = _kernels.coeffs_at(C, z_new)
            gap_old = _kernels.min_gap(y)
            y_new, corr, first, iters, ok = _kernels.newton(a_new, y_pred, MAX_NEWTON, NEWTON_REL_TOL * gap_old)
            gap_new = _kernels.min_gap(y_new) if ok else 0.0
            moved = float(np.max(np.abs(y_new - y))) if ok else math.inf
            dev = float(np.max(np.abs(y_new - y_pred))) if ok else math.inf
            good = ok and gap_new > 0 and dev < gap_new / 3 and moved < gap_old / 4
            if good:
                events = _exchanges(y, y_new, order, theta, gap_old)
                if events is None:
                    good = False
            if not good:
                rejected += 1
                h /= 2
                continue
            for k, e, _ in events:
                letters.append((k + 1, e))
                order[k], order[k + 1] = order[k + 1], order[k]
            min_ratio = min(min_ratio, gap_new / max(dev, 1e-300))
            steps += 1
            t = t + h
            z, y, a, da = z_new, y_new, a_new, da_new
            if keep_samples:
                samples.append((z, y.copy()))
            if last:
                approach.append((abs(z1 - z), _pair_gaps(y, order)))
            if dev < gap_new / 12 and iters <= 2:
                h = min(2 * h, h_max)
    word = BraidWord(n, tuple(letters))
    perm = [0] * n
    for pos, strand in enumerate(order):
        perm[strand] = pos
    motion = TrackedMotion(curve, word, theta, start, y, list(order), tuple(perm),
                           stop_distance=stop_dist, steps=steps, rejected=rejected,
                           min_separation_ratio=min_ratio, samples=samples)
    if curve.kind == "path":
        motion.colliding = _colliding_pairs(approach, allow_multinode)
    else:
        motion.sheet_sign = -1 if leading_coefficient_winding(prob, verts) % 2 else 1
    return motion


def leading_coefficient_winding(prob: BranchProblem, verts: np.ndarray) -> int:
    """Winding number of the leading fiber coefficient around 0 along a closed polyline.

    The double cover ``w^2 = B`` changes sheets once per turn of ``lc(z)``; braids alone do not
    see this, so loop monodromies carry the extra sign.
    """
    lc = prob.coeff_array()[-1]
    if np.count_nonzero(lc) <= 1 and lc[0] != 0:
        return 0

    def val(z):
        return np.polyval(lc[::-1], z)

    total = 0.0
    for z0, z1 in zip(verts[:-1], verts[1:]):
        stack = [(complex(z0), complex(z1), val(z0), val(z1), 0)]
        while stack:
            a, b, fa, fb, depth = stack.pop()
            if fa == 0 or fb == 0:
                raise TrackingError("curve passes through a zero of the leading coefficient")
            step = cmath.phase(fb / fa)
            if abs(step) > math.pi / 8 and depth < 40:
                m = (a + b) / 2
                fm = val(m)
                stack.append((m, b, fm, fb, depth + 1))
                stack.append((a, m, fa, fm, depth + 1))
            else:
                total += step
    return int(round(total / (2 * math.pi)))


def _exchanges(y_old, y_new, order, theta, gap_old):
    """Ordered adjacent exchanges between two accepted states, or None if ambiguous."""
    x0, p0 = _proj(y_old, theta)
    x1, p1 = _proj(y_new, theta)
    n = len(order)
    events = []
    for i in range(n):
        for j in range(i + 1, n):
            d0 = x0[i] - x0[j]
            d1 = x1[i] - x1[j]
            if d0 == 0 or d1 == 0:
                return None
            if (d0 > 0) != (d1 > 0):
                tau = d0 / (d0 - d1)
                events.append((tau, i, j))
    events.sort()
    pos = {strand: k for k, strand in enumerate(order)}
    out = []
    for tau, i, j in events:
        if abs(pos[i] - pos[j]) != 1:
            return None
        left, right = (i, j) if pos[i] < pos[j] else (j, i)
        pl = p0[left] + tau * (p1[left] - p0[left])
        pr = p0[right] + tau * (p1[right] - p0[right])
        if abs(pl - pr) < gap_old / 4:
            return None
        k = pos[left]
        out.append((k, 1 if pl > pr else -1, tau))
        pos[left], pos[right] = k + 1, k
    # exchanges at (numerically) equal times must commute
    for a in range(len(out) - 1):
        if abs(out[a][2] - out[a + 1][2]) < 1e-9 and abs(out[a][0] - out[a + 1][0]) < 2:
            raise NonGenericProjection("simultaneous exchanges of overlapping strands")
    return out


def _pair_gaps(y, order):
    return [abs(y[order[k + 1]] - y[order[k]]) for k in range(len(order) - 1)]


def _colliding_pairs(approach, allow_multinode) -> list[int]:
    """Adjacent pairs whose gap shrinks like the square root of the distance to the critical value."""
    if not approach:
        raise TrackingError("no approach samples near the critical value")
    d_end, gaps_end = approach[-1]
    n1 = len(gaps_end)
    # reference sample at roughly 16 times the final distance
    ref = min(approach, key=lambda s: abs(math.log(s[0] / (16 * d_end))))
    d_ref, gaps_ref = ref
    expected = math.sqrt(d_ref / d_end)
    pairs = []
    for k in range(n1):
        if gaps_end[k] == 0:
            pairs.append(k)
            continue
        ratio = gaps_ref[k] / gaps_end[k]
        if expected > 1.5 and abs(ratio / expected - 1) < 0.25:
            pairs.append(k)
    if not pairs:
        # closest pair may be non-adjacent in the projection order
        raise NonGenericProjection("colliding strands are not adjacent in the projection order")
    if len(pairs) > 1 and not allow_multinode:
        raise AssumptionViolation(
            f"{len(pairs)} strand pairs collide at one critical value; expected a single node",
            module="geometry", hint="every critical fiber must have exactly one ordinary double point")
    return pairs


def track_all(prob: BranchProblem, curves: list[PLCurve], *, thetas=THETAS, **kw) -> list[TrackedMotion]:
    """Track every curve with one common projection direction, re-choosing it on ties."""
    last = None
    for theta in thetas:
        try:
            return [track(prob, c, theta, **kw) for c in curves]
        except NonGenericProjection as err:
            last = err
    raise TrackingError(f"no generic projection direction found: {last}")


def monodromy_word(prob: BranchProblem, loop: PLCurve, theta: float = 0.0, **kw) -> BraidWord:
    if loop.kind != "loop":
        raise ValueError("monodromy_word expects a loop")
    return track(prob, loop, theta, **kw).word
