"""Critical values of the projection and choice of the base point."""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import mpmath

from ..errors import AssumptionViolation, CertificateError
from ..exact import MPoly, NotDivisible, discriminant, gcd
from .problem import BranchProblem


@dataclass
class SpecialPoints:
    critical: list[complex]
    removed: list[complex]
    base_point: complex
    discriminant: MPoly | None = None
    reduced_discriminant: MPoly | None = None
    critical_mp: list = field(default_factory=list, repr=False)
    separation: float = 0.0

    @property
    def all_points(self) -> list[complex]:
        return list(self.removed) + list(self.critical)


def _strip_removed(disc: MPoly, prob: BranchProblem) -> tuple[MPoly, dict]:
    z = MPoly.var(prob.base_var, disc.vars, prob.field_d)
    mult = {}
    rest = disc
    for p in prob.removed:
        lin = z - MPoly.const(p, disc.vars, prob.field_d)
        k = 0
        while rest.degree(prob.base_var) > 0:
            try:
                rest = rest.exact_div(lin)
            except NotDivisible:
                break
            k += 1
        mult[str(p)] = k
    return rest, mult


def _polish(coeffs, root, prec):
    """Newton-polish a root of a univariate polynomial (coefficients highest first)."""
    with mpmath.workprec(prec + 32):
        x = mpmath.mpc(root)
        dcoeffs = [c * (len(coeffs) - 1 - i) for i, c in enumerate(coeffs[:-1])]
        for _ in range(60):
            step = mpmath.polyval(coeffs, x) / mpmath.polyval(dcoeffs, x)
            x -= step
            if abs(step) <= abs(x) * mpmath.mpf(2) ** (-prec - 8) or step == 0:
                break
        return x, mpmath.polyval(dcoeffs, x)


def critical_values(prob: BranchProblem) -> SpecialPoints:
    """Critical values of ``(y, z) -> z`` off the removed fibers, certified simple."""
    prob.check_leading_coefficient()
    disc = discriminant(prob.poly, prob.fiber_var)
    rest, _ = _strip_removed(disc, prob)
    deg = rest.degree(prob.base_var)
    critical_mp = []
    if deg > 0:
        g = gcd(rest, rest.diff(prob.base_var))
        if g.degree(prob.base_var) > 0:
            raise AssumptionViolation(
                "the discriminant has a multiple root: some critical fiber is not an ordinary node",
                module="geometry",
                hint="every critical fiber must have exactly one ordinary double point")
        cs = rest.coeffs_in(prob.base_var)
        prec = prob.precision
        for attempt in range(4):
            coeffs = [prob.embed(cs[k].constant_value(), prec) if k in cs else mpmath.mpf(0)
                      for k in range(deg, -1, -1)]
            try:
                with mpmath.workprec(prec):
                    approx = mpmath.polyroots(coeffs, maxsteps=400, extraprec=2 * prec)
                break
            except mpmath.libmp.NoConvergence:
                prec *= 2
        else:
            raise CertificateError("root finding for the discriminant did not converge",
                                   module="geometry", hint="raise --precision")
        scale = max(abs(c) for c in coeffs)
        for r in approx:
            x, deriv = _polish(coeffs, r, prec)
            if abs(deriv) <= scale * mpmath.mpf(2) ** (-prec // 2):
                raise CertificateError("could not certify a critical value as simple",
                                       module="geometry", hint="raise --precision")
            critical_mp.append(x)
    critical_mp.sort(key=lambda c: (round(float(mpmath.re(c)), 12), round(float(mpmath.im(c)), 12)))
    critical = [complex(c) for c in critical_mp]
    removed = prob.removed_points()
    pts = removed + critical
    sep = min((abs(p - q) for i, p in enumerate(pts) for q in pts[i + 1:]), default=float("inf"))
    if sep == 0.0:
        raise AssumptionViolation("a critical value coincides with a removed fiber numerically",
                                  module="geometry")
    b = prob.base_point if prob.base_point is not None else choose_base_point(pts)
    if any(abs(b - p) == 0 for p in pts):
        raise AssumptionViolation("the base point is a special point", module="geometry")
    return SpecialPoints(critical, removed, b, disc, rest, critical_mp, sep)


def _angles_generic(b: complex, pts: list[complex], tol: float = 1e-3) -> bool:
    ang = sorted(cmath.phase(p - b) for p in pts)
    gaps = [ang[i + 1] - ang[i] for i in range(len(ang) - 1)]
    if len(ang) > 1:
        gaps.append(ang[0] + 2 * cmath.pi - ang[-1])
    return all(g > tol for g in gaps)


def choose_base_point(pts: list[complex]) -> complex:
    """A tenth of the distance from 0 to the nearest nonzero special point, on the positive axis.

    Nudged upward until no two special points are seen from it in the same direction.
    """
    nonzero = [abs(p) for p in pts if abs(p) > 0]
    r = min(nonzero) / 10 if nonzero else 1.0
    b = complex(r, 0.0)
    k = 0
    while not _angles_generic(b, pts) or any(abs(b - p) < r / 2 for p in pts):
        k += 1
        if k > 50:
            raise AssumptionViolation("no generic base point found near the origin", module="geometry")
        b = complex(r, r * 0.0137 * k)
    return b
