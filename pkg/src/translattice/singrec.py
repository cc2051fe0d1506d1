"""Recognition of simple plane curve singularities.

Weight filtrations decide semi-quasihomogeneity for a given weight system. A_m points are
recognized automatically: after a linear change making the tangent cone ``x^2``, the polar
curve ``f_x(phi(y), y) = 0`` is solved as a power series and ``m + 1`` is the y-order of
``f(phi(y), y)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import InputError, TranslatticeError
from .exact import MPoly, QuadElem, gcd, is_squarefree, resultant, squarefree_part
from .exact.quad import Embedding, PLUS, embed
from .exact.series import TruncSeries, eval_series

SERIES_START = 16
SERIES_CAP = 64


class SingularityError(TranslatticeError):
    exit_code = 1
    module = "singrec"


@dataclass(frozen=True)
class WeightSystem:
    w: tuple[Fraction, Fraction]
    tag: str = "custom"

    @classmethod
    def A(cls, m: int) -> "WeightSystem":
        return cls((Fraction(1, 2), Fraction(1, m + 1)), f"A{m}")

    @classmethod
    def D(cls, m: int) -> "WeightSystem":
        return cls((Fraction(1, m - 1), Fraction(m - 2, 2 * (m - 1))), f"D{m}")

    @classmethod
    def E6(cls) -> "WeightSystem":
        return cls((Fraction(1, 3), Fraction(1, 4)), "E6")

    @classmethod
    def E7(cls) -> "WeightSystem":
        return cls((Fraction(1, 3), Fraction(2, 9)), "E7")

    @classmethod
    def E8(cls) -> "WeightSystem":
        return cls((Fraction(1, 3), Fraction(1, 5)), "E8")

    @classmethod
    def custom(cls, w0, w1) -> "WeightSystem":
        return cls((Fraction(w0), Fraction(w1)), "custom")


@dataclass
class WeightParts:
    below: MPoly
    equal: MPoly
    above: MPoly


def _local_vars(f: MPoly, variables=None) -> tuple[str, str]:
    if variables is None:
        variables = f.vars
    if len(variables) != 2:
        raise InputError("expected a polynomial in two local variables", module="singrec")
    extra = set(f.free_vars()) - set(variables)
    if extra:
        raise InputError(f"unexpected variables {sorted(extra)}", module="singrec")
    return tuple(variables)


def weight_parts(f: MPoly, w: WeightSystem, variables=None) -> WeightParts:
    """Split ``f`` by the weighted degree ``w0*e0 + w1*e1`` of its monomials."""
    v0, v1 = _local_vars(f, variables)
    i0, i1 = f.vars.index(v0), f.vars.index(v1)
    parts = {-1: {}, 0: {}, 1: {}}
    for exps, c in f.terms.items():
        wt = w.w[0] * exps[i0] + w.w[1] * exps[i1]
        key = (wt > 1) - (wt < 1)
        parts[key][exps] = c
    mk = lambda t: MPoly._raw(f.vars, t, f.d)
    return WeightParts(mk(parts[-1]), mk(parts[0]), mk(parts[1]))


def is_semi_quasihomogeneous(f: MPoly, w: WeightSystem, variables=None) -> bool:
    """No monomials of weight < 1 and an isolated (squarefree) weight-1 part."""
    parts = weight_parts(f, w, variables)
    return parts.below.is_zero() and not parts.equal.is_zero() and is_squarefree(parts.equal)


@dataclass
class SingularityVerdict:
    kind: str | None                  # "A10", "smooth", ... or None when inconclusive
    reason: str = ""
    order: int | None = None          # series truncation order used
    milnor: int | None = None
    data: dict = field(default_factory=dict)

    @property
    def conclusive(self) -> bool:
        return self.kind is not None

    def __str__(self):
        return self.kind if self.kind else f"inconclusive({self.reason})"


def _translate(f: MPoly, x: str, y: str, point) -> MPoly:
    x0, y0 = (QuadElem.coerce(c, f.d) for c in point)
    if not x0 and not y0:
        return f
    X = MPoly.var(x, f.vars, f.d) + MPoly.const(x0, f.vars, f.d)
    Y = MPoly.var(y, f.vars, f.d) + MPoly.const(y0, f.vars, f.d)
    return f.subs({x: X, y: Y})


def recognize_A(f: MPoly, point=(0, 0), variables=None) -> SingularityVerdict:
    """Decide whether ``f`` has an A_m singularity at ``point`` and find m."""
    x, y = _local_vars(f, variables)
    g = _translate(f, x, y, point)
    if g.homogeneous_part(0):
        raise SingularityError("the curve does not pass through the point")
    if g.homogeneous_part(1):
        raise SingularityError("the point is smooth (multiplicity 1)")
    q = g.homogeneous_part(2)
    if not q:
        raise SingularityError("multiplicity is at least 3; not an A-type point")
    ix, iy = g.vars.index(x), g.vars.index(y)

    def coeff(ex, ey):
        e = [0] * len(g.vars)
        e[ix], e[iy] = ex, ey
        return g.terms.get(tuple(e), QuadElem(0, 0, g.d))

    a, b, c = coeff(2, 0), coeff(1, 1), coeff(0, 2)
    disc = b * b - a * c * 4
    if disc:
        return SingularityVerdict("A1", reason="two distinct tangents", milnor=1)
    X = MPoly.var(x, g.vars, g.d)
    Y = MPoly.var(y, g.vars, g.d)
    if a:
        # q = a (x + b/(2a) y)^2: shift so the tangent square becomes x^2
        g = g.subs({x: X - Y * (b / (a * 2))})
    else:
        g = g.subs({x: Y, y: X})
    fx = g.diff(x)
    fxx = fx.diff(x)
    M = SERIES_START
    while M <= SERIES_CAP:
        t = TruncSeries.gen(M, g.d)
        phi = TruncSeries.const(0, M, g.d)
        prec = 1
        while prec < M:
            num = eval_series(fx, {x: phi, y: t})
            den = eval_series(fxx, {x: phi, y: t})
            phi = phi - num / den
            prec *= 2
        # one more pass settles the last coefficients
        phi = phi - eval_series(fx, {x: phi, y: t}) / eval_series(fxx, {x: phi, y: t})
        h = eval_series(g, {x: phi, y: t})
        k = h.valuation()
        if k is not None:
            m = k - 1
            return SingularityVerdict(f"A{m}", order=M, milnor=m,
                                      data={"remainder_order": k, "tangent_shift": str(b / (a * 2)) if a else "swap"})
        M *= 2
    return SingularityVerdict(None, reason=f"remainder vanishes to order {SERIES_CAP}: non-isolated or beyond bound",
                              order=SERIES_CAP)


# singular locus of a projective curve


def _univariate_coeffs(g: MPoly, var: str) -> list[QuadElem]:
    cs = g.coeffs_in(var)
    n = max(cs)
    return [cs[k].constant_value() if k in cs else QuadElem(0, 0, g.d) for k in range(n, -1, -1)]


def _rationalize(v, bound=10**15):
    fr = Fraction(str(mpmath.nstr(v, 40, strip_zeros=False, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)))
    return fr.limit_denominator(bound)


def k_rational_roots(g: MPoly, var: str, prec: int = 256) -> list[QuadElem]:
    """Roots of a univariate polynomial that lie in the coefficient field, found exactly.

    Numerical roots under both embeddings are paired, rationalized and checked exactly.
    """
    if g.degree(var) <= 0:
        return []
    g = squarefree_part(g, var)
    coeffs = _univariate_coeffs(g, var)
    d = g.d
    found: list[QuadElem] = []
    with mpmath.workprec(prec):
        plus = [embed(c, PLUS, prec) for c in coeffs]
        rp = mpmath.polyroots(plus, maxsteps=500, extraprec=prec) if len(coeffs) > 1 else []
        if d:
            minus = [embed(c, Embedding("minus"), prec) for c in coeffs]
            rm = mpmath.polyroots(minus, maxsteps=500, extraprec=prec)
        else:
            rm = [None]
        tol = mpmath.mpf(2) ** (-prec // 3)
        for r1, r2 in itertools.product(rp, rm):
            if abs(mpmath.im(r1)) > tol or (r2 is not None and abs(mpmath.im(r2)) > tol):
                continue
            r1 = mpmath.re(r1)
            if d:
                r2 = mpmath.re(r2)
                p = _rationalize((r1 + r2) / 2)
                qv = _rationalize((r1 - r2) / (2 * mpmath.sqrt(d)))
                cand = QuadElem(p, qv, d)
            else:
                cand = QuadElem(_rationalize(r1), 0, 0)
            if cand in found:
                continue
            if _is_zero(g.eval({var: cand})):
                found.append(cand)
    return found


@dataclass
class SingularPoint:
    coords: tuple                    # projective coordinates as QuadElem
    chart: str                       # variable set to 1
    local: tuple                     # affine coordinates in that chart
    verdict: SingularityVerdict
    approx: tuple = ()               # complex coordinates under the chosen embedding

    def format(self) -> str:
        return "[" + ":".join(str(c) for c in self.coords) + "]"


def _is_zero(v) -> bool:
    return not v


def singular_locus(F: MPoly, embedding: Embedding = PLUS, variables=("x", "y", "z")) -> list[SingularPoint]:
    """All singular points of the projective curve ``F = 0`` with coordinates in the field.

    Points whose coordinates are not in the field are reported with an inconclusive verdict.
    """
    x, y, z = variables
    F = F.with_vars(variables)
    degs = {sum(e) for e in F.terms}
    if len(degs) != 1:
        raise InputError("polynomial is not homogeneous", module="singrec")
    if not is_squarefree(F):
        raise InputError("the curve is not reduced", module="singrec")
    d = F.d
    one = QuadElem(1, 0, d)
    zero = QuadElem(0, 0, d)
    grads = [F.diff(v) for v in variables]
    points: list[SingularPoint] = []

    def singular_at(pt):
        env = dict(zip(variables, pt))
        return _is_zero(F.eval(env)) and all(_is_zero(gr.eval(env)) for gr in grads)

    def local_verdict(chart, keep, pt_local):
        f = F.subs({chart: MPoly.const(1, F.vars, d)}).with_vars(keep)
        try:
            return recognize_A(f, pt_local, keep)
        except TranslatticeError as err:
            return SingularityVerdict(None, reason=str(err))

    # chart z = 1
    f = F.subs({z: MPoly.const(1, F.vars, d)}).with_vars((x, y))
    fx, fy = f.diff(x), f.diff(y)
    r1 = resultant(f, fx, x) if fx.degree(x) >= 0 and f.degree(x) > 0 else f
    r2 = resultant(f, fy, x) if f.degree(x) > 0 and not fy.is_zero() else f
    ys = gcd(r1, r2) if not (r1.is_zero() and r2.is_zero()) else None
    if ys is None:
        raise InputError("elimination degenerated; the curve may contain a line x = const", module="singrec")
    cand_y = k_rational_roots(ys, y) if ys.degree(y) > 0 else []
    for y0 in cand_y:
        fx0 = f.subs({y: MPoly.const(y0, f.vars, d)})
        h = gcd(gcd(fx0, fx.subs({y: MPoly.const(y0, f.vars, d)})), fy.subs({y: MPoly.const(y0, f.vars, d)}))
        for x0 in k_rational_roots(h, x) if h.degree(x) > 0 else []:
            pt = (x0, y0, one)
            if singular_at(pt):
                points.append(SingularPoint(pt, z, (x0, y0), local_verdict(z, (x, y), (x0, y0))))
    counted = _count_numeric(ys, y)
    # line z = 0, chart x = 1
    line = [g.subs({x: MPoly.const(1, F.vars, d), z: MPoly.const(0, F.vars, d)}).with_vars((y,))
            for g in [F] + grads]
    common = line[0]
    for g in line[1:]:
        common = gcd(common, g)
    if common.is_zero():
        raise InputError("the line z = 0 is a multiple component", module="singrec")
    for y0 in k_rational_roots(common, y) if common.degree(y) > 0 else []:
        pt = (one, y0, zero)
        if singular_at(pt):
            points.append(SingularPoint(pt, x, (y0, zero), local_verdict(x, (y, z), (y0, zero))))
    # the point [0:1:0]
    pt = (zero, one, zero)
    if singular_at(pt):
        points.append(SingularPoint(pt, y, (zero, zero), local_verdict(y, (x, z), (zero, zero))))
    if counted > len([p for p in points if p.chart == z]):
        points.append(SingularPoint((), z, (), SingularityVerdict(
            None, reason=f"{counted - len([p for p in points if p.chart == z])} candidate fibers "
                         "with non-rational coordinates were not examined")))
    for p in points:
        if p.coords:
            p.approx = tuple(complex(embed(c, embedding, 64)) for c in p.coords)
    return points


def _count_numeric(g: MPoly, var: str) -> int:
    """Number of distinct roots of the elimination polynomial (an upper bound on affine fibers)."""
    if g.degree(var) <= 0:
        return 0
    return squarefree_part(g, var).degree(var)
