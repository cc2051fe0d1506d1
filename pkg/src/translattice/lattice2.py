"""Rank-2 positive-definite even lattices: reduction, realness, discriminant forms, genera.

A form ``BinaryForm(a, b, c)`` stands for the Gram matrix ``[[2a, b], [b, 2c]]`` and is
printed as the triple ``[2a,b,2c]``.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact.intmat import as_int_matrix, det as int_det, smith_normal_form

MAX_GROUP_ORDER = 10**6


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class BinaryForm:
    a: int
    b: int
    c: int

    def __post_init__(self):
        if not (self.a > 0 and self.c > 0 and 4 * self.a * self.c - self.b ** 2 > 0):
            raise LatticeError(f"{self} is not positive definite")

    @classmethod
    def from_gram(cls, g11: int, g12: int, g22: int) -> "BinaryForm":
        if g11 % 2 or g22 % 2:
            raise LatticeError(f"Gram [{g11},{g12},{g22}] is not even")
        return cls(g11 // 2, g12, g22 // 2)

    @classmethod
    def from_matrix(cls, m) -> "BinaryForm":
        m = as_int_matrix(m)
        if m.shape != (2, 2) or m[0, 1] != m[1, 0]:
            raise LatticeError("expected a symmetric 2x2 Gram matrix")
        return cls.from_gram(int(m[0, 0]), int(m[0, 1]), int(m[1, 1]))

    @classmethod
    def parse(cls, text: str) -> "BinaryForm":
        nums = re.findall(r"-?\d+", text)
        if len(nums) != 3:
            raise LatticeError(f"cannot parse form {text!r}")
        return cls.from_gram(*map(int, nums))

    @property
    def det(self) -> int:
        return 4 * self.a * self.c - self.b ** 2

    @property
    def gram_triple(self) -> tuple[int, int, int]:
        return (2 * self.a, self.b, 2 * self.c)

    def gram(self) -> np.ndarray:
        return as_int_matrix([[2 * self.a, self.b], [self.b, 2 * self.c]])

    def negate_b(self) -> "BinaryForm":
        return BinaryForm(self.a, -self.b, self.c)

    def transform(self, g) -> "BinaryForm":
        """Form with Gram ``g^T M g``."""
        g = as_int_matrix(g)
        return BinaryForm.from_matrix(g.T.dot(self.gram()).dot(g))

    def __str__(self):
        return "[{},{},{}]".format(*self.gram_triple)


@dataclass(frozen=True)
class ReducedForm:
    form: BinaryForm
    transform: tuple[tuple[int, int], tuple[int, int]]

    def __str__(self):
        return str(self.form)


def _is_sl2_reduced(a, b, c) -> bool:
    return -a < b <= a <= c and (b >= 0 or a != c)


def reduce_sl2(f: BinaryForm) -> ReducedForm:
    """Unique SL2(Z)-reduced representative: ``-a < b <= a <= c``, ``b >= 0`` when ``a == c``."""
    a, b, c = f.a, f.b, f.c
    g = [[1, 0], [0, 1]]

    def apply(h):
        nonlocal g
        g = [[g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]],
             [g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]]]

    while True:
        # translate b into (-a, a]: e2 -> e2 + k e1
        k = -((b + a - 1) // (2 * a)) if b > a or b <= -a else 0
        if k:
            c = a * k * k + b * k + c
            b = b + 2 * a * k
            apply([[1, k], [0, 1]])
        if a > c or (a == c and b < 0):
            # (e1, e2) -> (e2, -e1)
            a, b, c = c, -b, a
            apply([[0, -1], [1, 0]])
            continue
        break
    assert _is_sl2_reduced(a, b, c)
    return ReducedForm(BinaryForm(a, b, c), tuple(map(tuple, g)))


def reduce_gl2(f: BinaryForm) -> ReducedForm:
    """Unique GL2(Z)-reduced representative: SL2-reduced with ``b >= 0``."""
    r = reduce_sl2(f)
    if r.form.b >= 0:
        return r
    (p, q), (s, t) = r.transform
    return ReducedForm(r.form.negate_b(), ((p, -q), (s, -t)))


def is_real(f: BinaryForm) -> bool:
    """True iff the oriented class equals its orientation reversal."""
    r = reduce_sl2(f).form
    return not (0 < abs(r.b) < r.a < r.c)


# discriminant forms


@dataclass(frozen=True)
class DiscriminantForm:
    """Finite quadratic form on ``L^dual / L``.

    ``generators`` are integer vectors in dual-basis coordinates, ``orders`` their orders
    (the invariant factors), ``q_values[i]`` in ``[0, 2)`` and ``linkings[i][j]`` in ``[0, 1)``.
    """

    orders: tuple[int, ...]
    q_values: tuple[Fraction, ...]
    linkings: tuple[tuple[Fraction, ...], ...]
    generators: tuple[tuple[int, ...], ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def exponent(self) -> int:
        return self.orders[-1] if self.orders else 1

    def q(self, coeffs) -> Fraction:
        """``q`` of the element ``sum coeffs[i] * g_i`` (mod 2)."""
        total = Fraction(0)
        for i, ci in enumerate(coeffs):
            total += ci * ci * self.q_values[i]
            for j in range(i + 1, len(coeffs)):
                total += 2 * ci * coeffs[j] * self.linkings[i][j]
        return total % 2

    def __str__(self):
        parts = [f"Z/{o} q={q}" for o, q in zip(self.orders, self.q_values)]
        return " + ".join(parts) if parts else "0"


def _inverse_fraction(m: np.ndarray) -> list[list[Fraction]]:
    n = m.shape[0]
    aug = [[Fraction(int(m[i, j])) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
           for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                fac = aug[r][col]
                aug[r] = [x - fac * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _element_order(vec, ginv) -> int:
    n = len(vec)
    dens = [sum((ginv[i][j] * vec[j] for j in range(n)), Fraction(0)).denominator for i in range(n)]
    return math.lcm(*dens) if dens else 1


def discriminant_form(gram) -> DiscriminantForm:
    """Discriminant form of an even nondegenerate lattice given by its Gram matrix."""
    g = as_int_matrix(gram)
    n = g.shape[0]
    if g.shape != (n, n) or any(g[i, j] != g[j, i] for i in range(n) for j in range(n)):
        raise LatticeError("Gram matrix must be square and symmetric")
    if any(g[i, i] % 2 for i in range(n)):
        raise LatticeError("Gram matrix has an odd diagonal entry")
    if int_det(g) == 0:
        raise LatticeError("Gram matrix is degenerate")
    ginv = _inverse_fraction(g)
    d, u, _ = smith_normal_form(g)
    invariants = [int(d[i, i]) for i in range(n)]
    # U G V = D, so x -> U x identifies Z^n / G Z^n with sum Z/d_i; generators are columns of U^-1
    uinv = _inverse_fraction(u)
    gens = []
    orders = []
    for i, di in enumerate(invariants):
        if di > 1:
            gens.append(tuple(int(uinv[r][i]) for r in range(n)))
            orders.append(di)
    if len(orders) == 1:
        # cyclic: prefer the first dual-basis vector of full order for readable output
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            if _element_order(e, ginv) == orders[0]:
                gens = [e]
                break

    def bil(x, y):
        return sum((x[i] * ginv[i][j] * y[j] for i in range(n) for j in range(n)), Fraction(0))

    qv = tuple(bil(x, x) % 2 for x in gens)
    link = tuple(tuple(bil(x, y) % 1 for y in gens) for x in gens)
    return DiscriminantForm(tuple(orders), qv, link, tuple(gens))


def _elements(orders):
    return itertools.product(*[range(o) for o in orders])


def discform_isomorphic(q1: DiscriminantForm, q2: DiscriminantForm) -> bool:
    """Exhaustive search for a group isomorphism carrying ``q1`` to ``q2``."""
    if q1.order != q2.order:
        return False
    if q1.order > MAX_GROUP_ORDER:
        raise LatticeError(f"group of order {q1.order} exceeds the exhaustive-search limit")
    if sorted(q1.orders) != sorted(q2.orders):
        # same abelian group iff the invariant factors agree
        return False
    if not q1.orders:
        return True
    e = math.lcm(q1.exponent, q2.exponent)
    # integer encodings: q in Z/2e, linking in Z/e
    Q2 = [int(v * e) % (2 * e) for v in q2.q_values]
    B2 = [[int(v * e) % e for v in row] for row in q2.linkings]
    m = len(q2.orders)

    def q_of(c):
        t = 0
        for i in range(m):
            t += c[i] * c[i] * Q2[i]
            for j in range(i + 1, m):
                t += 2 * c[i] * c[j] * B2[i][j]
        return t % (2 * e)

    def b_of(c, c2):
        return sum(c[i] * c2[j] * B2[i][j] for i in range(m) for j in range(m)) % e

    def order_of(c):
        return math.lcm(*[o // math.gcd(o, ci) for o, ci in zip(q2.orders, c)])

    targets_q = [int(v * e) % (2 * e) for v in q1.q_values]
    targets_b = [[int(v * e) % e for v in row] for row in q1.linkings]
    candidates = []
    elems = list(_elements(q2.orders))
    for i, o in enumerate(q1.orders):
        cand = [c for c in elems if order_of(c) == o and q_of(c) == targets_q[i]]
        if not cand:
            return False
        candidates.append(cand)

    k = len(q1.orders)

    def generates(images) -> bool:
        seen = set()
        for coeffs in _elements(q1.orders):
            v = tuple(sum(coeffs[i] * images[i][j] for i in range(k)) % q2.orders[j] for j in range(m))
            seen.add(v)
        return len(seen) == q2.order

    def search(i, chosen):
        if i == k:
            return generates(chosen)
        for c in candidates[i]:
            if all(b_of(chosen[j], c) == targets_b[j][i] for j in range(i)):
                if search(i + 1, chosen + [c]):
                    return True
        return False

    return search(0, [])


@dataclass(frozen=True)
class GenusTag:
    signature: tuple[int, int]
    discform: DiscriminantForm


def genus_tag(f: BinaryForm) -> GenusTag:
    return GenusTag((2, 0), discriminant_form(f.gram()))


def same_genus(f1: BinaryForm, f2: BinaryForm) -> bool:
    if f1.det != f2.det:
        return False
    return discform_isomorphic(discriminant_form(f1.gram()), discriminant_form(f2.gram()))


@dataclass
class ClassEnumeration:
    det: int
    gl2: list[BinaryForm]
    sl2: list[BinaryForm]
    genera: list[list[BinaryForm]]


def enumerate_classes(det: int) -> ClassEnumeration:
    """All reduced forms of a given determinant ``4ac - b^2``, grouped into genera."""
    if det <= 0:
        raise LatticeError("determinant must be positive")
    if det > MAX_GROUP_ORDER:
        raise LatticeError(f"determinant {det} exceeds the supported range")
    gl2 = []
    b = det % 2
    while 3 * b * b <= det:
        if (det + b * b) % 4 == 0:
            ac = (det + b * b) // 4
            for a in range(max(b, 1), math.isqrt(ac) + 1):
                if ac % a == 0:
                    c = ac // a
                    if _is_sl2_reduced(a, b, c):
                        gl2.append(BinaryForm(a, b, c))
        b += 2
    gl2.sort(key=lambda f: (f.a, f.b, f.c))
    sl2 = []
    for f in gl2:
        sl2.append(f)
        if not is_real(f):
            sl2.append(f.negate_b())
    genera: list[list[BinaryForm]] = []
    for f in gl2:
        for gen in genera:
            if same_genus(gen[0], f):
                gen.append(f)
                break
        else:
            genera.append([f])
    return ClassEnumeration(det, gl2, sl2, genera)
