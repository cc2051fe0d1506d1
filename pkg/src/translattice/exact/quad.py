"""Exact numbers p + q*sqrt(d) with rational p, q."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import mpmath

__all__ = ["QuadElem", "Embedding", "embed", "is_squarefree_int"]


def is_squarefree_int(d: int) -> bool:
    if d < 2:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


class Embedding:
    """Real embedding of Q(sqrt d): ``plus`` sends sqrt(d) to the positive root."""

    __slots__ = ("sign",)

    def __init__(self, sign: str = "plus"):
        if sign in ("+", "plus", 1):
            sign = "plus"
        elif sign in ("-", "minus", -1):
            sign = "minus"
        else:
            raise ValueError(f"unknown embedding {sign!r}")
        self.sign = sign

    @property
    def factor(self) -> int:
        return 1 if self.sign == "plus" else -1

    def __eq__(self, other):
        return isinstance(other, Embedding) and other.sign == self.sign

    def __hash__(self):
        return hash(self.sign)

    def __repr__(self):
        return f"Embedding({self.sign!r})"


PLUS = Embedding("plus")
MINUS = Embedding("minus")


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"cannot convert {type(v).__name__} to a rational")


class QuadElem:
    """Element ``p + q*sqrt(d)`` of Q(sqrt d).

    ``d == 0`` is the degenerate field Q; then ``q`` must be zero.  Elements
    with ``q == 0`` mix freely with any ``d``.
    """

    __slots__ = ("p", "q", "d")

    def __init__(self, p=0, q=0, d: int = 0):
        p = _frac(p)
        q = _frac(q)
        if q and d == 0:
            raise ValueError("irrational part needs d > 1")
        self.p = p
        self.q = q
        self.d = d if q else 0

    # -- construction helpers
    @classmethod
    def coerce(cls, v, d: int = 0) -> "QuadElem":
        if isinstance(v, QuadElem):
            return v
        return cls(_frac(v), 0, d)

    @classmethod
    def sqrt_d(cls, d: int) -> "QuadElem":
        return cls(0, 1, d)

    def _common_d(self, other: "QuadElem") -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError(f"mixing Q(sqrt {self.d}) with Q(sqrt {other.d})")
        return self.d or other.d

    # -- predicates
    def __bool__(self):
        return bool(self.p) or bool(self.q)

    def is_rational(self) -> bool:
        return not self.q

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.p == other.p and self.q == other.q and (not self.q or self.d == other.d)
        if isinstance(other, (int, Rational)):
            return not self.q and self.p == other
        return NotImplemented

    def __hash__(self):
        if not self.q:
            return hash(self.p)
        return hash((self.p, self.q, self.d))

    # -- arithmetic
    def __neg__(self):
        return QuadElem(-self.p, -self.q, self.d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not isinstance(other, QuadElem):
            if isinstance(other, (int, Rational)):
                return QuadElem(self.p + other, self.q, self.d)
            return NotImplemented
        return QuadElem(self.p + other.p, self.q + other.q, self._common_d(other))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, QuadElem):
            if isinstance(other, (int, Rational)):
                return QuadElem(self.p - other, self.q, self.d)
            return NotImplemented
        return QuadElem(self.p - other.p, self.q - other.q, self._common_d(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, QuadElem):
            if isinstance(other, (int, Rational)):
                return QuadElem(self.p * other, self.q * other, self.d)
            return NotImplemented
        d = self._common_d(other)
        p = self.p * other.p
        if self.q and other.q:
            p += d * self.q * other.q
        return QuadElem(p, self.p * other.q + self.q * other.p, d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.p * self.p - self.d * self.q * self.q

    def conj(self) -> "QuadElem":
        return QuadElem(self.p, -self.q, self.d)

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("inverse of zero in Q(sqrt d)")
        return QuadElem(self.p / n, -self.q / n, self.d)

    def __truediv__(self, other):
        if not isinstance(other, QuadElem):
            if isinstance(other, (int, Rational)):
                if not other:
                    raise ZeroDivisionError("division by zero")
                return QuadElem(self.p / other, self.q / other, self.d)
            return NotImplemented
        if other.is_rational():
            return self / other.p
        return self * other.inverse()

    def __rtruediv__(self, other):
        return QuadElem.coerce(other, self.d) / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadElem(1, 0, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- numerics
    def to_mpf(self, emb: Embedding | str = PLUS, prec: int = 128):
        return embed(self, emb, prec)

    def __complex__(self):
        return complex(float(embed(self, PLUS, 64)))

    def __float__(self):
        return float(embed(self, PLUS, 64))

    # -- printing
    def __repr__(self):
        return f"QuadElem({self.p}, {self.q}, d={self.d})"

    def __str__(self):
        return self.format()

    def format(self, symbol: str = "a") -> str:
        if not self.q:
            return str(self.p)
        qs = "" if self.q == 1 else "-" if self.q == -1 else f"{self.q}*"
        if not self.p:
            return f"{qs}{symbol}"
        sign = "+" if self.q > 0 else "-"
        qabs = -self.q if self.q < 0 else self.q
        qa = "" if qabs == 1 else f"{qabs}*"
        return f"{self.p}{sign}{qa}{symbol}"


def embed(x, emb: Embedding | str = PLUS, prec: int = 128):
    """Evaluate ``x`` under a real embedding as an mpmath float of ``prec`` bits."""
    if prec < 53:
        raise ValueError("precision below 53 bits")
    if not isinstance(emb, Embedding):
        emb = Embedding(emb)
    x = QuadElem.coerce(x)
    with mpmath.workprec(prec + 16):
        p = mpmath.mpf(x.p.numerator) / x.p.denominator
        if x.q:
            r = mpmath.sqrt(x.d) * emb.factor
            # p + q r loses relative accuracy under cancellation; use the conjugate form.
            q = mpmath.mpf(x.q.numerator) / x.q.denominator
            if p and (p > 0) != (q * r > 0):
                n = x.norm()
                val = (mpmath.mpf(n.numerator) / n.denominator) / (p - q * r)
            else:
                val = p + q * r
        else:
            val = p
    with mpmath.workprec(prec):
        return +val
