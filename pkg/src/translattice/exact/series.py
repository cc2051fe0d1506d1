"""Truncated univariate power series over Q(sqrt d)."""
from __future__ import annotations

from .poly import MPoly
from .quad import QuadElem


class TruncSeries:
    """Power series ``sum c_k t^k`` known modulo ``t^order``."""

    __slots__ = ("coeffs", "order", "d")

    def __init__(self, coeffs, order: int, d: int = 0):
        cs = [QuadElem.coerce(c, d) for c in list(coeffs)[:order]]
        cs += [QuadElem(0, 0, d)] * (order - len(cs))
        self.coeffs = cs
        self.order = order
        self.d = d

    @classmethod
    def const(cls, c, order: int, d: int = 0) -> "TruncSeries":
        return cls([c], order, d)

    @classmethod
    def gen(cls, order: int, d: int = 0) -> "TruncSeries":
        return cls([0, 1], order, d)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.order != self.order:
                n = min(self.order, other.order)
                return TruncSeries(other.coeffs, n, other.d or self.d)
            return other
        return TruncSeries.const(other, self.order, self.d)

    def __add__(self, other):
        o = self._coerce(other)
        n = min(self.order, o.order)
        return TruncSeries([a + b for a, b in zip(self.coeffs[:n], o.coeffs[:n])], n, self.d or o.d)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries([-a for a in self.coeffs], self.order, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            c = QuadElem.coerce(other, self.d)
            return TruncSeries([a * c for a in self.coeffs], self.order, self.d or c.d)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [QuadElem(0, 0, self.d or other.d) for _ in range(n)]
        for i in range(n):
            if not a[i]:
                continue
            for j in range(n - i):
                if b[j]:
                    out[i + j] = out[i + j] + a[i] * b[j]
        return TruncSeries(out, n, self.d or other.d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.const(1, self.order, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "TruncSeries":
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = a[0].inverse()
        out = [inv0]
        for k in range(1, self.order):
            s = QuadElem(0, 0, self.d)
            for j in range(1, k + 1):
                if a[j]:
                    s = s + a[j] * out[k - j]
            out.append(-s * inv0)
        return TruncSeries(out, self.order, self.d)

    def __truediv__(self, other):
        if isinstance(other, TruncSeries):
            return self * other.inverse()
        return self * QuadElem.coerce(other, self.d).inverse()

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, None if zero to this order."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, min(order, self.order), self.d)

    def __repr__(self):
        terms = [f"({c})*t^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(terms or ["0"]) + f" + O(t^{self.order})"


def eval_series(f: MPoly, values: dict[str, TruncSeries]) -> TruncSeries:
    """Substitute series for every variable of ``f``."""
    order = min(s.order for s in values.values())
    d = f.d
    for s in values.values():
        d = d or s.d
    idx = [f.vars.index(v) for v in values]
    series = list(values.values())
    cache: dict[tuple[int, int], TruncSeries] = {}

    def power(i, k):
        key = (i, k)
        if key not in cache:
            cache[key] = TruncSeries.const(1, order, d) if k == 0 else power(i, k - 1) * series[i]
        return cache[key]

    total = TruncSeries.const(0, order, d)
    for exps, c in f.terms.items():
        term = TruncSeries.const(c, order, d)
        for j, i in enumerate(idx):
            if exps[i]:
                term = term * power(j, exps[i])
        total = total + term
    return total
