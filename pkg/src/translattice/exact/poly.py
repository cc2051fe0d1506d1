"""Sparse multivariate polynomials over Q(sqrt d)."""
from __future__ import annotations

from numbers import Rational
from typing import Iterable, Mapping

from .quad import QuadElem

__all__ = ["MPoly", "NotDivisible"]


class NotDivisible(ArithmeticError):
    pass


def _is_scalar(v) -> bool:
    return isinstance(v, (QuadElem, int, Rational))


class MPoly:
    """Polynomial with exponent-tuple keys and nonzero :class:`QuadElem` values.

    Instances are treated as immutable.  Two polynomials can only be combined
    when they share the same ordered variable tuple and compatible ``d``.
    """

    __slots__ = ("vars", "terms", "d")

    def __init__(self, vars: Iterable[str], terms: Mapping | None = None, d: int = 0):
        self.vars = tuple(vars)
        self.d = d
        clean = {}
        if terms:
            n = len(self.vars)
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                c = QuadElem.coerce(c, d)
                if c:
                    if c.d and d and c.d != d:
                        raise ValueError("coefficient from a different quadratic field")
                    clean[e] = c
        self.terms = clean

    # -- constructors
    @classmethod
    def _raw(cls, vars, terms, d):
        obj = cls.__new__(cls)
        obj.vars = vars
        obj.terms = terms
        obj.d = d
        return obj

    @classmethod
    def zero(cls, vars, d: int = 0) -> "MPoly":
        return cls._raw(tuple(vars), {}, d)

    @classmethod
    def const(cls, c, vars, d: int = 0) -> "MPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, d)

    @classmethod
    def var(cls, name: str, vars, d: int = 0) -> "MPoly":
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, {tuple(e): 1}, d)

    @classmethod
    def from_univariate(cls, coeffs: Mapping[int, "MPoly"], var: str, vars, d: int = 0) -> "MPoly":
        """Assemble ``sum coeffs[k] * var**k``; coefficient polys must not involve ``var``."""
        vars = tuple(vars)
        i = vars.index(var)
        terms = {}
        for k, c in coeffs.items():
            for e, v in c.terms.items():
                if e[i]:
                    raise ValueError(f"coefficient involves {var}")
                e2 = e[:i] + (k,) + e[i + 1:]
                terms[e2] = v
        return cls._raw(vars, terms, d)

    # -- coercion
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if _is_scalar(other):
            return MPoly.const(other, self.vars, self.d)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def _field(self, other: "MPoly") -> int:
        if self.d and other.d and self.d != other.d:
            raise ValueError("polynomials over different quadratic fields")
        return self.d or other.d

    def with_vars(self, vars) -> "MPoly":
        """Re-express in a (super)set of variables."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            if v not in vars:
                if self.degree(v) > 0:
                    raise ValueError(f"variable {v} not in {vars}")
                idx.append(None)
            else:
                idx.append(vars.index(v))
        terms = {}
        for e, c in self.terms.items():
            e2 = [0] * len(vars)
            for k, j in zip(e, idx):
                if j is not None:
                    e2[j] = k
            terms[tuple(e2)] = c
        return MPoly._raw(vars, terms, self.d)

    # -- predicates and accessors
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> QuadElem:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * len(self.vars), QuadElem(0, 0, self.d))

    def __eq__(self, other):
        if _is_scalar(other):
            other = MPoly.const(other, self.vars, self.d)
        if not isinstance(other, MPoly):
            return NotImplemented
        if other.vars != self.vars:
            try:
                other = other.with_vars(self.vars)
            except ValueError:
                return False
        return self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def lowest_degree(self) -> int:
        if not self.terms:
            return -1
        return min(sum(e) for e in self.terms)

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    def coeffs_in(self, var: str) -> dict[int, "MPoly"]:
        i = self.vars.index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            out.setdefault(k, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {k: MPoly._raw(self.vars, t, self.d) for k, t in out.items()}

    def coeff(self, var: str, k: int) -> "MPoly":
        return self.coeffs_in(var).get(k, MPoly.zero(self.vars, self.d))

    def lc_in(self, var: str) -> "MPoly":
        return self.coeff(var, self.degree(var))

    def homogeneous_part(self, k: int) -> "MPoly":
        return MPoly._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == k}, self.d)

    def free_vars(self) -> tuple[str, ...]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return tuple(v for v, u in zip(self.vars, used) if u)

    # -- ring operations
    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()}, self.d)

    def __pos__(self):
        return self

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e)
            if v is None:
                terms[e] = c
            else:
                s = v + c
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        return MPoly._raw(self.vars, terms, self._field(other))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if _is_scalar(other):
            c = QuadElem.coerce(other, self.d)
            if not c:
                return MPoly.zero(self.vars, self.d)
            return MPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()}, self.d or c.d)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = terms.get(e)
                terms[e] = c1 * c2 if v is None else v + c1 * c2
        terms = {e: c for e, c in terms.items() if c}
        return MPoly._raw(self.vars, terms, self._field(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers need a nonnegative integer exponent")
        result = MPoly.const(1, self.vars, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            c = QuadElem.coerce(other, self.d)
            return self * c.inverse()
        if isinstance(other, MPoly) and other.is_constant():
            return self * other.constant_value().inverse()
        return NotImplemented

    def exact_div(self, other: "MPoly") -> "MPoly":
        """Quotient ``self / other`` when it is a polynomial; raises :class:`NotDivisible` otherwise."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self / other.constant_value()
        le, lc = other.leading_term()
        lc_inv = lc.inverse()
        rem = self
        quot: dict = {}
        while rem.terms:
            e, c = rem.leading_term()
            m = tuple(a - b for a, b in zip(e, le))
            if min(m) < 0:
                raise NotDivisible("polynomial division is not exact")
            q = c * lc_inv
            quot[m] = q
            rem = rem - MPoly._raw(self.vars, {tuple(a + b for a, b in zip(m, ee)): q * cc
                                               for ee, cc in other.terms.items()}, self.d)
        return MPoly._raw(self.vars, quot, self._field(other))

    def diff(self, var: str) -> "MPoly":
        i = self.vars.index(var)
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                terms[e[:i] + (e[i] - 1,) + e[i + 1:]] = c * e[i]
        return MPoly._raw(self.vars, terms, self.d)

    def subs(self, mapping: Mapping[str, object]) -> "MPoly":
        """Substitute polynomials or scalars for variables (simultaneously)."""
        images = []
        for v in self.vars:
            if v in mapping:
                val = mapping[v]
                images.append(val if isinstance(val, MPoly) else MPoly.const(val, self.vars, self.d))
            else:
                images.append(None)
        target_vars = None
        for im in images:
            if im is not None:
                if target_vars is None:
                    target_vars = im.vars
                elif im.vars != target_vars:
                    raise ValueError("substituted polynomials must share variables")
        if target_vars is None:
            return self
        own = {v: MPoly.var(v, target_vars, self.d) for v, im in zip(self.vars, images)
               if im is None and v in target_vars}
        for v, im in zip(self.vars, images):
            if im is None and v not in target_vars and self.degree(v) > 0:
                raise ValueError(f"variable {v} lost in substitution")
        # cache powers: the same image is raised to many exponents
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                base = images[i] if images[i] is not None else own[self.vars[i]]
                cache[key] = base ** k
            return cache[key]

        result = MPoly.zero(target_vars, self.d)
        for e, c in self.terms.items():
            term = MPoly.const(c, target_vars, self.d)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            result = result + term
        return result

    def eval(self, point: Mapping[str, object]) -> QuadElem:
        """Exact value at a point given for every variable that occurs."""
        total = QuadElem(0, 0, self.d)
        vals = [QuadElem.coerce(point[v], self.d) if v in point else None for v in self.vars]
        for e, c in self.terms.items():
            t = c
            for v, k, x in zip(self.vars, e, vals):
                if k:
                    if x is None:
                        raise ValueError(f"no value for {v}")
                    t = t * x ** k
            total = total + t
        return total

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly(self.vars, {e: fn(c) for e, c in self.terms.items()}, self.d)

    def conj(self) -> "MPoly":
        """Galois conjugate sqrt(d) -> -sqrt(d) applied to every coefficient."""
        return MPoly._raw(self.vars, {e: c.conj() for e, c in self.terms.items()}, self.d)

    # -- printing
    def sorted_terms(self):
        return sorted(self.terms.items(), reverse=True)

    def __repr__(self):
        return f"MPoly({self.vars}, {self!s})"

    def __str__(self):
        return self.format()

    def format(self, symbol: str = "a") -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            if c.is_rational():
                neg = c.p < 0
                mag = -c.p if neg else c.p
                cs = str(mag)
            else:
                neg = False
                cs = f"({c.format(symbol)})"
            if mono:
                body = mono if cs == "1" else f"{cs}*{mono}"
            else:
                body = cs
            parts.append(("-" if neg else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def total_coefficient_count(self) -> int:
        return len(self.terms)

