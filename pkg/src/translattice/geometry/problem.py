"""Branch problem: a double cover of the plane branched along ``B(y, z) = 0``."""
from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
import numpy as np

from ..errors import AssumptionViolation, InputError
from ..exact import MPoly, QuadElem, Embedding, PLUS, embed


@dataclass
class BranchProblem:
    """``poly`` in the fiber variable and the base variable; ``removed`` are finite base values."""

    poly: MPoly
    embedding: Embedding = PLUS
    removed: tuple = ()
    precision: int = 128
    fiber_var: str = "y"
    base_var: str = "z"
    base_point: complex | None = None
    name: str = ""
    _coeffs: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        extra = set(self.poly.free_vars()) - {self.fiber_var, self.base_var}
        if extra:
            raise InputError(f"branch polynomial involves unexpected variables {sorted(extra)}",
                             module="geometry")
        if self.poly.vars != (self.fiber_var, self.base_var):
            self.poly = self.poly.with_vars((self.fiber_var, self.base_var))
        self.removed = tuple(QuadElem.coerce(p, self.poly.d) for p in self.removed)
        if len(set(self.removed)) != len(self.removed):
            raise InputError("removed fibers must be distinct", module="geometry")
        if self.degree < 2:
            raise InputError("branch polynomial must have degree >= 2 in the fiber variable",
                             module="geometry")
        if self.precision < 53:
            raise InputError("precision must be at least 53 bits", module="geometry")

    @property
    def degree(self) -> int:
        return self.poly.degree(self.fiber_var)

    @property
    def field_d(self) -> int:
        return self.poly.d

    def embed(self, x: QuadElem, prec: int | None = None):
        return embed(x, self.embedding, prec or self.precision)

    def removed_points(self) -> list[complex]:
        return [complex(self.embed(p)) for p in self.removed]

    def coeff_array(self) -> np.ndarray:
        """Complex array ``C[k, j]`` = coefficient of ``y^k z^j`` under the embedding."""
        if self._coeffs is None:
            iy = self.poly.vars.index(self.fiber_var)
            iz = self.poly.vars.index(self.base_var)
            n = self.degree
            m = max(self.poly.degree(self.base_var), 0)
            C = np.zeros((n + 1, m + 1), dtype=np.complex128)
            for exps, c in self.poly.terms.items():
                C[exps[iy], exps[iz]] = complex(self.embed(c))
            self._coeffs = C
        return self._coeffs

    def fiber_coeffs_mp(self, z, prec: int | None = None) -> list:
        """Coefficients (highest degree first) of ``B(., z)`` at high precision."""
        prec = prec or self.precision
        iy = self.poly.vars.index(self.fiber_var)
        iz = self.poly.vars.index(self.base_var)
        with mpmath.workprec(prec):
            z = mpmath.mpmathify(z)
            out = [mpmath.mpc(0)] * (self.degree + 1)
            for exps, c in self.poly.terms.items():
                out[exps[iy]] += self.embed(c, prec) * z ** exps[iz]
        return out[::-1]

    def roots_at(self, z: complex) -> np.ndarray:
        """All fiber roots at ``z`` (numpy companion solve)."""
        from ._kernels import coeffs_at
        a, _ = coeffs_at(self.coeff_array(), complex(z))
        return np.roots(a[::-1])

    def check_leading_coefficient(self):
        """Degree in the fiber variable must not drop outside removed fibers."""
        lc = self.poly.lc_in(self.fiber_var)
        if lc.is_constant():
            return
        z = MPoly.var(self.base_var, lc.vars, self.field_d)
        rest = lc
        for p in self.removed:
            lin = z - MPoly.const(p, lc.vars, self.field_d)
            while rest.degree(self.base_var) > 0:
                try:
                    rest = rest.exact_div(lin)
                except ArithmeticError:
                    break
        if rest.degree(self.base_var) > 0:
            raise AssumptionViolation(
                "the degree in the fiber variable drops at a finite base point",
                module="geometry",
                hint="remove the fiber where the leading coefficient vanishes or change coordinates")
