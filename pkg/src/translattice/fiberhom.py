"""Homology of the base fiber and the action of braids on it.

The fiber over a base point is the double cover of the y-line branched at the n roots. With the
roots ordered by projection, ``c_k`` is the lift of an arc joining the k-th and (k+1)-st roots
inside the strip between them, oriented so that ``<c_k, c_{k+1}> = +1``. These n-1 classes form
a basis of the first homology (genus ``(n-1)//2`` with one or two punctures at infinity).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .exact.intmat import as_int_matrix, det, identity
from .geometry.tracking import BraidWord, TrackedMotion


@dataclass(frozen=True)
class FiberModel:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least two branch points")

    @property
    def rank(self) -> int:
        return self.n - 1

    @cached_property
    def J(self) -> np.ndarray:
        r = self.rank
        J = as_int_matrix(np.zeros((r, r), dtype=int))
        for i in range(r - 1):
            J[i, i + 1] = 1
            J[i + 1, i] = -1
        return J

    def pairing(self, x, y) -> int:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        return int(x.dot(self.J).dot(y))

    def basis(self, k: int) -> np.ndarray:
        """``c_k`` (1-based)."""
        e = as_int_matrix(np.zeros((1, self.rank), dtype=int))[0]
        e[k - 1] = 1
        return e

    @cached_property
    def genus(self) -> int:
        return (self.n - 1) // 2

    @cached_property
    def punctures(self) -> int:
        return 1 if self.n % 2 else 2


def transvection(model: FiberModel, k: int, sign: int = 1) -> np.ndarray:
    """Matrix of ``x -> x + sign * <x, c_k> c_k`` acting on coordinate columns."""
    if not 1 <= k <= model.rank:
        raise IndexError(f"generator index {k} out of range for {model.n} strands")
    T = identity(model.rank)
    # <x, c_k> = sum_i x_i J[i, k]
    for i in range(model.rank):
        T[k - 1, i] += sign * model.J[i, k - 1]
    return T


def braid_action(word: BraidWord, model: FiberModel) -> np.ndarray:
    """Action of the braid on homology; the first letter acts first."""
    if word.n != model.n:
        raise ValueError(f"word on {word.n} strands used with a {model.n}-point fiber")
    A = identity(model.rank)
    for k, e in word.letters:
        A = transvection(model, k, e).dot(A)
    return A


def monodromy_operator(word: BraidWord, model: FiberModel, sheet_sign: int = 1) -> np.ndarray:
    """Loop monodromy: the braid action, times -1 when the loop swaps the sheets of the cover."""
    A = braid_action(word, model)
    return A if sheet_sign == 1 else -A


def motion_monodromy(motion: TrackedMotion, model: FiberModel) -> np.ndarray:
    return monodromy_operator(motion.word, model, motion.sheet_sign)


def preserves_pairing(A: np.ndarray, model: FiberModel) -> bool:
    A = as_int_matrix(A)
    return bool(np.array_equal(A.T.dot(model.J).dot(A), model.J))


def canonical_sign(v) -> np.ndarray:
    v = as_int_matrix(v)[0]
    for x in v:
        if x != 0:
            return v if x > 0 else -v
    return v


def vanishing_cycles(motion: TrackedMotion, model: FiberModel) -> list[np.ndarray]:
    """Base-fiber classes of the cycles vanishing at the end of a path, one per colliding pair."""
    if motion.curve.kind != "path":
        raise ValueError("vanishing cycles are defined for paths only")
    back = braid_action(motion.word.inverse(), model)
    out = []
    for k in motion.colliding:
        if not 0 <= k < model.rank:
            raise ValueError(f"colliding pair {k} out of range")
        out.append(canonical_sign(back.dot(model.basis(k + 1))))
    return out


def vanishing_cycle(motion: TrackedMotion, model: FiberModel) -> np.ndarray:
    cycles = vanishing_cycles(motion, model)
    if len(cycles) != 1:
        raise ValueError(f"expected a single vanishing cycle, found {len(cycles)}")
    return cycles[0]


def format_class(v, symbol: str = "a") -> str:
    terms = []
    for i, x in enumerate(v, start=1):
        x = int(x)
        if x == 0:
            continue
        coef = "" if abs(x) == 1 else f"{abs(x)}*"
        sign = "-" if x < 0 else "+"
        terms.append(f"{sign} {coef}{symbol}{i}")
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def cyclic_shift_basis(M, model: FiberModel, bound: int = 1) -> np.ndarray | None:
    """A basis ``x, Mx, ..., M^(r-1) x`` in which ``M`` is the cyclic shift with ``M^r x = -sum``.

    Only ``x`` with entries in ``[-bound, bound]`` are tried. The basis is also required to carry
    the same pairing matrix ``J`` as the standard basis, so the shift is an isometric conjugacy.
    Returns the basis as columns, or None.
    """
    M = as_int_matrix(M)
    r = model.rank
    for x in itertools.product(range(-bound, bound + 1), repeat=r):
        x = as_int_matrix([x])[0]
        cols = [x]
        for _ in range(r):
            cols.append(M.dot(cols[-1]))
        if any(cols[r] + sum(cols[:r])):
            continue
        B = as_int_matrix(np.array(cols[:r], dtype=object).T)
        if abs(det(B)) != 1:
            continue
        if np.array_equal(B.T.dot(model.J).dot(B), model.J):
            return B
    return None
