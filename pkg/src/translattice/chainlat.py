"""Two-chains over loops and paths, their perturbed intersection pairing, and the resulting lattice.

Chains are ``Lambda[i, nu]`` (the cycle ``c_nu`` dragged around loop i) followed by thimbles
``Gamma[j]`` (one per vanishing cycle of path j). Boundaries live in the base fiber:
``d Lambda[i, nu] = M_i c_nu - c_nu`` and ``d Gamma[j] = -sigma_j``.

The pairing of T with a perturbed copy T' sums, over transversal crossings q of the underlying
curves near the base point, ``-(t, t')_q <theta_q, theta'_q>`` where ``(t, t')_q`` is the
orientation sign of the crossing and ``theta`` is the fiber class carried by the chain at q:
``c_nu`` near the start of a loop, ``M_i c_nu`` near its end, ``sigma_j`` along a thimble.
A thimble paired with its own copy gets an extra ``-1`` from the shared critical point.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CertificateError, TranslatticeError
from .exact.intmat import (as_int_matrix, hermite_normal_form, identity, integer_kernel,
                           smith_normal_form, unimodular_inverse)
from .fiberhom import FiberModel, motion_monodromy, vanishing_cycles
from .geometry.planner import PLCurve
from .geometry.segments import polyline_crossings
from .geometry.tracking import TrackedMotion
from .lattice2 import BinaryForm, LatticeError, enumerate_classes, is_real, reduce_gl2, reduce_sl2

THIMBLE_SELF = -1


class PairingError(TranslatticeError):
    exit_code = 2
    module = "chainlat"


@dataclass
class ChainSystem:
    model: FiberModel
    curves: list[PLCurve]
    monodromies: dict[int, np.ndarray]          # curve index -> loop monodromy
    vanishing: dict[int, list[np.ndarray]]      # curve index -> vanishing cycles
    labels: list[str] = field(default_factory=list)
    chain_curve: list[int] = field(default_factory=list)
    chain_class: list[int] = field(default_factory=list)   # nu for loops, cycle number for thimbles
    boundary: np.ndarray | None = None

    @classmethod
    def from_data(cls, model: FiberModel, curves: list[PLCurve], monodromies: dict,
                  vanishing: dict) -> "ChainSystem":
        sys = cls(model, curves, {k: as_int_matrix(v) for k, v in monodromies.items()},
                  {k: [as_int_matrix(x)[0] for x in v] for k, v in vanishing.items()})
        r = model.rank
        cols = []
        for ci, c in enumerate(curves):
            if c.kind != "loop":
                continue
            M = sys.monodromies[ci]
            if M.shape != (r, r):
                raise ValueError(f"monodromy of {c.label} has shape {M.shape}, expected {(r, r)}")
            for nu in range(r):
                sys.labels.append(f"L{ci}.{nu + 1}" if not c.label else f"Lambda[{c.label},a{nu + 1}]")
                sys.chain_curve.append(ci)
                sys.chain_class.append(nu)
                cols.append(M[:, nu] - identity(r)[:, nu])
        for ci, c in enumerate(curves):
            if c.kind != "path":
                continue
            for k, sigma in enumerate(sys.vanishing.get(ci, [])):
                if len(sigma) != r:
                    raise ValueError(f"vanishing cycle of {c.label} has length {len(sigma)}")
                suffix = "" if len(sys.vanishing[ci]) == 1 else f".{k + 1}"
                sys.labels.append(f"Gamma[{c.label}{suffix}]")
                sys.chain_curve.append(ci)
                sys.chain_class.append(k)
                cols.append(-sigma)
        if cols:
            sys.boundary = as_int_matrix(np.array(cols, dtype=object).T.tolist())
        else:
            sys.boundary = np.empty((r, 0), dtype=object)
        return sys

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def base_point(self) -> complex:
        return self.curves[0].start

    def theta(self, chain: int, at_end: bool) -> np.ndarray:
        """Fiber class carried by a chain at a crossing near the start or the end of its curve."""
        ci = self.chain_curve[chain]
        k = self.chain_class[chain]
        if self.curves[ci].kind == "loop":
            e = identity(self.model.rank)[:, k]
            return self.monodromies[ci].dot(e) if at_end else e
        return self.vanishing[ci][k]


def build_chains(motions: list[TrackedMotion], model: FiberModel) -> ChainSystem:
    curves = [m.curve for m in motions]
    mono = {}
    van = {}
    for i, m in enumerate(motions):
        if m.curve.kind == "loop":
            mono[i] = motion_monodromy(m, model)
        else:
            van[i] = vanishing_cycles(m, model)
    return ChainSystem.from_data(model, curves, mono, van)


# perturbation geometry


def _arclength(v: np.ndarray) -> np.ndarray:
    return np.concatenate([[0.0], np.cumsum(np.abs(np.diff(v)))])


def _point_at(v: np.ndarray, S: np.ndarray, s: float) -> tuple[complex, int]:
    i = int(np.searchsorted(S, s, side="right") - 1)
    i = min(max(i, 0), len(v) - 2)
    seg = S[i + 1] - S[i]
    t = 0.0 if seg == 0 else (s - S[i]) / seg
    return complex(v[i] + t * (v[i + 1] - v[i])), i


def _left_normal(v: np.ndarray, i: int) -> complex:
    """Miter normal at vertex i (left of the direction of travel)."""
    def nrm(d):
        return 1j * d / abs(d)
    if i == 0:
        return nrm(v[1] - v[0])
    if i == len(v) - 1:
        return nrm(v[-1] - v[-2])
    n_in, n_out = nrm(v[i] - v[i - 1]), nrm(v[i + 1] - v[i])
    n = n_in + n_out
    if abs(n) < 1e-12:
        return n_in
    n = n / abs(n)
    return n / max((n * n_in.conjugate()).real, 0.25)


def perturbed_curve(curve: PLCurve, b_new: complex, s0: float, d: float) -> np.ndarray:
    """Copy of ``curve`` starting at ``b_new``: a short link to the left offset curve, then the offset.

    Path offsets taper to zero at the critical value; loops link back to ``b_new`` at the end.
    """
    v = np.asarray(curve.vertices, dtype=np.complex128)
    S = _arclength(v)
    L = S[-1]
    s1 = L - s0 if curve.kind == "loop" else L

    def mag(s):
        if curve.kind == "loop":
            return d
        return d * (L - s) / (L - s0)

    def offset_at(s):
        p, i = _point_at(v, S, s)
        d_seg = v[i + 1] - v[i]
        return p + mag(s) * 1j * d_seg / abs(d_seg)

    pts = [b_new, offset_at(s0)]
    for k in range(1, len(v) - 1):
        if s0 < S[k] < s1:
            pts.append(complex(v[k] + mag(S[k]) * _left_normal(v, k)))
    if curve.kind == "loop":
        pts.append(offset_at(s1))
        pts.append(b_new)
    else:
        pts.append(complex(v[-1]))
    return np.array(pts, dtype=np.complex128)


def _germ_angles(curves: list[PLCurve]) -> list[float]:
    out = []
    for c in curves:
        v = c.vertices
        out.append(cmath.phase(v[1] - v[0]))
        if c.kind == "loop":
            out.append(cmath.phase(v[-2] - v[-1]))
    return out


@dataclass
class CrossingRecord:
    curve: int
    perturbed: int
    point: complex
    sign: int
    at_end: bool
    perturbed_at_end: bool


@dataclass
class ChainPairing:
    matrix: np.ndarray
    crossings: list[CrossingRecord]
    epsilon: float
    offset: float
    direction: float
    disk_radius: float


def _largest_gap_bisector(angles: list[float]) -> tuple[float, float]:
    a = sorted(x % (2 * math.pi) for x in angles)
    gaps = [(a[(i + 1) % len(a)] - a[i]) % (2 * math.pi) or 2 * math.pi for i in range(len(a))]
    k = max(range(len(a)), key=lambda i: gaps[i])
    return a[k] + gaps[k] / 2, min(gaps)


def chain_pairing(system: ChainSystem, *, eps_scale: float = 1.0, direction: float | None = None,
                  offset_scale: float = 1.0, max_attempts: int = 6) -> ChainPairing:
    """Intersection numbers of every chain with a perturbed copy of every chain."""
    N = system.size
    if N == 0:
        return ChainPairing(np.empty((0, 0), dtype=object), [], 0.0, 0.0, 0.0, 0.0)
    curves = system.curves
    b = system.base_point
    first_legs = []
    for c in curves:
        v = c.vertices
        first_legs.append(abs(v[1] - v[0]))
        if c.kind == "loop":
            first_legs.append(abs(v[-1] - v[-2]))
    rho = 0.25 * min(first_legs)
    angles = _germ_angles(curves)
    phi, gap = _largest_gap_bisector(angles)
    if direction is not None:
        phi = direction
    eps = eps_scale * rho / 8
    s0 = rho / 2
    d = offset_scale * s0 * math.sin(min(gap, math.pi) / 2) / 16
    last_err = None
    for attempt in range(max_attempts):
        try:
            return _pairing_once(system, b, rho, eps, phi, s0, d)
        except _Retry as err:
            last_err = err
            d /= 2
            phi += 1e-3 * (attempt + 1)
    raise PairingError(f"could not find a transversal perturbation: {last_err}",
                       hint="the curves may be too close to each other near the base point")


class _Retry(Exception):
    pass


def _pairing_once(system, b, rho, eps, phi, s0, d) -> ChainPairing:
    curves = system.curves
    model = system.model
    b_new = b + eps * cmath.exp(1j * phi)
    perturbed = [perturbed_curve(c, b_new, s0, d) for c in curves]
    N = system.size
    P = np.zeros((N, N), dtype=object)
    P.fill(0)
    chains_of = {}
    for t, ci in enumerate(system.chain_curve):
        chains_of.setdefault(ci, []).append(t)
    records = []
    for a, ca in enumerate(curves):
        va = ca.vertices
        Sa = _arclength(va)
        for bb, cb in enumerate(curves):
            vb = perturbed[bb]
            Sb = _arclength(vb)
            for x in polyline_crossings(va, vb):
                if x.sign == 0:
                    raise _Retry("collinear overlap between a curve and a perturbed curve")
                end_a = x.i == len(va) - 2 and x.s == 1
                end_b = x.j == len(vb) - 2 and x.t == 1
                if a == bb and ca.kind == "path" and end_a and end_b:
                    continue  # shared critical point, accounted for by the thimble self term
                if x.s in (0, 1) or x.t in (0, 1):
                    raise _Retry("crossing at a vertex")
                if abs(x.point - b) >= rho:
                    raise _Retry(f"crossing at {x.point} outside the perturbation disk")
                pos_a = Sa[x.i] + float(x.s) * (Sa[x.i + 1] - Sa[x.i])
                pos_b = Sb[x.j] + float(x.t) * (Sb[x.j + 1] - Sb[x.j])
                at_end_a = ca.kind == "loop" and pos_a > Sa[-1] / 2
                at_end_b = cb.kind == "loop" and pos_b > Sb[-1] / 2
                records.append(CrossingRecord(a, bb, x.point, x.sign, at_end_a, at_end_b))
                for T in chains_of.get(a, []):
                    th = system.theta(T, at_end_a)
                    for T2 in chains_of.get(bb, []):
                        th2 = system.theta(T2, at_end_b)
                        P[T, T2] -= x.sign * model.pairing(th, th2)
    for T, ci in enumerate(system.chain_curve):
        if curves[ci].kind == "path":
            P[T, T] += THIMBLE_SELF
    return ChainPairing(P, records, eps, d, phi, rho)


# lattice


@dataclass
class TranscendentalResult:
    kernel_basis: np.ndarray        # columns, chain coordinates
    gram: np.ndarray
    radical_basis: np.ndarray       # columns, chain coordinates
    quotient_basis: np.ndarray      # columns, chain coordinates
    quotient_gram: np.ndarray
    form: BinaryForm | None = None
    reduced: BinaryForm | None = None
    oriented: BinaryForm | None = None
    real: bool | None = None
    genus: list[BinaryForm] = field(default_factory=list)

    @property
    def kernel_rank(self) -> int:
        return self.kernel_basis.shape[1]

    @property
    def radical_rank(self) -> int:
        return self.radical_basis.shape[1]

    @property
    def quotient_rank(self) -> int:
        return self.quotient_gram.shape[0]


class AsymmetricGram(TranslatticeError):
    exit_code = 2
    module = "chainlat"


def kernel_basis(boundary: np.ndarray) -> np.ndarray:
    """Saturated kernel of the boundary map, Hermite-reduced, as columns."""
    K = integer_kernel(boundary)
    if K.shape[1] == 0:
        return K
    H, _ = hermite_normal_form(K.T)
    rows = [H[i] for i in range(H.shape[0]) if any(x != 0 for x in H[i])]
    return as_int_matrix(np.array(rows, dtype=object)).T.copy()


def quotient_by_radical(gram: np.ndarray):
    """``(radical, complement)`` column bases in the coordinates of ``gram``."""
    k = gram.shape[0]
    if k == 0:
        e = np.empty((0, 0), dtype=object)
        return e, e
    R = integer_kernel(gram)
    r = R.shape[1]
    if r == 0:
        return R, identity(k)
    D, U, _ = smith_normal_form(R)
    if any(D[i, i] != 1 for i in range(r)):
        raise CertificateError("radical is not saturated", module="chainlat")
    Uinv = unimodular_inverse(U)
    return R, np.ascontiguousarray(Uinv[:, r:])


def transcendental_lattice(system: ChainSystem, pairing: ChainPairing) -> TranscendentalResult:
    N = system.size
    if N == 0:
        e = np.empty((0, 0), dtype=object)
        return TranscendentalResult(np.empty((0, 0), dtype=object), e, e, e, e)
    K = kernel_basis(system.boundary)
    if K.shape[1] == 0:
        e = np.empty((0, 0), dtype=object)
        return TranscendentalResult(np.empty((N, 0), dtype=object), e, np.empty((N, 0), dtype=object),
                                    np.empty((N, 0), dtype=object), e)
    assert not np.any(system.boundary.dot(K)), "kernel basis does not lie in the kernel"
    G = K.T.dot(pairing.matrix).dot(K)
    if not np.array_equal(G, G.T):
        raise AsymmetricGram("the pairing restricted to closed chains is not symmetric",
                             hint="this signals an inconsistent perturbation or sign convention")
    R, Q = quotient_by_radical(G)
    QG = Q.T.dot(G).dot(Q)
    res = TranscendentalResult(K, G, K.dot(R) if R.shape[1] else np.empty((N, 0), dtype=object),
                               K.dot(Q), QG)
    if QG.shape == (2, 2):
        try:
            f = BinaryForm.from_matrix(QG)
        except LatticeError:
            return res
        res.form = f
        res.reduced = reduce_gl2(f).form
        res.oriented = reduce_sl2(f).form
        res.real = is_real(f)
        for gen in enumerate_classes(f.det).genera:
            if res.reduced in gen:
                res.genus = list(gen)
    return res
