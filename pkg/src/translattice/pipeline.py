"""Problem files, the end-to-end computation and the JSON report.

A problem file is TOML::

    name = "example"
    d = 5                                # field Q(sqrt d); the identifier ``a`` is sqrt(d)
    variables = ["x", "y", "z"]

    [polynomials]
    G = "..."

    [branch]
    expression = "z*(G + a*H)"
    substitute = { x = "1" }             # optional, applied before anything else
    fiber = "y"
    base = "z"
    removed = ["0"]                      # finite base values excluded from the surface

    [run]
    embedding = "both"                   # plus | minus | both
    precision = 128
    base_point = [0.02, 0.0]             # optional

    [output]
    report = "report.json"               # optional, relative to the problem file
    svg = "svg"                          # optional directory
"""
from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from . import __version__
from .chainlat import (ChainPairing, ChainSystem, TranscendentalResult, build_chains, chain_pairing,
                       transcendental_lattice)
from .errors import InputError
from .exact import MINUS, PLUS, Embedding, MPoly, PolySyntaxError, QuadElem, parse_poly
from .exact.parse import _scan_identifiers
from .fiberhom import FiberModel, format_class
from .geometry import tracking
from .geometry.planner import ARC_SEGMENTS, PLCurve, plan_paths
from .geometry.problem import BranchProblem
from .geometry.special import SpecialPoints, critical_values
from .geometry.tracking import TrackedMotion, track_all

EMBEDDINGS = {"plus": PLUS, "minus": MINUS}
DATA_DIR = Path(__file__).parent / "data"
FLAGSHIP_PROBLEM = DATA_DIR / "double_sextic_a10a9.toml"

ASSUMPTIONS = (
    "The quotient lattice is the transcendental lattice only if the classes of the removed curves, "
    "the exceptional curves and a fiber span the Neron-Severi group over Q. This is not checked.",
    "The reduced form names the unoriented class; no Hodge orientation is computed.",
)


@dataclass
class ProblemFile:
    d: int
    polynomials: dict[str, str]
    branch: str
    variables: tuple[str, ...] = ("x", "y", "z")
    substitute: dict[str, str] = field(default_factory=dict)
    fiber_var: str = "y"
    base_var: str = "z"
    removed: tuple[str, ...] = ()
    embeddings: tuple[str, ...] = ("plus", "minus")
    precision: int = 128
    base_point: complex | None = None
    name: str = ""
    report_path: Path | None = None
    svg_dir: Path | None = None

    @classmethod
    def from_dict(cls, data: dict, root: Path | None = None) -> "ProblemFile":
        try:
            d = int(data["d"])
            branch = data["branch"]
            expr = branch["expression"]
        except (KeyError, TypeError, ValueError) as err:
            raise InputError(f"problem file is missing a required key: {err}", module="cli")
        run = data.get("run", {})
        out = data.get("output", {})
        emb = run.get("embedding", "both")
        if emb not in ("plus", "minus", "both"):
            raise InputError(f"embedding must be plus, minus or both, not {emb!r}", module="cli")
        bp = run.get("base_point")
        if bp is not None:
            if not (isinstance(bp, list) and len(bp) == 2):
                raise InputError("base_point must be a pair [re, im]", module="cli")
            bp = complex(float(bp[0]), float(bp[1]))
        root = root or Path.cwd()
        prob = cls(
            d=d,
            polynomials={str(k): str(v) for k, v in data.get("polynomials", {}).items()},
            branch=str(expr),
            variables=tuple(data.get("variables", ("x", "y", "z"))),
            substitute={str(k): str(v) for k, v in branch.get("substitute", {}).items()},
            fiber_var=branch.get("fiber", "y"),
            base_var=branch.get("base", "z"),
            removed=tuple(str(r) for r in branch.get("removed", [])),
            embeddings=("plus", "minus") if emb == "both" else (emb,),
            precision=int(run.get("precision", 128)),
            base_point=bp,
            name=str(data.get("name", "")),
            report_path=root / out["report"] if "report" in out else None,
            svg_dir=root / out["svg"] if "svg" in out else None,
        )
        prob.validate()
        return prob

    def validate(self):
        known = set(self.polynomials) | set(self.variables) | {"a"}
        for name in self.polynomials:
            if name in self.variables or name == "a":
                raise InputError(f"polynomial name {name!r} clashes with a variable", module="cli")
        if len(set(self.removed)) != len(self.removed):
            raise InputError("removed fibers must be distinct", module="cli")
        for v in (self.fiber_var, self.base_var, *self.substitute):
            if v not in self.variables:
                raise InputError(f"{v!r} is not a declared variable", module="cli")
        for ident in _scan_identifiers(self.branch):
            if ident not in known:
                raise InputError(f"branch expression references undefined name {ident!r}", module="cli")

    def branch_polynomial(self) -> MPoly:
        """The branch polynomial in ``(fiber, base)`` after substitutions."""
        try:
            defs = {}
            for name, text in self.polynomials.items():
                defs[name] = parse_poly(text, self.d, self.variables, defs)
            f = parse_poly(self.branch, self.d, self.variables, defs)
            if self.substitute:
                f = f.subs({v: parse_poly(t, self.d, self.variables) for v, t in self.substitute.items()})
        except PolySyntaxError as err:
            raise InputError(f"cannot parse polynomial: {err}", module="exactcore")
        return f.with_vars((self.fiber_var, self.base_var))

    def removed_values(self) -> tuple[QuadElem, ...]:
        out = []
        for r in self.removed:
            try:
                p = parse_poly(r, self.d, ())
            except PolySyntaxError as err:
                raise InputError(f"cannot parse removed fiber {r!r}: {err}", module="cli")
            out.append(p.constant_value())
        return tuple(out)

    def branch_problem(self, embedding: Embedding) -> BranchProblem:
        return BranchProblem(self.branch_polynomial(), embedding, removed=self.removed_values(),
                             precision=self.precision, fiber_var=self.fiber_var, base_var=self.base_var,
                             base_point=self.base_point, name=self.name)


def load_problem(path) -> ProblemFile:
    path = Path(path)
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except FileNotFoundError:
        raise InputError(f"problem file {path} not found", module="cli")
    except tomllib.TOMLDecodeError as err:
        raise InputError(f"problem file {path} is not valid TOML: {err}", module="cli")
    return ProblemFile.from_dict(data, path.parent)


@dataclass
class EmbeddingRun:
    embedding: str
    problem: BranchProblem
    special: SpecialPoints
    curves: list[PLCurve]
    motions: list[TrackedMotion]
    model: FiberModel
    chains: ChainSystem
    pairing: ChainPairing
    lattice: TranscendentalResult


def run_embedding(problem: ProblemFile, embedding: str, *, seed: int = 0, eps_scale: float = 1.0,
                  keep_samples: bool = False) -> EmbeddingRun:
    bp = problem.branch_problem(EMBEDDINGS[embedding])
    sp = critical_values(bp)
    curves = plan_paths(sp, seed=seed)
    motions = track_all(bp, curves, keep_samples=keep_samples)
    model = FiberModel(bp.degree)
    chains = build_chains(motions, model)
    pairing = chain_pairing(chains, eps_scale=eps_scale)
    lattice = transcendental_lattice(chains, pairing)
    return EmbeddingRun(embedding, bp, sp, curves, motions, model, chains, pairing, lattice)


def _cx(z: complex, digits: int = 15) -> list[float]:
    return [float(f"{z.real:.{digits}g}"), float(f"{z.imag:.{digits}g}")]


def _mat(A) -> list[list[int]]:
    return [[int(x) for x in row] for row in np.asarray(A)]


def _cols(A) -> list[list[int]]:
    A = np.asarray(A)
    return [[int(x) for x in A[:, j]] for j in range(A.shape[1])] if A.ndim == 2 else []


def embedding_report(run: EmbeddingRun) -> dict:
    lat = run.lattice
    curves = []
    for ci, m in enumerate(run.motions):
        c = m.curve
        entry = {
            "label": c.label,
            "kind": c.kind,
            "target": _cx(c.target),
            "braid_word": str(m.word),
            "permutation": list(m.permutation),
            "sheet_sign": int(m.sheet_sign),
        }
        if c.kind == "loop":
            entry["monodromy"] = _mat(run.chains.monodromies[ci])
        else:
            entry["vanishing_cycles"] = [format_class(v) for v in run.chains.vanishing[ci]]
            entry["vanishing_vectors"] = [[int(x) for x in v] for v in run.chains.vanishing[ci]]
        curves.append(entry)
    out = {
        "embedding": run.embedding,
        "fiber_degree": run.model.n,
        "fiber_rank": run.model.rank,
        "special_points": {
            "critical": [_cx(z) for z in run.special.critical],
            "removed": [_cx(z) for z in run.special.removed],
            "base_point": _cx(run.special.base_point),
        },
        "projection_angle": float(run.motions[0].theta) if run.motions else 0.0,
        "curves": curves,
        "chains": list(run.chains.labels),
        "boundary": _mat(run.chains.boundary),
        "pairing": _mat(run.pairing.matrix),
        "kernel_basis": _cols(lat.kernel_basis),
        "gram": _mat(lat.gram),
        "radical_basis": _cols(lat.radical_basis),
        "quotient_basis": _cols(lat.quotient_basis),
        "quotient_gram": _mat(lat.quotient_gram),
        "kernel_rank": lat.kernel_rank,
        "radical_rank": lat.radical_rank,
        "quotient_rank": lat.quotient_rank,
        "reduced_form": str(lat.reduced) if lat.reduced is not None else None,
        "real": lat.real,
        "genus": [str(f) for f in lat.genus],
        "perturbation": {
            "epsilon": float(f"{run.pairing.epsilon:.15g}"),
            "offset": float(f"{run.pairing.offset:.15g}"),
            "direction": float(f"{run.pairing.direction:.15g}"),
            "disk_radius": float(f"{run.pairing.disk_radius:.15g}"),
            "crossings": len(run.pairing.crossings),
        },
    }
    return out


def tolerances() -> dict:
    return {
        "newton_max_iterations": tracking.MAX_NEWTON,
        "newton_relative_tolerance": tracking.NEWTON_REL_TOL,
        "step_max": tracking.H_MAX,
        "step_min": tracking.H_MIN,
        "collision_stop": tracking.COLLISION_TOL,
        "arc_segments": ARC_SEGMENTS,
    }


@dataclass
class Report:
    problem: ProblemFile
    runs: list[EmbeddingRun]

    def to_dict(self) -> dict:
        return {
            "tool": "translattice",
            "version": __version__,
            "problem": {
                "name": self.problem.name,
                "d": self.problem.d,
                "branch": str(self.problem.branch_polynomial()),
                "fiber": self.problem.fiber_var,
                "base": self.problem.base_var,
                "removed": list(self.problem.removed),
                "precision": self.problem.precision,
            },
            "assumptions": list(ASSUMPTIONS),
            "tolerances": tolerances(),
            "embeddings": [embedding_report(r) for r in self.runs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, allow_nan=False) + "\n"


def compute(problem: ProblemFile, embeddings=None, precision: int | None = None, *,
            keep_samples: bool = False) -> Report:
    """Run the pipeline for each requested embedding, in a fixed order."""
    if precision is not None:
        problem.precision = int(precision)
    names = tuple(embeddings or problem.embeddings)
    # mpmath keeps its working precision in a process-global context, so runs stay sequential
    runs = [run_embedding(problem, e, keep_samples=keep_samples) for e in names]
    return Report(problem, runs)


SCHEMA_PATH = Path(__file__).parent / "schema" / "report.schema.json"


def validate_report(data: dict) -> None:
    import jsonschema
    schema = json.loads(SCHEMA_PATH.read_text())
    jsonschema.validate(data, schema)
