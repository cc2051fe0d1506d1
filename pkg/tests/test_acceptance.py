"""Acceptance criteria 1 to 7, one test each.

Every test records its sub-checks in ``RESULTS``; conftest prints one PASS/FAIL line per
criterion in the terminal summary.
"""
import math
import random
import time

import numpy as np
import pytest

from translattice.chainlat import chain_pairing, quotient_by_radical, transcendental_lattice
from translattice.exact import MINUS, QuadElem, as_int_matrix, parse_poly
from translattice.exact.intmat import (hermite_normal_form, identity, integer_kernel, is_unimodular,
                                       smith_normal_form)
from translattice.fiberhom import FiberModel, braid_action, cyclic_shift_basis, motion_monodromy
from translattice.geometry.planner import plan_paths
from translattice.geometry.special import critical_values
from translattice.geometry.tracking import BraidWord, track
from translattice.lattice2 import BinaryForm, enumerate_classes, is_real, reduce_gl2, reduce_sl2
from translattice.pipeline import EMBEDDINGS, compute, run_embedding
from translattice.singrec import recognize_A, singular_locus

from conftest import a10a9_sextic, zgh_sextic
from test_chainlat import GRAMS, reference_system

RESULTS: dict[int, list[tuple[str, bool]]] = {}
TITLES = {
    1: "flagship lattices [2,1,28] and [8,3,8]",
    2: "critical values within 1e-4 of the printed digits",
    3: "cyclic shift monodromy, kernel rank 3, radical rank 1",
    4: "reference pairing pattern and Gram matrices",
    5: "binary form reduction, det 55 classes and realness",
    6: "singular locus, sextic identity, A_m recognition",
    7: "property suites",
}


def record(n: int, checks: list[tuple[str, bool]]):
    RESULTS[n] = checks
    failed = [name for name, ok in checks if not ok]
    assert not failed, f"criterion {n} failed: {failed}"


def form(text):
    return BinaryForm.parse(text)


def test_criterion_1_flagship(flagship):
    t0 = time.perf_counter()
    report = compute(flagship, precision=128).to_dict()
    elapsed = time.perf_counter() - t0
    forms = {e["embedding"]: e["reduced_form"] for e in report["embeddings"]}
    record(1, [
        ("plus is [2,1,28]", forms.get("plus") == "[2,1,28]"),
        ("minus is [8,3,8]", forms.get("minus") == "[8,3,8]"),
        (f"runtime {elapsed:.1f}s < 120s", elapsed < 120),
    ])


def test_criterion_2_critical_values(flagship):
    printed = {"plus": {"R+": 0.42193, "S+": 0.23780 + 0.24431j},
               "minus": {"R-": 0.12593, "S-": 27.542 + 45.819j}}
    checks = []
    for emb, values in printed.items():
        crit = critical_values(flagship.branch_problem(EMBEDDINGS[emb])).critical
        for name, p in values.items():
            z = min(crit, key=lambda z: abs(z - p))
            dist = abs(z - p)
            checks.append((f"{name} = {z:.6f} is {dist:.1e} from {p}", dist <= 1e-4))
    record(2, checks)


def test_criterion_3_monodromy(flagship_runs):
    checks = []
    model = FiberModel(5)
    for emb, run in flagship_runs.items():
        loop = [i for i, c in enumerate(run.curves) if c.kind == "loop" and c.target == 0][0]
        M = run.chains.monodromies[loop]
        B = cyclic_shift_basis(M, model)
        shift_ok = B is not None
        if B is not None:
            # M maps each basis vector to the next one and the last to minus the sum
            cols = [B[:, k] for k in range(4)]
            shift_ok = all(np.array_equal(M.dot(cols[k]), cols[k + 1]) for k in range(3)) and \
                np.array_equal(M.dot(cols[3]), -sum(cols))
        lat = run.lattice
        checks += [(f"{emb}: monodromy at 0 is the cyclic shift", bool(shift_ok)),
                   (f"{emb}: kernel rank {lat.kernel_rank}", lat.kernel_rank == 3),
                   (f"{emb}: radical rank {lat.radical_rank}", lat.radical_rank == 1)]
    record(3, checks)


def test_criterion_4_reference_configuration():
    checks = []
    for sign in ("plus", "minus"):
        sys_ = reference_system(sign)
        P = chain_pairing(sys_, direction=math.pi).matrix
        checks.append((f"{sign}: perturbed loop chains pair to zero", not P[:, :4].any()))
        checks.append((f"{sign}: thimbles pair to -1 with their shifts",
                       all(P[k, k] == -1 for k in range(4, 7))))
        res = transcendental_lattice(sys_, chain_pairing(sys_))
        ref = as_int_matrix(GRAMS[sign])
        R, Q = quotient_by_radical(ref)
        ref_form = reduce_gl2(BinaryForm.from_matrix(Q.T.dot(ref).dot(Q))).form
        checks.append((f"{sign}: quotient isomorphic to the displayed Gram", res.reduced == ref_form))
        checks.append((f"{sign}: radical ranks agree", res.radical_rank == R.shape[1] == 1))
    record(4, checks)


def test_criterion_5_lattice_suite():
    t0 = time.perf_counter()
    cl = enumerate_classes(55)
    checks = [
        ("reduce [40,-5,2]", str(reduce_gl2(form("[40,-5,2]")).form) == "[2,1,28]"),
        ("reduce [140,-55,22]", str(reduce_gl2(form("[140,-55,22]")).form) == "[8,3,8]"),
        ("det 55 classes", {str(f) for f in cl.gl2} == {"[2,1,28]", "[4,1,14]", "[8,3,8]"}),
        ("det 55 genera", sorted(sorted(str(f) for f in g) for g in cl.genera)
         == [["[2,1,28]", "[8,3,8]"], ["[4,1,14]"]]),
    ]
    for text in ("[8,3,8]", "[2,1,28]", "[10,0,22]", "[2,0,110]"):
        checks.append((f"{text} real", is_real(form(text))))
    checks.append(("[4,1,14] not real", not is_real(form("[4,1,14]"))))
    elapsed = time.perf_counter() - t0
    checks.append((f"runtime {elapsed:.3f}s < 1s", elapsed < 1))
    record(5, checks)


def test_criterion_6_singularity_suite():
    t0 = time.perf_counter()
    checks = []
    for sign in (1, -1):
        pts = singular_locus(zgh_sextic(sign))
        found = sorted((p.format(), p.verdict.kind) for p in pts)
        checks.append((f"sign {sign:+d}: locus is A10 at [0:0:1] and A9 at [1:0:0]",
                       found == [("[0:0:1]", "A10"), ("[1:0:0]", "A9")]))
        ten = QuadElem(10, 0, 5)
        checks.append((f"sign {sign:+d}: 10*z*(G+-sqrt5 H) equals the sextic",
                       zgh_sextic(sign) * ten == a10a9_sextic(sign)))
    xy = ("x", "y")
    checks.append(("x^2 + y^(m+1) is A_m for m <= 15",
                   all(recognize_A(parse_poly(f"x^2 + y^{m + 1}", 0, xy)).kind == f"A{m}"
                       for m in range(1, 16))))
    elapsed = time.perf_counter() - t0
    checks.append((f"runtime {elapsed:.1f}s < 10s", elapsed < 10))
    # the identity without the factor 10 holds; reported for the record, not part of the criterion
    print("z*(G+-sqrt5 H) equals the sextic:", all(zgh_sextic(s) == a10a9_sextic(s) for s in (1, -1)))
    record(6, checks)


def _random_word(rng, n, length):
    return BraidWord(n, tuple((rng.randint(1, n - 1), rng.choice((1, -1))) for _ in range(length)))


def test_criterion_7_properties(flagship, flagship_runs):
    rng = random.Random(2024)
    checks = []

    ok = True
    for _ in range(200):
        n = rng.randint(2, 9)
        m = FiberModel(n)
        A = braid_action(_random_word(rng, n, rng.randint(0, 30)), m)
        ok &= np.array_equal(A.T.dot(m.J).dot(A), m.J)
        if n >= 3:
            i = rng.randint(1, n - 2)
            ok &= np.array_equal(braid_action(BraidWord(n, ((i, 1), (i + 1, 1), (i, 1))), m),
                                 braid_action(BraidWord(n, ((i + 1, 1), (i, 1), (i + 1, 1))), m))
    checks.append(("(a) braid action is symplectic and satisfies braid relations", bool(ok)))

    ok = True
    for red, dets in ((reduce_sl2, (1,)), (reduce_gl2, (1, -1))):
        f = BinaryForm(7, 5, 11)
        target = red(f).form
        for k in range(200):
            while True:
                g = [[rng.randint(-9, 9) for _ in range(2)] for _ in range(2)]
                if g[0][0] * g[1][1] - g[0][1] * g[1][0] == dets[k % len(dets)]:
                    break
            ok &= red(f.transform(g)).form == target
    checks.append(("(b) reduction invariant under 200 unimodular changes per group", bool(ok)))

    ok = True
    for emb, run in flagship_runs.items():
        for s in (0.5, 0.25):
            ok &= np.array_equal(transcendental_lattice(run.chains, chain_pairing(run.chains, eps_scale=s)).gram,
                                 run.lattice.gram)
        other = run_embedding(flagship, emb, seed=1)
        ok &= np.array_equal(other.lattice.gram, run.lattice.gram)
    checks.append(("(c) kernel Gram invariant under halving and re-seeding", bool(ok)))

    bp = flagship.branch_problem(MINUS)
    loop = plan_paths(critical_values(bp))[0]
    both = track(bp, loop.then(loop.reversed()), 0.0731)
    checks.append(("(d) loop followed by its reverse acts trivially",
                   np.array_equal(motion_monodromy(both, FiberModel(5)), identity(4))))

    ok = True
    for _ in range(200):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        A = as_int_matrix([[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)])
        D, U, V = smith_normal_form(A)
        ok &= np.array_equal(U.dot(A).dot(V), D) and is_unimodular(U) and is_unimodular(V)
        ok &= not A.dot(integer_kernel(A)).any()
        H, W = hermite_normal_form(A)
        ok &= np.array_equal(W.dot(A), H) and is_unimodular(W)
    checks.append(("(e) SNF, HNF and kernels re-multiply exactly", bool(ok)))
    record(7, checks)
