import math

import numpy as np
import pytest

from translattice.chainlat import (ChainSystem, chain_pairing, kernel_basis, quotient_by_radical,
                                   transcendental_lattice)
from translattice.exact import as_int_matrix, det, smith_invariants
from translattice.exact.intmat import identity
from translattice.fiberhom import FiberModel
from translattice.geometry.planner import PLCurve, _teardrop
from translattice.lattice2 import BinaryForm, discriminant_form, discform_isomorphic, is_real, reduce_gl2
from translattice.pipeline import run_embedding

MODEL = FiberModel(5)
SHIFT = np.zeros((4, 4), dtype=int)
for _nu in range(3):
    SHIFT[_nu + 1, _nu] = 1
SHIFT[:, 3] = -1

# fiber classes in the a-basis and closed chains (order: Lambda1..4, Gamma_R, Gamma_S, Gamma_Sbar)
CLASSES = {
    "plus": ([1, -1, 1, -1], [1, -1, -1, 0], [0, -1, -1, 1]),
    "minus": ([0, 1, 1, 0], [2, -1, -1, -1], [-1, -1, -1, 2]),
}
GENERATORS = {
    "plus": [[-1, 0, -1, 0, 1, 0, 0], [-6, -2, 2, 1, 0, 5, 0], [1, 1, 1, 0, 0, -1, 1]],
    "minus": [[-4, -3, -2, 0, 1, 2, 0], [-11, -7, -3, 1, 0, 5, 0], [3, 3, 3, 0, 0, -1, 1]],
}
GRAMS = {
    "plus": [[0, 0, 0], [0, 40, -5], [0, -5, 2]],
    "minus": [[22, 55, -22], [55, 140, -55], [-22, -55, 22]],
}


def reference_system(sign):
    """Loop around 0 and straight paths to R, S, Sbar, with R on the far side of b."""
    b, R, S = 0.5, 1.0, 0.5 + 1j
    curves = [_teardrop(b, 0, 0.25, math.pi / 6, "lambda", 0),
              PLCurve(np.array([b, R]), "path", R, 0, "R"),
              PLCurve(np.array([b, S]), "path", S, 1, "S"),
              PLCurve(np.array([b, S.conjugate()]), "path", S.conjugate(), 2, "Sbar")]
    sr, ss, ssb = CLASSES[sign]
    return ChainSystem.from_data(MODEL, curves, {0: SHIFT}, {1: [sr], 2: [ss], 3: [ssb]})


def F(x, y):
    return MODEL.pairing(as_int_matrix([x])[0], as_int_matrix([y])[0])


def a(nu):
    # a_1..a_5 with a_5 = -(a_1 + ... + a_4)
    if nu == 5:
        return [-1, -1, -1, -1]
    return [int(i == nu - 1) for i in range(4)]


def test_reference_boundary_matrix():
    sys_ = reference_system("plus")
    expected = [(-1, 1, 0, 0), (0, -1, 1, 0), (0, 0, -1, 1), (-1, -1, -1, -2),
                (-1, 1, -1, 1), (-1, 1, 1, 0), (0, 1, 1, -1)]
    assert sys_.boundary.T.tolist() == [list(c) for c in expected]
    K = kernel_basis(sys_.boundary)
    assert K.shape[1] == 3
    assert not sys_.boundary.dot(as_int_matrix(GENERATORS["plus"]).T).any()


@pytest.mark.parametrize("sign", ["plus", "minus"])
def test_table_pattern(sign):
    # perturbing towards the removed point (b' = b - eps) gives the tabulated pattern;
    # the matrix entry [i, j] pairs chain i with the perturbed chain j
    sys_ = reference_system(sign)
    P = chain_pairing(sys_, direction=math.pi).matrix
    sr, ss, ssb = CLASSES[sign]
    lam, gR, gS, gSb = range(4), 4, 5, 6
    assert not P[:, :4].any()                                  # perturbed loop chains pair to zero
    for nu in lam:
        assert P[nu, gR] == F(a(nu + 1), sr)
        assert P[nu, gS] == F(a(nu + 1), ss)
        assert P[nu, gSb] == F(a(nu + 2), ssb)
    assert P[gR, gR] == P[gS, gS] == P[gSb, gSb] == -1
    assert P[gS, gR] == F(ss, sr)
    assert P[gSb, gR] == 0 and P[gR, gS] == 0 and P[gSb, gS] == 0
    assert P[gR, gSb] == 0 and P[gS, gSb] == 0


@pytest.mark.parametrize("sign", ["plus", "minus"])
@pytest.mark.parametrize("direction", [math.pi, None])
def test_reference_grams(sign, direction):
    sys_ = reference_system(sign)
    P = chain_pairing(sys_, direction=direction).matrix
    S = as_int_matrix(GENERATORS[sign]).T
    assert S.T.dot(P).dot(S).tolist() == GRAMS[sign]
    res = transcendental_lattice(sys_, chain_pairing(sys_, direction=direction))
    assert res.radical_rank == 1
    assert str(res.reduced) == {"plus": "[2,1,28]", "minus": "[8,3,8]"}[sign]


def test_identity_monodromy_without_thimbles():
    loop = _teardrop(0.5, 0, 0.25, math.pi / 6, "l", 0)
    sys_ = ChainSystem.from_data(MODEL, [loop], {0: identity(4)}, {})
    assert not sys_.boundary.any() and sys_.boundary.shape == (4, 4)


def test_empty_system():
    sys_ = ChainSystem.from_data(MODEL, [], {}, {})
    assert chain_pairing(sys_).matrix.shape == (0, 0)
    assert transcendental_lattice(sys_, chain_pairing(sys_)).quotient_rank == 0


def test_zero_gram_quotient():
    R, Q = quotient_by_radical(as_int_matrix([[0, 0], [0, 0]]))
    assert R.shape[1] == 2 and Q.shape[1] == 0


def test_quotient_by_radical_of_reference_gram():
    G = as_int_matrix(GRAMS["minus"])
    R, Q = quotient_by_radical(G)
    assert R.shape[1] == 1 and not G.dot(R).any()
    QG = Q.T.dot(G).dot(Q)
    assert str(reduce_gl2(BinaryForm.from_matrix(QG)).form) == "[8,3,8]"


@pytest.mark.parametrize("emb, reduced", [("plus", "[2,1,28]"), ("minus", "[8,3,8]")])
def test_flagship_lattice(flagship_runs, emb, reduced):
    run = flagship_runs[emb]
    res = run.lattice
    assert res.kernel_rank == 3 and res.radical_rank == 1 and res.quotient_rank == 2
    assert np.array_equal(res.gram, res.gram.T)
    assert not run.chains.boundary.dot(res.kernel_basis).any()
    assert str(res.reduced) == reduced
    assert det(res.quotient_gram) == 55
    nz = [x for x in smith_invariants(res.gram) if x]
    assert math.prod(nz) == det(res.quotient_gram)
    # realness and genus agree with lattice2 on the reported Gram
    f = BinaryForm.from_matrix(res.quotient_gram)
    assert res.real == is_real(f)
    assert {str(g) for g in res.genus} == {"[2,1,28]", "[8,3,8]"}


@pytest.mark.parametrize("emb", ["plus", "minus"])
def test_flagship_matches_reference_lattice(flagship_runs, emb):
    # isomorphic radical quotients and equal radical ranks
    res = flagship_runs[emb].lattice
    ref = as_int_matrix(GRAMS[emb])
    _, Q = quotient_by_radical(ref)
    ref_form = reduce_gl2(BinaryForm.from_matrix(Q.T.dot(ref).dot(Q))).form
    assert res.reduced == ref_form
    assert discform_isomorphic(discriminant_form(res.quotient_gram), discriminant_form(ref_form.gram()))


@pytest.mark.parametrize("emb", ["plus", "minus"])
def test_gram_invariant_under_perturbation_size(flagship_runs, emb):
    run = flagship_runs[emb]
    grams = [transcendental_lattice(run.chains, chain_pairing(run.chains, eps_scale=s)).gram
             for s in (1.0, 0.5, 0.25)]
    assert all(np.array_equal(grams[0], g) for g in grams[1:])


@pytest.mark.parametrize("emb", ["plus", "minus"])
def test_gram_invariant_under_reseeding(flagship, flagship_runs, emb):
    base = flagship_runs[emb]
    for seed in (1, 2):
        other = run_embedding(flagship, emb, seed=seed)
        assert not np.array_equal(other.curves[0].vertices, base.curves[0].vertices)
        assert np.array_equal(other.chains.boundary, base.chains.boundary)
        assert np.array_equal(other.lattice.gram, base.lattice.gram)
