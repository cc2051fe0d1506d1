import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from translattice.exact.intmat import as_int_matrix, identity
from translattice.fiberhom import (FiberModel, braid_action, canonical_sign, cyclic_shift_basis,
                                   format_class, monodromy_operator, preserves_pairing, transvection,
                                   vanishing_cycle)
from translattice.geometry.planner import PLCurve
from translattice.geometry.tracking import BraidWord, TrackedMotion


def col(v):
    return as_int_matrix([v])[0]


def test_model_ranks():
    for n in range(2, 10):
        m = FiberModel(n)
        assert m.rank == n - 1
        assert 2 * m.genus + m.punctures - 1 == m.rank


def test_pairing_matrix():
    J = FiberModel(4).J
    assert J.tolist() == [[0, 1, 0], [-1, 0, 1], [0, -1, 0]]


def test_generator_fixes_its_cycle():
    m = FiberModel(3)
    A = braid_action(BraidWord(3, ((1, 1),)), m)
    assert A.dot(m.basis(1)).tolist() == [1, 0]


def test_generator_on_neighbour():
    # <c2, c1> = -1, so c2 -> c2 + <c2, c1> c1 = c2 - c1
    m = FiberModel(3)
    A = braid_action(BraidWord(3, ((1, 1),)), m)
    assert A.dot(m.basis(2)).tolist() == [-1, 1]
    assert m.pairing(m.basis(2), m.basis(1)) == -1
    assert preserves_pairing(A, m)


def test_shift_class_pairs_to_one():
    m = FiberModel(5)
    a5 = -sum(m.basis(k) for k in range(1, 5))
    assert m.pairing(a5, m.basis(1)) == 1


def test_sheet_sign():
    m = FiberModel(5)
    w = BraidWord(5, ((1, 1), (2, -1)))
    assert np.array_equal(monodromy_operator(w, m, -1), -braid_action(w, m))


words = st.integers(2, 9).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from([1, -1])), max_size=30)))


@given(words)
@settings(max_examples=200, deadline=None)
def test_action_preserves_pairing(nw):
    n, letters = nw
    m = FiberModel(n)
    A = braid_action(BraidWord(n, tuple(letters)), m)
    assert preserves_pairing(A, m)
    inv = braid_action(BraidWord(n, tuple(letters)).inverse(), m)
    assert np.array_equal(inv.dot(A), identity(m.rank))


@given(st.integers(3, 9), st.data())
@settings(max_examples=100, deadline=None)
def test_braid_relations(n, data):
    m = FiberModel(n)
    i = data.draw(st.integers(1, n - 2))
    a = braid_action(BraidWord(n, ((i, 1), (i + 1, 1), (i, 1))), m)
    b = braid_action(BraidWord(n, ((i + 1, 1), (i, 1), (i + 1, 1))), m)
    assert np.array_equal(a, b)
    if n >= 4:
        j = data.draw(st.integers(1, n - 1).filter(lambda j: abs(j - i) >= 2))
        x = braid_action(BraidWord(n, ((i, 1), (j, 1))), m)
        y = braid_action(BraidWord(n, ((j, 1), (i, 1))), m)
        assert np.array_equal(x, y)


def test_first_letter_acts_first():
    m = FiberModel(4)
    w = BraidWord(4, ((1, 1), (2, 1)))
    assert np.array_equal(braid_action(w, m), transvection(m, 2).dot(transvection(m, 1)))


def fake_path(word, colliding, n=5):
    c = PLCurve(np.array([0j, 1 + 0j]), "path", 1 + 0j, 0, "p")
    return TrackedMotion(c, word, 0.0, np.zeros(n), np.zeros(n), list(range(n)), word.permutation(),
                         colliding=colliding)


def test_vanishing_cycle_without_braiding():
    m = FiberModel(5)
    assert vanishing_cycle(fake_path(BraidWord(5), [2]), m).tolist() == [0, 0, 1, 0]


def test_vanishing_cycle_fixed_by_own_twist():
    m = FiberModel(5)
    assert vanishing_cycle(fake_path(BraidWord(5, ((1, 1),)), [0]), m).tolist() == [1, 0, 0, 0]


@given(st.lists(st.tuples(st.integers(1, 4), st.sampled_from([1, -1])), max_size=30), st.integers(0, 3))
@settings(max_examples=100, deadline=None)
def test_vanishing_cycles_primitive(letters, k):
    import math
    m = FiberModel(5)
    v = vanishing_cycle(fake_path(BraidWord(5, tuple(letters)), [k]), m)
    assert math.gcd(*[int(x) for x in v]) == 1
    assert v[np.nonzero(v)[0][0]] > 0


def test_cyclic_shift_basis_of_standard_shift():
    m = FiberModel(5)
    shift = np.zeros((4, 4), dtype=int)
    for nu in range(3):
        shift[nu + 1, nu] = 1
    shift[:, 3] = -1
    B = cyclic_shift_basis(shift, m)
    assert B is not None
    assert cyclic_shift_basis(identity(4), m) is None


def test_format_class():
    assert format_class([0, 2, -1, 0]) == "2*a2 - a3"
    assert format_class([0, 0, 0, 0]) == "0"
    assert canonical_sign([0, -1, 2]).tolist() == [0, 1, -2]
