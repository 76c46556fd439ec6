from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from qinvar.algebras import QuantumWeylAlgebra, WeylAlgebra, graded_basis
from qinvar.automorphisms import Automorphism, group_closure, identity_auto
from qinvar.errors import (
    DimensionMismatch,
    HypothesesNotMet,
    NotAnAutomorphism,
    NotBracketMap,
)
from qinvar.exactmath import Matrix, det, inverse
from qinvar.invariants import AUSLANDER_GORENSTEIN_MACAULAY, INCONCLUSIVE
from qinvar.weyl import (
    QWeylShape,
    SymplecticSpace,
    check_qweyl_auto,
    classify_qweyl_auto,
    is_bracket_map,
    pair_exchange,
    pair_scaling,
    qweyl_hypotheses,
    qweyl_verdict,
    random_bracket_map,
    random_qweyl_candidate,
    symplectic_det,
    transvection,
    weyl_verdict,
)

QW = QuantumWeylAlgebra(2, 2, {(0, 1): 3})


def test_symplectic_space():
    sp = SymplecticSpace(2)
    J = sp.J
    assert sp.dim == 4
    assert J.T == -J
    assert det(J) == 1
    # [y_1, x_1] = 1 and [x_1, y_1] = -1
    assert J[2, 0] == 1 and J[0, 2] == -1


def test_is_bracket_map_examples():
    assert is_bracket_map(1, Matrix.identity(2))
    assert is_bracket_map(1, Matrix([[0, 1], [-1, 0]]))  # x -> -y, y -> x
    assert not is_bracket_map(1, Matrix.diag([2, 2]))
    with pytest.raises(DimensionMismatch):
        is_bracket_map(2, Matrix.identity(3))


def test_symplectic_det_examples():
    assert symplectic_det(2, Matrix.identity(4)) == 1
    rng = random.Random(5)
    m = Matrix.identity(6)
    for _ in range(20):
        v = [rng.randint(-1, 1) for _ in range(6)]
        m = m @ transvection(3, v, rng.choice([1, -2, F(1, 3)]))
    assert symplectic_det(3, m) == 1
    assert symplectic_det(1, Matrix.diag([5, F(1, 5)])) == 1
    with pytest.raises(NotBracketMap):
        symplectic_det(1, Matrix.diag([2, 2]))


def test_elementary_maps_preserve_the_form():
    for n in (1, 2, 3):
        for i in range(n):
            assert is_bracket_map(n, pair_exchange(n, i))
            assert is_bracket_map(n, pair_scaling(n, i, F(-2, 3)))


def test_bracket_maps_form_a_group():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 4)
        a, b = random_bracket_map(rng, n), random_bracket_map(rng, n)
        assert is_bracket_map(n, a @ b)
        assert is_bracket_map(n, inverse(a))
        assert det(a) == 1


def test_weyl_verdict_examples():
    rot = [{"y1": 1}, {"x1": -1}]
    v = weyl_verdict(1, [rot])
    assert v.outcome == AUSLANDER_GORENSTEIN_MACAULAY
    assert len(v.evidence["hdet"]) == 4
    assert all(d == 1 for _, d in v.evidence["hdet"])
    shift = [{"x1": 1, "1": 1}, {"y1": 1}]
    v = weyl_verdict(1, [shift], close=False)
    assert v.outcome == AUSLANDER_GORENSTEIN_MACAULAY
    with pytest.raises(NotBracketMap):
        weyl_verdict(1, [[{"x1": 2}, {"y1": 1}]])


def test_weyl_affine_maps_are_automorphisms():
    from qinvar.automorphisms import check_auto

    rng = random.Random(9)
    w = WeylAlgebra(2)
    for _ in range(20):
        sigma = random_bracket_map(rng, 2)
        eps = tuple(rng.choice([0, 1, F(-1, 2)]) for _ in range(4))
        assert check_auto(w, Automorphism(w, sigma, eps))
    assert not check_auto(w, Automorphism(w, Matrix.diag([2, 1, 1, 1])))


# --- quantum Weyl ----------------------------------------------------------

def test_check_qweyl_auto_examples():
    assert check_qweyl_auto(QW, Matrix.diag([2, 3, F(1, 2), F(1, 3)]))
    shift = [{"x1": 1, "1": 1}, {"x2": 1}, {"y1": 1}, {"y2": 1}]
    assert not check_qweyl_auto(QW, shift)
    assert check_qweyl_auto(QW, identity_auto(QW))
    with pytest.raises(DimensionMismatch):
        check_qweyl_auto(QW, Matrix.identity(3))


def test_classify_qweyl_auto_examples():
    shape = classify_qweyl_auto(QW, Matrix.diag([2, 3, F(1, 2), F(1, 3)]))
    assert shape.alphas == (2, 3)
    assert not (shape.a or shape.b or shape.c or shape.d)
    assert det(shape.matrix()) == 1
    with pytest.raises(HypothesesNotMet):
        classify_qweyl_auto(QuantumWeylAlgebra(2, 1, {(0, 1): 3}), Matrix.identity(4))
    with pytest.raises(NotAnAutomorphism):
        classify_qweyl_auto(QW, Matrix.diag([2, 3, 2, 3]))


def test_qweyl_hypotheses():
    assert qweyl_hypotheses(QW) == []
    assert "q^4 = 1" in qweyl_hypotheses(QuantumWeylAlgebra(1, -1))
    assert any("q*p" in s for s in qweyl_hypotheses(QuantumWeylAlgebra(2, 2, {(0, 1): F(1, 2)})))
    assert any("q^3*p" in s for s in qweyl_hypotheses(QuantumWeylAlgebra(2, 2, {(0, 1): F(1, 8)})))


def test_shape_matrix_assembly():
    shape = QWeylShape((2, 3), {(0, 1): 5}, {}, {}, {(0, 1): -1})
    m = shape.matrix()
    assert m[1, 0] == 5 and m[3, 2] == -1
    assert det(m) == 1


def test_triangular_couplings_pass_and_classify():
    rng = random.Random(13)
    passed = 0
    for _ in range(200):
        m = random_qweyl_candidate(rng, 2, off_shape=False)
        if check_qweyl_auto(QW, m):
            passed += 1
            assert det(classify_qweyl_auto(QW, m).matrix()) == 1
    assert passed >= 20


def test_off_shape_candidates_fail():
    rng = random.Random(17)
    for _ in range(200):
        assert not check_qweyl_auto(QW, random_qweyl_candidate(rng, 2, off_shape=True))


def test_qweyl_verdict_examples():
    neg = Matrix.diag([-1, -1, -1, -1])
    v = qweyl_verdict(QW, [neg])
    assert v.outcome == AUSLANDER_GORENSTEIN_MACAULAY
    assert len(v.evidence["hdet"]) == 2
    v = qweyl_verdict(QuantumWeylAlgebra(2, 9, {(0, 1): 3}), [neg])
    assert v.outcome == INCONCLUSIVE
    assert "generic" in v.justification
    assert qweyl_verdict(QW, [identity_auto(QW)]).outcome == AUSLANDER_GORENSTEIN_MACAULAY


def test_associated_graded_dimensions():
    from math import comb

    for n in (1, 2, 3):
        a = QuantumWeylAlgebra(n, 2, {(i, j): 3 for i in range(n) for j in range(i + 1, n)})
        assert [len(graded_basis(a, m)) for m in range(7)] == [comb(m + 2 * n - 1, m) for m in range(7)]


def test_weyl_group_closure_of_rotation():
    w = WeylAlgebra(1)
    G = group_closure([Automorphism(w, Matrix([[0, -1], [1, 0]]))])
    assert G.order == 4
