from __future__ import annotations

import random
from fractions import Fraction as F
from itertools import permutations

import pytest

from qinvar.algebras import (
    ExteriorAlgebra,
    QuantExteriorAlgebra,
    QuantumWeylAlgebra,
    QuotientAlgebra,
    SkewPolyAlgebra,
    TensorAlgebra,
    WeylAlgebra,
    koszul_dual,
    p_distinct_strict,
)
from qinvar.automorphisms import (
    AutGroup,
    Automorphism,
    check_auto,
    classify_skew_auto,
    compose,
    exterior_extend,
    filtered_decompose,
    from_images,
    group_closure,
    identity_auto,
    is_perfect,
    koszul_transpose,
    quotient_scalars,
    random_automorphism,
)
from qinvar.errors import (
    ClosureExceedsCap,
    DimensionMismatch,
    DoesNotPreserveF1,
    HypothesesNotMet,
    NotAnAutomorphism,
    NotInvertible,
)
from qinvar.exactmath import Matrix, ParamScalar, det

ANTI = SkewPolyAlgebra(3, p={(0, 1): -1}, names=("x", "y", "z"))
SWAP_NEG = Matrix([[0, -1, 0], [-1, 0, 0], [0, 0, -1]])


def formal_skew3():
    p = {(i, j): ParamScalar.symbol(f"p{i + 1}{j + 1}") for i in range(3) for j in range(i + 1, 3)}
    return SkewPolyAlgebra(3, p=p)


def perm_matrix(perm):
    n = len(perm)
    return Matrix([[1 if perm[j] == i else 0 for j in range(n)] for i in range(n)])


def catalogue():
    return [
        SkewPolyAlgebra(3),
        SkewPolyAlgebra(3, p={(0, 1): -1}),
        SkewPolyAlgebra(3, p={(0, 1): 2, (0, 2): 3, (1, 2): 5}),
        SkewPolyAlgebra(3, degrees=(2, 1, 1)),
        ExteriorAlgebra(3),
        QuantExteriorAlgebra(3, p={(0, 1): -1}),
        QuotientAlgebra(SkewPolyAlgebra(2), 0, 3),
        TensorAlgebra(SkewPolyAlgebra(2, p={(0, 1): 3}), ExteriorAlgebra(2)),
        WeylAlgebra(1),
        QuantumWeylAlgebra(2, 2, {(0, 1): 3}),
    ]


# --- relation checks -------------------------------------------------------

def test_check_auto_examples():
    assert check_auto(ANTI, SWAP_NEG)
    assert not check_auto(SkewPolyAlgebra(2, p={(0, 1): 2}), perm_matrix((1, 0)))
    for alg in catalogue():
        assert check_auto(alg, identity_auto(alg))


def test_check_auto_rejects_bad_shapes():
    with pytest.raises(DimensionMismatch):
        check_auto(ANTI, Matrix.identity(2))
    assert not check_auto(ANTI, Matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))
    # mixing generators of different degrees is not graded
    weighted = SkewPolyAlgebra(2, degrees=(1, 2))
    assert not check_auto(weighted, Matrix([[1, 0], [1, 1]]))
    # a constant shift is not graded
    assert not check_auto(SkewPolyAlgebra(1), Automorphism(SkewPolyAlgebra(1), Matrix([[1]]), (1,)))


def test_quotient_scalar_is_derived():
    quot = QuotientAlgebra(SkewPolyAlgebra(2), 0, 3)
    g = Automorphism(quot, Matrix.diag([-1, -1]))
    assert check_auto(quot, g)
    assert quotient_scalars(g) == [-1]
    # pinning a wrong scalar is rejected
    assert not check_auto(quot, Automorphism(quot, Matrix.diag([-1, -1]), lam=F(1)))
    # x1 must be mapped to a multiple of itself
    assert not check_auto(quot, Matrix([[1, 0], [1, 1]]))


@pytest.mark.parametrize("idx", range(len(catalogue())))
def test_composition_preserves_validity(idx):
    alg = catalogue()[idx]
    rng = random.Random(100 + idx)
    for _ in range(20):
        g, h = random_automorphism(rng, alg), random_automorphism(rng, alg)
        assert check_auto(alg, compose(g, h))
        assert check_auto(alg, g.inverse())
        assert compose(g, g.inverse()) == identity_auto(alg)


# --- classification on p-distinct skew polynomial rings ---------------------

def test_classify_skew_auto_examples():
    a = SkewPolyAlgebra(3, p={(0, 1): 2, (0, 2): 3, (1, 2): 5})
    assert classify_skew_auto(a, Automorphism(a, Matrix.diag([2, 3, 5]))) == (2, 3, 5)
    with pytest.raises(NotAnAutomorphism):
        classify_skew_auto(a, Automorphism(a, perm_matrix((1, 0, 2))))
    b = formal_skew3()
    assert classify_skew_auto(b, Automorphism(b, Matrix.diag([-1, -1, -1]))) == (-1, -1, -1)


def test_classify_skew_auto_hypotheses():
    with pytest.raises(HypothesesNotMet):
        classify_skew_auto(ANTI, Automorphism(ANTI, SWAP_NEG))
    # pairwise distinct, yet x1 <-> x3 is a symmetry: the strict condition fails
    a = SkewPolyAlgebra(3, p={(0, 1): 2, (0, 2): 1, (1, 2): F(1, 2)})
    with pytest.raises(HypothesesNotMet):
        classify_skew_auto(a, Automorphism(a, perm_matrix((2, 1, 0))))


def test_strictly_distinct_parameters_force_diagonal_automorphisms():
    rng = random.Random(41)
    pool = [F(2), F(3), F(5), F(-2), F(7), F(1, 11), F(-13)]
    entries = [0, 0, 0, 1, -1, 2]
    tried = passed = 0
    for n in (2, 3, 4):
        for _ in range(5):
            vals = rng.sample(pool, n * (n - 1) // 2)
            a = SkewPolyAlgebra(n, p={(i, j): vals.pop() for i in range(n) for j in range(i + 1, n)})
            assert p_distinct_strict(a)
            candidates = []
            for perm in permutations(range(n)):
                scal = [rng.choice([1, -1, 2, F(1, 3)]) for _ in range(n)]
                candidates.append(perm_matrix(perm) @ Matrix.diag(scal))
            for _ in range(60):
                candidates.append(Matrix([[rng.choice(entries) for _ in range(n)] for _ in range(n)]))
                m = Matrix.diag([rng.choice([1, -1, 3]) for _ in range(n)])
                i, j = rng.sample(range(n), 2)
                rows = m.tolist()
                rows[i][j] = rng.choice([1, -1, 2])
                candidates.append(Matrix(rows))
            for m in candidates:
                tried += 1
                if check_auto(a, m):
                    passed += 1
                    assert m.is_diagonal()
    assert tried > 500 and passed > 20


# --- groups ----------------------------------------------------------------

def test_group_closure_examples():
    a = formal_skew3()
    assert group_closure([Automorphism(a, Matrix.diag([-1, -1, -1]))]).order == 2
    assert group_closure([identity_auto(a)]).order == 1
    k2 = SkewPolyAlgebra(2)
    rot = Automorphism(k2, Matrix([[0, -1], [1, 0]]))
    assert group_closure([rot]).order == 4


def test_group_closure_is_closed():
    k3 = SkewPolyAlgebra(3)
    gens = [Automorphism(k3, perm_matrix((1, 2, 0))), Automorphism(k3, Matrix.diag([-1, 1, 1]))]
    G = group_closure(gens)
    assert G.order == 24
    elems = set(G.elements)
    for g in G.elements:
        assert g.inverse() in elems
        for h in G.elements:
            assert compose(g, h) in elems


def test_group_closure_errors():
    k1 = SkewPolyAlgebra(1)
    with pytest.raises(ClosureExceedsCap):
        group_closure([Automorphism(k1, Matrix([[2]]))], cap=50)
    with pytest.raises(NotInvertible):
        group_closure([Automorphism(k1, Matrix([[0]]))])


def test_is_perfect_examples():
    k2 = SkewPolyAlgebra(2)
    assert not is_perfect(group_closure([Automorphism(k2, Matrix.diag([-1, -1]))]))
    assert is_perfect(AutGroup(k2, [identity_auto(k2)]))
    # the rotation group of the icosahedron, realized as even permutations of 5 letters
    k5 = SkewPolyAlgebra(5)
    a5 = group_closure([Automorphism(k5, perm_matrix((1, 2, 3, 4, 0))),
                        Automorphism(k5, perm_matrix((1, 2, 0, 3, 4)))])
    assert a5.order == 60
    assert is_perfect(a5)
    s4 = group_closure([Automorphism(k5, perm_matrix((1, 2, 3, 0, 4))),
                        Automorphism(k5, perm_matrix((1, 0, 2, 3, 4)))])
    assert s4.order == 24 and not is_perfect(s4)


# --- induced maps ----------------------------------------------------------

def test_koszul_transpose_examples():
    gt = koszul_transpose(Automorphism(ANTI, SWAP_NEG))
    assert gt.mat == SWAP_NEG
    assert gt.algebra == koszul_dual(ANTI)
    a = SkewPolyAlgebra(3, p={(0, 1): 2, (0, 2): 3, (1, 2): 5})
    assert koszul_transpose(Automorphism(a, Matrix.diag([2, 3, 5]))).mat == Matrix.diag([2, 3, 5])
    k3 = SkewPolyAlgebra(3)
    p = perm_matrix((1, 2, 0))
    gt = koszul_transpose(Automorphism(k3, p))
    assert gt.algebra == ExteriorAlgebra(3)
    assert gt.mat == p.T == p ** -1


def test_koszul_transpose_is_an_involution():
    rng = random.Random(51)
    algs = [SkewPolyAlgebra(3), SkewPolyAlgebra(3, p={(0, 1): -1}),
            SkewPolyAlgebra(4, p={(0, 1): -1, (2, 3): 2}), SkewPolyAlgebra(2, p={(0, 1): F(1, 3)})]
    for k in range(100):
        alg = algs[k % len(algs)]
        g = random_automorphism(rng, alg)
        back = koszul_transpose(koszul_transpose(g))
        assert back.algebra == alg and back.mat == g.mat


def test_exterior_extend_examples_and_functoriality():
    assert exterior_extend(SWAP_NEG, 3) == Matrix([[det(SWAP_NEG)]])
    assert exterior_extend(Matrix.identity(4), 2) == Matrix.identity(6)
    assert exterior_extend(Matrix([[0, -1], [-1, 0]]), 2) == Matrix([[-1]])
    rng = random.Random(61)
    k4 = SkewPolyAlgebra(4)
    for _ in range(30):
        g, h = random_automorphism(rng, k4), random_automorphism(rng, k4)
        for k in range(5):
            assert exterior_extend(g.mat, k) @ exterior_extend(h.mat, k) == exterior_extend(g.mat @ h.mat, k)


def test_filtered_decompose_examples():
    sigma, eps = filtered_decompose([{"x": "1", "1": "1"}], ["x"])
    assert sigma == Matrix([[1]]) and eps == (1,)
    g = Automorphism(ANTI, SWAP_NEG)
    assert filtered_decompose(g, ANTI.names) == (SWAP_NEG, (0, 0, 0))
    sigma, eps = filtered_decompose([{"x1": 1, "1": "2/3"}, {"y1": 1, "1": -5}], ["x1", "y1"])
    assert sigma == Matrix.identity(2) and eps == (F(2, 3), -5)
    with pytest.raises(DoesNotPreserveF1):
        filtered_decompose([{"x^2": 1}], ["x"])
    with pytest.raises(DimensionMismatch):
        filtered_decompose([{"x": 1}], ["x", "y"])


def test_from_images_and_serialization():
    g = from_images(ANTI, [{"y": "-1"}, {"x": "-1"}, {"z": "-1"}])
    assert g.mat == SWAP_NEG
    assert g.image_lists() == [{"y": "-1"}, {"x": "-1"}, {"z": "-1"}]
    w = WeylAlgebra(1)
    shift = from_images(w, [{"x1": 1, "1": "1/2"}, {"y1": 1}])
    assert check_auto(w, shift)
    assert from_images(w, shift.image_lists()) == shift
