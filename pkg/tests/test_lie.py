from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from qinvar.errors import (
    EpsilonNotVanishingOnDerived,
    InvalidTypeRank,
    NotLieAutomorphism,
    NotNilpotent,
)
from qinvar.exactmath import Matrix, det, kernel
from qinvar.invariants import AUSLANDER_GORENSTEIN_MACAULAY, NOT_GORENSTEIN
from qinvar.lie import (
    DiagramAuto,
    antisymmetry_violations,
    bracket_defect,
    build_root_system,
    cartan_matrix,
    diagram_auto_matrix,
    inner_exp,
    is_lie_automorphism,
    jacobi_violations,
    lie_algebra,
    lie_det,
    random_nilpotent,
    standard_diagram_autos,
    transpose_negation_matrix,
    u_verdict,
)

ROOT_COUNTS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 5): 30,
    ("B", 2): 8, ("B", 3): 18, ("C", 3): 18, ("C", 4): 32,
    ("D", 4): 24, ("D", 5): 40,
    ("G", 2): 12, ("F", 4): 48, ("E", 6): 72, ("E", 7): 126, ("E", 8): 240,
}


def tau0(type_, rank, name):
    return DiagramAuto.from_one_based(standard_diagram_autos(type_, rank)[name])


def order_of(M):
    k, P = 1, M
    while P != Matrix.identity(M.nrows):
        P, k = P @ M, k + 1
        assert k < 10
    return k


# --- root systems ----------------------------------------------------------

@pytest.mark.parametrize("tr", sorted(ROOT_COUNTS))
def test_root_counts(tr):
    rs = build_root_system(*tr)
    assert len(rs.roots) == ROOT_COUNTS[tr]
    assert len(rs.positive) * 2 == len(rs.roots)
    assert all(rs.is_root(tuple(-x for x in a)) for a in rs.roots)


def test_root_strings_match_cartan_integers():
    for tr in [("B", 3), ("G", 2), ("F", 4)]:
        rs = build_root_system(*tr)
        C = rs.cartan
        for a in rs.roots:
            for i in range(rs.rank):
                ai = tuple(int(k == i) for k in range(rs.rank))
                if a == ai or a == tuple(-x for x in ai):
                    continue
                p = q = 0
                while rs.is_root(tuple(a[k] - (p + 1) * ai[k] for k in range(rs.rank))):
                    p += 1
                while rs.is_root(tuple(a[k] + (q + 1) * ai[k] for k in range(rs.rank))):
                    q += 1
                # p - q = <a, alpha_i^vee>
                assert p - q == sum(a[j] * C[i, j] for j in range(rs.rank))


def test_invalid_type_rank():
    for tr in [("A", 0), ("B", 1), ("D", 3), ("E", 5), ("G", 3), ("Z", 2)]:
        with pytest.raises(InvalidTypeRank):
            build_root_system(*tr)


def test_cartan_matrix_examples():
    assert cartan_matrix("A", 2) == Matrix([[2, -1], [-1, 2]])
    assert cartan_matrix("G", 2) in (Matrix([[2, -1], [-3, 2]]), Matrix([[2, -3], [-1, 2]]))


# --- Chevalley basis -------------------------------------------------------

def test_sl2_brackets():
    L = lie_algebra("A", 1)
    assert L.dim == 3
    e, f, h = L.e(0), L.f(0), L.h(0)
    assert L.bracket(h, e) == {k: 2 * v for k, v in e.items()}
    assert L.bracket(h, f) == {k: -2 * v for k, v in f.items()}
    assert L.bracket(e, f) == h


@pytest.mark.parametrize("tr", [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4), ("G", 2)])
def test_jacobi_and_antisymmetry_exhaustive(tr):
    L = lie_algebra(*tr)
    assert L.dim == tr[1] + ROOT_COUNTS.get(tr, len(build_root_system(*tr).roots))
    assert antisymmetry_violations(L) == 0
    assert jacobi_violations(L) == 0


def test_jacobi_sampled_on_f4():
    L = lie_algebra("F", 4)
    assert L.dim == 52
    assert jacobi_violations(L, seed=3, samples=5000) == 0


def test_root_vector_pairs_bracket_into_cartan():
    L = lie_algebra("B", 3)
    for k in range(L.npos):
        v = L.bracket({L.rank + k: 1}, {L.rank + L.npos + k: 1})
        assert v and all(i < L.rank for i in v)


# --- diagram automorphisms -------------------------------------------------

def test_identity_diagram_auto():
    L = lie_algebra("A", 3)
    assert diagram_auto_matrix(L, DiagramAuto((0, 1, 2))) == Matrix.identity(L.dim)


def test_a2_reversal():
    L = lie_algebra("A", 2)
    M = diagram_auto_matrix(L, tau0("A", 2, "g"))
    assert order_of(M) == 2
    assert len(kernel(M - Matrix.identity(L.dim))) == 3
    assert bracket_defect(L, M) == 0


def test_d4_triality():
    L = lie_algebra("D", 4)
    x = diagram_auto_matrix(L, tau0("D", 4, "x"))
    y = diagram_auto_matrix(L, tau0("D", 4, "y"))
    assert order_of(x) == 3 and order_of(y) == 2
    assert det(x) == 1 and det(y) == -1


def test_non_diagram_permutation_is_rejected():
    with pytest.raises(NotLieAutomorphism):
        diagram_auto_matrix(lie_algebra("B", 3), DiagramAuto((2, 1, 0)))
    with pytest.raises(NotLieAutomorphism):
        diagram_auto_matrix(lie_algebra("A", 2), DiagramAuto((0, 0)))


def test_lie_det_examples():
    assert lie_det("D", 4, tau0("D", 4, "x")) == 1
    assert lie_det("D", 4, tau0("D", 4, "y")) == -1
    assert lie_det("D", 5, tau0("D", 5, "g")) == -1
    assert lie_det("D", 6, tau0("D", 6, "g")) == -1


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_type_a_reversal_matches_transpose_negation(n):
    d = lie_det("A", n, tau0("A", n, "g"))
    assert d == det(transpose_negation_matrix(n))
    assert d == (-1) ** (n * (n + 3) // 2)


def test_transpose_negation_examples():
    assert transpose_negation_matrix(1).nrows == 3
    assert [det(transpose_negation_matrix(n)) for n in (2, 3, 4, 5)] == [-1, -1, 1, 1]


# --- inner automorphisms ---------------------------------------------------

def test_inner_exp_examples():
    L = lie_algebra("A", 1)
    assert inner_exp(L, {}) == Matrix.identity(3)
    U = inner_exp(L, L.e(0))
    assert det(U) == 1 and U != Matrix.identity(3)
    assert (U - Matrix.identity(3)) ** 3 == Matrix.zeros(3, 3)
    with pytest.raises(NotNilpotent):
        inner_exp(L, L.h(0))


def test_inner_exp_inverse_and_det():
    rng = random.Random(23)
    for tr in [("B", 2), ("A", 3), ("G", 2)]:
        L = lie_algebra(*tr)
        for _ in range(5):
            x = random_nilpotent(rng, L, negative=rng.random() < 0.5)
            if rng.random() < 0.5:
                x = {k: F(v, 3) for k, v in x.items()}
            U = inner_exp(L, x)
            assert det(U) == 1
            assert U @ inner_exp(L, {k: -v for k, v in x.items()}) == Matrix.identity(L.dim)
            assert is_lie_automorphism(L, U)


def test_det_is_constant_on_inner_cosets():
    rng = random.Random(29)
    for tr, name in [(("A", 3), "g"), (("D", 4), "y"), (("A", 2), "g")]:
        L = lie_algebra(*tr)
        M = diagram_auto_matrix(L, tau0(*tr, name))
        for _ in range(4):
            U = inner_exp(L, random_nilpotent(rng, L)) @ inner_exp(L, random_nilpotent(rng, L, True))
            assert is_lie_automorphism(L, U @ M)
            assert det(U @ M) == det(M)


# --- verdicts on enveloping algebras --------------------------------------

def test_u_verdict_inner_group_is_positive():
    L = lie_algebra("A", 1)
    # exp(ad e) has infinite order: judge the generators themselves
    v = u_verdict(L, [inner_exp(L, L.e(0)), inner_exp(L, L.f(0))], close=False)
    assert v.outcome == AUSLANDER_GORENSTEIN_MACAULAY


def test_u_verdict_a2_involution_fails_stanley():
    L = lie_algebra("A", 2)
    M = diagram_auto_matrix(L, tau0("A", 2, "g"))
    v = u_verdict(L, [M])
    assert v.outcome == NOT_GORENSTEIN
    assert not v.evidence["stanley"].symmetric


def test_u_verdict_rejects_bad_candidates():
    L = lie_algebra("A", 1)
    with pytest.raises(NotLieAutomorphism):
        u_verdict(L, [Matrix.diag([2, 1, 1])])
    # eps must vanish on [L, L] = L for a simple algebra
    with pytest.raises(EpsilonNotVanishingOnDerived):
        u_verdict(L, [{"sigma": Matrix.identity(3), "eps": (1, 0, 0)}])
