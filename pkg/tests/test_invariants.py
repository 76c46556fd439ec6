from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

from qinvar import invariants as inv
from qinvar.algebras import (
    ExteriorAlgebra,
    QuantExteriorAlgebra,
    QuantumWeylAlgebra,
    QuotientAlgebra,
    SkewPolyAlgebra,
    TensorAlgebra,
    WeylAlgebra,
    hilbert_series,
)
from qinvar.automorphisms import (
    Automorphism,
    check_auto,
    compose,
    group_closure,
    identity_auto,
    random_automorphism,
    tensor_auto,
)
from qinvar.errors import HdetRouteConflict, LeadingExponentMismatch, UnsupportedCombination, UnsupportedLeaf, ZeroSeries
from qinvar.exactmath import Matrix, ParamScalar, Poly, RatFun, det, invert_t, series_coeffs, t_power
from qinvar.invariants import (
    AUSLANDER_GORENSTEIN_MACAULAY,
    GORENSTEIN_BY_STANLEY,
    KOSZUL_DUAL,
    NOT_GORENSTEIN,
    Known,
    Leaf,
    QuotientNode,
    TensorNode,
    hdet,
    hdet_rules,
    molien,
    reynolds_dims,
    stanley_check,
    trace_bruteforce,
    trace_closed,
    verdict,
)

T1 = Poly([1, 1])
M1 = Poly([1, -1])
M2 = Poly([1, 0, -1])


def formal_skew3():
    p = {(i, j): ParamScalar.symbol(f"p{i + 1}{j + 1}") for i in range(3) for j in range(i + 1, 3)}
    return SkewPolyAlgebra(3, p=p)


ANTI = SkewPolyAlgebra(3, p={(0, 1): -1})
SWAP_NEG = Matrix([[0, -1, 0], [-1, 0, 0], [0, 0, -1]])
CUBIC = QuotientAlgebra(SkewPolyAlgebra(2), 0, 3)
K2 = SkewPolyAlgebra(2)


def perm_matrix(perm, signs=None):
    n = len(perm)
    signs = signs or [1] * n
    return Matrix([[signs[j] if perm[j] == i else 0 for j in range(n)] for i in range(n)])


def catalogue():
    return [
        SkewPolyAlgebra(3),
        ANTI,
        SkewPolyAlgebra(3, p={(0, 1): 2, (0, 2): 3, (1, 2): 5}),
        SkewPolyAlgebra(3, degrees=(2, 1, 1)),
        SkewPolyAlgebra(3, degrees=(2, 1, 1), p={(0, 1): 2, (1, 2): 3}),
        ExteriorAlgebra(3),
        QuantExteriorAlgebra(3, p={(0, 1): -1}),
        QuantExteriorAlgebra(3, p={(0, 1): 2, (1, 2): F(1, 3)}),
        CUBIC,
        TensorAlgebra(SkewPolyAlgebra(2, p={(0, 1): 3}), ExteriorAlgebra(2)),
        TensorAlgebra(CUBIC, SkewPolyAlgebra(1)),
        WeylAlgebra(1),
        QuantumWeylAlgebra(1, 2),
        QuantumWeylAlgebra(2, 2, {(0, 1): 3}),
    ]


# --- traces ----------------------------------------------------------------

def test_trace_closed_examples():
    neg = Automorphism(formal_skew3(), Matrix.diag([-1, -1, -1]))
    assert trace_closed(neg.algebra, neg).value == RatFun(1, T1 ** 3)
    tr = trace_closed(ANTI, Automorphism(ANTI, SWAP_NEG))
    assert tr.value == RatFun(1, Poly([1, 1, 1, 1]))
    assert tr.method == KOSZUL_DUAL
    g = Automorphism(CUBIC, Matrix.diag([-1, -1]))
    assert trace_closed(CUBIC, g).value == RatFun(Poly([1, 0, 0, 1]), T1 ** 2)


def test_trace_bruteforce_examples():
    assert trace_bruteforce(ANTI, Automorphism(ANTI, SWAP_NEG), 5) == [1, -1, 0, 0, 1, -1]
    assert trace_bruteforce(K2, identity_auto(K2), 3) == [1, 2, 3, 4]
    k1 = SkewPolyAlgebra(1)
    assert trace_bruteforce(k1, Automorphism(k1, Matrix([[2]])), 3) == [1, 2, 4, 8]


def test_trace_of_identity_is_hilbert_series():
    for alg in catalogue():
        assert trace_closed(alg, identity_auto(alg)).value == hilbert_series(alg)


@pytest.mark.parametrize("idx", range(len(catalogue())))
def test_closed_form_agrees_with_bruteforce(idx):
    alg = catalogue()[idx]
    rng = random.Random(200 + idx)
    depth = 6 if isinstance(alg, (WeylAlgebra, QuantumWeylAlgebra)) else 8
    for _ in range(8):
        g = random_automorphism(rng, alg)
        closed = trace_closed(alg, g).value
        assert series_coeffs(closed, depth) == trace_bruteforce(alg, g, depth)
        assert series_coeffs(closed, 0) == [1]


def test_non_diagonal_map_on_weighted_skew_ring():
    # z is central of weight 2, so the ring is (anticommuting plane) (x) k[z];
    # the swap-negation has trace 1/(1+t^2) on the plane
    alg = SkewPolyAlgebra(3, degrees=(1, 1, 2), p={(0, 1): -1})
    g = Automorphism(alg, Matrix([[0, -1, 0], [-1, 0, 0], [0, 0, -1]]))
    assert check_auto(alg, g)
    tr = trace_closed(alg, g)
    assert tr.method == KOSZUL_DUAL
    assert tr.value == RatFun(1, Poly([1, 0, 1]) ** 2)
    assert series_coeffs(tr.value, 10) == trace_bruteforce(alg, g, 10)


def test_weighted_koszul_route_matches_bruteforce():
    rng = random.Random(83)
    vals = [F(1), F(-1), F(2), F(1, 3)]
    seen = 0
    while seen < 40:
        n = rng.randint(2, 4)
        degs = tuple(rng.choice([1, 2, 3]) for _ in range(n))
        alg = SkewPolyAlgebra(n, degrees=degs, p={(i, j): rng.choice(vals) for i in range(n) for j in range(i + 1, n)})
        g = random_automorphism(rng, alg)
        if g.mat.is_diagonal() or alg.is_commutative():
            continue
        seen += 1
        assert series_coeffs(trace_closed(alg, g).value, 9) == trace_bruteforce(alg, g, 9)
        # leading-term route agrees with the exponent predicted by the Gorenstein data
        hdet(alg, g)


def test_map_mixing_tensor_factors_is_unsupported():
    t = TensorAlgebra(SkewPolyAlgebra(1), SkewPolyAlgebra(1))
    swap = Automorphism(t, Matrix([[0, 1], [1, 0]]))
    assert check_auto(t, swap)
    with pytest.raises(UnsupportedCombination):
        trace_closed(t, swap)


def test_tensor_trace_is_product_of_factor_traces():
    rng = random.Random(71)
    left, right = SkewPolyAlgebra(2, p={(0, 1): -1}), ExteriorAlgebra(2)
    t = TensorAlgebra(left, right)
    for _ in range(30):
        g, h = random_automorphism(rng, left), random_automorphism(rng, right)
        gh = tensor_auto(t, g, h)
        assert trace_closed(t, gh).value == trace_closed(left, g).value * trace_closed(right, h).value
        assert hdet(t, gh).value == hdet(left, g).value * hdet(right, h).value


# --- homological determinant -----------------------------------------------

def test_hdet_examples():
    a = formal_skew3()
    r = hdet(a, Automorphism(a, Matrix.diag([-1, -1, -1])))
    assert r.value == -1 and (r.d, r.l) == (3, 3) and r.leading == (1, -3)
    assert hdet(CUBIC, Automorphism(CUBIC, Matrix.diag([-1, -1]))).value == -1
    for alg in catalogue():
        assert hdet(alg, identity_auto(alg)).value == 1


def test_hdet_of_anticommuting_swap():
    g = Automorphism(ANTI, SWAP_NEG)
    assert hdet(ANTI, g).value == -1
    assert det(SWAP_NEG) == 1


def test_hdet_rules_examples():
    rng = random.Random(81)
    a = SkewPolyAlgebra(3, p={(0, 1): 2, (0, 2): 3, (1, 2): 5})
    ext = ExteriorAlgebra(3)
    for _ in range(10):
        d = Matrix.diag([rng.choice([2, -1, F(1, 3), 5]) for _ in range(3)])
        node = TensorNode((Leaf(a, Automorphism(a, d)), Leaf(ext, Automorphism(ext, d))))
        assert hdet_rules(node) == 1
    assert hdet_rules(QuotientNode(Known(1), F(-1))) == -1
    assert hdet_rules(TensorNode((Leaf(K2, identity_auto(K2)), Leaf(ext, identity_auto(ext))))) == 1
    assert hdet_rules((CUBIC, Automorphism(CUBIC, Matrix.diag([-1, -1])))) == -1


def test_hdet_rules_unsupported_leaf():
    with pytest.raises(UnsupportedLeaf):
        hdet_rules(Leaf(ANTI, Automorphism(ANTI, SWAP_NEG)))


def test_hdet_is_multiplicative_on_diagonal_automorphisms():
    rng = random.Random(91)
    a = SkewPolyAlgebra(3, p={(0, 1): 2, (0, 2): 3, (1, 2): 5}, degrees=(1, 2, 3))
    vals = [F(2), F(-1), F(1, 3), F(-3, 2), F(5)]
    for _ in range(60):
        g = Automorphism(a, Matrix.diag([rng.choice(vals) for _ in range(3)]))
        h = Automorphism(a, Matrix.diag([rng.choice(vals) for _ in range(3)]))
        assert hdet(a, compose(g, h)).value == hdet(a, g).value * hdet(a, h).value


def test_quotient_rule_matches_leading_term_route():
    rng = random.Random(101)
    count = 0
    while count < 50:
        n = rng.randint(1, 3)
        p = {(i, j): rng.choice([1, -1, 2, F(1, 2)]) for i in range(n) for j in range(i + 1, n)}
        base = SkewPolyAlgebra(n, p=p)
        quot = QuotientAlgebra(base, rng.randrange(n), rng.randint(1, 3))
        g = random_automorphism(rng, quot)
        lead = hdet(quot, g, cross_check=False).value
        lam = inv.quotient_scalar(g, quot)
        base_g = Automorphism(base, g.mat)
        assert lead * lam == hdet(base, base_g, cross_check=False).value
        assert hdet_rules((quot, g)) == lead
        count += 1


def test_route_conflict_and_exponent_mismatch_are_detected(monkeypatch):
    g = Automorphism(CUBIC, Matrix.diag([-1, -1]))
    monkeypatch.setattr(inv, "_leaf_rule", lambda algebra, g: F(7))
    with pytest.raises(HdetRouteConflict):
        hdet(CUBIC, g)
    monkeypatch.undo()

    class Shifted(SkewPolyAlgebra):
        def gorenstein_data(self):
            from qinvar.algebras import GorensteinData

            return GorensteinData(2, 5)

    s = Shifted(2)
    with pytest.raises(LeadingExponentMismatch):
        hdet(s, identity_auto(s))


# --- Molien and Reynolds ---------------------------------------------------

def test_molien_examples():
    a = formal_skew3()
    G = group_closure([Automorphism(a, Matrix.diag([-1, -1, -1]))])
    assert molien(a, G) == RatFun(Poly([1, 0, 3]), M2 ** 3)
    H = group_closure([Automorphism(K2, Matrix.diag([-1, -1]))])
    assert molien(K2, H) == RatFun(Poly([1, 0, 1]), M2 ** 2)
    assert molien(ANTI, [identity_auto(ANTI)]) == hilbert_series(ANTI)


def test_reynolds_examples():
    H = group_closure([Automorphism(K2, Matrix.diag([-1, -1]))])
    assert reynolds_dims(K2, H, 4) == [1, 0, 3, 0, 5]
    assert reynolds_dims(K2, [identity_auto(K2)], 3) == [1, 2, 3, 4]
    a = formal_skew3()
    G = group_closure([Automorphism(a, Matrix.diag([-1, -1, -1]))])
    assert reynolds_dims(a, G, 3) == [1, 0, 6, 0]


def _random_signed_perm_group(rng, alg):
    n = alg.ngens
    gens = []
    while len(gens) < 2:
        m = perm_matrix(rng.sample(range(n), n), [rng.choice([1, -1]) for _ in range(n)])
        if check_auto(alg, m):
            gens.append(Automorphism(alg, m))
    return group_closure(gens)


def test_molien_equals_reynolds_dimensions():
    rng = random.Random(111)
    algs = [SkewPolyAlgebra(3), ANTI, ExteriorAlgebra(3), QuantExteriorAlgebra(3, p={(0, 1): -1}),
            CUBIC, TensorAlgebra(SkewPolyAlgebra(1), ExteriorAlgebra(2))]
    for alg in algs:
        for _ in range(2):
            G = _random_signed_perm_group(rng, alg)
            coeffs = series_coeffs(molien(alg, G), 8)
            assert all(c.denominator == 1 and c >= 0 for c in map(F, coeffs))
            assert coeffs == reynolds_dims(alg, G, 8)


# --- Stanley ---------------------------------------------------------------

def test_stanley_examples():
    assert not stanley_check(RatFun(Poly([1, 0, 3]), M2 ** 3)).symmetric
    r = stanley_check(RatFun(1, M1 ** 3))
    assert (r.symmetric, r.sign, r.m) == (True, -1, 3)
    r = stanley_check(RatFun(Poly([1, 0, 1]), M2 ** 2))
    assert (r.symmetric, r.sign, r.m) == (True, 1, 2)
    with pytest.raises(ZeroSeries):
        stanley_check(RatFun(0))


def test_stanley_symmetry_reconstructs():
    rng = random.Random(121)
    hits = 0
    for _ in range(300):
        k = rng.randint(1, 4)
        num = Poly([rng.choice([1, 2]) for _ in range(rng.randint(1, 3))])
        palin = num * Poly(list(reversed(num.coeffs))) if rng.random() < 0.5 else num
        H = RatFun(palin, M1 ** k * M2 ** rng.randint(0, 2))
        r = stanley_check(H)
        if r.symmetric:
            hits += 1
            assert invert_t(H) == RatFun.const(r.sign) * t_power(r.m) * H
    assert hits > 50


# --- verdicts --------------------------------------------------------------

def test_verdict_examples():
    a = formal_skew3()
    v = verdict(a, group_closure([Automorphism(a, Matrix.diag([-1, -1, -1]))]))
    assert v.outcome == NOT_GORENSTEIN
    v = verdict(K2, group_closure([Automorphism(K2, Matrix.diag([-1, -1]))]))
    assert v.outcome == AUSLANDER_GORENSTEIN_MACAULAY
    assert [val for _, val in v.evidence["hdet"]] == [1, 1]
    v = verdict(ANTI, group_closure([Automorphism(ANTI, SWAP_NEG)]))
    assert v.outcome == NOT_GORENSTEIN
    assert not v.evidence["stanley"].symmetric


def test_verdict_gorenstein_by_symmetry():
    # x -> -x on k[x]: invariants k[x^2], hdet -1 but the series is symmetric
    k1 = SkewPolyAlgebra(1)
    v = verdict(k1, group_closure([Automorphism(k1, Matrix([[-1]]))]))
    assert v.outcome == GORENSTEIN_BY_STANLEY
    assert v.evidence["stanley"].symmetric


def test_quotient_verdict_never_takes_the_positive_route():
    v = verdict(CUBIC, [identity_auto(CUBIC)])
    assert v.outcome != AUSLANDER_GORENSTEIN_MACAULAY
    v = verdict(CUBIC, group_closure([Automorphism(CUBIC, Matrix.diag([-1, -1]))]))
    assert v.outcome == NOT_GORENSTEIN
