"""Trace series, homological determinants, Molien series and verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebras import (
    Algebra,
    QuantExteriorAlgebra,
    QuantumWeylAlgebra,
    QuotientAlgebra,
    SkewPolyAlgebra,
    TensorAlgebra,
    WeylAlgebra,
    gorenstein_data,
    graded_basis,
    nf_mul,
    q_generic,
)
from .automorphisms import (
    AutGroup,
    Automorphism,
    koszul_transpose,
    quotient_scalar,
)
from .errors import (
    HdetRouteConflict,
    LeadingExponentMismatch,
    NotAnAutomorphism,
    QinvarError,
    UnsupportedCombination,
    UnsupportedLeaf,
    ZeroSeries,
)
from .exactmath import (
    Matrix,
    Poly,
    RatFun,
    charpoly,
    det,
    invert_t,
    leading_at_infinity,
    rank,
)

CLOSED_FORM = "closed-form"
KOSZUL_DUAL = "koszul-dual"
BRUTE_FORCE = "brute-force-truncated"


@dataclass(frozen=True)
class TraceSeries:
    value: RatFun
    method: str = CLOSED_FORM
    maxdeg: int | None = None


@dataclass(frozen=True)
class HdetResult:
    value: Fraction
    d: int
    l: int
    leading: tuple


@dataclass(frozen=True)
class StanleyResult:
    symmetric: bool
    sign: int | None = None
    m: int | None = None


AUSLANDER_GORENSTEIN_MACAULAY = "AuslanderGorensteinAndMacaulay"
GORENSTEIN_BY_STANLEY = "GorensteinByStanley"
NOT_GORENSTEIN = "NotGorenstein"
INCONCLUSIVE = "Inconclusive"

CITE_TRIVIAL_HDET = (
    "every element has homological determinant 1, and invariants of a filtered "
    "Auslander-Gorenstein, GKdim-Macaulay ring under such a group keep both properties"
)
CITE_STANLEY_FAIL = (
    "the Hilbert series of the Cohen-Macaulay invariant ring violates Stanley's "
    "functional equation H(1/t) = +-t^m H(t), so it is not Gorenstein (Eisenbud, Commutative Algebra)"
)
CITE_STANLEY_PASS = (
    "the Hilbert series satisfies H(1/t) = +-t^m H(t) and the associated graded ring is "
    "Auslander-regular in characteristic zero (Jorgensen-Zhang symmetry criterion)"
)


@dataclass
class Verdict:
    outcome: str
    justification: str
    evidence: dict = field(default_factory=dict)


# ---------------------------------------------------------------- helpers

def _unit(n: int, i: int) -> tuple:
    return tuple(int(k == i) for k in range(n))


def restrict(g: Automorphism, algebra: Algebra, offset: int) -> Automorphism:
    """The block of g acting on a tensor factor starting at ``offset``."""
    k = algebra.ngens
    m = g.mat
    if any(m[i, j] for j in range(offset, offset + k) for i in range(m.nrows)
           if not offset <= i < offset + k):
        raise UnsupportedCombination("automorphism mixes tensor factors")
    sub = Matrix([[m[i, j] for j in range(offset, offset + k)] for i in range(offset, offset + k)])
    return Automorphism(algebra, sub, g.eps[offset:offset + k])


def graded_model(algebra: Algebra) -> Algebra:
    """The (associated) graded algebra on which traces are taken."""
    if isinstance(algebra, WeylAlgebra):
        return SkewPolyAlgebra(2 * algebra.n, names=algebra.names)
    if isinstance(algebra, QuantumWeylAlgebra) and not algebra.graded:
        return algebra.associated_graded()
    if isinstance(algebra, TensorAlgebra) and algebra.filtered:
        return TensorAlgebra(graded_model(algebra.left), graded_model(algebra.right))
    return algebra


def _charpoly_reverse(m: Matrix, sign: int = -1) -> Poly:
    """det(1 + sign * t * M) as a polynomial in t."""
    n = m.nrows
    cp = charpoly(m)
    # det(xI - M) = sum_k (-1)^k e_k x^(n-k), e_k = elementary symmetric in eigenvalues
    return Poly([Fraction(sign * -1) ** k * cp[n - k] for k in range(n + 1)])


def _stretch(p: Poly, d: int) -> Poly:
    out = [0] * (d * (len(p.coeffs) - 1) + 1)
    for i, c in enumerate(p.coeffs):
        out[i * d] = c
    return Poly(out)


# ------------------------------------------------------------------ traces

def trace_closed(algebra: Algebra, g: Automorphism) -> TraceSeries:
    """Closed-form trace series Sum_n tr(g | A_n) t^n."""
    if isinstance(algebra, SkewPolyAlgebra):
        m = g.mat
        if algebra.is_commutative():
            den = Poly([1])
            for d in sorted(set(algebra.degrees)):
                idx = [i for i in range(algebra.n) if algebra.degrees[i] == d]
                den = den * _stretch(_charpoly_reverse(m.submatrix(idx, idx)), d)
            return TraceSeries(RatFun(Poly([1]), den))
        if m.is_diagonal():
            den = Poly([1])
            for i in range(algebra.n):
                den = den * Poly.one_minus(algebra.degrees[i], m[i, i])
            return TraceSeries(RatFun(Poly([1]), den))
        if all(d == 1 for d in algebra.degrees):
            gt = koszul_transpose(g)
            dual_trace = trace_closed(gt.algebra, gt).value
            return TraceSeries(1 / dual_trace.substitute_neg(), KOSZUL_DUAL)
        return TraceSeries(_weighted_koszul_trace(algebra, g), KOSZUL_DUAL)
    if isinstance(algebra, QuantExteriorAlgebra):
        if algebra.is_classical():
            return TraceSeries(RatFun(_charpoly_reverse(g.mat, 1)))
        # finite-dimensional: the degreewise traces are the whole series
        return TraceSeries(RatFun(Poly(trace_bruteforce(algebra, g, algebra.n))))
    if isinstance(algebra, QuotientAlgebra):
        lam = quotient_scalar(g, algebra)
        if lam is None or (g.lam is not None and g.lam != lam):
            raise NotAnAutomorphism("automorphism does not scale the normal element as declared")
        base = trace_closed(algebra.base, Automorphism(algebra.base, g.mat)).value
        factor = RatFun(Poly.one_minus(algebra.normal_degree, lam))
        return TraceSeries(factor * base)
    if isinstance(algebra, TensorAlgebra):
        left = trace_closed(algebra.left, restrict(g, algebra.left, 0))
        right = trace_closed(algebra.right, restrict(g, algebra.right, algebra.split))
        method = KOSZUL_DUAL if KOSZUL_DUAL in (left.method, right.method) else CLOSED_FORM
        return TraceSeries(left.value * right.value, method)
    if isinstance(algebra, WeylAlgebra):
        return TraceSeries(RatFun(Poly([1]), _charpoly_reverse(g.mat)))
    if isinstance(algebra, QuantumWeylAlgebra):
        alphas = qweyl_triangular_diagonal(algebra.n, g.mat)
        if alphas is None:
            raise UnsupportedCombination("quantum Weyl automorphism outside the triangular shape")
        den = Poly([1])
        for a in alphas:
            den = den * Poly.one_minus(1, a) * Poly.one_minus(1, 1 / a)
        return TraceSeries(RatFun(Poly([1]), den))
    raise UnsupportedCombination(f"no trace formula for {type(algebra).__name__}")


def _weighted_koszul_trace(algebra: SkewPolyAlgebra, g: Automorphism) -> RatFun:
    """Euler characteristic of the Koszul resolution with weighted generators.

    g only mixes generators of equal weight, so it is also an automorphism of
    the same ring with every weight set to 1.  Each wedge monomial x_S of the
    dual contributes (-1)^|S| t^(sum of the weights in S) to the inverse series.
    """
    flat = SkewPolyAlgebra(algebra.n, None, [list(r) for r in algebra.p], algebra.names)
    gt = koszul_transpose(Automorphism(flat, g.mat))
    bases, images = graded_images(gt.algebra, gt, algebra.n)
    coeffs = [Fraction(0)] * (sum(algebra.degrees) + 1)
    for k, basis in enumerate(bases):
        for mono in basis:
            c = images[mono].get(mono, 0)
            if c:
                w = sum(d for d, e in zip(algebra.degrees, mono) if e)
                coeffs[w] += (-1) ** k * c
    return RatFun(Poly([1]), Poly(coeffs))


def qweyl_triangular_diagonal(n: int, m: Matrix):
    """alphas if m is block upper-triangular in the pairs (x_i, y_i) with
    diagonal blocks diag(alpha_i, 1/alpha_i); otherwise None."""
    alphas = []
    for col in range(2 * n):
        for row in range(2 * n):
            if not m[row, col]:
                continue
            pr, pc = row % n, col % n
            if pr < pc or (pr == pc and row != col):
                return None
    for i in range(n):
        a, b = m[i, i], m[n + i, n + i]
        if not a or a * b != 1:
            return None
        alphas.append(Fraction(a))
    return alphas


def graded_images(algebra: Algebra, g: Automorphism, maxdeg: int):
    """Images under g of every ordered monomial of degree <= maxdeg, on the
    associated graded algebra.  Returns (bases by degree, images dict)."""
    model = graded_model(algebra)
    n = model.ngens
    lin = [{_unit(n, i): Fraction(g.mat[i, j]) for i in range(n) if g.mat[i, j]} for j in range(n)]
    zero = (0,) * n
    images = {zero: {zero: Fraction(1)}}
    bases = [[zero]]
    for deg in range(1, maxdeg + 1):
        basis = graded_basis(model, deg)
        for mono in basis:
            b = max(i for i in range(n) if mono[i])
            prev = mono[:b] + (mono[b] - 1,) + mono[b + 1:]
            images[mono] = nf_mul(model, images[prev], lin[b])
        bases.append(basis)
    return bases, images


def trace_bruteforce(algebra: Algebra, g: Automorphism, maxdeg: int) -> list[Fraction]:
    """tr(g | A_n) for n = 0..maxdeg by applying g to a PBW basis."""
    bases, images = graded_images(algebra, g, maxdeg)
    return [sum((images[m].get(m, 0) for m in basis), Fraction(0)) for basis in bases]


# ----------------------------------------------------------------- hdet

def hdet(algebra: Algebra, g: Automorphism, cross_check: bool = True) -> HdetResult:
    """Homological determinant from the leading term of the trace at infinity."""
    tr = trace_closed(algebra, g).value
    c, e = leading_at_infinity(tr)
    gd = gorenstein_data(algebra)
    if e != -gd.l:
        raise LeadingExponentMismatch(f"trace leading exponent {e}, expected {-gd.l}")
    value = 1 / (Fraction((-1) ** gd.d) * c)
    if cross_check:
        try:
            other = hdet_rules(Leaf(algebra, g))
        except UnsupportedLeaf:
            other = None
        if other is not None and other != value:
            raise HdetRouteConflict(f"leading term gives {value}, composition rules give {other}")
    return HdetResult(value, gd.d, gd.l, (c, e))


@dataclass(frozen=True)
class Leaf:
    algebra: Algebra
    g: Automorphism


@dataclass(frozen=True)
class TensorNode:
    parts: tuple


@dataclass(frozen=True)
class QuotientNode:
    base: object
    lam: Fraction


@dataclass(frozen=True)
class Known:
    value: Fraction


def rule_tree(algebra: Algebra, g: Automorphism):
    """Decompose (algebra, g) into tensor/quotient nodes over basic leaves."""
    if isinstance(algebra, TensorAlgebra):
        return TensorNode((rule_tree(algebra.left, restrict(g, algebra.left, 0)),
                           rule_tree(algebra.right, restrict(g, algebra.right, algebra.split))))
    if isinstance(algebra, QuotientAlgebra):
        lam = quotient_scalar(g, algebra)
        if lam is None:
            raise UnsupportedLeaf("automorphism does not scale the normal element")
        return QuotientNode(rule_tree(algebra.base, Automorphism(algebra.base, g.mat)), lam)
    return Leaf(algebra, g)


def _leaf_rule(algebra: Algebra, g: Automorphism) -> Fraction:
    m = g.mat
    if isinstance(algebra, SkewPolyAlgebra):
        if algebra.is_commutative() or m.is_diagonal():
            return Fraction(det(m))
        raise UnsupportedLeaf("no determinant rule for a non-diagonal map of a noncommutative skew polynomial ring")
    if isinstance(algebra, QuantExteriorAlgebra):
        if algebra.is_classical() or m.is_diagonal():
            return 1 / Fraction(det(m))
        raise UnsupportedLeaf("no determinant rule for a non-diagonal map of a quantized exterior algebra")
    if isinstance(algebra, WeylAlgebra):
        return Fraction(det(m))
    if isinstance(algebra, QuantumWeylAlgebra):
        if qweyl_triangular_diagonal(algebra.n, m) is None:
            raise UnsupportedLeaf("quantum Weyl map outside the triangular shape")
        return Fraction(det(m))
    raise UnsupportedLeaf(f"no rule for {type(algebra).__name__}")


def hdet_rules(parts) -> Fraction:
    """hdet from the compositional rules, never touching a trace series.

    ``parts`` is a :class:`Leaf`, :class:`TensorNode`, :class:`QuotientNode`,
    :class:`Known`, or an ``(algebra, g)`` pair to be decomposed.
    """
    if isinstance(parts, tuple) and len(parts) == 2 and isinstance(parts[0], Algebra):
        parts = rule_tree(*parts)
    if isinstance(parts, Known):
        return Fraction(parts.value)
    if isinstance(parts, Leaf):
        if isinstance(parts.algebra, (TensorAlgebra, QuotientAlgebra)):
            return hdet_rules(rule_tree(parts.algebra, parts.g))
        return _leaf_rule(parts.algebra, parts.g)
    if isinstance(parts, TensorNode):
        out = Fraction(1)
        for p in parts.parts:
            out *= hdet_rules(p)
        return out
    if isinstance(parts, QuotientNode):
        # the normal element scales by lam: hdet(base) = lam * hdet(quotient)
        return hdet_rules(parts.base) / Fraction(parts.lam)
    raise UnsupportedLeaf(f"cannot evaluate {parts!r}")


# -------------------------------------------------- invariant ring series

def molien(algebra: Algebra, G) -> RatFun:
    """(1/|G|) Sum_g Tr(g, t)."""
    elems = list(G)
    total = RatFun(Poly([0]))
    for g in elems:
        total = total + trace_closed(algebra, g).value
    return total * RatFun(Poly([Fraction(1, len(elems))]))


def reynolds_dims(algebra: Algebra, G, maxdeg: int) -> list[int]:
    """Dimension of the invariants in each degree via the averaging projection."""
    elems = list(G)
    per_g = [graded_images(algebra, g, maxdeg) for g in elems]
    bases = per_g[0][0]
    out = []
    for deg, basis in enumerate(bases):
        k = len(basis)
        acc = [[Fraction(0)] * k for _ in range(k)]
        for _, images in per_g:
            for j, mono in enumerate(basis):
                for i, other in enumerate(basis):
                    c = images[mono].get(other)
                    if c:
                        acc[i][j] += c
        out.append(rank(Matrix(acc)) if k else 0)
    return out


def stanley_check(H: RatFun) -> StanleyResult:
    """Is H(1/t) = sign * t^m * H(t)?"""
    if H.is_zero():
        raise ZeroSeries("Stanley test on the zero series")
    R = invert_t(H) / H
    num, den = R.num, R.den
    num_terms = [(i, c) for i, c in enumerate(num.coeffs) if c]
    den_terms = [(i, c) for i, c in enumerate(den.coeffs) if c]
    if len(num_terms) == 1 and len(den_terms) == 1 and num_terms[0][1] in (1, -1):
        sign = int(num_terms[0][1] / den_terms[0][1])
        return StanleyResult(True, sign, num_terms[0][0] - den_terms[0][0])
    return StanleyResult(False)


# --------------------------------------------------------------- verdicts

def _positive_route(algebra: Algebra) -> bool:
    """Rings known to be filtered Auslander-Gorenstein and GKdim-Macaulay."""
    if isinstance(algebra, (SkewPolyAlgebra, QuantExteriorAlgebra, WeylAlgebra)):
        return True
    if isinstance(algebra, QuantumWeylAlgebra):
        return q_generic(algebra.q, [algebra.p[i][j] for i in range(algebra.n) for j in range(i + 1, algebra.n)])
    if isinstance(algebra, TensorAlgebra):
        return _positive_route(algebra.left) and _positive_route(algebra.right)
    return False


def _regular_catalogue(algebra: Algebra) -> bool:
    """Associated graded ring known to be Auslander-regular (char 0)."""
    if isinstance(algebra, (SkewPolyAlgebra, QuantExteriorAlgebra, WeylAlgebra, QuantumWeylAlgebra)):
        return True
    if isinstance(algebra, TensorAlgebra):
        return _regular_catalogue(algebra.left) and _regular_catalogue(algebra.right)
    return False


def verdict(algebra: Algebra, G) -> Verdict:
    """Apply the decision procedure: trivial hdet, then Stanley symmetry."""
    elems = list(G)
    table = [(g, hdet(algebra, g).value) for g in elems]
    evidence: dict = {"hdet": table}
    if all(v == 1 for _, v in table):
        if _positive_route(algebra):
            return Verdict(AUSLANDER_GORENSTEIN_MACAULAY, CITE_TRIVIAL_HDET, evidence)
    H = molien(algebra, elems)
    st = stanley_check(H)
    evidence["molien"] = H
    evidence["stanley"] = st
    if not st.symmetric:
        return Verdict(NOT_GORENSTEIN, CITE_STANLEY_FAIL, evidence)
    if _regular_catalogue(algebra):
        return Verdict(GORENSTEIN_BY_STANLEY, CITE_STANLEY_PASS, evidence)
    return Verdict(
        INCONCLUSIVE,
        "Hilbert series is symmetric but the ring is outside the catalogue where symmetry suffices",
        evidence,
    )
