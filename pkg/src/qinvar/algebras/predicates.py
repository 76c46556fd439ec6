"""Koszul duality and the parameter hypotheses used by the verdict rules."""

from __future__ import annotations

from fractions import Fraction

from ..errors import MixedParameters, NotQuadratic, QinvarError, ZeroParameter
from ..exactmath import Matrix, ParamScalar, factor_rational, invert, is_formal, lattice_min_multiple, solve
from .descriptors import QuantExteriorAlgebra, SkewPolyAlgebra
from .rewriting import nf_mul


def koszul_dual(a):
    """Skew polynomial ring <-> quantized exterior algebra with the same p-table."""
    if isinstance(a, SkewPolyAlgebra):
        if set(a.degrees) != {1}:
            raise NotQuadratic("Koszul dual needs all generators in degree 1")
        return QuantExteriorAlgebra(a.n, [list(r) for r in a.p], a.names)
    if isinstance(a, QuantExteriorAlgebra):
        return SkewPolyAlgebra(a.n, None, [list(r) for r in a.p], a.names)
    raise NotQuadratic(f"no Koszul dual for {a.kind}")


def _upper_entries(a) -> list:
    return [a.p[i][j] for i in range(a.n) for j in range(i + 1, a.n)]


def p_distinct(a: SkewPolyAlgebra) -> bool:
    """Entries p_ij (i < j) pairwise distinct."""
    vals = _upper_entries(a)
    return all(vals[k] != vals[m] for k in range(len(vals)) for m in range(k + 1, len(vals)))


def p_distinct_strict(a: SkewPolyAlgebra) -> bool:
    """Pairwise distinct, no p_ij equal to 1, and no p_ij equal to any p_kl^-1."""
    vals = _upper_entries(a)
    if not p_distinct(a) or any(v == 1 for v in vals):
        return False
    invs = [invert(v) for v in vals]
    return not any(v == w for v in vals for w in invs)


def q_generic(q, ps) -> bool:
    """True iff no positive power of q lies in the group generated by ``ps``.

    Formal symbols count as multiplicatively free.  Mixing formal symbols
    with numeric parameters other than 1 is refused.
    """
    vals = [q, *ps]
    for v in vals:
        if not v:
            raise ZeroParameter("parameters must be nonzero")
    formal = [v for v in vals if is_formal(v)]
    if formal:
        numeric = [v for v in vals if not is_formal(v) and v != 1]
        if numeric:
            raise MixedParameters("cannot mix formal and numeric parameters in a genericity test")
        vecs = [ParamScalar._coerce(v).exponent_vector() for v in vals]
    else:
        vecs = [factor_rational(v) for v in vals]
    return lattice_min_multiple(vecs[0], vecs[1:]) is None


def is_normal_degree1(v, a: SkewPolyAlgebra) -> bool:
    """Is the degree-one element sum v_i x_i normal?

    For each generator x_j solve x_j * v = v * w for w in degree one; in a
    graded domain this left-to-right inclusion forces Av = vA.
    """
    if len(set(a.degrees)) != 1:
        raise QinvarError("is_normal_degree1 needs equal generator degrees")
    n = a.n
    unit = [tuple(int(i == k) for i in range(n)) for k in range(n)]
    vel = {unit[i]: Fraction(c) for i, c in enumerate(v) if c}
    if not vel:
        return True
    # columns: v * x_k for each k
    cols = [nf_mul(a, vel, {unit[k]: Fraction(1)}) for k in range(n)]
    for j in range(n):
        rhs = nf_mul(a, {unit[j]: Fraction(1)}, vel)
        monos = sorted({m for c in cols for m in c} | set(rhs))
        mat = Matrix([[c.get(m, 0) for c in cols] for m in monos])
        if solve(mat, [rhs.get(m, 0) for m in monos]) is None:
            return False
    return True
