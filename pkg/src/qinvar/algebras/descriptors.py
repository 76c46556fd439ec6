"""Algebra descriptors.

Every descriptor exposes the same small interface used by the rewriting
engine:

* ``ngens``, ``names``, ``degrees`` -- generators in their fixed PBW order;
* ``rule(b, a)`` -- for an adjacent pair ``x_b x_a`` with ``b >= a``, either
  ``None`` (already ordered) or a list of ``(coef, word)`` replacements, each
  word being a tuple of generator indices that is strictly smaller;
* ``relations()`` -- defining relations as lists of ``(coef, word)``;
* ``allows(exps)`` -- whether an ordered monomial survives (quotients);
* ``hilbert_series()`` and ``gorenstein_data()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import QinvarError, UnsupportedAlgebra
from ..exactmath import Poly, RatFun, format_scalar, invert, to_scalar


@dataclass(frozen=True)
class GorensteinData:
    """Injective dimension ``d`` and degree shift ``l``."""

    d: int
    l: int

    def __add__(self, other: "GorensteinData") -> "GorensteinData":
        return GorensteinData(self.d + other.d, self.l + other.l)


def _p_table(n: int, p) -> tuple[tuple, ...]:
    """Normalize p to a full n x n table with p_ii = 1, p_ji = 1/p_ij.

    Accepts None (commutative), a dict ``{(i, j): value}`` for i < j (0-based),
    or a full square table.
    """
    table = [[Fraction(1)] * n for _ in range(n)]
    if p is None:
        return tuple(tuple(r) for r in table)
    if isinstance(p, dict):
        for (i, j), v in p.items():
            if i == j:
                raise QinvarError("p_ii is fixed to 1")
            v = to_scalar(v)
            table[i][j] = v
            table[j][i] = invert(v)
        return tuple(tuple(r) for r in table)
    rows = [list(r) for r in p]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise QinvarError("p table has wrong shape")
    for i in range(n):
        if rows[i][i] != 1:
            raise QinvarError("p_ii must be 1")
        for j in range(n):
            if rows[i][j] * rows[j][i] != 1:
                raise QinvarError(f"p_{i+1}{j+1} * p_{j+1}{i+1} != 1")
    return tuple(tuple(to_scalar(x) for x in r) for r in rows)


def _names(names, prefix: str, n: int) -> tuple[str, ...]:
    if names is None:
        return tuple(f"{prefix}{i + 1}" for i in range(n))
    names = tuple(names)
    if len(names) != n or len(set(names)) != n:
        raise QinvarError("generator names must be distinct, one per generator")
    return names


class Algebra:
    """Base class; subclasses fill in the rewriting data."""

    filtered = False
    kind = "abstract"

    def __init__(self):
        self._mono_gen_cache: dict = {}

    def rule(self, b: int, a: int):
        raise NotImplementedError

    def relations(self) -> list:
        raise NotImplementedError

    def allows(self, exps: tuple) -> bool:
        return True

    def hilbert_series(self) -> RatFun:
        raise NotImplementedError

    def gorenstein_data(self) -> GorensteinData:
        raise UnsupportedAlgebra(f"no Gorenstein data for {self.kind}")

    def key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash((type(self).__name__, self.key()))

    def index(self, name) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.ngens:
                raise QinvarError(f"generator index {name} out of range")
            return name
        try:
            return self.names.index(name)
        except ValueError:
            raise QinvarError(f"unknown generator {name!r}") from None

    def __repr__(self):
        return f"{type(self).__name__}{self.key()!r}"


class SkewPolyAlgebra(Algebra):
    """k_p[x_1..x_n] with x_i x_j = p_ij x_j x_i and weighted degrees."""

    kind = "skew_poly"

    def __init__(self, n: int, degrees=None, p=None, names=None):
        super().__init__()
        self.n = self.ngens = n
        self.degrees = tuple(degrees) if degrees is not None else (1,) * n
        if len(self.degrees) != n or any(d < 1 for d in self.degrees):
            raise QinvarError("degrees must be positive, one per generator")
        self.p = _p_table(n, p)
        self.names = _names(names, "x", n)

    def key(self):
        return (self.n, self.degrees, self.p, self.names)

    def is_commutative(self) -> bool:
        return all(x == 1 for r in self.p for x in r)

    def rule(self, b, a):
        if b == a:
            return None
        return [(self.p[b][a], (a, b))]

    def relations(self):
        rels = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                rels.append([(Fraction(1), (i, j)), (-self.p[i][j], (j, i))])
        return rels

    def hilbert_series(self):
        den = Poly([1])
        for d in self.degrees:
            den = den * Poly.one_minus(d)
        return RatFun(Poly([1]), den)

    def gorenstein_data(self):
        return GorensteinData(self.n, sum(self.degrees))

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]


class QuantExteriorAlgebra(Algebra):
    """Lambda_p(V): x_i^2 = 0 and x_i x_j + p_ij^{-1} x_j x_i = 0."""

    kind = "quant_exterior"

    def __init__(self, n: int, p=None, names=None):
        super().__init__()
        self.n = self.ngens = n
        self.degrees = (1,) * n
        self.p = _p_table(n, p)
        self.names = _names(names, "x", n)

    def key(self):
        return (self.n, self.p, self.names)

    def is_classical(self) -> bool:
        return all(x == 1 for r in self.p for x in r)

    def rule(self, b, a):
        if b == a:
            return []
        # x_b x_a = -p_ab x_a x_b  (a < b)
        return [(-self.p[a][b], (a, b))]

    def relations(self):
        rels = [[(Fraction(1), (i, i))] for i in range(self.n)]
        for i in range(self.n):
            for j in range(i + 1, self.n):
                rels.append([(Fraction(1), (i, j)), (invert(self.p[i][j]), (j, i))])
        return rels

    def allows(self, exps):
        return all(e <= 1 for e in exps)

    def hilbert_series(self):
        return RatFun(Poly([1, 1]) ** self.n)

    def gorenstein_data(self):
        return GorensteinData(0, -self.n)


def ExteriorAlgebra(n: int, names=None) -> QuantExteriorAlgebra:
    return QuantExteriorAlgebra(n, None, names)


class QuantumWeylAlgebra(Algebra):
    """A_n(q, p_ij): generators x_1..x_n, y_1..y_n in that PBW order.

    With ``graded=True`` the constant term of the y_i x_i relation is dropped,
    giving the associated graded algebra.
    """

    kind = "quantum_weyl"

    def __init__(self, n: int, q, p=None, graded: bool = False):
        super().__init__()
        self.n = n
        self.ngens = 2 * n
        self.degrees = (1,) * (2 * n)
        self.q = to_scalar(q)
        invert(self.q)
        self.p = _p_table(n, p)
        self.graded = graded
        self.filtered = not graded
        self.names = tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(n))

    def key(self):
        return (self.n, self.q, self.p, self.graded)

    def associated_graded(self) -> "QuantumWeylAlgebra":
        return QuantumWeylAlgebra(self.n, self.q, self.p, graded=True)

    def rule(self, b, a):
        n, q, p = self.n, self.q, self.p
        if b == a:
            return None
        if b < n:  # x_b x_a, a < b:  x_a x_b = p_ab q x_b x_a
            return [(invert(p[a][b] * q), (a, b))]
        if a >= n:  # y_j y_i, i < j:  y_i y_j = p_ij q^-1 y_j y_i
            i, j = a - n, b - n
            return [(invert(p[i][j] * invert(q)), (a, b))]
        i, j = b - n, a  # y_i x_j
        if i != j:
            return [(invert(p[i][j]) * q, (a, b))]
        q2 = q * q
        out = [] if self.graded else [(Fraction(1), ())]
        out.append((q2, (i, n + i)))
        if q2 != 1:
            for k in range(i + 1, n):
                out.append((q2 - 1, (k, n + k)))
        return out

    def relations(self):
        n, q, p = self.n, self.q, self.p
        one = Fraction(1)
        rels = []
        for i in range(n):
            for j in range(i + 1, n):
                rels.append([(one, (i, j)), (-(p[i][j] * q), (j, i))])
                rels.append([(one, (n + i, n + j)), (-(p[i][j] * invert(q)), (n + j, n + i))])
        for i in range(n):
            for j in range(n):
                if i != j:
                    rels.append([(one, (n + i, j)), (-(invert(p[i][j]) * q), (j, n + i))])
        q2 = q * q
        for i in range(n):
            rel = [(one, (n + i, i)), (-q2, (i, n + i))]
            if not self.graded:
                rel.append((-one, ()))
            for k in range(i + 1, n):
                if q2 != 1:
                    rel.append((-(q2 - 1), (k, n + k)))
            rels.append(rel)
        return rels

    def hilbert_series(self):
        return RatFun(Poly([1]), Poly.one_minus(1) ** (2 * self.n))

    def gorenstein_data(self):
        return GorensteinData(2 * self.n, 2 * self.n)


class WeylAlgebra(Algebra):
    """Classical A_n: [x_i, x_j] = [y_i, y_j] = 0, [y_i, x_j] = delta_ij."""

    kind = "weyl"
    filtered = True

    def __init__(self, n: int):
        super().__init__()
        self.n = n
        self.ngens = 2 * n
        self.degrees = (1,) * (2 * n)
        self.names = tuple(f"x{i + 1}" for i in range(n)) + tuple(f"y{i + 1}" for i in range(n))

    def key(self):
        return (self.n,)

    def rule(self, b, a):
        if b == a:
            return None
        out = [(Fraction(1), (a, b))]
        if b >= self.n and a < self.n and b - self.n == a:
            out.append((Fraction(1), ()))
        return out

    def relations(self):
        n, one = self.n, Fraction(1)
        rels = []
        for i in range(2 * n):
            for j in range(i + 1, 2 * n):
                rel = [(one, (j, i)), (-one, (i, j))]
                if i < n and j == i + n:
                    rel.append((-one, ()))
                rels.append(rel)
        return rels

    def hilbert_series(self):
        return RatFun(Poly([1]), Poly.one_minus(1) ** (2 * self.n))

    def gorenstein_data(self):
        return GorensteinData(2 * self.n, 2 * self.n)


class TensorAlgebra(Algebra):
    """left (x) right; generators of the two factors commute."""

    kind = "tensor"

    def __init__(self, left: Algebra, right: Algebra):
        super().__init__()
        self.left, self.right = left, right
        self.split = left.ngens
        self.ngens = left.ngens + right.ngens
        self.degrees = tuple(left.degrees) + tuple(right.degrees)
        self.filtered = left.filtered or right.filtered
        rnames = list(right.names)
        taken = set(left.names)
        for k, nm in enumerate(rnames):
            while nm in taken:
                nm += "'"
            rnames[k] = nm
            taken.add(nm)
        self.names = tuple(left.names) + tuple(rnames)

    def key(self):
        return (self.left.key(), type(self.left).__name__, self.right.key(), type(self.right).__name__)

    def rule(self, b, a):
        s = self.split
        if b < s:
            return self.left.rule(b, a)
        if a >= s:
            rep = self.right.rule(b - s, a - s)
            if rep is None:
                return None
            return [(c, tuple(x + s for x in w)) for c, w in rep]
        return [(Fraction(1), (a, b))]

    def relations(self):
        s = self.split
        rels = [list(r) for r in self.left.relations()]
        for r in self.right.relations():
            rels.append([(c, tuple(x + s for x in w)) for c, w in r])
        one = Fraction(1)
        for i in range(s):
            for j in range(s, self.ngens):
                rels.append([(one, (j, i)), (-one, (i, j))])
        return rels

    def allows(self, exps):
        s = self.split
        return self.left.allows(exps[:s]) and self.right.allows(exps[s:])

    def hilbert_series(self):
        return self.left.hilbert_series() * self.right.hilbert_series()

    def gorenstein_data(self):
        return self.left.gorenstein_data() + self.right.gorenstein_data()


class QuotientAlgebra(Algebra):
    """base / (x_var^power) for a skew polynomial base; x_var^power is normal."""

    kind = "quotient"

    def __init__(self, base: Algebra, var, power: int):
        super().__init__()
        if not isinstance(base, SkewPolyAlgebra):
            raise UnsupportedAlgebra("quotients are supported over skew polynomial rings only")
        if power < 1:
            raise QinvarError("power must be positive")
        self.base = base
        self.var = base.index(var)
        self.power = power
        self.ngens = base.ngens
        self.degrees = base.degrees
        self.names = base.names

    @property
    def normal_degree(self) -> int:
        return self.power * self.degrees[self.var]

    def key(self):
        return (self.base.key(), self.var, self.power)

    def rule(self, b, a):
        return self.base.rule(b, a)

    def relations(self):
        return self.base.relations()

    def allows(self, exps):
        return exps[self.var] < self.power and self.base.allows(exps)

    def hilbert_series(self):
        return self.base.hilbert_series() * RatFun(Poly.one_minus(self.normal_degree))

    def gorenstein_data(self):
        g = self.base.gorenstein_data()
        return GorensteinData(g.d - 1, g.l - self.normal_degree)


def hilbert_series(algebra: Algebra) -> RatFun:
    return algebra.hilbert_series()


def gorenstein_data(algebra: Algebra) -> GorensteinData:
    return algebra.gorenstein_data()


def describe(algebra: Algebra) -> str:
    """Short human-readable description used in reports."""
    if isinstance(algebra, SkewPolyAlgebra):
        ps = ", ".join(
            f"p{i + 1}{j + 1}={format_scalar(algebra.p[i][j])}" for i, j in algebra.pairs()
        )
        degs = "" if set(algebra.degrees) == {1} else f", degrees {list(algebra.degrees)}"
        return f"skew polynomial ring in {', '.join(algebra.names)} ({ps or 'no pairs'}{degs})"
    if isinstance(algebra, QuantExteriorAlgebra):
        kind = "exterior algebra" if algebra.is_classical() else "quantized exterior algebra"
        return f"{kind} on {', '.join(algebra.names)}"
    if isinstance(algebra, TensorAlgebra):
        return f"[{describe(algebra.left)}] tensor [{describe(algebra.right)}]"
    if isinstance(algebra, QuotientAlgebra):
        return f"[{describe(algebra.base)}] / ({algebra.names[algebra.var]}^{algebra.power})"
    if isinstance(algebra, QuantumWeylAlgebra):
        return f"quantum Weyl algebra A_{algebra.n}(q={format_scalar(algebra.q)})"
    if isinstance(algebra, WeylAlgebra):
        return f"Weyl algebra A_{algebra.n}"
    return repr(algebra)
