"""Classical and quantum Weyl algebras: bracket maps and filtered automorphisms."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebras import QuantumWeylAlgebra, WeylAlgebra, q_generic
from .automorphisms import (
    DEFAULT_GROUP_CAP,
    Automorphism,
    check_auto,
    filtered_decompose,
    group_closure,
)
from .errors import (
    DeterminantNotOne,
    DimensionMismatch,
    HypothesesNotMet,
    NotAnAutomorphism,
    NotBracketMap,
    ShapeViolation,
)
from .exactmath import Matrix, det, to_scalar
from .invariants import (
    AUSLANDER_GORENSTEIN_MACAULAY,
    INCONCLUSIVE,
    Verdict,
    qweyl_triangular_diagonal,
)

CITE_WEYL = (
    "every linear part is a bracket map, so each homological determinant equals "
    "det sigma = 1; invariants of the Weyl algebra are then filtered Auslander-Gorenstein "
    "and GKdim-Macaulay"
)
CITE_QWEYL = (
    "for generic q every filtered automorphism is triangular with determinant 1, "
    "so the invariant ring is Auslander-Gorenstein and GKdim-Macaulay"
)


@dataclass(frozen=True)
class SymplecticSpace:
    """Generator space V_n with basis (x_1..x_n, y_1..y_n) and [y_i, x_j] = delta_ij."""

    n: int

    @property
    def dim(self) -> int:
        return 2 * self.n

    @property
    def J(self) -> Matrix:
        return symplectic_J(self.n)


def symplectic_J(n: int) -> Matrix:
    """Gram matrix of the bracket: J[a][b] = [basis_a, basis_b]."""
    rows = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        rows[n + i][i] = 1
        rows[i][n + i] = -1
    return Matrix(rows)


def _space(space) -> SymplecticSpace:
    return space if isinstance(space, SymplecticSpace) else SymplecticSpace(int(space))


def is_bracket_map(space, sigma: Matrix) -> bool:
    """sigma^T J sigma == J."""
    sp = _space(space)
    if sigma.shape != (sp.dim, sp.dim):
        raise DimensionMismatch(f"expected {sp.dim}x{sp.dim}, got {sigma.shape}")
    J = sp.J
    return sigma.T @ J @ sigma == J


def symplectic_det(space, sigma: Matrix):
    """det sigma for a bracket map; anything other than 1 is an internal error."""
    if not is_bracket_map(space, sigma):
        raise NotBracketMap("linear part does not preserve the bracket")
    d = det(sigma)
    if d != 1:
        raise DeterminantNotOne(f"bracket map with determinant {d}")
    return d


# elementary bracket maps ----------------------------------------------------

def transvection(n: int, v, c) -> Matrix:
    """u -> u + c * v * (v^T J u); preserves J identically."""
    J = symplectic_J(n)
    vJ = [sum(v[a] * J[a, b] for a in range(2 * n)) for b in range(2 * n)]
    c = Fraction(c)
    return Matrix([[int(a == b) + c * v[a] * vJ[b] for b in range(2 * n)] for a in range(2 * n)])


def pair_exchange(n: int, i: int) -> Matrix:
    """x_i -> -y_i, y_i -> x_i."""
    rows = [[int(a == b) for b in range(2 * n)] for a in range(2 * n)]
    rows[i][i] = rows[n + i][n + i] = 0
    rows[n + i][i] = -1
    rows[i][n + i] = 1
    return Matrix(rows)


def pair_scaling(n: int, i: int, alpha) -> Matrix:
    """x_i -> alpha x_i, y_i -> alpha^-1 y_i."""
    alpha = Fraction(alpha)
    d = [1] * (2 * n)
    d[i], d[n + i] = alpha, 1 / alpha
    return Matrix.diag(d)


_SMALL = [Fraction(x) for x in (1, -1, 2, -2, 3)] + [Fraction(1, 2), Fraction(-1, 3)]


def random_elementary(rng, n: int) -> Matrix:
    kind = rng.random()
    if kind < 0.6:
        v = [rng.randint(-1, 1) for _ in range(2 * n)]
        if not any(v):
            v[rng.randrange(2 * n)] = 1
        return transvection(n, v, rng.choice(_SMALL))
    if kind < 0.8:
        return pair_exchange(n, rng.randrange(n))
    return pair_scaling(n, rng.randrange(n), rng.choice(_SMALL))


def random_bracket_map(rng, n: int, length: int | None = None) -> Matrix:
    """Product of random elementary bracket maps."""
    length = rng.randint(1, 4) if length is None else length
    m = Matrix.identity(2 * n)
    for _ in range(length):
        m = m @ random_elementary(rng, n)
    return m


def _as_weyl_auto(a: WeylAlgebra, cand) -> Automorphism:
    if isinstance(cand, Automorphism):
        return cand
    if isinstance(cand, Matrix):
        return Automorphism(a, cand)
    sigma, eps = filtered_decompose(cand, a.names)
    return Automorphism(a, sigma, eps)


def weyl_verdict(n: int, G, close: bool = True, cap: int = DEFAULT_GROUP_CAP) -> Verdict:
    """Verdict for invariants of A_n under the group generated by (or, with
    ``close=False``, consisting of) the affine candidates in G."""
    a = WeylAlgebra(n)
    gens = [_as_weyl_auto(a, c) for c in G]
    for g in gens:
        if not is_bracket_map(n, g.mat):
            raise NotBracketMap("candidate does not define a Weyl algebra automorphism")
    elems = group_closure(gens, cap, algebra=a).elements if close else gens
    table = [(g, Fraction(symplectic_det(n, g.mat))) for g in elems]
    return Verdict(AUSLANDER_GORENSTEIN_MACAULAY, CITE_WEYL, {"hdet": table})


# quantum Weyl ----------------------------------------------------------------

@dataclass(frozen=True)
class QWeylShape:
    """Triangular normal form of a filtered automorphism of a quantum Weyl algebra."""

    alphas: tuple
    a: dict
    b: dict
    c: dict
    d: dict

    def matrix(self) -> Matrix:
        n = len(self.alphas)
        rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
        for i, al in enumerate(self.alphas):
            rows[i][i] = Fraction(al)
            rows[n + i][n + i] = 1 / Fraction(al)
        for (i, j), v in self.a.items():
            rows[j][i] = v
        for (i, j), v in self.b.items():
            rows[n + j][i] = v
        for (i, j), v in self.c.items():
            rows[j][n + i] = v
        for (i, j), v in self.d.items():
            rows[n + j][n + i] = v
        return Matrix(rows)


def check_qweyl_auto(a: QuantumWeylAlgebra, candidate) -> bool:
    g = candidate
    if isinstance(candidate, Matrix):
        g = Automorphism(a, candidate)
    elif not isinstance(candidate, Automorphism):
        sigma, eps = filtered_decompose(candidate, a.names)
        g = Automorphism(a, sigma, eps)
    if g.mat.shape != (a.ngens, a.ngens):
        raise DimensionMismatch("candidate does not act on 2n generators")
    return check_auto(a, g)


def qweyl_hypotheses(a: QuantumWeylAlgebra) -> list[str]:
    """Violated conditions among q^4 != 1, q p_ij != 1, q^3 p_ij != 1 (i != j)."""
    q = to_scalar(a.q)
    bad = []
    if q ** 4 == 1:
        bad.append("q^4 = 1")
    for i in range(a.n):
        for j in range(a.n):
            if i == j:
                continue
            p = a.p[i][j]
            if q * p == 1:
                bad.append(f"q*p{i + 1}{j + 1} = 1")
            if q ** 3 * p == 1:
                bad.append(f"q^3*p{i + 1}{j + 1} = 1")
    return bad


def classify_qweyl_auto(a: QuantumWeylAlgebra, g) -> QWeylShape:
    bad = qweyl_hypotheses(a)
    if bad:
        raise HypothesesNotMet("; ".join(bad))
    if not isinstance(g, Automorphism):
        g = Automorphism(a, g) if isinstance(g, Matrix) else Automorphism(a, *filtered_decompose(g, a.names))
    if not check_qweyl_auto(a, g):
        raise NotAnAutomorphism("candidate does not preserve the quantum Weyl relations")
    n = a.n
    m = g.mat
    alphas = qweyl_triangular_diagonal(n, m)
    if alphas is None or any(g.eps):
        raise ShapeViolation("automorphism outside the triangular shape despite generic parameters")
    blocks = {k: {} for k in "abcd"}
    for i in range(n):
        for j in range(i + 1, n):
            for key, (r, c) in zip("abcd", ((j, i), (n + j, i), (j, n + i), (n + j, n + i))):
                if m[r, c]:
                    blocks[key][(i, j)] = Fraction(m[r, c])
    shape = QWeylShape(tuple(alphas), blocks["a"], blocks["b"], blocks["c"], blocks["d"])
    if shape.matrix() != m:
        raise ShapeViolation("triangular reassembly differs from the candidate")
    d = det(m)
    if d != 1:
        raise DeterminantNotOne(f"quantum Weyl automorphism with determinant {d}")
    return shape


def qweyl_verdict(a: QuantumWeylAlgebra, G, close: bool = True, cap: int = DEFAULT_GROUP_CAP) -> Verdict:
    ps = [a.p[i][j] for i in range(a.n) for j in range(i + 1, a.n)]
    if not q_generic(a.q, ps):
        return Verdict(INCONCLUSIVE, "q is not generic with respect to the p_ij; the triangular classification does not apply", {})
    bad = qweyl_hypotheses(a)
    if bad:
        return Verdict(INCONCLUSIVE, "parameter conditions fail: " + "; ".join(bad), {})
    gens = [g if isinstance(g, Automorphism) else Automorphism(a, g) for g in G]
    elems = group_closure(gens, cap, algebra=a).elements if close else gens
    table = []
    for g in elems:
        shape = classify_qweyl_auto(a, g)
        table.append((g, Fraction(det(shape.matrix()))))
    return Verdict(AUSLANDER_GORENSTEIN_MACAULAY, CITE_QWEYL, {"hdet": table})


def random_qweyl_candidate(rng, n: int, off_shape: bool) -> Matrix:
    """A diagonal scaling, optionally perturbed by one forbidden coupling.

    Forbidden positions: coupling x_i or y_i to a lower-index generator, or
    x_i <-> y_i within a pair.
    """
    alphas = [rng.choice(_SMALL) for _ in range(n)]
    rows = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i, al in enumerate(alphas):
        rows[i][i] = al
        rows[n + i][n + i] = 1 / al
    # allowed upper couplings
    for col in range(2 * n):
        for row in range(2 * n):
            if row % n > col % n and rng.random() < 0.3:
                rows[row][col] = rng.choice(_SMALL)
    if off_shape:
        forbidden = [(r, c) for c in range(2 * n) for r in range(2 * n)
                     if r % n < c % n or (r % n == c % n and r != c)]
        r, c = rng.choice(forbidden)
        rows[r][c] = rng.choice(_SMALL)
    return Matrix(rows)

