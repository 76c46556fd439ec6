"""Graded and filtered automorphisms, relation checks, and finite groups."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations

from .algebras import (
    Algebra,
    QuantExteriorAlgebra,
    QuantumWeylAlgebra,
    QuotientAlgebra,
    SkewPolyAlgebra,
    TensorAlgebra,
    WeylAlgebra,
    evaluate_under,
    koszul_dual,
    nf_mul,
    p_distinct,
    p_distinct_strict,
)
from .errors import (
    ClosureExceedsCap,
    DimensionMismatch,
    DoesNotPreserveF1,
    DualRelationViolation,
    HypothesesNotMet,
    NotAnAutomorphism,
    NotDiagonalizableShape,
    NotInvertible,
)
from .exactmath import Matrix, compound, det, inverse, parse_rational

DEFAULT_GROUP_CAP = 10_000


@dataclass(frozen=True)
class Automorphism:
    """Affine action on the generators: g(x_j) = sum_i mat[i, j] x_i + eps[j].

    Graded automorphisms have ``eps`` all zero.  ``lam`` optionally pins the
    scalar by which g acts on the normal element of a quotient.
    """

    algebra: Algebra
    mat: Matrix
    eps: tuple = field(default=())
    lam: Fraction | None = None

    def __post_init__(self):
        n = self.algebra.ngens
        if self.mat.shape != (n, n):
            raise DimensionMismatch(f"matrix {self.mat.shape} does not act on {n} generators")
        eps = tuple(self.eps) if self.eps else (0,) * n
        if len(eps) != n:
            raise DimensionMismatch("constant part has wrong length")
        object.__setattr__(self, "eps", tuple(Fraction(e) if not isinstance(e, int) else e for e in eps))

    @property
    def sigma(self) -> Matrix:
        return self.mat

    def is_graded(self) -> bool:
        return not any(self.eps)

    def key(self) -> tuple:
        return (self.mat, self.eps)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __matmul__(self, other: "Automorphism") -> "Automorphism":
        """Composition self o other."""
        return compose(self, other)

    def inverse(self) -> "Automorphism":
        if det(self.mat) == 0:
            raise NotInvertible("singular linear part")
        minv = inverse(self.mat)
        # g^-1 o g = id:  e' = -e_g * G^-1 as a row vector
        eps = tuple(-sum((self.eps[i] * minv[i, j] for i in range(len(self.eps))), 0) for j in range(len(self.eps)))
        return Automorphism(self.algebra, minv, eps, None if self.lam is None else 1 / self.lam)

    def images(self) -> list[dict]:
        """Normal forms of g(x_j)."""
        n = self.algebra.ngens
        zero = (0,) * n
        out = []
        for j in range(n):
            f = {}
            for i in range(n):
                if self.mat[i, j]:
                    f[tuple(int(k == i) for k in range(n))] = Fraction(self.mat[i, j])
            if self.eps[j]:
                f[zero] = Fraction(self.eps[j])
            out.append(f)
        return out

    def image_lists(self) -> list[dict]:
        """Serializable generator-image lists with "p/q" coefficients."""
        from .exactmath import format_rational

        names = self.algebra.names
        out = []
        for j in range(self.algebra.ngens):
            img = {names[i]: format_rational(self.mat[i, j]) for i in range(self.algebra.ngens) if self.mat[i, j]}
            if self.eps[j]:
                img["1"] = format_rational(self.eps[j])
            out.append(img)
        return out


GradedAuto = Automorphism
FilteredAuto = Automorphism


def identity_auto(algebra: Algebra) -> Automorphism:
    return Automorphism(algebra, Matrix.identity(algebra.ngens))


def compose(g: Automorphism, h: Automorphism) -> Automorphism:
    mat = g.mat @ h.mat
    n = len(h.eps)
    eps = tuple(sum((g.eps[i] * h.mat[i, j] for i in range(n)), 0) + h.eps[j] for j in range(n))
    lam = None if g.lam is None or h.lam is None else g.lam * h.lam
    return Automorphism(g.algebra, mat, eps, lam)


def from_images(algebra: Algebra, images, lam=None) -> Automorphism:
    """Build from per-generator dicts ``{name: "p/q", "1": const}``."""
    sigma, eps = filtered_decompose(images, algebra.names)
    return Automorphism(algebra, sigma, eps, None if lam is None else parse_rational(lam))


def filtered_decompose(images, names) -> tuple[Matrix, tuple]:
    """Split an action on F_1 = k + V into linear part sigma and constants eps.

    ``images`` is either an :class:`Automorphism` or a list of dicts mapping
    generator names (or ``"1"`` for the constant) to rationals.
    """
    if isinstance(images, Automorphism):
        return images.mat, images.eps
    names = list(names)
    n = len(names)
    if len(images) != n:
        raise DimensionMismatch(f"{len(images)} images for {n} generators")
    cols, eps = [], []
    for j, img in enumerate(images):
        col = [0] * n
        const = 0
        for key, val in img.items():
            v = parse_rational(val)
            if key == "1":
                const += v
            elif key in names:
                col[names.index(key)] += v
            else:
                raise DoesNotPreserveF1(f"image of {names[j]} contains {key!r}, outside k + V")
        cols.append(col)
        eps.append(const)
    return Matrix.from_columns(cols), tuple(eps)


def _degree_preserving(algebra: Algebra, m: Matrix) -> bool:
    d = algebra.degrees
    return all(not m[i, j] or d[i] == d[j] for i in range(m.nrows) for j in range(m.ncols))


def _quotient_nodes(algebra: Algebra, offset: int = 0):
    if isinstance(algebra, QuotientAlgebra):
        yield algebra, offset
    elif isinstance(algebra, TensorAlgebra):
        yield from _quotient_nodes(algebra.left, offset)
        yield from _quotient_nodes(algebra.right, offset + algebra.split)


def quotient_scalar(g: Automorphism, node: QuotientAlgebra, offset: int = 0):
    """Scalar by which g scales x_var^power, or None if it does not."""
    v = offset + node.var
    base = node.base
    block = range(offset, offset + base.ngens)
    m = g.mat
    if any(m[i, v] for i in range(m.nrows) if i != v) or g.eps[v]:
        # commutative base with power 1 would still need a pure image; be strict
        return None
    b = m[v, v]
    if not b:
        return None
    # verify inside the base ring as well: g(x_v)^k == b^k x_v^k
    sub = [{tuple(int(k == i - offset) for k in range(base.ngens)): Fraction(m[i, j])
            for i in block if m[i, j]} for j in block]
    f = {(0,) * base.ngens: Fraction(1)}
    for _ in range(node.power):
        f = nf_mul(base, f, sub[node.var])
    target = tuple(node.power if k == node.var else 0 for k in range(base.ngens))
    if set(f) != {target}:
        return None
    return Fraction(f[target])


def check_auto(algebra: Algebra, candidate) -> bool:
    """Do the defining relations survive the candidate map?

    ``candidate`` is an Automorphism or a Matrix (linear, graded).
    """
    g = candidate if isinstance(candidate, Automorphism) else Automorphism(algebra, candidate)
    n = algebra.ngens
    if g.mat.shape != (n, n):
        raise DimensionMismatch("candidate does not match the generator space")
    if det(g.mat) == 0:
        return False
    if not algebra.filtered and not g.is_graded():
        return False
    if not _degree_preserving(algebra, g.mat):
        return False
    images = g.images()
    for rel in algebra.relations():
        total: dict = {}
        for c, w in rel:
            for m, v in evaluate_under(algebra, images, w).items():
                s = total.get(m, 0) + c * v
                if s:
                    total[m] = s
                else:
                    total.pop(m, None)
        # relations only need to vanish modulo the quotient ideal
        if any(algebra.allows(m) for m in total):
            return False
    nodes = list(_quotient_nodes(algebra))
    for node, off in nodes:
        lam = quotient_scalar(g, node, off)
        if lam is None:
            return False
        if g.lam is not None and len(nodes) == 1 and lam != g.lam:
            return False
    return True


def quotient_scalars(g: Automorphism) -> list[Fraction]:
    """Scalars on each quotient's normal element, in preorder."""
    out = []
    nodes = list(_quotient_nodes(g.algebra))
    for node, off in nodes:
        lam = quotient_scalar(g, node, off)
        if lam is None:
            raise NotAnAutomorphism("automorphism does not scale the normal element")
        out.append(lam)
    return out


def require_auto(g: Automorphism) -> Automorphism:
    if not check_auto(g.algebra, g):
        raise NotAnAutomorphism("candidate does not preserve the defining relations")
    return g


def classify_skew_auto(a: SkewPolyAlgebra, g: Automorphism) -> tuple:
    """Diagonal scalars (b_1..b_n) of an automorphism of a p-distinct skew polynomial ring."""
    if not isinstance(a, SkewPolyAlgebra):
        raise HypothesesNotMet("classification needs a skew polynomial ring")
    if not p_distinct(a):
        raise HypothesesNotMet("p_ij (i < j) are not pairwise distinct")
    require_auto(g)
    if not g.mat.is_diagonal():
        if not p_distinct_strict(a):
            # pairwise distinct alone allows p_ij = 1 or p_ij = p_kl^-1, which
            # admit genuine non-diagonal symmetries
            raise HypothesesNotMet(
                "non-diagonal automorphism: some p_ij equals 1 or the inverse of another p_kl"
            )
        raise NotDiagonalizableShape(
            "automorphism of a p-distinct skew polynomial ring is not diagonal"
        )
    return tuple(g.mat[i, i] for i in range(a.n))


@dataclass
class AutGroup:
    """A finite, closure-verified group of automorphisms."""

    algebra: Algebra
    elements: list

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in set(self.elements)


def group_closure(gens, cap: int = DEFAULT_GROUP_CAP, algebra: Algebra | None = None) -> AutGroup:
    """Close a list of automorphisms under composition (BFS, deterministic)."""
    gens = list(gens)
    if algebra is None:
        if not gens:
            raise ValueError("need generators or an algebra")
        algebra = gens[0].algebra
    for g in gens:
        if det(g.mat) == 0:
            raise NotInvertible("generator has singular linear part")
    ident = identity_auto(algebra)
    seen = {ident: None}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                if len(order) >= cap:
                    raise ClosureExceedsCap(f"group exceeds {cap} elements")
                seen[y] = None
                order.append(y)
                queue.append(y)
    return AutGroup(algebra, order)


def is_perfect(G: AutGroup) -> bool:
    """G == [G, G], computed on the matrices."""
    elems = list(G.elements)
    inv = {g: g.inverse() for g in elems}
    comms = {compose(compose(a, b), compose(inv[a], inv[b])) for a in elems for b in elems}
    H = group_closure(sorted(comms, key=lambda g: (g.mat.rows, g.eps)), cap=len(elems) + 1, algebra=G.algebra)
    return H.order == G.order


def koszul_transpose(g: Automorphism) -> Automorphism:
    """The transpose action on the Koszul dual, certified against the dual relations."""
    dual = koszul_dual(g.algebra)
    gt = Automorphism(dual, g.mat.T)
    if not check_auto(dual, gt):
        raise DualRelationViolation("transpose does not respect the dual relations")
    return gt


def exterior_extend(mat: Matrix, k: int) -> Matrix:
    """Induced action on the k-th wedge power (ordered k-subsets)."""
    return compound(mat, k)


# random generation (test instances) -------------------------------------

SMALL_RATIONALS = [Fraction(x) for x in (1, -1, 2, -2, 3, -3)] + [Fraction(1, 2), Fraction(-1, 2), Fraction(2, 3), Fraction(-3, 2)]


def _twin_classes(alg) -> list[list[int]]:
    """Generators that are interchangeable: mutually commuting (p = 1), same degree,
    same p towards everybody else."""
    n = alg.n
    degs = getattr(alg, "degrees", (1,) * n)
    classes: list[list[int]] = []
    for i in range(n):
        for cls in classes:
            j = cls[0]
            if (degs[i] == degs[j] and alg.p[i][j] == 1
                    and all(alg.p[k][i] == alg.p[k][j] for k in range(n) if k not in (i, j))):
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


def _p_symmetries(alg) -> list[tuple]:
    n = alg.n
    degs = getattr(alg, "degrees", (1,) * n)
    out = []
    for s in permutations(range(n)):
        if all(degs[s[i]] == degs[i] for i in range(n)) and all(
            alg.p[s[i]][s[j]] == alg.p[i][j] for i in range(n) for j in range(n)
        ):
            out.append(s)
    return out


def _random_invertible(rng, k: int) -> list[list[Fraction]]:
    while True:
        m = [[rng.choice(SMALL_RATIONALS + [Fraction(0)] * 3) for _ in range(k)] for _ in range(k)]
        if det(Matrix(m)) != 0:
            return m


def _random_pq_auto_matrix(rng, alg, fixed_var: int | None = None) -> Matrix:
    n = alg.n
    sym = rng.choice(_p_symmetries(alg))
    if fixed_var is not None:
        while sym[fixed_var] != fixed_var:
            sym = rng.choice(_p_symmetries(alg))
    m = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        m[sym[j]][j] = rng.choice(SMALL_RATIONALS)
    if rng.random() < 0.5:
        for cls in _twin_classes(alg):
            if fixed_var in cls or len(cls) < 2:
                continue
            block = _random_invertible(rng, len(cls))
            for a, i in enumerate(cls):
                for b, j in enumerate(cls):
                    m[i][j] = block[a][b]
    return Matrix(m)


def random_automorphism(rng, algebra: Algebra, max_tries: int = 200) -> Automorphism:
    """A random automorphism certified by :func:`check_auto`."""
    for _ in range(max_tries):
        g = _random_candidate(rng, algebra)
        if check_auto(algebra, g):
            return g
    raise RuntimeError(f"could not find an automorphism of {algebra!r}")


def _random_candidate(rng, algebra: Algebra) -> Automorphism:
    if isinstance(algebra, (SkewPolyAlgebra, QuantExteriorAlgebra)):
        return Automorphism(algebra, _random_pq_auto_matrix(rng, algebra))
    if isinstance(algebra, QuotientAlgebra):
        return Automorphism(algebra, _random_pq_auto_matrix(rng, algebra.base, algebra.var))
    if isinstance(algebra, TensorAlgebra):
        gl = random_automorphism(rng, algebra.left)
        gr = random_automorphism(rng, algebra.right)
        return Automorphism(algebra, block_diag(gl.mat, gr.mat), gl.eps + gr.eps)
    if isinstance(algebra, QuantumWeylAlgebra):
        alphas = [rng.choice(SMALL_RATIONALS) for _ in range(algebra.n)]
        return Automorphism(algebra, Matrix.diag(alphas + [1 / a for a in alphas]))
    if isinstance(algebra, WeylAlgebra):
        from .weyl import random_bracket_map

        sigma = random_bracket_map(rng, algebra.n)
        eps = tuple(rng.choice(SMALL_RATIONALS + [Fraction(0)]) for _ in range(algebra.ngens))
        return Automorphism(algebra, sigma, eps)
    raise NotImplementedError(type(algebra).__name__)


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    n, m = a.nrows, b.nrows
    rows = [list(r) + [0] * m for r in a.rows] + [[0] * n + list(r) for r in b.rows]
    return Matrix(rows)


def tensor_auto(algebra: TensorAlgebra, g: Automorphism, h: Automorphism) -> Automorphism:
    """g (x) h acting on left (x) right."""
    return Automorphism(algebra, block_diag(g.mat, h.mat), g.eps + h.eps)
