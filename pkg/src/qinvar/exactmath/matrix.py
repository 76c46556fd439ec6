"""Small exact dense matrices over Q (entries are ints or Fractions)."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from ..errors import DimensionMismatch, NotSquare, SingularMatrix


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


class Matrix:
    """Immutable rectangular matrix; hashable, so it can live in sets.

    Convention throughout the package: column ``j`` is the image of basis
    vector ``j``, so composition ``g o h`` is ``G @ H``.
    """

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows, ncols: int | None = None):
        rows = tuple(tuple(_norm(x if isinstance(x, (int, Fraction)) else Fraction(x)) for x in r) for r in rows)
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else (ncols or 0)
        if any(len(r) != self.ncols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "Matrix":
        return cls([[0] * c for _ in range(r)], ncols=c)

    @classmethod
    def diag(cls, entries) -> "Matrix":
        entries = list(entries)
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols) -> "Matrix":
        cols = [list(c) for c in cols]
        if not cols:
            return cls([])
        return cls([[c[i] for c in cols] for i in range(len(cols[0]))])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix([list(c) for c in zip(*self.rows)] if self.rows else [], ncols=self.nrows)

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.rows)
        return self._hash

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = list(zip(*other.rows))
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append([sum((a * c[k] for k, a in nz if c[k]), 0) for c in cols])
            return Matrix(out, ncols=other.ncols)
        vec = list(other)
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length mismatch")
        return tuple(_norm(sum((a * v for a, v in zip(r, vec) if a), 0)) for r in self.rows)

    def __add__(self, other):
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def __sub__(self, other):
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], ncols=self.ncols)

    def scale(self, c) -> "Matrix":
        return Matrix([[c * a for a in r] for r in self.rows], ncols=self.ncols)

    def __neg__(self):
        return self.scale(-1)

    def __pow__(self, n: int):
        if not self.is_square():
            raise NotSquare("power of non-square matrix")
        if n < 0:
            return inverse(self) ** (-n)
        out, base = Matrix.identity(self.nrows), self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base
            n >>= 1
        return out

    def submatrix(self, rows, cols) -> "Matrix":
        return Matrix([[self.rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def trace(self):
        return sum((self.rows[i][i] for i in range(min(self.shape))), 0)

    def is_diagonal(self) -> bool:
        return all(not x for i, r in enumerate(self.rows) for j, x in enumerate(r) if i != j)

    def is_identity(self) -> bool:
        return self.is_square() and self == Matrix.identity(self.nrows)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"Matrix({[[str(x) for x in r] for r in self.rows]})"


def det(m: Matrix):
    """Determinant by fraction-free Bareiss elimination."""
    if not m.is_square():
        raise NotSquare(f"determinant of {m.shape} matrix")
    n = m.nrows
    if n == 0:
        return 1
    # clear denominators row by row so the elimination runs over the integers
    scale = 1
    a = []
    for r in m.rows:
        lcm = math.lcm(*(x.denominator for x in r if isinstance(x, Fraction)))
        scale *= lcm
        a.append([int(x * lcm) for x in r] if lcm != 1 else list(r))
    sign, prev = 1, 1
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rk = a[k]
        for i in range(k + 1, n):
            ri = a[i]
            aik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (akk * ri[j] - aik * rk[j]) // prev
        prev = akk
    return _norm(Fraction(sign * a[n - 1][n - 1], scale))


def _rref(rows: list[list], ncols: int) -> tuple[list[list], list[int]]:
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(m: Matrix) -> int:
    return len(_rref(m.tolist(), m.ncols)[1])


def kernel(m: Matrix) -> list[tuple]:
    """Basis of the right null space."""
    a, pivots = _rref(m.tolist(), m.ncols)
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -a[row][f]
        basis.append(tuple(_norm(x) for x in v))
    return basis


def solve(m: Matrix, b) -> tuple | None:
    """One solution of ``m x = b`` or None if inconsistent."""
    b = list(b)
    if len(b) != m.nrows:
        raise DimensionMismatch("right-hand side length mismatch")
    aug = [list(r) + [bi] for r, bi in zip(m.rows, b)]
    a, pivots = _rref(aug, m.ncols + 1)
    if m.ncols in pivots:
        return None
    x = [Fraction(0)] * m.ncols
    for row, pc in enumerate(pivots):
        x[pc] = a[row][m.ncols]
    return tuple(_norm(v) for v in x)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise NotSquare("inverse of non-square matrix")
    n = m.nrows
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.rows)]
    a, pivots = _rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n or pivots[n - 1] != n - 1:
        raise SingularMatrix("matrix is not invertible")
    return Matrix([r[n:] for r in a[:n]])


def cofactor_det(m: Matrix):
    """Laplace expansion; exponential, used only as an independent check."""
    if not m.is_square():
        raise NotSquare("determinant of non-square matrix")
    n = m.nrows
    if n == 0:
        return 1
    if n == 1:
        return m[0, 0]
    total = 0
    for j in range(n):
        if m[0, j]:
            minor = m.submatrix(range(1, n), [c for c in range(n) if c != j])
            total += (-1) ** j * m[0, j] * cofactor_det(minor)
    return total


def compound(m: Matrix, k: int) -> Matrix:
    """k-th compound matrix: all k x k minors, subsets in lexicographic order."""
    subsets = list(combinations(range(m.ncols), k))
    rsubsets = list(combinations(range(m.nrows), k))
    return Matrix(
        [[det(m.submatrix(r, c)) for c in subsets] for r in rsubsets],
        ncols=len(subsets),
    )


def charpoly(m: Matrix) -> list:
    """Coefficients (lowest degree first) of det(x*I - m), via Hessenberg form."""
    if not m.is_square():
        raise NotSquare(f"characteristic polynomial of {m.shape} matrix")
    n = m.nrows
    h = [[Fraction(x) for x in r] for r in m.rows]
    for c in range(1, n - 1):
        piv = next((i for i in range(c, n) if h[i][c - 1]), None)
        if piv is None:
            continue
        if piv != c:
            h[piv], h[c] = h[c], h[piv]
            for r in h:
                r[piv], r[c] = r[c], r[piv]
        t = h[c][c - 1]
        for i in range(c + 1, n):
            u = h[i][c - 1] / t
            if not u:
                continue
            ri, rc = h[i], h[c]
            for j in range(n):
                ri[j] -= u * rc[j]
            for r in h:
                r[c] += u * r[i]
    polys = [[Fraction(1)]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        pk = [Fraction(0)] + prev
        for j, c in enumerate(prev):
            pk[j] -= h[k - 1][k - 1] * c
        t = Fraction(1)
        for i in range(1, k):
            t *= h[k - i][k - i - 1]
            if not t:
                break
            coef = t * h[k - i - 1][k - 1]
            if coef:
                for j, c in enumerate(polys[k - i - 1]):
                    pk[j] -= coef * c
        polys.append(pk)
    return [_norm(c) for c in polys[n]]
