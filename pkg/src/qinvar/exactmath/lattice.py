"""Integer lattices: Smith normal form and orders in Z^m / L.

Used to decide multiplicative relations between rationals (and free
symbols) through their exponent vectors.
"""

from __future__ import annotations

from math import gcd

from .rational import ExponentVector, _key_order


def smith_normal_form(a: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return ``(U, D, V)`` with ``U @ a @ V == D`` diagonal, U and V unimodular."""
    m = len(a)
    n = len(a[0]) if a else 0
    d = [list(r) for r in a]
    u = [[int(i == j) for j in range(m)] for i in range(m)]
    v = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, c):  # row_dst += c * row_src
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        for r in d:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    for t in range(min(m, n)):
        # pivot: smallest nonzero absolute entry in the remaining block
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not nz:
                return u, d, v
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = d[t][t]
            done = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    if d[i][t]:
                        done = False
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    if d[t][j]:
                        done = False
            if not done:
                continue
            # divisibility condition d_t | rest of block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return u, d, v


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _coordinates(v: ExponentVector, basis: list[ExponentVector]) -> tuple[list, list[list[int]], list[int]]:
    keys = sorted({k for w in [v, *basis] for k, _ in w.exps}, key=_key_order)
    cols = []
    for w in basis:
        dw = w.as_dict()
        cols.append([w.sign] + [dw.get(k, 0) for k in keys])
    # sign coordinate lives in Z/2: add 2*e_sign as an extra lattice generator
    cols.append([2] + [0] * len(keys))
    dv = v.as_dict()
    target = [v.sign] + [dv.get(k, 0) for k in keys]
    mat = [[c[i] for c in cols] for i in range(len(target))]
    return keys, mat, target


def lattice_min_multiple(v: ExponentVector, basis: list[ExponentVector]) -> int | None:
    """Smallest n > 0 with n*v in the integer span of ``basis``, else None.

    The sign bit is an element of Z/2, everything else of Z.

    >>> from .rational import factor_rational
    >>> lattice_min_multiple(factor_rational(9), [factor_rational(3)])
    1
    >>> lattice_min_multiple(factor_rational(2), [factor_rational(3)]) is None
    True
    """
    _, mat, target = _coordinates(v, basis)
    u, d, _ = smith_normal_form(mat)
    w = [sum(a * b for a, b in zip(row, target)) for row in u]
    n = 1
    for i, wi in enumerate(w):
        di = d[i][i] if i < len(d[0]) else 0
        if di == 0:
            if wi:
                return None
            continue
        n = _lcm(n, di // gcd(di, wi))
    return n


def lattice_combination(v: ExponentVector, basis: list[ExponentVector], n: int) -> list[int] | None:
    """Integer coefficients c (one per basis element, plus the Z/2 slack) with
    ``sum c_i basis_i == n*v``; None when n*v is outside the lattice."""
    _, mat, target = _coordinates(v, basis)
    target = [n * x for x in target]
    u, d, vv = smith_normal_form(mat)
    w = [sum(a * b for a, b in zip(row, target)) for row in u]
    ncols = len(mat[0])
    y = [0] * ncols
    for i, wi in enumerate(w):
        di = d[i][i] if i < ncols else 0
        if di == 0:
            if wi:
                return None
        elif wi % di:
            return None
        else:
            y[i] = wi // di
    return [sum(vv[r][c] * y[c] for c in range(ncols)) for r in range(ncols)]
