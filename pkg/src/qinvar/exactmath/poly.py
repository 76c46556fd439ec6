"""Univariate polynomials and rational functions in ``t`` over Q.

Trace series, Hilbert series and Molien series all live in ``RatFun``.
Canonical form: numerator and denominator coprime, denominator monic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering

from ..errors import PoleAtZero, ZeroDenominator, ZeroFunction
from .rational import format_rational, parse_rational

_ZERO = Fraction(0)


def _trim(coeffs) -> tuple:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def monomial(cls, deg: int, coef=1) -> "Poly":
        return cls([0] * deg + [coef])

    @classmethod
    def one_minus(cls, deg: int, coef=1) -> "Poly":
        """``1 - coef * t**deg``."""
        if deg == 0:
            return cls([1 - Fraction(coef)])
        return cls([1] + [0] * (deg - 1) + [-Fraction(coef)])

    @property
    def degree(self) -> float | int:
        """Degree, or ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else _ZERO

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly([other])
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Poly([1])
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quot = [_ZERO] * (dq + 1)
        lc = other.lc()
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lc
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(quot), Poly(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.lc()
        return Poly([c / lc for c in self.coeffs])

    def __call__(self, x):
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def substitute_neg(self) -> "Poly":
        """p(-t)."""
        return Poly([c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)])

    def reversed_to(self, deg: int) -> "Poly":
        """``t**deg * p(1/t)``; requires ``deg >= self.degree``."""
        c = list(self.coeffs) + [_ZERO] * (deg + 1 - len(self.coeffs))
        return Poly(reversed(c))

    def valuation(self) -> int:
        """Order of vanishing at t = 0."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ZeroFunction("valuation of zero polynomial")

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Poly":
        return cls([parse_rational(x) for x in data])

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return poly_str(self)


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([x])


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via Euclid (gcd(0, 0) = 0)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_str(p: Poly, var: str = "t") -> str:
    """Ascending-order display, e.g. ``1+3t^2``."""
    if p.is_zero():
        return "0"
    out = []
    for i, c in enumerate(p.coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            s = format_rational(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = format_rational(c) + mono
        out.append(s)
    return "+".join(out).replace("+-", "-")


@total_ordering
class RatFun:
    """Canonical rational function ``num/den`` in t.

    >>> RatFun(Poly([1, 0, 0, 1]), Poly([1, 2, 1]))
    RatFun((1-t+t^2)/(1+t))
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = _as_poly(num), _as_poly(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = Poly(), Poly([1])
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lc = den.lc()
        self.num = Poly([c / lc for c in num.coeffs])
        self.den = Poly([c / lc for c in den.coeffs])

    @classmethod
    def const(cls, c) -> "RatFun":
        return cls(Poly([c]))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            other = RatFun(other)
        return isinstance(other, RatFun) and self.num == other.num and self.den == other.den

    def __lt__(self, other):
        # arbitrary but deterministic order for sorting reports
        return (self.num.coeffs, self.den.coeffs) < (other.num.coeffs, other.den.coeffs)

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _as_ratfun(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_ratfun(other))

    def __rsub__(self, other):
        return _as_ratfun(other) - self

    def __mul__(self, other):
        other = _as_ratfun(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDenominator("inverse of zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        return self * _as_ratfun(other).inverse()

    def __rtruediv__(self, other):
        return _as_ratfun(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun(self.num ** n, self.den ** n)

    def substitute_neg(self) -> "RatFun":
        """f(-t)."""
        return RatFun(self.num.substitute_neg(), self.den.substitute_neg())

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFun":
        return cls(Poly.from_json(data["num"]), Poly.from_json(data["den"]))

    def __repr__(self):
        return f"RatFun({self})"

    def __str__(self):
        num, den = self.num, self.den
        if den[0] not in (0, 1):
            # same function, shown with constant term 1 in the denominator
            c0 = den[0]
            num, den = Poly([c / c0 for c in num.coeffs]), Poly([c / c0 for c in den.coeffs])
        n = poly_str(num)
        if den == Poly([1]):
            return n
        if sum(1 for c in num.coeffs if c) > 1:
            n = f"({n})"
        d = poly_str(den)
        if sum(1 for c in den.coeffs if c) > 1 or den.lc() != 1:
            d = f"({d})"
        return f"{n}/{d}"


def _as_ratfun(x) -> RatFun:
    return x if isinstance(x, RatFun) else RatFun(x)


def ratfun_make(num: Poly, den: Poly) -> RatFun:
    return RatFun(num, den)


def series_coeffs(f: RatFun, n: int) -> list[Fraction]:
    """Taylor coefficients ``[c_0, ..., c_n]`` of f at t = 0."""
    d0 = f.den[0]
    if d0 == 0:
        raise PoleAtZero(f"{f} has a pole at t = 0")
    out = []
    for k in range(n + 1):
        acc = f.num[k]
        for j in range(1, min(k, len(f.den.coeffs) - 1) + 1):
            acc -= f.den[j] * out[k - j]
        out.append(acc / d0)
    return out


def leading_at_infinity(f: RatFun) -> tuple[Fraction, int]:
    """``(c, e)`` with f = c*t**e + lower order terms as t -> infinity."""
    if f.is_zero():
        raise ZeroFunction("zero has no leading term")
    return f.num.lc() / f.den.lc(), f.num.degree - f.den.degree


def invert_t(f: RatFun) -> RatFun:
    """f(1/t) in canonical form."""
    if f.is_zero():
        raise ZeroFunction("invert_t of zero")
    dn, dd = f.num.degree, f.den.degree
    num = f.num.reversed_to(dn)
    den = f.den.reversed_to(dd)
    if dd >= dn:
        num = num * Poly.monomial(dd - dn)
    else:
        den = den * Poly.monomial(dn - dd)
    return RatFun(num, den)


def t_power(m: int) -> RatFun:
    return RatFun(Poly.monomial(m)) if m >= 0 else RatFun(Poly([1]), Poly.monomial(-m))


def _peel(p: Poly) -> tuple[Fraction, list[tuple[int, int, int]], Poly]:
    """Greedily write ``p = unit * prod (1 - s t^k)^e * rest``; s in {+1, -1}."""
    factors = []
    rest = p
    if rest.degree <= 0:
        return Fraction(1), factors, rest
    for k in range(int(rest.degree), 0, -1):
        for s in (1, -1):
            f = Poly.one_minus(k, s)
            e = 0
            while rest.degree >= k:
                q, r = rest.divmod(f)
                if not r.is_zero():
                    break
                rest, e = q, e + 1
            if e:
                factors.append((k, s, e))
    return Fraction(1), factors, rest


def _factor_str(k: int, s: int, e: int) -> str:
    base = f"1{'-' if s == 1 else '+'}{'t' if k == 1 else f't^{k}'}"
    return f"({base})" + (f"^{e}" if e > 1 else "")


def factored_str(f: RatFun) -> str:
    """Display with denominators split into ``(1 +- t^k)`` factors when possible.

    Falls back to the canonical ``num/den`` string if the denominator does not
    split completely into such factors.
    """
    if f.is_zero():
        return "0"
    _, dfac, drest = _peel(f.den)
    if drest.degree > 0:
        return str(f)
    # drest is a constant: den = drest * prod(factors)
    num = Poly([c / drest[0] for c in f.num.coeffs])
    _, nfac, nrest = _peel(num)
    # Only use the numerator split if it is complete, otherwise keep num raw.
    if nrest.degree == 0 and nfac:
        c = nrest[0]
        head = "" if c == 1 else ("-" if c == -1 else format_rational(c) + "*")
        num_s = head + "".join(_factor_str(*x) for x in nfac)
    else:
        num_s = poly_str(num)
        if len([c for c in num.coeffs if c]) > 1 and dfac:
            num_s = f"({num_s})"
    if not dfac:
        return num_s
    den_s = "".join(_factor_str(*x) for x in dfac)
    if len(dfac) > 1:
        den_s = f"({den_s})"
    return f"{num_s}/{den_s}"
