"""Laurent polynomials in formal parameter symbols with rational coefficients.

Structure constants such as ``q`` or ``p12`` may be left symbolic.  Symbols
are treated as multiplicatively free; only single-term elements can be
inverted.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import NonInvertibleCoefficient, ZeroDenominator
from .rational import ExponentVector, factor_rational, format_rational, parse_rational


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for s, e in b:
        d[s] = d.get(s, 0) + e
    return tuple(sorted((s, e) for s, e in d.items() if e))


class ParamScalar:
    """An element of Q[s1^±1, s2^±1, ...].

    ``terms`` maps a monomial (sorted tuple of ``(symbol, exponent)``) to a
    nonzero Fraction.  The empty monomial is the constant term.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = Fraction(c)
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def symbol(cls, name: str, power: int = 1) -> "ParamScalar":
        return cls({((name, power),): 1}) if power else cls({(): 1})

    @classmethod
    def const(cls, value) -> "ParamScalar":
        return cls({(): Fraction(value)})

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def is_invertible(self) -> bool:
        return len(self.terms) == 1

    def symbols(self) -> set:
        return {s for m in self.terms for s, _ in m}

    def inverse(self) -> "ParamScalar":
        if not self.is_invertible():
            raise NonInvertibleCoefficient(f"{self} has {len(self.terms)} terms; only monomials invert")
        (m, c), = self.terms.items()
        return ParamScalar({tuple((s, -e) for s, e in m): 1 / c})

    def exponent_vector(self) -> ExponentVector:
        """Signed prime factorization of the coefficient plus symbol exponents."""
        if not self.is_invertible():
            raise NonInvertibleCoefficient(f"{self} is not a monomial")
        (m, c), = self.terms.items()
        return factor_rational(c) + ExponentVector.make(0, dict(m))

    def subs(self, values: dict):
        """Substitute rational values for symbols; returns a ParamScalar."""
        out: dict = {}
        for m, c in self.terms.items():
            coef = c
            rest = []
            for s, e in m:
                if s in values:
                    coef *= Fraction(values[s]) ** e
                else:
                    rest.append((s, e))
            key = tuple(rest)
            out[key] = out.get(key, 0) + coef
        return ParamScalar(out)

    # arithmetic -----------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, ParamScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamScalar({(): other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return ParamScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return ParamScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            raise ZeroDenominator("division by zero parameter")
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ParamScalar.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"ParamScalar({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=lambda m: (len(m), m)):
            c = self.terms[m]
            factors = [s if e == 1 else f"{s}^{e}" for s, e in m]
            if not factors:
                parts.append(format_rational(c))
                continue
            body = "*".join(factors)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{format_rational(c)}*{body}")
        return "+".join(parts).replace("+-", "-")



_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?$")


def parse_scalar(text, symbols=(), values=None):
    """Parse a product like ``"-2*q^2*p12^-1"`` or a plain rational.

    ``symbols`` lists declared formal parameters; ``values`` maps declared
    parameters to rational values (substituted at parse time).  Unknown
    names raise KeyError.
    """
    values = values or {}
    if not isinstance(text, str):
        return parse_rational(text)
    s = text.strip().replace(" ", "")
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:]
    elif s.startswith("+"):
        s = s[1:]
    coef = Fraction(sign)
    mono: dict = {}
    for factor in s.split("*"):
        m = _FACTOR_RE.match(factor)
        if m is None:
            coef *= parse_rational(factor)
            continue
        name, power = m.group(1), int(m.group(2) or 1)
        if name in values:
            coef *= Fraction(values[name]) ** power
        elif name in symbols:
            mono[name] = mono.get(name, 0) + power
        else:
            raise KeyError(name)
    if not mono:
        return coef
    return ParamScalar({tuple(sorted((k, e) for k, e in mono.items() if e)): coef})


def format_scalar(x) -> str:
    if isinstance(x, ParamScalar):
        return format_rational(x.constant_value()) if x.is_constant() else str(x)
    return format_rational(x)


def to_scalar(x):
    """Collapse constant ParamScalars to Fraction; pass others through."""
    if isinstance(x, ParamScalar):
        return x.constant_value() if x.is_constant() else x
    return Fraction(x)


def invert(x):
    """Multiplicative inverse, refusing non-monomial parameters."""
    if isinstance(x, ParamScalar):
        return to_scalar(x.inverse())
    x = Fraction(x)
    if x == 0:
        raise NonInvertibleCoefficient("zero is not invertible")
    return 1 / x


def is_formal(x) -> bool:
    return isinstance(x, ParamScalar) and not x.is_constant()
