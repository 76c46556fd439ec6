"""Rational scalars: parsing, printing, and signed prime factorizations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint

from ..errors import InvalidRational, ZeroInput

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"`` (or an int) into a Fraction.

    Floats are refused on purpose: everything downstream is exact.
    """
    if isinstance(text, bool):
        raise InvalidRational(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if not isinstance(text, str):
        raise InvalidRational(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise InvalidRational(f"not a rational: {text!r}")
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise InvalidRational(f"zero denominator in {text!r}")
    return Fraction(int(m.group(1)), den)


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _key_order(k):
    # primes before formal symbols, each in natural order
    return (0, k, "") if isinstance(k, int) else (1, 0, k)


@dataclass(frozen=True)
class ExponentVector:
    """Sign bit plus exponents over primes (ints) and free symbols (strs).

    ``sign`` is 0 for positive, 1 for negative; ``exps`` holds nonzero
    exponents only, sorted primes first.
    """

    sign: int = 0
    exps: tuple = field(default=())

    @classmethod
    def make(cls, sign: int, exps: dict) -> "ExponentVector":
        items = sorted(((k, e) for k, e in exps.items() if e), key=lambda kv: _key_order(kv[0]))
        return cls(sign % 2, tuple(items))

    def as_dict(self) -> dict:
        return dict(self.exps)

    def scale(self, n: int) -> "ExponentVector":
        return ExponentVector.make(self.sign * n, {k: e * n for k, e in self.exps})

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        d = self.as_dict()
        for k, e in other.exps:
            d[k] = d.get(k, 0) + e
        return ExponentVector.make(self.sign + other.sign, d)

    def is_zero(self) -> bool:
        return self.sign == 0 and not self.exps


def factor_rational(x) -> ExponentVector:
    """Sign and prime factorization of a nonzero rational.

    >>> factor_rational(Fraction(-9, 2))
    ExponentVector(sign=1, exps=((2, -1), (3, 2)))
    """
    x = Fraction(x)
    if x == 0:
        raise ZeroInput("cannot factor zero")
    exps: dict = {}
    for p, e in factorint(abs(x.numerator)).items():
        exps[int(p)] = exps.get(int(p), 0) + int(e)
    for p, e in factorint(x.denominator).items():
        exps[int(p)] = exps.get(int(p), 0) - int(e)
    return ExponentVector.make(1 if x < 0 else 0, exps)
