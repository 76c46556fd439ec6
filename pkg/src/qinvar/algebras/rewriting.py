"""PBW straightening.

Elements are normal forms: dicts mapping an exponent tuple (one slot per
generator, in PBW order) to a nonzero coefficient.  Two engines live here:

* :func:`straighten` -- literal rewriting of words, with a choice of which
  out-of-order pair to rewrite first (used to test confluence);
* :func:`nf_mul` and friends -- multiplication of normal forms, built from a
  memoized ``monomial * generator`` product; this is what the rest of the
  package uses.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from ..errors import NonInvertibleCoefficient, QinvarError
from ..exactmath import ParamScalar, format_scalar, to_scalar
from .descriptors import Algebra


def _check_multiplier(c, word, pair):
    """The coefficient of the reordered pair must be invertible.

    Inhomogeneous tail terms (such as ``q^2 - 1``) may be arbitrary sums.
    """
    if sorted(word) != sorted(pair):
        return
    if isinstance(c, ParamScalar) and not c.is_invertible():
        raise NonInvertibleCoefficient(f"straightening multiplier {c} is not a monomial")


def _add(out: dict, key, c):
    v = out.get(key)
    v = c if v is None else v + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def word_to_exps(alg: Algebra, word) -> tuple:
    e = [0] * alg.ngens
    for w in word:
        e[w] += 1
    return tuple(e)


def exps_to_word(exps) -> tuple:
    return tuple(i for i, e in enumerate(exps) for _ in range(e))


def _find_pair(alg: Algebra, w: tuple, strategy: str):
    rng = range(len(w) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    for k in rng:
        b, a = w[k], w[k + 1]
        if b > a or (b == a and alg.rule(b, a) is not None):
            return k
    return None


def straighten(alg: Algebra, word, coef=1, strategy: str = "leftmost") -> dict:
    """Rewrite ``coef * word`` to normal form by repeated pair replacement.

    ``word`` is a sequence of generator names or indices.  ``strategy`` picks
    the leftmost or rightmost out-of-order pair at each step.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise QinvarError(f"unknown strategy {strategy!r}")
    w0 = tuple(alg.index(x) for x in word)
    pending = {w0: to_scalar(coef) if not isinstance(coef, int) else Fraction(coef)}
    done: dict = {}
    while pending:
        w = max(pending, key=lambda u: (len(u), u))
        c = pending.pop(w)
        k = _find_pair(alg, w, strategy)
        if k is None:
            exps = word_to_exps(alg, w)
            if alg.allows(exps):
                _add(done, exps, c)
            continue
        for rc, rw in alg.rule(w[k], w[k + 1]):
            _check_multiplier(rc, rw, w[k:k + 2])
            _add(pending, w[:k] + tuple(rw) + w[k + 2:], c * rc)
    return {m: to_scalar(c) for m, c in done.items()}


def mono_times_gen(alg: Algebra, exps: tuple, a: int) -> dict:
    """Normal form of (ordered monomial) * x_a.  Memoized per algebra."""
    cache = alg._mono_gen_cache
    key = (exps, a)
    hit = cache.get(key)
    if hit is not None:
        return hit
    b = max((i for i, e in enumerate(exps) if e), default=None)
    if b is None or b < a or (b == a and alg.rule(a, a) is None):
        new = list(exps)
        new[a] += 1
        new = tuple(new)
        res = {new: Fraction(1)} if alg.allows(new) else {}
    else:
        rest = list(exps)
        rest[b] -= 1
        rest = tuple(rest)
        res = {}
        for rc, rw in alg.rule(b, a):
            _check_multiplier(rc, rw, (b, a))
            f = {rest: Fraction(1)}
            for letter in rw:
                f = mul_gen(alg, f, letter)
            for m, c in f.items():
                _add(res, m, c * rc)
        res = {m: to_scalar(c) for m, c in res.items()}
    cache[key] = res
    return res


def mul_gen(alg: Algebra, f: dict, a: int) -> dict:
    out: dict = {}
    for m, c in f.items():
        for m2, c2 in mono_times_gen(alg, m, a).items():
            _add(out, m2, c * c2)
    return out


def nf_mul(alg: Algebra, f: dict, g: dict) -> dict:
    """Product of two normal forms."""
    out: dict = {}
    for m2, c2 in g.items():
        h = f
        for letter in exps_to_word(m2):
            h = mul_gen(alg, h, letter)
        for m, c in h.items():
            _add(out, m, c * c2)
    return out


def nf_add(f: dict, g: dict, scale=1) -> dict:
    out = dict(f)
    for m, c in g.items():
        _add(out, m, c * scale)
    return out


def nf_word(alg: Algebra, word) -> dict:
    """Normal form of a word via the fast engine."""
    f = {(0,) * alg.ngens: Fraction(1)}
    for x in word:
        f = mul_gen(alg, f, alg.index(x))
    return f


def nf_of_relation(alg: Algebra, rel) -> dict:
    out: dict = {}
    for c, w in rel:
        out = nf_add(out, nf_word(alg, w), c)
    return out


def evaluate_under(alg: Algebra, images: list[dict], word) -> dict:
    """Normal form of g(word) where ``images[i]`` is the normal form of g(x_i)."""
    f = {(0,) * alg.ngens: Fraction(1)}
    for w in word:
        f = nf_mul(alg, f, images[w])
    return f


def graded_basis(alg: Algebra, n: int) -> list[tuple]:
    """Ordered monomials of weighted degree n (associated graded for filtered algebras)."""
    degs = alg.degrees
    out = []

    def rec(i, remaining, acc):
        if i == len(degs):
            if remaining == 0:
                e = tuple(acc)
                if alg.allows(e):
                    out.append(e)
            return
        for k in range(remaining // degs[i], -1, -1):
            acc.append(k)
            rec(i + 1, remaining - k * degs[i], acc)
            acc.pop()

    rec(0, n, [])
    return out


def format_monomial(alg: Algebra, exps: tuple) -> str:
    parts = [nm if e == 1 else f"{nm}^{e}" for nm, e in zip(alg.names, exps) if e]
    return "*".join(parts) if parts else "1"


def format_nf(alg: Algebra, f: dict) -> str:
    if not f:
        return "0"
    terms = []
    for m in sorted(f, key=lambda e: (sum(e), tuple(-x for x in e))):
        c = f[m]
        cs = format_scalar(c)
        mono = format_monomial(alg, m)
        if mono == "1":
            terms.append(cs)
        elif cs == "1":
            terms.append(mono)
        elif cs == "-1":
            terms.append("-" + mono)
        else:
            terms.append(f"({cs})*{mono}" if "+" in cs or "-" in cs[1:] else f"{cs}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def random_word(rng, alg: Algebra, length: int) -> tuple:
    return tuple(rng.randrange(alg.ngens) for _ in range(length))


def all_words(alg: Algebra, length: int):
    return product(range(alg.ngens), repeat=length)
