"""Exact univariate polynomials over Q and Sturm root counting.

Univariate polynomials are coefficient lists, lowest degree first, with
no trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .multipoly import MultiPoly

UPoly = list


def trim(p: Sequence) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: UPoly) -> int:
    return len(p) - 1


def derivative(p: UPoly) -> UPoly:
    return trim([i * c for i, c in enumerate(p)][1:])


def divmod_poly(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    lb = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lb
        q[shift] = f
        for i, c in enumerate(b):
            r[i + shift] -= f * c
        r = trim(r)
    return trim(q), r


def rem(a: UPoly, b: UPoly) -> UPoly:
    return divmod_poly(a, b)[1]


def gcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    if not a:
        return a
    return [c / a[-1] for c in a]


def squarefree_part(p: UPoly) -> UPoly:
    p = trim(p)
    if len(p) <= 1:
        return p
    g = gcd(p, derivative(p))
    return divmod_poly(p, g)[0]


def evaluate(p: UPoly, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sturm_chain(p: UPoly) -> list[UPoly]:
    """``p0 = p``, ``p1 = p'``, ``p_{i+1} = -rem(p_{i-1}, p_i)`` until the remainder vanishes."""
    p = trim(p)
    if not p:
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p]
    dp = derivative(p)
    if not dp:
        return chain
    chain.append(dp)
    while True:
        r = rem(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append([-c for c in r])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _variations(signs: Sequence[int]) -> int:
    s = [v for v in signs if v]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _sign_at_infinity(p: UPoly, positive: bool) -> int:
    lead = _sign(p[-1])
    if positive or degree(p) % 2 == 0:
        return lead
    return -lead


def sign_variations(chain: Sequence[UPoly], x) -> int:
    if x == "+inf" or x == "-inf":
        return _variations([_sign_at_infinity(p, x == "+inf") for p in chain])
    return _variations([_sign(evaluate(p, x)) for p in chain])


def sturm_count(p: UPoly | MultiPoly, interval: tuple | None = None, var: int | None = None) -> int:
    """Number of distinct real roots of ``p`` (on the whole line, or in ``(lo, hi]``).

    ``p`` may be a univariate ``MultiPoly``; ``var`` picks the variable when
    it cannot be inferred.
    """
    if isinstance(p, MultiPoly):
        p = to_upoly(p, var)
    p = trim(p)
    if not p:
        raise ValueError("sturm_count of the zero polynomial")
    chain = sturm_chain(squarefree_part(p))
    if interval is None:
        return sign_variations(chain, "-inf") - sign_variations(chain, "+inf")
    lo, hi = (Fraction(v) if not isinstance(v, str) else v for v in interval)
    return sign_variations(chain, lo) - sign_variations(chain, hi)


def to_upoly(p: MultiPoly, var: int | None = None) -> UPoly:
    if var is None:
        vs = p.variables()
        if len(vs) > 1:
            raise ValueError("polynomial is not univariate")
        var = vs.pop() if vs else 0
    return trim(p.univariate_coeffs(var))


@dataclass(frozen=True)
class SturmSummary:
    chain_length: int
    degrees: tuple[int, ...]
    roots: int


def sturm_summary(p: UPoly) -> SturmSummary:
    chain = sturm_chain(squarefree_part(p))
    roots = sign_variations(chain, "-inf") - sign_variations(chain, "+inf")
    return SturmSummary(len(chain), tuple(degree(c) for c in chain), roots)
