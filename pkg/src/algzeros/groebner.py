"""Buchberger's algorithm over the rationals.

Reduced, monic Groebner bases under lex or grevlex with an arbitrary
variable priority. Pairs are selected by the sugar strategy (smallest sugar
degree, then smallest lcm in the monomial order, then index) with
Buchberger's coprime and chain criteria. Internally coefficients are ``gmpy2.mpq``; results come back as
``MultiPoly`` with ``Fraction`` coefficients.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2

from .multipoly import MultiPoly

MAX_BASIS = 500
MAX_DEGREE = 60


class GuardExceeded(RuntimeError):
    """Basis size or degree cap hit; the computation was abandoned, not truncated."""


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "lex"
    perm: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.perm is not None and sorted(self.perm) != list(range(len(self.perm))):
            raise ValueError("variable permutation is not a bijection")

    def _perm(self, n: int) -> tuple[int, ...]:
        return self.perm if self.perm is not None else tuple(range(n))

    def key_function(self, n: int):
        """Sort key; larger key means larger monomial. ``perm[0]`` is the largest variable."""
        p = self._perm(n)
        if len(p) != n:
            raise ValueError(f"order permutation has {len(p)} entries for {n} variables")
        if self.kind == "lex":
            return lambda e: tuple(e[i] for i in p)
        rev = tuple(reversed(p))
        return lambda e: (sum(e), tuple(-e[i] for i in rev))

    def heap_key_function(self, n: int):
        """Key whose *smallest* value is the largest monomial (for ``heapq``)."""
        p = self._perm(n)
        if self.kind == "lex":
            return lambda e: tuple(-e[i] for i in p)
        rev = tuple(reversed(p))
        return lambda e: (-sum(e), tuple(e[i] for i in rev))


def lex(perm: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", tuple(perm) if perm is not None else None)


def grevlex(perm: Sequence[int] | None = None) -> MonomialOrder:
    return MonomialOrder("grevlex", tuple(perm) if perm is not None else None)


# internal polynomial: dict exp -> mpq ----------------------------------

def _to_internal(p: MultiPoly) -> dict:
    if not p.is_exact():
        raise ValueError("Groebner bases need exact rational coefficients")
    return {e: gmpy2.mpq(c.numerator, c.denominator) if isinstance(c, Fraction) else gmpy2.mpq(c)
            for e, c in p.terms.items()}


def _from_internal(n: int, f: dict) -> MultiPoly:
    return MultiPoly(n, {e: Fraction(int(c.numerator), int(c.denominator)) for e, c in f.items()})


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Reducer:
    def __init__(self, n: int, order: MonomialOrder):
        self.n = n
        self.key = order.key_function(n)
        self.hkey = order.heap_key_function(n)

    def lm(self, f: dict):
        return max(f, key=self.key)

    def monic(self, f: dict) -> dict:
        lc = f[self.lm(f)]
        if lc == 1:
            return f
        inv = 1 / lc
        return {e: c * inv for e, c in f.items()}

    def reduce(self, f: dict, basis: list[dict], lms: list, full: bool = True) -> dict:
        """Normal form of ``f``; ``basis`` polys must be monic with leading monomials ``lms``."""
        f = dict(f)
        rem: dict = {}
        heap = [(self.hkey(e), e) for e in f]
        heapq.heapify(heap)
        seen_top = None
        while heap:
            _, e = heapq.heappop(heap)
            if e == seen_top:
                continue
            seen_top = e
            c = f.get(e)
            if c is None:
                continue
            for g, lg in zip(basis, lms):
                if _divides(lg, e):
                    shift = _sub(e, lg)
                    for eg, cg in g.items():
                        t = tuple(a + b for a, b in zip(eg, shift))
                        v = f.get(t)
                        if v is None:
                            f[t] = -c * cg
                            heapq.heappush(heap, (self.hkey(t), t))
                        else:
                            v = v - c * cg
                            if v:
                                f[t] = v
                            else:
                                del f[t]
                    break
            else:
                rem[e] = f.pop(e)
                if not full:
                    rem.update(f)
                    return rem
        return rem


def _spoly(r: _Reducer, f: dict, lf, g: dict, lg) -> dict:
    m = _lcm(lf, lg)
    sf, sg = _sub(m, lf), _sub(m, lg)
    out: dict = {}
    for e, c in f.items():
        out[tuple(a + b for a, b in zip(e, sf))] = c
    for e, c in g.items():
        t = tuple(a + b for a, b in zip(e, sg))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def buchberger(
    gens: Iterable[MultiPoly],
    order: MonomialOrder | None = None,
    max_basis: int = MAX_BASIS,
    max_degree: int = MAX_DEGREE,
) -> list[MultiPoly]:
    """Reduced monic Groebner basis of the ideal generated by ``gens``.

    Raises :class:`GuardExceeded` when the basis grows past ``max_basis``
    elements or a polynomial of total degree above ``max_degree`` appears.
    """
    gens = [g for g in gens if g]
    order = order or lex()
    if not gens:
        return []
    n = gens[0].nvars
    r = _Reducer(n, order)
    G: list[dict] = []
    L: list = []
    sugar: list[int] = []
    pairs: list = []
    pending: set = set()

    def add(h: dict, sug: int):
        h = r.monic(h)
        lh = r.lm(h)
        if sum(lh) > max_degree or max(sum(e) for e in h) > max_degree:
            raise GuardExceeded(f"degree cap {max_degree} exceeded")
        idx = len(G)
        G.append(h)
        L.append(lh)
        sugar.append(max(sug, max(sum(e) for e in h)))
        if len(G) > max_basis:
            raise GuardExceeded(f"basis size cap {max_basis} exceeded")
        for i in range(idx):
            m = _lcm(L[i], lh)
            s = max(sugar[i] + sum(m) - sum(L[i]), sugar[idx] + sum(m) - sum(lh))
            heapq.heappush(pairs, (s, r.key(m), i, idx))
            pending.add((i, idx))

    for g in sorted((_to_internal(g) for g in gens), key=lambda f: r.key(r.lm(f))):
        h = r.reduce(g, G, L)
        if h:
            if all(e == (0,) * n for e in h):
                return [MultiPoly.constant(n, Fraction(1))]
            add(h, max(sum(e) for e in g))

    while pairs:
        sug, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        li, lj = L[i], L[j]
        m = _lcm(li, lj)
        if all(a == 0 or b == 0 for a, b in zip(li, lj)):
            continue
        if _chain_criterion(i, j, m, L, pending):
            continue
        s = _spoly(r, G[i], li, G[j], lj)
        h = r.reduce(s, G, L)
        if h:
            if all(e == (0,) * n for e in h):
                return [MultiPoly.constant(n, Fraction(1))]
            add(h, sug)

    return [_from_internal(n, f) for f in _reduce_basis(r, G, L)]


def _chain_criterion(i, j, m, L, pending) -> bool:
    for k in range(len(L)):
        if k == i or k == j:
            continue
        if _divides(L[k], m):
            a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                return True
    return False


def _reduce_basis(r: _Reducer, G: list[dict], L: list) -> list[dict]:
    keep = []
    for i, li in enumerate(L):
        if any(
            _divides(L[j], li) and (L[j] != li or j < i)
            for j in range(len(L))
            if j != i
        ):
            continue
        keep.append(i)
    polys = [G[i] for i in keep]
    lms = [L[i] for i in keep]
    out = []
    for idx, f in enumerate(polys):
        others = [g for k, g in enumerate(polys) if k != idx]
        olms = [lm for k, lm in enumerate(lms) if k != idx]
        out.append(r.monic(r.reduce(f, others, olms)))
    out.sort(key=lambda f: r.key(r.lm(f)), reverse=True)
    return out


def normal_form(f: MultiPoly, basis: Sequence[MultiPoly], order: MonomialOrder | None = None) -> MultiPoly:
    """Remainder of ``f`` on division by ``basis`` (fully reduced)."""
    order = order or lex()
    n = f.nvars
    r = _Reducer(n, order)
    G = [r.monic(_to_internal(g)) for g in basis if g]
    L = [r.lm(g) for g in G]
    return _from_internal(n, r.reduce(_to_internal(f), G, L))


def leading_monomial(f: MultiPoly, order: MonomialOrder | None = None):
    order = order or lex()
    return max(f.terms, key=order.key_function(f.nvars))


def s_polynomial(f: MultiPoly, g: MultiPoly, order: MonomialOrder | None = None) -> MultiPoly:
    order = order or lex()
    n = f.nvars
    r = _Reducer(n, order)
    fi, gi = r.monic(_to_internal(f)), r.monic(_to_internal(g))
    return _from_internal(n, _spoly(r, fi, r.lm(fi), gi, r.lm(gi)))


def is_groebner_basis(basis: Sequence[MultiPoly], order: MonomialOrder | None = None) -> bool:
    """Every S-polynomial of basis pairs reduces to zero."""
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if normal_form(s_polynomial(basis[a], basis[b], order), basis, order):
                return False
    return True


def eliminate(gens: Sequence[MultiPoly], keep: Sequence[int], **guards) -> list[MultiPoly]:
    """Elements of the lex basis (eliminated variables largest) that only involve ``keep``."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    n = gens[0].nvars
    keep = list(keep)
    drop = [v for v in range(n) if v not in keep]
    G = buchberger(gens, lex(drop + keep), **guards)
    allowed = set(keep)
    return [g for g in G if g.variables() <= allowed]


def is_unit_ideal(basis: Sequence[MultiPoly]) -> bool:
    return len(basis) == 1 and basis[0].total_degree() == 0 and bool(basis[0])
