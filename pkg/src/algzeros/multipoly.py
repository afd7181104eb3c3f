"""Sparse multivariate polynomials with dense exponent vectors.

Coefficients are ``Fraction`` for exact work; ``float``/``complex`` are
accepted too. Zero coefficients are never stored.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Number
from typing import Iterable, Mapping, Sequence

Exp = tuple[int, ...]


def _grlex_key(e: Exp):
    return (sum(e), e)


class MultiPoly:
    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exp, object] | None = None):
        self.nvars = nvars
        clean: dict[Exp, object] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} does not have length {nvars}")
                if c:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MultiPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiPoly":
        return cls._raw(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def variable(cls, nvars: int, i: int, coeff=1) -> "MultiPoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): Fraction(coeff)})

    @classmethod
    def from_terms(cls, nvars: int, pairs: Iterable[tuple[Sequence[int], object]]) -> "MultiPoly":
        acc: dict[Exp, object] = {}
        for e, c in pairs:
            e = tuple(e)
            acc[e] = acc.get(e, 0) + c
        return cls(nvars, acc)

    # basic queries ------------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, Number):
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def variables(self) -> set[int]:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.terms.values())

    def coeff(self, e: Sequence[int]):
        return self.terms.get(tuple(e), 0)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def sorted_terms(self) -> list[tuple[Exp, object]]:
        """Terms in descending graded-lex order (the canonical display order)."""
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, Number):
            return MultiPoly.constant(self.nvars, other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out = dict(a)
        for e, c in b.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw(self.nvars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if other.nvars != self.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")
        out: dict[Exp, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly._raw(self.nvars, out)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = MultiPoly.constant(self.nvars, Fraction(1))
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, e: Exp, c) -> "MultiPoly":
        return MultiPoly._raw(
            self.nvars,
            {tuple(a + b for a, b in zip(e, f)): c * v for f, v in self.terms.items()},
        )

    # calculus and structure --------------------------------------------
    def diff(self, i: int) -> "MultiPoly":
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                f = list(e)
                f[i] = k - 1
                out[tuple(f)] = c * k
        return MultiPoly._raw(self.nvars, out)

    def homogeneous_part(self, d: int) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def homogeneous_parts(self) -> dict[int, "MultiPoly"]:
        parts: dict[int, dict] = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: MultiPoly._raw(self.nvars, t) for d, t in sorted(parts.items())}

    def eval(self, point: Sequence):
        """Substitute ``point`` for the variables.

        Entries may be numbers or any ring elements (e.g. other ``MultiPoly``),
        which makes this double as composition.
        """
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} values, got {len(point)}")
        total = 0
        cache: dict[tuple[int, int], object] = {}
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    pw = cache.get(key)
                    if pw is None:
                        pw = point[i] ** k
                        cache[key] = pw
                    term = term * pw
            total = total + term
        return total

    def extend(self, nvars: int, offset: int = 0) -> "MultiPoly":
        """Embed into a ring with ``nvars`` variables, shifting indices by ``offset``."""
        out = {}
        for e, c in self.terms.items():
            f = [0] * nvars
            f[offset:offset + self.nvars] = e
            out[tuple(f)] = c
        return MultiPoly._raw(nvars, out)

    def homogenize(self) -> "MultiPoly":
        """``z^D h(x/z)`` with ``z`` appended as the last variable."""
        deg = self.total_degree()
        return MultiPoly._raw(
            self.nvars + 1, {e + (deg - sum(e),): c for e, c in self.terms.items()}
        )

    def dehomogenize(self) -> "MultiPoly":
        """Set the last variable to 1."""
        out: dict[Exp, object] = {}
        for e, c in self.terms.items():
            f = e[:-1]
            v = out.get(f, 0) + c
            if v:
                out[f] = v
            else:
                out.pop(f, None)
        return MultiPoly._raw(self.nvars - 1, out)

    def univariate_coeffs(self, i: int) -> list:
        """Coefficient list (low to high) of a polynomial in variable ``i`` only."""
        if any(k for e in self.terms for j, k in enumerate(e) if j != i):
            raise ValueError(f"polynomial involves variables other than {i}")
        coeffs = [0] * (self.degree_in(i) + 1)
        for e, c in self.terms.items():
            coeffs[e[i]] = c
        return coeffs

    # display ------------------------------------------------------------
    def to_str(self, names: Sequence[str] | None = None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        pieces = []
        for e, c in self.sorted_terms():
            mon = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            sign = "-" if _is_negative(c) else "+"
            mag = -c if sign == "-" else c
            if not mon:
                body = _fmt_coeff(mag)
            elif mag == 1:
                body = mon
            else:
                body = f"{_fmt_coeff(mag)}*{mon}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_str()})"


def _is_negative(c) -> bool:
    if isinstance(c, complex):
        return False
    return c < 0


def _fmt_coeff(c) -> str:
    if isinstance(c, complex):
        return f"({c})"
    return str(c)


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def parse_poly(text: str, names: Sequence[str]) -> MultiPoly:
    """Parse a classical polynomial such as ``"-a1^2 + 2*a1*a2 + 6"``.

    Grammar: sums of products of rational literals, variable names and
    parenthesised sub-expressions, with ``^`` taking a non-negative integer.
    """
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, sym = m.groups()
        tokens.append(("num", num) if num else ("name", name) if name else ("sym", sym))
        pos = m.end()
    tokens.append(("end", None))
    k = 0

    def peek():
        return tokens[k]

    def take():
        nonlocal k
        k += 1
        return tokens[k - 1]

    def expr():
        sign = 1
        if peek() == ("sym", "-"):
            take()
            sign = -1
        elif peek() == ("sym", "+"):
            take()
        acc = term() * sign
        while peek() in (("sym", "+"), ("sym", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = power()
        while peek() == ("sym", "*"):
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() == ("sym", "^"):
            take()
            kind, val = take()
            if kind != "num" or not val.isdigit():
                raise ValueError(f"expected integer exponent, got {val!r}")
            base = base ** int(val)
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return MultiPoly.constant(n, Fraction(val))
        if kind == "name":
            if val not in index:
                raise ValueError(f"unknown variable {val!r}")
            return MultiPoly.variable(n, index[val])
        if (kind, val) == ("sym", "("):
            inner = expr()
            if take() != ("sym", ")"):
                raise ValueError("unbalanced parentheses")
            return inner
        if (kind, val) == ("sym", "-"):
            return -atom()
        raise ValueError(f"unexpected token {val!r}")

    result = expr()
    if peek()[0] != "end":
        raise ValueError(f"trailing input at token {peek()[1]!r}")
    return result
