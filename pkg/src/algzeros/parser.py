"""Text format for polynomial maps.

Grammar (precedence ``^`` > ``*`` > ``+ -``; ``*`` is left-associative)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := RATIONAL | LABEL | VAR | '(' expr ')'

``RATIONAL`` is ``3``, ``2/5`` or ``0.25``; ``VAR`` is ``x`` (= ``x1``) or
``x1 .. xn``; ``LABEL`` is a basis label of the algebra (``i``, ``e3``,
``E12``, ``iE21``, ...). ``#`` starts a comment running to end of line.

Rationals act as field scalars. A variable-free sub-expression folds into
a single constant leaf; a bare rational in such a sum stands for that
multiple of the unit. ``^d`` expands to a left-nested product. On
non-associative algebras write the brackets you mean: ``x*i*x`` is
``(x*i)*x``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, AlgebraElement, format_element
from .polymap import Const, PolynomialMap, Prod, Var, Word


class ParseError(ValueError):
    def __init__(self, message: str, position: int, expected: str | None = None):
        self.position = position
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at position {position}{detail}")


@dataclass(frozen=True)
class MapSource:
    text: str
    algebra: Algebra
    nvars: int = 1


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<comment>#[^\n]*)|(?P<num>\d+(?:\.\d+)?(?:/\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()])|(?P<bad>.)"
)


def _tokenize(text: str):
    out = []
    for m in _TOKEN.finditer(text):
        kind = m.lastgroup
        if kind in ("ws", "comment"):
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", m.start())
        out.append((kind, m.group(), m.start()))
    out.append(("end", "", len(text)))
    return out


# A parsed value is a list of (coeff, item) where item is None for a pure
# field scalar, or a Word.
_SCALAR = None


class _Parser:
    def __init__(self, text: str, alg: Algebra, nvars: int):
        self.text = text
        self.alg = alg
        self.nvars = nvars
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    # grammar ------------------------------------------------------------
    def parse(self) -> list:
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, expected="expression")
        val = self.expr()
        kind, tok, at = self.peek()
        if kind != "end":
            if (kind, tok) == ("op", ")"):
                raise ParseError("unbalanced parentheses", at)
            raise ParseError(f"unexpected {tok!r}", at, expected="operator or end of input")
        return val

    def expr(self) -> list:
        sign = 1
        kind, tok, _ = self.peek()
        if kind == "op" and tok in "+-":
            self.take()
            sign = -1 if tok == "-" else 1
        acc = _scale(self.term(), sign)
        while True:
            kind, tok, _ = self.peek()
            if kind == "op" and tok in "+-":
                self.take()
                rhs = self.term()
                acc = acc + (_scale(rhs, -1) if tok == "-" else rhs)
            else:
                return self._fold(acc)

    def term(self) -> list:
        acc = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = self._mul(acc, self.unary())
        return acc

    def unary(self) -> list:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return _scale(self.unary(), -1)
        return self.power()

    def power(self) -> list:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, tok, at = self.take()
            if kind != "num" or not tok.isdigit() or int(tok) < 1:
                raise ParseError(f"bad exponent {tok!r}", at, expected="positive integer")
            out = base
            for _ in range(int(tok) - 1):
                out = self._mul(out, base)
            return out
        return base

    def atom(self) -> list:
        kind, tok, at = self.take()
        if kind == "num":
            try:
                return [(Fraction(tok), _SCALAR)]
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"malformed rational {tok!r}", at) from None
        if kind == "name":
            return [(Fraction(1), self._name(tok, at))]
        if (kind, tok) == ("op", "("):
            inner = self.expr()
            kind2, tok2, at2 = self.take()
            if (kind2, tok2) != ("op", ")"):
                raise ParseError("unbalanced parentheses", at2, expected="')'")
            return inner
        raise ParseError(f"unexpected {tok or 'end of input'!r}", at, expected="number, label, variable or '('")

    def _name(self, tok: str, at: int) -> Word:
        if tok in self.alg.label_index:
            return Const(self.alg.basis(self.alg.label_index[tok]))
        m = re.fullmatch(r"x(\d*)", tok)
        if m:
            idx = int(m.group(1) or 1)
            if idx < 1:
                raise ParseError(f"variable {tok!r} is out of range", at)
            if idx > self.nvars:
                raise ParseError(f"variable {tok!r} exceeds the declared {self.nvars} variables", at)
            return Var(idx - 1)
        raise ParseError(f"unknown symbol {tok!r}", at, expected="basis label of " + self.alg.name + " or variable")

    # semantics ----------------------------------------------------------
    def _unit(self) -> AlgebraElement:
        if self.alg.unit is None:
            raise ParseError(f"{self.alg.name} has no unit, so a bare scalar is meaningless", self.peek()[2])
        return self.alg.one()

    def _const_value(self, val: list) -> AlgebraElement:
        total = self.alg.zero()
        for c, item in val:
            if item is _SCALAR:
                total = total + self._unit().scale(c)
            else:
                total = total + item.value.scale(c)
        return total

    def _fold(self, val: list) -> list:
        """Collapse a variable-free combination into one constant leaf."""
        if all(item is _SCALAR for _, item in val):
            return [(sum((c for c, _ in val), Fraction(0)), _SCALAR)]
        if all(item is _SCALAR or isinstance(item, Const) for _, item in val):
            return [(Fraction(1), Const(self._const_value(val)))]
        return val

    def _as_words(self, val: list) -> list:
        val = self._fold(val)
        out = []
        for c, item in val:
            if item is _SCALAR:
                out.append((Fraction(1), Const(self._unit().scale(c))))
            else:
                out.append((c, item))
        return out

    def _mul(self, a: list, b: list) -> list:
        a, b = self._fold(a), self._fold(b)
        if len(a) == 1 and a[0][1] is _SCALAR:
            return _scale(b, a[0][0])
        if len(b) == 1 and b[0][1] is _SCALAR:
            return _scale(a, b[0][0])
        wa, wb = self._as_words(a), self._as_words(b)
        if all(isinstance(w, Const) for _, w in wa) and all(isinstance(w, Const) for _, w in wb):
            prod = self.alg.zero()
            for ca, x in wa:
                for cb, y in wb:
                    prod = prod + (x.value * y.value).scale(ca * cb)
            return [(Fraction(1), Const(prod))]
        return [(ca * cb, Prod(x, y)) for ca, x in wa for cb, y in wb]


def _scale(val: list, c) -> list:
    return [(c * a, item) for a, item in val]


def parse_map(src: MapSource | str, algebra: Algebra | None = None, nvars: int = 1) -> PolynomialMap:
    """Parse map text into a fully distributed :class:`PolynomialMap`.

    Like terms are not merged; ``"x*x - x*x"`` keeps both terms.
    """
    if isinstance(src, MapSource):
        text, algebra, nvars = src.text, src.algebra, src.nvars
    else:
        text = src
    if algebra is None:
        raise ValueError("an algebra is required")
    p = _Parser(text, algebra, nvars)
    val = p.parse()
    if len(val) == 1 and val[0][1] is _SCALAR and val[0][0] == 0:
        return PolynomialMap(algebra, nvars, ())
    return PolynomialMap(algebra, nvars, tuple(p._as_words(val)))


def parse_element(text: str, algebra: Algebra) -> AlgebraElement:
    """Parse a variable-free expression such as ``"-1 - i + k"``."""
    p = _Parser(text, algebra, 1)
    val = p.parse()
    if any(item is not _SCALAR and not isinstance(item, Const) for _, item in val):
        raise ParseError("element expression contains variables", 0)
    return p._const_value(val)


def print_word(w: Word) -> str:
    if isinstance(w, Var):
        return f"x{w.index + 1}"
    if isinstance(w, Const):
        return f"({format_element(w.value)})"
    return f"({print_word(w.left)}*{print_word(w.right)})"


def print_map(p: PolynomialMap) -> str:
    """Canonical fully parenthesised form; ``parse_map`` inverts it term for term.

    A constant factor that is a multiple of the unit inside a product reads
    back as a field scalar, which is the same map with a different word.
    """
    if not p.terms:
        return "0"
    out = []
    for i, (c, w) in enumerate(p.terms):
        c = Fraction(c)
        body = print_word(w)
        neg = c < 0
        mag = -c if neg else c
        piece = body if mag == 1 else f"{mag}*{body}"
        if i == 0:
            out.append(("-" if neg else "") + piece)
        else:
            out.append((" - " if neg else " + ") + piece)
    return "".join(out)
