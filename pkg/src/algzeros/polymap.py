"""Polynomial maps over an algebra as linear combinations of bracketed words.

A word is a binary product tree whose leaves are constants (algebra
elements) or variables. Bracketing is kept exactly as given: for a
non-associative algebra ``(x*i)*x`` and ``x*(i*x)`` are different maps.
Variables are 0-based internally and print as ``x1, x2, ...``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .algebra import Algebra, AlgebraElement, AlgebraError, exact_scalar


@dataclass(frozen=True)
class Const:
    value: AlgebraElement

    @property
    def degree(self) -> int:
        return 0


@dataclass(frozen=True)
class Var:
    index: int

    @property
    def degree(self) -> int:
        return 1


@dataclass(frozen=True)
class Prod:
    left: "Word"
    right: "Word"

    @cached_property
    def degree(self) -> int:
        return self.left.degree + self.right.degree


Word = Union[Const, Var, Prod]


def power(w: Word, d: int) -> Word:
    """Left-nested power ``((w*w)*w)...``."""
    if d < 1:
        raise ValueError("power needs a positive exponent")
    out = w
    for _ in range(d - 1):
        out = Prod(out, w)
    return out


def leaves(w: Word):
    if isinstance(w, Prod):
        yield from leaves(w.left)
        yield from leaves(w.right)
    else:
        yield w


def max_var(w: Word) -> int:
    return max((leaf.index for leaf in leaves(w) if isinstance(leaf, Var)), default=-1)


def eval_word(w: Word, args: Sequence[AlgebraElement], cache: dict | None = None) -> AlgebraElement:
    """Evaluate a word, multiplying through the algebra's structure constants.

    ``cache`` memoises repeated sub-words (``x*x`` inside ``(x*x)*x`` etc.).
    """
    if isinstance(w, Var):
        return args[w.index]
    if isinstance(w, Const):
        return w.value
    if cache is not None:
        hit = cache.get(w)
        if hit is not None:
            return hit
    out = eval_word(w.left, args, cache) * eval_word(w.right, args, cache)
    if cache is not None:
        cache[w] = out
    return out


@dataclass(frozen=True)
class PolynomialMap:
    algebra: Algebra = field(repr=False)
    nvars: int
    terms: tuple[tuple[object, Word], ...] = ()

    def __post_init__(self):
        if self.nvars < 1:
            raise ValueError("a polynomial map needs at least one variable")
        for _, w in self.terms:
            if max_var(w) >= self.nvars:
                raise ValueError(f"word uses x{max_var(w) + 1} but the map has {self.nvars} variables")
            for leaf in leaves(w):
                if isinstance(leaf, Const) and leaf.value.algebra is not self.algebra:
                    raise AlgebraError("constant from a different algebra")

    @classmethod
    def zero(cls, alg: Algebra, nvars: int = 1) -> "PolynomialMap":
        return cls(alg, nvars, ())

    @classmethod
    def from_words(cls, alg: Algebra, nvars: int, words: Sequence[Word]) -> "PolynomialMap":
        return cls(alg, nvars, tuple((Fraction(1), w) for w in words))

    def __add__(self, other: "PolynomialMap") -> "PolynomialMap":
        self._check(other)
        return PolynomialMap(self.algebra, self.nvars, self.terms + other.terms)

    def __sub__(self, other: "PolynomialMap") -> "PolynomialMap":
        return self + other.scale(-1)

    def scale(self, c) -> "PolynomialMap":
        return PolynomialMap(self.algebra, self.nvars, tuple((c * a, w) for a, w in self.terms))

    def _check(self, other):
        if other.algebra is not self.algebra or other.nvars != self.nvars:
            raise ValueError("maps differ in algebra or number of variables")

    def __call__(self, *args: AlgebraElement) -> AlgebraElement:
        return evaluate(self, args)

    @property
    def syntactic_degree(self) -> int:
        return max((w.degree for _, w in self.terms), default=-1)

    def words(self) -> list[Word]:
        return [w for _, w in self.terms]

    def is_exact(self) -> bool:
        for c, w in self.terms:
            if not isinstance(c, (int, Fraction)):
                return False
            for leaf in leaves(w):
                if isinstance(leaf, Const) and not leaf.value.is_exact():
                    return False
        return True

    def exact(self) -> "PolynomialMap":
        """Lift float coefficients and constants to rationals (binary floats are exact)."""
        def lift(w):
            if isinstance(w, Const):
                return Const(w.value.exact())
            if isinstance(w, Prod):
                return Prod(lift(w.left), lift(w.right))
            return w
        return PolynomialMap(self.algebra, self.nvars, tuple((exact_scalar(c), lift(w)) for c, w in self.terms))

    def merged(self) -> "PolynomialMap":
        """Combine terms with identical words; drop zero coefficients."""
        acc: dict[Word, object] = {}
        for c, w in self.terms:
            acc[w] = acc.get(w, 0) + c
        return PolynomialMap(self.algebra, self.nvars, tuple((c, w) for w, c in acc.items() if c))

    def __str__(self) -> str:
        from .parser import print_map
        return print_map(self)


def evaluate(p: PolynomialMap, args: Sequence[AlgebraElement]) -> AlgebraElement:
    if len(args) != p.nvars:
        raise ValueError(f"map takes {p.nvars} arguments, got {len(args)}")
    for a in args:
        if a.algebra is not p.algebra:
            if a.algebra.dim != p.algebra.dim:
                raise AlgebraError("argument dimension mismatch")
            raise AlgebraError("argument from a different algebra")
    cache: dict = {}
    total = [0] * p.algebra.dim
    for c, w in p.terms:
        v = eval_word(w, args, cache)
        for k, x in enumerate(v.coords):
            if x:
                total[k] = total[k] + c * x
    return AlgebraElement(p.algebra, tuple(total))


@dataclass(frozen=True)
class HomogeneousDecomposition:
    components: dict
    degree: int | None
    leading_form: PolynomialMap

    @property
    def is_zero_map(self) -> bool:
        return self.degree is None

    @property
    def semantic_degree(self):
        return "zero-map" if self.degree is None else self.degree


def group_by_degree(p: PolynomialMap) -> dict[int, PolynomialMap]:
    groups: dict[int, list] = {}
    for c, w in p.terms:
        groups.setdefault(w.degree, []).append((c, w))
    return {d: PolynomialMap(p.algebra, p.nvars, tuple(ts)).merged() for d, ts in sorted(groups.items())}


def decompose(p: PolynomialMap) -> HomogeneousDecomposition:
    """Split ``p`` into its homogeneous parts, keeping only semantically nonzero ones.

    Each degree group is scalarised exactly over the whole algebra, so
    cancellations that are invisible at the word level are detected.
    """
    from .scalarize import scalarize_full

    exact = p if p.is_exact() else p.exact()
    components = {}
    for d, part in group_by_degree(exact).items():
        if not part.terms:
            continue
        sys = scalarize_full([part])
        if any(poly for poly in sys.polys):
            components[d] = part
    if not components:
        return HomogeneousDecomposition({}, None, PolynomialMap.zero(p.algebra, p.nvars))
    top = max(components)
    return HomogeneousDecomposition(components, top, components[top])


def leading_form(p: PolynomialMap) -> PolynomialMap:
    return decompose(p).leading_form


def monomial_norm(w: Word, coeff=1) -> float:
    """``|coeff|`` times the product of the norms of all constant leaves.

    On a composition algebra ``||m(a)|| = ||m|| * ||a||^deg``.
    """
    from .algebra import norm
    alg = None
    out = abs(float(coeff))
    for leaf in leaves(w):
        if isinstance(leaf, Const):
            alg = leaf.value.algebra
            out *= norm(leaf.value)
    if alg is not None and not alg.has_composition_norm:
        raise AlgebraError(f"{alg.name} has no composition norm")
    return out


def monomial_norm_sq(w: Word, coeff=1) -> Fraction:
    """Exact square of :func:`monomial_norm` for rational data."""
    out = Fraction(coeff) ** 2
    for leaf in leaves(w):
        if isinstance(leaf, Const):
            if not leaf.value.algebra.has_composition_norm:
                raise AlgebraError(f"{leaf.value.algebra.name} has no composition norm")
            out *= leaf.value.exact().norm_sq()
    return out


def check_self_adjoint(p: PolynomialMap) -> bool:
    """Decide exactly whether ``p(a)* == p(a*)`` for all ``a``.

    Both sides are scalarised over the whole algebra and compared as
    polynomial systems.
    """
    from .multipoly import MultiPoly
    from .scalarize import scalarize_full

    alg = p.algebra
    if alg.involution is None:
        raise AlgebraError(f"{alg.name} has no involution")
    exact = p if p.is_exact() else p.exact()
    sys = scalarize_full([exact])
    h = sys.polys
    nv = sys.atlas.nvars
    d = alg.dim
    inv = alg.involution
    # left side: involution applied to the output coordinates
    lhs = []
    for r in range(d):
        acc = MultiPoly.zero(nv)
        for c in range(d):
            if inv[r][c]:
                acc = acc + h[c].scale(inv[r][c])
        lhs.append(acc)
    # right side: substitute the involution of each argument
    sub = []
    for ell in range(p.nvars):
        for r in range(d):
            acc = MultiPoly.zero(nv)
            for c in range(d):
                if inv[r][c]:
                    acc = acc + MultiPoly.variable(nv, ell * d + c, inv[r][c])
            sub.append(acc)
    rhs = [poly.eval(sub) if poly else MultiPoly.zero(nv) for poly in h]
    rhs = [r if isinstance(r, MultiPoly) else MultiPoly.constant(nv, r) for r in rhs]
    return all(a == b for a, b in zip(lhs, rhs))
