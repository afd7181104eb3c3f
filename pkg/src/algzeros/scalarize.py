"""Expansion of polynomial maps over a subspace into classical polynomial systems.

Every variable ``x_l`` is replaced by the generic element
``sum_k lam[k, l] b_k`` of the source subspace; words are then evaluated
with polynomial coordinates and the result is written in the basis of the
target subspace. Variable ``lam[k, l]`` gets flat index ``l * d + k`` and
the display name ``l_{k+1}_{l+1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import AlgebraElement, Subspace
from .multipoly import MultiPoly
from .polymap import PolynomialMap, decompose, eval_word


class ScalarizeError(ValueError):
    pass


class ContainmentError(ScalarizeError):
    """Some map sends the source subspace outside the target subspace."""

    def __init__(self, map_index: int, coordinate: int, residual: MultiPoly, names):
        self.map_index = map_index
        self.coordinate = coordinate
        self.residual = residual
        super().__init__(
            f"map {map_index + 1} leaves the target subspace: coordinate {coordinate} "
            f"has residual {residual.to_str(names)}"
        )


@dataclass(frozen=True)
class VariableAtlas:
    basis: tuple[AlgebraElement, ...]
    nargs: int
    homogenizing: bool = False

    @property
    def d(self) -> int:
        return len(self.basis)

    @property
    def nvars(self) -> int:
        return self.nargs * self.d + int(self.homogenizing)

    def index(self, k: int, ell: int) -> int:
        return ell * self.d + k

    def pair(self, idx: int) -> tuple[int, int]:
        if self.homogenizing and idx == self.nvars - 1:
            raise IndexError("homogenizing variable has no (k, l) pair")
        return idx % self.d, idx // self.d

    @property
    def names(self) -> list[str]:
        out = [f"l_{k + 1}_{ell + 1}" for ell in range(self.nargs) for k in range(self.d)]
        if self.homogenizing:
            out.append("z")
        return out


@dataclass(frozen=True)
class ScalarizedSystem:
    polys: tuple[MultiPoly, ...]
    atlas: VariableAtlas
    target_basis: tuple[AlgebraElement, ...]
    nmaps: int = 1
    source: Subspace | None = field(default=None, compare=False, repr=False)
    target: Subspace | None = field(default=None, compare=False, repr=False)

    @property
    def nvars(self) -> int:
        return self.atlas.nvars

    @property
    def e(self) -> int:
        return len(self.target_basis)

    def map_polys(self, i: int) -> tuple[MultiPoly, ...]:
        """The ``e`` coordinate polynomials of map ``i``."""
        return self.polys[i * self.e:(i + 1) * self.e]

    def degrees(self) -> list[int]:
        return [p.total_degree() for p in self.polys]

    def eval(self, point: Sequence):
        return [p.eval(point) for p in self.polys]

    def to_elements(self, lam: Sequence) -> list[AlgebraElement]:
        """Map a flat coordinate vector back to a tuple of algebra elements."""
        d = self.atlas.d
        alg = self.atlas.basis[0].algebra
        out = []
        for ell in range(self.atlas.nargs):
            acc = [0] * alg.dim
            for k, b in enumerate(self.atlas.basis):
                c = lam[ell * d + k]
                for r, m in enumerate(b.coords):
                    if m:
                        acc[r] = acc[r] + c * m
            out.append(AlgebraElement(alg, tuple(acc)))
        return out

    def with_polys(self, polys) -> "ScalarizedSystem":
        return ScalarizedSystem(tuple(polys), self.atlas, self.target_basis, self.nmaps, self.source, self.target)


def generic_elements(H: Subspace, nargs: int) -> list[AlgebraElement]:
    d = H.dim
    nv = nargs * d
    alg = H.algebra
    out = []
    for ell in range(nargs):
        coords = [MultiPoly.zero(nv) for _ in range(alg.dim)]
        for k, b in enumerate(H.basis):
            var = MultiPoly.variable(nv, ell * d + k)
            for r, m in enumerate(b.coords):
                if m:
                    coords[r] = coords[r] + var.scale(Fraction(m))
        out.append(AlgebraElement(alg, tuple(coords)))
    return out


def scalarize(maps: Sequence[PolynomialMap], H: Subspace, Hp: Subspace | None = None) -> ScalarizedSystem:
    """Classical system ``h_ji`` with ``p_i(a) = sum_j h_ji(a) b'_j`` on ``H^n``.

    Raises :class:`ContainmentError` when some ``p_i`` leaves ``span(Hp)``.
    """
    if not maps:
        raise ScalarizeError("no maps given")
    Hp = Hp or H
    alg = maps[0].algebra
    n = maps[0].nvars
    for p in maps:
        if p.algebra is not alg or p.nvars != n:
            raise ScalarizeError("maps differ in algebra or arity")
        if not p.is_exact():
            raise ScalarizeError("scalarization needs exact scalars; lift with PolynomialMap.exact()")
    if H.algebra is not alg or Hp.algebra is not alg:
        raise ScalarizeError("subspaces live in a different algebra")
    atlas = VariableAtlas(H.basis, n)
    nv = atlas.nvars
    args = generic_elements(H, n)
    polys: list[MultiPoly] = []
    cache: dict = {}
    for i, p in enumerate(maps):
        total: list = [MultiPoly.zero(nv) for _ in range(alg.dim)]
        for c, w in p.terms:
            v = eval_word(w, args, cache)
            for r, x in enumerate(v.coords):
                if x:
                    total[r] = total[r] + _as_poly(x, nv) * c
        coeffs, residual = Hp.coefficients_of(total)
        for r, res in enumerate(residual):
            res = _as_poly(res, nv)
            if res:
                raise ContainmentError(i, r, res, atlas.names)
        polys.extend(_as_poly(c, nv) for c in coeffs)
    return ScalarizedSystem(tuple(polys), atlas, Hp.basis, len(maps), H, Hp)


def scalarize_full(maps: Sequence[PolynomialMap]) -> ScalarizedSystem:
    H = Subspace.full(maps[0].algebra)
    return scalarize(maps, H, H)


def _as_poly(x, nv: int) -> MultiPoly:
    return x if isinstance(x, MultiPoly) else MultiPoly.constant(nv, x)


def homogenize(sys: ScalarizedSystem) -> ScalarizedSystem:
    """Append a variable ``z`` and replace each ``h`` of degree ``D`` by ``z^D h(x/z)``."""
    if sys.atlas.homogenizing:
        raise ScalarizeError("system is already homogenized")
    atlas = VariableAtlas(sys.atlas.basis, sys.atlas.nargs, homogenizing=True)
    polys = tuple(p.homogenize() if p else MultiPoly.zero(sys.nvars + 1) for p in sys.polys)
    return ScalarizedSystem(polys, atlas, sys.target_basis, sys.nmaps, sys.source, sys.target)


def dehomogenize(sys: ScalarizedSystem) -> ScalarizedSystem:
    if not sys.atlas.homogenizing:
        raise ScalarizeError("system is not homogenized")
    atlas = VariableAtlas(sys.atlas.basis, sys.atlas.nargs)
    polys = tuple(p.dehomogenize() for p in sys.polys)
    return ScalarizedSystem(polys, atlas, sys.target_basis, sys.nmaps, sys.source, sys.target)


def linear_coefficient_matrix(p: PolynomialMap, H: Subspace, Hp: Subspace | None = None) -> list[list[Fraction]]:
    """Matrix whose column ``k`` holds the target coordinates of ``p(b_k)``.

    ``p`` must be a single-variable map that is linear on ``H``.
    """
    if p.nvars != 1:
        raise ScalarizeError("linear_coefficient_matrix takes a single-variable map")
    sys = scalarize([p], H, Hp)
    for poly in sys.polys:
        if any(sum(e) != 1 for e in poly.terms):
            raise ScalarizeError("map is not linear on the subspace")
    d = sys.nvars
    rows = []
    for poly in sys.polys:
        row = []
        for k in range(d):
            e = tuple(int(i == k) for i in range(d))
            row.append(Fraction(poly.coeff(e)))
        rows.append(row)
    return rows


def jacobian(sys: ScalarizedSystem | Sequence[MultiPoly]) -> list[list[MultiPoly]]:
    polys = sys.polys if isinstance(sys, ScalarizedSystem) else list(sys)
    if not polys:
        return []
    nv = polys[0].nvars
    return [[p.diff(v) for v in range(nv)] for p in polys]


def leading_system(maps: Sequence[PolynomialMap], H: Subspace, Hp: Subspace | None = None) -> ScalarizedSystem:
    """Scalarization of the leading forms (semantic) of ``maps``."""
    forms = [decompose(p).leading_form for p in maps]
    return scalarize(forms, H, Hp)


def system_to_dict(sys: ScalarizedSystem) -> dict:
    return {
        "variables": sys.atlas.names,
        "nmaps": sys.nmaps,
        "target_dim": sys.e,
        "polynomials": [
            [[list(e), str(c)] for e, c in p.sorted_terms()] for p in sys.polys
        ],
    }


def polys_from_dict(data: dict) -> list[MultiPoly]:
    nv = len(data["variables"])
    return [
        MultiPoly.from_terms(nv, ((tuple(e), Fraction(c)) for e, c in poly))
        for poly in data["polynomials"]
    ]
