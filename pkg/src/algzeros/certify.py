"""Exact certificates about zeros of scalarized systems.

* :class:`NondegenerateComplex` - the homogeneous leading system has only
  the trivial zero over C (zero-dimensional at the origin).
* :class:`NondegenerateReal` - only the trivial zero over R, by an exact
  argument specific to real division algebras or linear forms.
* :class:`DegenerateWitness` - a nonzero common zero of the leading forms.
* :class:`NoRealZero` - a univariate eliminant without real roots.
* :class:`Inconclusive` - nothing could be shown.

Every certificate carries enough data to be replayed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import groebner as gb
from . import linalg, realroots
from .algebra import Subspace, classify
from .multipoly import MultiPoly
from .polymap import Const, PolynomialMap, Prod, Var, Word, decompose, leaves
from .scalarize import ScalarizedSystem, linear_coefficient_matrix, scalarize


@dataclass(frozen=True)
class NondegenerateComplex:
    basis: tuple[MultiPoly, ...]
    pure_powers: tuple[tuple[int, int], ...]
    kind: str = field(default="NondegenerateComplex", init=False)

    def replay(self, polys: Sequence[MultiPoly]) -> bool:
        order = gb.grevlex()
        return all(not gb.normal_form(p, self.basis, order) for p in polys) and set(
            v for v, _ in self.pure_powers
        ) == set(range(polys[0].nvars))

    def to_dict(self, names=None) -> dict:
        return {
            "kind": self.kind,
            "order": "grevlex",
            "basis": [g.to_str(names) for g in self.basis],
            "pure_powers": [[v, k] for v, k in self.pure_powers],
        }


@dataclass(frozen=True)
class NondegenerateReal:
    method: str
    details: dict
    kind: str = field(default="NondegenerateReal", init=False)

    def to_dict(self, names=None) -> dict:
        return {"kind": self.kind, "method": self.method, **_jsonable(self.details)}


@dataclass(frozen=True)
class DegenerateWitness:
    point: tuple
    exact: bool
    residual: float = 0.0
    kind: str = field(default="DegenerateWitness", init=False)

    def replay(self, polys: Sequence[MultiPoly], tol: float = 1e-8) -> bool:
        if not any(self.point):
            return False
        if self.exact:
            return all(p.eval(list(self.point)) == 0 for p in polys)
        x = np.array(self.point, dtype=complex)
        vals = [complex(p.eval([complex(v) for v in x])) for p in polys]
        return max(abs(v) for v in vals) <= tol * max(1.0, float(np.linalg.norm(x)))

    def to_dict(self, names=None) -> dict:
        return {
            "kind": self.kind,
            "exact": self.exact,
            "point": [_fmt_scalar(v) for v in self.point],
            "residual": self.residual,
        }


@dataclass(frozen=True)
class NoRealZero:
    variable: int | None
    eliminant: MultiPoly
    sturm_count: int
    chain_length: int
    basis: tuple[MultiPoly, ...] = ()
    kind: str = field(default="NoRealZero", init=False)

    @property
    def unit_ideal(self) -> bool:
        return self.variable is None

    def replay(self, polys: Sequence[MultiPoly]) -> bool:
        """Recompute the lex basis and check the eliminant is in the ideal and root-free."""
        if self.unit_ideal:
            return gb.is_unit_ideal(gb.buchberger(polys))
        n = polys[0].nvars
        order = _elimination_order(n, self.variable)
        G = gb.buchberger(polys, order)
        if gb.normal_form(self.eliminant, G, order):
            return False
        return realroots.sturm_count(self.eliminant, var=self.variable) == 0

    def to_dict(self, names=None) -> dict:
        return {
            "kind": self.kind,
            "variable": None if self.variable is None else (names[self.variable] if names else self.variable),
            "eliminant": self.eliminant.to_str(names),
            "real_roots": self.sturm_count,
            "sturm_chain_length": self.chain_length,
            "basis": [g.to_str(names) for g in self.basis],
        }


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    kind: str = field(default="Inconclusive", init=False)

    def to_dict(self, names=None) -> dict:
        return {"kind": self.kind, "reason": self.reason}


Certificate = NondegenerateComplex | NondegenerateReal | DegenerateWitness | NoRealZero | Inconclusive


def _fmt_scalar(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, complex):
        return [v.real, v.imag]
    return float(v)


def _jsonable(d):
    if isinstance(d, dict):
        return {k: _jsonable(v) for k, v in d.items()}
    if isinstance(d, (list, tuple)):
        return [_jsonable(v) for v in d]
    if isinstance(d, Fraction):
        return str(d)
    if isinstance(d, MultiPoly):
        return d.to_str()
    return d


# complex non-degeneracy ---------------------------------------------------

def pure_powers(basis: Sequence[MultiPoly], order: gb.MonomialOrder) -> dict[int, int]:
    out: dict[int, int] = {}
    for g in basis:
        lm = gb.leading_monomial(g, order)
        nz = [i for i, k in enumerate(lm) if k]
        if len(nz) == 1:
            v = nz[0]
            out[v] = min(out.get(v, lm[v]), lm[v])
    return out


def nondegenerate_complex(polys: Sequence[MultiPoly], seed: int = 0, **guards) -> Certificate:
    """Decide whether homogeneous ``polys`` have a nonzero common zero over C.

    Zero-dimensionality at the origin is read off a grevlex basis: every
    variable must have a pure power among the leading monomials. Otherwise
    a witness is produced (exact for linear systems, numerical otherwise).
    """
    polys = [p for p in polys]
    if not polys:
        return Inconclusive("empty system")
    n = polys[0].nvars
    if any(not p.is_homogeneous() for p in polys):
        raise ValueError("nondegenerate_complex expects homogeneous polynomials")
    if any(not p.is_exact() for p in polys):
        raise ValueError("nondegenerate_complex needs exact coefficients")
    nonzero = [p for p in polys if p]
    if not nonzero:
        point = tuple(Fraction(int(i == n - 1)) for i in range(n))
        return DegenerateWitness(point, exact=True)
    order = gb.grevlex()
    try:
        G = gb.buchberger(nonzero, order, **guards)
    except gb.GuardExceeded as exc:
        return Inconclusive(f"Groebner guard: {exc}")
    pp = pure_powers(G, order)
    if len(pp) == n:
        return NondegenerateComplex(tuple(G), tuple(sorted(pp.items())))
    if all(p.total_degree() == 1 for p in nonzero):
        rows = [[p.coeff(tuple(int(i == v) for i in range(n))) for v in range(n)] for p in nonzero]
        kernel = linalg.nullspace(rows)
        return DegenerateWitness(tuple(kernel[-1]), exact=True)
    witness = complex_witness(nonzero, seed=seed)
    if witness is not None:
        return witness
    return Inconclusive("leading ideal is not zero-dimensional but no witness was located")


def complex_witness(polys: Sequence[MultiPoly], seed: int = 0, starts: int = 64) -> DegenerateWitness | None:
    """Search a nonzero complex common zero by Gauss-Newton on ``{p = 0, r . x = 1}``."""
    from .numeric import NumericSystem, newton_batch

    n = polys[0].nvars
    rng = np.random.default_rng(seed)
    r = rng.normal(size=n) + 1j * rng.normal(size=n)
    aff = MultiPoly.from_terms(n, [((0,) * n, -1)] + [
        (tuple(int(i == v) for i in range(n)), complex(r[v])) for v in range(n)
    ])
    system = NumericSystem(list(polys) + [aff])
    X0 = rng.normal(size=(starts, n)) + 1j * rng.normal(size=(starts, n))
    res = newton_batch(system, X0, tol=1e-12, max_iters=60)
    hits = np.flatnonzero(res.converged)
    if hits.size == 0:
        return None
    best = hits[np.argmin(res.residual[hits])]
    x = res.x[best]
    x = x / np.linalg.norm(x)
    vals = NumericSystem(list(polys)).eval(x[None, :])[0]
    return DegenerateWitness(tuple(complex(v) for v in x), exact=False, residual=float(np.abs(vals).max()))


# real non-degeneracy for maps ------------------------------------------

def _flatten(w: Word) -> list:
    return list(leaves(w))


def _rebuild(seq: list) -> Word:
    out = seq[0]
    for leaf in seq[1:]:
        out = Prod(out, leaf)
    return out


def _const_value(alg, seq: list):
    out = alg.one()
    for leaf in seq:
        out = out * leaf.value
    return out


def division_nondegenerate(form: PolynomialMap, _depth: int = 0) -> NondegenerateReal | None:
    """Exact real non-degeneracy of a homogeneous single-variable form on a real division algebra.

    Uses that products of nonzero elements are nonzero:

    * one monomial with nonzero coefficient and nonzero constants;
    * a linear form with nonsingular coefficient matrix;
    * ``L(a) = l(a) a`` or ``a l(a)`` (a common outer factor ``a``), reducing to ``l``.

    Returns ``None`` when no such argument applies (which proves nothing).
    """
    alg = form.algebra
    if not alg.has_composition_norm or form.nvars != 1:
        return None
    form = form.merged()
    if not form.terms:
        return None
    degs = {w.degree for _, w in form.terms}
    if len(degs) != 1:
        return None
    deg = degs.pop()
    if len(form.terms) == 1:
        c, w = form.terms[0]
        if c != 0 and all(leaf.value for leaf in leaves(w) if isinstance(leaf, Const)):
            return NondegenerateReal("division-single-monomial", {"degree": deg, "depth": _depth})
    if deg == 1:
        M = linear_coefficient_matrix(form, Subspace.full(alg))
        det = linalg.det_bareiss(M)
        if det != 0:
            return NondegenerateReal("linear-nonsingular", {"matrix": M, "det": det, "depth": _depth})
        return None
    if deg == 0:
        return None
    associative = classify(alg)["associative"]
    for side in ("right", "left"):
        cof = _strip(form, side, associative)
        if cof is None:
            continue
        if all(w.degree == 0 for _, w in cof.terms):
            val = sum((_const_value(alg, _flatten(w)).scale(c) for c, w in cof.terms), alg.zero())
            if val:
                return NondegenerateReal(f"cancel-{side}", {"cofactor": str(val), "depth": _depth})
            continue
        inner = division_nondegenerate(cof, _depth + 1)
        if inner is not None:
            return NondegenerateReal(
                f"cancel-{side}", {"inner": inner.method, "depth": _depth, **{k: v for k, v in inner.details.items() if k != "depth"}}
            )
    return None


def _strip(form: PolynomialMap, side: str, associative: bool) -> PolynomialMap | None:
    """Cofactor ``l`` with ``form = l * x`` (right) or ``x * l`` (left), if syntactically available."""
    terms = []
    for c, w in form.terms:
        if associative:
            seq = _flatten(w)
            end = seq[-1] if side == "right" else seq[0]
            if end != Var(0) or len(seq) < 2:
                return None
            rest = seq[:-1] if side == "right" else seq[1:]
            terms.append((c, _rebuild(rest)))
        else:
            if not isinstance(w, Prod):
                return None
            outer, rest = (w.right, w.left) if side == "right" else (w.left, w.right)
            if outer != Var(0):
                return None
            terms.append((c, rest))
    return PolynomialMap(form.algebra, 1, tuple(terms))


def certify_nondegenerate(maps: Sequence[PolynomialMap], H: Subspace | None = None, seed: int = 0) -> Certificate:
    """Best available exact statement about the leading forms of ``maps`` on ``H``.

    Tries the division-algebra arguments (single map on a whole builtin
    composition algebra), then the complex Groebner criterion. A complex
    witness does not refute real non-degeneracy; in that case a real
    witness is searched numerically.
    """
    alg = maps[0].algebra
    H = H or Subspace.full(alg)
    forms = [decompose(p).leading_form for p in maps]
    if any(not f.terms for f in forms):
        return Inconclusive("a map is identically zero")
    full = H.dim == alg.dim and all(b == alg.basis(i) for i, b in enumerate(H.basis))
    if len(maps) == 1 and full:
        cert = division_nondegenerate(forms[0])
        if cert is not None:
            return cert
    sys = scalarize(forms, H, H) if _contained(forms, H) else None
    if sys is None:
        return Inconclusive("leading forms leave the subspace")
    cert = nondegenerate_complex(sys.polys, seed=seed)
    if isinstance(cert, DegenerateWitness) and alg.field == "real":
        if cert.exact:
            return cert
        from .solve import SolveConfig, numeric_nondegeneracy_min

        probe = numeric_nondegeneracy_min(forms, H, SolveConfig(seed=seed, n_starts=64))
        if probe.verdict == "degenerate-witness":
            return DegenerateWitness(tuple(float(v) for v in probe.argmin), exact=False, residual=probe.min_value)
        return Inconclusive(
            f"degenerate over C; no real witness found (numerical minimum {probe.min_value:.3g} on the unit sphere)"
        )
    return cert


def _contained(forms, H) -> bool:
    from .scalarize import ContainmentError
    try:
        scalarize(forms, H, H)
        return True
    except ContainmentError:
        return False


# no real zero -----------------------------------------------------------

def _elimination_order(n: int, keep: int) -> gb.MonomialOrder:
    return gb.lex([v for v in range(n) if v != keep] + [keep])


def certify_no_real_zero(sys: ScalarizedSystem | Sequence[MultiPoly], **guards) -> Certificate:
    """Certify that the system has no real solution via a root-free univariate eliminant.

    Variables are tried from last to first. A unit ideal short-circuits to
    the trivial eliminant ``1``.
    """
    polys = list(sys.polys if isinstance(sys, ScalarizedSystem) else sys)
    polys = [p for p in polys if p]
    if not polys:
        return Inconclusive("every equation is identically zero")
    if any(not p.is_exact() for p in polys):
        raise ValueError("certify_no_real_zero needs exact coefficients")
    n = polys[0].nvars
    tried = []
    for v in reversed(range(n)):
        order = _elimination_order(n, v)
        try:
            G = gb.buchberger(polys, order, **guards)
        except gb.GuardExceeded as exc:
            tried.append(f"variable {v}: {exc}")
            continue
        if gb.is_unit_ideal(G):
            return NoRealZero(None, MultiPoly.constant(n, Fraction(1)), 0, 1, tuple(G))
        univ = [g for g in G if g.variables() <= {v} and g.total_degree() > 0]
        if not univ:
            tried.append(f"variable {v}: no eliminant")
            continue
        elim = univ[0]
        summary = realroots.sturm_summary(realroots.to_upoly(elim, v))
        if summary.roots == 0:
            return NoRealZero(v, elim, 0, summary.chain_length, tuple(G))
        tried.append(f"variable {v}: eliminant has {summary.roots} real roots")
        # an eliminant with real roots is the same for every variable order only by accident; keep trying
    return Inconclusive("; ".join(tried))
