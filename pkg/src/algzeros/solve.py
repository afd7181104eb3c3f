"""Numerical zero finding and existence verdicts for polynomial maps.

The solvers never claim that a system has no zero; nonexistence is only
ever stated on the strength of an exact certificate from ``certify``.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import numeric as nm
from .algebra import AlgebraElement, Subspace, hermitian_subspace
from .multipoly import MultiPoly
from .polymap import PolynomialMap, check_self_adjoint, decompose, evaluate, leaves, monomial_norm_sq
from .scalarize import ScalarizedSystem, scalarize


@dataclass(frozen=True)
class HomotopyConfig:
    gamma: complex | None = None
    dt_init: float = 0.05
    dt_min: float = 1e-8
    dt_max: float = 0.1
    track_tol: float = 1e-8
    corrector_tol: float = 1e-12
    max_steps: int = 10_000

    def __post_init__(self):
        if not 0 < self.dt_min < self.dt_init:
            raise ValueError("need 0 < dt_min < dt_init")
        if min(self.track_tol, self.corrector_tol) <= 0:
            raise ValueError("tolerances must be positive")


@dataclass(frozen=True)
class SolveConfig:
    tol_residual: float = 1e-10
    tol_dedup: float = 1e-6
    max_newton_iters: int = 50
    max_halvings: int = 20
    n_starts: int = 200
    seed: int = 0
    homotopy: HomotopyConfig = field(default_factory=HomotopyConfig)
    real_filter_tol: float = 1e-8

    def __post_init__(self):
        if min(self.tol_residual, self.tol_dedup, self.real_filter_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.n_starts < 1 or self.max_newton_iters < 1:
            raise ValueError("n_starts and max_newton_iters must be positive")

    def rng(self, stream: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed & (2**64 - 1), stream])

    def gamma(self) -> complex:
        if self.homotopy.gamma is not None:
            return complex(self.homotopy.gamma)
        return nm.unit_complex(self.rng(1))

    def replace(self, **kw) -> "SolveConfig":
        data = {**{k: getattr(self, k) for k in self.__dataclass_fields__}, **kw}
        return SolveConfig(**data)


@dataclass
class Zero:
    coords: np.ndarray
    elements: tuple
    residual: float
    isolated: bool | None = None

    def to_dict(self) -> dict:
        return {
            "coords": _num_list(self.coords),
            "elements": [_num_list(np.asarray(e.coords)) for e in self.elements],
            "residual": self.residual,
            "isolated": self.isolated,
        }


@dataclass
class SolveReport:
    method: str
    zeros: list = field(default_factory=list)
    endpoints: list = field(default_factory=list)
    bezout_count: int | None = None
    verdicts: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    certificate: object = None

    @property
    def found(self) -> bool:
        return bool(self.zeros)

    def status_counts(self) -> dict:
        out: dict = {}
        for e in self.endpoints:
            out[e["status"]] = out.get(e["status"], 0) + 1
        return out

    def to_dict(self, names=None) -> dict:
        return {
            "method": self.method,
            "zeros": [z.to_dict() for z in self.zeros],
            "bezout_count": self.bezout_count,
            "path_status": self.status_counts(),
            "endpoints": self.endpoints,
            "verdicts": self.verdicts,
            "notes": self.notes,
            "certificate": None if self.certificate is None else self.certificate.to_dict(names),
        }


@dataclass
class DegreeEstimate:
    value: int | None
    target: list
    preimages: int
    signs: list
    notes: list
    attempts: int

    def to_dict(self) -> dict:
        return asdict(self)


def _num_list(x) -> list:
    x = np.asarray(x)
    if np.iscomplexobj(x):
        if np.abs(x.imag).max(initial=0.0) == 0.0:
            return x.real.tolist()
        return [[float(v.real), float(v.imag)] for v in x]
    return x.astype(float).tolist()


# core solvers on scalarized systems ------------------------------------

def _polys(sys) -> list[MultiPoly]:
    return list(sys.polys if isinstance(sys, ScalarizedSystem) else sys)


def solve_complex_total_degree(sys, cfg: SolveConfig | None = None) -> SolveReport:
    """All isolated complex solutions of a square system by total-degree homotopy."""
    cfg = cfg or SolveConfig()
    polys = _polys(sys)
    system = nm.NumericSystem(polys)
    if system.m != system.n:
        raise ValueError(f"homotopy needs a square system, got {system.m} equations in {system.n} unknowns")
    if any(d < 1 for d in system.degrees):
        raise ValueError("every equation needs positive degree")
    h = cfg.homotopy
    paths = nm.track_total_degree(
        system, cfg.gamma(), dt_init=h.dt_init, dt_min=h.dt_min, dt_max=h.dt_max,
        track_tol=h.track_tol, endpoint_tol=h.corrector_tol, residual_tol=cfg.tol_residual,
        max_steps=h.max_steps,
    )
    report = SolveReport("homotopy", bezout_count=int(np.prod(system.degrees)))
    report.endpoints = [
        {"status": s, "coords": _num_list(x)} for s, x in zip(paths.status, paths.endpoints)
    ]
    good = [i for i, s in enumerate(paths.status) if s == nm.CONVERGED]
    pts = paths.endpoints[good]
    for r in nm.dedup(pts, cfg.tol_dedup):
        x = pts[r]
        res = float(np.abs(system.eval(x[None, :])[0]).max())
        report.zeros.append(Zero(x, (), res))
    report.zeros.sort(key=lambda z: (np.round(z.coords.real, 8).tolist(), np.round(z.coords.imag, 8).tolist()))
    return report


def _start_scale(polys: Sequence[MultiPoly]) -> float:
    s = 1.0
    for p in polys:
        d = p.total_degree()
        if d < 1:
            continue
        top = max(abs(complex(c)) for e, c in p.terms.items() if sum(e) == d)
        rest = max((abs(complex(c)) for e, c in p.terms.items() if sum(e) < d), default=0.0)
        if top > 0 and rest > 0:
            s = max(s, (rest / top) ** (1.0 / d))
    return s


def solve_real_multistart(sys, cfg: SolveConfig | None = None, complex_starts: bool = False) -> SolveReport:
    """Damped Newton from ``cfg.n_starts`` Gaussian starts at mixed scales."""
    cfg = cfg or SolveConfig()
    polys = _polys(sys)
    system = nm.NumericSystem(polys)
    rng = cfg.rng(2)
    S, n = cfg.n_starts, system.n
    scale = _start_scale(polys)
    scales = np.exp(rng.uniform(np.log(0.25), np.log(2.0 * scale), size=S))
    X0 = rng.normal(size=(S, n)) * scales[:, None] / math.sqrt(n)
    if complex_starts:
        X0 = X0 + 1j * rng.normal(size=(S, n)) * scales[:, None] / math.sqrt(n)
    res = nm.newton_batch(system, X0, tol=cfg.tol_residual, max_iters=cfg.max_newton_iters,
                          max_halvings=cfg.max_halvings)
    report = SolveReport("newton", bezout_count=int(np.prod(system.degrees)) if system.m == system.n else None)
    report.endpoints = [
        {"status": nm.CONVERGED if c else nm.FAILED, "coords": _num_list(x)} for c, x in zip(res.converged, res.x)
    ]
    pts = res.x[res.converged]
    reps = nm.dedup(pts, cfg.tol_dedup)
    flagged = system.m < system.n
    for r in reps:
        x = pts[r]
        J = system.jac(x[None, :])[0]
        if nm.relative_rank_deficiency(J) < 1e-8:
            flagged = True
        report.zeros.append(Zero(x, (), float(res.residual[res.converged][r])))
    if report.zeros and flagged:
        report.notes.append("possibly positive-dimensional: rank-deficient Jacobian at a zero")
    return report


def _real_filter(report: SolveReport, system: nm.NumericSystem, cfg: SolveConfig) -> list[np.ndarray]:
    out = []
    for z in report.zeros:
        x = z.coords
        if np.abs(x.imag).max() <= cfg.real_filter_tol * (1 + np.linalg.norm(x)):
            out.append(x.real.copy())
    if not out:
        return []
    pol = nm.newton_batch(system, np.array(out), tol=cfg.tol_residual, max_iters=cfg.max_newton_iters)
    return [x for x, c in zip(pol.x, pol.converged) if c]


# orchestration -----------------------------------------------------------

def _algebra_residual(maps: Sequence[PolynomialMap], elements: Sequence[AlgebraElement]) -> float:
    worst = 0.0
    for p in maps:
        v = np.asarray(evaluate(p, elements).coords, dtype=complex)
        worst = max(worst, float(np.sqrt(np.sum(np.abs(v) ** 2))))
    return worst


def find_common_zero(
    maps: Sequence[PolynomialMap],
    H: Subspace | None = None,
    Hp: Subspace | None = None,
    cfg: SolveConfig | None = None,
    method: str = "auto",
    verdicts: bool = True,
) -> SolveReport:
    """Scalarize, solve numerically, map back to the algebra and verify there.

    ``method`` is ``newton``, ``homotopy`` or ``auto`` (Newton first on real
    algebras, homotopy with a real filter as fallback).
    """
    cfg = cfg or SolveConfig()
    maps = [p if p.is_exact() else p.exact() for p in maps]
    alg = maps[0].algebra
    H = H or Subspace.full(alg)
    Hp = Hp or H
    sys = scalarize(maps, H, Hp)
    notes = []
    if Hp.dim > H.dim:
        notes.append(f"target dimension {Hp.dim} exceeds source dimension {H.dim}; existence results do not apply")
    system = nm.NumericSystem(sys.polys)
    square = system.m == system.n and all(d >= 1 for d in system.degrees)
    real = alg.field == "real"

    report: SolveReport | None = None
    if method not in ("auto", "newton", "homotopy"):
        raise ValueError(f"unknown method {method!r}")
    if method in ("auto", "newton"):
        report = solve_real_multistart(sys, cfg, complex_starts=not real)
    if method == "homotopy" or (method == "auto" and not report.zeros):
        if square:
            hom = solve_complex_total_degree(sys, cfg)
            if real:
                pts = _real_filter(hom, system, cfg)
                hom.zeros = [Zero(x, (), float(np.abs(system.eval(x[None, :])[0]).max())) for x in pts]
                hom.method = "homotopy+real-filter"
            if report is not None:
                hom.notes.extend(report.notes)
                hom.method = "newton, then " + hom.method
            report = hom
        elif method == "homotopy":
            raise ValueError(f"homotopy needs a square system, got {system.m} equations in {system.n} unknowns")
        else:
            notes.append("system is not square; homotopy fallback skipped")
    report.notes = notes + report.notes

    verified = []
    for z in report.zeros:
        elems = tuple(sys.to_elements(list(z.coords)))
        z.elements = elems
        z.residual = _algebra_residual(maps, elems)
        if square:
            J = system.jac(np.asarray(z.coords)[None, :])[0]
            z.isolated = nm.relative_rank_deficiency(J) >= 1e-8
        verified.append(z)
    # isolated zeros first; points on a positive-dimensional family are interchangeable
    verified.sort(key=lambda z: (z.isolated is False, round(z.residual, 12), np.round(np.abs(z.coords), 8).tolist()))
    report.zeros = verified
    if verdicts:
        report.verdicts = theorem_verdicts(maps, H, Hp, cfg)
    return report


# numeric non-degeneracy ----------------------------------------------------

@dataclass
class NondegeneracyProbe:
    min_value: float
    argmin: np.ndarray
    verdict: str


def numeric_nondegeneracy_min(
    forms: Sequence[PolynomialMap], H: Subspace | None = None, cfg: SolveConfig | None = None, iters: int = 200
) -> NondegeneracyProbe:
    """Minimise ``max_i ||p_i(a)||`` over the unit sphere of ``H^n``.

    Projected gradient descent on ``||F||^2`` from ``cfg.n_starts`` points,
    then Gauss-Newton on ``{F = 0, |x|^2 = 1}`` from the best few. A
    minimum ``<= 1e-12`` is reported as a (numerical) witness; anything
    else is evidence, never proof.
    """
    cfg = cfg or SolveConfig()
    forms = [f if f.is_exact() else f.exact() for f in forms]
    H = H or Subspace.full(forms[0].algebra)
    if forms[0].algebra.field != "real":
        raise ValueError("numeric_nondegeneracy_min works on real algebras")
    sys = scalarize(forms, H, None if _contained(forms, H) else Subspace.full(forms[0].algebra))
    system = nm.NumericSystem(sys.polys)
    n = system.n
    rng = cfg.rng(3)
    X = rng.normal(size=(cfg.n_starts, n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    step = np.ones(cfg.n_starts)

    def objective(Y):
        return np.sum(system.eval(Y) ** 2, axis=1)

    f = objective(X)
    for _ in range(iters):
        F, J = system.eval_jac(X)
        g = 2 * np.einsum("smn,sm->sn", J, F)
        g -= np.sum(g * X, axis=1, keepdims=True) * X
        gn = np.linalg.norm(g, axis=1)
        if gn.max() < 1e-15:
            break
        for _h in range(30):
            Y = X - step[:, None] * g
            Y /= np.linalg.norm(Y, axis=1, keepdims=True)
            fy = objective(Y)
            ok = fy <= f - 1e-4 * step * gn**2
            if ok.all():
                break
            step[~ok] *= 0.5
        X = np.where(ok[:, None], Y, X)
        f = np.where(ok, fy, f)
        step[ok] *= 2.0
    best = np.argsort(f)[: min(8, len(f))]
    sphere = MultiPoly.from_terms(
        n, [((0,) * n, -1)] + [(tuple(2 * int(i == v) for i in range(n)), 1) for v in range(n)]
    )
    polish = nm.newton_batch(nm.NumericSystem(list(sys.polys) + [sphere]), X[best], tol=1e-14, max_iters=30)
    cand = np.vstack([X[best], polish.x / np.linalg.norm(polish.x, axis=1, keepdims=True)])
    vals = _blockwise_max(system.eval(cand), sys)
    i = int(np.argmin(vals))
    v = float(vals[i])
    verdict = "degenerate-witness" if v <= 1e-12 else "numerically-nondegenerate"
    return NondegeneracyProbe(v, cand[i], verdict)


def _blockwise_max(F: np.ndarray, sys: ScalarizedSystem) -> np.ndarray:
    e = sys.e
    blocks = [np.linalg.norm(F[:, i * e:(i + 1) * e], axis=1) for i in range(sys.nmaps)]
    return np.max(blocks, axis=0)


def _contained(forms, H) -> bool:
    from .scalarize import ContainmentError
    try:
        scalarize(forms, H, H)
        return True
    except ContainmentError:
        return False


# mapping degree ------------------------------------------------------------

def mapping_degree_estimate(
    forms: Sequence[PolynomialMap], H: Subspace | None = None, cfg: SolveConfig | None = None, max_retries: int = 5
) -> DegreeEstimate:
    """Signed count of real preimages of a random unit target under the leading forms.

    Solves ``p^max(x) = c`` by complexified total-degree homotopy and sums
    ``sign det J`` over the real solutions. A target is discarded when a
    real preimage is singular or two preimages collide.
    """
    cfg = cfg or SolveConfig()
    forms = [f if f.is_exact() else f.exact() for f in forms]
    H = H or Subspace.full(forms[0].algebra)
    if forms[0].algebra.field != "real":
        raise ValueError("mapping degree is defined here for real algebras")
    sys = scalarize(forms, H, H)
    system = nm.NumericSystem(sys.polys)
    if system.m != system.n:
        raise ValueError("mapping degree needs as many equations as unknowns")
    probe = numeric_nondegeneracy_min(forms, H, cfg.replace(n_starts=min(cfg.n_starts, 64)))
    if probe.verdict == "degenerate-witness":
        raise ValueError("leading form is degenerate; the mapping degree is undefined")
    notes: list = []
    rng = cfg.rng(4)
    N = system.n
    last = None
    for attempt in range(1, max_retries + 1):
        c = rng.normal(size=N)
        c /= np.linalg.norm(c)
        shifted = [p - MultiPoly.constant(N, float(ci)) for p, ci in zip(sys.polys, c)]
        rep = solve_complex_total_degree(shifted, cfg.replace(seed=cfg.seed + 7919 * attempt))
        shifted_sys = nm.NumericSystem(shifted)
        counts = rep.status_counts()
        reals = _real_filter(rep, shifted_sys, cfg)
        reps = nm.dedup(np.array(reals), cfg.tol_dedup) if reals else []
        collided = len(reps) < len(reals)
        signs = []
        singular = False
        for r in reps:
            J = system.jac(reals[r][None, :])[0]
            det = np.linalg.det(J)
            if nm.relative_rank_deficiency(J) < 1e-10:
                singular = True
            signs.append(int(np.sign(det)))
        last = DegreeEstimate(sum(signs), c.tolist(), len(reps), signs, [], attempt)
        trouble = []
        if singular or counts.get(nm.SINGULAR, 0):
            trouble.append("singular endpoint")
        if collided:
            trouble.append("colliding preimages")
        info = [f"{counts.get(nm.DIVERGED, 0)} of {rep.bezout_count} paths diverged"]
        if counts.get(nm.FAILED, 0):
            info.append(f"{counts[nm.FAILED]} paths failed before t = 1 (solutions at infinity)")
        if not trouble:
            last.notes = notes + info
            return last
        notes.append(f"target {attempt} rejected: {', '.join(trouble)}")
    last.notes = notes + ["low confidence: retries exhausted"]
    return last


# existence verdicts --------------------------------------------------------

def _is_quat_or_oct(alg) -> bool:
    return alg.has_composition_norm and alg.dim in (4, 8)


def _is_full(H: Subspace) -> bool:
    alg = H.algebra
    return H.dim == alg.dim and all(b == alg.basis(i) for i, b in enumerate(H.basis))


@dataclass
class Verdict:
    applies: bool
    reason: str

    def to_dict(self) -> dict:
        return {"applies": self.applies, "reason": self.reason}


def two_monomial_guarantee(p: PolynomialMap, spot_check: bool = True, cfg: SolveConfig | None = None) -> Verdict:
    """Existence for even-degree maps on H or O whose leading form has at most two monomials."""
    from .certify import NondegenerateComplex, NondegenerateReal, certify_nondegenerate

    cfg = cfg or SolveConfig()
    alg = p.algebra
    if not _is_quat_or_oct(alg):
        return Verdict(False, f"not-covered: algebra {alg.name} is not the quaternions or octonions")
    if p.nvars != 1:
        return Verdict(False, "not-covered: more than one variable")
    p = p if p.is_exact() else p.exact()
    dec = decompose(p)
    if dec.is_zero_map or dec.degree == 0:
        return Verdict(False, "not-covered: degree is not positive")
    if dec.degree % 2:
        return Verdict(False, "not-covered: odd degree; the odd-degree division-algebra result applies instead")
    terms = [(c, w) for c, w in dec.leading_form.merged().terms if monomial_norm_sq(w, c) != 0]
    if len(terms) > 2:
        return Verdict(False, f"not-covered: leading form has {len(terms)} monomials")
    terms.sort(key=lambda t: monomial_norm_sq(t[1], t[0]), reverse=True)
    norms = [monomial_norm_sq(w, c) for c, w in terms]
    if len(terms) == 1:
        reason = "guaranteed: single nonzero monomial of even degree"
    elif norms[0] > norms[1]:
        reason = f"guaranteed: two monomials with squared norms {norms[0]} > {norms[1]}"
    else:
        cert = certify_nondegenerate([dec.leading_form], seed=cfg.seed)
        if not isinstance(cert, (NondegenerateReal, NondegenerateComplex)):
            return Verdict(False, f"not-covered: equal monomial norms and non-degeneracy not certified ({cert.kind})")
        reason = f"guaranteed: equal monomial norms, non-degeneracy certified ({cert.kind})"
    if spot_check and len(terms) == 2:
        m1 = PolynomialMap(alg, 1, (terms[0],))
        m2 = PolynomialMap(alg, 1, (terms[1],))
        mins = []
        for t in np.linspace(0.0, 1.0, 5):
            ht = m1 + m2.scale(1 - float(t))
            mins.append(numeric_nondegeneracy_min([ht], None, cfg.replace(n_starts=16), iters=60).min_value)
        reason += f"; min |h_t| on the sphere over sampled t: {min(mins):.3g}"
        if min(mins) <= 1e-12:
            return Verdict(False, "not-covered: numerical zero of h_t on the sphere (" + reason + ")")
    return Verdict(True, reason)


def theorem_verdicts(
    maps: Sequence[PolynomialMap], H: Subspace, Hp: Subspace, cfg: SolveConfig | None = None, certificate=None
) -> dict:
    """Which existence results guarantee a common zero for this input, with reasons."""
    from .certify import NondegenerateComplex, NondegenerateReal, certify_nondegenerate

    cfg = cfg or SolveConfig()
    alg = maps[0].algebra
    decs = [decompose(p) for p in maps]
    degrees = [d.degree for d in decs]
    out: dict = {}
    if any(d is None or d == 0 for d in degrees):
        reason = "a map has degree zero or is the zero map"
        return {k: Verdict(False, reason).to_dict() for k in
                ("algebraically_closed", "odd_degree_real", "division_algebra_odd", "two_monomial_even", "hermitian_odd")}
    dims_ok = Hp.dim <= H.dim
    cert = certificate if certificate is not None else certify_nondegenerate(maps, H, seed=cfg.seed)
    certified = isinstance(cert, (NondegenerateReal, NondegenerateComplex))
    odd = all(d % 2 == 1 for d in degrees)

    if alg.field != "complex":
        out["algebraically_closed"] = Verdict(False, "ground field is real")
    elif not dims_ok:
        out["algebraically_closed"] = Verdict(False, "dim H' > dim H")
    elif isinstance(cert, NondegenerateComplex):
        out["algebraically_closed"] = Verdict(True, "leading forms certified non-degenerate over C")
    else:
        out["algebraically_closed"] = Verdict(False, f"non-degeneracy not certified ({cert.kind})")

    if alg.field != "real":
        out["odd_degree_real"] = Verdict(False, "ground field is not real")
    elif not odd:
        out["odd_degree_real"] = Verdict(False, f"degrees {degrees} are not all odd")
    elif not dims_ok:
        out["odd_degree_real"] = Verdict(False, "dim H' > dim H")
    elif certified:
        out["odd_degree_real"] = Verdict(True, f"odd degrees, non-degeneracy certified ({cert.kind})")
    else:
        probe = numeric_nondegeneracy_min([d.leading_form for d in decs], H, cfg.replace(n_starts=64))
        if probe.verdict == "numerically-nondegenerate":
            out["odd_degree_real"] = Verdict(True, f"odd degrees, non-degeneracy probed numerically (min {probe.min_value:.3g})")
        else:
            out["odd_degree_real"] = Verdict(False, "leading forms numerically degenerate")

    if not (_is_quat_or_oct(alg) and _is_full(H)):
        out["division_algebra_odd"] = Verdict(False, "not the full quaternion or octonion algebra")
    elif not odd:
        out["division_algebra_odd"] = Verdict(False, f"degrees {degrees} are not all odd")
    elif certified:
        out["division_algebra_odd"] = Verdict(True, f"odd degrees, non-degenerate ({cert.kind}: {getattr(cert, 'method', 'groebner')})")
    else:
        out["division_algebra_odd"] = Verdict(False, f"non-degeneracy not certified ({cert.kind})")

    if len(maps) == 1:
        out["two_monomial_even"] = two_monomial_guarantee(maps[0], spot_check=False, cfg=cfg)
    else:
        out["two_monomial_even"] = Verdict(False, "not-covered: more than one map")

    her = alg.involution is not None and alg.name.endswith("-real") and alg.name.startswith("cmat")
    if not her:
        out["hermitian_odd"] = Verdict(False, "algebra is not complex matrices viewed as a real algebra")
    else:
        m = int(round(math.sqrt(alg.dim // 2)))
        if [b.coords for b in H.basis] != [b.coords for b in hermitian_subspace(m).basis]:
            out["hermitian_odd"] = Verdict(False, "source subspace is not the Hermitian matrices")
        elif len(maps) != 1 or not check_self_adjoint(maps[0]):
            out["hermitian_odd"] = Verdict(False, "map is not self-adjoint")
        elif not odd:
            out["hermitian_odd"] = Verdict(False, f"degree {degrees[0]} is even")
        elif out["odd_degree_real"].applies:
            out["hermitian_odd"] = Verdict(True, "self-adjoint, odd degree, " + out["odd_degree_real"].reason)
        else:
            out["hermitian_odd"] = Verdict(False, out["odd_degree_real"].reason)
    return {k: v.to_dict() for k, v in out.items()}
