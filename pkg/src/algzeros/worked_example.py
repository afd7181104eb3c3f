"""End-to-end reproduction of the quaternion and 2x2 matrix examples.

Each step returns a :class:`Check` with a pass flag and a printable detail
(a diff when it fails). Nothing here raises on a mismatch.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import fixtures as fx
from . import groebner as gb
from . import linalg, realroots
from .algebra import Subspace, matrix_algebra, quaternions
from .certify import DegenerateWitness, NoRealZero, certify_no_real_zero, certify_nondegenerate
from .parser import parse_map
from .polymap import Const, PolynomialMap, Prod, Var
from .scalarize import linear_coefficient_matrix, scalarize_full


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    data: dict = field(default_factory=dict)


def check_matrix() -> Check:
    M = linear_coefficient_matrix(fx.quat_linear_map(), Subspace.full(quaternions()))
    det = linalg.det_bareiss(M)
    det_oracle = linalg.det_cofactor(M)
    want = [[Fraction(v) for v in row] for row in fx.QUAT_MATRIX]
    ok = M == want and det != 0 and det == det_oracle
    detail = f"M matches: {M == want}; det = {det} (cofactor {det_oracle})"
    if M != want:
        detail += f"; computed {[[str(v) for v in r] for r in M]}"
    return Check("coefficient matrix", ok, detail, {"matrix": [[str(v) for v in r] for r in M], "det": str(det)})


def check_scalarization() -> Check:
    sys = scalarize_full([fx.quat_map()])
    printed = fx.quat_coordinates_as_printed()
    diffs = []
    for j, (got, want) in enumerate(zip(sys.polys, printed), start=1):
        if got != want:
            diffs.append(f"coordinate {j}: computed - printed = {(got - want).to_str(fx.QUAT_VARS)}")
    detail = "all four coordinates match" if not diffs else "; ".join(diffs)
    return Check(
        "scalarization", not diffs, detail,
        {"computed": [p.to_str(fx.QUAT_VARS) for p in sys.polys], "printed": fx.QUAT_COORDINATES_AS_PRINTED},
    )


def proportional(p, q) -> Fraction | None:
    """Ratio ``p / q`` when ``p`` is a rational multiple of ``q``."""
    if not p or not q or set(p.terms) != set(q.terms):
        return None
    e = next(iter(q.terms))
    r = Fraction(p.terms[e]) / Fraction(q.terms[e])
    return r if all(Fraction(p.terms[t]) == r * Fraction(q.terms[t]) for t in q.terms) else None


def check_eliminant() -> Check:
    sys = scalarize_full([fx.quat_map()])
    elim = gb.eliminate(sys.polys, keep=[3])
    want = fx.quat_eliminant()
    ratios = [proportional(want, g) for g in elim]
    hit = [r for r in ratios if r is not None and r > 0]
    detail = (
        f"eliminant = {hit[0]} * basis element" if hit
        else f"no basis element proportional to the printed eliminant; got {[g.to_str(fx.QUAT_VARS) for g in elim]}"
    )
    return Check("lex eliminant", bool(hit), detail, {"eliminants": [g.to_str(fx.QUAT_VARS) for g in elim]})


def check_sturm() -> Check:
    count = realroots.sturm_count(fx.QUARTIC_Q)
    return Check("Sturm count", count == 0, f"{count} real roots of q")


def check_no_zero() -> Check:
    sys = scalarize_full([fx.quat_map()])
    cert = certify_no_real_zero(sys)
    ok = isinstance(cert, NoRealZero) and cert.replay(sys.polys)
    nondeg = certify_nondegenerate([fx.quat_map()])
    detail = f"{cert.kind}; leading form: {nondeg.kind} ({getattr(nondeg, 'method', '')})"
    ok = ok and nondeg.kind == "NondegenerateReal"
    return Check("no zero in H", ok, detail, {"certificate": cert.to_dict(fx.QUAT_VARS)})


def _param_matrix_numeric(c: dict) -> list[list[Fraction]]:
    H = quaternions()
    c0 = H.element([c["c01"], c["c02"], c["c03"], c["c04"]])
    c1 = H.element([c["c11"], c["c12"], c["c13"], c["c14"]])
    p = PolynomialMap(H, 1, ((Fraction(1), Prod(Const(c0), Var(0))), (Fraction(1), Prod(Var(0), Const(c1)))))
    return linear_coefficient_matrix(p, Subspace.full(H))


def check_sos_identity(samples: int = 20, seed: int = 0) -> Check:
    Mp = fx.param_matrix_as_printed()
    lhs = linalg.det_cofactor(Mp)
    rhs = fx.param_det_sos()
    same = lhs == rhs
    rng = np.random.default_rng(seed)
    layout = True
    for _ in range(samples):
        c = {k: Fraction(int(v)) for k, v in zip(fx.PARAM_VARS, rng.integers(-5, 6, 8))}
        pt = [c[k] for k in fx.PARAM_VARS]
        printed = [[e.eval(pt) for e in row] for row in Mp]
        if printed != _param_matrix_numeric(c):
            layout = False
            break
    detail = f"det expands to the sum of squares: {same}; matrix layout agrees with c0*x + x*c1 on {samples} samples: {layout}"
    if not same:
        detail += f"; difference {(lhs - rhs).to_str(fx.PARAM_VARS)}"
    return Check("determinant identity", same and layout, detail)


def check_mat2() -> Check:
    alg = matrix_algebra(2, "real")
    p = fx.mat2_map()
    witness = certify_nondegenerate([p])
    lead = scalarize_full([parse_map(fx.MAT2_LEADING, alg)])
    w_ok = isinstance(witness, DegenerateWitness) and witness.replay(lead.polys)
    cert = certify_no_real_zero(scalarize_full([p]))
    g_ok = isinstance(cert, NoRealZero) and cert.unit_ideal
    w_str = str(alg.element(list(witness.point))) if isinstance(witness, DegenerateWitness) else witness.kind
    return Check("2x2 matrix example", w_ok and g_ok, f"leading-form witness X = {w_str}; basis = {{1}}: {g_ok}")


STEPS: list[tuple[str, Callable[[], Check]]] = [
    ("1", check_matrix),
    ("2", check_scalarization),
    ("3", check_eliminant),
    ("4", check_sturm),
    ("5", check_no_zero),
    ("6", check_sos_identity),
    ("7", check_mat2),
]


def run_all() -> list[Check]:
    return [fn() for _, fn in STEPS]
