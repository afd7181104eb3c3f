"""Worked examples embedded as data, so they run with no files on disk."""

from __future__ import annotations

from fractions import Fraction

from .algebra import matrix_algebra, quaternions
from .multipoly import MultiPoly, parse_poly
from .parser import parse_element, parse_map
from .polymap import PolynomialMap

QUAT_VARS = ["a1", "a2", "a3", "a4"]

QUAT_COEFFS = {
    "c0": "-1 - i + k",
    "c1": "-1 - i + j - k",
    "c2": "-i - j + k",
    "c3": "-1 + i + j + k",
    "c4": "6*i",
}

QUAT_MAP = "(-1-i+k)*x^2 + x*(-1-i+j-k)*x + ((-i-j+k)*x)*((-1+i+j+k)*x) + 6*i"
QUAT_LINEAR = "(-1-i+k)*x + x*(-1-i+j-k) + ((-i-j+k)*x)*(-1+i+j+k)"

QUAT_MATRIX = [
    [-1, -1, 0, 1],
    [-3, -1, 1, 0],
    [4, 3, -1, -1],
    [-1, 0, 1, -5],
]

# As printed. The last entry carries "+ a1^2"; the constants force "- a1^2".
QUAT_COORDINATES_AS_PRINTED = [
    "-a1^2 + a2^2 + a3^2 + 5*a4^2 + 2*a1*a2 - 4*a1*a3 - 4*a2*a3 + 2*a1*a4",
    "-3*a1^2 - a2^2 - a3^2 - a4^2 - 2*a1*a2 + 2*a1*a3 + 4*a1*a4 + 4*a2*a4 + 4*a3*a4 + 6",
    "4*a1^2 + 2*a1*a2 - 2*a1*a3 + 2*a1*a4 - 4*a2*a4",
    "a1^2 + a3^2 + a4^2 - 4*a1*a2 - 3*a2^2 - 2*a1*a3 - 6*a1*a4",
]

QUAT_ELIMINANT = "216 + 324*a4^2 - 927*a4^4 - 148*a4^6 + 2578*a4^8"
QUARTIC_Q = [216, 324, -927, -148, 2578]

MAT2_MAP = "E11*x + 1"
MAT2_LEADING = "E11*x"


def quat_map() -> PolynomialMap:
    return parse_map(QUAT_MAP, quaternions())


def quat_linear_map() -> PolynomialMap:
    return parse_map(QUAT_LINEAR, quaternions())


def quat_coefficients() -> dict:
    H = quaternions()
    return {k: parse_element(v, H) for k, v in QUAT_COEFFS.items()}


def quat_coordinates_as_printed() -> list[MultiPoly]:
    return [parse_poly(t, QUAT_VARS) for t in QUAT_COORDINATES_AS_PRINTED]


def quat_eliminant() -> MultiPoly:
    return parse_poly(QUAT_ELIMINANT, QUAT_VARS)


def mat2_map() -> PolynomialMap:
    return parse_map(MAT2_MAP, matrix_algebra(2, "real"))


# linear forms c0*x + x*c1 with symbolic coefficients ---------------------

PARAM_VARS = ["c01", "c02", "c03", "c04", "c11", "c12", "c13", "c14"]


def _p(text: str) -> MultiPoly:
    return parse_poly(text, PARAM_VARS)


def param_matrix_as_printed() -> list[list[MultiPoly]]:
    """The 4x4 coefficient matrix of ``c0*x + x*c1`` with symbolic entries."""
    rows = [
        ["c01+c11", "-(c02+c12)", "-(c03+c13)", "-(c04+c14)"],
        ["c02+c12", "c01+c11", "c14-c04", "c03-c13"],
        ["c03+c13", "c04-c14", "c01+c11", "c12-c02"],
        ["c04+c14", "c13-c03", "c02-c12", "c01+c11"],
    ]
    return [[_p(e) for e in row] for row in rows]


def param_det_sos() -> MultiPoly:
    s = _p("c01 + c11")
    both = _p("c02^2 + c03^2 + c04^2 + c12^2 + c13^2 + c14^2")
    diff = _p("c02^2 + c03^2 + c04^2 - c12^2 - c13^2 - c14^2")
    return s * s * (s * s + both.scale(Fraction(2))) + diff * diff


def param_degenerate(c: dict) -> bool:
    """Closed-form degeneracy condition for ``c0*x + x*c1`` (values keyed by PARAM_VARS)."""
    return c["c01"] == -c["c11"] and (
        c["c02"] ** 2 + c["c03"] ** 2 + c["c04"] ** 2 == c["c12"] ** 2 + c["c13"] ** 2 + c["c14"] ** 2
    )
