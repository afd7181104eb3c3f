"""Finite-dimensional algebras given by structure constants.

An :class:`Algebra` stores the dense tensor ``gamma`` with
``b_i * b_j = sum_k gamma[i][j][k] b_k``. Nothing is assumed about
associativity, commutativity or the existence of a unit.

Builtins: reals, complexes (as a real algebra), quaternions, octonions,
real and complex matrix algebras, and complex matrices viewed as a real
algebra of twice the dimension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from numbers import Number
from typing import Sequence

import numpy as np

from . import linalg


class AlgebraError(ValueError):
    """Inconsistent algebra data or mismatched operands."""


def exact_scalar(c) -> Fraction:
    """Lift a real scalar to an exact rational; binary floats lift exactly."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, np.integer)):
        return Fraction(int(c))
    if isinstance(c, complex):
        if c.imag != 0:
            raise AlgebraError(f"complex scalar {c} has no exact rational lift")
        c = c.real
    if isinstance(c, (float, np.floating)):
        if not math.isfinite(c):
            raise AlgebraError(f"non-finite scalar {c}")
        return Fraction(float(c))
    if isinstance(c, str):
        return Fraction(c)
    raise AlgebraError(f"cannot lift {c!r} to an exact rational")


@dataclass(frozen=True, eq=False)
class Algebra:
    name: str
    dim: int
    field: str
    gamma: tuple
    labels: tuple[str, ...]
    unit: tuple | None = None
    involution: tuple | None = None
    has_composition_norm: bool = False

    def __post_init__(self):
        d = self.dim
        if d < 1:
            raise AlgebraError("dimension must be positive")
        if self.field not in ("real", "complex"):
            raise AlgebraError(f"unknown field {self.field!r}")
        if len(self.gamma) != d or any(
            len(row) != d or any(len(v) != d for v in row) for row in self.gamma
        ):
            raise AlgebraError(f"structure tensor is not {d}x{d}x{d}")
        if len(self.labels) != d:
            raise AlgebraError(f"expected {d} basis labels, got {len(self.labels)}")
        if self.unit is not None:
            if len(self.unit) != d:
                raise AlgebraError("unit has wrong length")
            u = self.element(self.unit)
            for i in range(d):
                b = self.basis(i)
                if u * b != b or b * u != b:
                    raise AlgebraError(f"declared unit fails the unit law at {self.labels[i]}")
        if self.involution is not None:
            self._check_involution()

    def _check_involution(self):
        d = self.dim
        inv = self.involution
        if len(inv) != d or any(len(r) != d for r in inv):
            raise AlgebraError("involution matrix has wrong shape")
        for i in range(d):
            b = self.basis(i)
            if b.conj().conj() != b:
                raise AlgebraError("involution is not of order 2")
            for j in range(d):
                c = self.basis(j)
                if (b * c).conj() != c.conj() * b.conj():
                    raise AlgebraError("involution is not anti-multiplicative")

    # tables -------------------------------------------------------------
    @cached_property
    def table(self) -> tuple:
        """Sparse products: ``((i, j, ((k, c), ...)), ...)`` over nonzero pairs."""
        out = []
        for i in range(self.dim):
            for j in range(self.dim):
                row = tuple((k, c) for k, c in enumerate(self.gamma[i][j]) if c)
                if row:
                    out.append((i, j, row))
        return tuple(out)

    @cached_property
    def gamma_array(self) -> np.ndarray:
        dtype = complex if self.field == "complex" else float
        return np.array(
            [[[complex(c) if dtype is complex else float(c) for c in v] for v in row] for row in self.gamma],
            dtype=dtype,
        )

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    # elements -----------------------------------------------------------
    def element(self, coords: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(coords))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (Fraction(0),) * self.dim)

    def basis(self, i: int) -> "AlgebraElement":
        return AlgebraElement(self, tuple(Fraction(int(k == i)) for k in range(self.dim)))

    def one(self) -> "AlgebraElement":
        if self.unit is None:
            raise AlgebraError(f"{self.name} has no declared unit")
        return AlgebraElement(self, self.unit)

    def multiply(self, x: "AlgebraElement", y: "AlgebraElement") -> "AlgebraElement":
        if x.algebra is not self or y.algebra is not self:
            if x.algebra.dim != y.algebra.dim:
                raise AlgebraError("dimension mismatch")
            if x.algebra is not y.algebra:
                raise AlgebraError("elements belong to different algebras")
        return AlgebraElement(self, tuple(_product(self.table, self.dim, x.coords, y.coords)))

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for row in self.gamma for v in row for c in v)

    def __repr__(self) -> str:
        return f"Algebra({self.name}, dim={self.dim}, field={self.field})"


def _product(table, d, xs, ys) -> list:
    out = [0] * d
    for i, j, row in table:
        xi = xs[i]
        if not xi:
            continue
        yj = ys[j]
        if not yj:
            continue
        p = xi * yj
        for k, c in row:
            out[k] = out[k] + (p if c == 1 else -p if c == -1 else p * c)
    return out


@dataclass(frozen=True)
class AlgebraElement:
    algebra: Algebra = field(repr=False)
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise AlgebraError(
                f"element has {len(self.coords)} coordinates, algebra dimension is {self.algebra.dim}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and all(a == b for a, b in zip(self.coords, other.coords))

    def __hash__(self) -> int:
        return hash((id(self.algebra), tuple(Fraction(c) if isinstance(c, int) else c for c in self.coords)))

    def _same(self, other: "AlgebraElement"):
        if other.algebra is not self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __bool__(self) -> bool:
        return any(bool(c) for c in self.coords)

    def conj(self) -> "AlgebraElement":
        inv = self.algebra.involution
        if inv is None:
            raise AlgebraError(f"{self.algebra.name} has no involution")
        d = self.algebra.dim
        out = []
        for r in range(d):
            acc = 0
            for c in range(d):
                m = inv[r][c]
                if m and self.coords[c]:
                    acc = acc + m * self.coords[c]
            out.append(acc)
        return AlgebraElement(self.algebra, tuple(out))

    def norm_sq(self):
        """Sum of squared coordinate moduli; exact for rational coordinates."""
        if self.algebra.field == "complex":
            return sum(abs(complex(c)) ** 2 for c in self.coords)
        return sum(c * c for c in self.coords)

    def norm(self) -> float:
        return norm(self)

    def is_exact(self) -> bool:
        return all(isinstance(c, (int, Fraction)) for c in self.coords)

    def exact(self) -> "AlgebraElement":
        return AlgebraElement(self.algebra, tuple(exact_scalar(c) for c in self.coords))

    def to_float(self) -> np.ndarray:
        dtype = complex if self.algebra.field == "complex" else float
        return np.array([dtype(c) for c in self.coords], dtype=dtype)

    def __str__(self) -> str:
        return format_element(self)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    return x.algebra.multiply(x, y)


def norm(x: AlgebraElement) -> float:
    """Euclidean norm of the coordinates (the composition norm on builtins)."""
    return math.sqrt(float(x.norm_sq()))


def format_element(x: AlgebraElement) -> str:
    """Render as a sum of ``coeff*label``; the label ``1`` prints bare."""
    parts = []
    for c, lab in zip(x.coords, x.algebra.labels):
        if not c:
            continue
        if isinstance(c, complex):
            body = f"({c})*{lab}"
            parts.append(("+", body))
            continue
        neg = c < 0
        mag = -c if neg else c
        if lab == "1":
            body = str(mag)
        elif mag == 1:
            body = lab
        else:
            body = f"{mag}*{lab}"
        parts.append(("-" if neg else "+", body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


# classification ---------------------------------------------------------

def _int_tensor(alg: Algebra) -> np.ndarray:
    vals = [Fraction(c) for row in alg.gamma for v in row for c in v]
    den = math.lcm(*(v.denominator for v in vals))
    ints = [int(v * den) for v in vals]
    dtype = np.int64 if max(map(abs, ints), default=0) < 2**20 else object
    return np.array(ints, dtype=dtype).reshape(alg.dim, alg.dim, alg.dim)


def classify(alg: Algebra) -> dict[str, bool]:
    """Decide associativity, commutativity and unitality exactly.

    By bilinearity it suffices to test basis pairs and triples.
    """
    if not alg.is_exact:
        raise AlgebraError("classify needs exact structure constants")
    g = _int_tensor(alg)
    commutative = bool(np.array_equal(g, g.transpose(1, 0, 2)))
    left = np.einsum("ijp,pkm->ijkm", g, g)
    right = np.einsum("jkp,ipm->ijkm", g, g)
    associative = bool(np.array_equal(left, right))
    return {
        "associative": associative,
        "commutative": commutative,
        "unital": alg.unit is not None or find_unit(alg) is not None,
    }


def find_unit(alg: Algebra) -> tuple | None:
    """Solve ``u b_i = b_i u = b_i`` for all ``i``; ``None`` when no unit exists."""
    d = alg.dim
    rows, rhs = [], []
    for i in range(d):
        for k in range(d):
            # left: sum_p u_p gamma[p][i][k] = delta_ik ; right: sum_p u_p gamma[i][p][k]
            rows.append([alg.gamma[p][i][k] for p in range(d)])
            rhs.append(int(i == k))
            rows.append([alg.gamma[i][p][k] for p in range(d)])
            rhs.append(int(i == k))
    sol = linalg.solve_exact(rows, rhs)
    return tuple(sol) if sol is not None else None


# subspaces -------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    algebra: Algebra = field(repr=False)
    basis: tuple[AlgebraElement, ...]
    name: str = ""

    def __post_init__(self):
        if not self.basis:
            raise AlgebraError("subspace basis is empty")
        if any(b.algebra is not self.algebra for b in self.basis):
            raise AlgebraError("basis elements from a different algebra")
        mat = [[exact_scalar(c) if self.algebra.field == "real" else c for c in b.coords] for b in self.basis]
        if self.algebra.field == "real" and linalg.rank(mat) != len(self.basis):
            raise AlgebraError("subspace basis is linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def full(cls, alg: Algebra) -> "Subspace":
        return cls(alg, tuple(alg.basis(i) for i in range(alg.dim)), name=alg.name)

    @classmethod
    def span(cls, alg: Algebra, labels: Sequence[str]) -> "Subspace":
        try:
            return cls(alg, tuple(alg.basis(alg.label_index[lab]) for lab in labels), name="span(" + ",".join(labels) + ")")
        except KeyError as exc:
            raise AlgebraError(f"unknown basis label {exc.args[0]!r}") from None

    @cached_property
    def matrix(self) -> list[list[Fraction]]:
        """Coordinate matrix with the basis vectors as columns (dim A x dim H)."""
        d = self.algebra.dim
        return [[Fraction(b.coords[r]) for b in self.basis] for r in range(d)]

    @cached_property
    def _solver(self):
        # Pick dim H independent rows of the column matrix and invert that block.
        cols = self.matrix
        _, piv_rows = linalg.rref([list(r) for r in zip(*cols)])
        block = [cols[r] for r in piv_rows]
        n = self.dim
        inv = []
        for k in range(n):
            e = [Fraction(int(i == k)) for i in range(n)]
            inv.append(linalg.solve_exact(block, e))
        # inv[k] = k-th column of block^{-1}; transpose to rows.
        inverse = [[inv[c][r] for c in range(n)] for r in range(n)]
        return piv_rows, inverse

    def coefficients_of(self, coords: Sequence) -> tuple[list, list]:
        """Candidate coefficients and the residual ``x - sum c_k b_k`` (ring-generic).

        Coordinates may be numbers or polynomials; membership holds iff every
        residual entry is zero.
        """
        piv_rows, inverse = self._solver
        picked = [coords[r] for r in piv_rows]
        coeffs = []
        for row in inverse:
            acc = 0
            for m, v in zip(row, picked):
                if m and v:
                    acc = acc + m * v
            coeffs.append(acc)
        residual = []
        for r in range(self.algebra.dim):
            acc = coords[r]
            for k, ck in enumerate(coeffs):
                m = self.matrix[r][k]
                if m and ck:
                    acc = acc - m * ck
            residual.append(acc)
        return coeffs, residual

    def combine(self, coeffs: Sequence) -> AlgebraElement:
        out = [0] * self.algebra.dim
        for ck, b in zip(coeffs, self.basis):
            for r, m in enumerate(b.coords):
                if m:
                    out[r] = out[r] + ck * m
        return AlgebraElement(self.algebra, tuple(out))


def coords_in(s: Subspace, x: AlgebraElement) -> list[Fraction] | None:
    """Coordinates of ``x`` in the basis of ``s``, or ``None`` when ``x`` is not in the span."""
    if x.algebra is not s.algebra:
        raise AlgebraError("element and subspace live in different algebras")
    coords = [exact_scalar(c) for c in x.coords] if x.is_exact() else list(x.coords)
    coeffs, residual = s.coefficients_of(coords)
    if x.is_exact():
        return [Fraction(c) for c in coeffs] if all(r == 0 for r in residual) else None
    scale = max(1.0, max(abs(complex(c)) for c in coords))
    return coeffs if all(abs(complex(r)) <= 1e-12 * scale for r in residual) else None


# builtins --------------------------------------------------------------

def _zeros(d):
    return [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]


def _freeze(g):
    return tuple(tuple(tuple(v) for v in row) for row in g)


def _diag(signs):
    d = len(signs)
    return tuple(tuple(Fraction(signs[r]) if r == c else Fraction(0) for c in range(d)) for r in range(d))


# quaternion product on 4-tuples, used to seed Cayley-Dickson doubling
def _qmul(a, b):
    a1, a2, a3, a4 = a
    b1, b2, b3, b4 = b
    return (
        a1 * b1 - a2 * b2 - a3 * b3 - a4 * b4,
        a1 * b2 + a2 * b1 + a3 * b4 - a4 * b3,
        a1 * b3 - a2 * b4 + a3 * b1 + a4 * b2,
        a1 * b4 + a2 * b3 - a3 * b2 + a4 * b1,
    )


def _qconj(a):
    return (a[0], -a[1], -a[2], -a[3])


def cayley_dickson_mul(x, y, mul, conj):
    """``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`` on coordinate halves."""
    h = len(x) // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    first = tuple(p - q for p, q in zip(mul(a, c), mul(conj(d), b)))
    second = tuple(p + q for p, q in zip(mul(d, a), mul(b, conj(c))))
    return first + second


@lru_cache(maxsize=None)
def reals() -> Algebra:
    return Algebra("reals", 1, "real", ((( Fraction(1),),),), ("1",), unit=(Fraction(1),),
                   involution=_diag([1]), has_composition_norm=True)


@lru_cache(maxsize=None)
def complexes() -> Algebra:
    """The complex numbers as a 2-dimensional real algebra with basis 1, i."""
    g = _zeros(2)
    g[0][0][0] = Fraction(1)
    g[0][1][1] = Fraction(1)
    g[1][0][1] = Fraction(1)
    g[1][1][0] = Fraction(-1)
    return Algebra("complexes", 2, "real", _freeze(g), ("1", "i"), unit=(Fraction(1), Fraction(0)),
                   involution=_diag([1, -1]), has_composition_norm=True)


@lru_cache(maxsize=None)
def quaternions() -> Algebra:
    g = _zeros(4)
    for i in range(4):
        for j in range(4):
            ei = tuple(Fraction(int(k == i)) for k in range(4))
            ej = tuple(Fraction(int(k == j)) for k in range(4))
            g[i][j] = list(_qmul(ei, ej))
    return Algebra("quaternions", 4, "real", _freeze(g), ("1", "i", "j", "k"),
                   unit=tuple(Fraction(int(k == 0)) for k in range(4)),
                   involution=_diag([1, -1, -1, -1]), has_composition_norm=True)


@lru_cache(maxsize=None)
def octonions() -> Algebra:
    """Octonions by Cayley-Dickson doubling of the quaternions.

    Basis ``e0..e7``: ``e0..e3`` are ``(1, i, j, k)`` in the first slot and
    ``e4..e7`` the same in the second slot.
    """
    g = _zeros(8)
    for i in range(8):
        for j in range(8):
            ei = tuple(Fraction(int(k == i)) for k in range(8))
            ej = tuple(Fraction(int(k == j)) for k in range(8))
            g[i][j] = list(cayley_dickson_mul(ei, ej, _qmul, _qconj))
    return Algebra("octonions", 8, "real", _freeze(g), tuple(f"e{i}" for i in range(8)),
                   unit=tuple(Fraction(int(k == 0)) for k in range(8)),
                   involution=_diag([1] + [-1] * 7), has_composition_norm=True)


def _matrix_label(r: int, c: int, m: int) -> str:
    return f"E{r + 1}{c + 1}" if m <= 9 else f"E{r + 1}_{c + 1}"


@lru_cache(maxsize=None)
def matrix_algebra(m: int, field: str = "real") -> Algebra:
    """``Mat_m`` over the reals or the complexes, basis of matrix units ``E_rc`` (row-major)."""
    if m < 1:
        raise AlgebraError("matrix size must be positive")
    d = m * m
    g = _zeros(d)
    for r in range(m):
        for s in range(m):
            for t in range(m):
                # E_rs E_st = E_rt
                g[r * m + s][s * m + t][r * m + t] = Fraction(1)
    labels = tuple(_matrix_label(r, c, m) for r in range(m) for c in range(m))
    unit = tuple(Fraction(int(r == c)) for r in range(m) for c in range(m))
    inv = [[Fraction(0)] * d for _ in range(d)]
    for r in range(m):
        for c in range(m):
            inv[c * m + r][r * m + c] = Fraction(1)
    name = f"mat{m}" if field == "real" else f"cmat{m}"
    return Algebra(name, d, field, _freeze(g), labels, unit=unit,
                   involution=tuple(tuple(r) for r in inv) if field == "real" else None)


@lru_cache(maxsize=None)
def complex_matrix_as_real(m: int) -> Algebra:
    """``Mat_m(C)`` as a real algebra of dimension ``2 m^2``.

    Basis: ``E_rc`` (row-major) followed by ``iE_rc``. The involution is the
    conjugate transpose.
    """
    base = matrix_algebra(m, "real")
    d0 = base.dim
    d = 2 * d0
    g = _zeros(d)
    for i in range(d0):
        for j in range(d0):
            for k, c in enumerate(base.gamma[i][j]):
                if not c:
                    continue
                g[i][j][k] += c
                g[i][d0 + j][d0 + k] += c
                g[d0 + i][j][d0 + k] += c
                g[d0 + i][d0 + j][k] -= c
    labels = base.labels + tuple("i" + lab for lab in base.labels)
    unit = base.unit + (Fraction(0),) * d0
    inv = [[Fraction(0)] * d for _ in range(d)]
    for r in range(m):
        for c in range(m):
            inv[c * m + r][r * m + c] = Fraction(1)
            inv[d0 + c * m + r][d0 + r * m + c] = Fraction(-1)
    return Algebra(f"cmat{m}-real", d, "real", _freeze(g), labels, unit=unit,
                   involution=tuple(tuple(r) for r in inv))


def hermitian_subspace(m: int) -> Subspace:
    """Hermitian matrices inside :func:`complex_matrix_as_real`, real dimension ``m^2``.

    Basis order: ``E_kk``; then ``E_rc + E_cr`` for ``r < c``; then
    ``i(E_cr - E_rc)`` for ``r < c``. For ``m = 2`` the last three are the
    Pauli matrices ``sigma_x`` and ``sigma_y`` preceded by ``E22``.
    """
    alg = complex_matrix_as_real(m)
    d0 = m * m
    basis = []

    def vec(entries):
        v = [Fraction(0)] * alg.dim
        for idx, c in entries:
            v[idx] = Fraction(c)
        return alg.element(v)

    for k in range(m):
        basis.append(vec([(k * m + k, 1)]))
    pairs = [(r, c) for r in range(m) for c in range(r + 1, m)]
    for r, c in pairs:
        basis.append(vec([(r * m + c, 1), (c * m + r, 1)]))
    for r, c in pairs:
        basis.append(vec([(d0 + c * m + r, 1), (d0 + r * m + c, -1)]))
    return Subspace(alg, tuple(basis), name=f"Her{m}")


BUILTINS = {
    "reals": reals,
    "R": reals,
    "complexes": complexes,
    "C": complexes,
    "quaternions": quaternions,
    "H": quaternions,
    "octonions": octonions,
    "O": octonions,
}


def make_algebra(spec, **params) -> Algebra:
    """Build an algebra from a builtin name or explicit structure constants.

    ``spec`` is one of ``reals``, ``complexes``, ``quaternions``,
    ``octonions``, ``matrix`` (with ``m=`` and ``field=``),
    ``complex-matrix-as-real`` (with ``m=``); or a mapping with keys
    ``dim``, ``field``, ``gamma`` (dense tensor or ``[i, j, k, coeff]``
    triples), and optional ``labels``, ``unit``, ``involution``.
    """
    if isinstance(spec, str):
        if spec in BUILTINS:
            return BUILTINS[spec]()
        if spec == "matrix":
            return matrix_algebra(int(params.get("m", 2)), params.get("field", "real"))
        if spec == "complex-matrix-as-real":
            return complex_matrix_as_real(int(params.get("m", 2)))
        raise AlgebraError(f"unknown builtin algebra {spec!r}")
    return _from_mapping(spec)


def _from_mapping(spec) -> Algebra:
    try:
        d = int(spec["dim"])
        raw = spec["gamma"]
    except KeyError as exc:
        raise AlgebraError(f"algebra spec lacks {exc.args[0]!r}") from None
    g = _zeros(d)
    if raw and isinstance(raw[0], (list, tuple)) and len(raw[0]) == 4 and not isinstance(raw[0][0], (list, tuple)):
        for i, j, k, c in raw:
            if not (0 <= i < d and 0 <= j < d and 0 <= k < d):
                raise AlgebraError(f"structure constant index ({i}, {j}, {k}) out of range")
            g[i][j][k] = exact_scalar(c)
    else:
        if len(raw) != d or any(len(r) != d or any(len(v) != d for v in r) for r in raw):
            raise AlgebraError(f"structure tensor is not {d}x{d}x{d}")
        g = [[[exact_scalar(c) for c in v] for v in r] for r in raw]
    labels = tuple(spec.get("labels") or [f"b{i}" for i in range(d)])
    unit = spec.get("unit")
    inv = spec.get("involution")
    return Algebra(
        spec.get("name", "custom"),
        d,
        spec.get("field", "real"),
        _freeze(g),
        labels,
        unit=tuple(exact_scalar(c) for c in unit) if unit is not None else None,
        involution=tuple(tuple(exact_scalar(c) for c in r) for r in inv) if inv is not None else None,
        has_composition_norm=False,
    )
