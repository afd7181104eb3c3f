import sys
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from algzeros.algebra import matrix_algebra, octonions, quaternions  # noqa: E402
from algzeros.polymap import Const, PolynomialMap, Prod, Var  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def builtin_algebras():
    return {"H": quaternions(), "O": octonions(), "mat2": matrix_algebra(2, "real")}


def random_element(alg, rng, lo=-3, hi=3, avoid_unit_multiple=False):
    while True:
        v = [Fraction(int(x)) for x in rng.integers(lo, hi + 1, alg.dim)]
        x = alg.element(v)
        if not any(v):
            continue
        if avoid_unit_multiple and alg.unit is not None:
            u = alg.one()
            idx = next(i for i, c in enumerate(u.coords) if c)
            if x == u.scale(v[idx] / u.coords[idx]):
                continue
        return x


def random_word(alg, rng, nvars, degree, max_consts=2, avoid_unit_multiple=False):
    """Random bracketing of ``degree`` variables and up to ``max_consts`` constants."""
    leaves = [Var(int(rng.integers(nvars))) for _ in range(degree)]
    for _ in range(int(rng.integers(0, max_consts + 1))):
        leaves.insert(int(rng.integers(len(leaves) + 1)), Const(random_element(alg, rng, avoid_unit_multiple=avoid_unit_multiple)))
    if not leaves:
        leaves = [Const(random_element(alg, rng, avoid_unit_multiple=avoid_unit_multiple))]
    while len(leaves) > 1:
        i = int(rng.integers(len(leaves) - 1))
        left, right = leaves[i], leaves[i + 1]
        if left.degree == 0 and right.degree == 0:
            # a variable-free product is just a constant; keep words canonical
            merged = Const(_word_value(left) * _word_value(right))
            leaves[i:i + 2] = [merged if merged.value else left]
        else:
            leaves[i:i + 2] = [Prod(left, right)]
    return leaves[0]


def _word_value(w):
    if isinstance(w, Const):
        return w.value
    return _word_value(w.left) * _word_value(w.right)


def random_map(alg, rng, nvars=1, max_degree=3, max_terms=3, avoid_unit_multiple=False):
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        d = int(rng.integers(0, max_degree + 1))
        c = Fraction(int(rng.integers(-4, 5)) or 1, int(rng.integers(1, 4)))
        terms.append((c, random_word(alg, rng, nvars, d, avoid_unit_multiple=avoid_unit_multiple)))
    return PolynomialMap(alg, nvars, tuple(terms))


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
