from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

import oracles
from algzeros import fixtures as fx
from algzeros.algebra import Subspace, complex_matrix_as_real, hermitian_subspace, matrix_algebra, quaternions
from algzeros.multipoly import MultiPoly, parse_poly
from algzeros.parser import parse_map
from algzeros.polymap import evaluate
from algzeros.scalarize import (
    ContainmentError, ScalarizeError, dehomogenize, homogenize, jacobian, leading_system, linear_coefficient_matrix,
    polys_from_dict, scalarize, scalarize_full, system_to_dict,
)
from conftest import builtin_algebras, random_map

small = st.integers(-5, 5)


def poly_strategy(nv=3, max_terms=5, max_deg=3):
    mono = st.tuples(*[st.integers(0, max_deg) for _ in range(nv)])
    return st.dictionaries(mono, st.fractions(-9, 9, max_denominator=5), max_size=max_terms).map(
        lambda d: MultiPoly(nv, d)
    )


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), poly_strategy(), poly_strategy())
def test_multipoly_ring_axioms(p, q, r):
    assert (p + q) * r == p * r + q * r
    assert (p * q) * r == p * (q * r)
    assert p * q == q * p
    assert p - p == MultiPoly.zero(3)


@settings(max_examples=60, deadline=None)
@given(poly_strategy(), st.lists(st.fractions(-3, 3, max_denominator=4), min_size=3, max_size=3))
def test_multipoly_eval_is_ring_homomorphism(p, pt):
    q = p * p + p
    assert q.eval(pt) == p.eval(pt) ** 2 + p.eval(pt)


@settings(max_examples=40, deadline=None)
@given(poly_strategy())
def test_homogenize_round_trip(p):
    if not p:
        return
    h = p.homogenize()
    assert h.is_homogeneous()
    assert h.dehomogenize() == p


def test_multipoly_text_round_trip():
    names = ["a", "b"]
    p = parse_poly("3/2*a^2*b - b + 7", names)
    assert parse_poly(p.to_str(names), names) == p
    assert p.total_degree() == 3 and p.degree_in(1) == 1


def test_example_against_sympy_quaternions():
    sp_coords, syms = oracles.sympy_quaternion_example()
    sys = scalarize_full([fx.quat_map()])
    names = sys.atlas.names
    for ours, theirs in zip(sys.polys, sp_coords):
        got = ours.to_str(names)
        for k, s in enumerate(syms):
            got = got.replace(f"l_{k + 1}_1", str(s))
        assert sp.expand(sp.sympify(got.replace("^", "**")) - theirs) == 0


def test_linear_matrix_against_sympy():
    M = linear_coefficient_matrix(fx.quat_linear_map(), Subspace.full(quaternions()))
    want = oracles.sympy_linear_matrix()
    assert [[Fraction(int(v)) for v in row] for row in want.tolist()] == M
    assert M == [[Fraction(v) for v in row] for row in fx.QUAT_MATRIX]


def test_linear_matrix_rejects_nonlinear():
    with pytest.raises(ScalarizeError):
        linear_coefficient_matrix(parse_map("x*x", quaternions()), Subspace.full(quaternions()))


def test_leibniz_oracle_det_of_example_matrix():
    assert oracles.leibniz_det(fx.QUAT_MATRIX) != 0


def test_span_of_one_squares():
    H = quaternions()
    S = Subspace.span(H, ["1"])
    sys = scalarize([parse_map("x*x", H)], S, S)
    assert sys.polys == (parse_poly("l_1_1^2", ["l_1_1"]),)


def test_containment_error_names_the_coordinate():
    H = quaternions()
    S = Subspace.span(H, ["1"])
    with pytest.raises(ContainmentError) as info:
        scalarize([parse_map("i*x", H)], S, S)
    assert info.value.map_index == 0 and "l_1_1" in str(info.value)


def test_hermitian_square_stays_hermitian():
    A = complex_matrix_as_real(2)
    her = hermitian_subspace(2)
    sys = scalarize([parse_map("x*x*x + E12 + E21", A)], her, her)
    assert len(sys.polys) == 4 and sys.degrees() == [3, 3, 3, 3]
    with pytest.raises(ContainmentError):
        scalarize([parse_map("iE11*x", A)], her, her)


def test_mat2_system_contains_the_contradiction():
    sys = scalarize_full([fx.mat2_map()])
    # E11 X + I: second row of E11 X vanishes, so the (2,2) coordinate reads 1 = 0
    assert MultiPoly.constant(4, 1) in sys.polys


def test_system_serialization_round_trip():
    sys = scalarize_full([fx.quat_map()])
    assert tuple(polys_from_dict(system_to_dict(sys))) == sys.polys


def test_homogenized_system():
    sys = scalarize_full([fx.quat_map()])
    h = homogenize(sys)
    assert h.nvars == 5 and all(p.is_homogeneous() for p in h.polys)
    assert dehomogenize(h).polys == sys.polys
    with pytest.raises(ScalarizeError):
        homogenize(h)


def test_leading_system_drops_constant():
    sys = leading_system([fx.quat_map()], Subspace.full(quaternions()))
    assert all(p.is_homogeneous() and p.total_degree() == 2 for p in sys.polys)


def test_jacobian_against_finite_differences(rng):
    sys = scalarize_full([fx.quat_map()])
    J = jacobian(sys)
    for _ in range(5):
        x = rng.normal(size=4)
        f = lambda v: np.array([float(p.eval([float(t) for t in v])) for p in sys.polys])
        want = oracles.central_difference_jacobian(f, x)
        got = np.array([[float(e.eval(list(x))) for e in row] for row in J])
        assert np.allclose(got, want, atol=1e-6)


@pytest.mark.parametrize("name", ["H", "O", "mat2"])
def test_commuting_diagram_exact(name, rng):
    alg = builtin_algebras()[name]
    for _ in range(40):
        p = random_map(alg, rng, nvars=2)
        sys = scalarize_full([p])
        lam = [Fraction(int(v), int(rng.integers(1, 4))) for v in rng.integers(-4, 5, 2 * alg.dim)]
        elems = sys.to_elements(lam)
        assert [Fraction(c) for c in evaluate(p, elems).coords] == sys.eval(lam)


def test_maps_must_share_algebra():
    with pytest.raises(ScalarizeError):
        scalarize_full([parse_map("x", quaternions()), parse_map("x", matrix_algebra(2))])
