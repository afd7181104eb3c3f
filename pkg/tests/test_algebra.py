from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from algzeros.algebra import (
    AlgebraError, Subspace, classify, complex_matrix_as_real, coords_in, hermitian_subspace, make_algebra,
    matrix_algebra, multiply, norm, octonions, quaternions,
)
from algzeros.parser import parse_element

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def vec(dim):
    return st.lists(rationals, min_size=dim, max_size=dim)


def test_quaternion_relations():
    H = make_algebra("quaternions")
    assert H.dim == 4 and list(H.labels) == ["1", "i", "j", "k"]
    i, j, k = (parse_element(s, H) for s in "ijk")
    assert i * j == k
    assert j * i == -k


def test_matrix_units():
    M = make_algebra("matrix", m=2, field="real")
    E11, E12 = parse_element("E11", M), parse_element("E12", M)
    assert E11 * E12 == E12
    assert not (E12 * E11)
    assert multiply(E11, E11 + M.one()) == E11.scale(2)


def test_octonion_nonassociative_triple():
    O = octonions()
    e1, e2, e4 = O.basis(1), O.basis(2), O.basis(4)
    assert (e1 * e2) * e4 == -(e1 * (e2 * e4))


def test_octonion_table_matches_independent_doubling():
    O = octonions()
    for a in range(8):
        for b in range(8):
            want = oracles.cd_mul(oracles.cd_basis(8, a), oracles.cd_basis(8, b))
            assert tuple(multiply(O.basis(a), O.basis(b)).coords) == want


def test_quaternion_table_matches_hand_table():
    H = quaternions()
    for a in range(4):
        for b in range(4):
            want = oracles.quat_mul(oracles.cd_basis(4, a), oracles.cd_basis(4, b))
            assert tuple(multiply(H.basis(a), H.basis(b)).coords) == want


def test_quaternion_product_from_hand_multiplication():
    H = quaternions()
    x, y = parse_element("-1-i+k", H), parse_element("6*i", H)
    assert tuple((x * y).coords) == oracles.quat_mul((-1, -1, 0, 1), (0, 6, 0, 0))
    assert x * y == parse_element("6 - 6*i + 6*j", H)


def test_norms():
    H = quaternions()
    assert norm(parse_element("1+i+j+k", H)) == 2
    assert norm(H.zero()) == 0


@pytest.mark.parametrize("alg", [quaternions(), octonions()], ids=["H", "O"])
def test_composition_norm_random(alg, rng):
    for _ in range(1000):
        a = alg.element(rng.normal(size=alg.dim))
        b = alg.element(rng.normal(size=alg.dim))
        lhs, rhs = norm(a * b), norm(a) * norm(b)
        assert abs(lhs - rhs) <= 1e-12 * rhs


@pytest.mark.parametrize(
    "alg,expected",
    [
        (quaternions(), (True, False, True)),
        (octonions(), (False, False, True)),
        (matrix_algebra(2, "real"), (True, False, True)),
    ],
    ids=["H", "O", "mat2"],
)
def test_classify(alg, expected):
    c = classify(alg)
    assert (c["associative"], c["commutative"], c["unital"]) == expected


def test_octonion_counterexample_by_exhaustive_scan():
    O = octonions()
    bad = [
        (a, b, c) for a in range(8) for b in range(8) for c in range(8)
        if oracles.cd_mul(oracles.cd_mul(oracles.cd_basis(8, a), oracles.cd_basis(8, b)), oracles.cd_basis(8, c))
        != oracles.cd_mul(oracles.cd_basis(8, a), oracles.cd_mul(oracles.cd_basis(8, b), oracles.cd_basis(8, c)))
    ]
    assert bad and classify(O)["associative"] is False


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["H", "O", "mat2"]), rationals, rationals, st.data())
def test_bilinearity(name, alpha, beta, data):
    alg = {"H": quaternions(), "O": octonions(), "mat2": matrix_algebra(2, "real")}[name]
    x, y, z = (alg.element(data.draw(vec(alg.dim))) for _ in range(3))
    assert (x.scale(alpha) + y.scale(beta)) * z == (x * z).scale(alpha) + (y * z).scale(beta)
    assert z * (x.scale(alpha) + y.scale(beta)) == (z * x).scale(alpha) + (z * y).scale(beta)


@pytest.mark.parametrize("alg", [quaternions(), octonions(), matrix_algebra(2), complex_matrix_as_real(2)],
                         ids=["H", "O", "mat2", "cmat2-real"])
def test_unit_law(alg):
    u = alg.one()
    for i in range(alg.dim):
        assert u * alg.basis(i) == alg.basis(i) == alg.basis(i) * u


@pytest.mark.parametrize("alg", [quaternions(), octonions(), matrix_algebra(2), complex_matrix_as_real(2)],
                         ids=["H", "O", "mat2", "cmat2-real"])
def test_involution_antimultiplicative(alg):
    for a in range(alg.dim):
        for b in range(alg.dim):
            x, y = alg.basis(a), alg.basis(b)
            assert (x * y).conj() == y.conj() * x.conj()


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_involution_order_two(data):
    alg = octonions()
    x = alg.element(data.draw(vec(8)))
    assert x.conj().conj() == x


def test_coords_in():
    H = quaternions()
    S = Subspace.span(H, ["1", "i"])
    assert coords_in(S, parse_element("3 - 2*i", H)) == [3, -2]
    assert coords_in(S, parse_element("j", H)) is None


def test_hermitian_subspace():
    assert hermitian_subspace(1).dim == 1
    her = hermitian_subspace(2)
    assert her.dim == 4
    alg = complex_matrix_as_real(2)
    for b in her.basis:
        assert b.conj() == b
    sigma_y = parse_element("-iE12 + iE21", alg)
    assert coords_in(her, sigma_y) == [0, 0, 0, 1]
    assert coords_in(her, parse_element("iE11", alg)) is None


def test_hermitian_basis_elements_as_documented():
    alg = complex_matrix_as_real(2)
    want = ["E11", "E22", "E12 + E21", "-iE12 + iE21"]
    assert [b for b in hermitian_subspace(2).basis] == [parse_element(w, alg) for w in want]


def test_explicit_structure_constants_from_triples():
    spec = {"dim": 2, "field": "real", "labels": ["1", "e"], "unit": ["1", "0"],
            "gamma": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 0, 1, "1"], [1, 1, 0, "-1"]]}
    C = make_algebra(spec)
    e = C.basis(1)
    assert e * e == -C.one()


def test_bad_tensor_and_bad_unit():
    with pytest.raises(AlgebraError):
        make_algebra({"dim": 2, "gamma": [[[1, 0]]]})
    with pytest.raises(AlgebraError):
        make_algebra({"dim": 1, "gamma": [[0, 0, 0, "2"]], "unit": ["1"]})
    with pytest.raises(AlgebraError):
        make_algebra("sedenions")


def test_dimension_mismatch():
    with pytest.raises((AlgebraError, ValueError)):
        multiply(quaternions().one(), octonions().one())


def test_exact_arithmetic_stays_rational():
    H = quaternions()
    x = H.element([Fraction(1, 3), Fraction(2, 7), 0, 1])
    y = x * x
    assert all(isinstance(c, Fraction) for c in y.coords)
    assert x.norm_sq() == Fraction(1, 9) + Fraction(4, 49) + 1
    assert np.isclose(norm(x) ** 2, float(x.norm_sq()))
