from fractions import Fraction

import numpy as np
import pytest

from algzeros import fixtures as fx
from algzeros.algebra import Subspace, complexes, octonions, quaternions
from algzeros.certify import (
    DegenerateWitness, Inconclusive, NondegenerateComplex, NondegenerateReal, NoRealZero, certify_no_real_zero,
    certify_nondegenerate, division_nondegenerate, nondegenerate_complex,
)
from algzeros.multipoly import MultiPoly, parse_poly
from algzeros.parser import parse_map
from algzeros.polymap import decompose, evaluate
from algzeros.scalarize import leading_system, scalarize_full


def test_example_leading_form_is_real_nondegenerate():
    cert = certify_nondegenerate([fx.quat_map()])
    assert isinstance(cert, NondegenerateReal)
    assert cert.to_dict()["kind"] == "NondegenerateReal"


def test_example_leading_form_degenerates_over_c():
    # complexified quaternions have zero divisors, so the complex criterion must not succeed
    sys = leading_system([fx.quat_map()], Subspace.full(quaternions()))
    cert = nondegenerate_complex(sys.polys)
    assert isinstance(cert, DegenerateWitness)
    assert cert.replay(sys.polys)
    pt = np.array(cert.point, dtype=complex)
    assert np.abs(pt.imag).max() > 1e-6  # not a real zero


def test_example_no_real_zero_certificate_replays():
    sys = scalarize_full([fx.quat_map()])
    cert = certify_no_real_zero(sys)
    assert isinstance(cert, NoRealZero) and not cert.unit_ideal
    assert cert.replay(list(sys.polys))
    assert cert.eliminant.variables() == {cert.variable}


def test_mat2_exact_witness_and_unit_ideal():
    cert = certify_nondegenerate([fx.mat2_map()])
    assert isinstance(cert, DegenerateWitness) and cert.exact
    form = decompose(fx.mat2_map()).leading_form
    x = form.algebra.element(cert.point)
    assert x and not evaluate(form, [x])
    nz = certify_no_real_zero(scalarize_full([fx.mat2_map()]))
    assert isinstance(nz, NoRealZero) and nz.unit_ideal


@pytest.mark.parametrize("text", ["x*x*x", "i*x*j*x*k*x", "(1+i)*x + x*j"])
def test_division_arguments_on_quaternions(text):
    cert = division_nondegenerate(decompose(parse_map(text, quaternions())).leading_form)
    assert isinstance(cert, NondegenerateReal)


def test_division_argument_refuses_cancelling_linear_form():
    # i*x - x*i kills x = i, so no certificate may be produced
    form = parse_map("i*x - x*i", quaternions())
    assert division_nondegenerate(form) is None
    cert = certify_nondegenerate([form])
    assert isinstance(cert, DegenerateWitness)


def test_octonion_single_monomial():
    cert = certify_nondegenerate([parse_map("(e1*x)*(x*e2)", octonions())])
    assert isinstance(cert, NondegenerateReal)


def test_complex_field_groebner_certificate():
    C = complexes()
    cert = certify_nondegenerate([parse_map("x*x*x + x", C)])
    assert cert.kind in ("NondegenerateComplex", "NondegenerateReal")
    names = ["u", "v"]
    polys = [parse_poly("u^2 - v^2", names), parse_poly("u*v", names)]
    c = nondegenerate_complex(polys)
    assert isinstance(c, NondegenerateComplex) and c.replay(polys)


def test_complex_witness_for_isotropic_form():
    polys = [parse_poly("u^2 + v^2", ["u", "v"]), parse_poly("u^2 + v^2", ["u", "v"]).scale(2)]
    c = nondegenerate_complex(polys)
    assert isinstance(c, DegenerateWitness) and c.replay(polys)


def test_no_real_zero_inconclusive_when_roots_exist():
    polys = [parse_poly("x^2 - 2", ["x"])]
    assert isinstance(certify_no_real_zero(polys), Inconclusive)


def test_no_real_zero_sum_of_squares():
    polys = [parse_poly("x^2 + 1", ["x", "y"]), parse_poly("y - x", ["x", "y"])]
    c = certify_no_real_zero(polys)
    assert isinstance(c, NoRealZero) and c.replay(polys)


def test_no_real_zero_rejects_floats():
    with pytest.raises(ValueError):
        certify_no_real_zero([MultiPoly(1, {(2,): 1.5, (0,): 1.0})])


def test_zero_map_is_inconclusive():
    assert isinstance(certify_nondegenerate([parse_map("x*x - x*x", quaternions())]), Inconclusive)


def test_witness_to_dict_is_jsonable():
    import json
    cert = certify_nondegenerate([fx.mat2_map()])
    json.dumps(cert.to_dict())
    sys = scalarize_full([fx.quat_map()])
    json.dumps(certify_no_real_zero(sys).to_dict(sys.atlas.names))


def test_linear_form_determinant_decides(rng):
    H = quaternions()
    for _ in range(20):
        a = [Fraction(int(v)) for v in rng.integers(-3, 4, 4)]
        b = [Fraction(int(v)) for v in rng.integers(-3, 4, 4)]
        if not any(a) or not any(b):
            continue
        form = parse_map("c*x + x*d".replace("c", "(" + _q(a) + ")").replace("d", "(" + _q(b) + ")"), H)
        c = {k: v for k, v in zip(fx.PARAM_VARS, a + b)}
        cert = certify_nondegenerate([form])
        if fx.param_degenerate(c):
            assert isinstance(cert, DegenerateWitness)
        else:
            assert isinstance(cert, NondegenerateReal)


def _q(v):
    return " + ".join(f"({c})*{lab}" for c, lab in zip(v, ["1", "i", "j", "k"]))
