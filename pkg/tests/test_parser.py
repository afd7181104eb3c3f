import pytest

from algzeros import fixtures as fx
from algzeros.algebra import matrix_algebra, octonions, quaternions
from algzeros.parser import ParseError, parse_element, parse_map, print_map, MapSource
from algzeros.polymap import Const, Prod, Var
from conftest import random_map


def test_example_map_structure():
    H = quaternions()
    p = parse_map(MapSource(fx.QUAT_MAP, H, 1))
    c = fx.quat_coefficients()
    x = Var(0)
    words = [w for _, w in p.terms[:3]]
    assert words == [
        Prod(Const(c["c0"]), Prod(x, x)),
        Prod(Prod(x, Const(c["c1"])), x),
        Prod(Prod(Const(c["c2"]), x), Prod(Const(c["c3"]), x)),
    ]
    assert [cf for cf, _ in p.terms[:3]] == [1, 1, 1]
    cf, w = p.terms[3]
    assert isinstance(w, Const) and w.value.scale(cf) == c["c4"]


def test_cancelling_terms_are_kept():
    p = parse_map("x*x - x*x", quaternions())
    assert [c for c, _ in p.terms] == [1, -1]


def test_bracketing_is_semantic():
    O = octonions()
    a, b = parse_map("(x*e1)*x", O), parse_map("x*(e1*x)", O)
    assert a.terms[0][1] != b.terms[0][1]


def test_left_associative_product():
    H = quaternions()
    p = parse_map("x*i*x", H)
    assert p.terms[0][1] == Prod(Prod(Var(0), Const(parse_element("i", H))), Var(0))


def test_print_simple():
    H = quaternions()
    assert print_map(parse_map("0", H)) == "0"
    assert print_map(parse_map("x", H)) == "x1"


def test_round_trip_example():
    p = fx.quat_map()
    assert parse_map(print_map(p), quaternions()).terms == p.terms


def _canonical(terms):
    # a scalar in front of a variable-free word may be folded into the constant
    # and separate constant terms may be merged
    out, const = [], None
    for c, w in terms:
        if isinstance(w, Const):
            v = w.value.scale(c)
            const = v if const is None else const + v
        else:
            out.append((c, w))
    if const is not None and const:
        out.append((1, Const(const)))
    return out


@pytest.mark.parametrize("name", ["H", "O", "mat2"])
def test_round_trip_random(name, rng):
    alg = {"H": quaternions(), "O": octonions(), "mat2": matrix_algebra(2)}[name]
    for _ in range(500):
        p = random_map(alg, rng, nvars=2, avoid_unit_multiple=True)
        assert _canonical(parse_map(print_map(p), alg, 2).terms) == _canonical(p.terms)


def test_rationals_and_comments():
    H = quaternions()
    p = parse_map("2/5*x  # a comment\n - 0.25*x", H)
    assert [c for c, _ in p.terms] == [pytest.approx(0.4), -0.25]
    assert parse_element("-1 - i + k", H) == H.element([-1, -1, 0, 1])


@pytest.mark.parametrize(
    "text,nvars,needle",
    [
        ("x + q", 1, "unknown symbol"),
        ("x2", 1, "exceeds"),
        ("(x + 1", 1, "unbalanced"),
        ("x + 1)", 1, "unbalanced"),
        ("x^0", 1, "exponent"),
        ("3/0*x", 1, "malformed rational"),
        ("", 1, "empty"),
        ("x $ 1", 1, "unexpected character"),
    ],
)
def test_errors_carry_position(text, nvars, needle):
    with pytest.raises(ParseError) as info:
        parse_map(text, quaternions(), nvars)
    assert needle in str(info.value)
    assert info.value.position >= 0


def test_scalar_times_anything_is_field_action():
    H = quaternions()
    p = parse_map("3*x", H)
    assert p.terms == ((3, Var(0)),)


def test_constant_sums_fold_into_one_leaf():
    H = quaternions()
    p = parse_map("(1 + i)*(j - k)*x", H)
    assert p.terms[0][1] == Prod(Const(parse_element("(1+i)*(j-k)", H)), Var(0))
