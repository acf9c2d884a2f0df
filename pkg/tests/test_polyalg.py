import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latpos.errors import IndexBeyondTruncation, NonInvertibleConstantTerm
from latpos.polyalg import (
    ONE,
    ZERO,
    MultiPoly,
    PowerSeries,
    const,
    is_coeff_nonnegative,
    negative_term,
    parse,
    poly_arith,
    render,
    series_arith,
    series_coeff,
    var,
)

x, y, z = var("x"), var("y"), var("z")
x1, y1 = var("x1"), var("y1")

NAMES = ("x", "y", "z")


@st.composite
def polys(draw, max_terms=4, coeffs=st.integers(-5, 5)):
    terms = draw(st.lists(
        st.tuples(coeffs, st.dictionaries(st.sampled_from(NAMES), st.integers(0, 3), max_size=3)),
        max_size=max_terms,
    ))
    return MultiPoly.from_terms(terms)


nonneg_polys = polys(coeffs=st.integers(0, 5))


def test_arith_examples():
    assert poly_arith("add", x, -x) == ZERO
    assert poly_arith("mul", 1 + z, 1 + z) == 1 + 2 * z + z * z
    assert poly_arith("mul", x1 + y1, x1 - y1) == x1 * x1 - y1 * y1
    assert poly_arith("sub", x, x).is_zero()


def test_nonnegativity_examples():
    assert is_coeff_nonnegative(ZERO)
    assert is_coeff_nonnegative(2 * x + 3 * y)
    assert not is_coeff_nonnegative(x * x - y)
    assert negative_term(x * x - y) == -y
    assert negative_term(2 * x + 3) is None


def test_series_examples():
    geo = series_arith("invert", PowerSeries([1, -1], 6))
    assert [c.as_int() for c in geo.coeffs] == [1] * 7
    num = PowerSeries([0, 1], 4)
    prod = series_arith("mul", PowerSeries([1, -1], 4).invert(), num * PowerSeries([1, -1], 4).invert())
    assert [c.as_int() for c in prod.coeffs] == [0, 1, 2, 3, 4]
    assert [c.as_int() for c in series_arith("pow", PowerSeries([1, 1], 4), 2).coeffs] == [1, 2, 1, 0, 0]


def test_series_coeff():
    assert series_coeff(PowerSeries([1, -1], 9).invert(), 7) == ONE
    cube = PowerSeries([1, -1], 6).invert() ** 3
    assert series_coeff(PowerSeries([0, 0, 1], 6) * cube, 4) == const(6)
    with pytest.raises(IndexBeyondTruncation):
        series_coeff(PowerSeries([1, 1], 3), 4)


def test_invert_needs_unit_constant_term():
    with pytest.raises(NonInvertibleConstantTerm):
        PowerSeries([0, 1], 3).invert()
    with pytest.raises(NonInvertibleConstantTerm):
        PowerSeries([x, 1], 3).invert()


def test_symbolic_geometric_series():
    g = PowerSeries([ONE, -y], 5).invert()
    assert [render(c) for c in g.coeffs] == ["1", "y", "y^2", "y^3", "y^4", "y^5"]


def test_render_parse_examples():
    assert render(parse("x1^2 - 3*y")) == "x1^2 - 3*y"
    assert parse("x1**2") == x1 * x1
    assert parse("(1+z)^2") == 1 + 2 * z + z * z
    assert render(ZERO) == "0"
    assert render(const(-7)) == "-7"


def test_parse_rejects_unknown_names():
    with pytest.raises(ValueError):
        parse("x + w", allowed={"x"})
    with pytest.raises(ValueError):
        parse("x / 2")


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO
    assert p * ONE == p


@given(polys())
def test_render_parse_roundtrip(p):
    assert parse(render(p)) == p


@given(nonneg_polys, nonneg_polys)
def test_nonnegative_cone_closed(p, q):
    assert is_coeff_nonnegative(p + q)
    assert is_coeff_nonnegative(p * q)


@settings(max_examples=50)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), st.integers(0, 6))
def test_invert_roundtrip(tail, order):
    a = PowerSeries([1] + tail, order)
    prod = a * a.invert()
    assert prod.coeffs[0] == ONE
    assert all(c.is_zero() for c in prod.coeffs[1:])


@settings(max_examples=50)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.integers(0, 3))
def test_pow_matches_repeated_mul(coeffs, e):
    a = PowerSeries(coeffs, 5)
    expect = PowerSeries([1], 5)
    for _ in range(e):
        expect = expect * a
    assert series_arith("pow", a, e) == expect
