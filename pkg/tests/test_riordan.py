import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latpos.catalog import dw_closed_form
from latpos.errors import BadParameters, IndexBeyondTruncation, MissingFactorForm
from latpos.pathmodel import build_matrix_rec1
from latpos.polyalg import ONE, ZERO, MultiPoly, PowerSeries, var
from latpos.riordan import (
    ConstantScheme,
    RiordanSpec,
    bivariate_gf_check,
    bivariate_series,
    column_gf,
    explicit_entry,
    riordan_entry,
    riordan_from_scheme,
    row_sum_closed_form,
    row_sum_series,
)

a, b, c, e, h = (var(s) for s in "abceh")
N = 12


def geo(gamma, n=N):
    return PowerSeries([ONE, -MultiPoly.coerce(gamma)], n).invert()


def test_pascal_and_delannoy_specs():
    pascal = RiordanSpec(geo(1), PowerSeries([0, 1], N) * geo(1))
    assert riordan_entry(pascal, 4, 2).as_int() == 6
    assert pascal.kind == "proper"
    delannoy = RiordanSpec(geo(1), PowerSeries([0, 1, 1], N) * geo(1))
    assert riordan_entry(delannoy, 4, 2).as_int() == 13
    assert riordan_entry(delannoy, 0, 0) == ONE
    with pytest.raises(IndexBeyondTruncation):
        riordan_entry(delannoy, N + 1, 0)


def test_spec_validation():
    with pytest.raises(BadParameters):
        RiordanSpec(PowerSeries([0, 1], 4), PowerSeries([0, 1], 4))
    with pytest.raises(BadParameters):
        RiordanSpec(geo(1, 4), PowerSeries([0, 0, 1], 4))


def test_from_scheme_examples():
    dw = ConstantScheme.from_factors(1, [c], [a], b)
    spec = riordan_from_scheme(dw, 6)
    assert spec.g == geo(b, 6)
    assert spec.f == PowerSeries([ZERO, a, c], 6) * geo(b, 6)

    sq = riordan_from_scheme(ConstantScheme(0, 0, (1,), 1), 6)
    assert sq.kind == "improper"
    assert sq.g == geo(1, 6) and sq.f == geo(1, 6)

    like = riordan_from_scheme(ConstantScheme.from_factors(1, [h], [1], e), 6)
    assert like.f == PowerSeries([ZERO, ONE, h], 6) * geo(e, 6)


def test_explicit_entry_examples():
    cs = ConstantScheme.from_factors(1, [1], [1], 1)
    assert explicit_entry(cs, 4, 2).as_int() == 13
    assert explicit_entry(cs, 3, 4).is_zero()
    with pytest.raises(MissingFactorForm):
        explicit_entry(ConstantScheme(1, 1, (1, 1), 1), 4, 2)


def test_factor_form_must_multiply_out():
    with pytest.raises(BadParameters):
        ConstantScheme(1, 1, (1, 2), 1, (1,), (1,))


@pytest.mark.parametrize("cs", [
    ConstantScheme.from_factors(1, [c], [a], b),
    ConstantScheme.from_factors(1, [var("al1"), var("al2")], [var("be1"), var("be2")], var("g")),
    ConstantScheme.from_factors(2, [1, 2, 1], [2, 1, 3], 2),
    ConstantScheme.from_factors(0, [1], [1], 1),
], ids=["dw", "ell2_symbolic", "t2_ell3", "delannoy_square"])
def test_route_agreement(cs):
    M = build_matrix_rec1(cs.weight_scheme(), 10, 10).entries
    for n in range(11):
        for k in range(11):
            assert explicit_entry(cs, n, k) == M[n, k], (n, k)
            assert column_gf(cs, k, 10).coeff(n) == M[n, k], (n, k)
    if cs.t >= 2:
        # f starts at z^t, so the pair is neither proper nor improper
        with pytest.raises(BadParameters):
            riordan_from_scheme(cs, 10)
        return
    spec = riordan_from_scheme(cs, 10)
    for n in range(11):
        for k in range(11):
            assert riordan_entry(spec, n, k) == M[n, k], (n, k)


def test_bivariate_examples():
    assert bivariate_gf_check(ConstantScheme(1, 0, (1,), 1), 6, 6)
    assert bivariate_gf_check(ConstantScheme(1, 1, (1, 1), 1), 8, 4)
    assert bivariate_gf_check(ConstantScheme(1, 1, (a, c), b), 10, 6)
    H = bivariate_series(ConstantScheme(1, 0, (a,), 0), 5, 5)
    q = var("q")
    for n in range(6):
        assert H.coeff(n) == (a * q) ** n


def test_reserved_indeterminate():
    with pytest.raises(BadParameters):
        bivariate_gf_check(ConstantScheme(1, 0, (var("q"),), 1), 3, 3)


def test_column_gf_examples():
    cs = ConstantScheme(1, 0, (1,), 1)
    assert column_gf(cs, 0, 6) == geo(1, 6)
    assert column_gf(cs, 2, 6).coeff(4).as_int() == 6
    assert column_gf(ConstantScheme(1, 1, (a, c), b), 0, 5) == geo(b, 5)


def test_dw_row_sums_are_phi():
    cs = ConstantScheme(1, 1, (a, c), b)
    phi = PowerSeries([ONE, -(a + b), -c], 10).invert()
    assert row_sum_series(cs, 10) == phi
    assert row_sum_closed_form(cs, 10) == phi
    with pytest.raises(BadParameters):
        row_sum_series(ConstantScheme(0, 0, (1,), 1), 4)


def test_dw_closed_form():
    M = build_matrix_rec1(ConstantScheme(1, 1, (a, c), b).weight_scheme(), 10, 10).entries
    for n in range(11):
        for k in range(11 - n):
            assert M[n, k] == dw_closed_form(a, b, c, n - k, k), (n, k)


def test_spec_json():
    spec = riordan_from_scheme(ConstantScheme(1, 0, (1,), 1), 3)
    assert spec.to_json() == {"g": ["1", "1", "1", "1"], "f": ["0", "1", "1", "1"], "N": 3, "kind": "proper"}


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2), st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), min_size=1, max_size=3),
       st.integers(0, 3))
def test_random_constant_schemes_agree(t, factors, gamma):
    alphas, betas = [f[0] for f in factors], [f[1] for f in factors]
    cs = ConstantScheme.from_factors(t, alphas, betas, gamma)
    M = build_matrix_rec1(cs.weight_scheme(), 8, 6).entries
    for n in range(9):
        for k in range(7):
            assert explicit_entry(cs, n, k) == M[n, k]
    assert bivariate_gf_check(cs, 8, 6)
