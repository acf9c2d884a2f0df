from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latpos.catalog import numeric_scheme
from latpos.errors import BadParameters, HypothesisNotMet, OutOfWindow, SymbolicTermsUnsupported
from latpos.matcore import MinorSpec
from latpos.pathmodel import build_matrix_rec1
from latpos.polyalg import var
from latpos.riordan import ConstantScheme
from latpos.seqprops import (
    L_operator,
    PolySequence,
    check_prop_1_9,
    count_negative_roots,
    extract,
    is_polya_frequency_finite,
    is_r_log_concave,
    log_concavity_depth,
    pf_via_real_roots,
    sequence_report,
    toeplitz_pf,
)


def seq(*xs, complete=True):
    return PolySequence(xs, complete=complete)


def plain_L(a):
    # L on an infinite sequence given by a function, evaluated at 0..m-1
    return lambda j: a(j) ** 2 - (a(j - 1) * a(j + 1) if j >= 1 else 0)


def test_extract_examples():
    pascal = build_matrix_rec1(numeric_scheme("pascal_triangle"), 6, 6)
    row = extract(pascal, "row", 4, n=3)
    assert row.ints() == [1, 3, 3, 1] and row.complete
    assert extract(pascal, "diagonal", 3, n=1, k=0, delta=1, sigma=2).ints() == [1, 1, 0]
    d = build_matrix_rec1(numeric_scheme("delannoy_triangle"), 8, 4)
    col = extract(d, "column", 5, k=1)
    assert col.ints() == [0, 1, 3, 5, 7] and not col.complete
    with pytest.raises(OutOfWindow):
        extract(pascal, "row", 8, n=3)
    with pytest.raises(BadParameters):
        extract(pascal, "diagonal", 2, n=1, k=0, delta=0, sigma=2)


def test_L_operator_examples():
    assert L_operator(seq(1, 3, 3, 1)).ints() == [1, 6, 6, 1]
    assert L_operator(seq(1)).ints() == [1]
    assert L_operator(seq(0, 0, 0)).ints() == [0, 0, 0]
    # a prefix loses its last term: that entry would need the unknown next one
    assert L_operator(seq(1, 2, 3, 4, complete=False)).ints() == [1, 1, 1]


def test_log_concavity_examples():
    assert is_r_log_concave(seq(1, 3, 3, 1), 3) == (True, None)
    assert is_r_log_concave(seq(1, 1, 2), 1) == (False, 1)
    assert is_r_log_concave(seq(7), 10) == (True, None)
    with pytest.raises(SymbolicTermsUnsupported):
        is_r_log_concave(PolySequence([var("x"), 1]), 1)


def test_pf_examples():
    assert is_polya_frequency_finite(seq(1, 2, 1), 4, 3).passed
    rep = is_polya_frequency_finite(seq(1, 0, 1), 3, 2)
    assert not rep.passed and rep.minor_value.as_int() == -1
    rep = is_polya_frequency_finite(seq(1, 1, 1), 4, 3)
    assert not rep.passed and rep.witness.order == 3 and rep.minor_value.as_int() == -1
    with pytest.raises(OutOfWindow):
        is_polya_frequency_finite(seq(1, 2, complete=False), 4, 2)


def test_sturm_examples():
    assert pf_via_real_roots(seq(1, 2, 1))
    assert not pf_via_real_roots(seq(1, 1, 1))
    assert pf_via_real_roots(seq(0, 1))
    assert pf_via_real_roots(seq(0, 0, 3, 0))
    assert not pf_via_real_roots(seq(1, -3, 2))  # roots 1/2 and 1 are positive
    assert count_negative_roots([6, 5, 1]) == (2, 2)
    assert count_negative_roots([1, 2, 1]) == (1, 1)
    with pytest.raises(BadParameters):
        pf_via_real_roots(seq(0, 0))


def test_low_order_minors_miss_some_non_real_rooted_sequences():
    # 8 + 5z + z^2 has complex roots, yet every minor of order <= 4 is nonnegative
    s = seq(8, 5, 1)
    assert not pf_via_real_roots(s)
    assert is_polya_frequency_finite(s, 5, 4).passed
    rep = toeplitz_pf(s)
    assert not rep.passed
    assert rep.witness == MinorSpec((1, 2, 3, 4, 5, 6), (0, 1, 2, 3, 4, 5))
    assert rep.minor_value.as_int() == -287


def test_toeplitz_pf_negative_term_and_prefix():
    rep = toeplitz_pf(seq(1, -1))
    assert not rep.passed and rep.witness == MinorSpec((1,), (0,))
    with pytest.raises(BadParameters):
        toeplitz_pf(seq(1, 2, complete=False))


def brute_real_rooted(coeffs):
    # degree <= 2 after stripping zeros: nonnegative coefficients and discriminant >= 0
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    while c and c[0] == 0:
        c.pop(0)
    if len(c) <= 2:
        return all(x >= 0 for x in c)
    a0, a1, a2 = c
    return min(c) >= 0 and a1 * a1 - 4 * a0 * a2 >= 0


def test_quadratics_all_routes_agree():
    for a0, a1, a2 in product(range(0, 7), repeat=3):
        if a0 == a1 == a2 == 0:
            continue
        s = seq(a0, a1, a2)
        expect = brute_real_rooted((a0, a1, a2))
        assert pf_via_real_roots(s) == expect, (a0, a1, a2)
        assert toeplitz_pf(s).passed == expect, (a0, a1, a2)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4))
def test_products_of_linear_factors_are_pf(roots):
    coeffs = [1]
    for r in roots:
        coeffs = [x + r * y for x, y in zip(coeffs + [0], [0] + coeffs)]
    s = PolySequence(coeffs)
    assert pf_via_real_roots(s)
    assert toeplitz_pf(s).passed
    assert is_r_log_concave(s, 5)[0]


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 9), min_size=1, max_size=6).filter(any))
def test_pf_implies_log_concave(xs):
    s = PolySequence(xs)
    if toeplitz_pf(s).passed:
        assert is_r_log_concave(s, 1)[0]
        assert pf_via_real_roots(s)
    else:
        assert not pf_via_real_roots(s)


def test_pf_columns_need_not_be_infinitely_log_concave():
    # column 2 of the Delannoy square: 2n^2 + 2n + 1, generating function (1+z)^2/(1-z)^3
    tri = build_matrix_rec1(numeric_scheme("delannoy_square"), 30, 4)
    col = extract(tri, "column", 31, k=2)
    assert col.ints()[:6] == [1, 5, 13, 25, 41, 61]
    assert is_polya_frequency_finite(col, 12, 4).passed
    assert is_r_log_concave(col, 3) == (True, None)
    assert is_r_log_concave(col, 4) == (False, 4)
    assert log_concavity_depth(col, 10) == 3

    a = lambda n: 2 * n * n + 2 * n + 1 if n >= 0 else 0  # noqa: E731
    f = a
    for _ in range(4):
        f = plain_L(f)
    assert f(3) == -198076006400
    assert L_operator(L_operator(L_operator(L_operator(col)))).ints()[3] == -198076006400


def test_sequence_report_json():
    rep = sequence_report(seq(1, 3, 3, 1), 6, 4, r=5)
    assert rep.to_json() == {"sequence": ["1", "3", "3", "1"], "origin": "", "pf": True,
                             "log_concavity_depth": 5, "real_rooted": True}


def test_stirling_type_rows_are_pf():
    for name in ("stirling1", "legendre_stirling1", "jacobi_stirling1"):
        tri = build_matrix_rec1(numeric_scheme(name), 8, 8)
        for n in range(9):
            row = extract(tri, "row", 9, n=n)
            assert row.complete
            if any(row.ints()):
                assert toeplitz_pf(row).passed, (name, n)
                assert pf_via_real_roots(row), (name, n)


def test_constant_scheme_report():
    assert check_prop_1_9(ConstantScheme(1, 1, (1, 1), 1)).passed
    assert check_prop_1_9(ConstantScheme(1, 1, (1, 3), 2)).passed
    with pytest.raises(HypothesisNotMet):
        check_prop_1_9(ConstantScheme(1, 2, (1, 0, 1), 1))
