import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latpos.catalog import catalog_scheme, numeric_scheme
from latpos.errors import BadParameters, BadWeight, CapExceeded
from latpos.pathmodel import (
    Const,
    Indexed,
    PolyInN,
    Table,
    WeightScheme,
    build_matrix_rec1,
    build_matrix_rec2,
    build_transpose_rec,
    build_truncation,
    enumerate_paths,
    iter_window,
    matrix_entry_oracle,
    scheme_from_json,
)
from latpos.polyalg import ONE, parse, var

PASCAL = WeightScheme(1, 0, [1], 1)
DELANNOY_SQ = WeightScheme(0, 1, [1, 1], 1)
DELANNOY_TRI = WeightScheme(1, 1, [1, 1], 1)
BRENTI0 = WeightScheme(0, 1, [Indexed("z"), Indexed("y")], Indexed("x"))


def test_enumerate_paths_examples():
    paths = enumerate_paths(PASCAL, 0, 0)
    assert len(paths) == 1 and paths[0][1] == ONE and paths[0][0].steps == ()
    paths = enumerate_paths(DELANNOY_SQ, 1, 1)
    assert len(paths) == 3 and all(w == ONE for _, w in paths)
    assert len(enumerate_paths(PASCAL, 2, 4)) == 6


def test_paths_end_where_requested():
    for path, _ in enumerate_paths(DELANNOY_TRI, 2, 5):
        assert path.endpoint() == (2, 5)


def test_oracle_examples():
    assert matrix_entry_oracle(BRENTI0, 0, 0) == ONE
    assert matrix_entry_oracle(DELANNOY_SQ, 2, 2).as_int() == 13
    assert matrix_entry_oracle(BRENTI0, 1, 1) == parse("z1*x1 + y1 + x1*z0")


def test_rec1_examples():
    assert build_matrix_rec1(PASCAL, 5, 5)[4, 2].as_int() == 6
    assert build_matrix_rec1(DELANNOY_TRI, 5, 5)[4, 2].as_int() == 13
    for s in (PASCAL, DELANNOY_TRI, WeightScheme(2, 1, [Indexed("u"), Indexed("v")], Indexed("x"))):
        assert build_matrix_rec1(s, 3, 3)[0, 1].is_zero()


def test_rec2_examples():
    s = WeightScheme(1, 1, [Indexed("a"), Indexed("c")], Indexed("b"))
    assert build_matrix_rec2(s, 4, 2)[3, 0] == parse("b1*b2*b3")
    assert build_matrix_rec2(DELANNOY_TRI, 5, 5)[4, 2].as_int() == 13
    assert build_matrix_rec2(BRENTI0, 2, 2)[1, 1] == parse("z1*x1 + y1 + x1*z0")


def test_transpose_examples():
    s2, _ = catalog_scheme("stirling2")
    T = build_transpose_rec(s2, 6, 6)
    assert T[4, 2].as_int() == 7
    assert T[0, 0] == ONE


@pytest.mark.parametrize("scheme", [
    PASCAL, DELANNOY_SQ, DELANNOY_TRI, BRENTI0,
    WeightScheme(2, 2, [Indexed("p"), Indexed("q"), Indexed("r")], Indexed("x")),
    WeightScheme(1, 3, [PolyInN(parse("n+1")), 0, Indexed("w"), 2], PolyInN(parse("2*n"))),
], ids=["pascal", "delannoy_sq", "delannoy_tri", "brenti0", "t2l2", "t1l3"])
def test_engines_agree_with_oracle(scheme):
    N = 7
    r1 = build_matrix_rec1(scheme, N, N)
    r2 = build_matrix_rec2(scheme, N, N)
    for n, k in iter_window(N, N):
        if n + k <= N:
            o = matrix_entry_oracle(scheme, n, k)
            assert r1[n, k] == o, (n, k)
            assert r2[n, k] == o, (n, k)


def test_transpose_relation():
    # swapping the roles of n and k turns the row recurrence into the k-recursive one
    for scheme in (DELANNOY_TRI, BRENTI0, numeric_scheme("stirling1")):
        swapped = WeightScheme(scheme.t, scheme.ell, scheme.a_rules, scheme.b_rule, orientation="T")
        M = build_matrix_rec1(scheme, 6, 6).entries
        T = build_transpose_rec(swapped, 6, 6).entries
        assert T == M.transpose()


def test_transpose_engine_matches_path_oracle():
    s2, _ = catalog_scheme("stirling2")
    T = build_truncation(s2, 6, 6)
    for n, k in iter_window(6, 6):
        assert T[n, k] == matrix_entry_oracle(s2, k, n)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2),
       st.lists(st.integers(0, 3), min_size=3, max_size=3), st.integers(0, 3), st.integers(0, 2))
def test_random_numeric_schemes_agree(t, ell, a_vals, b0, b1):
    n = var("n")
    scheme = WeightScheme(t, ell, [Const(v) for v in a_vals[: ell + 1]], PolyInN(b1 * n + b0))
    N = 6
    r1 = build_matrix_rec1(scheme, N, N)
    r2 = build_matrix_rec2(scheme, N, N)
    for i, j in iter_window(N, N):
        if i + j <= N:
            o = matrix_entry_oracle(scheme, i, j)
            assert r1[i, j] == o and r2[i, j] == o


def test_negative_weight_rejected():
    bad = WeightScheme(1, 0, [PolyInN(parse("n - 2"))], 1)
    with pytest.raises(BadWeight) as info:
        build_matrix_rec1(bad, 4, 4)
    # a_1 = -1 is the first weight the recurrence touches
    assert info.value.witness == "-1"
    with pytest.raises(BadWeight):
        WeightScheme(0, 0, [1], parse("x - y")).validate(2)


def test_bad_parameters():
    with pytest.raises(BadParameters):
        WeightScheme(-1, 0, [1], 1)
    with pytest.raises(BadParameters):
        WeightScheme(1, 1, [1], 1)
    with pytest.raises(BadParameters):
        build_matrix_rec1(PASCAL, -1, 2)
    with pytest.raises(BadParameters):
        Table((1, 2), start=1)(5)


def test_path_cap():
    with pytest.raises(CapExceeded):
        matrix_entry_oracle(DELANNOY_SQ, 8, 8, cap=100)


def test_scheme_json_forms():
    doc = {"t": 1, "ell": 1, "vars": ["h", "e"],
           "a": {"kind": "constant", "values": ["1", "h"]},
           "b": {"kind": "constant", "value": "e", "overrides": {"1": "1"}}}
    s = scheme_from_json(doc)
    like, _ = catalog_scheme("delannoy_like")
    assert build_matrix_rec1(s, 6, 6).entries == build_matrix_rec1(like, 6, 6).entries

    doc = {"t": 0, "ell": 1, "a": [{"kind": "indexed", "name": "z"}, {"kind": "indexed", "name": "y"}],
           "b": {"kind": "indexed", "name": "x"}}
    assert build_matrix_rec1(scheme_from_json(doc), 3, 3).entries == build_matrix_rec1(BRENTI0, 3, 3).entries

    doc = {"t": 1, "ell": 0, "a": {"kind": "table", "values": ["1"] * 8},
           "b": {"kind": "poly_in_n", "expr": "n - 1"}}
    assert build_matrix_rec1(scheme_from_json(doc), 4, 4)[4, 2].as_int() == 11


def test_scheme_json_roundtrip():
    s = WeightScheme(1, 1, [Indexed("u"), PolyInN(parse("n^2 + c"))], Table((1, 2, 3), start=1), name="demo")
    back = scheme_from_json(json.loads(json.dumps(s.to_json())))
    assert back.to_json() == s.to_json()
    assert build_matrix_rec1(back, 3, 3).entries == build_matrix_rec1(s, 3, 3).entries


def test_scheme_json_errors():
    with pytest.raises(BadParameters):
        scheme_from_json({"t": 1, "ell": 0, "a": {"kind": "constant", "value": "1"}})
    with pytest.raises(BadParameters):
        scheme_from_json({"t": 1, "ell": 0, "a": {"kind": "bogus"}, "b": {"kind": "constant", "value": "1"}})
    with pytest.raises(BadParameters):
        scheme_from_json({"t": 1, "ell": 0, "vars": ["x"], "a": {"kind": "constant", "value": "y"},
                          "b": {"kind": "constant", "value": "1"}})


def test_zero_b_leaves_only_the_diagonal():
    s = WeightScheme(1, 0, [Indexed("a")], 0)
    M = build_matrix_rec1(s, 4, 4)
    diag = ONE
    for n, k in iter_window(4, 4):
        if n != k:
            assert M[n, k].is_zero()
    for n in range(1, 5):
        diag = diag * var(f"a{n}")
        assert M[n, n] == diag
