from itertools import permutations

import pytest

from latpos.catalog import CATALOG, catalog_scheme, dw_closed_form, jacobi_stirling2, numeric_scheme
from latpos.errors import BadParameters, UnknownName
from latpos.pathmodel import build_matrix_rec1, build_transpose_rec, build_truncation, matrix_entry_oracle
from latpos.polyalg import ONE, ZERO, parse, var

N = 8


def literal(rule, init, n_max=N, k_max=N):
    """Fill a table from a recurrence written out term by term; out-of-range reads are 0."""
    T = {}

    def get(n, k):
        if n < 0 or k < 0:
            return ZERO
        return T.get((n, k), ZERO)

    for n in range(n_max + 1):
        for k in range(k_max + 1):
            T[n, k] = init(n, k) if init(n, k) is not None else rule(get, n, k)
    return T


def m_origin(n, k):
    # M-orientation tables: only M[0][0] = 1 is seeded, every other entry comes from the rule
    return ONE if n == k == 0 else None


RECURRENCES = {
    "pascal_triangle": lambda g, n, k: g(n - 1, k - 1) + g(n - 1, k),
    "pascal_square": lambda g, n, k: g(n, k - 1) + g(n - 1, k),
    "delannoy_square": lambda g, n, k: g(n, k - 1) + g(n - 1, k - 1) + g(n - 1, k),
    "delannoy_triangle": lambda g, n, k: g(n - 2, k - 1) + g(n - 1, k - 1) + g(n - 1, k),
    "stirling1": lambda g, n, k: g(n - 1, k - 1) + (n - 1) * g(n - 1, k),
    "legendre_stirling1": lambda g, n, k: g(n - 1, k - 1) + n * (n - 1) * g(n - 1, k),
}


@pytest.mark.parametrize("name", sorted(RECURRENCES))
def test_numeric_entries_match_literal_recurrences(name):
    T = literal(RECURRENCES[name], m_origin)
    M = build_matrix_rec1(numeric_scheme(name), N, N)
    for n in range(N + 1):
        for k in range(N + 1):
            assert M[n, k] == T[n, k], (name, n, k)


def test_symbolic_entries_match_literal_recurrences():
    e, h, a, b, c, z = (var(s) for s in "ehabcz")

    def like(g, n, k):
        return g(n - 1, k - 1) + h * g(n - 2, k - 1) + (ONE if n == 1 else e) * g(n - 1, k)

    def dw(g, n, k):
        return a * g(n - 1, k - 1) + c * g(n - 2, k - 1) + b * g(n - 1, k)

    def jc(g, n, k):
        return g(n - 1, k - 1) + (n - 1) * (n - 1 + z) * g(n - 1, k)

    for name, rule in (("delannoy_like", like), ("generalized_delannoy", dw), ("jacobi_stirling1", jc)):
        T = literal(rule, m_origin, 7, 7)
        M = build_matrix_rec1(catalog_scheme(name)[0], 7, 7)
        for n in range(8):
            for k in range(8):
                assert M[n, k] == T[n, k], (name, n, k)


@pytest.mark.parametrize("t", [0, 1, 2])
def test_brenti_literal(t):
    xs = lambda n: var(f"x{n}")  # noqa: E731
    ys = lambda n: var(f"y{n}")  # noqa: E731
    zs = lambda n: var(f"z{n}")  # noqa: E731

    def rule(g, n, k):
        return zs(n) * g(n - t, k - 1) + ys(n) * g(n - 1 - t, k - 1) + xs(n) * g(n - 1, k)

    T = literal(rule, m_origin, 5, 5)
    M = build_matrix_rec1(catalog_scheme("brenti", {"t": t})[0], 5, 5)
    for n in range(6):
        for k in range(6):
            assert M[n, k] == T[n, k], (t, n, k)


def test_transpose_entries_match_literal_recurrences():
    S = literal(lambda g, n, k: g(n - 1, k - 1) + k * g(n - 1, k), m_origin)
    T = build_transpose_rec(numeric_scheme("stirling2"), N, N)
    for n in range(N + 1):
        for k in range(N + 1):
            assert T[n, k] == S[n, k]
    a1, a2, a3, b1, b2, b3 = (var(s) for s in ("a1", "a2", "a3", "b1", "b2", "b3"))

    def gjs(g, n, k):
        return (b1 * k * k + b2 * k + b3) * g(n - 1, k - 1) + (a1 * k * k + a2 * k + a3) * g(n - 1, k)

    J = literal(gjs, m_origin, 5, 5)
    T = build_truncation(catalog_scheme("gen_jacobi_stirling2")[0], 5, 5)
    for n in range(6):
        for k in range(6):
            assert T[n, k] == J[n, k]


def cycles(perm):
    seen, count = set(), 0
    for i in range(len(perm)):
        if i not in seen:
            count += 1
            j = i
            while j not in seen:
                seen.add(j)
                j = perm[j]
    return count


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def test_brute_force_counts():
    c42 = sum(1 for p in permutations(range(4)) if cycles(p) == 2)
    s42 = sum(1 for p in set_partitions(list(range(4))) if len(p) == 2)
    assert (c42, s42) == (11, 7)
    assert build_matrix_rec1(numeric_scheme("stirling1"), 4, 4)[4, 2].as_int() == c42
    assert build_truncation(numeric_scheme("stirling2"), 4, 4)[4, 2].as_int() == s42
    for n in range(1, 6):
        for k in range(n + 1):
            cnk = sum(1 for p in permutations(range(n)) if cycles(p) == k)
            snk = sum(1 for p in set_partitions(list(range(n))) if len(p) == k)
            assert build_matrix_rec1(numeric_scheme("stirling1"), n, n)[n, k].as_int() == cnk
            assert build_truncation(numeric_scheme("stirling2"), n, n)[n, k].as_int() == snk


def test_catalog_examples():
    M = build_matrix_rec1(numeric_scheme("legendre_stirling1"), 3, 3)
    # x(x+2)(x+6) = 12x + 8x^2 + x^3
    assert [M[3, k].as_int() for k in range(4)] == [0, 12, 8, 1]
    J = build_matrix_rec1(catalog_scheme("jacobi_stirling1")[0], 3, 3)
    assert J[3, 2] == parse("5 + 3*z")


def test_identifications():
    for (e, h), target in (((1, 0), "pascal_triangle"), ((1, 1), "delannoy_triangle")):
        like = build_matrix_rec1(catalog_scheme("delannoy_like", {"e": e, "h": h})[0], 10, 10)
        assert like.entries == build_matrix_rec1(numeric_scheme(target), 10, 10).entries


def test_generalized_delannoy_closed_form():
    a, b, c = var("a"), var("b"), var("c")
    M = build_matrix_rec1(catalog_scheme("generalized_delannoy")[0], 10, 10)
    for n in range(11):
        for k in range(11):
            if n + k <= 10:
                assert M[n, k] == dw_closed_form(a, b, c, n - k, k)


@pytest.mark.parametrize("z", [0, 1, 2])
def test_jacobi_stirling_orthogonality(z):
    js = build_transpose_rec(jacobi_stirling2(z), 5, 5).entries
    jc = build_matrix_rec1(catalog_scheme("jacobi_stirling1", {"z": z})[0], 5, 5).entries
    for i in range(6):
        for j in range(6):
            total = sum(((-1) ** (k + j) * js[i, k].as_int() * jc[k, j].as_int() for k in range(6)))
            assert total == (1 if i == j else 0)


def test_oracle_agrees_on_every_entry():
    for name, entry in CATALOG.items():
        s = numeric_scheme(name)
        T = build_truncation(s, 6, 6)
        for n in range(7):
            for k in range(7 - n):
                expect = matrix_entry_oracle(s, k, n) if entry.orientation == "T" else matrix_entry_oracle(s, n, k)
                assert T[n, k] == expect, (name, n, k)


def test_errors():
    with pytest.raises(UnknownName):
        catalog_scheme("fibonacci")
    with pytest.raises(BadParameters):
        catalog_scheme("pascal_triangle", {"x": 1})
    with pytest.raises(BadParameters):
        catalog_scheme("brenti", {"t": -1})
    with pytest.raises(BadParameters):
        catalog_scheme("delannoy_like", {"e": "e +"})


def test_listing_json():
    rows = [e.to_json() for e in CATALOG.values()]
    assert len(rows) == 12
    assert {"name": "stirling2", "orientation": "T", "params": [],
            "description": "Stirling numbers of the second kind S(n,k)"} in rows
