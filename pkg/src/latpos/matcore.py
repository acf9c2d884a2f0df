"""Determinants, minors, order-r total positivity and the structural factorizations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import BadParameters, NotSquare, OutOfBounds, SizeGuardExceeded
from .matrix import PolyMatrix
from .pathmodel import Const, Rule, WeightScheme, as_rule, build_matrix_rec1
from .polyalg import ONE, ZERO, MultiPoly, negative_term, render

SYMBOLIC_SIZE_GUARD = 12
NUMERIC_SIZE_GUARD = 16
DEFAULT_TP_ORDER = 4


# ---------------------------------------------------------------------------
# determinants


def _bareiss(rows: list[list[int]]) -> int:
    a = [r[:] for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ai = a[i]
            ak = a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def _laplace(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Expansion along successive rows, memoized on the set of used columns."""
    n = len(rows)
    if n == 0:
        return ONE
    # level r holds determinants of rows[0..r) over column subsets of size r
    level: dict[int, MultiPoly] = {0: ONE}
    for r in range(n):
        nxt: dict[int, MultiPoly] = {}
        row = rows[r]
        for mask, val in level.items():
            if not val:
                continue
            # columns above the new one contribute the sign
            above = 0
            for c in range(n - 1, -1, -1):
                bit = 1 << c
                if mask & bit:
                    above += 1
                    continue
                x = row[c]
                if x:
                    term = val * x
                    key = mask | bit
                    if above & 1:
                        term = -term
                    nxt[key] = nxt.get(key, ZERO) + term
        level = nxt
    return level.get((1 << n) - 1, ZERO)


def _det_rows(rows: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    if all(x.is_constant() for r in rows for x in r):
        return MultiPoly.const(_bareiss([[x.constant_term() for x in r] for r in rows]))
    return _laplace(rows)


def det(m: PolyMatrix) -> MultiPoly:
    if m.rows != m.cols:
        raise NotSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    return _det_rows([m.row(i) for i in range(m.rows)])


@dataclass(frozen=True)
class MinorSpec:
    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        object.__setattr__(self, "cols", tuple(self.cols))
        if len(self.rows) != len(self.cols) or not self.rows:
            raise BadParameters("minor needs equal, nonzero numbers of rows and columns")
        for idx in (self.rows, self.cols):
            if any(b <= a for a, b in zip(idx, idx[1:])):
                raise BadParameters("minor indices must be strictly increasing")

    @property
    def order(self) -> int:
        return len(self.rows)

    def to_json(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}


def minor(m: PolyMatrix, spec: MinorSpec) -> MultiPoly:
    if spec.rows[-1] >= m.rows or spec.cols[-1] >= m.cols or spec.rows[0] < 0 or spec.cols[0] < 0:
        raise OutOfBounds(f"minor {spec.to_json()} outside {m.rows}x{m.cols} matrix")
    return det(m.submatrix(spec.rows, spec.cols))


# ---------------------------------------------------------------------------
# total positivity of order r


@dataclass(frozen=True)
class TPReport:
    order_checked: int
    passed: bool
    witness: MinorSpec | None = None
    minor_value: MultiPoly | None = None
    offending_term: MultiPoly | None = None
    minors_checked: int = 0

    def to_json(self) -> dict:
        d: dict = {"order": self.order_checked, "passed": self.passed}
        if self.witness is not None:
            d["witness"] = {
                **self.witness.to_json(),
                "minor": render(self.minor_value),
                "term": render(self.offending_term),
            }
        return d


def check_size_guard(rows: int, cols: int, numeric: bool) -> None:
    g = NUMERIC_SIZE_GUARD if numeric else SYMBOLIC_SIZE_GUARD
    if rows > g or cols > g:
        raise SizeGuardExceeded(f"{rows}x{cols} exceeds the {'numeric' if numeric else 'symbolic'} TP size guard {g}")


def _size_guard(m: PolyMatrix, numeric: bool) -> None:
    check_size_guard(m.rows, m.cols, numeric)


def is_tp_order(m: PolyMatrix, r: int = DEFAULT_TP_ORDER, *, guard: bool = True) -> TPReport:
    """Check all minors of order <= r; the first failure in (order, rows, cols) order is the witness.

    Order-s minors are assembled from order-(s-1) minors by expansion along
    the last selected row, so each minor costs O(s) multiplications.
    """
    if r < 1:
        raise BadParameters("order must be >= 1")
    numeric = m.is_numeric()
    if guard:
        _size_guard(m, numeric)
    R, C = m.rows, m.cols
    top = min(r, R, C)
    if numeric:
        e = [[x.constant_term() for x in m.row(i)] for i in range(R)]
        zero, one = 0, 1

        def bad(v):
            return v < 0
    else:
        e = [list(m.row(i)) for i in range(R)]
        zero, one = ZERO, ONE

        def bad(v):
            return negative_term(v) is not None

    checked = 0
    prev: dict = {((), ()): one}
    for s in range(1, top + 1):
        cur: dict = {}
        col_sets = list(combinations(range(C), s))
        for rows in combinations(range(R), s):
            head, last = rows[:-1], rows[-1]
            erow = e[last]
            for cols in col_sets:
                v = zero
                for p, c in enumerate(cols):
                    x = erow[c]
                    if not x:
                        continue
                    sub = prev.get((head, cols[:p] + cols[p + 1:]))
                    if not sub:
                        continue
                    term = x * sub
                    v = v + term if (s - 1 - p) % 2 == 0 else v - term
                checked += 1
                if bad(v):
                    val = MultiPoly.coerce(v)
                    term = negative_term(val) if not numeric else val
                    return TPReport(s, False, MinorSpec(rows, cols), val, term, checked)
                cur[(rows, cols)] = v
        prev = cur
    return TPReport(r, True, minors_checked=checked)


# ---------------------------------------------------------------------------
# builders


def toeplitz(seq: Sequence, size: int, cols: int | None = None) -> PolyMatrix:
    if size < 1:
        raise BadParameters("size must be >= 1")
    s = [MultiPoly.coerce(x) for x in seq]
    cols = size if cols is None else cols

    def entry(i, j):
        d = i - j
        return s[d] if 0 <= d < len(s) else ZERO

    return PolyMatrix.build(size, cols, entry)


def build_A_matrix(scheme: WeightScheme, size: int) -> PolyMatrix:
    if size < 1:
        raise BadParameters("size must be >= 1")
    ell = scheme.ell
    return PolyMatrix.build(size, size, lambda i, j: scheme.a(i, i - j) if 0 <= i - j <= ell else ZERO)


def P_entry(scheme: WeightScheme, n: int, k: int) -> MultiPoly:
    ell = scheme.ell
    if k == 0:
        return scheme.b_prod(1, n)
    if n < k - 1:
        return ZERO
    if n <= k + ell - 1:
        acc = ZERO
        bp = ONE
        for m in range(n - k + 2):
            acc = acc + scheme.a(n - m, n - k - m + 1) * bp
            bp = bp * scheme.b(n - m)
        return acc
    acc = ZERO
    for m in range(ell + 1):
        acc = acc + scheme.a(k + ell - m - 1, ell - m) * scheme.b_prod(k + ell - m, n)
    return acc


def build_P_matrix(scheme: WeightScheme, size: int, cols: int | None = None) -> PolyMatrix:
    if size < 1:
        raise BadParameters("size must be >= 1")
    cols = size if cols is None else cols
    return PolyMatrix.build(size, cols, lambda n, k: P_entry(scheme, n, k))


def build_P_tilde(scheme: WeightScheme, n: int) -> PolyMatrix:
    """P with columns 1..t deleted, rows and columns 0..n."""
    t = scheme.t
    return PolyMatrix.build(n + 1, n + 1, lambda r, c: P_entry(scheme, r, c + t if c else 0))


def build_Delta(scheme: WeightScheme, rows: int, cols: int) -> PolyMatrix:
    """(1, A): a leading unit column followed by the columns of A."""
    ell = scheme.ell

    def entry(n, c):
        if c == 0:
            return ONE if n == 0 else ZERO
        i = n - c + 1
        return scheme.a(n, i) if 0 <= i <= ell else ZERO

    return PolyMatrix.build(rows, cols, entry)


def apply_E_factors(scheme: WeightScheme, X: PolyMatrix) -> PolyMatrix:
    """Left-multiply by E_{i+1,i}[b_{i+1}] for i = 0, 1, ... (rightmost factor first).

    Each factor is the row operation row_{i+1} += b_{i+1} * row_i.
    """
    rows = X.tolist()
    for i in range(X.rows - 1):
        b = scheme.b(i + 1)
        if not b:
            continue
        rows[i + 1] = [u + b * v for u, v in zip(rows[i + 1], rows[i])]
    return PolyMatrix(rows, X.cols)


def verify_connection(scheme: WeightScheme, size: int) -> bool:
    # rows 0..size-1 of both sides only involve rows 0..size-1 of Delta, so
    # the comparison is exact on the full window (columns 0..size).
    if size < 1:
        raise BadParameters("size must be >= 1")
    cols = size + 1
    lhs = build_P_matrix(scheme, size, cols)
    rhs = apply_E_factors(scheme, build_Delta(scheme, size, cols))
    return lhs == rhs


def direct_sum_one(m: PolyMatrix) -> PolyMatrix:
    return PolyMatrix.build(m.rows + 1, m.cols + 1, lambda i, j: (ONE if i == j == 0 else ZERO) if i == 0 or j == 0 else m[i - 1, j - 1])


def verify_decomposition(scheme: WeightScheme, K: int, size: int) -> bool:
    """Column decomposition of M through P.

    t = 0: M[0..N, 0..K] = P[0..N, 0..N+1] (1 + M[0..N, 0..K-1]).
    t >= 1: M_n = P~_n (1 + M_{n-1}) for every n < size, square windows.
    Both are exact on the stated windows.
    """
    if size < 1:
        raise BadParameters("size must be >= 1")
    if scheme.t == 0:
        if K < 1:
            raise BadParameters("K must be >= 1")
        N = size - 1
        M = build_matrix_rec1(scheme, N, K).entries
        P = build_P_matrix(scheme, N + 1, N + 2)
        rhs = P @ direct_sum_one(M.window(N + 1, K))
        return rhs == M
    N = size - 1
    M = build_matrix_rec1(scheme, N, N).entries
    for n in range(1, N + 1):
        lhs = M.window(n + 1, n + 1)
        rhs = build_P_tilde(scheme, n) @ direct_sum_one(M.window(n, n))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# tridiagonal factorization


class _Product(Rule):
    """Sum of products of shifted factor rules, zero below ``lo``."""

    kind = "derived"

    def __init__(self, terms, lo: int, label: str):
        self.terms = terms  # list of [(rule, shift), ...]
        self.lo = lo
        self.label = label

    def __call__(self, n: int) -> MultiPoly:
        if n < self.lo:
            return ZERO
        acc = ZERO
        for factors in self.terms:
            p = ONE
            for rule, shift in factors:
                p = p * rule(n + shift)
            acc = acc + p
        return acc

    @property
    def symbolic(self) -> bool:
        return any(r.symbolic for fs in self.terms for r, _ in fs)

    def is_constant(self) -> bool:
        return all(r.is_constant() for fs in self.terms for r, _ in fs)

    def to_json(self) -> dict:
        return {"kind": "derived", "label": self.label}


@dataclass(frozen=True)
class TridiagFactors:
    alpha: Rule
    beta: Rule
    lam: Rule
    mu: Rule

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in ("alpha", "beta", "lam", "mu")}


def tridiag_factor_params(alpha, beta, lam, mu, *, t: int = 1, b=1, name: str = "") -> WeightScheme:
    """ell = 2 scheme with a0_n = alpha_n lam_n, a1_n = alpha_n mu_n + beta_n lam_{n-1},
    a2_n = beta_n mu_{n-1}.  The factor rules are kept on ``scheme.factors``."""
    f = TridiagFactors(as_rule(alpha), as_rule(beta), as_rule(lam), as_rule(mu))
    a0 = _Product([[(f.alpha, 0), (f.lam, 0)]], 0, "alpha*lam")
    a1 = _Product([[(f.alpha, 0), (f.mu, 0)], [(f.beta, 0), (f.lam, -1)]], 1, "alpha*mu+beta*lam[-1]")
    a2 = _Product([[(f.beta, 0), (f.mu, -1)]], 2, "beta*mu[-1]")
    s = WeightScheme(t, 2, [a0, a1, a2], b, name=name)
    s.factors = f
    return s


class _Recipe(Rule):
    kind = "derived"

    def __init__(self, fn, label: str, base: tuple):
        self.fn = fn
        self.label = label
        self._base = base

    def __call__(self, n: int) -> MultiPoly:
        return MultiPoly.coerce(self.fn(n))

    @property
    def symbolic(self) -> bool:
        return any(r.symbolic for r in self._base)

    def is_constant(self) -> bool:
        return False

    def to_json(self) -> dict:
        return {"kind": "derived", "label": self.label}


def factor_recipe(which: str, a0, a2, *, t: int = 1, b=1) -> WeightScheme:
    """The four factor choices (i)-(iv) realizing prescribed a^(0), a^(2).

    In every recipe beta_1 = 0, so a^(1) is whatever the factorization forces.
    """
    a0, a2 = as_rule(a0), as_rule(a2)
    one = Const(1)
    beta_a2 = _Recipe(lambda n: ZERO if n <= 1 else a2(n), "beta=a2 (beta_1=0)", (a2,))
    beta_one = _Recipe(lambda n: ZERO if n <= 1 else ONE, "beta=1 (beta_1=0)", ())
    mu_shift = _Recipe(lambda n: a2(n + 1), "mu_n=a2_{n+1}", (a2,))
    if which == "i":
        return tridiag_factor_params(a0, beta_a2, one, one, t=t, b=b, name="recipe_i")
    if which == "ii":
        return tridiag_factor_params(one, beta_one, a0, mu_shift, t=t, b=b, name="recipe_ii")
    if which == "iii":
        return tridiag_factor_params(one, beta_a2, a0, one, t=t, b=b, name="recipe_iii")
    if which == "iv":
        return tridiag_factor_params(a0, beta_one, one, mu_shift, t=t, b=b, name="recipe_iv")
    raise BadParameters(f"unknown recipe {which!r}")


def bidiagonal_embedding(scheme: WeightScheme) -> WeightScheme:
    """An ell = 1 scheme rewritten as ell = 2 with alpha = a0, lam = 1, mu = 0, beta = a1."""
    if scheme.ell != 1:
        raise BadParameters("embedding needs ell = 1")
    return tridiag_factor_params(scheme.a_rules[0], scheme.a_rules[1], 1, 0, t=scheme.t, b=scheme.b_rule,
                                 name=f"{scheme.name or 'scheme'}_as_tridiag")


def factor_polynomial(alphas: Sequence, betas: Sequence) -> list[MultiPoly]:
    """Coefficients of prod_j (alpha_j z + beta_j), constant term first."""
    coeffs = [ONE]
    for al, be in zip(alphas, betas):
        al, be = MultiPoly.coerce(al), MultiPoly.coerce(be)
        nxt = [ZERO] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] = nxt[i] + c * be
            nxt[i + 1] = nxt[i + 1] + c * al
        coeffs = nxt
    return coeffs


def W_factor(alpha, beta, size: int) -> PolyMatrix:
    alpha, beta = MultiPoly.coerce(alpha), MultiPoly.coerce(beta)
    return PolyMatrix.build(size, size, lambda i, j: beta if i == j else (alpha if i == j + 1 else ZERO))


def verify_W_factorization(alphas: Sequence, betas: Sequence, size: int) -> bool:
    if len(alphas) != len(betas) or not alphas:
        raise BadParameters("need equally many alphas and betas, at least one")
    A = toeplitz(factor_polynomial(alphas, betas), size)
    prod = PolyMatrix.identity(size)
    for al, be in zip(alphas, betas):
        prod = prod @ W_factor(al, be, size)
    return prod == A
