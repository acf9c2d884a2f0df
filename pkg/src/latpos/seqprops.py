"""Sequences cut from truncations: Polya frequency, real roots, log-concavity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import BadParameters, HypothesisNotMet, OutOfWindow, SymbolicTermsUnsupported
from .matcore import MinorSpec, TPReport, _bareiss, is_tp_order, toeplitz
from .pathmodel import TriangleTruncation, build_matrix_rec1
from .polyalg import ZERO, MultiPoly, render
from .riordan import ConstantScheme


@dataclass(frozen=True)
class PolySequence:
    """Finite list of terms.

    ``complete`` means every term beyond the list is zero.  Otherwise the
    list is a prefix of a longer sequence and derived quantities are only
    reported where the prefix determines them.
    """

    terms: tuple
    origin: str = ""
    complete: bool = True

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(MultiPoly.coerce(x) for x in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def is_numeric(self) -> bool:
        return all(x.is_constant() for x in self.terms)

    def ints(self) -> list[int]:
        if not self.is_numeric():
            raise SymbolicTermsUnsupported(f"sequence {self.origin or ''} has symbolic terms")
        return [x.constant_term() for x in self.terms]

    def to_json(self) -> list[str]:
        return [render(x) for x in self.terms]


def _row_is_complete(tri: TriangleTruncation, n: int, count: int) -> bool:
    s = tri.scheme
    if tri.orientation == "M":
        # M[n][k] = 0 once t*k > n
        return s.t >= 1 and count > n // s.t
    # T[n][k] = 0 for k > n when every slanted step moves k forward by at most t + ell >= 1 per n
    return s.b_rule.is_constant() and s.b(1).is_zero() and count > n * (s.t + s.ell)


def extract(tri: TriangleTruncation, what: str, count: int, *, n: int = 0, k: int = 0,
            delta: int = 0, sigma: int = 0) -> PolySequence:
    """Row n, column k or the diagonal (M[n + delta i][k + sigma i])_i."""
    E = tri.entries
    if count < 1:
        raise BadParameters("count must be >= 1")
    if what == "row":
        if n > tri.N or count - 1 > tri.K:
            raise OutOfWindow(f"row {n} with {count} terms exceeds the {tri.N + 1}x{tri.K + 1} window")
        return PolySequence([E[n, j] for j in range(count)], f"row {n}", _row_is_complete(tri, n, count))
    if what == "column":
        if k > tri.K or count - 1 > tri.N:
            raise OutOfWindow(f"column {k} with {count} terms exceeds the window")
        return PolySequence([E[i, k] for i in range(count)], f"column {k}", False)
    if what == "diagonal":
        if delta <= 0 or sigma < 0:
            raise BadParameters("diagonal needs delta > 0")
        if n + delta * (count - 1) > tri.N or k + sigma * (count - 1) > tri.K:
            raise OutOfWindow(f"diagonal ({n},{k},{delta},{sigma}) with {count} terms exceeds the window")
        terms = [E[n + delta * i, k + sigma * i] for i in range(count)]
        t = tri.scheme.t
        # for t >= 1 and sigma*t > delta the entries vanish once n + delta i < t (k + sigma i)
        last = n + delta * (count - 1) < t * (k + sigma * (count - 1)) and t * sigma > delta
        return PolySequence(terms, f"diagonal n={n} k={k} delta={delta} sigma={sigma}", last)
    raise BadParameters(f"unknown extraction {what!r}")


def L_operator(s: PolySequence) -> PolySequence:
    a = s.terms
    m = len(a)
    if m == 0:
        return s
    get = lambda i: a[i] if 0 <= i < m else ZERO  # noqa: E731
    length = m if s.complete else m - 1
    out = [a[0] * a[0]] + [get(j) * get(j) - get(j - 1) * get(j + 1) for j in range(1, length)]
    return PolySequence(out[:max(length, 0)], f"L({s.origin})" if s.origin else "", s.complete)


def is_r_log_concave(s: PolySequence, r: int) -> tuple[bool, int | None]:
    """(True, None) if L^1..L^r are nonnegative, else (False, first failing iteration).

    For prefixes each iteration loses one trustworthy term; once nothing is
    left, the remaining iterations are vacuous.
    """
    s.ints()
    cur = s
    for it in range(1, r + 1):
        cur = L_operator(cur)
        if any(x.constant_term() < 0 for x in cur.terms):
            return False, it
    return True, None


def log_concavity_depth(s: PolySequence, cap: int) -> int:
    s.ints()
    cur = s
    for it in range(1, cap + 1):
        cur = L_operator(cur)
        if any(x.constant_term() < 0 for x in cur.terms):
            return it - 1
    return cap


def is_polya_frequency_finite(s: PolySequence, window: int, order: int) -> TPReport:
    if not s.complete and window > len(s):
        raise OutOfWindow(f"window {window} needs {window} known terms, prefix has {len(s)}")
    return is_tp_order(toeplitz(s.terms, window), order)


# ---------------------------------------------------------------------------
# real roots via Sturm sequences


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Remainder of a by b; coefficient lists, constant term first, no trailing zeros."""
    a = a[:]
    db = len(b) - 1
    lead = b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] / lead
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] -= c * b[i]
        a.pop()
        while a and a[-1] == 0:
            a.pop()
    return a


def _primitive(p: list[Fraction]) -> list[Fraction]:
    """Scale by a positive rational so the coefficients are coprime integers."""
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [Fraction(c // g) for c in ints] if g else [Fraction(0)] * len(p)


def sturm_chain(coeffs: Sequence[int]) -> list[list[Fraction]]:
    p = [Fraction(c) for c in coeffs]
    while p and p[-1] == 0:
        p.pop()
    chain = [_primitive(p)]
    dp = [i * p[i] for i in range(1, len(p))]
    if not dp:
        return chain
    chain.append(_primitive(dp))
    while True:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            break
        chain.append(_primitive([-c for c in r]))
    return chain


def _sign_changes(signs: list[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def count_negative_roots(coeffs: Sequence[int]) -> tuple[int, int]:
    """(distinct real roots in (-inf, 0), degree of the square-free part); requires p(0) != 0."""
    chain = sturm_chain(coeffs)
    at_minus_inf = [(1 if q[-1] > 0 else -1) * (-1 if (len(q) - 1) % 2 else 1) for q in chain]
    at_zero = [(q[0] > 0) - (q[0] < 0) for q in chain]
    distinct = _sign_changes(at_minus_inf) - _sign_changes(at_zero)
    squarefree_degree = (len(chain[0]) - 1) - (len(chain[-1]) - 1)
    return distinct, squarefree_degree


def pf_via_real_roots(s: PolySequence) -> bool:
    """True iff sum s_k z^k has nonnegative coefficients and only real roots <= 0."""
    c = s.ints()
    if not any(c):
        raise BadParameters("the zero sequence has no generating polynomial")
    if any(x < 0 for x in c):
        return False
    while c[-1] == 0:
        c.pop()
    lo = 0
    while c[lo] == 0:
        lo += 1
    c = c[lo:]
    if len(c) == 1:
        return True
    distinct, sqf = count_negative_roots(c)
    return distinct == sqf


# ---------------------------------------------------------------------------


@dataclass
class SequenceReport:
    sequence: PolySequence
    pf: bool
    witness: dict | None = None
    log_concavity_depth: int | None = None
    real_rooted: bool | None = None

    def to_json(self) -> dict:
        d = {"sequence": self.sequence.to_json(), "origin": self.sequence.origin, "pf": self.pf}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.log_concavity_depth is not None:
            d["log_concavity_depth"] = self.log_concavity_depth
        if self.real_rooted is not None:
            d["real_rooted"] = self.real_rooted
        return d


def sequence_report(s: PolySequence, window: int, order: int, r: int | None = None) -> SequenceReport:
    rep = is_polya_frequency_finite(s, window, order)
    depth = log_concavity_depth(s, r) if r is not None and s.is_numeric() else None
    rr = None
    if s.is_numeric() and s.complete and any(s.ints()):
        rr = pf_via_real_roots(s)
    return SequenceReport(s, rep.passed, rep.to_json().get("witness"), depth, rr)


@dataclass
class ConstantSchemeReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def add(self, name: str, passed: bool, **extra) -> None:
        self.checks.append({"check": name, "passed": passed, **extra})

    def to_json(self) -> dict:
        return {"passed": self.passed, "checks": self.checks}


def check_prop_1_9(cs: ConstantScheme, window: int = 5, order: int = 3, r_iters: int = 3,
                   sigma_max: int = 4) -> ConstantSchemeReport:
    """Total positivity of M and PF / r-log-concavity of its columns, rows and diagonals."""
    for x in cs.a + (cs.gamma,):
        if not x.is_constant():
            raise BadParameters("numeric weights required")
    if cs.gamma.constant_term() < 0:
        raise HypothesisNotMet("gamma must be nonnegative")
    coeffs = PolySequence(cs.a, "a")
    if not any(coeffs.ints()) or not pf_via_real_roots(coeffs):
        raise HypothesisNotMet(f"sum a_i z^i = {[render(x) for x in cs.a]} does not have only real roots <= 0")
    t = cs.t
    span = window + r_iters
    N = max(span * max(t, 1) + span, span) + sigma_max * span
    K = max(span, sigma_max * span)
    tri = build_matrix_rec1(cs.weight_scheme(), N, K)
    rep = ConstantSchemeReport()

    tp = is_tp_order(tri.entries.window(window, window), order)
    rep.add("matrix_tp", tp.passed, witness=tp.to_json().get("witness"))

    for k in range(window):
        start = t * k
        col = PolySequence([tri.entries[start + i, k] for i in range(span)], f"column {k}", False)
        pf = is_polya_frequency_finite(col, window, order)
        lc, it = is_r_log_concave(col, r_iters)
        rep.add(f"column {k}", pf.passed and lc, pf=pf.passed, log_concave=lc, failing_iteration=it)

    if t >= 1:
        for n in range(window):
            row = extract(tri, "row", n // t + 1, n=n)
            pf = is_polya_frequency_finite(row, window, order)
            lc, it = is_r_log_concave(row, r_iters)
            rep.add(f"row {n}", pf.passed and lc, pf=pf.passed, log_concave=lc, failing_iteration=it)
        for sigma in range(1, sigma_max + 1):
            for delta in range(1, sigma):
                for k in range(sigma):
                    for n in range(k, window):
                        d = extract(tri, "diagonal", window, n=n, k=k, delta=delta, sigma=sigma)
                        pf = is_polya_frequency_finite(d, window, order)
                        rep.add(f"diagonal n={n} k={k} delta={delta} sigma={sigma}", pf.passed,
                                witness=pf.to_json().get("witness"))
    return rep


def _leading_minors(m: list[list[int]]) -> list[int]:
    """All leading principal minors, via Bareiss without pivoting while it can."""
    a = [r[:] for r in m]
    n = len(a)
    out = []
    prev = 1
    for k in range(n):
        if a[k][k] == 0:
            out.extend(_bareiss([r[:s] for r in m[:s]]) for s in range(k + 1, n + 1))
            return out
        out.append(a[k][k])
        for i in range(k + 1, n):
            ai, ak = a[i], a[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * ak[k] - ai[k] * ak[j]) // prev
        prev = a[k][k]
    return out


def toeplitz_pf(s: PolySequence, order: int = 4, solid_max: int = 40) -> TPReport:
    """Finite-sequence PF test on the Toeplitz side only.

    Stage 1: every minor of order <= ``order`` in the (len+2)-window.
    Stage 2: contiguous minors with rows d..d+k-1 and columns 0..k-1 for
    every shift d and k <= ``solid_max``.  Some non-real-rooted sequences
    (e.g. 8 + 5z + z^2) only fail on minors of order well above 4, which is
    what the second stage is for.
    """
    c = s.ints()
    if not s.complete:
        raise BadParameters("the two-stage test needs a complete sequence")
    if any(x < 0 for x in c):
        i = next(i for i, x in enumerate(c) if x < 0)
        return TPReport(1, False, MinorSpec((i,), (0,)), MultiPoly.const(c[i]), MultiPoly.const(c[i]))
    rep = is_polya_frequency_finite(s, len(c) + 2, order)
    if not rep.passed:
        return rep
    L = len(c)
    for d in range(L):
        m = [[c[d + r - q] if 0 <= d + r - q < L else 0 for q in range(solid_max)] for r in range(solid_max)]
        for k, v in enumerate(_leading_minors(m), start=1):
            if v < 0:
                return TPReport(k, False, MinorSpec(tuple(range(d, d + k)), tuple(range(k))),
                                MultiPoly.const(v), MultiPoly.const(v))
    return TPReport(max(order, solid_max), True)
