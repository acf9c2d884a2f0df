"""Weighted lattice paths with steps (0,1) and (1, t+i), 0 <= i <= ell.

A vertical step ending at height n weighs ``b(n)``; a slanted step of rise
``t+i`` ending at height n weighs ``a(n, i)``.  ``M[n][k]`` is the total
weight of paths from (0,0) to (k,n).  Three engines are provided: a
brute-force enumerator (the oracle), a row recurrence and a column
recurrence, plus the k-recursive transpose engine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, Sequence

from .errors import BadParameters, BadWeight, CapExceeded
from .matrix import PolyMatrix
from .polyalg import ONE, ZERO, MultiPoly, negative_term, parse, render

DEFAULT_PATH_CAP = 10**6


# ---------------------------------------------------------------------------
# weight rules: total functions n -> MultiPoly


class Rule:
    kind = "abstract"
    symbolic = False

    def __call__(self, n: int) -> MultiPoly:
        raise NotImplementedError

    def to_json(self) -> dict:
        raise NotImplementedError

    def is_constant(self) -> bool:
        return False


@dataclass(frozen=True)
class Const(Rule):
    value: MultiPoly
    kind = "constant"

    def __post_init__(self):
        object.__setattr__(self, "value", MultiPoly.coerce(self.value))

    def __call__(self, n: int) -> MultiPoly:
        return self.value

    @property
    def symbolic(self) -> bool:
        return not self.value.is_constant()

    def is_constant(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {"kind": "constant", "value": render(self.value)}


@dataclass(frozen=True)
class PolyInN(Rule):
    """A polynomial in the reserved indeterminate ``n`` (other names stay symbolic)."""

    expr: MultiPoly
    kind = "poly_in_n"

    def __post_init__(self):
        object.__setattr__(self, "expr", MultiPoly.coerce(self.expr))

    def __call__(self, n: int) -> MultiPoly:
        return self.expr.subs({"n": n})

    @property
    def symbolic(self) -> bool:
        return bool(self.expr.variables() - {"n"})

    def is_constant(self) -> bool:
        return "n" not in self.expr.variables()

    def to_json(self) -> dict:
        return {"kind": "poly_in_n", "expr": render(self.expr)}


@dataclass(frozen=True)
class Table(Rule):
    values: tuple
    start: int = 0
    kind = "table"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(MultiPoly.coerce(v) for v in self.values))

    def __call__(self, n: int) -> MultiPoly:
        j = n - self.start
        if not 0 <= j < len(self.values):
            raise BadParameters(f"weight table has no entry for n={n} (covers {self.start}..{self.start + len(self.values) - 1})")
        return self.values[j]

    @property
    def symbolic(self) -> bool:
        return any(not v.is_constant() for v in self.values)

    def to_json(self) -> dict:
        return {"kind": "table", "start": self.start, "values": [render(v) for v in self.values]}


@dataclass(frozen=True)
class Indexed(Rule):
    """The indeterminate ``f"{name}{n}"``, e.g. x1, x2, ..."""

    name: str
    kind = "indexed"
    symbolic = True

    def __call__(self, n: int) -> MultiPoly:
        return MultiPoly.var(f"{self.name}{n}")

    def to_json(self) -> dict:
        return {"kind": "indexed", "name": self.name}


@dataclass(frozen=True)
class Override(Rule):
    """``base`` except at finitely many indices."""

    base: Rule
    at: tuple  # ((n, MultiPoly), ...)

    @property
    def kind(self):
        return self.base.kind

    @property
    def symbolic(self) -> bool:
        return self.base.symbolic or any(not v.is_constant() for _, v in self.at)

    def __call__(self, n: int) -> MultiPoly:
        for m, v in self.at:
            if m == n:
                return v
        return self.base(n)

    def to_json(self) -> dict:
        d = self.base.to_json()
        d["overrides"] = {str(m): render(v) for m, v in self.at}
        return d


def as_rule(x: Any) -> Rule:
    if isinstance(x, Rule):
        return x
    if isinstance(x, str):
        return Const(parse(x))
    return Const(MultiPoly.coerce(x))


# ---------------------------------------------------------------------------


class WeightScheme:
    """The data (t, ell, a, b) of the lattice-path model.

    ``a`` holds one rule per rise offset i = 0..ell; ``b`` one rule.  Weights
    are validated lazily: a weight with a negative coefficient raises
    :class:`BadWeight` the first time it is queried.
    """

    def __init__(self, t: int, ell: int, a: Sequence, b, *, name: str = "", orientation: str = "M"):
        if t < 0 or ell < 0:
            raise BadParameters("t and ell must be nonnegative")
        if len(a) != ell + 1:
            raise BadParameters(f"expected {ell + 1} a-rules, got {len(a)}")
        if orientation not in ("M", "T"):
            raise BadParameters("orientation must be 'M' or 'T'")
        self.t = t
        self.ell = ell
        self.a_rules: tuple[Rule, ...] = tuple(as_rule(r) for r in a)
        self.b_rule: Rule = as_rule(b)
        self.name = name
        self.orientation = orientation
        self._a_cache: dict = {}
        self._b_cache: dict = {}

    def __repr__(self) -> str:
        return f"WeightScheme(name={self.name!r}, t={self.t}, ell={self.ell}, orientation={self.orientation})"

    @property
    def symbolic(self) -> bool:
        return self.b_rule.symbolic or any(r.symbolic for r in self.a_rules)

    def is_constant_weights(self) -> bool:
        return self.b_rule.is_constant() and all(r.is_constant() for r in self.a_rules)

    def _checked(self, p: MultiPoly, what: str) -> MultiPoly:
        bad = negative_term(p)
        if bad is not None:
            raise BadWeight(f"{what} = {render(p)} has a negative coefficient", witness=render(bad))
        return p

    def a(self, n: int, i: int) -> MultiPoly:
        if n < 0 or not 0 <= i <= self.ell:
            return ZERO
        key = (n, i)
        v = self._a_cache.get(key)
        if v is None:
            v = self._checked(self.a_rules[i](n), f"a_{n}^({i})")
            self._a_cache[key] = v
        return v

    def b(self, n: int) -> MultiPoly:
        # b_0 never enters any construction
        if n < 1:
            return ZERO
        v = self._b_cache.get(n)
        if v is None:
            v = self._checked(self.b_rule(n), f"b_{n}")
            self._b_cache[n] = v
        return v

    def b_prod(self, lo: int, hi: int) -> MultiPoly:
        """b_lo * ... * b_hi (empty product 1)."""
        p = ONE
        for i in range(lo, hi + 1):
            p = p * self.b(i)
        return p

    def validate(self, N: int) -> None:
        """Query every weight with index up to N."""
        for n in range(N + 1):
            for i in range(self.ell + 1):
                self.a(n, i)
            self.b(n)

    def to_json(self) -> dict:
        d = {
            "t": self.t,
            "ell": self.ell,
            "a": [r.to_json() for r in self.a_rules],
            "b": self.b_rule.to_json(),
            "orientation": self.orientation,
        }
        if self.name:
            d["name"] = self.name
        return d


# ---------------------------------------------------------------------------
# JSON scheme documents


def _rule_from_json(d: Mapping, allowed, which: str, plural_index: int | None = None) -> Rule:
    kind = d.get("kind")

    def lit(s):
        return parse(str(s), allowed)

    def pick(single, plural):
        # a singular field applies to every offset; a plural one lists them in order
        if single in d:
            return d[single]
        if plural in d:
            vals = d[plural]
            if plural_index is None:
                if len(vals) == 1:
                    return vals[0]
                raise BadParameters(f"{which}: {plural!r} needs exactly one entry here")
            return vals[plural_index]
        raise BadParameters(f"{which}: missing field {single!r} or {plural!r}")

    if kind == "constant":
        rule: Rule = Const(lit(pick("value", "values")))
    elif kind == "poly_in_n":
        rule = PolyInN(parse(str(pick("expr", "exprs")), None if allowed is None else set(allowed) | {"n"}))
    elif kind == "table":
        vals = d["values"]
        if plural_index is not None and vals and isinstance(vals[0], list):
            vals = vals[plural_index]
        start = d.get("start", 1 if which == "b" else 0)
        rule = Table(tuple(lit(v) for v in vals), start)
    elif kind == "indexed":
        rule = Indexed(str(pick("name", "names")))
    else:
        raise BadParameters(f"{which}: unknown rule kind {kind!r}")
    ov = d.get("overrides")
    if ov:
        if plural_index is not None and isinstance(ov, list):
            ov = ov[plural_index]
        if ov:
            rule = Override(rule, tuple(sorted((int(k), lit(v)) for k, v in ov.items())))
    return rule


def scheme_from_json(doc: Mapping) -> WeightScheme:
    """Build a scheme from the CLI's JSON document.

    ``a`` is either a list of per-offset rule objects or one object whose
    plural field (``values``/``exprs``/``names``) has ell+1 entries.
    """
    try:
        t = int(doc["t"])
        ell = int(doc["ell"])
        allowed = doc.get("vars")
        a = doc["a"]
        if isinstance(a, list):
            a_rules = [_rule_from_json(r, allowed, "a") for r in a]
        else:
            a_rules = [_rule_from_json(a, allowed, "a", i) for i in range(ell + 1)]
        b_rule = _rule_from_json(doc["b"], allowed, "b")
        return WeightScheme(t, ell, a_rules, b_rule, name=doc.get("name", ""), orientation=doc.get("orientation", "M"))
    except (KeyError, IndexError, TypeError, ValueError) as exc:
        if isinstance(exc, BadParameters):
            raise
        raise BadParameters(f"malformed scheme document: {exc}") from exc


# ---------------------------------------------------------------------------
# paths


@dataclass(frozen=True)
class Step:
    kind: str  # "V" or "S"
    height: int  # landing height
    i: int = 0

    def __str__(self) -> str:
        return f"V{self.height}" if self.kind == "V" else f"S{self.i}@{self.height}"


@dataclass(frozen=True)
class LatticePath:
    steps: tuple[Step, ...]
    t: int

    def endpoint(self) -> tuple[int, int]:
        x = y = 0
        for s in self.steps:
            if s.kind == "V":
                y += 1
            else:
                x += 1
                y += self.t + s.i
        return x, y

    def weight(self, scheme: WeightScheme) -> MultiPoly:
        w = ONE
        for s in self.steps:
            w = w * (scheme.b(s.height) if s.kind == "V" else scheme.a(s.height, s.i))
        return w


def _walk(scheme: WeightScheme, k: int, n: int, cap: int, keep: bool):
    """DFS over all paths to (k, n).  Yields (steps, weight) at leaves."""
    t, ell = scheme.t, scheme.ell
    count = 0
    stack: list[Step] = []

    def rec(x: int, y: int, w: MultiPoly):
        nonlocal count
        if x == k and y == n:
            count += 1
            if count > cap:
                raise CapExceeded(f"more than {cap} paths to ({k}, {n})")
            yield (tuple(stack) if keep else None), w
            # a vertical step could still be taken but would overshoot n
            return
        if y + 1 + t * (k - x) <= n:
            stack.append(Step("V", y + 1))
            yield from rec(x, y + 1, w * scheme.b(y + 1))
            stack.pop()
        if x < k:
            for i in range(ell + 1):
                h = y + t + i
                if h + t * (k - x - 1) > n:
                    break
                stack.append(Step("S", h, i))
                yield from rec(x + 1, h, w * scheme.a(h, i))
                stack.pop()

    if n < 0 or k < 0:
        return
    if t * k > n:
        return
    yield from rec(0, 0, ONE)


def enumerate_paths(scheme: WeightScheme, k: int, n: int, cap: int = DEFAULT_PATH_CAP) -> list[tuple[LatticePath, MultiPoly]]:
    if n < 0 or k < 0:
        raise BadParameters("n and k must be nonnegative")
    return [(LatticePath(steps, scheme.t), w) for steps, w in _walk(scheme, k, n, cap, True)]


def matrix_entry_oracle(scheme: WeightScheme, n: int, k: int, cap: int = DEFAULT_PATH_CAP) -> MultiPoly:
    if n < 0 or k < 0:
        raise BadParameters("n and k must be nonnegative")
    total = ZERO
    for _, w in _walk(scheme, k, n, cap, False):
        total = total + w
    return total


# ---------------------------------------------------------------------------
# truncations


@dataclass(frozen=True)
class TriangleTruncation:
    entries: PolyMatrix
    scheme: WeightScheme = field(compare=False)
    orientation: str = "M"

    def __getitem__(self, idx: tuple[int, int]) -> MultiPoly:
        return self.entries[idx]

    @property
    def N(self) -> int:
        return self.entries.rows - 1

    @property
    def K(self) -> int:
        return self.entries.cols - 1


def _check_dims(N: int, K: int) -> None:
    if N < 0 or K < 0:
        raise BadParameters("N and K must be nonnegative")


def build_matrix_rec1(scheme: WeightScheme, N: int, K: int) -> TriangleTruncation:
    """Row recurrence: M[n][k] = sum_i a(n,i) M[n-t-i][k-1] + b(n) M[n-1][k]."""
    _check_dims(N, K)
    t, ell = scheme.t, scheme.ell
    M = [[ZERO] * (K + 1) for _ in range(N + 1)]
    M[0][0] = ONE
    for k in range(K + 1):
        for n in range(N + 1):
            if n == 0 and k == 0:
                continue
            acc = ZERO
            if k >= 1:
                for i in range(ell + 1):
                    m = n - t - i
                    if m < 0:
                        break
                    prev = M[m][k - 1]
                    if prev:
                        acc = acc + scheme.a(n, i) * prev
            if n >= 1 and M[n - 1][k]:
                acc = acc + scheme.b(n) * M[n - 1][k]
            M[n][k] = acc
    return TriangleTruncation(PolyMatrix(M, K + 1), scheme, "M")


def rec2_coefficients(scheme: WeightScheme, n: int) -> list[tuple[int, MultiPoly]]:
    """Pairs (offset d, c) with M[n][k] = sum c * M[n - d][k-1] over k >= 1."""
    t, ell = scheme.t, scheme.ell
    out = []
    for j in range(ell + 1):
        if n - t - j < 0:
            break
        c = ZERO
        bp = ONE
        for m in range(j + 1):
            c = c + scheme.a(n - m, j - m) * bp
            bp = bp * scheme.b(n - m)
        out.append((t + j, c))
    j = 0
    while n - t - ell - j - 1 >= 0:
        c = ZERO
        for m in range(ell + 1):
            c = c + scheme.a(n - j - m - 1, ell - m) * scheme.b_prod(n - j - m, n)
        out.append((t + ell + j + 1, c))
        j += 1
    return out


def build_matrix_rec2(scheme: WeightScheme, N: int, K: int) -> TriangleTruncation:
    """Column recurrence: column k from column k-1 only; column 0 is prod b."""
    _check_dims(N, K)
    M = [[ZERO] * (K + 1) for _ in range(N + 1)]
    p = ONE
    for n in range(N + 1):
        if n:
            p = p * scheme.b(n)
        M[n][0] = p
    coeffs = [rec2_coefficients(scheme, n) for n in range(N + 1)]
    for k in range(1, K + 1):
        for n in range(N + 1):
            acc = ZERO
            for d, c in coeffs[n]:
                prev = M[n - d][k - 1]
                if prev and c:
                    acc = acc + c * prev
            M[n][k] = acc
    return TriangleTruncation(PolyMatrix(M, K + 1), scheme, "M")


def build_transpose_rec(scheme: WeightScheme, N: int, K: int) -> TriangleTruncation:
    """k-recursive matrix: T[n][k] = sum_i a(k,i) T[n-1][k-t-i] + b(k) T[n][k-1]."""
    _check_dims(N, K)
    t, ell = scheme.t, scheme.ell
    T = [[ZERO] * (K + 1) for _ in range(N + 1)]
    T[0][0] = ONE
    for n in range(N + 1):
        for k in range(K + 1):
            if n == 0 and k == 0:
                continue
            acc = ZERO
            if n >= 1:
                for i in range(ell + 1):
                    m = k - t - i
                    if m < 0:
                        break
                    prev = T[n - 1][m]
                    if prev:
                        acc = acc + scheme.a(k, i) * prev
            if k >= 1 and T[n][k - 1]:
                acc = acc + scheme.b(k) * T[n][k - 1]
            T[n][k] = acc
    return TriangleTruncation(PolyMatrix(T, K + 1), scheme, "T")


def build_truncation(scheme: WeightScheme, N: int, K: int) -> TriangleTruncation:
    """Orientation-aware entry point."""
    if scheme.orientation == "T":
        return build_transpose_rec(scheme, N, K)
    return build_matrix_rec1(scheme, N, K)


def iter_window(N: int, K: int) -> Iterator[tuple[int, int]]:
    for n in range(N + 1):
        for k in range(K + 1):
            yield n, k
