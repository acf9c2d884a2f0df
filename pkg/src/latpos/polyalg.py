"""Exact scalars: sparse multivariate integer polynomials and truncated power series.

Monomials are packed into a single Python int.  Field 0 (the low ``_W``
bits) holds the total degree and field ``i + 1`` holds the exponent of the
``i``-th registered indeterminate, so multiplying two monomials is integer
addition of their keys.  The registry is process-global and append-only;
nothing observable (printing, equality, pickling) depends on its order.
"""

from __future__ import annotations

import ast
import re
import threading
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import IndexBeyondTruncation, NonInvertibleConstantTerm

_W = 16
_MASK = (1 << _W) - 1

_names: list[str] = []
_index: dict[str, int] = {}
_lock = threading.Lock()

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _var_index(name: str) -> int:
    idx = _index.get(name)
    if idx is not None:
        return idx
    if not _NAME_RE.match(name):
        raise ValueError(f"invalid indeterminate name {name!r}")
    with _lock:
        idx = _index.get(name)
        if idx is None:
            idx = len(_names)
            _names.append(name)
            _index[name] = idx
    return idx


def _mono_key(exps: Mapping[str, int]) -> int:
    key = 0
    deg = 0
    for name, e in exps.items():
        if e < 0:
            raise ValueError("negative exponent")
        if e == 0:
            continue
        if e > _MASK:
            raise OverflowError("exponent too large")
        key += e << (_W * (_var_index(name) + 1))
        deg += e
    if deg > _MASK:
        raise OverflowError("total degree too large")
    return key + deg


def _decode(key: int) -> dict[str, int]:
    out = {}
    key >>= _W
    i = 0
    while key:
        e = key & _MASK
        if e:
            out[_names[i]] = e
        key >>= _W
        i += 1
    return out


def _name_sort_key(name: str):
    m = re.match(r"(.*?)(\d*)\Z", name)
    prefix, digits = m.group(1), m.group(2)
    return (prefix, int(digits) if digits else -1, name)


def _mono_sort_key(key: int):
    exps = _decode(key)
    lex = tuple((_name_sort_key(n), -e) for n, e in sorted(exps.items(), key=lambda it: _name_sort_key(it[0])))
    return (-(key & _MASK), lex)


Scalar = Union[int, "MultiPoly"]


class MultiPoly:
    """Immutable sparse polynomial with arbitrary-precision integer coefficients.

    Equal polynomials have identical term maps; the zero polynomial has no
    terms.  Arithmetic accepts plain ints on either side.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None, *, _trusted: bool = False):
        if terms is None:
            self._t = {}
        elif _trusted:
            self._t = terms
        else:
            self._t = {k: v for k, v in terms.items() if v}
        self._hash = None

    # -- construction -------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "MultiPoly":
        c = int(c)
        return cls({0: c}, _trusted=True) if c else cls()

    @classmethod
    def var(cls, name: str, power: int = 1) -> "MultiPoly":
        return cls({_mono_key({name: power}): 1}, _trusted=True)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, Mapping[str, int]]]) -> "MultiPoly":
        acc: dict[int, int] = {}
        for c, exps in terms:
            k = _mono_key(exps)
            acc[k] = acc.get(k, 0) + int(c)
        return cls(acc)

    @staticmethod
    def coerce(x: Scalar) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {type(x).__name__} to MultiPoly")
        return MultiPoly.const(x)

    # -- inspection ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> int:
        return self._t.get(0, 0)

    def as_int(self) -> int:
        if not self.is_constant():
            raise TypeError(f"{self} is not a constant")
        return self._t.get(0, 0)

    def __len__(self) -> int:
        return len(self._t)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((k & _MASK for k in self._t), default=-1)

    def degree_in(self, name: str) -> int:
        if name not in _index:
            return 0 if self._t else -1
        shift = _W * (_index[name] + 1)
        return max(((k >> shift) & _MASK for k in self._t), default=-1)

    def variables(self) -> frozenset[str]:
        out = set()
        for k in self._t:
            out.update(_decode(k))
        return frozenset(out)

    def terms(self) -> Iterator[tuple[int, dict[str, int]]]:
        """Yield ``(coeff, exponents)`` in canonical order."""
        for k in sorted(self._t, key=_mono_sort_key):
            yield self._t[k], _decode(k)

    def coefficients(self) -> list[int]:
        return list(self._t.values())

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: Scalar) -> "MultiPoly":
        if isinstance(other, int) and not isinstance(other, bool):
            if not other:
                return self
            other = MultiPoly.const(other)
        elif not isinstance(other, MultiPoly):
            return NotImplemented
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        if not b:
            return self if a is self._t else other
        res = dict(a)
        for k, v in b.items():
            s = res.get(k, 0) + v
            if s:
                res[k] = s
            else:
                del res[k]
        return MultiPoly(res, _trusted=True)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({k: -v for k, v in self._t.items()}, _trusted=True)

    def __pos__(self) -> "MultiPoly":
        return self

    def __sub__(self, other: Scalar) -> "MultiPoly":
        if isinstance(other, int) and not isinstance(other, bool):
            return self + (-other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other: Scalar) -> "MultiPoly":
        if isinstance(other, int) and not isinstance(other, bool):
            if not other:
                return MultiPoly()
            if other == 1:
                return self
            return MultiPoly({k: v * other for k, v in self._t.items()}, _trusted=True)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return MultiPoly()
        if len(a) == 1 and 0 in a:
            return other * a[0]
        if len(b) == 1 and 0 in b:
            return self * b[0]
        if self.degree() + other.degree() > _MASK:
            raise OverflowError("product degree exceeds exponent field width")
        res: dict[int, int] = {}
        get = res.get
        for k1, c1 in a.items():
            for k2, c2 in b.items():
                k = k1 + k2
                res[k] = get(k, 0) + c1 * c2
        return MultiPoly(res)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def exact_div_int(self, d: int) -> "MultiPoly":
        """Divide every coefficient by ``d``; raises if any division is inexact."""
        out = {}
        for k, v in self._t.items():
            q, r = divmod(v, d)
            if r:
                raise ArithmeticError(f"{self} is not divisible by {d}")
            out[k] = q
        return MultiPoly(out, _trusted=True)

    # -- substitution and slicing --------------------------------------

    def coeff_in(self, name: str, power: int) -> "MultiPoly":
        """Coefficient of ``name**power`` viewing ``self`` as a polynomial in ``name``."""
        if name not in _index:
            return self if power == 0 else MultiPoly()
        shift = _W * (_index[name] + 1)
        out = {}
        for k, v in self._t.items():
            if (k >> shift) & _MASK == power:
                out[k - (power << shift) - power] = v
        return MultiPoly(out, _trusted=True)

    def truncate_in(self, name: str, max_power: int) -> "MultiPoly":
        """Drop terms whose exponent of ``name`` exceeds ``max_power``."""
        if name not in _index:
            return self
        shift = _W * (_index[name] + 1)
        return MultiPoly({k: v for k, v in self._t.items() if (k >> shift) & _MASK <= max_power}, _trusted=True)

    def subs(self, values: Mapping[str, Scalar]) -> "MultiPoly":
        """Substitute ints or polynomials for indeterminates."""
        if not values:
            return self
        vals = {n: MultiPoly.coerce(v) for n, v in values.items()}
        out = MultiPoly()
        for k, c in self._t.items():
            exps = _decode(k)
            rest = {}
            term = MultiPoly.const(c)
            for n, e in exps.items():
                if n in vals:
                    term = term * vals[n] ** e
                else:
                    rest[n] = e
            if rest:
                term = term * MultiPoly({_mono_key(rest): 1}, _trusted=True)
            out = out + term
        return out

    # -- comparison and hashing -----------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._t == other._t
        if isinstance(other, int) and not isinstance(other, bool):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    def __reduce__(self):
        return (MultiPoly.from_terms, (list(self.terms()),))

    # -- text -----------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"MultiPoly({render(self)!r})"


ZERO = MultiPoly()
ONE = MultiPoly.const(1)


def var(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def const(c: int) -> MultiPoly:
    return MultiPoly.const(c)


def _render_mono(exps: Mapping[str, int]) -> str:
    parts = []
    for n in sorted(exps, key=_name_sort_key):
        e = exps[n]
        parts.append(n if e == 1 else f"{n}^{e}")
    return "*".join(parts)


def render(p: MultiPoly) -> str:
    """Canonical text: descending total degree, then lex by natural name order.

    >>> render(parse("1 + z^2 + 2*z"))
    'z^2 + 2*z + 1'
    """
    if p.is_zero():
        return "0"
    out = []
    for i, (c, exps) in enumerate(p.terms()):
        mono = _render_mono(exps)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class _Evaluator(ast.NodeVisitor):
    def __init__(self, allowed: frozenset[str] | None):
        self.allowed = allowed

    def visit_Expression(self, node):
        return self.visit(node.body)

    def visit_Constant(self, node):
        if isinstance(node.value, bool) or not isinstance(node.value, int):
            raise ValueError(f"only integer literals are allowed, got {node.value!r}")
        return MultiPoly.const(node.value)

    def visit_Name(self, node):
        if self.allowed is not None and node.id not in self.allowed:
            raise ValueError(f"undeclared indeterminate {node.id!r}")
        return MultiPoly.var(node.id)

    def visit_UnaryOp(self, node):
        v = self.visit(node.operand)
        if isinstance(node.op, ast.USub):
            return -v
        if isinstance(node.op, ast.UAdd):
            return v
        raise ValueError("unsupported unary operator")

    def visit_BinOp(self, node):
        if isinstance(node.op, ast.Pow):
            if not isinstance(node.right, ast.Constant) or not isinstance(node.right.value, int):
                raise ValueError("exponents must be integer literals")
            return self.visit(node.left) ** node.right.value
        left, right = self.visit(node.left), self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        raise ValueError("unsupported operator")

    def generic_visit(self, node):
        raise ValueError(f"unsupported syntax: {type(node).__name__}")


def parse(text: str, allowed: Iterable[str] | None = None) -> MultiPoly:
    """Parse a polynomial literal such as ``"2*x1^2 - y + 3"``.

    ``allowed`` restricts the indeterminates that may appear.
    """
    src = str(text).replace("^", "**").replace("−", "-").strip()
    if not src:
        raise ValueError("empty polynomial literal")
    try:
        tree = ast.parse(src, mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse polynomial {text!r}") from exc
    return _Evaluator(frozenset(allowed) if allowed is not None else None).visit(tree)


def poly_arith(op: str, p: Scalar, q: Scalar) -> MultiPoly:
    p, q = MultiPoly.coerce(p), MultiPoly.coerce(q)
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def negative_term(p: MultiPoly) -> MultiPoly | None:
    """First term (canonical order) with a negative coefficient, or None."""
    for c, exps in p.terms():
        if c < 0:
            return MultiPoly.from_terms([(c, exps)])
    return None


def is_coeff_nonnegative(p: Scalar) -> bool:
    if isinstance(p, int):
        return p >= 0
    return all(v > 0 for v in p._t.values())


# ---------------------------------------------------------------------------
# truncated univariate power series with MultiPoly coefficients


class PowerSeries:
    """Power series in an implicit variable, known exactly up to ``z**order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence[Scalar], order: int | None = None):
        cs = [MultiPoly.coerce(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = cs[: order + 1] + [ZERO] * (order + 1 - len(cs))
        self.coeffs: tuple[MultiPoly, ...] = tuple(cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def from_poly(cls, coeffs: Sequence[Scalar], order: int) -> "PowerSeries":
        return cls(coeffs, order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([ONE], order)

    def coeff(self, n: int) -> MultiPoly:
        if n < 0:
            return ZERO
        if n > self.order:
            raise IndexBeyondTruncation(f"coefficient z^{n} requested beyond truncation order {self.order}")
        return self.coeffs[n]

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(order, self.order))

    def map(self, fn) -> "PowerSeries":
        return PowerSeries([fn(c) for c in self.coeffs], self.order)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __neg__(self) -> "PowerSeries":
        return PowerSeries([-c for c in self.coeffs], self.order)

    def scale(self, c: Scalar) -> "PowerSeries":
        c = MultiPoly.coerce(c)
        return PowerSeries([c * x for x in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return self.scale(other)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        nz_b = [j for j in range(n + 1) if b[j]]
        out = []
        for i in range(n + 1):
            acc = ZERO
            for j in nz_b:
                if j > i:
                    break
                if a[i - j]:
                    acc = acc + a[i - j] * b[j]
            out.append(acc)
        return PowerSeries(out, n)

    def __pow__(self, e: int) -> "PowerSeries":
        if e < 0:
            return self.invert() ** (-e)
        result = PowerSeries.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def invert(self) -> "PowerSeries":
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise NonInvertibleConstantTerm(f"constant term {c0} is not a unit")
        u = c0.as_int()
        inv = [MultiPoly.const(u)]
        for n in range(1, self.order + 1):
            acc = ZERO
            for j in range(1, n + 1):
                if self.coeffs[j]:
                    acc = acc + self.coeffs[j] * inv[n - j]
            inv.append(-acc * u)
        return PowerSeries(inv, self.order)

    def __eq__(self, other) -> bool:
        return isinstance(other, PowerSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        body = ", ".join(render(c) for c in self.coeffs)
        return f"PowerSeries([{body}], order={self.order})"


def series_arith(op: str, a: PowerSeries, b=None) -> PowerSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert":
        return a.invert()
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown op {op!r}")


def series_coeff(a: PowerSeries, n: int) -> MultiPoly:
    return a.coeff(n)
