"""Named weight schemes for classical triangles."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Mapping

from .errors import BadParameters, UnknownName
from .pathmodel import Const, Indexed, Override, PolyInN, WeightScheme
from .polyalg import MultiPoly, parse


def _param(params: Mapping, key: str, default):
    v = params.get(key, default)
    if isinstance(v, MultiPoly):
        return v
    if isinstance(v, bool):
        raise BadParameters(f"parameter {key!r} must be an integer or polynomial")
    if isinstance(v, int):
        return MultiPoly.const(v)
    try:
        return parse(str(v))
    except ValueError as exc:
        raise BadParameters(f"parameter {key!r}: {exc}") from exc


def _int_param(params: Mapping, key: str, default: int) -> int:
    v = params.get(key, default)
    try:
        v = int(v)
    except (TypeError, ValueError) as exc:
        raise BadParameters(f"parameter {key!r} must be an integer") from exc
    if v < 0:
        raise BadParameters(f"parameter {key!r} must be nonnegative")
    return v


def _name_param(params: Mapping, key: str, default: str) -> str:
    v = str(params.get(key, default))
    if not v.isidentifier():
        raise BadParameters(f"parameter {key!r} must be an identifier")
    return v


def _pascal_triangle(p):
    return WeightScheme(1, 0, [1], 1, name="pascal_triangle")


def _pascal_square(p):
    return WeightScheme(0, 0, [1], 1, name="pascal_square")


def _delannoy_square(p):
    return WeightScheme(0, 1, [1, 1], 1, name="delannoy_square")


def _delannoy_triangle(p):
    return WeightScheme(1, 1, [1, 1], 1, name="delannoy_triangle")


def _brenti(p):
    t = _int_param(p, "t", 0)
    x, y, z = (_name_param(p, k, k) for k in ("x", "y", "z"))
    return WeightScheme(t, 1, [Indexed(z), Indexed(y)], Indexed(x), name="brenti")


def _delannoy_like(p):
    e, h = _param(p, "e", "e"), _param(p, "h", "h")
    # b_1 = 1 keeps the (1,0) entry equal to 1
    return WeightScheme(1, 1, [1, h], Override(Const(e), ((1, MultiPoly.const(1)),)), name="delannoy_like")


def _generalized_delannoy(p):
    a, b, c = (_param(p, k, k) for k in ("a", "b", "c"))
    return WeightScheme(1, 1, [a, c], b, name="generalized_delannoy")


def _stirling1(p):
    return WeightScheme(1, 0, [1], PolyInN(parse("n - 1")), name="stirling1")


def _legendre_stirling1(p):
    return WeightScheme(1, 0, [1], PolyInN(parse("n*(n - 1)")), name="legendre_stirling1")


def _jacobi_stirling1(p):
    z = _param(p, "z", "z")
    n = MultiPoly.var("n")
    return WeightScheme(1, 0, [1], PolyInN((n - 1) * (n - 1 + z)), name="jacobi_stirling1")


def _stirling2(p):
    return WeightScheme(0, 1, [PolyInN(parse("n")), 1], 0, name="stirling2", orientation="T")


def _gen_jacobi_stirling2(p):
    a1, a2, a3, b1, b2, b3 = (_param(p, k, k) for k in ("a1", "a2", "a3", "b1", "b2", "b3"))
    n = MultiPoly.var("n")
    return WeightScheme(0, 1, [PolyInN(a1 * n * n + a2 * n + a3), PolyInN(b1 * n * n + b2 * n + b3)], 0,
                        name="gen_jacobi_stirling2", orientation="T")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    orientation: str
    params: tuple[str, ...]
    description: str
    builder: Callable[[Mapping], WeightScheme]
    numeric_defaults: tuple = ()

    def to_json(self) -> dict:
        return {"name": self.name, "orientation": self.orientation, "params": list(self.params),
                "description": self.description}


_ENTRIES = [
    CatalogEntry("pascal_triangle", "M", (), "binomial coefficients C(n,k)", _pascal_triangle),
    CatalogEntry("pascal_square", "M", (), "binomial square C(n+k,k)", _pascal_square),
    CatalogEntry("delannoy_square", "M", (), "Delannoy numbers D(n,k)", _delannoy_square),
    CatalogEntry("delannoy_triangle", "M", (), "Delannoy triangle d(n,k) = D(n-k,k)", _delannoy_triangle),
    CatalogEntry("brenti", "M", ("t", "x", "y", "z"),
                 "recursive matrix with weights z_n, y_n (slanted) and x_n (vertical)", _brenti),
    CatalogEntry("delannoy_like", "M", ("e", "h"), "Delannoy-like triangle D(e,h)", _delannoy_like,
                 (("e", 2), ("h", 3))),
    CatalogEntry("generalized_delannoy", "M", ("a", "b", "c"),
                 "weighted Delannoy triangle with step weights a, b, c", _generalized_delannoy,
                 (("a", 2), ("b", 1), ("c", 3))),
    CatalogEntry("stirling1", "M", (), "unsigned Stirling numbers of the first kind c(n,k)", _stirling1),
    CatalogEntry("legendre_stirling1", "M", (), "Legendre-Stirling numbers of the first kind",
                 _legendre_stirling1),
    CatalogEntry("jacobi_stirling1", "M", ("z",), "Jacobi-Stirling numbers of the first kind Jc_n^(k)(z)",
                 _jacobi_stirling1, (("z", 1),)),
    CatalogEntry("stirling2", "T", (), "Stirling numbers of the second kind S(n,k)", _stirling2),
    CatalogEntry("gen_jacobi_stirling2", "T", ("a1", "a2", "a3", "b1", "b2", "b3"),
                 "generalized Jacobi-Stirling numbers of the second kind", _gen_jacobi_stirling2,
                 (("a1", 1), ("a2", 1), ("a3", 0), ("b1", 0), ("b2", 0), ("b3", 1))),
]

CATALOG: dict[str, CatalogEntry] = {e.name: e for e in _ENTRIES}


def catalog_scheme(name: str, params: Mapping | None = None) -> tuple[WeightScheme, str]:
    entry = CATALOG.get(name)
    if entry is None:
        raise UnknownName(f"no catalog entry named {name!r}")
    params = dict(params or {})
    extra = set(params) - set(entry.params)
    if extra:
        raise BadParameters(f"{name} does not take parameters {sorted(extra)}")
    scheme = entry.builder(params)
    return scheme, entry.orientation


def numeric_scheme(name: str) -> WeightScheme:
    """The entry with its default numeric parameters (symbolic-only entries keep their symbols)."""
    entry = CATALOG[name]
    return catalog_scheme(name, dict(entry.numeric_defaults))[0]


def jacobi_stirling2(z) -> WeightScheme:
    """JS_n^(k)(z) = JS_{n-1}^(k-1)(z) + k(k+z) JS_{n-1}^(k)(z)."""
    return catalog_scheme("gen_jacobi_stirling2", {"a1": 1, "a2": z, "a3": 0, "b1": 0, "b2": 0, "b3": 1})[0]


def dw_closed_form(a, b, c, n: int, k: int) -> MultiPoly:
    """D_w(n, k) = sum_d C(n+k-d, k) C(k, d) a^(k-d) b^(n-d) c^d (square coordinates)."""
    a, b, c = (MultiPoly.coerce(x) for x in (a, b, c))
    total = MultiPoly()
    for d in range(min(n, k) + 1):
        total = total + comb(n + k - d, k) * comb(k, d) * a ** (k - d) * b ** (n - d) * c ** d
    return total
