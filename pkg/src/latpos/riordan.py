"""Closed forms for schemes whose weights do not depend on n.

With a_n^(i) = a_i and b_n = gamma for all n, column k of M has generating
function g * f^k where g = 1/(1 - gamma z) and f = sum_i a_i z^(t+i) * g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Sequence

from .errors import BadParameters, IndexBeyondTruncation, MissingFactorForm
from .matcore import factor_polynomial
from .pathmodel import Const, WeightScheme, build_matrix_rec1
from .polyalg import ONE, ZERO, MultiPoly, PowerSeries, render

Q = "q"  # second variable of bivariate generating functions


@dataclass
class RiordanSpec:
    g: PowerSeries
    f: PowerSeries
    _powers: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        if self.g.coeffs[0].is_zero():
            raise BadParameters("g must have a nonzero constant term")
        if self.f.coeffs[0].is_zero() and (self.f.order < 1 or self.f.coeffs[1].is_zero()):
            raise BadParameters("f must satisfy f_0 != 0 or (f_0 = 0 and f_1 != 0)")

    @property
    def N(self) -> int:
        return min(self.g.order, self.f.order)

    @property
    def kind(self) -> str:
        return "proper" if self.f.coeffs[0].is_zero() else "improper"

    def column(self, k: int) -> PowerSeries:
        """g * f^k, cached incrementally."""
        if not self._powers:
            self._powers.append(self.g.truncate(self.N))
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.f)
        return self._powers[k]

    def to_json(self) -> dict:
        return {
            "g": [render(c) for c in self.g.coeffs[: self.N + 1]],
            "f": [render(c) for c in self.f.coeffs[: self.N + 1]],
            "N": self.N,
            "kind": self.kind,
        }


def riordan_entry(spec: RiordanSpec, n: int, k: int) -> MultiPoly:
    if n > spec.N:
        raise IndexBeyondTruncation(f"row {n} beyond truncation {spec.N}")
    if n < 0 or k < 0:
        return ZERO
    return spec.column(k).coeff(n)


@dataclass(frozen=True)
class ConstantScheme:
    t: int
    ell: int
    a: tuple
    gamma: MultiPoly
    alphas: tuple | None = None
    betas: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(MultiPoly.coerce(x) for x in self.a))
        object.__setattr__(self, "gamma", MultiPoly.coerce(self.gamma))
        if len(self.a) != self.ell + 1:
            raise BadParameters(f"expected {self.ell + 1} coefficients, got {len(self.a)}")
        if (self.alphas is None) != (self.betas is None):
            raise BadParameters("alphas and betas must be given together")
        if self.alphas is not None:
            al = tuple(MultiPoly.coerce(x) for x in self.alphas)
            be = tuple(MultiPoly.coerce(x) for x in self.betas)
            object.__setattr__(self, "alphas", al)
            object.__setattr__(self, "betas", be)
            if len(al) != self.ell or len(be) != self.ell:
                raise BadParameters("factor form needs exactly ell linear factors")
            if tuple(factor_polynomial(al, be)) != self.a:
                raise BadParameters("factor form does not multiply out to the coefficients")

    @classmethod
    def from_factors(cls, t: int, alphas: Sequence, betas: Sequence, gamma) -> "ConstantScheme":
        coeffs = factor_polynomial(alphas, betas)
        return cls(t, len(alphas), tuple(coeffs), gamma, tuple(alphas), tuple(betas))

    @classmethod
    def from_scheme(cls, scheme: WeightScheme) -> "ConstantScheme":
        if not scheme.is_constant_weights():
            raise BadParameters(f"{scheme.name or 'scheme'} has n-dependent weights")
        return cls(scheme.t, scheme.ell, tuple(scheme.a(0, i) for i in range(scheme.ell + 1)), scheme.b(1))

    @property
    def has_factor_form(self) -> bool:
        return self.alphas is not None

    def weight_scheme(self, name: str = "") -> WeightScheme:
        return WeightScheme(self.t, self.ell, [Const(c) for c in self.a], Const(self.gamma), name=name)

    def to_json(self) -> dict:
        d = {"t": self.t, "ell": self.ell, "a": [render(x) for x in self.a], "gamma": render(self.gamma)}
        if self.has_factor_form:
            d["alphas"] = [render(x) for x in self.alphas]
            d["betas"] = [render(x) for x in self.betas]
        return d


def _geometric(gamma: MultiPoly, N: int) -> PowerSeries:
    return PowerSeries([ONE, -gamma], N).invert()


def riordan_from_scheme(cs: ConstantScheme, N: int) -> RiordanSpec:
    g = _geometric(cs.gamma, N)
    num = [ZERO] * (N + 1)
    for i, c in enumerate(cs.a):
        if cs.t + i <= N:
            num[cs.t + i] = c
    return RiordanSpec(g, PowerSeries(num, N) * g)


def explicit_entry(cs: ConstantScheme, n: int, k: int) -> MultiPoly:
    """Finite sum over i + c_1 + ... + c_ell = n - t k of
    C(k+i, i) gamma^i prod_j C(k, c_j) alpha_j^c_j beta_j^(k - c_j)."""
    if not cs.has_factor_form:
        raise MissingFactorForm("explicit formula needs the linear factors alpha_j z + beta_j")
    r = n - cs.t * k
    if r < 0 or k < 0:
        return ZERO
    total = ZERO
    for cs_tuple in product(range(min(k, r) + 1), repeat=cs.ell):
        i = r - sum(cs_tuple)
        if i < 0:
            continue
        term = MultiPoly.const(comb(k + i, i)) * cs.gamma ** i
        for c, al, be in zip(cs_tuple, cs.alphas, cs.betas):
            term = term * comb(k, c) * al ** c * be ** (k - c)
        total = total + term
    return total


def bivariate_series(cs: ConstantScheme, N: int, K: int) -> PowerSeries:
    """1 / (1 - gamma z - q sum_i a_i z^(t+i)) through z^N, q-degree <= K.

    Expanded as sum_j G^j with G = gamma z + q sum_i a_i z^(t+i): every
    monomial of G has positive z- or q-degree, so j <= N + K suffices.
    """
    q = MultiPoly.var(Q)
    G = [ZERO] * (N + 1)
    if N >= 1:
        G[1] = cs.gamma
    for i, c in enumerate(cs.a):
        if cs.t + i <= N:
            G[cs.t + i] = G[cs.t + i] + q * c
    Gs = PowerSeries(G, N)
    total = PowerSeries.one(N)
    power = PowerSeries.one(N)
    for _ in range(N + K):
        power = (power * Gs).map(lambda p: p.truncate_in(Q, K))
        if all(c.is_zero() for c in power.coeffs):
            break
        total = total + power
    return total


def bivariate_gf_check(cs: ConstantScheme, N: int, K: int) -> bool:
    for a in cs.a + (cs.gamma,):
        if Q in a.variables():
            raise BadParameters(f"indeterminate {Q!r} is reserved for the bivariate series")
    H = bivariate_series(cs, N, K)
    M = build_matrix_rec1(cs.weight_scheme(), N, K).entries
    for n in range(N + 1):
        c = H.coeff(n)
        for k in range(K + 1):
            if c.coeff_in(Q, k) != M[n, k]:
                return False
    return True


def column_gf(cs: ConstantScheme, k: int, N: int) -> PowerSeries:
    """(sum_i a_i z^(t+i))^k / (1 - gamma z)^(k+1), through z^N."""
    num = [ZERO] * (N + 1)
    for i, c in enumerate(cs.a):
        if cs.t + i <= N:
            num[cs.t + i] = c
    return PowerSeries(num, N) ** k * _geometric(cs.gamma, N) ** (k + 1)


def row_sum_series(cs: ConstantScheme, N: int) -> PowerSeries:
    """sum_k h_k through z^N (needs t >= 1 so that only k <= N/t contribute)."""
    if cs.t < 1:
        raise BadParameters("row sums need t >= 1")
    total = PowerSeries([ZERO], N)
    for k in range(N // cs.t + 1):
        total = total + column_gf(cs, k, N)
    return total


def row_sum_closed_form(cs: ConstantScheme, N: int) -> PowerSeries:
    """1 / (1 - gamma z - sum_i a_i z^(t+i))."""
    den = [ZERO] * (N + 1)
    den[0] = ONE
    if N >= 1:
        den[1] = -cs.gamma
    for i, c in enumerate(cs.a):
        if cs.t + i <= N:
            den[cs.t + i] = den[cs.t + i] - c
    return PowerSeries(den, N).invert()
