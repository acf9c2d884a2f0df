"""Planar networks for M, its row Toeplitz matrices and diagonal Toeplitz matrices.

Vertices are grid points ``(column, row)``, 1-based.  Every arc increases
the column coordinate, which makes the graphs acyclic by construction.
Zero-weight arcs are never stored: they carry no walk weight.

Two families of building blocks exist.  The tridiagonal block (ell = 2)
uses the factor rules alpha, beta, lam, mu of a scheme built by
:func:`latpos.matcore.tridiag_factor_params`; the general block uses the
linear factors of a constant scheme, sum_i a_i z^i = prod_j (alpha_j z + beta_j).
Both need t >= 1.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Callable, Sequence

from .errors import BadParameters, CapExceeded, CycleDetected
from .matcore import MinorSpec, TridiagFactors, factor_polynomial, minor
from .matrix import PolyMatrix
from .pathmodel import Const, Rule, WeightScheme, as_rule, build_matrix_rec1
from .polyalg import ONE, ZERO, MultiPoly, render

Vertex = tuple[int, int]
DEFAULT_SYSTEM_CAP = 10**6


class PlanarNetwork:
    def __init__(self, name: str = "", *, strict: bool = True):
        self.name = name
        self.strict = strict
        self.vertices: set[Vertex] = set()
        self.arcs: dict[tuple[Vertex, Vertex], MultiPoly] = {}
        self.sources: list[Vertex] = []
        self.sinks: list[Vertex] = []
        self.source_labels: list[str] = []
        self.sink_labels: list[str] = []
        self.labels: dict[str, Vertex] = {}
        self._topo: list[Vertex] | None = None
        self._out: dict[Vertex, list[tuple[Vertex, MultiPoly]]] | None = None

    # -- construction ----------------------------------------------------

    def add_vertex(self, v: Vertex) -> None:
        self.vertices.add(v)
        self._topo = None

    def add_arc(self, tail: Vertex, head: Vertex, weight) -> None:
        w = MultiPoly.coerce(weight)
        self.vertices.add(tail)
        self.vertices.add(head)
        self._topo = None
        self._out = None
        if not w:
            return
        if self.strict and head[0] <= tail[0]:
            raise CycleDetected(f"arc {tail}->{head} does not increase the column")
        if (tail, head) in self.arcs:
            raise BadParameters(f"duplicate arc {tail}->{head}")
        self.arcs[(tail, head)] = w

    def set_label(self, label: str, v: Vertex) -> None:
        self.vertices.add(v)
        self.labels[label] = v

    def set_terminals(self, sources: Sequence[str | Vertex], sinks: Sequence[str | Vertex]) -> None:
        def resolve(x):
            if isinstance(x, str):
                return x, self.labels[x]
            return str(x), tuple(x)

        s = [resolve(x) for x in sources]
        k = [resolve(x) for x in sinks]
        self.source_labels = [a for a, _ in s]
        self.sources = [v for _, v in s]
        self.sink_labels = [a for a, _ in k]
        self.sinks = [v for _, v in k]

    # -- structure ---------------------------------------------------------

    def out_arcs(self) -> dict[Vertex, list[tuple[Vertex, MultiPoly]]]:
        if self._out is None:
            out: dict = defaultdict(list)
            for (u, v), w in sorted(self.arcs.items()):
                out[u].append((v, w))
            self._out = dict(out)
        return self._out

    def topological_order(self) -> list[Vertex]:
        if self._topo is None:
            indeg = {v: 0 for v in self.vertices}
            for (_, v) in self.arcs:
                indeg[v] += 1
            out = self.out_arcs()
            ready = sorted(v for v, d in indeg.items() if d == 0)
            order = []
            import heapq

            heapq.heapify(ready)
            while ready:
                u = heapq.heappop(ready)
                order.append(u)
                for v, _ in out.get(u, ()):
                    indeg[v] -= 1
                    if indeg[v] == 0:
                        heapq.heappush(ready, v)
            if len(order) != len(self.vertices):
                raise CycleDetected(f"network {self.name!r} has a directed cycle")
            self._topo = order
        return self._topo

    def induced_on_paths(self, sources: Sequence[Vertex], sinks: Sequence[Vertex], name: str = "") -> "PlanarNetwork":
        """Subnetwork made of all arcs lying on some source-to-sink path."""
        out = self.out_arcs()
        inc: dict = defaultdict(list)
        for (u, v) in self.arcs:
            inc[v].append(u)
        fwd = set(sources)
        stack = list(sources)
        while stack:
            u = stack.pop()
            for v, _ in out.get(u, ()):
                if v not in fwd:
                    fwd.add(v)
                    stack.append(v)
        bwd = set(sinks)
        stack = list(sinks)
        while stack:
            v = stack.pop()
            for u in inc.get(v, ()):
                if u not in bwd:
                    bwd.add(u)
                    stack.append(u)
        sub = PlanarNetwork(name or self.name, strict=self.strict)
        for v in list(sources) + list(sinks):
            sub.add_vertex(v)
        for (u, v), w in self.arcs.items():
            if u in fwd and v in bwd:
                sub.add_arc(u, v, w)
        for lab, v in self.labels.items():
            if v in sub.vertices:
                sub.labels[lab] = v
        return sub

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "arcs": [
                {"tail": list(u), "head": list(v), "weight": render(w)} for (u, v), w in sorted(self.arcs.items())
            ],
            "sources": self.source_labels,
            "sinks": self.sink_labels,
        }

    def __repr__(self) -> str:
        return f"PlanarNetwork({self.name!r}, {len(self.vertices)} vertices, {len(self.arcs)} arcs)"


# ---------------------------------------------------------------------------
# walk matrices


def walk_weights_from(net: PlanarNetwork, source: Vertex) -> dict[Vertex, MultiPoly]:
    order = net.topological_order()
    out = net.out_arcs()
    acc: dict[Vertex, MultiPoly] = {source: ONE}
    for u in order:
        w = acc.get(u)
        if not w:
            continue
        for v, a in out.get(u, ()):
            acc[v] = acc.get(v, ZERO) + w * a
    return acc


def walk_matrix(net: PlanarNetwork) -> PolyMatrix:
    rows = []
    for s in net.sources:
        acc = walk_weights_from(net, s)
        rows.append([acc.get(t, ZERO) for t in net.sinks])
    return PolyMatrix(rows, len(net.sinks))


# ---------------------------------------------------------------------------
# vertex-disjoint path systems


def _perm_sign(p: Sequence[int]) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def disjoint_system_sums(net: PlanarNetwork, rows: Sequence[int], cols: Sequence[int] | None = None,
                         cap: int = DEFAULT_SYSTEM_CAP) -> dict[tuple[int, ...], MultiPoly]:
    """Signed weights of vertex-disjoint systems from the chosen sources.

    Returns ``{cols: sum over sigma of sgn(sigma) * weight}`` for every
    increasing tuple of sink indices (drawn from ``cols``) of the right size.

    Walkers advance one at a time, always the one at the earliest vertex in
    topological order.  A vertex that some walker has left precedes every
    current position, so disjointness reduces to "never step onto another
    walker's current vertex".
    """
    r = len(rows)
    allowed = list(range(len(net.sinks))) if cols is None else list(cols)
    if r == 0:
        return {(): ONE}
    order = net.topological_order()
    rank = {v: i for i, v in enumerate(order)}
    out = net.out_arcs()
    sink_at: dict[Vertex, int] = {net.sinks[j]: j for j in allowed}

    # vertices that can still reach an allowed sink
    live = set(sink_at)
    for u in reversed(order):
        if u not in live and any(v in live for v, _ in out.get(u, ())):
            live.add(u)

    numeric = all(w.is_constant() for w in net.arcs.values())
    one = 1 if numeric else ONE
    conv = (lambda w: w.constant_term()) if numeric else (lambda w: w)
    succ = {u: [(v, conv(w)) for v, w in arcs if v in live] for u, arcs in out.items()}

    start = tuple(net.sources[i] for i in rows)
    if len(set(start)) < r or any(v not in live for v in start):
        return {}
    # state: (positions, assignment); positions[p] is None once walker p has stopped
    buckets: dict[int, dict] = defaultdict(dict)
    buckets[min(rank[v] for v in start)][(start, (None,) * r)] = one
    results: dict[tuple[int, ...], object] = defaultdict(int) if numeric else defaultdict(lambda: ZERO)
    processed = 0
    while buckets:
        key = min(buckets)
        layer = buckets.pop(key)
        for (pos, assign), w in layer.items():
            processed += 1
            if processed > cap:
                raise CapExceeded(f"more than {cap} partial path systems")
            p = min((q for q in range(r) if pos[q] is not None), key=lambda q: rank[pos[q]])
            v = pos[p]
            j = sink_at.get(v)
            if j is not None:
                na = assign[:p] + (j,) + assign[p + 1:]
                npos = pos[:p] + (None,) + pos[p + 1:]
                if all(x is None for x in npos):
                    ordered = sorted(na)
                    sign = _perm_sign([ordered.index(x) for x in na])
                    results[tuple(ordered)] += w if sign > 0 else -w
                else:
                    nk = min(rank[x] for x in npos if x is not None)
                    b = buckets[nk]
                    st = (npos, na)
                    b[st] = b[st] + w if st in b else w
            occupied = set(x for x in pos if x is not None)
            for u, a in succ.get(v, ()):
                if u in occupied:
                    continue
                npos = pos[:p] + (u,) + pos[p + 1:]
                nk = min(rank[x] for x in npos if x is not None)
                b = buckets[nk]
                st = (npos, assign)
                nw = w * a
                b[st] = b[st] + nw if st in b else nw
    return {k: MultiPoly.coerce(v) for k, v in results.items() if v}


def enumerate_disjoint_systems(net: PlanarNetwork, rows: Sequence[int], cols: Sequence[int],
                               cap: int = DEFAULT_SYSTEM_CAP) -> MultiPoly:
    """Signed sum over vertex-disjoint systems joining sources ``rows`` to sinks ``cols``."""
    if len(rows) != len(cols):
        raise BadParameters("rows and cols must have equal length")
    cols = tuple(cols)
    res = disjoint_system_sums(net, rows, cols, cap)
    return res.get(tuple(sorted(cols)), ZERO) * (_perm_sign(sorted(range(len(cols)), key=lambda i: cols[i])) if cols else 1)


def brute_disjoint_systems(net: PlanarNetwork, rows: Sequence[int], cols: Sequence[int],
                           cap: int = 10**5) -> tuple[MultiPoly, int]:
    """Explicit enumeration of vertex-disjoint systems, path by path.

    Returns the signed weight sum and the number of systems whose matching
    is not the identity.  Exponential; meant for small instances.
    """
    out = net.out_arcs()
    srcs = [net.sources[i] for i in rows]
    tgts = [net.sinks[j] for j in cols]
    r = len(srcs)
    budget = [cap]

    def paths(u, target, used):
        if u == target:
            yield (u,), ONE
            return
        for v, w in out.get(u, ()):
            if v in used:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise CapExceeded(f"more than {cap} path extensions")
            for rest, rw in paths(v, target, used):
                yield (u,) + rest, w * rw

    total = ZERO
    nonid = 0
    for perm in permutations(range(r)):
        sign = _perm_sign(perm)

        def rec(p, used):
            if p == r:
                yield ONE
                return
            if srcs[p] in used:
                return
            for path, w in paths(srcs[p], tgts[perm[p]], used):
                for rest in rec(p + 1, used | set(path)):
                    yield w * rest

        for w in rec(0, frozenset()):
            total = total + (w if sign > 0 else -w)
            if list(perm) != list(range(r)):
                nonid += 1
    return total, nonid


def lgv_verify(net: PlanarNetwork, spec: MinorSpec, cap: int = DEFAULT_SYSTEM_CAP) -> bool:
    return minor(walk_matrix(net), spec) == enumerate_disjoint_systems(net, spec.rows, spec.cols, cap)


@dataclass
class LGVReport:
    network: str
    order: int
    minors_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"network": self.network, "order": self.order, "minors_checked": self.minors_checked,
                "passed": self.passed, "failures": self.failures[:5]}


def lgv_verify_all(net: PlanarNetwork, order: int = 3, cap: int = DEFAULT_SYSTEM_CAP) -> LGVReport:
    """Check the LGV identity for every minor of order <= ``order`` of the walk matrix."""
    B = walk_matrix(net)
    rep = LGVReport(net.name, order)
    R, C = B.rows, B.cols
    for s in range(1, min(order, R, C) + 1):
        for rows in combinations(range(R), s):
            sums = disjoint_system_sums(net, rows, None, cap)
            for cols in combinations(range(C), s):
                rep.minors_checked += 1
                lhs = minor(B, MinorSpec(rows, cols))
                if lhs != sums.get(cols, ZERO):
                    rep.failures.append({"rows": list(rows), "cols": list(cols), "minor": render(lhs),
                                         "systems": render(sums.get(cols, ZERO))})
    return rep


# ---------------------------------------------------------------------------
# building blocks


@dataclass(frozen=True)
class GeneralParams:
    """Constant linear factors (alpha_j z + beta_j), j = 1..ell, plus b and t."""

    alphas: tuple
    betas: tuple
    b: Rule
    t: int

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(MultiPoly.coerce(x) for x in self.alphas))
        object.__setattr__(self, "betas", tuple(MultiPoly.coerce(x) for x in self.betas))
        object.__setattr__(self, "b", as_rule(self.b))
        if len(self.alphas) != len(self.betas) or not self.alphas:
            raise BadParameters("need ell >= 1 factors with matching alphas and betas")

    @property
    def ell(self) -> int:
        return len(self.alphas)

    def scheme(self, name: str = "") -> WeightScheme:
        coeffs = factor_polynomial(self.alphas, self.betas)
        return WeightScheme(self.t, self.ell, [Const(c) for c in coeffs], self.b, name=name)

    def gamma(self) -> MultiPoly:
        if not self.b.is_constant():
            raise BadParameters("b is not constant")
        return self.b(1)


def _check_t(t: int) -> None:
    if t < 1:
        raise BadParameters("the planar networks need t >= 1 (for t = 0 an arc would leave the grid)")


def _tridiag_block(n: int, f: TridiagFactors, b: Callable[[int], MultiPoly], t: int):
    """Arcs of the tridiagonal block in local coordinates; width n+3 columns."""
    arcs = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            arcs.append(((i, j), (i + 1, j), ONE))
    for i in range(1, n + 3):
        arcs.append(((i, n + 1), (i + 1, n + 1), ONE))
    for j in range(1, n + 1):
        arcs.append(((n + 2, j), (n + 3, j), f.lam(n + t - j)))
    for i in range(1, n + 1):
        arcs.append(((i, i), (i + 1, i + 1), b(n + 1 - i)))
    for j in range(1, n):
        arcs.append(((n + 2, j), (n + 3, j + 1), f.mu(n + t - j)))
    for j in range(1, n + 2 - t):
        arcs.append(((n + 1, j), (n + 2, j + t - 1), f.alpha(n + 1 - j)))
    for j in range(1, n + 1 - t):
        arcs.append(((n + 1, j), (n + 2, j + t), f.beta(n + 1 - j)))
    return arcs, n + 2


def _general_block(n: int, p: GeneralParams, b: Callable[[int], MultiPoly], t: int):
    """Arcs of the general-ell block in local coordinates; width n+ell+1 columns."""
    ell = p.ell
    arcs = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            arcs.append(((i, j), (i + 1, j), ONE))
    for i in range(1, n + ell + 1):
        arcs.append(((i, n + 1), (i + 1, n + 1), ONE))
    for i in range(n + 2, n + ell + 1):
        for j in range(1, n + 1):
            arcs.append(((i, j), (i + 1, j), p.betas[i - n - 1]))
        for j in range(1, n):
            arcs.append(((i, j), (i + 1, j + 1), p.alphas[i - n - 1]))
    for i in range(1, n + 1):
        arcs.append(((i, i), (i + 1, i + 1), b(n + 1 - i)))
    for j in range(1, n + 2 - t):
        arcs.append(((n + 1, j), (n + 2, j + t - 1), p.betas[0]))
    for j in range(1, n + 1 - t):
        arcs.append(((n + 1, j), (n + 2, j + t), p.alphas[0]))
    return arcs, n + ell


def _resolve(params, t: int | None):
    """Return (block builder, b rule, t, variant)."""
    if isinstance(params, GeneralParams):
        tt = params.t if t is None else t
        return (lambda n, tt=tt: _general_block(n, params, params.b, tt)), tt, "general_ell"
    if isinstance(params, WeightScheme):
        f = getattr(params, "factors", None)
        if f is None:
            raise BadParameters("scheme has no tridiagonal factor rules")
        tt = params.t if t is None else t
        return (lambda n, tt=tt: _tridiag_block(n, f, params.b, tt)), tt, "tridiag"
    raise BadParameters(f"unsupported network parameters {type(params).__name__}")


def _q(j: int, m: int) -> str:
    return f"Q_{j}^({m})"


def _r(i: int, m: int) -> str:
    return f"R_{i}^({m})"


def build_gamma(n: int, params, t: int | None = None) -> PlanarNetwork:
    """Single block for level n; its walk matrix is P with columns 1..t removed."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    block, tt, variant = _resolve(params, t)
    _check_t(tt)
    arcs, width = block(n)
    net = PlanarNetwork(f"Gamma_{n}[{variant},t={tt}]")
    for j in range(1, n + 2):
        net.add_vertex((1, j))
        net.add_vertex((width + 1, j))
    for u, v, w in arcs:
        net.add_arc(u, v, w)
    for j in range(n + 1):
        net.set_label(_q(j, n), (1, j + 1))
        net.set_label(_q(j, n - 1), (width + 1, j + 1))
        net.set_label(_r(j, n), (j + 1, j + 1))
    net.set_terminals([_q(n - i, n) for i in range(n + 1)], [_q(n - j, n - 1) for j in range(n + 1)])
    return net


def build_gamma_tridiag(n: int, scheme: WeightScheme, t: int | None = None) -> PlanarNetwork:
    return build_gamma(n, scheme, t)


def build_gamma_general(n: int, params: GeneralParams) -> PlanarNetwork:
    return build_gamma(n, params)


def _star_layout(N: int, params, t: int | None):
    block, tt, variant = _resolve(params, t)
    _check_t(tt)
    X = {N: 1}
    blocks = {}
    for m in range(N, 0, -1):
        arcs, width = block(m)
        blocks[m] = arcs
        X[m - 1] = X[m] + width
    return blocks, X, tt, variant


def build_gamma_star(n: int, params, t: int | None = None) -> PlanarNetwork:
    """Levels n, n-1, ..., 1 glued left to right, with weight-1 chains on the upper rows.

    Q_j^(m) sits at (X_m, j+1) and R_i^(m) at (X_m + i, i+1).
    """
    if n < 1:
        raise BadParameters("n must be >= 1")
    blocks, X, tt, variant = _star_layout(n, params, t)
    net = PlanarNetwork(f"Gamma*_{n}[{variant},t={tt}]")
    for m in range(n, 0, -1):
        dx = X[m] - 1
        for (ui, uj), (vi, vj), w in blocks[m]:
            net.add_arc((ui + dx, uj), (vi + dx, vj), w)
    for top in range(2, n + 1):
        for i in range(top - 1):
            net.add_arc((X[i + 1], top + 1), (X[i], top + 1), ONE)
    for m in range(n + 1):
        for j in range(n + 1):
            net.set_label(_q(j, m), (X[m], j + 1))
        for i in range(m + 1):
            net.set_label(_r(i, m), (X[m] + i, i + 1))
    net.set_terminals([_q(n - i, n) for i in range(n + 1)], [_q(n - j, 0) for j in range(n + 1)])
    return net


def build_gamma_diamond(n: int, k: int, params, t: int | None = None) -> PlanarNetwork:
    """Subnetwork of the level-(n+k) glued network; walk entry (i, j) is M[n][i-j]."""
    if n < 0 or k < 0:
        raise BadParameters("n and k must be nonnegative")
    if n + k < 1:
        raise BadParameters("need n + k >= 1")
    star = build_gamma_star(n + k, params, t)
    src = [_q(i, n + i) for i in range(k + 1)]
    snk = [_q(n + j, 0) for j in range(k + 1)]
    sub = star.induced_on_paths([star.labels[s] for s in src], [star.labels[s] for s in snk],
                                name=f"Gamma<>_{k}[n={n},{star.name}]")
    sub.set_terminals(src, snk)
    return sub


def build_gamma_circ(m: int, n: int, k: int, delta: int, sigma: int, params: GeneralParams) -> PlanarNetwork:
    """Subnetwork whose walk entry (i, j) is M[n+(i-j)delta][k+(i-j)sigma]; needs constant b."""
    if not isinstance(params, GeneralParams):
        raise BadParameters("diagonal networks use the general-ell construction")
    if not params.b.is_constant():
        raise BadParameters("diagonal networks need constant b")
    if not (0 <= k <= n and delta > 0 and max(k, delta) < sigma and m >= 0):
        raise BadParameters("need 0 <= k <= n, delta > 0, max(k, delta) < sigma")
    top = n + m * sigma
    star = build_gamma_star(max(top, 1), params)
    d = sigma - delta
    src = [_r(d * i, n + i * sigma) for i in range(m + 1)]
    snk = [_r(n - k + d * j, n - k + j * sigma) for j in range(m + 1)]
    sub = star.induced_on_paths([star.labels[s] for s in src], [star.labels[s] for s in snk],
                                name=f"Gamma°_{m}[n={n},k={k},delta={delta},sigma={sigma},{star.name}]")
    sub.set_terminals(src, snk)
    return sub


def r_claim_value(star: PlanarNetwork, a: int, b: int, c: int, d: int) -> MultiPoly:
    """Total walk weight from R_a^(d) to R_b^(c) in a glued network."""
    acc = walk_weights_from(star, star.labels[_r(a, d)])
    return acc.get(star.labels[_r(b, c)], ZERO)


def contract_unit_chains(net: PlanarNetwork) -> PlanarNetwork:
    """Replace maximal chains through in/out-degree-1 vertices joined by weight-1 arcs with single arcs.

    Terminals and labelled R-vertices are kept.  Walk weights between kept
    vertices are unchanged.
    """
    out = net.out_arcs()
    indeg: dict = defaultdict(int)
    for (_, v) in net.arcs:
        indeg[v] += 1
    keep = set(net.sources) | set(net.sinks) | {v for lab, v in net.labels.items() if lab.startswith("R_")}

    def passthrough(v):
        arcs = out.get(v, [])
        return v not in keep and indeg[v] == 1 and len(arcs) == 1 and arcs[0][1] == 1

    res = PlanarNetwork(net.name + "[contracted]", strict=net.strict)
    for v in net.vertices:
        if not passthrough(v):
            res.add_vertex(v)
    for (u, v), w in net.arcs.items():
        if passthrough(u):
            continue
        while passthrough(v):
            v = out[v][0][0]
        if (u, v) in res.arcs:
            res.arcs[(u, v)] = res.arcs[(u, v)] + w
        else:
            res.add_arc(u, v, w)
    res.labels = {lab: v for lab, v in net.labels.items() if v in res.vertices}
    res.sources, res.sinks = list(net.sources), list(net.sinks)
    res.source_labels, res.sink_labels = list(net.source_labels), list(net.sink_labels)
    return res


# ---------------------------------------------------------------------------
# expected matrices


def expected_gamma(n: int, scheme: WeightScheme) -> PolyMatrix:
    from .matcore import build_P_tilde

    return build_P_tilde(scheme, n)


def expected_star(n: int, scheme: WeightScheme) -> PolyMatrix:
    return build_matrix_rec1(scheme, n, n).entries


def expected_diamond(n: int, k: int, scheme: WeightScheme) -> PolyMatrix:
    M = build_matrix_rec1(scheme, n, k).entries
    return PolyMatrix.build(k + 1, k + 1, lambda i, j: M[n, i - j] if i >= j else ZERO)


def expected_circ(m: int, n: int, k: int, delta: int, sigma: int, scheme: WeightScheme) -> PolyMatrix:
    M = build_matrix_rec1(scheme, n + m * delta, k + m * sigma).entries

    def entry(i, j):
        r, c = n + (i - j) * delta, k + (i - j) * sigma
        return M[r, c] if r >= 0 and c >= 0 else ZERO

    return PolyMatrix.build(m + 1, m + 1, entry)
