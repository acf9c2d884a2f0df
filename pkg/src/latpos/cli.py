"""Command-line front end.

Exit codes: 0 every requested check passed, 1 a check failed (a witness is
printed), 2 usage or configuration error, 3 a resource cap or size guard
was hit.  Errors are printed as ``{"code", "message", "witness"?}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from . import battery
from .catalog import CATALOG, catalog_scheme
from .errors import BadParameters, LatposError
from .lgvnet import (
    GeneralParams,
    build_gamma,
    build_gamma_circ,
    build_gamma_diamond,
    build_gamma_star,
    expected_circ,
    expected_diamond,
    expected_gamma,
    expected_star,
    lgv_verify_all,
    walk_matrix,
)
from .matcore import (
    build_A_matrix,
    bidiagonal_embedding,
    build_P_matrix,
    check_size_guard,
    factor_recipe,
    is_tp_order,
    toeplitz,
)
from .pathmodel import WeightScheme, build_matrix_rec1, build_truncation, scheme_from_json
from .polyalg import parse, render
from .riordan import (
    ConstantScheme,
    bivariate_gf_check,
    explicit_entry,
    riordan_entry,
    riordan_from_scheme,
)
from .seqprops import (
    PolySequence,
    extract,
    is_polya_frequency_finite,
    log_concavity_depth,
    pf_via_real_roots,
    toeplitz_pf,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    catalog: str | None = None
    params: dict = field(default_factory=dict)
    scheme_doc: dict | None = None
    rows: int = 6
    cols: int = 6
    fmt: str = "json"
    order: int = 4
    seed: int = battery.DEFAULT_SEED
    extra: dict = field(default_factory=dict)

    def scheme(self) -> WeightScheme:
        if self.scheme_doc is not None:
            if self.catalog:
                raise BadParameters("give either --catalog or --scheme, not both")
            return scheme_from_json(self.scheme_doc)
        if not self.catalog:
            raise BadParameters("a scheme is required: --catalog NAME or --scheme FILE")
        return catalog_scheme(self.catalog, self.params)[0]


# ---------------------------------------------------------------------------
# helpers


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _parse_params(items: Sequence[str]) -> dict:
    out = {}
    for item in items or ():
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise BadParameters(f"--param expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _load_scheme_doc(src: str | None) -> dict | None:
    if src is None:
        return None
    text = src if src.lstrip().startswith("{") else Path(src).read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BadParameters(f"scheme document is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise BadParameters("scheme document must be a JSON object")
    return doc


def _poly_list(text: str | None) -> list | None:
    if text is None:
        return None
    try:
        return [parse(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise BadParameters(str(exc)) from exc


def _positive(name: str, v: int) -> int:
    if v < 1:
        raise BadParameters(f"{name} must be >= 1")
    return v


def _sequence(cfg: RunConfig, scheme: WeightScheme) -> PolySequence:
    x = cfg.extra
    window = x.get("window") or 6
    if x.get("row") is not None:
        n = x["row"]
        count = x.get("terms") or max(window, n + 1)
        tri = build_truncation(scheme, n, count - 1)
        return extract(tri, "row", count, n=n)
    if x.get("column") is not None:
        k = x["column"]
        count = x.get("terms") or window
        start = scheme.t * k if scheme.orientation == "M" else 0
        tri = build_truncation(scheme, start + count - 1, k)
        col = extract(tri, "column", start + count, k=k)
        return PolySequence(col.terms[start:], f"column {k}", False)
    if x.get("diagonal") is not None:
        try:
            n, k, delta, sigma = (int(v) for v in x["diagonal"].split(","))
        except ValueError as exc:
            raise BadParameters("--diagonal expects n,k,delta,sigma") from exc
        count = x.get("terms") or window
        tri = build_truncation(scheme, n + delta * (count - 1), k + sigma * (count - 1))
        return extract(tri, "diagonal", count, n=n, k=k, delta=delta, sigma=sigma)
    raise BadParameters("choose one of --row, --column, --diagonal")


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(cfg: RunConfig) -> int:
    s = cfg.scheme()
    tri = build_truncation(s, _positive("--rows", cfg.rows) - 1, _positive("--cols", cfg.cols) - 1)
    if cfg.fmt == "csv":
        sys.stdout.write(tri.entries.to_csv())
    else:
        _emit({"scheme": s.to_json(), "orientation": tri.orientation, "rows": cfg.rows, "cols": cfg.cols,
               "entries": tri.entries.to_json()})
    return EXIT_OK


def cmd_tp(cfg: RunConfig) -> int:
    s = cfg.scheme()
    which = cfg.extra.get("matrix", "M")
    r, c = _positive("--rows", cfg.rows), _positive("--cols", cfg.cols)
    check_size_guard(r, c, not s.symbolic)  # before building: symbolic windows grow fast
    if which == "A":
        m = build_A_matrix(s, r)
    elif which == "P":
        m = build_P_matrix(s, r, c)
    else:
        m = build_truncation(s, r - 1, c - 1).entries
    rep = is_tp_order(m, cfg.order)
    _emit({"matrix": which, "rows": m.rows, "cols": m.cols, **rep.to_json(), "minors_checked": rep.minors_checked})
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_toeplitz(cfg: RunConfig) -> int:
    s = cfg.scheme()
    seq = _sequence(cfg, s)
    window = cfg.extra.get("window") or 6
    if not seq.complete and window > len(seq):
        raise BadParameters(f"window {window} needs {window} terms")
    m = toeplitz(seq.terms, window)
    rep = is_tp_order(m, cfg.order)
    out = {"sequence": seq.to_json(), "origin": seq.origin, "window": window, **rep.to_json()}
    if cfg.fmt == "csv":
        sys.stdout.write(m.to_csv())
    else:
        out["toeplitz"] = m.to_json()
        _emit(out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _network_params(cfg: RunConfig):
    x = cfg.extra
    alphas, betas = _poly_list(x.get("alphas")), _poly_list(x.get("betas"))
    t = x.get("t")
    if alphas is not None or betas is not None:
        if alphas is None or betas is None:
            raise BadParameters("--alphas and --betas go together")
        gamma = parse(x.get("gamma") or "1")
        gp = GeneralParams(alphas, betas, gamma, 1 if t is None else t)
        return gp, gp.scheme("general")
    if x.get("recipe"):
        a0, a2 = parse(x.get("a0") or "1"), parse(x.get("a2") or "1")
        s = factor_recipe(x["recipe"], a0, a2, t=1 if t is None else t, b=parse(x.get("gamma") or "1"))
        return s, s
    s = cfg.scheme()
    if getattr(s, "factors", None) is not None:
        return s, s
    if s.ell == 1:
        e = bidiagonal_embedding(s)
        return e, e
    raise BadParameters("network needs ell = 1, tridiagonal factor rules (--recipe) or linear factors (--alphas/--betas)")


def cmd_lgv(cfg: RunConfig) -> int:
    params, scheme = _network_params(cfg)
    x = cfg.extra
    kind = x.get("network", "star")
    n, k = x.get("n", 3), x.get("k", 2)
    if kind == "gamma":
        net, exp = build_gamma(n, params), expected_gamma(n, scheme)
    elif kind == "star":
        net, exp = build_gamma_star(n, params), expected_star(n, scheme)
    elif kind == "diamond":
        net, exp = build_gamma_diamond(n, k, params), expected_diamond(n, k, scheme)
    elif kind == "circ":
        if not isinstance(params, GeneralParams):
            raise BadParameters("diagonal networks need --alphas/--betas")
        m, d, sg = x.get("m", 1), x.get("delta", 1), x.get("sigma", 2)
        net, exp = build_gamma_circ(m, n, k, d, sg, params), expected_circ(m, n, k, d, sg, scheme)
    else:
        raise BadParameters(f"unknown network {kind!r}")
    W = walk_matrix(net)
    rep = lgv_verify_all(net, cfg.order)
    ok = W == exp and rep.passed
    out = {"network": net.name, "vertices": len(net.vertices), "arcs": len(net.arcs),
           "walk_matrix_matches": W == exp, "lgv": rep.to_json(), "passed": ok}
    if W != exp:
        out["walk_matrix"] = W.to_json()
        out["expected"] = exp.to_json()
    _emit(out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_riordan(cfg: RunConfig) -> int:
    x = cfg.extra
    alphas, betas = _poly_list(x.get("alphas")), _poly_list(x.get("betas"))
    if alphas is not None:
        if betas is None:
            raise BadParameters("--alphas and --betas go together")
        cs = ConstantScheme.from_factors(x.get("t") or 0, alphas, betas, parse(x.get("gamma") or "1"))
    else:
        cs = ConstantScheme.from_scheme(cfg.scheme())
        if cs.ell == 1:
            cs = ConstantScheme.from_factors(cs.t, [cs.a[1]], [cs.a[0]], cs.gamma)
        elif cs.ell == 0:
            cs = ConstantScheme(cs.t, 0, cs.a, cs.gamma, (), ())
    N = _positive("--rows", cfg.rows) - 1
    K = _positive("--cols", cfg.cols) - 1
    spec = riordan_from_scheme(cs, N)
    M = build_matrix_rec1(cs.weight_scheme(), N, K).entries
    mismatch = None
    for n in range(N + 1):
        for k in range(K + 1):
            vals = {"riordan": riordan_entry(spec, n, k), "recurrence": M[n, k]}
            if cs.has_factor_form:
                vals["explicit"] = explicit_entry(cs, n, k)
            if len(set(vals.values())) != 1:
                mismatch = {"n": n, "k": k, **{key: render(v) for key, v in vals.items()}}
                break
        if mismatch:
            break
    biv = bivariate_gf_check(cs, N, K)
    ok = mismatch is None and biv
    out = {"scheme": cs.to_json(), "riordan": spec.to_json(), "routes": ["riordan", "recurrence"]
           + (["explicit"] if cs.has_factor_form else []), "entries_agree": mismatch is None,
           "bivariate_gf": biv, "passed": ok}
    if mismatch:
        out["witness"] = mismatch
    _emit(out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_seq(cfg: RunConfig) -> int:
    s = cfg.scheme()
    seq = _sequence(cfg, s)
    x = cfg.extra
    out = {"sequence": seq.to_json(), "origin": seq.origin, "complete": seq.complete}
    ok = True
    if x.get("pf"):
        if seq.complete and seq.is_numeric():
            rep = toeplitz_pf(seq, cfg.order)
        else:
            rep = is_polya_frequency_finite(seq, x.get("window") or len(seq), cfg.order)
        out["pf"] = rep.passed
        if not rep.passed:
            out["witness"] = rep.to_json()["witness"]
        ok = ok and rep.passed
        if seq.complete and seq.is_numeric() and any(seq.ints()):
            out["real_rooted"] = pf_via_real_roots(seq)
    r = x.get("logconcave")
    if r is not None:
        depth = log_concavity_depth(seq, r)
        out["log_concavity_depth"] = depth
        ok = ok and depth >= r
    out["passed"] = ok
    _emit(out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(cfg: RunConfig) -> int:
    entries = [e.to_json() for e in CATALOG.values()]
    if cfg.fmt == "csv":
        sys.stdout.write("name,orientation,params,description\n")
        for e in entries:
            sys.stdout.write(f"{e['name']},{e['orientation']},{' '.join(e['params'])},\"{e['description']}\"\n")
    else:
        _emit(entries)
    return EXIT_OK


def _threads() -> int:
    raw = os.environ.get("LATPOS_THREADS", "1")
    try:
        n = int(raw)
    except ValueError as exc:
        raise BadParameters(f"LATPOS_THREADS must be an integer, got {raw!r}") from exc
    return max(1, n)


def cmd_verify_all(cfg: RunConfig) -> int:
    wanted = cfg.extra.get("criteria") or sorted(battery.CRITERIA)
    for c in wanted:
        if c not in battery.CRITERIA:
            raise BadParameters(f"unknown criterion {c}")
    workers = min(_threads(), len(wanted))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(battery.run_criterion, wanted, [cfg.seed] * len(wanted)))
    else:
        results = [battery.run_criterion(c, cfg.seed) for c in wanted]
    # ex.map preserves input order, so the report is identical for any worker count
    passed = all(r["passed"] for r in results)
    _emit({"seed": cfg.seed, "passed": passed, "criteria": results})
    return EXIT_OK if passed else EXIT_FAIL


COMMANDS = {
    "gen": cmd_gen,
    "tp": cmd_tp,
    "toeplitz": cmd_toeplitz,
    "lgv": cmd_lgv,
    "riordan": cmd_riordan,
    "seq": cmd_seq,
    "catalog": cmd_catalog,
    "verify-all": cmd_verify_all,
}


# ---------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latpos", description="Weighted lattice-path matrices and positivity checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def scheme_opts(sp):
        sp.add_argument("--catalog", help="catalog entry name")
        sp.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
        sp.add_argument("--scheme", help="scheme JSON file, or an inline JSON object")

    def size_opts(sp):
        sp.add_argument("--rows", type=int, default=6)
        sp.add_argument("--cols", type=int, default=6)

    def seq_opts(sp):
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--row", type=int)
        g.add_argument("--column", type=int)
        g.add_argument("--diagonal", metavar="N,K,DELTA,SIGMA")
        sp.add_argument("--terms", type=int, help="sequence length")
        sp.add_argument("--window", type=int, help="Toeplitz window")

    def fmt_opt(sp):
        sp.add_argument("--format", choices=("json", "csv"), default="json")

    sp = sub.add_parser("gen", help="print a truncation")
    scheme_opts(sp), size_opts(sp), fmt_opt(sp)

    sp = sub.add_parser("tp", help="check total positivity up to an order")
    scheme_opts(sp), size_opts(sp)
    sp.add_argument("--order", type=int, default=4)
    sp.add_argument("--matrix", choices=("M", "A", "P"), default="M")

    sp = sub.add_parser("toeplitz", help="Toeplitz matrix of a row, column or diagonal, with a TP check")
    scheme_opts(sp), seq_opts(sp), fmt_opt(sp)
    sp.add_argument("--order", type=int, default=4)

    sp = sub.add_parser("lgv", help="build a planar network and verify walk and LGV identities")
    scheme_opts(sp)
    sp.add_argument("--network", choices=("gamma", "star", "diamond", "circ"), default="star")
    for name, default in (("n", 3), ("k", 2), ("m", 1), ("delta", 1), ("sigma", 2)):
        sp.add_argument(f"--{name}", type=int, default=default)
    sp.add_argument("--t", type=int)
    sp.add_argument("--alphas", help="comma-separated alpha_j")
    sp.add_argument("--betas", help="comma-separated beta_j")
    sp.add_argument("--gamma", help="constant b")
    sp.add_argument("--recipe", choices=("i", "ii", "iii", "iv"))
    sp.add_argument("--a0")
    sp.add_argument("--a2")
    sp.add_argument("--order", type=int, default=3)

    sp = sub.add_parser("riordan", help="compare Riordan, explicit and recurrence routes")
    scheme_opts(sp), size_opts(sp)
    sp.add_argument("--t", type=int)
    sp.add_argument("--alphas")
    sp.add_argument("--betas")
    sp.add_argument("--gamma")

    sp = sub.add_parser("seq", help="PF and log-concavity report for a sequence")
    scheme_opts(sp), seq_opts(sp)
    sp.add_argument("--pf", action="store_true")
    sp.add_argument("--logconcave", type=int, metavar="R")
    sp.add_argument("--order", type=int, default=4)

    sp = sub.add_parser("catalog", help="list catalog entries")
    fmt_opt(sp)

    sp = sub.add_parser("verify-all", help="run the full verification battery")
    sp.add_argument("--seed", type=int, default=battery.DEFAULT_SEED)
    sp.add_argument("--criteria", help="comma-separated subset, e.g. 1,2,6")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.command)
    cfg.catalog = getattr(ns, "catalog", None)
    cfg.params = _parse_params(getattr(ns, "param", None))
    cfg.scheme_doc = _load_scheme_doc(getattr(ns, "scheme", None))
    cfg.rows = getattr(ns, "rows", cfg.rows)
    cfg.cols = getattr(ns, "cols", cfg.cols)
    cfg.fmt = getattr(ns, "format", "json")
    cfg.seed = getattr(ns, "seed", cfg.seed)
    order = getattr(ns, "order", None)
    if order is not None:
        if order < 1:
            raise BadParameters("--order must be >= 1")
        cfg.order = order
    skip = {"command", "catalog", "param", "scheme", "rows", "cols", "format", "seed", "order"}
    cfg.extra = {k: v for k, v in vars(ns).items() if k not in skip}
    if ns.command == "verify-all" and ns.criteria:
        try:
            cfg.extra["criteria"] = [int(c) for c in ns.criteria.split(",")]
        except ValueError as exc:
            raise BadParameters("--criteria expects comma-separated integers") from exc
    return cfg


def run(cfg: RunConfig) -> int:
    return COMMANDS[cfg.command](cfg)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return run(config_from_args(ns))
    except LatposError as exc:
        err = {"code": exc.code, "message": str(exc)}
        if exc.witness is not None:
            err["witness"] = exc.witness
        _emit({"error": err})
        return exc.exit_code
    except OverflowError as exc:
        _emit({"error": {"code": "cap_exceeded", "message": str(exc)}})
        return EXIT_CAP
    except OSError as exc:
        _emit({"error": {"code": "io_error", "message": str(exc)}})
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
