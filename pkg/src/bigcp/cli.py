"""Command-line front end; every command prints one JSON document on stdout.

Exit status: 0 success, 1 unparseable input, 2 violated precondition
(e.g. a parameter outside the zero-free region), 3 resource cap reached.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
import warnings

import numpy as np

from . import oracle
from .engine import EngineLimits, compute_power_sums
from .errors import BigcpError, ContractViolation, ParseError
from .graph import enumerate_connected_sets, pattern_dictionary, random_bounded_degree_graph, read_graph
from .models.clawfree import approx_independence_clawfree
from .models.edge_coloring import EdgeColoringModel, EdgeColoringWeights, approx_edge_coloring
from .models.independence import (
    IndependenceModel,
    approx_independence,
    approx_independence_even,
    lambda_star,
)
from .models.spin import SpinModel, SpinWeights, approx_spin
from .models.tutte import TutteModel, approx_tutte
from .series import coeffs_from_power_sums, taylor_order

COMMANDS = ("approx", "exact", "coeffs", "power-sums", "enumerate", "bench")
POLYNOMIALS = ("independence", "independence-even", "independence-clawfree", "tutte", "spin", "edge-coloring")
_COMPLEX_FLAGS = ("--lambda", "--q", "--w")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def parse_complex_arg(text: str) -> complex:
    """``"re"`` or ``"re,im"``."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ParseError(f"cannot read complex number {text!r}; use 're' or 're,im'")


def parse_sizes(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in re.split(r"[,\s]+", text.strip()) if s]
    except ValueError:
        raise ParseError(f"cannot read size list {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise ParseError("sizes must be positive integers")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bigcp", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--polynomial", "--model-name", dest="polynomial", choices=POLYNOMIALS, default="independence")
    p.add_argument("--graph", help="graph file ('p n' header, 'e u v' edges, optional 'c v color')")
    p.add_argument("--model", help="JSON model file for spin / edge-coloring")
    p.add_argument("--lambda", dest="lam", type=parse_complex_arg)
    p.add_argument("--q", type=parse_complex_arg)
    p.add_argument("--w", type=parse_complex_arg)
    p.add_argument("--epsilon", type=float, default=0.01)
    p.add_argument("--m", type=int, help="number of power sums / coefficients")
    p.add_argument("--k", type=int, default=3, help="largest set size for 'enumerate'")
    p.add_argument("--delta-margin", "--radius-margin", dest="delta", type=float,
                   help="zero-free margin for spin / edge-coloring (default 0.05)")
    p.add_argument("--tutte-K", dest="tutte_K", type=float)
    p.add_argument("--max-degree", type=int, help="declared degree bound")
    p.add_argument("--override-region-check", action="store_true")
    p.add_argument("--resource-cap", type=int, help="maximum number of connected sets")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--sizes", type=parse_sizes, default=[25, 50, 100, 200])
    p.add_argument("--edge-factor", type=float, default=0.4,
                   help="bench graphs get round(edge_factor * n) edges")
    p.add_argument("--no-timing", action="store_true", help="report elapsed times as null")
    return p


def _merge_negative_values(argv: list[str]) -> list[str]:
    # argparse would read "-0.1,0.2" as an option
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _COMPLEX_FLAGS and i + 1 < len(argv) and re.match(r"^-[\d.]", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _c(z) -> list[float]:
    z = complex(z)
    return [z.real + 0.0, z.imag + 0.0]


def _require(value, flag: str):
    if value is None:
        raise ParseError(f"{flag} is required here")
    return value


def _load_model(args):
    path = _require(args.model, "--model")
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read model file: {exc}") from None
    model = (SpinModel if args.polynomial == "spin" else EdgeColoringModel).from_json(text)
    if args.delta is not None:
        model.delta = args.delta
    return model


def _load_graph(args):
    path = _require(args.graph, "--graph")
    try:
        return read_graph(path)
    except OSError as exc:
        raise ParseError(f"cannot read graph file: {exc}") from None


def _limits(args) -> EngineLimits:
    if args.resource_cap is None:
        return EngineLimits()
    return EngineLimits(max_connected_sets=args.resource_cap)


def _result_json(res, args, warn) -> dict:
    return {
        "value": _c(res.value),
        "log_value": _c(res.log_value),
        "m": int(res.m),
        "power_sums": [_c(x) for x in res.power_sums],
        "epsilon": res.epsilon,
        "elapsed_ms": None if args.no_timing else res.elapsed * 1e3,
        "warnings": list(dict.fromkeys(list(res.warnings) + warn)),
    }


def cmd_approx(args, warn):
    G = _load_graph(args)
    poly, eps, limits = args.polynomial, args.epsilon, _limits(args)
    if poly == "independence":
        res = approx_independence(G, _require(args.lam, "--lambda"), eps, args.max_degree, limits=limits)
    elif poly == "independence-even":
        res = approx_independence_even(G, _require(args.lam, "--lambda"), eps, args.max_degree, limits=limits)
    elif poly == "independence-clawfree":
        res = approx_independence_clawfree(G, _require(args.lam, "--lambda"), eps, args.max_degree, limits=limits)
    elif poly == "tutte":
        res = approx_tutte(G, _require(args.q, "--q"), _require(args.w, "--w"), eps, args.max_degree,
                           K=args.tutte_K, limits=limits)
    elif poly == "spin":
        res = approx_spin(G, _load_model(args), eps, args.max_degree, args.override_region_check, limits=limits)
    else:
        res = approx_edge_coloring(G, _load_model(args), eps, args.max_degree, args.override_region_check,
                                   limits=limits)
    return _result_json(res, args, warn)


def cmd_exact(args, warn):
    G = _load_graph(args)
    poly = args.polynomial
    start = time.perf_counter()
    if poly in ("independence", "independence-clawfree"):
        value = oracle.exact_independence(G, _require(args.lam, "--lambda"))
    elif poly == "independence-even":
        lam = _require(args.lam, "--lambda")
        value = 0.5 * (oracle.exact_independence(G, lam) + oracle.exact_independence(G, -lam))
    elif poly == "tutte":
        value = oracle.exact_tutte(G, _require(args.q, "--q"), _require(args.w, "--w"))
    elif poly == "spin":
        value = oracle.exact_spin(G, _load_model(args))
    else:
        value = oracle.exact_edge_coloring(G, _load_model(args))
    elapsed = time.perf_counter() - start
    value = complex(value)
    return {
        "value": _c(value),
        "log_value": _c(np.log(value)) if value != 0 else None,
        "m": None,
        "power_sums": [],
        "epsilon": None,
        "elapsed_ms": None if args.no_timing else elapsed * 1e3,
        "warnings": warn,
    }


def _engine_setup(args, G):
    """Host graph and model weights for the normalized polynomial, with a default order."""
    poly = args.polynomial
    D = G.max_degree() if args.max_degree is None else args.max_degree
    if poly.startswith("independence"):
        return G, IndependenceModel(), max(G.n, 1)
    if poly == "tutte":
        return G, TutteModel(_require(args.w, "--w"), max(D, 1)), max(G.n, 1)
    model = _load_model(args)
    if poly == "spin":
        J = np.ones((model.k, model.k))
        return G.with_edge_ids(), SpinWeights(model.k, [model.matrix(u, v) - J for u, v in G.edges]), max(G.m, 1)
    return G.with_vertex_ids(), EdgeColoringWeights(model, D), max(G.n, 1)


def cmd_series(args, warn, coeffs: bool):
    G = _load_graph(args)
    host, model, default_m = _engine_setup(args, G)
    m = default_m if args.m is None else args.m
    if m < 0:
        raise ContractViolation("--m must be non-negative")
    start = time.perf_counter()
    p = compute_power_sums(host, model, m, limits=_limits(args))
    elapsed = time.perf_counter() - start
    out = {
        "value": None,
        "log_value": None,
        "m": m,
        "power_sums": [_c(x) for x in p],
        "epsilon": None,
        "elapsed_ms": None if args.no_timing else elapsed * 1e3,
        "warnings": warn,
    }
    if coeffs:
        out["coeffs"] = [_c(x) for x in coeffs_from_power_sums(p, m)]
    return out


def cmd_enumerate(args, warn):
    G = _load_graph(args)
    if args.k < 1:
        raise ContractViolation("--k must be at least 1")
    start = time.perf_counter()
    sets = enumerate_connected_sets(G, args.k)
    flavor = "vertex-colored" if G.vertex_color is not None else "plain"
    classes = [
        {"vertices": rep.n, "edges": [list(e) for e in rep.edges], "count": count}
        for rep, count in pattern_dictionary(G, args.k, flavor).values()
    ]
    elapsed = time.perf_counter() - start
    return {
        "k": args.k,
        "sets": [list(s) for s in sets],
        "classes": classes,
        "elapsed_ms": None if args.no_timing else elapsed * 1e3,
        "warnings": warn,
    }


def cmd_bench(args, warn):
    if args.polynomial != "independence":
        raise ContractViolation("bench supports the independence polynomial only")
    lam = args.lam if args.lam is not None else 0.1
    D = 3 if args.max_degree is None else args.max_degree
    eps = args.epsilon
    rows = []
    for n in args.sizes:
        rng = np.random.default_rng([args.seed, n])
        G = random_bounded_degree_graph(n, D, round(args.edge_factor * n), rng)
        res = approx_independence(G, lam, eps, D, limits=_limits(args))
        row = {
            "n": n,
            "edges": G.m,
            "m_order": res.m,
            "m_formula": taylor_order(lam, lambda_star(D), n, eps),
            "elapsed_ms": None if args.no_timing else res.elapsed * 1e3,
            "value": _c(res.value),
            "rel_error": None,
            "oracle_ms": None,
        }
        if n <= oracle.LIMITS.max_independence_vertices - 5:
            t0 = time.perf_counter()
            exact = oracle.exact_independence(G, lam)
            row["oracle_ms"] = None if args.no_timing else (time.perf_counter() - t0) * 1e3
            row["rel_error"] = abs(res.value / exact - 1)
        rows.append(row)
    return rows


def run(argv: list[str] | None = None) -> tuple[int, object]:
    """Execute one command; returns the exit status and the JSON-ready payload (or an error message)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_merge_negative_values(argv))
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            warn: list[str] = []
            if args.command == "approx":
                payload = cmd_approx(args, warn)
            elif args.command == "exact":
                payload = cmd_exact(args, warn)
            elif args.command in ("coeffs", "power-sums"):
                payload = cmd_series(args, warn, coeffs=args.command == "coeffs")
            elif args.command == "enumerate":
                payload = cmd_enumerate(args, warn)
            else:
                payload = cmd_bench(args, warn)
        if isinstance(payload, dict):
            extra = [str(w.message) for w in caught]
            payload["warnings"] = list(dict.fromkeys(list(payload.get("warnings", [])) + extra))
        return 0, payload
    except BigcpError as exc:
        return exc.exit_code, f"{type(exc).__name__}: {exc}"


def main(argv: list[str] | None = None) -> int:
    code, payload = run(argv)
    if code == 0:
        print(json.dumps(payload))
    else:
        print(f"bigcp: {payload}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
