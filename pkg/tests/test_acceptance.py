"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import cmath
import math
import time
from collections import Counter

import networkx as nx
import numpy as np
import pytest

from bigcp import oracle
from bigcp.cli import main as cli_main
from bigcp.engine import compute_power_sums
from bigcp.graph import (
    Multigraph,
    count_connected_bound,
    disjoint_union,
    enumerate_connected_sets,
    line_graph,
    random_bounded_degree_graph,
)
from bigcp.models.clawfree import ClawFreeTransform, approx_independence_clawfree, choose_rho
from bigcp.models.edge_coloring import EDGE_REGION, EdgeColoringModel, EdgeColoringWeights, approx_edge_coloring, compositions
from bigcp.models.independence import IndependenceModel, approx_independence, lambda_star
from bigcp.models.spin import SPIN_REGION, SpinModel, SpinWeights, approx_spin
from bigcp.models.tutte import TutteModel, approx_tutte
from bigcp.series import approx_matches, coeffs_from_power_sums, power_sums_from_coeffs

REPORT: list[str] = []


def report(number: int, ok: bool, title: str, detail: str, elapsed: float) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail} | {elapsed:.2f}s"
    REPORT.append(line)
    print(line)


def uniform_disk(rng, radius: float) -> complex:
    r = radius * math.sqrt(rng.uniform())
    return r * cmath.exp(1j * rng.uniform(-math.pi, math.pi))


def from_nx(g) -> Multigraph:
    idx = {v: i for i, v in enumerate(sorted(g.nodes))}
    return Multigraph(len(idx), tuple((idx[u], idx[v]) for u, v in g.edges))


def connected_catalog(n_max: int, max_deg: int | None = None) -> list[Multigraph]:
    out = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == 0 or g.number_of_nodes() > n_max or not nx.is_connected(g):
            continue
        if max_deg is not None and max((d for _, d in g.degree), default=0) > max_deg:
            continue
        out.append(from_nx(g))
    return out


def random_multigraph(rng, n: int, n_edges: int, max_deg: int, loops: bool = False) -> Multigraph:
    """Edges drawn uniformly with repetition; pairs breaking the degree bound are rejected."""
    deg = [0] * n
    edges = []
    for _ in range(50 * max(n_edges, 1)):
        if len(edges) == n_edges:
            break
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v and not loops:
            continue
        add = 2 if u == v else 1
        if deg[u] + add > max_deg or deg[v] + (0 if u == v else 1) > max_deg:
            continue
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


def random_spin_model(rng, G: Multigraph, k: int = 2) -> SpinModel:
    radius = 0.999 * SPIN_REGION / max(G.max_degree(), 1)
    mats = {}
    for u, v in G.edges:
        A = np.ones((k, k), dtype=complex)
        for i in range(k):
            for j in range(i, k):
                A[i, j] = A[j, i] = 1 + uniform_disk(rng, radius)
        mats[(u, v)] = A
    return SpinModel(k, np.ones((k, k)), mats)


def random_edge_model(rng, G: Multigraph, k: int = 2) -> EdgeColoringModel:
    radius = 0.999 * EDGE_REGION / (G.max_degree() + 1)
    per_vertex = {}
    for v in range(G.n):
        entries = {c: 1 + uniform_disk(rng, radius) for c in compositions(G.degrees[v], k)}
        per_vertex[v] = {"entries": entries}
    return EdgeColoringModel(k, None, {}, per_vertex)


def padded(c, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=complex)
    c = np.asarray(c, dtype=complex)[:size]
    out[: c.size] = c
    return out


# ---------------------------------------------------------------------------


def criterion_1():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        d = int(rng.integers(0, 31))
        e = np.concatenate([[1], rng.uniform(-1, 1, d) + 1j * rng.uniform(-1, 1, d)])
        back = coeffs_from_power_sums(power_sums_from_coeffs(e, d), d)
        worst = max(worst, float(np.abs(back - e).max()))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 5
    report(1, ok, "Newton round trip", f"1000 prefixes, max err {worst:.2e} (tol 1e-9)", elapsed)
    return ok


def criterion_2():
    rng = np.random.default_rng(102)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(200):
        d = int(rng.integers(1, 11))
        zeta = rng.uniform(0.5, 2, d) * np.exp(1j * rng.uniform(-math.pi, math.pi, d))
        e = np.poly(1 / zeta)  # ascending coefficients of prod (1 - z/zeta)
        p = power_sums_from_coeffs(e, d)
        exact = np.array([(zeta ** -j).sum() for j in range(1, d + 1)])
        worst = max(worst, float(np.abs(p - exact).max()))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-8 and elapsed < 5
    report(2, ok, "root oracle agreement", f"200 polynomials, max err {worst:.2e} (tol 1e-8)", elapsed)
    return ok


def criterion_3():
    rng = np.random.default_rng(103)
    start = time.perf_counter()
    graphs = connected_catalog(7, 3)
    worst = Counter()
    for G in graphs:
        n = G.n
        p = compute_power_sums(G, IndependenceModel(), n)
        err = np.abs(coeffs_from_power_sums(p, n) - padded(oracle.exact_independence_coeffs(G), n + 1)).max()
        worst["independence"] = max(worst["independence"], err)

        p = compute_power_sums(G, TutteModel(-1, 3), n)
        err = np.abs(coeffs_from_power_sums(p, n) - padded(oracle.exact_tutte_inverted_coeffs(G, -1), n + 1)).max()
        worst["tutte"] = max(worst["tutte"], err)

        spin = random_spin_model(rng, G)
        B = [spin.matrix(u, v) - 1 for u, v in G.edges]
        p = compute_power_sums(G.with_edge_ids(), SpinWeights(2, B), n)
        err = np.abs(coeffs_from_power_sums(p, n) - padded(oracle.exact_spin_q_coeffs(G, spin), n + 1)).max()
        worst["spin"] = max(worst["spin"], err)

        edge = random_edge_model(rng, G)
        p = compute_power_sums(G.with_vertex_ids(), EdgeColoringWeights(edge, 3), n)
        err = np.abs(coeffs_from_power_sums(p, n) - padded(oracle.exact_edge_q_coeffs(G, edge), n + 1)).max()
        worst["edge-coloring"] = max(worst["edge-coloring"], err)
    elapsed = time.perf_counter() - start
    ok = max(worst.values()) <= 1e-7 and elapsed < 600
    errs = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    report(3, ok, "engine coefficients exact", f"{len(graphs)} connected graphs n<=7 D<=3; max err {errs} (tol 1e-7)", elapsed)
    return ok


def _cli_exit(args) -> int:
    import contextlib
    import io

    with contextlib.redirect_stdout(io.StringIO()), contextlib.redirect_stderr(io.StringIO()):
        return cli_main(args)


def criterion_4(tmp_path):
    rng = np.random.default_rng(104)
    start = time.perf_counter()
    passed, worst = 0, 0.0
    for _ in range(200):
        D = int(rng.integers(2, 5))
        n = int(rng.integers(1, 17))
        G = random_bounded_degree_graph(n, D, int(rng.integers(0, n * D // 2 + 1)), rng)
        lam = uniform_disk(rng, 0.9 * lambda_star(D))
        res = approx_independence(G, lam, 0.01, max_deg=D)
        exact = oracle.exact_independence(G, lam)
        passed += approx_matches(res.value, exact, 0.01)
        worst = max(worst, abs(cmath.log(exact / res.value)))
    # the disk is a hard boundary: lambda*(3) = 4/27 itself and points outside exit with status 2
    path = tmp_path / "cubic.txt"
    path.write_text("p 4\ne 0 1\ne 0 2\ne 0 3\ne 1 2\n")
    codes = [
        _cli_exit(["approx", "--graph", str(path), "--max-degree", "3", "--lambda", lam_text])
        for lam_text in ("0.148148148148149", "0,0.15", "-0.1,-0.12")
    ]
    inside = _cli_exit(["approx", "--graph", str(path), "--max-degree", "3", "--lambda", "0.14"])
    elapsed = time.perf_counter() - start
    ok = passed == 200 and codes == [2, 2, 2] and inside == 0 and elapsed < 300
    report(
        4, ok, "independence contract",
        f"{passed}/200 within eps=0.01 (max |log ratio| {worst:.1e}); out-of-disk exits {codes}, inside {inside}",
        elapsed,
    )
    return ok


def criterion_5():
    rng = np.random.default_rng(105)
    start = time.perf_counter()
    K = 6.91 * 3
    passed, worst_scale = 0, 0.0
    for _ in range(100):
        n = int(rng.integers(2, 11))
        G = random_multigraph(rng, n, int(rng.integers(0, 15)), 3)
        q = 1.1 * K * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
        res = approx_tutte(G, q, -1, 0.01, max_deg=3)
        exact = oracle.exact_tutte(G, q, -1)
        passed += approx_matches(res.value, exact, 0.01)
        # q^n p_T(1/q) = Z_T(q) on exact coefficients, and the engine result carries exactly n ln q
        inv = oracle.exact_tutte_inverted_coeffs(G, -1)
        lifted = q**G.n * np.polyval(inv[::-1], 1 / q)
        worst_scale = max(worst_scale, abs(lifted / exact - 1), abs(res.log_value - res.raw_log_value - G.n * cmath.log(q)))
    elapsed = time.perf_counter() - start
    ok = passed == 100 and worst_scale < 1e-9 and elapsed < 300
    report(5, ok, "Tutte contract", f"{passed}/100 within eps=0.01; rescaling identity err {worst_scale:.1e}", elapsed)
    return ok


def criterion_6():
    rng = np.random.default_rng(106)
    start = time.perf_counter()
    spin_ok = 0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        G = random_bounded_degree_graph(n, 3, int(rng.integers(0, n * 3 // 2 + 1)), rng)
        model = random_spin_model(rng, G)
        res = approx_spin(G, model, 0.01)
        spin_ok += approx_matches(res.value, oracle.exact_spin(G, model), 0.01)
    edge_ok = 0
    for _ in range(100):
        n = int(rng.integers(1, 9))
        G = random_multigraph(rng, n, int(rng.integers(0, 11)), 3, loops=True)
        model = random_edge_model(rng, G)
        res = approx_edge_coloring(G, model, 0.01)
        edge_ok += approx_matches(res.value, oracle.exact_edge_coloring(G, model), 0.01)
    elapsed = time.perf_counter() - start
    ok = spin_ok == 100 and edge_ok == 100 and elapsed < 600
    report(6, ok, "spin / edge-coloring contract", f"spin {spin_ok}/100, edge-coloring {edge_ok}/100 within eps=0.01", elapsed)
    return ok


def criterion_7():
    rng = np.random.default_rng(107)
    start = time.perf_counter()
    lams = (0.2, 0.2 + 0.1j, 0.3j)
    hosts = []
    while len(hosts) < 30:
        n = int(rng.integers(2, 11))
        base = random_bounded_degree_graph(n, 3, int(rng.integers(1, n * 3 // 2 + 1)), rng)
        L = line_graph(base) if base.m else None
        # the degree bound is imposed on the claw-free host itself
        if L is not None and L.max_degree() <= 3:
            hosts.append(L)
    passed, total, rhos = 0, 0, set()
    for L in hosts:
        for lam in lams:
            res = approx_independence_clawfree(L, lam, 0.05)
            passed += approx_matches(res.value, oracle.exact_independence(L, lam), 0.05)
            total += 1
            rhos.add(choose_rho(lam, L.max_degree()))
    inv_ok = True
    angles = np.linspace(-math.pi, math.pi, 181)
    for rho in sorted(rhos):
        T = ClawFreeTransform(rho)
        disk = np.concatenate([r * T.beta * np.exp(1j * angles) for r in (0.25, 0.5, 0.75, 1.0)])
        inv_ok &= T(0.0) == 0 and abs(T(1.0) - 1) <= 1e-9 and bool(T.in_strip(T(disk)).all())
    elapsed = time.perf_counter() - start
    ok = passed == total and inv_ok and elapsed < 600
    report(
        7, ok, "claw-free transform",
        f"{passed}/{total} within eps=0.05 on 30 line graphs; phi invariants {'hold' if inv_ok else 'violated'} for {len(rhos)} rho values",
        elapsed,
    )
    return ok


def criterion_8():
    rng = np.random.default_rng(108)
    start = time.perf_counter()
    worst = 0.0
    for _ in range(100):
        G1, G2 = (random_bounded_degree_graph(int(rng.integers(1, 9)), 3, int(rng.integers(0, 10)), rng) for _ in range(2))
        m = 8
        for model in (IndependenceModel(), TutteModel(-1, 3)):
            a = compute_power_sums(G1, model, m) + compute_power_sums(G2, model, m)
            b = compute_power_sums(disjoint_union(G1, G2), model, m)
            worst = max(worst, float((np.abs(a - b) / np.maximum(1, np.abs(b))).max()))
    graphs = connected_catalog(7)
    for _ in range(300):
        n = int(rng.integers(8, 13))
        D = int(rng.integers(1, 6))
        graphs.append(random_bounded_degree_graph(n, D, int(rng.integers(0, n * D // 2 + 1)), rng))
    violations, singles_ok = 0, True
    for G in graphs:
        D = G.max_degree()
        per_size = Counter()
        for S in enumerate_connected_sets(G, 5):
            for v in S:
                per_size[(v, len(S))] += 1
        singles_ok &= all(per_size[(v, 1)] == 1 for v in range(G.n))
        violations += sum(1 for (v, k), c in per_size.items() if k >= 2 and c > count_connected_bound(D, k))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and violations == 0 and singles_ok
    report(
        8, ok, "additivity and enumeration bound",
        f"additivity rel err {worst:.1e} (tol 1e-9); {violations} bound violations for 2<=k<=5 on {len(graphs)} graphs, k=1 counts exactly 1",
        elapsed,
    )
    return ok


def criterion_9():
    import json
    import contextlib
    import io

    start = time.perf_counter()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["bench", "--sizes", "25,50,100,200", "--lambda", "0.1", "--epsilon", "0.01",
                         "--max-degree", "3", "--seed", "0"])
    rows = json.loads(buf.getvalue()) if code == 0 else []
    ns = np.array([r["n"] for r in rows], dtype=float)
    ts = np.array([max(r["elapsed_ms"], 1e-3) for r in rows])
    slope = float(np.polyfit(np.log(ns), np.log(ts), 1)[0]) if len(rows) == 4 else float("inf")
    C = 1 / (1 - 0.1 / lambda_star(3))
    m_err = max((abs(r["m_order"] - C * math.log(2 * r["n"] / 0.01)) for r in rows), default=float("inf"))
    growth = (rows[-1]["m_order"] - rows[0]["m_order"]) - C * math.log(200 / 25) if rows else float("inf")
    t200 = rows[-1]["elapsed_ms"] / 1e3 if rows else float("inf")
    elapsed = time.perf_counter() - start
    ok = code == 0 and slope < 8 and t200 < 600 and m_err <= 1 and abs(growth) <= 1
    report(
        9, ok, "scaling sanity",
        f"slope {slope:.2f} (<8), n=200 in {t200:.2f}s, max |m - C ln(2n/eps)| {m_err:.2f}, m growth vs C ln 8 off by {growth:+.2f}",
        elapsed,
    )
    return ok


# ---------------------------------------------------------------------------


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(number, tmp_path):
    fn = globals()[f"criterion_{number}"]
    ok = fn(tmp_path) if number == 4 else fn()
    assert ok, REPORT[-1]


if __name__ == "__main__":
    import pathlib
    import tempfile

    results = []
    for number in range(1, 10):
        fn = globals()[f"criterion_{number}"]
        with tempfile.TemporaryDirectory() as d:
            results.append(fn(pathlib.Path(d)) if number == 4 else fn())
    print(f"{sum(results)}/{len(results)} criteria passed")
