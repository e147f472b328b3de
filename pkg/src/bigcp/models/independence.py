"""Independence polynomial: univariate, even-cardinality and multivariate forms."""

from __future__ import annotations

import time
from typing import Mapping, Sequence

import numpy as np

from ..engine import DEFAULT_LIMITS, BigcpModel, EngineLimits, compute_power_sums
from ..errors import InvalidInputError, OutOfRegionError
from ..graph import Flavor, Multigraph
from ..series import ApproxResult, evaluate_truncated, taylor_order


def lambda_star(max_deg: int) -> float:
    """Radius ``(D-1)^(D-1) / D^D`` of the zero-free disk for maximum degree ``D``.

    Degree 0 is treated as degree 1 (the root of ``1 + z`` sits at ``-1``).
    """
    D = max(int(max_deg), 1)
    return (D - 1) ** (D - 1) / D**D


def check_simple(G: Multigraph) -> None:
    if G.has_loops():
        raise InvalidInputError("independence polynomial needs a graph without loops")
    if G.has_parallel_edges():
        raise InvalidInputError("independence polynomial needs a graph without parallel edges")


class IndependenceModel(BigcpModel):
    """``lambda_{H,i}`` is the product of the vertex weights when ``H`` is edgeless on ``i`` vertices.

    ``weights`` maps vertex colors to complex weights (multivariate form);
    without it every vertex has weight 1.
    """

    alpha = 1
    beta = 1.0

    def __init__(self, weights: Mapping[int, complex] | Sequence[complex] | None = None):
        if weights is None:
            self.weights = None
            self.flavor = Flavor.PLAIN
        else:
            if isinstance(weights, Mapping):
                weights = [weights[c] for c in range(max(weights) + 1)] if weights else []
            self.weights = np.asarray(weights, dtype=complex)
            self.flavor = Flavor.VERTEX_COLORED

    def _z(self, color: int) -> complex:
        if self.weights is None:
            return 1.0
        if not 0 <= color < self.weights.size:
            raise InvalidInputError(f"no weight for vertex color {color}")
        return self.weights[color]

    def max_index(self, G, vertices) -> int:
        return len(vertices)

    def size_constraint(self, pattern, i: int) -> bool:
        return pattern.n == i

    def pattern_series(self, pattern) -> np.ndarray:
        out = np.zeros(pattern.n + 1, dtype=complex)
        if pattern.m == 0:
            out[pattern.n] = np.prod([self._z(pattern.color_of(v)) for v in range(pattern.n)])
        return out

    def subset_tables(self, G, verts, lnbr, width):
        B, h = verts.shape
        indep = np.ones((B, 1), dtype=bool)
        val = np.ones((B, 1), dtype=complex)
        for j in range(h):
            lower = np.arange(1 << j, dtype=np.int64)
            ok = indep & ((lower[None, :] & lnbr[:, j : j + 1]) == 0)
            if self.weights is None:
                zj = np.ones((B, 1), dtype=complex)
            else:
                cols = np.array([[G.color_of(int(v)) for v in row] for row in verts[:, j : j + 1]])
                zj = np.vectorize(self._z, otypes=[complex])(cols)
            indep = np.concatenate([indep, ok], axis=1)
            val = np.concatenate([val, val * zj], axis=1)
        size = 1 << h
        pop = np.array([bin(u).count("1") for u in range(size)])
        tab = np.zeros((B, size, width), dtype=complex)
        keep = pop < width
        cols = np.arange(size)[keep]
        tab[:, cols, pop[keep]] = np.where(indep[:, keep], val[:, keep], 0)
        return tab


def _finish(res: ApproxResult, eps: float, start: float, warnings=()) -> ApproxResult:
    res.epsilon = eps
    res.elapsed = time.perf_counter() - start
    res.warnings.extend(warnings)
    return res


def _trivial(eps: float, start: float) -> ApproxResult:
    res = evaluate_truncated(1.0, [], 0.0)
    res.m = 0
    return _finish(res, eps, start)


def _degree_bound(G: Multigraph, max_deg: int | None) -> int:
    D = G.max_degree()
    if max_deg is None:
        return D
    if D > max_deg:
        raise InvalidInputError(f"graph has maximum degree {D} > declared bound {max_deg}")
    return max_deg


def approx_independence(
    G: Multigraph,
    lam: complex,
    eps: float,
    max_deg: int | None = None,
    m: int | None = None,
    limits: EngineLimits = DEFAULT_LIMITS,
) -> ApproxResult:
    """Multiplicative ``eps``-approximation of ``Z(G)(lam)`` for ``|lam| < lambda_star``."""
    start = time.perf_counter()
    check_simple(G)
    D = _degree_bound(G, max_deg)
    M = lambda_star(D)
    if abs(lam) >= M:
        raise OutOfRegionError(f"|lambda| = {abs(lam):.6g} >= lambda*({D}) = {M:.6g}")
    if G.n == 0:
        return _trivial(eps, start)
    if m is None:
        m = taylor_order(lam, M, G.n, eps)
    p = compute_power_sums(G, IndependenceModel(), m, limits=limits)
    return _finish(evaluate_truncated(1.0, p, lam), eps, start)


def approx_independence_even(
    G: Multigraph,
    lam: float,
    eps: float,
    max_deg: int | None = None,
    limits: EngineLimits = DEFAULT_LIMITS,
) -> ApproxResult:
    """Approximation of the even-cardinality sum ``(Z(lam) + Z(-lam)) / 2`` for real ``lam``.

    Both terms are positive on the real segment of the disk, so half the sum
    of two ``eps/2``-approximations is an ``eps``-approximation.
    """
    start = time.perf_counter()
    lam_c = complex(lam)
    if lam_c.imag != 0:
        raise OutOfRegionError("even-cardinality form is defined for real lambda only")
    lam = lam_c.real
    check_simple(G)
    D = _degree_bound(G, max_deg)
    M = lambda_star(D)
    if not 0 <= lam < M:
        raise OutOfRegionError(f"lambda must lie in [0, {M:.6g})")
    plus = approx_independence(G, lam, eps / 2, D, limits=limits)
    minus = approx_independence(G, -lam, eps / 2, D, limits=limits)
    value = 0.5 * (plus.value + minus.value)
    res = ApproxResult(
        value=value,
        log_value=complex(np.log(complex(value))),
        m=max(plus.m, minus.m),
        power_sums=plus.power_sums,
    )
    return _finish(res, eps, start)


def approx_independence_multivariate(
    G: Multigraph,
    z: Mapping[int, complex] | Sequence[complex],
    eps: float,
    max_deg: int | None = None,
    limits: EngineLimits = DEFAULT_LIMITS,
) -> ApproxResult:
    """Approximation of ``sum_I prod_{v in I} z_v`` with ``|z_v| < lambda_star``.

    Each vertex gets its own color and the polynomial ``lam -> Z(G)(lam z)``
    is evaluated at ``lam = 1`` inside the disk of radius ``lambda_star / max |z_v|``.
    """
    start = time.perf_counter()
    check_simple(G)
    if isinstance(z, Mapping):
        z = [z.get(v, 0) for v in range(G.n)]
    z = np.asarray(z, dtype=complex)
    if z.size != G.n:
        raise InvalidInputError("need one weight per vertex")
    D = _degree_bound(G, max_deg)
    M = lambda_star(D)
    zmax = float(np.abs(z).max(initial=0.0))
    if zmax >= M:
        raise OutOfRegionError(f"max |z_v| = {zmax:.6g} >= lambda*({D}) = {M:.6g}")
    if G.n == 0 or zmax == 0:
        return _trivial(eps, start)
    m = taylor_order(1.0, M / zmax, G.n, eps)
    p = compute_power_sums(G.with_vertex_ids(), IndependenceModel(z), m, limits=limits)
    return _finish(evaluate_truncated(1.0, p, 1.0), eps, start)
