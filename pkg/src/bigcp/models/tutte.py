"""Random-cluster form of the Tutte polynomial, ``Z_T(G)(q, w) = sum_A q^k(A) w^|A|``."""

from __future__ import annotations

import cmath
import time

import numpy as np

from ..engine import DEFAULT_LIMITS, BigcpModel, EngineLimits, compute_power_sums
from ..errors import InvalidInputError, MissingConstantError, OutOfRegionError, ResourceLimitError
from ..graph import Flavor, Multigraph
from ..series import ApproxResult, evaluate_truncated, taylor_order

# zero-free radius constant per unit degree, valid when |1 + w| <= 1
K_PER_DEGREE = 6.91
MAX_PATTERN_EDGES = 22


def spanning_forest_table(pattern: Multigraph):
    """Edge count and rank of every edge subset of ``pattern``, plus a flag for full vertex coverage.

    Built by doubling over the edges while tracking component labels, so
    the cost is ``2^|E| * |V|``.
    """
    h, E = pattern.n, pattern.edges
    if len(E) > MAX_PATTERN_EDGES:
        raise ResourceLimitError(f"pattern with {len(E)} edges exceeds the cap {MAX_PATTERN_EDGES}")
    labels = np.arange(h, dtype=np.int16)[None, :]
    count = np.zeros(1, dtype=np.int64)
    cover = np.zeros(1, dtype=np.int64)
    for u, v in E:
        lu = labels[:, u : u + 1]
        lv = labels[:, v : v + 1]
        merged = np.where(labels == lv, lu, labels)
        labels = np.concatenate([labels, merged])
        count = np.concatenate([count, count + 1])
        cover = np.concatenate([cover, cover | (1 << u) | (1 << v)])
    ncomp = (labels == np.arange(h, dtype=np.int16)[None, :]).sum(axis=1)
    return count, h - ncomp, cover == (1 << h) - 1


class TutteModel(BigcpModel):
    """``lambda_{H,k} = sum w^|F|`` over spanning ``F`` without isolated vertices and of rank ``k``."""

    alpha = 2
    flavor = Flavor.PLAIN

    def __init__(self, w: complex, max_deg: int = 3):
        self.w = complex(w)
        self.beta = 2.0 ** max_deg

    def max_index(self, G, vertices) -> int:
        return max(len(vertices) - 1, 0)

    def size_constraint(self, pattern, i: int) -> bool:
        return pattern.n <= 2 * i

    def pattern_series(self, pattern) -> np.ndarray:
        if pattern.has_loops():
            raise InvalidInputError("Tutte patterns must be loopless")
        h = pattern.n
        out = np.zeros(max(h, 1), dtype=complex)
        if h == 0:
            out[0] = 1
            return out
        count, rank, covered = spanning_forest_table(pattern)
        np.add.at(out, rank[covered], self.w ** count[covered])
        return out


def approx_tutte(
    G: Multigraph,
    q: complex,
    w: complex,
    eps: float,
    max_deg: int | None = None,
    K: float | None = None,
    m: int | None = None,
    limits: EngineLimits = DEFAULT_LIMITS,
) -> ApproxResult:
    """Multiplicative ``eps``-approximation of ``Z_T(G)(q, w)`` for ``|q| > K``.

    Works with ``p_T(z) = z^n Z_T(G)(1/z, w)`` at ``z = 1/q`` inside the disk
    of radius ``1/K`` and multiplies the result by ``q^n``.
    """
    start = time.perf_counter()
    if G.has_loops():
        raise InvalidInputError("Tutte approximation needs a loopless multigraph")
    D = G.max_degree()
    if max_deg is not None:
        if D > max_deg:
            raise InvalidInputError(f"graph has maximum degree {D} > declared bound {max_deg}")
        D = max_deg
    q, w = complex(q), complex(w)
    if K is None:
        if abs(1 + w) > 1:
            raise MissingConstantError(
                "|1 + w| > 1: no default zero-free constant; pass K explicitly"
            )
        K = K_PER_DEGREE * max(D, 1)
    if abs(q) <= K:
        raise OutOfRegionError(f"|q| = {abs(q):.6g} must exceed K = {K:.6g}")
    if G.n == 0:
        res = evaluate_truncated(1.0, [], 0.0)
        res.m = 0
    else:
        if m is None:
            m = taylor_order(1 / q, 1 / K, G.n, eps)
        p = compute_power_sums(G, TutteModel(w, max(D, 1)), m, limits=limits)
        res = evaluate_truncated(1.0, p, 1 / q).rescaled(G.n * cmath.log(q))
    res.epsilon = eps
    res.elapsed = time.perf_counter() - start
    return res
