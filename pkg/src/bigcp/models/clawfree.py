"""Independence polynomial of claw-free graphs away from the negative real axis.

The roots of ``Z(G)`` for claw-free ``G`` are real and below
``-1/(e(D-1))``.  Composing with the polynomial ``phi_rho`` maps a disk of
radius ``beta(rho) > 1`` into a thin strip, so ``g(z) = Z(G)(lam phi_rho(z))``
is root-free on that disk and ``g(1) = Z(G)(lam)`` can be approximated from
the power sums of ``g``.
"""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from ..engine import DEFAULT_LIMITS, EngineLimits, compute_power_sums
from ..errors import InvalidInputError, OutOfRegionError, ResourceLimitError
from ..graph import Multigraph
from ..series import (
    ApproxResult,
    coeffs_from_power_sums,
    compose_truncate,
    evaluate_truncated,
    power_sums_from_coeffs,
    taylor_order,
)
from .independence import IndependenceModel, check_simple

RHO_MAX = 0.9
MAX_N = 10_000_000
MAX_M = 50_000


@dataclass(frozen=True)
class ClawFreeTransform:
    """The polynomial ``phi(z) = sigma^-1 sum_{i=1}^N (alpha z)^i / i`` for a given ``rho``."""

    rho: float

    def __post_init__(self):
        if not 0 < self.rho < 1:
            raise InvalidInputError("rho must lie in (0, 1)")

    @property
    def alpha(self) -> float:
        return -math.expm1(-1 / self.rho)

    @property
    def beta(self) -> float:
        return -math.expm1(-1 - 1 / self.rho) / -math.expm1(-1 / self.rho)

    @property
    def N(self) -> int:
        x = 1 + 1 / self.rho
        return math.floor(x * math.exp(x))

    @property
    def sigma(self) -> float:
        """``sum_{i<=N} alpha^i / i`` as ``1/rho`` minus the tail past ``N``.

        ``-ln(1 - alpha) = 1/rho`` exactly; tail terms are added only while
        they still change the result.
        """
        a, N = self.alpha, self.N
        log_a = math.log(a)
        total = 1 / self.rho
        tail = 0.0
        i = N + 1
        while True:
            term = math.exp(i * log_a) / i
            if term <= 1e-18 * total:
                break
            tail += term
            i += 1
        return total - tail

    def sigma_direct(self) -> float:
        a = self.alpha
        i = np.arange(1, self.N + 1)
        return float(np.sum(np.exp(i * math.log(a)) / i))

    def prefix(self, m: int) -> np.ndarray:
        """Coefficients ``phi_0..phi_m`` (zero past degree ``N``)."""
        out = np.zeros(m + 1)
        top = min(m, self.N)
        i = np.arange(1, top + 1)
        out[1 : top + 1] = np.exp(i * math.log(self.alpha)) / i / self.sigma
        return out

    def __call__(self, z):
        """Full polynomial evaluated by Horner's rule."""
        z = np.asarray(z, dtype=complex)
        coef = self.prefix(self.N)
        acc = np.zeros_like(z)
        for c in coef[:0:-1]:
            acc = (acc + c) * z
        return acc

    def in_strip(self, w) -> np.ndarray:
        """Membership in ``{-rho <= Re <= 1 + 2 rho, |Im| <= 2 rho}``."""
        w = np.asarray(w, dtype=complex)
        r = self.rho
        return (w.real >= -r) & (w.real <= 1 + 2 * r) & (np.abs(w.imag) <= 2 * r)


def find_claw(G: Multigraph):
    """A vertex with three pairwise non-adjacent neighbours, or ``None``."""
    for v in range(G.n):
        nbrs = sorted(G.adjacency[v])
        for a, b, c in combinations(nbrs, 3):
            adj = G.adjacency
            if b not in adj[a] and c not in adj[a] and c not in adj[b]:
                return v, (a, b, c)
    return None


def choose_rho(lam: complex, max_deg: int) -> float:
    """``1/(9 r (D-1))`` when ``|arg lam| <= pi/2``, else ``|sin arg lam| / (6 r (D-1))``, capped at ``RHO_MAX``."""
    r, theta = abs(lam), cmath.phase(lam)
    D1 = max(max_deg, 2) - 1
    if abs(theta) <= math.pi / 2:
        rho = 1 / (9 * r * D1)
    else:
        rho = abs(math.sin(theta)) / (6 * r * D1)
    return min(rho, RHO_MAX)


def approx_independence_clawfree(
    G: Multigraph,
    lam: complex,
    eps: float,
    max_deg: int | None = None,
    limits: EngineLimits = DEFAULT_LIMITS,
    max_N: int = MAX_N,
    max_m: int = MAX_M,
) -> ApproxResult:
    """Multiplicative ``eps``-approximation of ``Z(G)(lam)`` for claw-free ``G`` and ``lam`` off the negative axis."""
    start = time.perf_counter()
    check_simple(G)
    claw = find_claw(G)
    if claw is not None:
        raise InvalidInputError(f"graph has a claw centred at vertex {claw[0]} with leaves {claw[1]}")
    D = G.max_degree()
    if max_deg is not None:
        if D > max_deg:
            raise InvalidInputError(f"graph has maximum degree {D} > declared bound {max_deg}")
        D = max_deg
    lam = complex(lam)
    if lam.imag == 0 and lam.real < 0:
        raise OutOfRegionError("lambda on the negative real axis is not covered")
    if lam == 0 or G.n == 0:
        res = evaluate_truncated(1.0, [], 0.0)
        res.m = 0
        res.epsilon = eps
        res.elapsed = time.perf_counter() - start
        return res
    T = ClawFreeTransform(choose_rho(lam, D))
    N = T.N
    if N > max_N:
        raise ResourceLimitError(
            f"transform degree N = {N} exceeds the cap {max_N}; the cost grows quickly with |lambda|"
        )
    d = G.n * N
    m = taylor_order(1.0, T.beta, d, eps)
    if m > max_m:
        raise ResourceLimitError(f"truncation order m = {m} exceeds the cap {max_m}")
    # deg Z(G) <= n, so the first n power sums already fix the whole polynomial
    mz = min(m, G.n)
    pz = compute_power_sums(G, IndependenceModel(), mz, limits=limits)
    z_coeffs = np.zeros(m + 1, dtype=complex)
    z_coeffs[: mz + 1] = coeffs_from_power_sums(pz, mz)
    outer = z_coeffs * lam ** np.arange(m + 1)
    g = compose_truncate(outer, T.prefix(m), m)
    p = power_sums_from_coeffs(g, m)
    res = evaluate_truncated(1.0, p, 1.0)
    res.epsilon = eps
    res.elapsed = time.perf_counter() - start
    return res
