"""Brute-force reference evaluators.

Everything here enumerates configurations directly and shares no code with
the engine; it exists to check the engine on small inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .graph import Multigraph


@dataclass(frozen=True)
class OracleLimits:
    max_independence_vertices: int = 25
    max_tutte_edges: int = 22
    max_assignments: int = 1 << 20
    max_root_degree: int = 12
    chunk: int = 1 << 16


LIMITS = OracleLimits()


def _chunks(total: int, size: int):
    for start in range(0, total, size):
        yield np.arange(start, min(total, start + size), dtype=np.int64)


# ---------------------------------------------------------------------------
# independence


def _independent_subsets(G: Multigraph, limits: OracleLimits):
    if G.n > limits.max_independence_vertices:
        raise ResourceLimitError(
            f"independence oracle is capped at {limits.max_independence_vertices} vertices"
        )
    for s in _chunks(1 << G.n, limits.chunk):
        bad = np.zeros(s.size, dtype=bool)
        for u, v in G.edges:
            bad |= ((s >> u) & 1).astype(bool) & ((s >> v) & 1).astype(bool)
        yield s[~bad]


def _popcount(s: np.ndarray, n: int) -> np.ndarray:
    c = np.zeros(s.size, dtype=np.int64)
    for v in range(n):
        c += (s >> v) & 1
    return c


def exact_independence_coeffs(G: Multigraph, limits: OracleLimits = LIMITS) -> np.ndarray:
    """Number of independent sets of each size, as a complex vector of length ``n + 1``."""
    counts = np.zeros(G.n + 1, dtype=np.int64)
    for s in _independent_subsets(G, limits):
        counts += np.bincount(_popcount(s, G.n), minlength=G.n + 1)
    out = counts.astype(complex)
    nz = np.flatnonzero(out)
    return out[: nz[-1] + 1]


def exact_independence(G: Multigraph, lam: complex, limits: OracleLimits = LIMITS) -> complex:
    c = exact_independence_coeffs(G, limits)
    return complex(np.polyval(c[::-1], complex(lam)))


def exact_independence_multivariate(G: Multigraph, z, limits: OracleLimits = LIMITS) -> complex:
    z = np.asarray(z, dtype=complex)
    total = 0j
    for s in _independent_subsets(G, limits):
        prod = np.ones(s.size, dtype=complex)
        for v in range(G.n):
            prod *= np.where((s >> v) & 1, z[v], 1.0)
        total += prod.sum()
    return total


# ---------------------------------------------------------------------------
# Tutte


def tutte_subset_table(G: Multigraph, limits: OracleLimits = LIMITS) -> np.ndarray:
    """``c[a, k]`` = number of edge subsets with ``a`` edges and ``k`` components.

    Depth-first over include/exclude decisions with a union-find that is
    rolled back on the way up.
    """
    E = G.edges
    if len(E) > limits.max_tutte_edges:
        raise ResourceLimitError(f"Tutte oracle is capped at {limits.max_tutte_edges} edges")
    n = G.n
    table = np.zeros((len(E) + 1, n + 1), dtype=np.int64)
    parent = list(range(n))
    size = [1] * n

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def dfs(i, a, comps):
        if i == len(E):
            table[a, comps] += 1
            return
        dfs(i + 1, a, comps)
        u, v = E[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            dfs(i + 1, a + 1, comps)
            return
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        dfs(i + 1, a + 1, comps - 1)
        size[ru] -= size[rv]
        parent[rv] = rv

    dfs(0, 0, n)
    return table


def exact_tutte(G: Multigraph, q: complex, w: complex, limits: OracleLimits = LIMITS) -> complex:
    """``sum_A q^k(A) w^|A|``."""
    c = tutte_subset_table(G, limits)
    q, w = complex(q), complex(w)
    total = 0j
    for a in range(c.shape[0]):
        for k in range(c.shape[1]):
            if c[a, k]:
                total += c[a, k] * q**k * w**a
    return total


def exact_tutte_inverted_coeffs(G: Multigraph, w: complex, limits: OracleLimits = LIMITS) -> np.ndarray:
    """Coefficients of ``z^n Z_T(G)(1/z, w)``, grouped by ``n - k(A)``."""
    c = tutte_subset_table(G, limits)
    n = G.n
    out = np.zeros(max(n, 1), dtype=complex)
    w = complex(w)
    for a in range(c.shape[0]):
        for k in range(c.shape[1]):
            if c[a, k]:
                out[n - k] += c[a, k] * w**a
    return out


# ---------------------------------------------------------------------------
# spin models


def _spin_matrices(G: Multigraph, model) -> list[np.ndarray]:
    return [np.asarray(model.matrix(u, v), dtype=complex) for u, v in G.edges]


def _assignments(k: int, n: int, limits: OracleLimits):
    total = k**n
    if total > limits.max_assignments:
        raise ResourceLimitError(f"{k}^{n} assignments exceed the oracle cap {limits.max_assignments}")
    powers = k ** np.arange(n, dtype=np.int64)
    for idx in _chunks(total, limits.chunk):
        yield (idx[:, None] // powers[None, :]) % k


def exact_spin(G: Multigraph, model, limits: OracleLimits = LIMITS) -> complex:
    """``sum_phi prod_{uv} A^{uv}[phi(u), phi(v)]``."""
    mats = _spin_matrices(G, model)
    total = 0j
    for phi in _assignments(model.k, G.n, limits):
        prod = np.ones(phi.shape[0], dtype=complex)
        for (u, v), A in zip(G.edges, mats):
            prod *= A[phi[:, u], phi[:, v]]
        total += prod.sum()
    return total


def exact_spin_q_coeffs(G: Multigraph, model, limits: OracleLimits = LIMITS) -> np.ndarray:
    """Coefficients of ``k^-n sum_phi prod_e (1 + z (A^e - 1)[phi])``."""
    mats = _spin_matrices(G, model)
    out = np.zeros(G.m + 1, dtype=complex)
    for phi in _assignments(model.k, G.n, limits):
        poly = np.zeros((phi.shape[0], G.m + 1), dtype=complex)
        poly[:, 0] = 1
        for e, ((u, v), A) in enumerate(zip(G.edges, mats)):
            b = A[phi[:, u], phi[:, v]] - 1
            poly[:, 1 : e + 2] += poly[:, : e + 1] * b[:, None]
        out += poly.sum(axis=0)
    return out / model.k**G.n


# ---------------------------------------------------------------------------
# edge-coloring models


def _vertex_values(G: Multigraph, model, phi: np.ndarray) -> np.ndarray:
    """``h^v(phi(delta(v)))`` for every coloring row and vertex."""
    P = phi.shape[0]
    rows = np.arange(P)
    vals = np.empty((P, G.n), dtype=complex)
    for v in range(G.n):
        counts = np.zeros((P, model.k), dtype=np.int64)
        for e, (a, b) in enumerate(G.edges):
            if a == v:
                counts[rows, phi[:, e]] += 1
            if b == v:
                counts[rows, phi[:, e]] += 1
        uniq, inv = np.unique(counts, axis=0, return_inverse=True)
        table = np.array([model.h(v, tuple(int(x) for x in r)) for r in uniq], dtype=complex)
        vals[:, v] = table[np.ravel(inv)]
    return vals


def exact_edge_coloring(G: Multigraph, model, limits: OracleLimits = LIMITS) -> complex:
    """``sum_phi prod_v h^v(phi(delta(v)))`` over colorings ``phi: E -> [k]``."""
    total = 0j
    for phi in _assignments(model.k, G.m, limits):
        total += _vertex_values(G, model, phi).prod(axis=1).sum()
    return total


def exact_edge_q_coeffs(G: Multigraph, model, limits: OracleLimits = LIMITS) -> np.ndarray:
    """Coefficients of ``k^-|E| sum_phi prod_v (1 + z (h^v - 1)(phi(delta(v))))``."""
    out = np.zeros(G.n + 1, dtype=complex)
    for phi in _assignments(model.k, G.m, limits):
        vals = _vertex_values(G, model, phi) - 1
        poly = np.zeros((phi.shape[0], G.n + 1), dtype=complex)
        poly[:, 0] = 1
        for v in range(G.n):
            poly[:, 1 : v + 2] += poly[:, : v + 1] * vals[:, v : v + 1]
        out += poly.sum(axis=0)
    return out / model.k**G.m


# ---------------------------------------------------------------------------
# roots


def power_sums_from_roots(coeffs, m: int | None = None, limits: OracleLimits = LIMITS) -> np.ndarray:
    """``p_j = sum_i zeta_i^-j`` for ``j = 1..m`` from numerically computed roots.

    ``coeffs`` lists ``e_0, e_1, ...``; ``m`` defaults to the degree.
    """
    c = np.asarray(coeffs, dtype=complex).ravel()
    nz = np.flatnonzero(c)
    if nz.size == 0:
        raise InvalidInputError("zero polynomial has no power sums")
    c = c[: nz[-1] + 1]
    d = c.size - 1
    if d > limits.max_root_degree:
        raise ResourceLimitError(f"root oracle is capped at degree {limits.max_root_degree}")
    if abs(c[0]) < 1e-12 * float(np.abs(c).max()):
        raise InvalidInputError("constant coefficient is (nearly) zero: inverse power sums are ill-conditioned")
    if m is None:
        m = d
    if d == 0:
        return np.zeros(m, dtype=complex)
    inv = 1.0 / np.roots(c[::-1])
    j = np.arange(1, m + 1)
    return (inv[None, :] ** j[:, None]).sum(axis=1)


__all__ = [
    "OracleLimits",
    "exact_independence",
    "exact_independence_coeffs",
    "exact_independence_multivariate",
    "exact_tutte",
    "exact_tutte_inverted_coeffs",
    "tutte_subset_table",
    "exact_spin",
    "exact_spin_q_coeffs",
    "exact_edge_coloring",
    "exact_edge_q_coeffs",
    "power_sums_from_roots",
]

