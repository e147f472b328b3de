"""Newton identities, Taylor truncation of ``ln p(t)`` and related helpers.

A polynomial ``p(z) = sum_i e_i z^i`` with ``e_0 = 1`` and roots ``zeta_i``
factors as ``prod (1 - z/zeta_i)``; its inverse power sums
``p_j = sum_i zeta_i^{-j}`` give the Taylor series
``ln p(t) = -sum_j p_j t^j / j``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, InvalidInputError, OutOfRegionError

__all__ = [
    "ApproxResult",
    "power_sums_from_coeffs",
    "coeffs_from_power_sums",
    "taylor_order",
    "evaluate_truncated",
    "compose_truncate",
    "approx_matches",
]


@dataclass
class ApproxResult:
    """Outcome of a truncated-Taylor evaluation.

    ``value == exp(log_value)``.  Model front ends rescale both fields; the
    unscaled evaluation is kept in ``raw_log_value``.
    """

    value: complex
    log_value: complex
    m: int
    epsilon: float | None = None
    elapsed: float = 0.0
    power_sums: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=complex), repr=False)
    raw_log_value: complex | None = None
    warnings: list[str] = field(default_factory=list)

    def rescaled(self, log_factor: complex) -> "ApproxResult":
        """Copy multiplied by ``exp(log_factor)``."""
        log_value = self.log_value + log_factor
        return ApproxResult(
            value=cmath.exp(log_value),
            log_value=log_value,
            m=self.m,
            epsilon=self.epsilon,
            elapsed=self.elapsed,
            power_sums=self.power_sums,
            raw_log_value=self.log_value if self.raw_log_value is None else self.raw_log_value,
            warnings=list(self.warnings),
        )


def _as_complex_array(x) -> np.ndarray:
    return np.asarray(x, dtype=complex).ravel()


def power_sums_from_coeffs(e, m: int) -> np.ndarray:
    """Inverse power sums ``p_1..p_m`` from a coefficient prefix ``e_0..``.

    Coefficients past the end of ``e`` are taken as zero.
    """
    e = _as_complex_array(e)
    if e.size == 0 or e[0] != 1:
        raise ContractViolation("power_sums_from_coeffs needs e_0 = 1")
    if m < 0:
        raise ContractViolation("m must be non-negative")
    ext = np.zeros(m + 1, dtype=complex)
    ext[: min(m + 1, e.size)] = e[: m + 1]
    p = np.zeros(m, dtype=complex)
    for k in range(1, m + 1):
        # p_k = -k e_k - sum_{i=1}^{k-1} e_i p_{k-i}
        acc = -k * ext[k]
        if k > 1:
            acc -= np.dot(ext[1:k], p[k - 2 :: -1][: k - 1])
        p[k - 1] = acc
    return p


def coeffs_from_power_sums(p, m: int | None = None) -> np.ndarray:
    """Coefficients ``e_0..e_m`` (``e_0 = 1``) from ``p_1..p_m``."""
    p = _as_complex_array(p)
    if m is None:
        m = p.size
    if m > p.size:
        raise ContractViolation(f"need {m} power sums, got {p.size}")
    e = np.zeros(m + 1, dtype=complex)
    e[0] = 1
    for k in range(1, m + 1):
        # k e_k = -sum_{i=0}^{k-1} e_i p_{k-i}
        e[k] = -np.dot(e[:k], p[k - 1 :: -1][:k]) / k
    return e


def taylor_order(t: complex, M: float, d: int, eps: float) -> int:
    """Truncation order ``m = ceil(C ln(d / (eps/2)))`` with ``C = 1/(1 - |t|/M)``.

    Half of ``eps`` is reserved for rounding error.  ``t = 0`` needs no
    correction terms at all, so the minimum order 1 is returned.
    """
    if not eps > 0:
        raise ContractViolation("epsilon must be positive")
    if d < 1:
        raise ContractViolation("degree bound d must be at least 1")
    if not M > 0:
        raise ContractViolation("disk radius must be positive")
    r = abs(t)
    if r >= M:
        raise OutOfRegionError(f"|t| = {r:.6g} is not inside the zero-free disk of radius {M:.6g}")
    if r == 0:
        return 1
    C = 1.0 / (1.0 - r / M)
    return max(1, math.ceil(C * math.log(d / (eps / 2))))


def evaluate_truncated(a0: complex, p, t: complex) -> ApproxResult:
    """``exp(ln a0 - sum_j p_j t^j / j)`` with the sum taken for ``j`` ascending."""
    if a0 == 0:
        raise InvalidInputError("a0 must be nonzero")
    p = _as_complex_array(p)
    log_value = complex(cmath.log(a0))
    tp = complex(1.0)
    t = complex(t)
    s = 0j
    for j in range(1, p.size + 1):
        tp *= t
        s += complex(p[j - 1]) * tp / j
    log_value -= s
    return ApproxResult(value=cmath.exp(log_value), log_value=log_value, m=p.size, power_sums=p)


def compose_truncate(outer, inner, m: int) -> np.ndarray:
    """First ``m + 1`` coefficients of ``outer(inner(z))``; ``inner(0)`` must vanish."""
    outer = _as_complex_array(outer)
    inner = _as_complex_array(inner)
    if inner.size and inner[0] != 0:
        raise ContractViolation("inner series must have zero constant term")
    if m < 0:
        raise ContractViolation("m must be non-negative")
    inner = inner[: m + 1]
    # only outer coefficients up to z^m can reach the prefix
    outer = outer[: m + 1]
    nz = np.flatnonzero(outer)
    outer = outer[: nz[-1] + 1] if nz.size else outer[:0]
    if outer.size == 0:
        return np.zeros(m + 1, dtype=complex)
    acc = np.zeros(m + 1, dtype=complex)
    acc[0] = outer[-1]
    for c in outer[-2::-1]:
        acc = np.convolve(acc, inner)[: m + 1]
        acc[0] += c
    out = np.zeros(m + 1, dtype=complex)
    out[: acc.size] = acc
    return out


def approx_matches(xi: complex, q: complex, eps: float) -> bool:
    """True when ``xi`` is a multiplicative ``eps``-approximation of ``q``."""
    if xi == 0 or q == 0:
        raise InvalidInputError("approx_matches needs nonzero arguments")
    ratio = complex(q) / complex(xi)
    lr = math.log(abs(ratio))
    return -eps <= lr <= eps and abs(cmath.phase(ratio)) <= eps
