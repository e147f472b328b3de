"""Spin models ``sum_phi prod_{uv} A^{uv}_{phi(u), phi(v)}`` with per-edge symmetric matrices."""

from __future__ import annotations

import json
import math
import time
import warnings as _warnings
from dataclasses import dataclass, field

import numpy as np

from ..engine import DEFAULT_LIMITS, BigcpModel, EngineLimits, compute_power_sums
from ..errors import InvalidInputError, OutOfRegionError, ParseError
from ..graph import Flavor, Multigraph
from ..series import evaluate_truncated, taylor_order

SPIN_REGION = 0.34
DEFAULT_DELTA = 0.05
_CHUNK = 1 << 22


def parse_complex(x) -> complex:
    """A number or an ``[re, im]`` pair."""
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise ParseError(f"complex value must be [re, im], got {x!r}")
        return complex(float(x[0]), float(x[1]))
    if isinstance(x, (int, float)) and not isinstance(x, bool):
        return complex(x)
    raise ParseError(f"not a number: {x!r}")


def _matrix(obj, k: int) -> np.ndarray:
    try:
        rows = [[parse_complex(x) for x in row] for row in obj]
    except TypeError:
        raise ParseError("matrix must be a list of rows") from None
    A = np.array(rows, dtype=complex)
    if A.shape != (k, k):
        raise ParseError(f"matrix must be {k}x{k}, got shape {A.shape}")
    return A


@dataclass
class SpinModel:
    """State count ``k``, a default matrix and optional per-edge overrides keyed by ``(u, v)``."""

    k: int
    default: np.ndarray | None = None
    edges: dict = field(default_factory=dict)
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError("k must be positive")
        if self.default is not None:
            self.default = np.asarray(self.default, dtype=complex)
        self.edges = {
            (min(u, v), max(u, v)): np.asarray(A, dtype=complex) for (u, v), A in self.edges.items()
        }
        for A in ([self.default] if self.default is not None else []) + list(self.edges.values()):
            if A.shape != (self.k, self.k):
                raise InvalidInputError(f"matrices must be {self.k}x{self.k}")
            if not np.allclose(A, A.T, rtol=0, atol=1e-12):
                raise InvalidInputError("interaction matrices must be symmetric")

    def matrix(self, u: int, v: int) -> np.ndarray:
        A = self.edges.get((min(u, v), max(u, v)), self.default)
        if A is None:
            raise InvalidInputError(f"no matrix for edge {u}-{v} and no default")
        return A

    @classmethod
    def from_json(cls, text: str) -> "SpinModel":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"spin model: {exc}") from None
        if not isinstance(data, dict) or "k" not in data:
            raise ParseError("spin model needs a 'k' field")
        k = int(data["k"])
        default = _matrix(data["default"], k) if data.get("default") is not None else None
        edges = {}
        for key, M in (data.get("edges") or {}).items():
            try:
                u, v = (int(s) for s in key.split("-"))
            except ValueError:
                raise ParseError(f"edge key must look like 'u-v', got {key!r}") from None
            edges[(u, v)] = _matrix(M, k)
        try:
            return cls(k, default, edges, float(data.get("delta", DEFAULT_DELTA)))
        except InvalidInputError as exc:
            raise ParseError(str(exc)) from None


class SpinWeights(BigcpModel):
    """Edge-colored weights: color ``c`` stands for ``B_c = A_c - J``.

    ``lambda_H(z) = k^-|V(H)| sum_phi sum_F z^|F| prod_{e in F} B_e[phi]``
    over edge sets ``F`` touching every vertex of ``H``.
    """

    alpha = 2
    flavor = Flavor.EDGE_COLORED

    def __init__(self, k: int, B: list[np.ndarray]):
        self.k = k
        self.beta = float(k)
        self.B = [np.asarray(b, dtype=complex) for b in B]

    def max_index(self, G, vertices) -> int:
        inside = set(int(v) for v in vertices)
        return sum(1 for u, v in G.edges if u in inside and v in inside)

    def size_constraint(self, pattern, i: int) -> bool:
        return pattern.n <= 2 * i and i <= pattern.m

    def pattern_series(self, pattern) -> np.ndarray:
        h, E = pattern.n, pattern.edges
        out = np.zeros(len(E) + 1, dtype=complex)
        if h == 0:
            out[0] = 1
            return out
        if not E:
            return out
        k = self.k
        colors = pattern.edge_color
        # sign of X in the inclusion-exclusion over uncovered vertex sets X
        xs = np.arange(1 << h)
        sign = np.where(np.array([bin(x).count("1") % 2 for x in xs]), -1.0, 1.0)
        total = k**h
        chunk = max(1, _CHUNK // ((1 << h) * (len(E) + 1)))
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk))
            phi = (idx[:, None] // (k ** np.arange(h))[None, :]) % k
            P = idx.size
            poly = np.zeros((1 << h, P, len(E) + 1), dtype=complex)
            poly[:, :, 0] = 1
            for e, (u, v) in enumerate(E):
                b = self.B[colors[e]][phi[:, u], phi[:, v]]
                avoid = ((xs >> u) & 1) == 0
                avoid &= ((xs >> v) & 1) == 0
                sub = poly[avoid]
                sub[:, :, 1:] += sub[:, :, :-1] * b[None, :, None]
                poly[avoid] = sub
            out += np.einsum("x,xpd->d", sign, poly)
        return out / k**h


def _check_region(G: Multigraph, model: SpinModel, Delta: int, override: bool) -> list[str]:
    bound = SPIN_REGION / max(Delta, 1)
    worst = 0.0
    for u, v in G.edges:
        worst = max(worst, float(np.abs(model.matrix(u, v) - 1).max()))
    if worst <= bound:
        return []
    msg = f"max |A_ij - 1| = {worst:.4g} exceeds {SPIN_REGION}/Delta = {bound:.4g}"
    if not override:
        raise OutOfRegionError(msg)
    _warnings.warn(msg + "; approximation guarantee does not apply", stacklevel=3)
    return [msg + "; approximation guarantee does not apply"]


def approx_spin(
    G: Multigraph,
    model: SpinModel,
    eps: float,
    max_deg: int | None = None,
    override_region_check: bool = False,
    m: int | None = None,
    limits: EngineLimits = DEFAULT_LIMITS,
):
    """Multiplicative ``eps``-approximation of the spin partition function.

    The guarantee assumes the normalized polynomial has no zeros in the disk
    of radius ``1 + model.delta``.
    """
    start = time.perf_counter()
    if not G.is_simple():
        raise InvalidInputError("spin models are defined on simple graphs")
    D = G.max_degree()
    if max_deg is not None:
        if D > max_deg:
            raise InvalidInputError(f"graph has maximum degree {D} > declared bound {max_deg}")
        D = max_deg
    notes = _check_region(G, model, D, override_region_check)
    J = np.ones((model.k, model.k))
    B = [model.matrix(u, v) - J for u, v in G.edges]
    log_scale = G.n * math.log(model.k)
    if G.m == 0:
        res = evaluate_truncated(1.0, [], 0.0).rescaled(log_scale)
        res.m = 0
    else:
        if m is None:
            m = taylor_order(1.0, 1.0 + model.delta, G.m, eps)
        p = compute_power_sums(G.with_edge_ids(), SpinWeights(model.k, B), m, limits=limits)
        res = evaluate_truncated(1.0, p, 1.0).rescaled(log_scale)
    res.epsilon = eps
    res.warnings.extend(notes)
    res.elapsed = time.perf_counter() - start
    return res
