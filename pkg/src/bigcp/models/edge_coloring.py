"""Edge-coloring models ``sum_phi prod_v h^v(phi(delta(v)))`` evaluated through fragments."""

from __future__ import annotations

import json
import math
import time
import warnings as _warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..engine import DEFAULT_LIMITS, BigcpModel, EngineLimits, compute_power_sums
from ..errors import InvalidInputError, OutOfRegionError, ParseError
from ..graph import Flavor, Fragment, Multigraph
from ..series import evaluate_truncated, taylor_order
from .spin import DEFAULT_DELTA, parse_complex

EDGE_REGION = 0.35
_CHUNK = 1 << 20


@lru_cache(maxsize=None)
def compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    """All vectors of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def multinomial(counts) -> int:
    out, acc = 1, 0
    for c in counts:
        acc += c
        out *= math.comb(acc, c)
    return out


@dataclass
class EdgeColoringModel:
    """Vertex weight functions on color-count vectors.

    Lookup order for ``h^v(c)``: per-vertex entries, per-vertex default,
    shared entries, shared default.
    """

    k: int
    default: complex | None = None
    entries: dict = field(default_factory=dict)
    per_vertex: dict = field(default_factory=dict)
    delta: float = DEFAULT_DELTA

    def __post_init__(self):
        if self.k < 1:
            raise InvalidInputError("k must be positive")
        self.entries = {tuple(int(x) for x in c): complex(v) for c, v in self.entries.items()}
        for c in self.entries:
            if len(c) != self.k or min(c, default=0) < 0:
                raise InvalidInputError(f"count vector {c} must have {self.k} non-negative entries")
        pv = {}
        for v, conf in self.per_vertex.items():
            d = conf.get("default")
            ent = {tuple(int(x) for x in c): complex(val) for c, val in conf.get("entries", {}).items()}
            pv[int(v)] = (None if d is None else complex(d), ent)
        self.per_vertex = pv

    def h(self, v: int, counts: tuple[int, ...]) -> complex:
        counts = tuple(counts)
        conf = self.per_vertex.get(v)
        if conf is not None:
            d, ent = conf
            if counts in ent:
                return ent[counts]
            if d is not None:
                return d
        if counts in self.entries:
            return self.entries[counts]
        if self.default is not None:
            return self.default
        raise InvalidInputError(f"h^{v} is undefined at count vector {counts} and there is no default")

    @classmethod
    def from_json(cls, text: str) -> "EdgeColoringModel":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"edge-coloring model: {exc}") from None
        if not isinstance(data, dict) or "k" not in data:
            raise ParseError("edge-coloring model needs a 'k' field")
        k = int(data["k"])

        def read_entries(lst):
            out = {}
            for item in lst or []:
                try:
                    counts = tuple(int(x) for x in item["counts"])
                    out[counts] = parse_complex(item["value"])
                except (KeyError, TypeError, ValueError):
                    raise ParseError(f"bad entry {item!r}") from None
            return out

        default = parse_complex(data["default"]) if data.get("default") is not None else None
        per_vertex = {}
        for v, conf in (data.get("per_vertex") or {}).items():
            per_vertex[int(v)] = {
                "default": parse_complex(conf["default"]) if conf.get("default") is not None else None,
                "entries": read_entries(conf.get("entries")),
            }
        try:
            return cls(k, default, read_entries(data.get("entries")), per_vertex,
                       float(data.get("delta", DEFAULT_DELTA)))
        except InvalidInputError as exc:
            raise ParseError(str(exc)) from None


class EdgeColoringWeights(BigcpModel):
    """Fragment weights ``lambda_{F,|V(F)|} = k^-|E(F)| sum_phi prod_v (h^v - 1)(phi(delta(v)))``.

    Vertex colors of a fragment are host vertex ids.  Half edges are summed
    out per vertex in closed form, weighting each color-count vector by its
    multinomial coefficient.
    """

    alpha = 1
    flavor = Flavor.FRAGMENT

    def __init__(self, model: EdgeColoringModel, max_deg: int):
        self.model = model
        self.k = model.k
        self.beta = float(model.k) ** max(max_deg, 1)

    def max_index(self, G, vertices) -> int:
        return len(vertices)

    def size_constraint(self, pattern, i: int) -> bool:
        return pattern.n == i

    def _folded(self, v: int, kappa: int, internal: tuple[int, ...]) -> complex:
        total = 0j
        for d in compositions(kappa, self.k):
            c = tuple(a + b for a, b in zip(internal, d))
            total += multinomial(d) * (self.model.h(v, c) - 1)
        return total

    def pattern_series(self, pattern) -> np.ndarray:
        if not isinstance(pattern, Fragment):
            raise InvalidInputError("edge-coloring weights are defined on fragments")
        g, kappa, k = pattern.graph, pattern.kappa, self.k
        h = g.n
        out = np.zeros(h + 1, dtype=complex)
        if h == 0:
            out[0] = 1
            return out
        E = g.edges
        nE = len(E)
        log_norm = -(nE + sum(kappa)) * math.log(k)
        total = 0j
        count = k**nE
        for start in range(0, count, _CHUNK):
            idx = np.arange(start, min(count, start + _CHUNK))
            phi = (idx[:, None] // (k ** np.arange(nE))[None, :]) % k if nE else np.zeros((idx.size, 0), int)
            prod = np.ones(idx.size, dtype=complex)
            for v in range(h):
                counts = np.zeros((idx.size, k), dtype=np.int64)
                for e, (a, b) in enumerate(E):
                    if a == v:
                        counts[np.arange(idx.size), phi[:, e]] += 1
                    if b == v:
                        counts[np.arange(idx.size), phi[:, e]] += 1
                uniq, inv = np.unique(counts, axis=0, return_inverse=True)
                vals = np.array(
                    [self._folded(g.color_of(v), kappa[v], tuple(int(x) for x in row)) for row in uniq],
                    dtype=complex,
                )
                prod *= vals[np.ravel(inv)]
            total += prod.sum()
        out[h] = total * math.exp(log_norm)
        return out


def _check_region(G: Multigraph, model: EdgeColoringModel, Delta: int, override: bool) -> list[str]:
    bound = EDGE_REGION / (Delta + 1)
    worst = 0.0
    for v in range(G.n):
        for c in compositions(G.degrees[v], model.k):
            worst = max(worst, abs(model.h(v, c) - 1))
    if worst <= bound:
        return []
    msg = f"max |h(c) - 1| = {worst:.4g} exceeds {EDGE_REGION}/(Delta+1) = {bound:.4g}"
    if not override:
        raise OutOfRegionError(msg)
    _warnings.warn(msg + "; approximation guarantee does not apply", stacklevel=3)
    return [msg + "; approximation guarantee does not apply"]


def approx_edge_coloring(
    G: Multigraph,
    model: EdgeColoringModel,
    eps: float,
    max_deg: int | None = None,
    override_region_check: bool = False,
    m: int | None = None,
    limits: EngineLimits = DEFAULT_LIMITS,
):
    """Multiplicative ``eps``-approximation of the edge-coloring partition function.

    Loops are allowed and contribute their color twice.  The guarantee
    assumes the normalized polynomial has no zeros in the disk of radius
    ``1 + model.delta``.
    """
    start = time.perf_counter()
    D = G.max_degree()
    if max_deg is not None:
        if D > max_deg:
            raise InvalidInputError(f"graph has maximum degree {D} > declared bound {max_deg}")
        D = max_deg
    notes = _check_region(G, model, D, override_region_check)
    log_scale = G.m * math.log(model.k)
    if G.n == 0:
        res = evaluate_truncated(1.0, [], 0.0).rescaled(log_scale)
        res.m = 0
    else:
        if m is None:
            m = taylor_order(1.0, 1.0 + model.delta, G.n, eps)
        host = G.with_vertex_ids()
        p = compute_power_sums(host, EdgeColoringWeights(model, D), m, limits=limits)
        res = evaluate_truncated(1.0, p, 1.0).rescaled(log_scale)
    res.epsilon = eps
    res.warnings.extend(notes)
    res.elapsed = time.perf_counter() - start
    return res


__all__ = [
    "EdgeColoringModel",
    "EdgeColoringWeights",
    "approx_edge_coloring",
    "compositions",
    "multinomial",
]
