"""Inverse power sums of bounded induced graph counting polynomials.

A model supplies, for every induced pattern ``H``, the weight series
``Lambda_H(z) = sum_i lambda_{H,i} z^i`` so that

    p(G)(z) = sum_{U subset V(G)} Lambda_{G[U]}(z),      Lambda_{empty} = 1.

The power sums are supported on connected patterns,
``p_k(G) = sum_H a_{H,k} ind(H, G)``, and the coefficient series
``A_H(z) = sum_k a_{H,k} z^k`` of a connected pattern on vertex set ``S``
satisfies

    A_S * p(G[S]) = -z Lambda_S'(z) - sum_{T < S connected} Q_S(S \\ T) * A_T

with ``Q_S(W) = sum_{W <= U <= S} Lambda_U``.  Read coefficientwise this is
the usual recursion ``a_{H,k} = -k lambda_{H,k} - sum_i sum_{S u T = V(H)}
lambda_{H[S],i} a_{H[T],k-i}``; here it is solved for all ``k`` at once by
one series division per pattern.
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractViolation, ResourceLimitError
from .graph import (
    Flavor,
    Fragment,
    Multigraph,
    canonical_code,
    connected_masks_by_size,
    pattern_dictionary,
)

__all__ = [
    "BigcpModel",
    "EngineLimits",
    "SupportTable",
    "compute_support_table",
    "compute_power_sums",
]


@dataclass(frozen=True)
class EngineLimits:
    """Work caps; exceeding one raises :class:`ResourceLimitError`."""

    max_connected_sets: int = 2_000_000
    # complex entries held by one batch of subset tables
    max_table_entries: int = 1 << 23
    # pairs (S, T) visited by the literal reference recursion
    max_pair_visits: int = 20_000_000


DEFAULT_LIMITS = EngineLimits()


class BigcpModel:
    """Base class for coefficient-weight suppliers.

    Subclasses set ``alpha``, ``beta`` and ``flavor`` and implement
    :meth:`pattern_series` and :meth:`max_index`.
    """

    alpha: int = 1
    beta: float = 1.0
    flavor: Flavor = Flavor.PLAIN

    def max_index(self, G: Multigraph, vertices) -> int:
        """Largest ``i`` with possibly nonzero ``lambda_{G[vertices], i}``.

        Must not increase when ``vertices`` shrinks.
        """
        raise NotImplementedError

    def pattern_series(self, pattern) -> np.ndarray:
        """Coefficients of ``Lambda_H`` for a standalone pattern (possibly disconnected)."""
        raise NotImplementedError

    def pattern_of(self, G: Multigraph, vertices):
        if self.flavor == Flavor.FRAGMENT:
            return G.fragment(vertices)
        return G.induced(vertices)

    def set_series(self, G: Multigraph, vertices) -> np.ndarray:
        return self.pattern_series(self.pattern_of(G, vertices))

    def subset_tables(self, G: Multigraph, verts: np.ndarray, lnbr: np.ndarray, width: int):
        """Optional fast path: ``Lambda`` for every subset of each row of ``verts``.

        Returns an array of shape ``(B, 2**h, width)`` or ``None``.
        """
        return None

    def size_constraint(self, pattern, i: int) -> bool:
        return True

    def weight(self, pattern, i: int) -> complex:
        """``lambda_{H,i}``; zero outside the size constraint."""
        n = pattern.n
        if i < 0 or n > self.alpha * i and not (n == 0 and i == 0):
            return 0j
        if not self.size_constraint(pattern, i):
            return 0j
        s = self.pattern_series(pattern)
        return complex(s[i]) if i < len(s) else 0j


# ---------------------------------------------------------------------------
# helpers on local bitmask tables


def _superset_zeta(tab: np.ndarray, h: int) -> np.ndarray:
    """``Q[b, w] = sum_{u >= w} tab[b, u]`` along axis 1 (length ``2**h``)."""
    Q = tab.copy()
    B, size, W = Q.shape
    for j in range(h):
        view = Q.reshape(B, size >> (j + 1), 2, 1 << j, W)
        view[:, :, 0] += view[:, :, 1]
    return Q


def _series_divide(num: np.ndarray, den: np.ndarray, m: int) -> np.ndarray:
    """Rows of ``num / den`` modulo ``z^(m+1)``; every ``den[:, 0]`` equals 1."""
    B = num.shape[0]
    W = den.shape[1]
    y = np.zeros((B, m + 1), dtype=complex)
    y[:, 0] = num[:, 0]
    for k in range(1, m + 1):
        r = min(k, W - 1)
        acc = num[:, k].copy()
        if r:
            acc -= np.einsum("bi,bi->b", den[:, 1 : r + 1], y[:, k - 1 :: -1][:, :r])
        y[:, k] = acc
    return y


def _polymul_trunc(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    W = a.shape[-1]
    out = np.zeros_like(a)
    for i in range(W):
        out[..., i:] += a[..., i : i + 1] * b[..., : W - i]
    return out


class _SetIndex:
    """Sorted index of connected vertex sets stored as multiword bit keys."""

    def __init__(self, masks: list[int], n: int):
        self.words = max(1, (n + 63) // 64)
        keys = self._keys_from_ints(masks)
        order = np.argsort(keys, kind="stable")
        self.keys = keys[order]
        self.masks = [masks[i] for i in order]
        self.row_of = {mk: r for r, mk in enumerate(self.masks)}

    def _keys_from_ints(self, masks):
        arr = np.zeros((len(masks), self.words), dtype=np.uint64)
        full = (1 << 64) - 1
        for r, mk in enumerate(masks):
            for w in range(self.words):
                arr[r, w] = (mk >> (64 * w)) & full
        return self._void(arr)

    def _void(self, arr: np.ndarray) -> np.ndarray:
        return np.ascontiguousarray(arr).view(f"V{8 * self.words}").ravel()

    def lookup(self, word_arr: np.ndarray):
        """Rows of the keys in ``word_arr`` (shape ``(P, words)``) and a found flag."""
        q = self._void(word_arr)
        pos = np.searchsorted(self.keys, q)
        pos = np.minimum(pos, len(self.keys) - 1)
        found = self.keys[pos] == q
        return pos, found


class _Level:
    """Connected sets of one size, with local coordinates."""

    def __init__(self, masks: list[int], h: int, edge_codes: np.ndarray, n: int):
        B = len(masks)
        verts = np.zeros((B, h), dtype=np.int64)
        for b, mk in enumerate(masks):
            j = 0
            while mk:
                low = mk & -mk
                verts[b, j] = low.bit_length() - 1
                mk ^= low
                j += 1
        self.masks = masks
        self.verts = verts
        # local adjacency within each set
        codes = verts[:, :, None] * n + verts[:, None, :]
        pos = np.searchsorted(edge_codes, codes)
        pos = np.minimum(pos, max(len(edge_codes) - 1, 0))
        adj = edge_codes[pos] == codes if len(edge_codes) else np.zeros(codes.shape, dtype=bool)
        shifts = np.left_shift(np.int64(1), np.arange(h, dtype=np.int64))
        self.lnbr = (adj * shifts[None, None, :]).sum(axis=2).astype(np.int64)


def _local_to_words(local: np.ndarray, bidx: np.ndarray, verts: np.ndarray, words: int) -> np.ndarray:
    out = np.zeros((local.size, words), dtype=np.uint64)
    rows = np.arange(local.size)
    h = verts.shape[1]
    for j in range(h):
        v = verts[bidx, j]
        bit = ((local >> j) & 1).astype(np.uint64) << (v % 64).astype(np.uint64)
        out[rows, v // 64] |= bit
    return out


def _connected_local(h: int, lnbr_row: np.ndarray):
    """For each local mask ``u``: the component containing its lowest vertex."""
    masks = np.arange(1 << h, dtype=np.int64)
    comp = masks & -masks
    while True:
        nb = np.zeros_like(comp)
        for j in range(h):
            nb |= np.where((comp >> j) & 1, lnbr_row[j], 0)
        new = (comp | nb) & masks
        if np.array_equal(new, comp):
            return comp
        comp = new


def _generic_tables(model, G, level, h, width, lam_rows, index, batch):
    """Subset tables from connected weights, multiplying over components."""
    B = len(batch)
    tab = np.zeros((B, 1 << h, width), dtype=complex)
    masks = np.arange(1 << h, dtype=np.int64)
    for out_b, b in enumerate(batch):
        comp = _connected_local(h, level.lnbr[b])
        conn = (comp == masks) & (masks > 0)
        loc = masks[conn]
        keys = _local_to_words(loc, np.full(loc.size, b), level.verts, index.words)
        rows, found = index.lookup(keys)
        if not found.all():
            raise AssertionError("connected subset missing from the set index")
        t = tab[out_b]
        t[0, 0] = 1.0
        series = lam_rows[rows]
        w = min(width, series.shape[1])
        t[loc, :w] = series[:, :w]
        rest = masks ^ comp
        ncomp = np.where(conn, 1, 0)
        ncomp[0] = 0
        while True:
            new = np.where(masks > 0, 1 + ncomp[rest], 0)
            if np.array_equal(new, ncomp):
                break
            ncomp = new
        for L in range(2, int(ncomp.max(initial=0)) + 1):
            sel = masks[ncomp == L]
            t[sel] = _polymul_trunc(t[comp[sel]], t[rest[sel]])
    return tab


class _SetEngine:
    """Runs the series recursion over every connected set of ``G``."""

    def __init__(self, G: Multigraph, model: BigcpModel, m: int, limits: EngineLimits):
        self.G, self.model, self.m, self.limits = G, model, m, limits
        n = G.n
        self.hmax = min(model.alpha * m, n)
        levels = connected_masks_by_size(G, self.hmax) if n and m else []
        total = sum(len(lv) for lv in levels)
        if total > limits.max_connected_sets:
            raise ResourceLimitError(
                f"{total} connected sets of size <= {self.hmax} exceed the cap of "
                f"{limits.max_connected_sets}; lower m (raise epsilon) or the evaluation point"
            )
        self.levels = levels
        self.index = _SetIndex([mk for lv in levels for mk in lv], n) if total else None
        codes = sorted({u * n + v for u, v in G.edges if u != v} | {v * n + u for u, v in G.edges if u != v})
        self.edge_codes = np.array(codes, dtype=np.int64)
        self.A = np.zeros((total, m + 1), dtype=complex)
        self.lam_width = None
        self.lam = None

    def run(self) -> "_SetEngine":
        if self.index is None:
            return self
        m, model, G = self.m, self.model, self.G
        generic = None
        for h, masks in enumerate(self.levels, start=1):
            level = _Level(masks, h, self.edge_codes, G.n)
            D = max(model.max_index(G, level.verts[b]) for b in range(len(masks)))
            width = min(D, m) + 1
            per_set = (1 << h) * width
            if per_set > self.limits.max_table_entries:
                raise ResourceLimitError(
                    f"pattern size {h} needs subset tables of {per_set} entries, above the cap "
                    f"{self.limits.max_table_entries}"
                )
            rows_S, _ = self.index.lookup(
                _local_to_words(np.full(len(masks), (1 << h) - 1, dtype=np.int64),
                                np.arange(len(masks)), level.verts, self.index.words)
            )
            chunk = max(1, self.limits.max_table_entries // per_set)
            for start in range(0, len(masks), chunk):
                batch = np.arange(start, min(start + chunk, len(masks)))
                tab = model.subset_tables(G, level.verts[batch], level.lnbr[batch], width)
                if tab is None:
                    if generic is None:
                        generic = self._all_connected_series()
                    tab = _generic_tables(model, G, level, h, width, generic, self.index, batch)
                self._solve(level, h, batch, tab, rows_S[batch])
        return self

    def _all_connected_series(self) -> np.ndarray:
        """``Lambda`` of every connected set, truncated to degree ``m``."""
        G, model = self.G, self.model
        out = []
        for mk in self.index.masks:
            verts = [v for v in range(G.n) if mk >> v & 1]
            out.append(np.asarray(model.set_series(G, verts), dtype=complex)[: self.m + 1])
        width = max((len(s) for s in out), default=1)
        lam = np.zeros((len(out), width), dtype=complex)
        for r, s in enumerate(out):
            lam[r, : len(s)] = s
        return lam

    def _solve(self, level, h, batch, tab, rows_S):
        m = self.m
        B, size, W = tab.shape
        full = size - 1
        Q = _superset_zeta(tab, h)
        pH = Q[:, 0, :]
        R = np.zeros((B, m + 1), dtype=complex)
        R[:, :W] = -np.arange(W) * tab[:, full, :]
        nz = np.any(Q != 0, axis=2)
        nz[:, 0] = False  # w = empty means T = S
        bl, wl = np.nonzero(nz)
        if bl.size:
            tl = full ^ wl
            keys = _local_to_words(tl, batch[bl], level.verts, self.index.words)
            rows, found = self.index.lookup(keys)
            bl, wl, rows = bl[found], wl[found], rows[found]
        if bl.size:
            R -= self._pair_convolution(Q, bl, wl, rows, B)
        A = _series_divide(R, pH, m)
        alpha = self.model.alpha
        kmin = -(-h // alpha)
        A[:, :kmin] = 0
        self.A[rows_S] = A

    def _pair_convolution(self, Q, bl, wl, rows, B):
        """``conv[b] = sum over pairs of Q[b, w] * A[T]`` truncated to degree m."""
        m = self.m
        W = Q.shape[2]
        out = np.zeros((B, m + 1), dtype=complex)
        step = max(1, (1 << 22) // (m + 1))
        for s in range(0, bl.size, step):
            b = bl[s : s + step]
            q = Q[b, wl[s : s + step], :]
            a = self.A[rows[s : s + step]]
            acc = np.zeros_like(a)
            for i in range(W):
                acc[:, i:] += q[:, i : i + 1] * a[:, : m + 1 - i]
            starts = np.flatnonzero(np.r_[True, b[1:] != b[:-1]])
            out[b[starts]] += np.add.reduceat(acc, starts, axis=0)
        return out

    def power_sums(self) -> np.ndarray:
        if self.index is None or self.m == 0:
            return np.zeros(self.m, dtype=complex)
        return self.A[:, 1:].sum(axis=0)

    def series_of(self, vertices) -> np.ndarray:
        mk = 0
        for v in vertices:
            mk |= 1 << int(v)
        return self.A[self.index.row_of[mk]]


# ---------------------------------------------------------------------------
# support tables


@dataclass
class SupportTable:
    """Coefficients ``a_{H,k}`` for the connected patterns occurring in ``G``.

    ``patterns`` maps each canonical code to ``(representative, ind-count)``
    in dictionary order; ``coeffs[code][k-1]`` is ``a_{H,k}``.
    """

    m: int
    patterns: "OrderedDict[bytes, tuple]"
    coeffs: dict = field(default_factory=dict)

    @property
    def entries(self) -> dict:
        out = {}
        for key, arr in self.coeffs.items():
            for k in range(1, self.m + 1):
                out[(key, k)] = complex(arr[k - 1])
        return out

    def coefficient(self, key: bytes, k: int) -> complex:
        """``a_{H,k}``; zero for patterns absent from the table (e.g. disconnected ones)."""
        arr = self.coeffs.get(key)
        if arr is None or not 1 <= k <= self.m:
            return 0j
        return complex(arr[k - 1])

    def power_sums(self) -> np.ndarray:
        p = np.zeros(self.m, dtype=complex)
        for key, (_, count) in self.patterns.items():
            p += count * self.coeffs[key]
        return p


def _check_args(G, model, m):
    if not isinstance(model, BigcpModel):
        raise ContractViolation("model must be a BigcpModel")
    if m < 0:
        raise ContractViolation("m must be non-negative")


def compute_support_table(
    G: Multigraph,
    model: BigcpModel,
    m: int,
    method: str = "zeta",
    limits: EngineLimits = DEFAULT_LIMITS,
) -> SupportTable:
    """Support table of ``G`` for power sums up to ``p_m``.

    ``method="zeta"`` runs the series recursion on each connected set and
    reads off one representative per class; ``method="pairs"`` evaluates the
    coefficient recursion literally, pattern by pattern, over ordered pairs
    ``(S, T)`` covering the pattern.
    """
    _check_args(G, model, m)
    kmax = min(model.alpha * m, G.n)
    patterns = pattern_dictionary(G, kmax, model.flavor) if kmax >= 1 else OrderedDict()
    table = SupportTable(m, patterns)
    if method == "zeta":
        eng = _SetEngine(G, model, m, limits).run()
        reps = _class_representatives(G, patterns, model.flavor)
        for key, verts in reps.items():
            table.coeffs[key] = eng.series_of(verts)[1:].copy()
    elif method == "pairs":
        _pairs_recursion(table, model, m, limits)
    else:
        raise ContractViolation(f"unknown method {method!r}")
    return table


def _class_representatives(G, patterns, flavor):
    """Lexicographically first vertex set of each class (matches the dictionary's representative)."""
    from .graph import enumerate_connected_sets, pattern_key

    reps = {}
    if not patterns:
        return reps
    kmax = max(rep.n for rep, _ in patterns.values())
    for S in enumerate_connected_sets(G, kmax):
        key = pattern_key(G, S, flavor)
        if key not in reps:
            reps[key] = S
    return reps


def _sub_pattern(pattern, vertices):
    if isinstance(pattern, Fragment):
        return pattern.sub(vertices)
    return pattern.induced(vertices)


def _pattern_graph(pattern) -> Multigraph:
    return pattern.graph if isinstance(pattern, Fragment) else pattern


def _pairs_recursion(table: SupportTable, model: BigcpModel, m: int, limits: EngineLimits):
    alpha, flavor = model.alpha, model.flavor
    visits = sum(3 ** rep.n for rep, _ in table.patterns.values()) * max(m - 1, 1)
    if visits > limits.max_pair_visits:
        raise ResourceLimitError(f"{visits} (S, T) pair visits exceed the cap {limits.max_pair_visits}")
    for key, (H, _) in table.patterns.items():
        h = H.n
        subsets = range(1, 1 << h)
        local = {}
        for u in subsets:
            vs = [v for v in range(h) if u >> v & 1]
            sub = _sub_pattern(H, vs)
            connected = _pattern_graph(sub).is_connected()
            local[u] = (sub, canonical_code(sub, flavor) if connected else None)
        full = (1 << h) - 1
        a = np.zeros(m, dtype=complex)
        lam_cache: dict[tuple[int, int], complex] = {}

        def lam(u, i):
            kk = (u, i)
            if kk not in lam_cache:
                lam_cache[kk] = model.weight(local[u][0], i)
            return lam_cache[kk]

        for k in range(1, m + 1):
            if h > alpha * k:
                continue
            val = -k * model.weight(H, k)
            for i in range(1, k):
                # ordered pairs (S, T), S u T = V(H): each vertex in S only, T only, or both
                for T in range(1, full + 1):
                    code = local[T][1]
                    if code is None:
                        # disconnected H[T] carries no support
                        continue
                    aT = a[k - i - 1] if T == full else table.coefficient(code, k - i)
                    if aT == 0:
                        continue
                    need = full ^ T
                    rest = T
                    sub = rest
                    while True:
                        S = need | sub
                        if S:
                            val -= lam(S, i) * aT
                        if sub == 0:
                            break
                        sub = (sub - 1) & rest
            a[k - 1] = val
        table.coeffs[key] = a


def compute_power_sums(
    G: Multigraph,
    model: BigcpModel,
    m: int,
    method: str = "zeta",
    limits: EngineLimits = DEFAULT_LIMITS,
) -> np.ndarray:
    """Inverse power sums ``p_1..p_m`` of ``p(G)``.

    The default method sums ``a_{G[S],k}`` over connected sets ``S`` (which
    equals summing ``a_{H,k} ind(H, G)`` over classes) and needs no
    canonical labelling.  ``"classes"`` and ``"pairs"`` go through the
    support table instead.
    """
    _check_args(G, model, m)
    if method == "zeta":
        return _SetEngine(G, model, m, limits).run().power_sums()
    if method == "classes":
        return compute_support_table(G, model, m, "zeta", limits).power_sums()
    if method == "pairs":
        return compute_support_table(G, model, m, "pairs", limits).power_sums()
    raise ContractViolation(f"unknown method {method!r}")
