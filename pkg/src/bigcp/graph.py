"""Graphs, fragments, connected-set enumeration and induced-pattern counting.

Vertices are ``0..n-1``.  Edges are unordered pairs; repeating a pair gives a
parallel edge and ``(v, v)`` is a loop, which contributes 2 to the degree of
``v``.  Patterns are compared in one of four flavors (see :class:`Flavor`).
"""

from __future__ import annotations

import math
from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInputError, ParseError

__all__ = [
    "Flavor",
    "Multigraph",
    "Fragment",
    "max_degree",
    "enumerate_connected_sets",
    "count_connected_bound",
    "canonical_code",
    "pattern_key",
    "is_isomorphic_connected",
    "count_induced",
    "pattern_dictionary",
    "disjoint_union",
    "line_graph",
    "random_bounded_degree_graph",
    "graph_from_edges",
    "parse_graph",
    "read_graph",
    "format_graph",
]


class Flavor(str, Enum):
    """Which decorations take part in pattern isomorphism."""

    PLAIN = "plain"
    VERTEX_COLORED = "vertex-colored"
    EDGE_COLORED = "edge-colored"
    FRAGMENT = "fragment"


@dataclass(frozen=True)
class Multigraph:
    """Immutable multigraph with optional integer vertex and edge colors."""

    n: int
    edges: tuple = ()
    vertex_color: tuple | None = None
    edge_color: tuple | None = None

    def __post_init__(self):
        n = int(self.n)
        if n < 0:
            raise InvalidInputError(f"vertex count must be non-negative, got {n}")
        norm = []
        for e in self.edges:
            u, v = (int(x) for x in e)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInputError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
            norm.append((u, v) if u <= v else (v, u))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        if self.vertex_color is not None:
            vc = tuple(int(c) for c in self.vertex_color)
            if len(vc) != n:
                raise InvalidInputError("vertex color map must cover every vertex")
            object.__setattr__(self, "vertex_color", vc)
        if self.edge_color is not None:
            ec = tuple(int(c) for c in self.edge_color)
            if len(ec) != len(norm):
                raise InvalidInputError("edge color map must cover every edge")
            object.__setattr__(self, "edge_color", ec)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> list[dict[int, list[int]]]:
        """``adjacency[u][v]`` lists the indices of the non-loop edges joining u and v."""
        adj: list[dict[int, list[int]]] = [dict() for _ in range(self.n)]
        for idx, (u, v) in enumerate(self.edges):
            if u != v:
                adj[u].setdefault(v, []).append(idx)
                adj[v].setdefault(u, []).append(idx)
        return adj

    @cached_property
    def loops(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for idx, (u, v) in enumerate(self.edges):
            if u == v:
                out[u].append(idx)
        return out

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(
            sum(len(es) for es in self.adjacency[v].values()) + 2 * len(self.loops[v])
            for v in range(self.n)
        )

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in self.adjacency[v]) for v in range(self.n))

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def has_parallel_edges(self) -> bool:
        return len(set(self.edges)) != len(self.edges)

    def is_simple(self) -> bool:
        return not self.has_loops() and not self.has_parallel_edges()

    def color_of(self, v: int) -> int:
        return 0 if self.vertex_color is None else self.vertex_color[v]

    def with_vertex_ids(self) -> "Multigraph":
        """Copy in which vertex ``i`` carries color ``i``."""
        return Multigraph(self.n, self.edges, tuple(range(self.n)), self.edge_color)

    def with_edge_ids(self) -> "Multigraph":
        """Copy in which edge ``i`` carries color ``i``."""
        return Multigraph(self.n, self.edges, self.vertex_color, tuple(range(self.m)))

    def induced(self, vertices: Sequence[int]) -> "Multigraph":
        """Induced subgraph on ``vertices``, relabelled in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        edges, colors = [], []
        for idx, (u, v) in enumerate(self.edges):
            if u in index and v in index:
                edges.append((index[u], index[v]))
                if self.edge_color is not None:
                    colors.append(self.edge_color[idx])
        vc = None
        if self.vertex_color is not None:
            vc = tuple(self.vertex_color[v] for v in vertices)
        return Multigraph(len(index), tuple(edges), vc, tuple(colors) if self.edge_color is not None else None)

    def fragment(self, vertices: Sequence[int], max_degree: int | None = None) -> "Fragment":
        """The fragment ``G(U)``: ``G[U]`` plus, per vertex, its edges leaving ``U``."""
        inside = set(vertices)
        kappa = tuple(
            sum(len(es) for w, es in self.adjacency[v].items() if w not in inside) for v in vertices
        )
        sub = self.induced(vertices)
        if sub.vertex_color is None:
            sub = Multigraph(sub.n, sub.edges, (0,) * sub.n, sub.edge_color)
        bound = self.max_degree() if max_degree is None else max_degree
        return Fragment(sub, kappa, bound)

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1


@dataclass(frozen=True)
class Fragment:
    """A vertex-colored graph together with a half-edge count per vertex."""

    graph: Multigraph
    kappa: tuple
    max_degree: int
    _check: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        g = self.graph
        if g.vertex_color is None:
            object.__setattr__(self, "graph", Multigraph(g.n, g.edges, (0,) * g.n, g.edge_color))
        kappa = tuple(int(k) for k in self.kappa)
        object.__setattr__(self, "kappa", kappa)
        if len(kappa) != g.n:
            raise InvalidInputError("kappa must assign a half-edge count to every vertex")
        for v, k in enumerate(kappa):
            if k < 0 or k > self.max_degree:
                raise InvalidInputError(f"kappa({v}) = {k} outside [0, {self.max_degree}]")
            if g.degrees[v] + k > self.max_degree:
                raise InvalidInputError(
                    f"vertex {v} has degree {g.degrees[v]} + {k} half edges > {self.max_degree}"
                )

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def edge_count(self) -> int:
        """``|E(F)|``: ordinary edges plus half edges."""
        return self.graph.m + sum(self.kappa)

    def sub(self, vertices: Sequence[int]) -> "Fragment":
        """Induced sub-fragment ``F(S)``; edges leaving ``S`` become half edges."""
        inside = set(vertices)
        g = self.graph
        kappa = tuple(
            self.kappa[v] + sum(len(es) for w, es in g.adjacency[v].items() if w not in inside)
            for v in vertices
        )
        return Fragment(g.induced(vertices), kappa, self.max_degree)


def max_degree(G: Multigraph) -> int:
    """Maximum vertex degree, loops counted twice."""
    return G.max_degree()


# ---------------------------------------------------------------------------
# connected sets


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def connected_masks_by_size(G: Multigraph, k: int) -> list[list[int]]:
    """Bitmasks of connected vertex sets, grouped by size ``1..k``.

    Level ``j+1`` is obtained from level ``j`` by adding one neighbour of the
    set; every connected set arises this way from the set obtained by removing
    a leaf of one of its spanning trees.
    """
    if k < 1:
        raise InvalidInputError("k must be at least 1")
    nbr = G.neighbor_masks
    levels = [sorted(1 << v for v in range(G.n))]
    for _ in range(1, min(k, G.n)):
        grown = set()
        for s in levels[-1]:
            frontier = 0
            rest = s
            while rest:
                low = rest & -rest
                frontier |= nbr[low.bit_length() - 1]
                rest ^= low
            frontier &= ~s
            while frontier:
                low = frontier & -frontier
                grown.add(s | low)
                frontier ^= low
        if not grown:
            break
        levels.append(sorted(grown))
    return levels


def enumerate_connected_sets(G: Multigraph, k: int) -> list[tuple[int, ...]]:
    """All vertex sets ``S`` with ``|S| <= k`` and ``G[S]`` connected, sorted lexicographically."""
    sets = [_mask_to_tuple(s) for level in connected_masks_by_size(G, k) for s in level]
    sets.sort()
    return sets


def count_connected_bound(max_deg: int, k: int) -> float:
    """Upper bound ``(e*Delta)^(k-1)/2`` on connected k-sets through a fixed vertex."""
    if max_deg < 1 or k < 1:
        raise InvalidInputError("need max_deg >= 1 and k >= 1")
    return (math.e * max_deg) ** (k - 1) / 2


# ---------------------------------------------------------------------------
# canonical codes


def _local_structure(G: Multigraph, vertices: Sequence[int], flavor: Flavor, kappa=None):
    """Vertex labels and edge bundles of ``G[vertices]`` in local indices."""
    index = {v: i for i, v in enumerate(vertices)}
    h = len(vertices)
    colored_edges = flavor == Flavor.EDGE_COLORED
    if colored_edges and G.edge_color is None:
        raise InvalidInputError("edge-colored flavor needs an edge coloring")
    loops = [() for _ in range(h)]
    bundles: dict[tuple[int, int], object] = {}
    for i, v in enumerate(vertices):
        if G.loops[v]:
            loops[i] = (
                tuple(sorted(G.edge_color[e] for e in G.loops[v])) if colored_edges else len(G.loops[v])
            )
        for w, es in G.adjacency[v].items():
            j = index.get(w)
            if j is not None and i < j:
                bundles[(i, j)] = (
                    tuple(sorted(G.edge_color[e] for e in es)) if colored_edges else len(es)
                )
    if flavor == Flavor.VERTEX_COLORED:
        labels = [(G.color_of(v), loops[i]) for i, v in enumerate(vertices)]
    elif flavor == Flavor.FRAGMENT:
        labels = [(G.color_of(v), kappa[i], loops[i]) for i, v in enumerate(vertices)]
    else:
        labels = [(loops[i],) for i in range(h)]
    return labels, bundles


def _refine(colors: list[int], nbrs) -> list[int]:
    """Colour refinement until the partition is stable; colours are canonical ranks."""
    h = len(colors)
    count = len(set(colors))
    while True:
        sigs = [(colors[u], tuple(sorted((b, colors[w]) for w, b in nbrs[u]))) for u in range(h)]
        ranks = {s: r for r, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == count:
            return new
        colors, count = new, len(ranks)


def _canonical_form(labels: list, bundles: dict) -> tuple:
    h = len(labels)
    nbrs: list[list] = [[] for _ in range(h)]
    for (i, j), b in bundles.items():
        nbrs[i].append((j, b))
        nbrs[j].append((i, b))
    init = {s: r for r, s in enumerate(sorted(set(labels)))}
    colors = _refine([init[s] for s in labels], nbrs)

    best = None

    def leaf_code(cols):
        order = sorted(range(h), key=cols.__getitem__)
        pos = {u: p for p, u in enumerate(order)}
        edge_code = sorted(
            (min(pos[i], pos[j]), max(pos[i], pos[j]), b) for (i, j), b in bundles.items()
        )
        return (h, tuple(labels[u] for u in order), tuple(edge_code))

    def search(cols):
        nonlocal best
        if len(set(cols)) == h:
            code = leaf_code(cols)
            if best is None or code < best:
                best = code
            return
        sizes: dict[int, list[int]] = {}
        for u, c in enumerate(cols):
            sizes.setdefault(c, []).append(u)
        target = min(c for c, members in sizes.items() if len(members) > 1)
        for u in sizes[target]:
            # individualize u: it moves just ahead of the rest of its cell
            split = [2 * c + (0 if w == u else 1) for w, c in enumerate(cols)]
            search(_refine(_rerank(split), nbrs))

    search(colors)
    return best


def _rerank(cols: list[int]) -> list[int]:
    ranks = {c: r for r, c in enumerate(sorted(set(cols)))}
    return [ranks[c] for c in cols]


def pattern_key(G: Multigraph, vertices: Sequence[int], flavor: Flavor | str) -> bytes:
    """Canonical code of the induced pattern on ``vertices`` (fragment flavor: ``G(U)``)."""
    flavor = Flavor(flavor)
    kappa = None
    if flavor == Flavor.FRAGMENT:
        inside = set(vertices)
        kappa = [sum(len(es) for w, es in G.adjacency[v].items() if w not in inside) for v in vertices]
    labels, bundles = _local_structure(G, vertices, flavor, kappa)
    return repr(_canonical_form(labels, bundles)).encode()


def canonical_code(pattern: Multigraph | Fragment, flavor: Flavor | str) -> bytes:
    """Canonical code of a whole pattern; equal codes iff isomorphic in ``flavor``."""
    flavor = Flavor(flavor)
    if isinstance(pattern, Fragment):
        if flavor != Flavor.FRAGMENT:
            raise InvalidInputError("fragments are compared in the fragment flavor only")
        labels, bundles = _local_structure(pattern.graph, range(pattern.n), flavor, pattern.kappa)
    else:
        if flavor == Flavor.FRAGMENT:
            return canonical_code(Fragment(pattern, (0,) * pattern.n, pattern.max_degree()), flavor)
        labels, bundles = _local_structure(pattern, range(pattern.n), flavor)
    return repr(_canonical_form(labels, bundles)).encode()


# ---------------------------------------------------------------------------
# embeddings


def _as_host(X: Multigraph | Fragment) -> tuple[Multigraph, tuple]:
    if isinstance(X, Fragment):
        return X.graph, X.kappa
    return X, (0,) * X.n


def _bundle(G: Multigraph, u: int, v: int, flavor: Flavor):
    if u == v:
        es = G.loops[u]
    else:
        es = G.adjacency[u].get(v, ())
    if flavor == Flavor.EDGE_COLORED:
        return tuple(sorted(G.edge_color[e] for e in es))
    return len(es)


def _induced_images(H, G, flavor: Flavor, first_only: bool = False) -> set[frozenset]:
    """Vertex sets of G onto which connected H embeds as an induced pattern.

    Vertices of H are placed in BFS order so each has an already-placed
    neighbour; its image is then among at most Delta candidates.
    """
    Hg, Hk = _as_host(H)
    Gg, Gk = _as_host(G)
    h = Hg.n
    if h == 0:
        return {frozenset()}
    if not Hg.is_connected():
        raise InvalidInputError("pattern must be connected")
    if h > Gg.n:
        return set()
    order, parent = [0], {0: None}
    for u in order:
        for w in sorted(Hg.adjacency[u]):
            if w not in parent:
                parent[w] = u
                order.append(w)
    colored = flavor in (Flavor.VERTEX_COLORED, Flavor.FRAGMENT)
    h_bundle = {(a, b): _bundle(Hg, a, b, flavor) for a in range(h) for b in range(h)}
    images: set[frozenset] = set()
    assign: dict[int, int] = {}
    used: set[int] = set()

    def compatible(x: int, g: int) -> bool:
        if colored and Hg.color_of(x) != Gg.color_of(g):
            return False
        if Gg.degrees[g] < Hg.degrees[x]:
            return False
        if flavor == Flavor.FRAGMENT and Hk[x] < Gk[g]:
            return False
        if h_bundle[(x, x)] != _bundle(Gg, g, g, flavor):
            return False
        for y, gy in assign.items():
            if h_bundle[(x, y)] != _bundle(Gg, g, gy, flavor):
                return False
        return True

    def finish() -> None:
        img = frozenset(used)
        if flavor == Flavor.FRAGMENT:
            for x, g in assign.items():
                outside = sum(len(es) for w, es in Gg.adjacency[g].items() if w not in img)
                if outside != Hk[x] - Gk[g]:
                    return
        images.add(img)

    def extend(pos: int) -> bool:
        if pos == h:
            finish()
            return first_only and bool(images)
        x = order[pos]
        cands = sorted(Gg.adjacency[assign[parent[x]]]) if pos else range(Gg.n)
        for g in cands:
            if g in used or not compatible(x, g):
                continue
            assign[x] = g
            used.add(g)
            if extend(pos + 1):
                return True
            del assign[x]
            used.discard(g)
        return False

    extend(0)
    return images


def count_induced(H: Multigraph | Fragment, G: Multigraph | Fragment, flavor: Flavor | str) -> int:
    """``ind(H, G)``: number of vertex sets of G inducing a copy of connected H."""
    return len(_induced_images(H, G, Flavor(flavor)))


def is_isomorphic_connected(H1, H2, flavor: Flavor | str) -> bool:
    """Isomorphism test for connected bounded-degree patterns by embedding search."""
    flavor = Flavor(flavor)
    g1, _ = _as_host(H1)
    g2, _ = _as_host(H2)
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if flavor == Flavor.FRAGMENT and sum(_as_host(H1)[1]) != sum(_as_host(H2)[1]):
        return False
    return bool(_induced_images(H1, H2, flavor, first_only=True))


def pattern_dictionary(G: Multigraph, k: int, flavor: Flavor | str) -> "OrderedDict[bytes, tuple]":
    """Isomorphism classes of connected induced patterns of order <= k.

    Maps each canonical code to ``(representative, count)`` where the
    representative is the pattern induced by the lexicographically first
    vertex set of the class (a :class:`Fragment` in the fragment flavor).
    Entries are ordered by vertex count, then code.
    """
    flavor = Flavor(flavor)
    classes: dict[bytes, list] = {}
    for S in enumerate_connected_sets(G, k):
        key = pattern_key(G, S, flavor)
        entry = classes.get(key)
        if entry is None:
            classes[key] = [S, 1]
        else:
            entry[1] += 1
    out: OrderedDict[bytes, tuple] = OrderedDict()
    for key in sorted(classes, key=lambda c: (len(classes[c][0]), c)):
        S, count = classes[key]
        rep = G.fragment(S) if flavor == Flavor.FRAGMENT else G.induced(S)
        out[key] = (rep, count)
    return out


# ---------------------------------------------------------------------------
# constructions and file format


def disjoint_union(G1: Multigraph, G2: Multigraph) -> Multigraph:
    shift = G1.n
    edges = G1.edges + tuple((u + shift, v + shift) for u, v in G2.edges)
    vc = None
    if G1.vertex_color is not None or G2.vertex_color is not None:
        vc = tuple(G1.color_of(v) for v in range(G1.n)) + tuple(G2.color_of(v) for v in range(G2.n))
    ec = None
    if G1.edge_color is not None and G2.edge_color is not None:
        ec = G1.edge_color + G2.edge_color
    return Multigraph(G1.n + G2.n, edges, vc, ec)


def line_graph(H: Multigraph) -> Multigraph:
    """Line graph of a simple graph: one vertex per edge, adjacent when edges share an endpoint."""
    if not H.is_simple():
        raise InvalidInputError("line_graph expects a simple graph")
    edges = []
    for a in range(H.m):
        for b in range(a + 1, H.m):
            if set(H.edges[a]) & set(H.edges[b]):
                edges.append((a, b))
    return Multigraph(H.m, tuple(edges))


def random_bounded_degree_graph(n: int, max_deg: int, n_edges: int, rng) -> Multigraph:
    """Simple graph from ``n_edges`` uniform random vertex pairs, rejecting pairs
    that are loops or repeats, or that push a degree above ``max_deg``."""
    deg = [0] * n
    present: set[tuple[int, int]] = set()
    attempts = 0
    while len(present) < n_edges and attempts < 50 * max(n_edges, 1) and n > 1:
        attempts += 1
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u == v:
            continue
        e = (min(u, v), max(u, v))
        if e in present or deg[u] >= max_deg or deg[v] >= max_deg:
            continue
        present.add(e)
        deg[u] += 1
        deg[v] += 1
    return Multigraph(n, tuple(sorted(present)))


def parse_graph(text: str) -> Multigraph:
    """Parse the ``p``/``e``/``c`` text format (comments start with ``#``)."""
    n = None
    edges: list[tuple[int, int]] = []
    colors: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 2:
                if n is not None:
                    raise ParseError(f"line {lineno}: duplicate header")
                n = int(parts[1])
                if n < 0:
                    raise ParseError(f"line {lineno}: negative vertex count")
                continue
            if n is None:
                raise ParseError(f"line {lineno}: header 'p <n>' must come first")
            if parts[0] == "e" and len(parts) == 3:
                u, v = int(parts[1]), int(parts[2])
                if not (0 <= u < n and 0 <= v < n):
                    raise ParseError(f"line {lineno}: vertex id out of range [0, {n})")
                edges.append((u, v))
            elif parts[0] == "c" and len(parts) == 3:
                v, c = int(parts[1]), int(parts[2])
                if not 0 <= v < n:
                    raise ParseError(f"line {lineno}: vertex id out of range [0, {n})")
                colors[v] = c
            else:
                raise ParseError(f"line {lineno}: unrecognised line {line!r}")
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ParseError("missing header 'p <n>'")
    vc = tuple(colors.get(v, 0) for v in range(n)) if colors else None
    return Multigraph(n, tuple(edges), vc)


def read_graph(path) -> Multigraph:
    with open(path) as fh:
        return parse_graph(fh.read())


def format_graph(G: Multigraph) -> str:
    lines = [f"p {G.n}"]
    lines += [f"e {u} {v}" for u, v in G.edges]
    if G.vertex_color is not None:
        lines += [f"c {v} {c}" for v, c in enumerate(G.vertex_color)]
    return "\n".join(lines) + "\n"


def graph_from_edges(edges: Iterable[tuple[int, int]], n: int | None = None) -> Multigraph:
    edges = [tuple(e) for e in edges]
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    return Multigraph(n, tuple(edges))
