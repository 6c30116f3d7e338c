"""Undirected simple graphs over dense integer ids, plus the small helpers the
colouring code needs: parsing, named generators, hop distances, delta
neighbourhoods and a size-capped isomorphism oracle.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Graph",
    "HopAwareSubgraph",
    "ParseError",
    "MalformedHeader",
    "MalformedLine",
    "VertexOutOfRange",
    "SelfLoop",
    "DuplicateEdge",
    "EdgeCountMismatch",
    "parse_edge_list",
    "format_edge_list",
    "generate",
    "FAMILIES",
    "distances_from",
    "neighborhood",
    "hop_subgraph",
    "induced_subgraph",
    "brute_iso",
    "permute",
    "disjoint_union",
    "connected_components",
    "random_graph",
    "random_connected_graph",
    "BRUTE_ISO_LIMIT",
]

BRUTE_ISO_LIMIT = 10


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph with vertices ``0..n-1``.

    ``adjacency[v]`` is the strictly ascending tuple of neighbours of ``v``.
    Use :meth:`from_edges` rather than the constructor; it validates and
    normalises the input.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if v in nbrs[u]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield each undirected edge once as ``(u, v)`` with ``u < v``."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield u, v

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.adjacency[u]
        # adjacency lists are short; bisect would not pay off
        return v in nbrs

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True)
class HopAwareSubgraph:
    """Induced subgraph on a root and its delta-neighbourhood.

    Local ids follow ascending global id order. ``dist[i]`` is the hop
    distance (in the parent graph) from the root to local vertex ``i``.
    """

    graph: Graph
    to_global: tuple[int, ...]
    root_local: int
    dist: tuple[int, ...]
    delta: int

    @property
    def root(self) -> int:
        return self.to_global[self.root_local]


# --------------------------------------------------------------------------
# parsing

class ParseError(ValueError):
    """Edge-list text could not be parsed. ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class MalformedHeader(ParseError):
    pass


class MalformedLine(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class SelfLoop(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class EdgeCountMismatch(ParseError):
    pass


def _parse_ints(text: str, line: int, exc: type[ParseError]) -> tuple[int, int]:
    parts = text.split()
    if len(parts) != 2:
        raise exc(line, f"expected two integers, got {text!r}")
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise exc(line, f"expected two integers, got {text!r}") from None
    return a, b


def parse_edge_list(text: str | bytes) -> Graph:
    """Parse the ``n m`` header / ``u v`` lines edge-list format.

    Lines starting with ``#`` are comments; blank lines are ignored. Each
    undirected edge must appear once, in either orientation.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header: tuple[int, int] | None = None
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            n, m = _parse_ints(line, lineno, MalformedHeader)
            if n < 0 or m < 0:
                raise MalformedHeader(lineno, "vertex and edge counts must be non-negative")
            header = (n, m)
            continue
        n, m = header
        u, v = _parse_ints(line, lineno, MalformedLine)
        for x in (u, v):
            if not 0 <= x < n:
                raise VertexOutOfRange(lineno, f"vertex id {x} out of range [0, {n})")
        if u == v:
            raise SelfLoop(lineno, f"self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise DuplicateEdge(lineno, f"duplicate edge {key[0]}-{key[1]}")
        if len(edges) == m:
            raise EdgeCountMismatch(lineno, f"more than the declared {m} edges")
        seen.add(key)
        edges.append(key)
    if header is None:
        raise MalformedHeader(max(last_line, 1), "missing 'n m' header")
    if len(edges) != header[1]:
        raise EdgeCountMismatch(
            max(last_line, 1), f"declared {header[1]} edges, found {len(edges)}"
        )
    return Graph.from_edges(header[0], edges)


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"{g.n} {g.edge_count}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# generators

def _positive(name: str, *values: int) -> None:
    for x in values:
        if x <= 0:
            raise ValueError(f"{name}: size parameters must be positive, got {x}")


def _cycle_edges(start: int, length: int) -> list[tuple[int, int]]:
    return [(start + i, start + (i + 1) % length) for i in range(length)]


def _gen_cycle(n: int) -> Graph:
    _positive("cycle", n)
    if n < 3:
        raise ValueError(f"cycle: length must be at least 3, got {n}")
    return Graph.from_edges(n, _cycle_edges(0, n))


def _gen_union_cycles(k: int, length: int) -> Graph:
    _positive("union_cycles", k, length)
    if length < 3:
        raise ValueError(f"union_cycles: length must be at least 3, got {length}")
    edges = []
    for c in range(k):
        edges.extend(_cycle_edges(c * length, length))
    return Graph.from_edges(k * length, edges)


def _gen_path(n: int) -> Graph:
    _positive("path", n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _gen_complete(n: int) -> Graph:
    _positive("complete", n)
    return Graph.from_edges(n, combinations(range(n), 2))


def _gen_star(n: int) -> Graph:
    _positive("star", n)
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def _gen_complete_bipartite(a: int, b: int) -> Graph:
    _positive("complete_bipartite", a, b)
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def _gen_prism(k: int) -> Graph:
    _positive("prism", k)
    if k < 3:
        raise ValueError(f"prism: k must be at least 3, got {k}")
    edges = _cycle_edges(0, k) + _cycle_edges(k, k) + [(i, k + i) for i in range(k)]
    return Graph.from_edges(2 * k, edges)


def _gen_rook4x4() -> Graph:
    # vertex (r, c) -> 4r + c
    edges = []
    for a, b in combinations(range(16), 2):
        if a // 4 == b // 4 or a % 4 == b % 4:
            edges.append((a, b))
    return Graph.from_edges(16, edges)


def _gen_shrikhande() -> Graph:
    # Cayley graph on Z4 x Z4, (i, j) -> 4i + j
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for a, b in combinations(range(16), 2):
        di = (b // 4 - a // 4) % 4
        dj = (b % 4 - a % 4) % 4
        if (di, dj) in conn:
            edges.append((a, b))
    return Graph.from_edges(16, edges)


def _gen_uneven_barbell(a: int, b: int, p: int) -> Graph:
    """Clique ``0..a-1`` and clique ``a+p..a+p+b-1`` joined through ``p``
    path vertices ``a..a+p-1``; attachment points are ``a-1`` and ``a+p``."""
    _positive("uneven_barbell", a, b)
    if p < 0:
        raise ValueError(f"uneven_barbell: path length must be non-negative, got {p}")
    n = a + p + b
    edges = list(combinations(range(a), 2))
    edges.extend(combinations(range(a + p, n), 2))
    chain = list(range(a - 1, a + p + 1))
    edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(n, edges)


FAMILIES = {
    "cycle": (_gen_cycle, 1),
    "union_cycles": (_gen_union_cycles, 2),
    "path": (_gen_path, 1),
    "complete": (_gen_complete, 1),
    "star": (_gen_star, 1),
    "complete_bipartite": (_gen_complete_bipartite, 2),
    "prism": (_gen_prism, 1),
    "rook4x4": (_gen_rook4x4, 0),
    "shrikhande": (_gen_shrikhande, 0),
    "uneven_barbell": (_gen_uneven_barbell, 3),
}


def generate(family: str, params: Sequence[int] = ()) -> Graph:
    """Build a named graph, e.g. ``generate("union_cycles", [2, 3])``."""
    try:
        fn, arity = FAMILIES[family]
    except KeyError:
        raise ValueError(
            f"unknown family {family!r}; known: {', '.join(sorted(FAMILIES))}"
        ) from None
    params = [int(x) for x in params]
    if len(params) != arity:
        raise ValueError(f"{family} takes {arity} parameter(s), got {len(params)}")
    return fn(*params)


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Erdős–Rényi G(n, p)."""
    return Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus independent extra edges with probability ``p``."""
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return Graph.from_edges(n, edges)


# --------------------------------------------------------------------------
# distances and neighbourhoods

def distances_from(g: Graph, source: int, cutoff: int | None = None) -> dict[int, int]:
    """BFS hop distances from ``source``; vertices beyond ``cutoff`` are absent."""
    if not 0 <= source < g.n:
        raise IndexError(f"source {source} out of range for n={g.n}")
    dist = {source: 0}
    frontier = [source]
    d = 0
    adj = g.adjacency
    while frontier and (cutoff is None or d < cutoff):
        d += 1
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def neighborhood(g: Graph, v: int, delta: int) -> tuple[int, ...]:
    """Vertices at hop distance 1..delta from ``v`` (``v`` excluded)."""
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta}")
    return tuple(sorted(u for u, d in distances_from(g, v, delta).items() if d >= 1))


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph with local ids in ascending global order."""
    to_global = tuple(sorted(set(vertices)))
    local = {x: i for i, x in enumerate(to_global)}
    edges = []
    for i, x in enumerate(to_global):
        for y in g.adjacency[x]:
            j = local.get(y)
            if j is not None and i < j:
                edges.append((i, j))
    return Graph.from_edges(len(to_global), edges), to_global


def hop_subgraph(g: Graph, v: int, delta: int) -> HopAwareSubgraph:
    dist = distances_from(g, v, delta)
    sub, to_global = induced_subgraph(g, dist)
    return HopAwareSubgraph(
        graph=sub,
        to_global=to_global,
        root_local=to_global.index(v),
        dist=tuple(dist[x] for x in to_global),
        delta=delta,
    )


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


# --------------------------------------------------------------------------
# relabelling and isomorphism

def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel vertex ``v`` as ``perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a bijection on range(n)")
    return Graph.from_edges(g.n, ((perm[u], perm[v]) for u, v in g.edges()))


def disjoint_union(*graphs: Graph) -> tuple[Graph, list[int]]:
    """Disjoint union; also returns the id offset of each input graph."""
    offsets = []
    edges = []
    n = 0
    for g in graphs:
        offsets.append(n)
        edges.extend((u + n, v + n) for u, v in g.edges())
        n += g.n
    return Graph.from_edges(n, edges), offsets


def brute_iso(
    g1: Graph,
    g2: Graph,
    anchors: Sequence[tuple[int, int]] = (),
) -> bool:
    """Exhaustive isomorphism test for graphs with at most ten vertices.

    ``anchors`` lists ``(a, b)`` pairs that the bijection must map ``a -> b``
    (used for rooted comparisons of shortest-path subgraphs).
    """
    if g1.n > BRUTE_ISO_LIMIT or g2.n > BRUTE_ISO_LIMIT:
        raise ValueError(f"brute_iso is limited to {BRUTE_ISO_LIMIT} vertices")
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return False
    deg1, deg2 = g1.degrees(), g2.degrees()
    if sorted(deg1) != sorted(deg2):
        return False

    mapping = [-1] * g1.n
    used = [False] * g2.n
    for a, b in anchors:
        if deg1[a] != deg2[b] or mapping[a] not in (-1, b) or (used[b] and mapping[a] != b):
            return False
        mapping[a] = b
        used[b] = True
    for a, b in anchors:
        for c, d in anchors:
            if g1.has_edge(a, c) != g2.has_edge(b, d):
                return False

    # high-degree vertices first: they prune hardest
    order = sorted((v for v in range(g1.n) if mapping[v] < 0), key=lambda v: -deg1[v])
    adj1 = [set(a) for a in g1.adjacency]
    adj2 = [set(a) for a in g2.adjacency]

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        a = order[k]
        for b in range(g2.n):
            if used[b] or deg2[b] != deg1[a]:
                continue
            if any(
                mapping[c] >= 0 and ((c in adj1[a]) != (mapping[c] in adj2[b]))
                for c in range(g1.n)
            ):
                continue
            mapping[a] = b
            used[b] = True
            if extend(k + 1):
                return True
            mapping[a] = -1
            used[b] = False
        return False

    return extend(0)
