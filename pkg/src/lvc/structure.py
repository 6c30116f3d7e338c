"""Structural oracles: shortest-path graphs, ego shortest-path graphs,
cut vertices and bridges, and a check that DFC colours respect them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .graph import Graph, connected_components, distances_from, induced_subgraph
from .refine import joint_refine

__all__ = [
    "Spg",
    "Espg",
    "BiconnReport",
    "ConsistencyReport",
    "spg",
    "espg",
    "tarjan_biconnectivity",
    "removal_oracle",
    "consistency_check",
]


@dataclass(frozen=True)
class Spg:
    graph: Graph
    endpoints: tuple[int, int]  # global ids
    to_global: tuple[int, ...]

    def local(self, x: int) -> int:
        return self.to_global.index(x)


@dataclass(frozen=True)
class Espg:
    graph: Graph
    center: int
    delta: int
    to_global: tuple[int, ...]

    def local(self, x: int) -> int:
        return self.to_global.index(x)


def _subgraph_from_edges(vertices, edges) -> tuple[Graph, tuple[int, ...]]:
    to_global = tuple(sorted(vertices))
    local = {x: i for i, x in enumerate(to_global)}
    return Graph.from_edges(len(to_global), ((local[a], local[b]) for a, b in edges)), to_global


def _spg_edges(g: Graph, du: dict[int, int], dv: dict[int, int], d: int):
    verts = [w for w in du if w in dv and du[w] + dv[w] == d]
    edges = set()
    for a in verts:
        for b in g.adjacency[a]:
            if b in du and b in dv and du[a] + 1 + dv[b] == d:
                edges.add((min(a, b), max(a, b)))
    return verts, edges


def spg(g: Graph, u: int, v: int) -> Spg:
    """All vertices and edges lying on some shortest ``u``-``v`` path."""
    du = distances_from(g, u)
    if v not in du:
        raise ValueError(f"vertices {u} and {v} are disconnected")
    dv = distances_from(g, v)
    verts, edges = _spg_edges(g, du, dv, du[v])
    sub, to_global = _subgraph_from_edges(verts, edges)
    return Spg(sub, (u, v), to_global)


def espg(g: Graph, v: int, delta: int) -> Espg:
    """Union of the shortest-path graphs from ``v`` to each vertex within ``delta``.

    Equivalently, the BFS layering of the ball with same-level edges removed.
    """
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta}")
    dist = distances_from(g, v, delta)
    edges = set()
    for a, da in dist.items():
        for b in g.adjacency[a]:
            if dist.get(b) == da + 1:
                edges.add((min(a, b), max(a, b)))
    sub, to_global = _subgraph_from_edges(dist, edges)
    return Espg(sub, v, delta, to_global)


@dataclass
class BiconnReport:
    cut_vertices: list[int]
    cut_edges: list[tuple[int, int]]
    in_cycle: list[bool]

    def to_dict(self) -> dict:
        return {
            "cut_vertices": sorted(self.cut_vertices),
            "cut_edges": sorted([list(e) for e in self.cut_edges]),
            "in_cycle": list(self.in_cycle),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def tarjan_biconnectivity(g: Graph) -> BiconnReport:
    """Articulation points and bridges via iterative low-link DFS.

    A vertex lies on a cycle iff it is incident to a non-bridge edge, i.e.
    it belongs to a biconnected component with at least two edges.
    """
    n = g.n
    adj = g.adjacency
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    cut = set()
    bridges = []
    t = 0
    for s in range(n):
        if disc[s] >= 0:
            continue
        disc[s] = low[s] = t
        t += 1
        root_children = 0
        stack = [(s, 0)]
        while stack:
            u, k = stack[-1]
            if k < len(adj[u]):
                stack[-1] = (u, k + 1)
                w = adj[u][k]
                if disc[w] < 0:
                    parent[w] = u
                    disc[w] = low[w] = t
                    t += 1
                    if u == s:
                        root_children += 1
                    stack.append((w, 0))
                elif w != parent[u]:
                    low[u] = min(low[u], disc[w])
                continue
            stack.pop()
            p = parent[u]
            if p >= 0:
                low[p] = min(low[p], low[u])
                if low[u] > disc[p]:
                    bridges.append((min(p, u), max(p, u)))
                if p != s and low[u] >= disc[p]:
                    cut.add(p)
        if root_children >= 2:
            cut.add(s)
    bridge_set = set(bridges)
    in_cycle = [
        any((min(v, w), max(v, w)) not in bridge_set for w in adj[v]) for v in range(n)
    ]
    return BiconnReport(sorted(cut), sorted(bridges), in_cycle)


def removal_oracle(g: Graph) -> tuple[list[int], list[tuple[int, int]]]:
    """Cut vertices and bridges found by deleting each one and recounting components."""
    base = len(connected_components(g))
    cut = []
    for v in range(g.n):
        keep = [x for x in range(g.n) if x != v]
        h, _ = induced_subgraph(g, keep)
        if len(connected_components(h)) > base - (1 if g.degree(v) == 0 else 0):
            cut.append(v)
    bridges = []
    all_edges = list(g.edges())
    for e in all_edges:
        h = Graph.from_edges(g.n, (f for f in all_edges if f != e))
        if len(connected_components(h)) > base:
            bridges.append(e)
    return cut, bridges


@dataclass
class ConsistencyReport:
    delta: int
    violations: list[str] = field(default_factory=list)
    histograms: tuple[list, list] = ((), ())

    @property
    def ok(self) -> bool:
        return not self.violations


def _vertex_biconnected(g: Graph, rep: BiconnReport) -> bool:
    return len(connected_components(g)) == 1 and not rep.cut_vertices


def _edge_biconnected(g: Graph, rep: BiconnReport) -> bool:
    return len(connected_components(g)) == 1 and not rep.cut_edges


def consistency_check(g1: Graph, g2: Graph, delta: int) -> ConsistencyReport:
    """Check stable DFC-delta colours against cut-vertex, bridge and cycle facts.

    Vertices (within or across the two graphs) sharing a colour must agree
    on cut-vertex status and cycle membership; edges with equal endpoint
    colour multisets must agree on bridge status; no leaf may share a colour
    with a cut vertex; and a biconnected graph must not share its colour
    multiset with a non-biconnected one.
    """
    (c1, c2), _, _ = joint_refine([g1, g2], "dfc", delta)
    graphs = (g1, g2)
    cols = (c1, c2)
    reps = (tarjan_biconnectivity(g1), tarjan_biconnectivity(g2))
    rep = ConsistencyReport(delta)

    by_colour: dict[int, list[tuple[int, int]]] = {}
    for k, c in enumerate(cols):
        for v, x in enumerate(c):
            by_colour.setdefault(x, []).append((k, v))

    def is_cut(k: int, v: int) -> bool:
        return v in cut_sets[k]

    cut_sets = (set(reps[0].cut_vertices), set(reps[1].cut_vertices))
    for colour, members in sorted(by_colour.items()):
        cut_flags = {is_cut(k, v) for k, v in members}
        if len(cut_flags) > 1:
            rep.violations.append(f"colour {colour}: cut and non-cut vertices share it: {members}")
        cyc_flags = {reps[k].in_cycle[v] for k, v in members}
        if len(cyc_flags) > 1:
            rep.violations.append(f"colour {colour}: cycle and acyclic vertices share it: {members}")
        leaves = [(k, v) for k, v in members if graphs[k].degree(v) == 1]
        if leaves and True in cut_flags:
            rep.violations.append(f"colour {colour}: leaf shares colour with a cut vertex: {members}")

    by_edge: dict[tuple[int, int], set[bool]] = {}
    for k, g in enumerate(graphs):
        bridges = set(reps[k].cut_edges)
        for a, b in g.edges():
            key = tuple(sorted((cols[k][a], cols[k][b])))
            by_edge.setdefault(key, set()).add((a, b) in bridges)
    for key, flags in sorted(by_edge.items()):
        if len(flags) > 1:
            rep.violations.append(f"edge colours {key}: bridge and non-bridge edges share them")

    h1, h2 = sorted(c1), sorted(c2)
    rep.histograms = (h1, h2)
    for name, test in (("vertex", _vertex_biconnected), ("edge", _edge_biconnected)):
        b1, b2 = test(g1, reps[0]), test(g2, reps[1])
        if b1 != b2 and h1 == h2:
            rep.violations.append(f"{name}-biconnected and non-biconnected graphs share a colour multiset")
    return rep

