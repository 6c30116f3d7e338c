"""Neighbour selection for search-guided colouring.

``eta_bfc`` keeps the neighbours one BFS level closer to the root.
``eta_dfc`` keeps the tree parent plus every vertex covered by the back edges
reachable, through the back-edge linking relation, from those covering ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, NamedTuple

from .search import SearchKind, SearchTree

__all__ = [
    "BackEdgeRef",
    "CoverClosure",
    "back_edge_refs",
    "covers",
    "crossover",
    "paths_overlap",
    "cover_closure",
    "eta_bfc",
    "eta_dfc",
    "bfc_sets",
    "dfc_sets",
    "LinkRule",
]

LinkRule = Literal["overlap", "index"]


class BackEdgeRef(NamedTuple):
    """Back edge ``frm -> to`` with discovery indices ``i > j``."""

    i: int
    j: int
    frm: int
    to: int


@dataclass(frozen=True)
class CoverClosure:
    q: frozenset[BackEdgeRef]
    d: frozenset[BackEdgeRef]
    b: frozenset[int]


def back_edge_refs(tree: SearchTree) -> list[BackEdgeRef]:
    """Back edges of ``tree`` sorted by ``(i, j)``."""
    refs = [BackEdgeRef(tree.order[a], tree.order[b], a, b) for a, b in tree.back_edges]
    refs.sort()
    return refs


def _span(tree: SearchTree, e: BackEdgeRef) -> list[int]:
    # BFS back edges need not join an ancestor; only DFS spans are tree paths
    return tree.tree_path(e.frm, e.to)


def covers(tree: SearchTree, w: int, e: BackEdgeRef) -> bool:
    """True iff ``w`` is on the tree path ``e.to .. e.frm``, endpoints included."""
    return w in _span(tree, e)


def crossover(e1: BackEdgeRef, e2: BackEdgeRef) -> bool:
    """The four-case index relation between two back edges of one tree."""
    i1, j1, i2, j2 = e1.i, e1.j, e2.i, e2.j
    return (
        j2 < j1 < i2 < i1
        or j1 < j2 < i1 < i2
        or (j1 == j2 and i1 != i2)
        or (i1 == i2 and j1 != j2)
    )


def paths_overlap(tree: SearchTree, e1: BackEdgeRef, e2: BackEdgeRef) -> bool:
    """True iff the tree paths spanned by ``e1`` and ``e2`` share a tree edge.

    A tree edge is identified by its child endpoint, so the edges of a span
    are its vertices minus the top one.
    """
    if e1 == e2:
        return False
    s1 = set(_span(tree, e1)[:-1])
    return any(x in s1 for x in _span(tree, e2)[:-1])


def _linked(tree: SearchTree, rule: LinkRule):
    if rule == "index":
        return lambda a, b: crossover(a, b)
    if rule == "overlap":
        spans = {}

        def edges_of(e: BackEdgeRef) -> frozenset[int]:
            s = spans.get(e)
            if s is None:
                s = spans[e] = frozenset(_span(tree, e)[:-1])
            return s

        return lambda a, b: a != b and not edges_of(a).isdisjoint(edges_of(b))
    raise ValueError(f"unknown link rule {rule!r}")


def cover_closure(tree: SearchTree, u: int, rule: LinkRule = "overlap") -> CoverClosure:
    """Back edges covering ``u``, their fixed-point expansion, and covered vertices.

    The expansion repeatedly adds every back edge linked to one already in
    the set, where ``rule`` picks the link: ``"overlap"`` (spans share a tree
    edge) or ``"index"`` (the literal four-case :func:`crossover`).
    """
    _require_dfs(tree)
    refs = back_edge_refs(tree)
    q = [e for e in refs if covers(tree, u, e)]
    linked = _linked(tree, rule)
    d = list(q)
    in_d = set(q)
    k = 0
    while k < len(d):
        e1 = d[k]
        k += 1
        for e2 in refs:
            if e2 not in in_d and linked(e1, e2):
                in_d.add(e2)
                d.append(e2)
    b: set[int] = set()
    for e in d:
        b.update(_span(tree, e))
    return CoverClosure(frozenset(q), frozenset(d), frozenset(b))


def _require_dfs(tree: SearchTree) -> None:
    if tree.kind is not SearchKind.DFS:
        raise ValueError("cover relations are defined on DFS trees")


def _require_non_root(tree: SearchTree, u: int) -> None:
    if u == tree.root:
        raise ValueError("eta is undefined at the root")


def eta_bfc(tree: SearchTree, u: int) -> frozenset[int]:
    """Neighbours of ``u`` one level closer to the root.

    This is the tree parent plus every back-edge partner on the previous
    level; same-level partners are dropped. Edge orientation is ignored, so
    the result does not depend on the tie-breaking order.
    """
    if tree.kind is not SearchKind.BFS:
        raise ValueError("eta_bfc needs a BFS tree")
    _require_non_root(tree, u)
    dist = tree.sub.dist
    want = dist[u] - 1
    return frozenset(o for o in tree.sub.graph.adjacency[u] if dist[o] == want)


def eta_dfc(tree: SearchTree, u: int, rule: LinkRule = "overlap") -> frozenset[int]:
    _require_dfs(tree)
    _require_non_root(tree, u)
    return frozenset(cover_closure(tree, u, rule).b | {tree.parent[u]})


def bfc_sets(tree: SearchTree) -> list[frozenset[int] | None]:
    """``eta_bfc`` for every vertex; ``None`` at the root."""
    dist = tree.sub.dist
    adj = tree.sub.graph.adjacency
    out: list[frozenset[int] | None] = []
    for u in range(tree.n):
        if u == tree.root:
            out.append(None)
        else:
            want = dist[u] - 1
            out.append(frozenset(o for o in adj[u] if dist[o] == want))
    return out


def dfc_sets(tree: SearchTree, rule: LinkRule = "overlap") -> list[frozenset[int] | None]:
    """``eta_dfc`` for every vertex at once; ``None`` at the root.

    Back edges are grouped into classes of the link relation (union-find);
    the closure of ``Q_u`` is the union of the classes it touches.
    """
    _require_dfs(tree)
    refs = back_edge_refs(tree)
    m = len(refs)
    spans = [_span(tree, e) for e in refs]

    parent = list(range(m))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    if rule == "overlap":
        # edges sharing a tree edge (keyed by child vertex) are linked
        first_on: dict[int, int] = {}
        for k, span in enumerate(spans):
            for c in span[:-1]:
                other = first_on.setdefault(c, k)
                if other != k:
                    parent[find(k)] = find(other)
    elif rule == "index":
        for a in range(m):
            for b in range(a + 1, m):
                if crossover(refs[a], refs[b]):
                    parent[find(a)] = find(b)
    else:
        raise ValueError(f"unknown link rule {rule!r}")

    class_vertices: dict[int, set[int]] = {}
    covering: list[set[int]] = [set() for _ in range(tree.n)]
    for k, span in enumerate(spans):
        r = find(k)
        class_vertices.setdefault(r, set()).update(span)
        for x in span:
            covering[x].add(r)

    out: list[frozenset[int] | None] = []
    for u in range(tree.n):
        if u == tree.root:
            out.append(None)
            continue
        b: set[int] = {tree.parent[u]}
        for r in covering[u]:
            b |= class_vertices[r]
        out.append(frozenset(b))
    return out
