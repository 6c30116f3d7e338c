"""BFS and DFS search trees over hop-aware subgraphs.

Every edge of the searched subgraph is classified exactly once, either as a
tree edge ``(parent, child)`` or as a back edge ``(later, earlier)`` oriented
from the later-discovered endpoint to the earlier one.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from enum import Enum

from .graph import HopAwareSubgraph

__all__ = ["TieBreaker", "SearchKind", "SearchTree", "bfs_tree", "dfs_tree", "build_tree"]


@dataclass(frozen=True)
class TieBreaker:
    """Order in which unvisited neighbours are tried.

    ``seed=None`` means ascending local id; an integer seed shuffles each
    adjacency list with a generator seeded once per search.
    """

    seed: int | None = None

    @classmethod
    def ascending(cls) -> TieBreaker:
        return cls(None)

    @classmethod
    def seeded(cls, seed: int) -> TieBreaker:
        return cls(int(seed))

    def neighbour_orders(self, adjacency: tuple[tuple[int, ...], ...]) -> list[tuple[int, ...]]:
        if self.seed is None:
            return list(adjacency)
        rng = random.Random(self.seed)
        out = []
        for nbrs in adjacency:
            lst = list(nbrs)
            rng.shuffle(lst)
            out.append(tuple(lst))
        return out


class SearchKind(str, Enum):
    BFS = "BFS"
    DFS = "DFS"


@dataclass(frozen=True)
class SearchTree:
    """A rooted search over a hop-aware subgraph, in local ids.

    ``order[v]`` is the discovery index of ``v`` (root is 0) and
    ``parent[v]`` its tree parent (``None`` for the root).
    """

    kind: SearchKind
    root: int
    order: tuple[int, ...]
    parent: tuple[int | None, ...]
    tree_edges: tuple[tuple[int, int], ...]
    back_edges: tuple[tuple[int, int], ...]
    sub: HopAwareSubgraph

    @property
    def n(self) -> int:
        return len(self.order)

    def discovery_sequence(self) -> list[int]:
        seq = [0] * self.n
        for v, i in enumerate(self.order):
            seq[i] = v
        return seq

    def tree_path(self, descendant: int, ancestor: int) -> list[int]:
        """Vertices from ``descendant`` up parent links to ``ancestor`` inclusive."""
        path = [descendant]
        x = descendant
        while x != ancestor:
            x = self.parent[x]
            if x is None:
                raise ValueError(f"{ancestor} is not an ancestor of {descendant}")
            path.append(x)
        return path

    def is_ancestor(self, ancestor: int, v: int) -> bool:
        x: int | None = v
        while x is not None:
            if x == ancestor:
                return True
            x = self.parent[x]
        return False


def bfs_tree(sub: HopAwareSubgraph, tie: TieBreaker = TieBreaker()) -> SearchTree:
    """Level-order search from the root of ``sub``."""
    g = sub.graph
    nbr_order = tie.neighbour_orders(g.adjacency)
    root = sub.root_local
    order = [-1] * g.n
    parent: list[int | None] = [None] * g.n
    order[root] = 0
    tree_edges: list[tuple[int, int]] = []
    back_edges: list[tuple[int, int]] = []
    count = 1
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in nbr_order[u]:
            if order[w] < 0:
                order[w] = count
                count += 1
                parent[w] = u
                tree_edges.append((u, w))
                queue.append(w)
            elif order[w] < order[u] and parent[u] != w:
                back_edges.append((u, w))
    return SearchTree(
        SearchKind.BFS, root, tuple(order), tuple(parent),
        tuple(tree_edges), tuple(back_edges), sub,
    )


def dfs_tree(sub: HopAwareSubgraph, tie: TieBreaker = TieBreaker()) -> SearchTree:
    """Depth-first search from the root of ``sub`` with an explicit stack."""
    g = sub.graph
    nbr_order = tie.neighbour_orders(g.adjacency)
    root = sub.root_local
    order = [-1] * g.n
    parent: list[int | None] = [None] * g.n
    order[root] = 0
    tree_edges: list[tuple[int, int]] = []
    back_edges: list[tuple[int, int]] = []
    count = 1
    stack = [(root, 0)]
    while stack:
        u, k = stack[-1]
        nbrs = nbr_order[u]
        if k == len(nbrs):
            stack.pop()
            continue
        stack[-1] = (u, k + 1)
        w = nbrs[k]
        if order[w] < 0:
            order[w] = count
            count += 1
            parent[w] = u
            tree_edges.append((u, w))
            stack.append((w, 0))
        elif order[w] < order[u] and parent[u] != w:
            back_edges.append((u, w))
    return SearchTree(
        SearchKind.DFS, root, tuple(order), tuple(parent),
        tuple(tree_edges), tuple(back_edges), sub,
    )


def build_tree(kind: SearchKind | str, sub: HopAwareSubgraph, tie: TieBreaker = TieBreaker()) -> SearchTree:
    kind = SearchKind(kind)
    return bfs_tree(sub, tie) if kind is SearchKind.BFS else dfs_tree(sub, tie)
