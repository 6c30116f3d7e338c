"""Colour refinement: search-guided local colouring (BFC/DFC), 1-WL and 2-FWL.

All colours are dense integer ids handed out by a :class:`ColourTable`, which
interns tagged signature tuples. Two colourings can be compared only when
they came from the same table, so graph comparison always runs both inputs
through one table in lockstep.
"""

from __future__ import annotations

import json
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Hashable, Iterable, Sequence

from .eta import LinkRule, bfc_sets, dfc_sets
from .graph import Graph, disjoint_union, hop_subgraph
from .search import TieBreaker, bfs_tree, dfs_tree

__all__ = [
    "ColourTable",
    "Scheme",
    "Partition",
    "RefineResult",
    "Comparison",
    "RefinementError",
    "RootedLayout",
    "build_layout",
    "refine_lvc",
    "refine_wl1",
    "refine_fwl2",
    "distinguishable",
    "partition_refines",
    "METHODS",
]

METHODS = ("wl1", "fwl2", "bfc", "dfc")


class RefinementError(RuntimeError):
    """Refinement failed to stabilise within its hard round cap."""


class Scheme(str, Enum):
    BFC = "bfc"
    DFC = "dfc"


class ColourTable:
    """Injective map from signatures to dense colour ids ``0, 1, 2, ...``."""

    def __init__(self) -> None:
        self._ids: dict[Hashable, int] = {}

    def intern(self, signature: Hashable) -> int:
        ids = self._ids
        c = ids.get(signature)
        if c is None:
            c = ids[signature] = len(ids)
        return c

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, signature: Hashable) -> bool:
        return signature in self._ids


@dataclass(frozen=True)
class Partition:
    cells: tuple[frozenset, ...]

    @classmethod
    def from_colours(cls, colours: Sequence[int], domain: Sequence[Hashable] | None = None) -> Partition:
        if domain is None:
            domain = range(len(colours))
        groups: dict[int, list] = defaultdict(list)
        for x, c in zip(domain, colours):
            groups[c].append(x)
        cells = sorted((frozenset(g) for g in groups.values()), key=lambda s: sorted(s))
        return cls(tuple(cells))

    @property
    def domain(self) -> frozenset:
        return frozenset().union(*self.cells) if self.cells else frozenset()

    def canonical(self) -> tuple[tuple, ...]:
        return tuple(sorted(tuple(sorted(c)) for c in self.cells))

    def __len__(self) -> int:
        return len(self.cells)


def partition_refines(p1: Partition, p2: Partition) -> bool:
    """True iff every cell of ``p1`` lies inside some cell of ``p2``."""
    if p1.domain != p2.domain:
        raise ValueError("partitions are over different domains")
    where = {}
    for k, cell in enumerate(p2.cells):
        for x in cell:
            where[x] = k
    return all(len({where[x] for x in cell}) == 1 for cell in p1.cells)


def _same_partition(a: Sequence[int], b: Sequence[int]) -> bool:
    # equal iff the pairing (a[i], b[i]) is a bijection between class ids
    pairs = set(zip(a, b))
    return len(pairs) == len(set(a)) == len(set(b))


def _histogram(colours: Iterable[int]) -> list[tuple[int, int]]:
    return sorted(Counter(colours).items())


@dataclass
class RefineResult:
    """Stable colouring plus bookkeeping.

    ``colours`` is indexed by vertex (or, for ``fwl2``, by ``u * n + v``).
    ``rooted`` maps ``(root, u)`` to the final rooted colour for BFC/DFC.
    """

    method: str
    delta: int | None
    colours: tuple[int, ...]
    rounds: int
    partition_sizes: list[int]
    n: int
    rooted: dict[tuple[int, int], int] | None = None
    pairs: bool = False

    @property
    def histogram(self) -> list[tuple[int, int]]:
        return _histogram(self.colours)

    @property
    def domain(self) -> list:
        if self.pairs:
            return [(u, v) for u in range(self.n) for v in range(self.n)]
        return list(range(self.n))

    @property
    def partition(self) -> Partition:
        return Partition.from_colours(self.colours, self.domain)

    def classes(self) -> list[list]:
        cells = [sorted(c) for c in self.partition.cells]
        return sorted(cells)

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "delta": self.delta,
            "rounds": self.rounds,
            "colour_histogram": [list(x) for x in self.histogram],
            "classes": [[list(x) if self.pairs else x for x in cell] for cell in self.classes()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


# --------------------------------------------------------------------------
# search-guided local colouring

@dataclass
class RootedLayout:
    """Flattened rooted states ``(v, u)`` for ``u`` in the delta-ball of ``v``.

    ``eta[s]`` lists indices into the concatenation ``rooted + global``:
    a value ``k < S`` is another rooted state, ``S + v`` is the root ``v``
    itself, whose rooted colour is pinned to its global colour.
    """

    n: int
    root_of: list[int] = field(default_factory=list)
    u_of: list[int] = field(default_factory=list)
    eta: list[tuple[int, ...]] = field(default_factory=list)
    states_of: list[list[int]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.u_of)


def _root_ties(tie: TieBreaker | None, n: int) -> list[TieBreaker]:
    if tie is None or tie.seed is None:
        return [TieBreaker()] * n
    rng = random.Random(tie.seed)
    return [TieBreaker(rng.getrandbits(64)) for _ in range(n)]


def build_layout(
    g: Graph,
    delta: int,
    scheme: Scheme | str,
    tie: TieBreaker | None = None,
    rule: LinkRule = "overlap",
) -> RootedLayout:
    """Search every delta-ball once and record the eta sets as state indices."""
    scheme = Scheme(scheme)
    layout = RootedLayout(n=g.n, states_of=[[] for _ in range(g.n)])
    ties = _root_ties(tie, g.n)
    per_root = []
    for v in range(g.n):
        sub = hop_subgraph(g, v, delta)
        if scheme is Scheme.BFC:
            sets = bfc_sets(bfs_tree(sub, ties[v]))
        else:
            sets = dfc_sets(dfs_tree(sub, ties[v]), rule)
        base = layout.size
        local_state = {}
        for i, x in enumerate(sub.to_global):
            if i == sub.root_local:
                continue
            local_state[i] = len(layout.u_of)
            layout.root_of.append(v)
            layout.u_of.append(x)
            layout.states_of[x].append(local_state[i])
        per_root.append((sub, sets, local_state, base))
    total = layout.size
    for v, (sub, sets, local_state, _) in enumerate(per_root):
        for i in range(sub.graph.n):
            if i == sub.root_local:
                continue
            layout.eta.append(tuple(
                total + v if w == sub.root_local else local_state[w]
                for w in sorted(sets[i])
            ))
    return layout


def _initial(g: Graph, table: ColourTable, init: Sequence[int] | None) -> list[int]:
    if init is None:
        return [table.intern(("init", 0))] * g.n
    if len(init) != g.n:
        raise ValueError(f"expected {g.n} initial labels, got {len(init)}")
    return [table.intern(("init", int(x))) for x in init]


def refine_lvc(
    g: Graph,
    delta: int,
    scheme: Scheme | str,
    table: ColourTable | None = None,
    init: Sequence[int] | None = None,
    tie: TieBreaker | None = None,
    rule: LinkRule = "overlap",
) -> RefineResult:
    """Run BFC-delta or DFC-delta to a stable colouring.

    Each round first recolours every rooted state from the owner's global
    colour and the rooted colours of its eta set, then aggregates each
    vertex's rooted colours (over all roots within ``delta``) into its new
    global colour. Stops once the partition of global and rooted states
    together no longer changes.
    """
    if delta < 1:
        raise ValueError(f"delta must be at least 1, got {delta}")
    scheme = Scheme(scheme)
    table = table if table is not None else ColourTable()
    layout = build_layout(g, delta, scheme, tie, rule)
    intern = table.intern
    u_of, eta, states_of = layout.u_of, layout.eta, layout.states_of
    tag = "bfc" if scheme is Scheme.BFC else "dfc"

    glob = _initial(g, table, init)
    rooted = [glob[u] for u in u_of]
    sizes = [len(set(glob))]
    cap = 1 + layout.size + g.n
    for rnd in range(1, cap + 1):
        vals = rooted + glob
        new_rooted = [
            intern((tag, glob[u_of[s]], tuple(sorted([vals[k] for k in eta[s]]))))
            for s in range(layout.size)
        ]
        new_glob = [
            intern(("agg", glob[u], tuple(sorted([new_rooted[s] for s in states_of[u]]))))
            for u in range(g.n)
        ]
        stable = _same_partition(vals, new_rooted + new_glob)
        rooted, glob = new_rooted, new_glob
        sizes.append(len(set(glob)))
        if stable:
            break
    else:
        raise RefinementError(f"{tag}-{delta} did not stabilise within {cap} rounds")

    rooted_map = {(layout.root_of[s], u_of[s]): rooted[s] for s in range(layout.size)}
    for v in range(g.n):
        rooted_map[(v, v)] = glob[v]
    return RefineResult(tag, delta, tuple(glob), rnd, sizes, g.n, rooted=rooted_map)


# --------------------------------------------------------------------------
# baselines

def refine_wl1(
    g: Graph,
    table: ColourTable | None = None,
    init: Sequence[int] | None = None,
) -> RefineResult:
    """Classic 1-WL colour refinement."""
    table = table if table is not None else ColourTable()
    intern = table.intern
    adj = g.adjacency
    col = _initial(g, table, init)
    sizes = [len(set(col))]
    cap = 1 + g.n
    for rnd in range(1, cap + 1):
        new = [intern(("wl", col[u], tuple(sorted([col[w] for w in adj[u]])))) for u in range(g.n)]
        stable = _same_partition(col, new)
        col = new
        sizes.append(len(set(col)))
        if stable:
            break
    else:
        raise RefinementError(f"1-WL did not stabilise within {cap} rounds")
    return RefineResult("wl1", None, tuple(col), rnd, sizes, g.n)


def _fwl2_joint(graphs: Sequence[Graph], table: ColourTable) -> tuple[list[list[int]], int, list[int]]:
    """2-FWL on several graphs in lockstep; stops at joint pair-partition stability."""
    intern = table.intern
    self_c = intern(("fwl-init", "self"))
    edge_c = intern(("fwl-init", "edge"))
    non_c = intern(("fwl-init", "nonedge"))
    cols = []
    for g in graphs:
        n = g.n
        c = [non_c] * (n * n)
        for u in range(n):
            c[u * n + u] = self_c
            for w in g.adjacency[u]:
                c[u * n + w] = edge_c
        cols.append(c)
    flat = [x for c in cols for x in c]
    sizes = [len(set(flat))]
    cap = 1 + max((g.n * g.n for g in graphs), default=0)
    for rnd in range(1, cap + 1):
        new_cols = []
        for g, c in zip(graphs, cols):
            n = g.n
            new = [0] * (n * n)
            for u in range(n):
                row = c[u * n:(u + 1) * n]
                for v in range(n):
                    sig = tuple(sorted([(row[w], c[w * n + v]) for w in range(n)]))
                    new[u * n + v] = intern(("fwl", c[u * n + v], sig))
            new_cols.append(new)
        new_flat = [x for c in new_cols for x in c]
        stable = _same_partition(flat, new_flat)
        cols, flat = new_cols, new_flat
        sizes.append(len(set(flat)))
        if stable:
            return cols, rnd, sizes
    raise RefinementError(f"2-FWL did not stabilise within {cap} rounds")


def refine_fwl2(g: Graph, table: ColourTable | None = None) -> RefineResult:
    """2-FWL (folklore WL) on ordered vertex pairs."""
    table = table if table is not None else ColourTable()
    cols, rounds, sizes = _fwl2_joint([g], table)
    return RefineResult("fwl2", None, tuple(cols[0]), rounds, sizes, g.n, pairs=True)


# --------------------------------------------------------------------------
# comparison

@dataclass
class Comparison:
    method: str
    delta: int | None
    distinguished: bool
    rounds: int
    histograms: tuple[list[tuple[int, int]], list[tuple[int, int]]]

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "delta": self.delta,
            "distinguished": self.distinguished,
            "rounds": self.rounds,
            "histograms": [[list(x) for x in h] for h in self.histograms],
        }


def _check_method(method: str, delta: int | None) -> str:
    method = method.lower()
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method in ("bfc", "dfc"):
        if delta is None or delta < 1:
            raise ValueError(f"{method} needs delta >= 1")
    return method


def joint_refine(
    graphs: Sequence[Graph],
    method: str,
    delta: int | None = None,
    tie: TieBreaker | None = None,
    rule: LinkRule = "overlap",
) -> tuple[list[tuple[int, ...]], RefineResult | None, int]:
    """Refine several graphs with one table until jointly stable.

    Vertex methods run on the disjoint union (refinement never crosses
    components); 2-FWL runs the graphs in lockstep. Returns per-graph colour
    tuples, the union result (vertex methods only) and the round count.
    """
    method = _check_method(method, delta)
    table = ColourTable()
    if method == "fwl2":
        cols, rounds, _ = _fwl2_joint(graphs, table)
        return [tuple(c) for c in cols], None, rounds
    union, offsets = disjoint_union(*graphs)
    if method == "wl1":
        res = refine_wl1(union, table)
    else:
        res = refine_lvc(union, delta, method, table, tie=tie, rule=rule)
    parts = [res.colours[o:o + g.n] for o, g in zip(offsets, graphs)]
    return parts, res, res.rounds


def distinguishable(
    g1: Graph,
    g2: Graph,
    method: str,
    delta: int | None = None,
    rule: LinkRule = "overlap",
    tie: TieBreaker | None = None,
) -> Comparison:
    """Do the stable colour multisets of ``g1`` and ``g2`` differ?"""
    method = _check_method(method, delta)
    (c1, c2), _, rounds = joint_refine([g1, g2], method, delta, tie=tie, rule=rule)
    h1, h2 = _histogram(c1), _histogram(c2)
    return Comparison(
        method, delta if method in ("bfc", "dfc") else None, h1 != h2, rounds, (h1, h2)
    )
