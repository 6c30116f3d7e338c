from __future__ import annotations

import networkx as nx
import pytest
from conftest import graphs
from hypothesis import given
from hypothesis import strategies as st

from lvc.eta import (
    BackEdgeRef,
    back_edge_refs,
    bfc_sets,
    cover_closure,
    covers,
    crossover,
    dfc_sets,
    eta_bfc,
    eta_dfc,
    paths_overlap,
)
from lvc.graph import Graph, generate, hop_subgraph
from lvc.search import TieBreaker, bfs_tree, dfs_tree

DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2)])
RULES = ("overlap", "index")


def ref(i, j):
    return BackEdgeRef(i, j, i, j)


def triangle_tree():
    return dfs_tree(hop_subgraph(generate("complete", [3]), 0, 1))


def test_crossover_cases():
    assert crossover(ref(3, 1), ref(5, 2))  # interleaved
    assert crossover(ref(5, 0), ref(5, 2))  # shared later endpoint
    assert crossover(ref(5, 2), ref(7, 2))  # shared earlier endpoint
    assert not crossover(ref(5, 0), ref(3, 1))  # nested
    assert not crossover(ref(2, 0), ref(5, 3))  # disjoint


@given(st.tuples(st.integers(0, 8), st.integers(0, 8)), st.tuples(st.integers(0, 8), st.integers(0, 8)))
def test_crossover_symmetric(a, b):
    e1, e2 = ref(max(a), min(a)), ref(max(b), min(b))
    assert crossover(e1, e2) == crossover(e2, e1)


def test_covers_triangle():
    t = triangle_tree()
    (e,) = back_edge_refs(t)
    assert {w for w in range(3) if covers(t, w, e)} == {0, 1, 2}


@pytest.mark.parametrize("rule", RULES)
def test_closure_triangle(rule):
    t = triangle_tree()
    c = cover_closure(t, 1, rule)
    assert {(e.frm, e.to) for e in c.q} == {(2, 0)}
    assert c.d == c.q and c.b == {0, 1, 2}
    assert eta_dfc(t, 1, rule) == {0, 1, 2}


@pytest.mark.parametrize("rule", RULES)
def test_closure_path(rule):
    t = dfs_tree(hop_subgraph(generate("path", [3]), 0, 2))
    c = cover_closure(t, 1, rule)
    assert not c.q and not c.d and not c.b
    assert eta_dfc(t, 1, rule) == {0}


@pytest.mark.parametrize("rule", RULES)
def test_closure_diamond(rule):
    t = dfs_tree(hop_subgraph(DIAMOND, 0, 2))
    c = cover_closure(t, 3, rule)
    assert {(e.frm, e.to) for e in c.q} == {(3, 1)}
    assert {(e.frm, e.to) for e in c.d} == {(3, 1), (2, 0)}
    assert c.b == {0, 1, 2, 3}
    assert eta_dfc(t, 3, rule) == {0, 1, 2, 3}


def test_eta_bfc_diamond():
    t = bfs_tree(hop_subgraph(DIAMOND, 0, 2))
    assert eta_bfc(t, 3) == {1, 2}
    assert eta_bfc(t, 2) == {0}
    assert eta_bfc(t, 1) == {0}


def test_eta_dfc_cycle6_delta1_is_parent_only():
    t = dfs_tree(hop_subgraph(generate("cycle", [6]), 0, 1))
    root = t.root
    for u in range(t.n):
        if u != root:
            assert eta_dfc(t, u) == {root}


def test_eta_errors():
    sub = hop_subgraph(DIAMOND, 0, 2)
    b, d = bfs_tree(sub), dfs_tree(sub)
    with pytest.raises(ValueError):
        eta_bfc(b, b.root)
    with pytest.raises(ValueError):
        eta_dfc(d, d.root)
    with pytest.raises(ValueError):
        eta_bfc(d, 1)
    with pytest.raises(ValueError):
        cover_closure(b, 1)
    with pytest.raises(ValueError):
        cover_closure(d, 1, "other")


def test_index_rule_depends_on_search_order():
    # literal index linking merges blocks that merely share a discovery
    # index, so some orders glue unrelated cycles together
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (2, 4), (4, 5), (3, 1), (5, 0)])
    outcome = {"overlap": set(), "index": set()}
    for rule in outcome:
        for seed in range(200):
            sub = hop_subgraph(g, 0, 3)
            t = dfs_tree(sub, TieBreaker(seed))
            sets = dfc_sets(t, rule)
            outcome[rule].add(tuple(sorted(len(s) for s in sets if s is not None)))
    assert len(outcome["overlap"]) == 1
    assert len(outcome["index"]) > 1


def test_paths_overlap_diamond():
    t = dfs_tree(hop_subgraph(DIAMOND, 0, 2))
    e1, e2 = back_edge_refs(t)
    assert paths_overlap(t, e1, e2)
    assert not paths_overlap(t, e1, e1)


@given(graphs(min_n=1, max_n=9), st.integers(1, 3), st.integers(0, 2**32))
def test_batch_sets_match_single_vertex(g, delta, seed):
    for v in range(g.n):
        sub = hop_subgraph(g, v, delta)
        b = bfs_tree(sub, TieBreaker(seed))
        d = dfs_tree(sub, TieBreaker(seed))
        bs = bfc_sets(b)
        for rule in RULES:
            ds = dfc_sets(d, rule)
            for u in range(sub.graph.n):
                if u == sub.root_local:
                    assert bs[u] is None and ds[u] is None
                    continue
                assert ds[u] == eta_dfc(d, u, rule)
                assert d.parent[u] in ds[u]
        for u in range(sub.graph.n):
            if u != sub.root_local:
                assert bs[u] == eta_bfc(b, u)
                assert b.parent[u] in bs[u]


@given(graphs(min_n=1, max_n=9), st.integers(1, 3), st.integers(0, 2**32))
def test_overlap_closure_is_biconnected_block(g, delta, seed):
    # with overlap linking, B_u is the union of the cyclic blocks of the
    # searched subgraph that contain u, which no search order can change
    for v in range(g.n):
        sub = hop_subgraph(g, v, delta)
        t1, t2 = dfs_tree(sub), dfs_tree(sub, TieBreaker(seed))
        for u in range(sub.graph.n):
            if u != sub.root_local:
                assert cover_closure(t1, u).b == cover_closure(t2, u).b


@given(graphs(min_n=1, max_n=10), st.integers(1, 3))
def test_overlap_closure_matches_networkx_blocks(g, delta):
    for v in range(g.n):
        sub = hop_subgraph(g, v, delta)
        h = nx.Graph()
        h.add_nodes_from(range(sub.graph.n))
        h.add_edges_from(sub.graph.edges())
        blocks = [b for b in nx.biconnected_components(h) if len(b) > 2]
        t = dfs_tree(sub)
        for u in range(sub.graph.n):
            if u == sub.root_local:
                continue
            want = set().union(*[b for b in blocks if u in b])
            assert cover_closure(t, u).b == want
