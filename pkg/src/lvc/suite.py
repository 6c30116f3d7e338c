"""Reproduction suite: fixture-driven verdict cases and randomized property checks.

Each case in ``data/suite.json`` is either a list of pairwise verdicts or a
named property check. Random corpora are derived from the suite seed and a
corpus name, so cases that share a corpus see the same graphs.
"""

from __future__ import annotations

import fnmatch
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from itertools import combinations
from pathlib import Path
from typing import Callable

from .graph import (
    Graph,
    HopAwareSubgraph,
    brute_iso,
    distances_from,
    generate,
    hop_subgraph,
    neighborhood,
    parse_edge_list,
    permute,
    random_connected_graph,
    random_graph,
)
from .refine import (
    Partition,
    distinguishable,
    partition_refines,
    refine_lvc,
    refine_wl1,
)
from .search import TieBreaker, dfs_tree
from .structure import consistency_check, espg, removal_oracle, spg, tarjan_biconnectivity

__all__ = [
    "DEFAULT_SEED",
    "SuiteCase",
    "CaseResult",
    "SuiteReport",
    "load_graph",
    "load_cases",
    "select_cases",
    "run_case",
    "run_suite",
    "worker_count",
    "CHECKS",
]

DEFAULT_SEED = 2024


def load_graph(ref: str) -> Graph:
    """Resolve ``gen:family[:p1,p2,...]`` or read an edge-list file."""
    if ref.startswith("gen:"):
        parts = ref.split(":", 2)
        family = parts[1]
        params = [int(x) for x in parts[2].split(",") if x.strip()] if len(parts) > 2 else []
        return generate(family, params)
    return parse_edge_list(Path(ref).read_bytes())


# --------------------------------------------------------------------------
# fixture model

@dataclass(frozen=True)
class SuiteCase:
    name: str
    criterion: int | None
    kind: str
    expected: str
    provenance: str
    source: str = ""
    graphs: tuple[str, ...] = ()
    checks: tuple[dict, ...] = ()
    check: str | None = None
    params: dict = field(default_factory=dict)
    ladder: tuple[int, ...] = ()

    @classmethod
    def from_dict(cls, d: dict) -> SuiteCase:
        return cls(
            name=d["name"],
            criterion=d.get("criterion"),
            kind=d["kind"],
            expected=d["expected"] if "expected" in d else "verdicts",
            provenance=d.get("provenance", ""),
            source=d.get("source", ""),
            graphs=tuple(d.get("graphs", ())),
            checks=tuple(d.get("checks", ())),
            check=d.get("check"),
            params=dict(d.get("params", {})),
            ladder=tuple(d.get("ladder", ())),
        )


@dataclass
class CaseResult:
    name: str
    criterion: int | None
    expected: str
    verdict: str
    passed: bool
    provenance: str
    details: dict
    seconds: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SuiteReport:
    seed: int
    filter: str | None
    results: list[CaseResult]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        note = None if self.results else "no cases matched the filter"
        return {
            "seed": self.seed,
            "filter": self.filter,
            "cases": len(self.results),
            "passed": sum(r.passed for r in self.results),
            "failed": sum(not r.passed for r in self.results),
            "ok": self.ok,
            "note": note,
            "results": [r.to_dict() for r in self.results],
        }

    def summary(self) -> str:
        if not self.results:
            return f"0 cases (filter {self.filter!r} matched nothing)"
        lines = []
        for r in self.results:
            mark = "PASS" if r.passed else "FAIL"
            lines.append(f"{mark} {r.name} [{r.provenance}] {r.verdict} ({r.seconds:.2f}s)")
        d = self.to_dict()
        lines.append(f"{d['passed']}/{d['cases']} cases passed")
        return "\n".join(lines)


def load_cases(path: str | Path | None = None) -> list[SuiteCase]:
    if path is None:
        text = resources.files("lvc").joinpath("data/suite.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    return [SuiteCase.from_dict(d) for d in json.loads(text)["cases"]]


def select_cases(cases: list[SuiteCase], pattern: str | None) -> list[SuiteCase]:
    """Keep cases whose name matches any comma-separated glob in ``pattern``."""
    if not pattern:
        return list(cases)
    pats = [p.strip() for p in pattern.split(",") if p.strip()]
    return [c for c in cases if any(fnmatch.fnmatchcase(c.name, p) for p in pats)]


# --------------------------------------------------------------------------
# corpora

def _rng(seed: int, corpus: str) -> random.Random:
    return random.Random(f"{seed}:{corpus}")


def er_corpus(seed: int, count: int = 200) -> list[Graph]:
    """G(n, p) with n in [4, 12] and p in {0.2, 0.4, 0.6}."""
    rng = _rng(seed, "er")
    return [random_graph(rng.randint(4, 12), rng.choice((0.2, 0.4, 0.6)), rng) for _ in range(count)]


def swap_rewire(g: Graph, rng: random.Random, tries: int = 50) -> Graph:
    """Degree-preserving double edge swaps."""
    edges = set(g.edges())
    for _ in range(tries):
        if len(edges) < 2:
            break
        (a, b), (c, d) = rng.sample(sorted(edges), 2)
        if len({a, b, c, d}) < 4:
            continue
        if rng.random() < 0.5:
            c, d = d, c
        e1, e2 = (min(a, d), max(a, d)), (min(c, b), max(c, b))
        if e1 in edges or e2 in edges:
            continue
        edges -= {(a, b), (c, d)}
        edges |= {e1, e2}
    return Graph.from_edges(g.n, edges)


def random_cycle_cover(n: int, rng: random.Random) -> Graph:
    """Disjoint cycles of random lengths (each at least 3) covering ``n`` vertices."""
    lengths = []
    left = n
    while left:
        # either close off the rest or leave at least three vertices behind
        k = rng.choice([left, *range(3, left - 2)])
        lengths.append(k)
        left -= k
    edges = []
    start = 0
    for k in lengths:
        edges.extend((start + i, start + (i + 1) % k) for i in range(k))
        start += k
    return Graph.from_edges(n, edges)


def random_cubic(n: int, rng: random.Random) -> Graph:
    """Uniform-ish simple cubic graph by rejection from random pairings."""
    while True:
        points = [v for v in range(n) for _ in range(3)]
        rng.shuffle(points)
        edges = set()
        ok = True
        for a, b in zip(points[::2], points[1::2]):
            e = (min(a, b), max(a, b))
            if a == b or e in edges:
                ok = False
                break
            edges.add(e)
        if ok:
            return Graph.from_edges(n, edges)


def _shuffle(g: Graph, rng: random.Random) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return permute(g, perm)


def pair_corpus(seed: int, count: int = 100) -> list[tuple[Graph, Graph]]:
    """Pairs on at most ten vertices with equal vertex and edge counts.

    A third are rewirings of G(n, p), a third are two cycle covers and a
    third two cubic graphs, so many pairs are 1-WL-equivalent.
    """
    rng = _rng(seed, "pairs")
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            n = rng.randint(4, 10)
            g1 = random_graph(n, rng.choice((0.2, 0.4, 0.6)), rng)
            g2 = swap_rewire(g1, rng)
        elif kind == 1:
            n = rng.randint(6, 10)
            g1, g2 = random_cycle_cover(n, rng), random_cycle_cover(n, rng)
        else:
            n = rng.choice((6, 8, 10))
            g1, g2 = random_cubic(n, rng), random_cubic(n, rng)
        out.append((g1, _shuffle(g2, rng)))
    return out


def connected_corpus(seed: int, count: int = 100, n_max: int = 20) -> list[Graph]:
    rng = _rng(seed, "connected")
    return [
        random_connected_graph(rng.randint(4, n_max), rng.uniform(0.02, 0.3), rng)
        for _ in range(count)
    ]


def small_corpus(seed: int, count: int, n_max: int) -> list[Graph]:
    rng = _rng(seed, "small")
    return [random_graph(rng.randint(4, n_max), rng.choice((0.2, 0.4, 0.6)), rng) for _ in range(count)]


# --------------------------------------------------------------------------
# property checks; each returns (passed, details)

def check_bfc1_wl1_equivalence(seed: int, count: int = 200) -> tuple[bool, dict]:
    bad = []
    for k, g in enumerate(er_corpus(seed, count)):
        if refine_lvc(g, 1, "bfc").partition != refine_wl1(g).partition:
            bad.append(k)
    return not bad, {"graphs": count, "mismatches": bad}


def check_bfc_monotonicity(seed: int, count: int = 100, deltas=(1, 2)) -> tuple[bool, dict]:
    bad = []
    for k, (g1, g2) in enumerate(pair_corpus(seed, count)):
        for d in deltas:
            if distinguishable(g1, g2, "bfc", d).distinguished and not distinguishable(
                g1, g2, "bfc", d + 1
            ).distinguished:
                bad.append([k, d])
    return not bad, {"pairs": count, "counterexamples": bad}


def check_fwl2_upper_bound(seed: int, count: int = 100, max_delta: int = 3) -> tuple[bool, dict]:
    bad = []
    split = {d: 0 for d in range(1, max_delta + 1)}
    fwl_split = 0
    for k, (g1, g2) in enumerate(pair_corpus(seed, count)):
        fwl = distinguishable(g1, g2, "fwl2").distinguished
        fwl_split += fwl
        for d in range(1, max_delta + 1):
            if distinguishable(g1, g2, "bfc", d).distinguished:
                split[d] += 1
                if not fwl:
                    bad.append([k, d])
    return not bad, {
        "pairs": count,
        "counterexamples": bad,
        "distinguished_by_bfc": {str(d): c for d, c in split.items()},
        "distinguished_by_fwl2": fwl_split,
    }


def check_dfc1_refines_wl1(seed: int, count: int = 200) -> tuple[bool, dict]:
    bad = []
    for k, g in enumerate(er_corpus(seed, count)):
        if not partition_refines(refine_lvc(g, 1, "dfc").partition, refine_wl1(g).partition):
            bad.append(k)
    return not bad, {"graphs": count, "violations": bad}


def check_rook_local_cut_vertices(seed: int) -> tuple[bool, dict]:
    def with_cut(g: Graph) -> int:
        return sum(bool(tarjan_biconnectivity(hop_subgraph(g, v, 1).graph).cut_vertices) for v in range(g.n))

    rook, shri = generate("rook4x4"), generate("shrikhande")
    r, s = with_cut(rook), with_cut(shri)
    return r == rook.n and s == 0, {"rook_with_cut": r, "shrikhande_with_cut": s, "n": 16}


def check_biconnectivity(seed: int, count: int = 100, n_max: int = 20, deltas=(1, 2)) -> tuple[bool, dict]:
    graphs = connected_corpus(seed, count, n_max)
    oracle_mismatch = []
    uncovered = []
    violations = []
    for k, g in enumerate(graphs):
        rep = tarjan_biconnectivity(g)
        cut, bridges = removal_oracle(g)
        if rep.cut_vertices != cut or rep.cut_edges != bridges:
            oracle_mismatch.append(k)
        uncovered.extend([k, v] for v in _uncovered_cycle_vertices(g, rep.in_cycle))
        h = graphs[(k + 1) % len(graphs)]
        for d in deltas:
            c = consistency_check(g, h, d)
            if not c.ok:
                violations.append({"graph": k, "delta": d, "violations": c.violations[:3]})
    passed = not (oracle_mismatch or uncovered or violations)
    return passed, {
        "graphs": count,
        "oracle_mismatches": oracle_mismatch,
        "in_cycle_not_covered": uncovered,
        "consistency_violations": violations,
    }


def _uncovered_cycle_vertices(g: Graph, in_cycle: list[bool]) -> list[int]:
    # every cycle vertex must lie on the span of some back edge of a full DFS
    covered = [False] * g.n
    for s in range(g.n):
        if covered[s] or not in_cycle[s]:
            continue
        dist = distances_from(g, s)
        sub = HopAwareSubgraph(g, tuple(range(g.n)), s, tuple(dist.get(x, -1) for x in range(g.n)), g.n)
        tree = dfs_tree(sub)
        for a, b in tree.back_edges:
            for x in tree.tree_path(a, b):
                covered[x] = True
    return [v for v in range(g.n) if in_cycle[v] and not covered[v]]


def check_invariance(seed: int, count: int = 50, seeds: int = 20) -> tuple[bool, dict]:
    rng = _rng(seed, "invariance")
    graphs = [random_graph(rng.randint(4, 12), rng.choice((0.2, 0.4, 0.6)), rng) for _ in range(count)]
    order_bad = []
    perm_bad = []
    methods = (("wl1", None), ("bfc", 2), ("dfc", 2), ("fwl2", None))
    for k, g in enumerate(graphs):
        for scheme in ("bfc", "dfc"):
            ref = refine_lvc(g, 2, scheme)
            base = (ref.partition, Partition.from_colours(list(ref.rooted.values()), list(ref.rooted)))
            for _ in range(seeds):
                r = refine_lvc(g, 2, scheme, tie=TieBreaker(rng.getrandbits(32)))
                got = (r.partition, Partition.from_colours(list(r.rooted.values()), list(r.rooted)))
                if got != base:
                    order_bad.append([k, scheme])
                    break
        h = _shuffle(g, rng)
        for m, d in methods:
            if distinguishable(g, h, m, d).distinguished:
                perm_bad.append([k, m])
    return not (order_bad or perm_bad), {
        "graphs": count,
        "seeds": seeds,
        "search_order_failures": order_bad,
        "relabel_failures": perm_bad,
    }


def check_espg_correspondence(seed: int, count: int = 50, n_max: int = 10, delta: int = 2) -> tuple[bool, dict]:
    colour_not_iso = 0
    iso_not_colour = 0
    example = None
    for g in small_corpus(seed, count, n_max):
        col = refine_lvc(g, delta, "bfc").colours
        es = [espg(g, v, delta) for v in range(g.n)]
        for a, b in combinations(range(g.n), 2):
            iso = brute_iso(es[a].graph, es[b].graph, [(es[a].local(a), es[b].local(b))])
            eq = col[a] == col[b]
            if eq and not iso:
                colour_not_iso += 1
            elif iso and not eq:
                iso_not_colour += 1
                if example is None:
                    example = {"edges": [list(e) for e in g.edges()], "n": g.n, "vertices": [a, b]}
    return colour_not_iso == 0 and iso_not_colour == 0, {
        "equal_colour_not_iso": colour_not_iso,
        "iso_not_equal_colour": iso_not_colour,
        "first_iso_not_equal_colour": example,
    }


def spg_condition(rooted: dict, p: tuple[int, int], q: tuple[int, int]) -> bool:
    """Rooted colours of the two endpoint pairs agree in either orientation.

    ``rooted[(v, u)]`` is the colour of ``u`` as seen from root ``v``.
    """
    (u, v), (x, y) = p, q
    same = rooted[(v, u)] == rooted[(y, x)] and rooted[(u, v)] == rooted[(x, y)]
    swap = rooted[(v, u)] == rooted[(x, y)] and rooted[(u, v)] == rooted[(y, x)]
    return same or swap


def spg_iso(g: Graph, p: tuple[int, int], q: tuple[int, int], sp=None, sq=None) -> bool:
    """Isomorphism of SPGs with endpoints mapped to endpoints, either way round."""
    a = sp or spg(g, *p)
    b = sq or spg(g, *q)
    (u, v), (x, y) = p, q
    return brute_iso(a.graph, b.graph, [(a.local(u), b.local(x)), (a.local(v), b.local(y))]) or brute_iso(
        a.graph, b.graph, [(a.local(u), b.local(y)), (a.local(v), b.local(x))]
    )


def check_spg_correspondence(seed: int, count: int = 50, n_max: int = 10, delta: int = 2) -> tuple[bool, dict]:
    cond_not_iso = 0
    iso_not_cond = 0
    example = None
    for g in small_corpus(seed, count, n_max):
        rooted = refine_lvc(g, delta, "bfc").rooted
        pairs = [(u, v) for u in range(g.n) for v in neighborhood(g, u, delta) if u < v]
        sp = {p: spg(g, *p) for p in pairs}
        for p, q in combinations(pairs, 2):
            cond = spg_condition(rooted, p, q)
            iso = spg_iso(g, p, q, sp[p], sp[q])
            if cond and not iso:
                cond_not_iso += 1
            elif iso and not cond:
                iso_not_cond += 1
                if example is None:
                    example = {"edges": [list(e) for e in g.edges()], "n": g.n, "pairs": [list(p), list(q)]}
    return cond_not_iso == 0 and iso_not_cond == 0, {
        "condition_not_iso": cond_not_iso,
        "iso_not_condition": iso_not_cond,
        "first_iso_not_condition": example,
    }


def check_distance_separation(seed: int, count: int = 200, delta: int = 2) -> tuple[bool, dict]:
    dist_bad = 0
    size_bad = 0
    for g in er_corpus(seed, count):
        res = refine_lvc(g, delta, "bfc")
        dists = [distances_from(g, v, delta) for v in range(g.n)]
        seen: dict[int, int] = {}
        for (v, u), c in res.rooted.items():
            if seen.setdefault(c, dists[v][u]) != dists[v][u]:
                dist_bad += 1
        sizes: dict[int, int] = {}
        for v, c in enumerate(res.colours):
            if sizes.setdefault(c, len(dists[v]) - 1) != len(dists[v]) - 1:
                size_bad += 1
    return dist_bad == 0 and size_bad == 0, {
        "graphs": count,
        "distance_violations": dist_bad,
        "ball_size_violations": size_bad,
    }


def check_performance(
    seed: int, n: int = 1000, avg_degree: float = 6, delta: int = 2, limit_seconds: float = 10.0
) -> tuple[bool, dict]:
    g = random_graph(n, avg_degree / (n - 1), _rng(seed, "performance"))
    t = time.perf_counter()
    res = refine_lvc(g, delta, "bfc")
    elapsed = time.perf_counter() - t
    return elapsed < limit_seconds, {
        "n": n,
        "edges": g.edge_count,
        "seconds": round(elapsed, 3),
        "limit_seconds": limit_seconds,
        "rounds": res.rounds,
        "classes": len(set(res.colours)),
    }


def check_dfc_witness_search(seed: int, count: int = 300, n_max: int = 9) -> tuple[bool, dict]:
    """Look for pairs split by DFC-delta but merged by DFC-(delta+1)."""
    rng = _rng(seed, "witness")
    found = []
    for _ in range(count):
        n = rng.randint(5, n_max)
        g1 = random_graph(n, rng.choice((0.3, 0.5)), rng)
        g2 = swap_rewire(g1, rng)
        for d in (1, 2):
            if distinguishable(g1, g2, "dfc", d).distinguished and not distinguishable(
                g1, g2, "dfc", d + 1
            ).distinguished:
                found.append({
                    "delta": d,
                    "n": n,
                    "g1": [list(e) for e in g1.edges()],
                    "g2": [list(e) for e in g2.edges()],
                })
                break
        if len(found) >= 3:
            break
    return True, {"pairs_tried": count, "witnesses": found}


CHECKS: dict[str, Callable[..., tuple[bool, dict]]] = {
    "bfc1_wl1_equivalence": check_bfc1_wl1_equivalence,
    "bfc_monotonicity": check_bfc_monotonicity,
    "fwl2_upper_bound": check_fwl2_upper_bound,
    "dfc1_refines_wl1": check_dfc1_refines_wl1,
    "rook_local_cut_vertices": check_rook_local_cut_vertices,
    "biconnectivity": check_biconnectivity,
    "invariance": check_invariance,
    "espg_correspondence": check_espg_correspondence,
    "spg_correspondence": check_spg_correspondence,
    "distance_separation": check_distance_separation,
    "performance": check_performance,
    "dfc_witness_search": check_dfc_witness_search,
}


# --------------------------------------------------------------------------
# running

def _verdict(g1: Graph, g2: Graph, chk: dict) -> dict:
    cmp = distinguishable(g1, g2, chk["method"], chk.get("delta"))
    got = "distinguished" if cmp.distinguished else "not_distinguished"
    return {
        "method": chk["method"],
        "delta": chk.get("delta"),
        "expected": chk["expected"],
        "verdict": got,
        "passed": got == chk["expected"],
        "provenance": chk.get("provenance", ""),
        "rounds": cmp.rounds,
    }


def _ladder_checks(case: SuiteCase) -> list[dict]:
    out = []
    for d in case.ladder:
        g1 = generate("union_cycles", [2, 2 * d + 1])
        g2 = generate("cycle", [4 * d + 2])
        for dd, exp in ((d, "not_distinguished"), (d + 1, "distinguished")):
            v = _verdict(g1, g2, {"method": "bfc", "delta": dd, "expected": exp, "provenance": case.provenance})
            v["pair"] = f"2xC{2 * d + 1} vs C{4 * d + 2}"
            out.append(v)
    return out


def run_case(case: SuiteCase, seed: int = DEFAULT_SEED) -> CaseResult:
    t = time.perf_counter()
    if case.kind == "verdicts":
        if case.ladder:
            subs = _ladder_checks(case)
        else:
            g1, g2 = (load_graph(r) for r in case.graphs)
            subs = [_verdict(g1, g2, chk) for chk in case.checks]
        passed = all(s["passed"] for s in subs)
        verdict = f"{sum(s['passed'] for s in subs)}/{len(subs)} verdicts match"
        details: dict = {"verdicts": subs}
        expected = "all verdicts match"
    else:
        try:
            fn = CHECKS[case.check]
        except KeyError:
            raise ValueError(f"case {case.name}: unknown check {case.check!r}") from None
        passed, details = fn(seed, **case.params)
        expected = case.expected
        if case.expected == "informational":
            verdict = "informational"
        else:
            verdict = "property-pass" if passed else "property-fail"
    return CaseResult(
        case.name, case.criterion, expected, verdict, bool(passed),
        case.provenance, details, round(time.perf_counter() - t, 3),
    )


def worker_count() -> int:
    env = os.environ.get("LVC_THREADS")
    if env:
        try:
            k = int(env)
        except ValueError:
            raise ValueError(f"LVC_THREADS must be a positive integer, got {env!r}") from None
        if k < 1:
            raise ValueError(f"LVC_THREADS must be a positive integer, got {env!r}")
        return k
    return os.cpu_count() or 1


def _run_one(args: tuple[SuiteCase, int]) -> CaseResult:
    return run_case(*args)


def run_suite(
    pattern: str | None = None,
    seed: int = DEFAULT_SEED,
    workers: int | None = None,
    cases: list[SuiteCase] | None = None,
) -> SuiteReport:
    """Run matching cases, concurrently when more than one worker is allowed."""
    chosen = select_cases(cases if cases is not None else load_cases(), pattern)
    workers = worker_count() if workers is None else workers
    jobs = [(c, seed) for c in chosen]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    results.sort(key=lambda r: r.name)
    return SuiteReport(seed, pattern, results)
