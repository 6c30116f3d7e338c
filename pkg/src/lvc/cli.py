"""Command-line front end.

Exit codes: 0 success, 1 suite failure, 2 usage or input error.
Graph arguments are edge-list paths or ``gen:family:p1,p2`` references.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .graph import FAMILIES, format_edge_list, generate
from .refine import METHODS, distinguishable, refine_fwl2, refine_lvc, refine_wl1
from .search import TieBreaker
from .structure import tarjan_biconnectivity
from .suite import DEFAULT_SEED, load_cases, load_graph, run_suite

__all__ = ["main", "build_parser"]


class UsageError(Exception):
    pass


def _print_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=False) + "\n")


def _read_labels(path: str, n: int) -> list[int]:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = text.split()
    if not isinstance(data, list):
        raise UsageError(f"{path}: labels must be a JSON list or whitespace-separated integers")
    try:
        labels = [int(x) for x in data]
    except (TypeError, ValueError):
        raise UsageError(f"{path}: labels must be integers") from None
    if len(labels) != n:
        raise UsageError(f"{path}: expected {n} labels, got {len(labels)}")
    return labels


def _need_delta(method: str, delta: int | None) -> None:
    if method in ("bfc", "dfc") and delta is None:
        raise UsageError(f"--delta is required for --method {method}")
    if delta is not None and delta < 1:
        raise UsageError(f"--delta must be at least 1, got {delta}")


def _tie(seed: int | None) -> TieBreaker | None:
    return None if seed is None else TieBreaker.seeded(seed)


def cmd_colour(args) -> int:
    _need_delta(args.method, args.delta)
    g = load_graph(args.graph)
    labels = _read_labels(args.labels, g.n) if args.labels else None
    if args.method == "wl1":
        res = refine_wl1(g, init=labels)
    elif args.method == "fwl2":
        if labels is not None:
            raise UsageError("--labels is not supported for fwl2")
        res = refine_fwl2(g)
    else:
        res = refine_lvc(g, args.delta, args.method, init=labels, tie=_tie(args.seed))
    _print_json(res.to_dict())
    return 0


def cmd_compare(args) -> int:
    _need_delta(args.method, args.delta)
    g1, g2 = load_graph(args.graph1), load_graph(args.graph2)
    delta = args.delta if args.method in ("bfc", "dfc") else None
    cmp = distinguishable(g1, g2, args.method, delta, tie=_tie(args.seed))
    _print_json(cmp.to_dict())
    return 0


_SLICES = {
    "cut-vertices": "cut_vertices",
    "cut-edges": "cut_edges",
    "cycles": "in_cycle",
}


def cmd_detect(args) -> int:
    g = load_graph(args.graph)
    report = tarjan_biconnectivity(g).to_dict()
    _print_json(report[_SLICES[args.what]])
    return 0


def _parse_params(raw: list[str]) -> list[int]:
    out = []
    for item in raw:
        for tok in item.split(","):
            tok = tok.strip()
            if not tok:
                continue
            try:
                out.append(int(tok))
            except ValueError:
                raise UsageError(f"--params expects integers, got {tok!r}") from None
    return out


def cmd_gen(args) -> int:
    g = generate(args.family, _parse_params(args.params))
    comment = f"{args.family} {' '.join(args.params)}".strip()
    text = format_edge_list(g, comment=comment)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_suite(args) -> int:
    cases = load_cases(args.cases) if args.cases else None
    report = run_suite(args.filter, seed=args.seed, cases=cases)
    sys.stderr.write(report.summary() + "\n")
    doc = report.to_dict()
    if args.report:
        Path(args.report).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    _print_json(doc)
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lvc", description="Local vertex colouring and WL baselines.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("colour", aliases=["color"], help="stable colouring of one graph")
    c.add_argument("graph")
    c.add_argument("--method", choices=METHODS, required=True)
    c.add_argument("--delta", type=int)
    c.add_argument("--labels", help="initial vertex labels (JSON list or whitespace-separated)")
    c.add_argument("--seed", type=int, help="seeded tie-breaking for search trees")
    c.set_defaults(func=cmd_colour)

    m = sub.add_parser("compare", help="are two graphs distinguished?")
    m.add_argument("graph1")
    m.add_argument("graph2")
    m.add_argument("--method", choices=METHODS, required=True)
    m.add_argument("--delta", type=int)
    m.add_argument("--seed", type=int)
    m.set_defaults(func=cmd_compare)

    d = sub.add_parser("detect", help="cut vertices, bridges or cycle membership")
    d.add_argument("graph")
    d.add_argument("--what", choices=sorted(_SLICES), required=True)
    d.set_defaults(func=cmd_detect)

    gn = sub.add_parser("gen", help="write a named graph as an edge list")
    gn.add_argument("--family", required=True, help=f"one of: {', '.join(sorted(FAMILIES))}")
    gn.add_argument("--params", nargs="*", default=[])
    gn.add_argument("--out")
    gn.set_defaults(func=cmd_gen)

    s = sub.add_parser("suite", help="run the reproduction suite")
    s.add_argument("--filter", help="comma-separated glob(s) over case names")
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--report", help="also write the JSON report here")
    s.add_argument("--cases", help="alternative fixture file")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, IndexError, OSError) as exc:
        sys.stderr.write(f"lvc {args.command}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
