from __future__ import annotations

import json
from importlib import resources

import pytest

from lvc.cli import main
from lvc.graph import generate, parse_edge_list
from lvc.suite import CaseResult, SuiteCase, load_cases, run_case, run_suite, select_cases, worker_count


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


# ---- colour

def test_colour_cycle_wl1(capsys):
    code, doc, _ = run_json(capsys, "colour", "gen:cycle:6", "--method", "wl1")
    assert code == 0
    assert doc["classes"] == [[0, 1, 2, 3, 4, 5]]
    assert doc["method"] == "wl1" and doc["delta"] is None


def test_colour_barbell_dfc(capsys):
    code, doc, _ = run_json(capsys, "colour", "gen:uneven_barbell:3,4,2", "--method", "dfc", "--delta", "2")
    assert code == 0
    assert [3] in doc["classes"] and [4] in doc["classes"]


def test_colour_needs_delta(capsys):
    code, out, err = run(capsys, "colour", "gen:cycle:6", "--method", "bfc")
    assert code == 2 and out == "" and "--delta" in err


def test_colour_from_file_with_labels(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("3 2\n0 1\n1 2\n")
    labels = tmp_path / "l.txt"
    labels.write_text("0 0 1\n")
    code, doc, _ = run_json(capsys, "colour", str(g), "--method", "wl1", "--labels", str(labels))
    assert code == 0 and doc["classes"] == [[0], [1], [2]]


def test_colour_seeded_same_classes(capsys):
    _, a, _ = run_json(capsys, "colour", "gen:prism:4", "--method", "dfc", "--delta", "2")
    _, b, _ = run_json(capsys, "colour", "gen:prism:4", "--method", "dfc", "--delta", "2", "--seed", "9")
    assert a["classes"] == b["classes"]


def test_colour_fwl2_pairs(capsys):
    code, doc, _ = run_json(capsys, "colour", "gen:complete:3", "--method", "fwl2")
    assert code == 0 and len(doc["classes"]) == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["colour", "/nonexistent/graph.txt", "--method", "wl1"],
        ["colour", "gen:nope", "--method", "wl1"],
        ["colour", "gen:cycle:2", "--method", "wl1"],
        ["colour", "gen:cycle:6", "--method", "bfc", "--delta", "0"],
    ],
)
def test_colour_bad_input(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_colour_malformed_file(tmp_path, capsys):
    g = tmp_path / "g.txt"
    g.write_text("3 1\n0 3\n")
    code, _, err = run(capsys, "colour", str(g), "--method", "wl1")
    assert code == 2 and "line 2" in err


def test_unknown_method_is_usage_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["colour", "gen:cycle:6", "--method", "xyz"])
    assert info.value.code == 2


# ---- compare

def test_compare_triangles_vs_hexagon_bfc2(capsys):
    code, doc, _ = run_json(capsys, "compare", "gen:union_cycles:2,3", "gen:cycle:6", "--method", "bfc", "--delta", "2")
    assert code == 0 and doc["distinguished"] is True
    assert set(doc) >= {"distinguished", "rounds", "histograms"}


def test_compare_rook_shrikhande_fwl2(capsys):
    code, doc, _ = run_json(capsys, "compare", "gen:rook4x4", "gen:shrikhande", "--method", "fwl2")
    assert code == 0 and doc["distinguished"] is False


def test_compare_permuted_copy(tmp_path, capsys):
    path = tmp_path / "p.txt"
    path.write_text("4 3\n3 2\n2 0\n0 1\n")
    for method in ("wl1", "fwl2"):
        _, doc, _ = run_json(capsys, "compare", "gen:path:4", str(path), "--method", method)
        assert doc["distinguished"] is False
    for method in ("bfc", "dfc"):
        _, doc, _ = run_json(capsys, "compare", "gen:path:4", str(path), "--method", method, "--delta", "2")
        assert doc["distinguished"] is False


# ---- detect

def test_detect_slices(capsys):
    assert run_json(capsys, "detect", "gen:path:3", "--what", "cut-vertices")[1] == [1]
    assert run_json(capsys, "detect", "gen:cycle:6", "--what", "cut-edges")[1] == []
    cyc = run_json(capsys, "detect", "gen:uneven_barbell:3,3,2", "--what", "cycles")[1]
    assert cyc == [True, True, True, False, False, True, True, True]


# ---- gen

def test_gen_stdout_and_file(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "--family", "cycle", "--params", "6")
    assert code == 0 and parse_edge_list(out) == generate("cycle", [6])
    dest = tmp_path / "u.txt"
    code, _, _ = run(capsys, "gen", "--family", "union_cycles", "--params", "2", "3", "--out", str(dest))
    g = parse_edge_list(dest.read_text())
    assert code == 0 and (g.n, g.edge_count) == (6, 6)


def test_gen_shrikhande_counts(capsys):
    _, out, _ = run(capsys, "gen", "--family", "shrikhande")
    g = parse_edge_list(out)
    assert (g.n, g.edge_count) == (16, 48)


def test_gen_unknown_family(capsys):
    code, _, err = run(capsys, "gen", "--family", "nope")
    assert code == 2 and "unknown family" in err


# ---- suite

def test_suite_single_case_filter(capsys):
    code, doc, err = run_json(capsys, "suite", "--filter", "fig4")
    assert code == 0 and doc["cases"] == 1
    (case,) = doc["results"]
    assert len(case["details"]["verdicts"]) == 4 and case["passed"]
    assert "PASS fig4" in err


def test_suite_hierarchy(capsys):
    code, doc, _ = run_json(capsys, "suite", "--filter", "hierarchy")
    verdicts = doc["results"][0]["details"]["verdicts"]
    assert code == 0 and len(verdicts) == 6
    assert [v["delta"] for v in verdicts] == [1, 2, 2, 3, 3, 4]


def test_suite_empty_filter(capsys):
    code, doc, err = run_json(capsys, "suite", "--filter", "no-such-case")
    assert code == 0 and doc["cases"] == 0 and doc["note"]
    assert "0 cases" in err


def test_suite_failure_exit_code(tmp_path, capsys):
    fixture = tmp_path / "cases.json"
    fixture.write_text(json.dumps({"cases": [{
        "name": "wrong",
        "kind": "verdicts",
        "graphs": ["gen:cycle:6", "gen:cycle:6"],
        "checks": [{"method": "wl1", "expected": "distinguished", "provenance": "x"}],
        "provenance": "x",
    }]}))
    report = tmp_path / "r.json"
    code, doc, _ = run_json(capsys, "suite", "--cases", str(fixture), "--report", str(report))
    assert code == 1 and doc["failed"] == 1
    assert json.loads(report.read_text()) == doc


def test_suite_deterministic_and_sorted(capsys):
    argv = ("suite", "--filter", "fig4*,rook-shrikhande*", "--seed", "7")
    _, a, _ = run_json(capsys, *argv)
    _, b, _ = run_json(capsys, *argv)
    for doc in (a, b):
        for r in doc["results"]:
            r.pop("seconds")
    assert a == b
    names = [r["name"] for r in a["results"]]
    assert names == sorted(names) and len(names) == 4


# ---- fixture and runner plumbing

def test_fixture_cases_have_provenance():
    raw = json.loads(resources.files("lvc").joinpath("data/suite.json").read_text())
    tags = set(raw["provenance_tags"])
    cases = load_cases()
    assert len({c.name for c in cases}) == len(cases)
    for c in cases:
        assert c.provenance in tags
        for chk in c.checks:
            assert chk["provenance"] in tags


def test_select_cases_glob():
    cases = load_cases()
    assert [c.name for c in select_cases(cases, "fig4")] == ["fig4"]
    assert len(select_cases(cases, "fig4*")) == 2
    assert select_cases(cases, None) == cases


def test_run_case_unknown_check():
    with pytest.raises(ValueError):
        run_case(SuiteCase("x", None, "property", "property-pass", "x", check="nope"))


def test_run_case_result_type():
    case = next(c for c in load_cases() if c.name == "rook-shrikhande-local-cut")
    r = run_case(case)
    assert isinstance(r, CaseResult) and r.passed


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("LVC_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("LVC_THREADS", "0")
    with pytest.raises(ValueError):
        worker_count()
    monkeypatch.delenv("LVC_THREADS")
    assert worker_count() >= 1


def _without_timing(report):
    return [{k: v for k, v in r.to_dict().items() if k != "seconds"} for r in report.results]


def test_suite_parallel_matches_serial():
    a = run_suite("fig4*,hierarchy", workers=1)
    b = run_suite("fig4*,hierarchy", workers=2)
    assert _without_timing(a) == _without_timing(b)
