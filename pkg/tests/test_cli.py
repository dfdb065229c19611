from __future__ import annotations

import json
from pathlib import Path

import pytest

from dseprel.cli import QueryReport, main

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


class TestQuery:
    def test_chain3_separated(self, capsys):
        code, out, _ = run(capsys, "query", DATA / "chain3.txt", "--x", "a", "--y", "c", "--given", "b",
                           "--methods", "relational,reachability,enumeration")
        assert code == 0
        assert out.count("separated") == 3

    def test_collider_connected_json(self, capsys):
        code, out, _ = run(capsys, "query", DATA / "collider.txt", "--x", "a", "--y", "b",
                           "--given", "c", "--json")
        assert code == 1
        report = QueryReport.from_json(out)
        assert report.verdicts == {"relational": False, "reachability": False}
        assert report.agree and report.given == ["c"]
        assert report.witness == [
            {"tail": "a", "head": "c", "orient": 1},
            {"tail": "c", "head": "b", "orient": -1},
        ]
        assert json.loads(report.to_json()) == json.loads(out)

    def test_collider_empty_given(self, capsys):
        code, out, _ = run(capsys, "query", DATA / "collider.txt", "--x", "a", "--y", "b", "--given", "")
        assert code == 0
        report_code, js, _ = run(capsys, "query", DATA / "collider.txt", "--x", "a", "--y", "b", "--json")
        assert QueryReport.from_json(js).witness is None

    def test_text_shows_witness(self, capsys):
        _, out, _ = run(capsys, "query", DATA / "collider.txt", "--x", "a", "--y", "b", "--given", "c")
        assert "witness: a -[+]-> c -[-]-> b" in out

    def test_enumeration_max_len(self, capsys):
        # the bound is too short to find the length-3 path, so methods disagree
        code, out, _ = run(capsys, "query", DATA / "chain4.txt", "--x", "a", "--y", "d",
                           "--methods", "relational,enumeration", "--max-len", "2", "--json")
        assert code == 3
        assert QueryReport.from_json(out).agree is False

    @pytest.mark.parametrize(
        "extra",
        [
            ["--x", "zz", "--y", "a"],
            ["--x", "a", "--y", "b", "--given", "q"],
            ["--x", "a", "--y", "b", "--methods", "magic"],
            ["--x", "a", "--y", "b", "--max-len", "-1"],
        ],
    )
    def test_errors(self, capsys, extra):
        code, _, err = run(capsys, "query", DATA / "chain3.txt", *extra)
        assert code == 2 and err.startswith("error:")

    def test_parse_error(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("a -> b\nwhat\n")
        code, _, err = run(capsys, "query", bad, "--x", "a", "--y", "b")
        assert code == 2 and "line 2" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "query", tmp_path / "none.txt", "--x", "a", "--y", "b")
        assert code == 2 and "cannot read" in err


class TestRelations:
    def test_parental(self, capsys):
        code, out, _ = run(capsys, "relations", DATA / "chain3.txt", "--given", "b",
                           "--which", "parental", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["vertices"] == ["a", "b", "c"]
        assert payload["matrix"] == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]

    def test_text_matrix(self, capsys):
        _, out, _ = run(capsys, "relations", DATA / "chain3.txt", "--given", "b", "--which", "parental")
        assert out.splitlines() == ["  a b c", "a 0 1 0", "b 0 0 0", "c 0 0 0"]

    @pytest.mark.parametrize("graph", ["chain3.txt", "collider_desc.txt", "cycle2.txt", "loop1.txt"])
    def test_active_has_diagonal(self, capsys, graph):
        _, out, _ = run(capsys, "relations", DATA / graph, "--which", "active", "--json")
        m = json.loads(out)["matrix"]
        assert all(m[i][i] == 1 for i in range(len(m)))

    def test_moral(self, capsys):
        _, out, _ = run(capsys, "relations", DATA / "collider.txt", "--given", "c", "--which", "moral", "--json")
        payload = json.loads(out)
        m, idx = payload["matrix"], payload["vertices"].index
        assert m[idx("a")][idx("b")] == 1
        assert m == [list(r) for r in zip(*m)]

    def test_unknown_name(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["relations", str(DATA / "chain3.txt"), "--which", "nope"])
        assert info.value.code == 2


class TestWitness:
    def test_collider(self, capsys):
        code, out, _ = run(capsys, "witness", DATA / "collider.txt", "--x", "a", "--y", "b", "--given", "c")
        assert code == 1 and out.strip() == "a -[+]-> c -[-]-> b"

    def test_chain3_separated(self, capsys):
        code, out, _ = run(capsys, "witness", DATA / "chain3.txt", "--x", "a", "--y", "c", "--given", "b")
        assert code == 0 and out.strip() == "separated"

    def test_self(self, capsys):
        _, out, _ = run(capsys, "witness", DATA / "chain3.txt", "--x", "b", "--y", "b")
        assert out.strip() == "b"
        _, out, _ = run(capsys, "witness", DATA / "loop1.txt", "--x", "a", "--y", "a")
        assert out.strip() == "a -[+]-> a"

    def test_unknown_vertex(self, capsys):
        code, _, err = run(capsys, "witness", DATA / "chain3.txt", "--x", "a", "--y", "zz")
        assert code == 2 and "unknown vertex" in err


class TestCrosscheck:
    def test_small(self, capsys):
        code, out, _ = run(capsys, "crosscheck", "--vertices", "3", "--trials", "5", "--seed", "1", "--json")
        assert code == 0
        summary = json.loads(out)
        for key in ("trials", "pairs_checked", "disagreements", "first_counterexample", "seed"):
            assert key in summary
        assert summary["disagreements"] == 0 and summary["first_counterexample"] is None

    def test_trivial(self, capsys):
        code, out, _ = run(capsys, "crosscheck", "--vertices", "1", "--trials", "1", "--seed", "0")
        assert code == 0 and "disagreements: 0" in out

    def test_invalid(self, capsys):
        code, _, err = run(capsys, "crosscheck", "--vertices", "0", "--trials", "1", "--seed", "0")
        assert code == 2 and "error" in err

    def test_no_enumeration_flag(self, capsys):
        _, out, _ = run(capsys, "crosscheck", "--vertices", "3", "--trials", "2", "--seed", "0",
                        "--no-enumeration", "--json")
        assert json.loads(out)["enumeration"] is False
