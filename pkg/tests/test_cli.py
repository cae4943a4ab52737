import io
import json

import pytest

from coxout.cli import main
from coxout.services.graph_service import disjoint_union, discrete_graph, format_graph_text, path_graph


@pytest.fixture
def graph_file(tmp_path):
    def write(g, name="graph.txt"):
        path = tmp_path / name
        path.write_text(format_graph_text(g))
        return str(path)
    return write


class TestClassifyCommands:
    def test_classify_text(self, graph_file, g_va, capsys):
        assert main(["classify", "--input", graph_file(g_va)]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "virtually-abelian-infinite"
        assert lines[1] == "witness: SIL (x,y | {z})"

    def test_classify_json_from_stdin(self, monkeypatch, disc4, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO(format_graph_text(disc4)))
        assert main(["classify", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["verdict"] == "large"
        assert data["witness"]["kind"] == "fsil"

    def test_structure(self, graph_file, capsys):
        g = disjoint_union(path_graph(["a", "b", "c"]), discrete_graph(["d"]))
        assert main(["classify", "--structure", "--json", "--input", graph_file(g)]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["structure"]["out0_defining_graph"]["vertices"] == ["a", "c"]

    def test_witness_and_sils(self, graph_file, p3, g_va, capsys):
        assert main(["witness", "--input", graph_file(p3)]) == 0
        assert capsys.readouterr().out.strip() == "none"
        assert main(["sils", "--input", graph_file(g_va)]) == 0
        assert capsys.readouterr().out.strip() == "SIL (x,y | {z})"


class TestInputErrors:
    def test_malformed_graph(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("vertex a\nbogus\n")
        assert main(["classify", "--input", str(path)]) == 1
        assert "line 2" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["classify", "--input", str(tmp_path / "absent.txt")]) == 1

    def test_missing_command(self):
        assert main([]) == 1

    def test_bad_labels(self):
        assert main(["random-graph", "--labels", "2,x"]) == 1


class TestPresentationCommand:
    def test_stil_factor_image(self, graph_file, disc4, capsys):
        argv = ["presentation", "--input", graph_file(disc4), "--stil", "x1,x2,x3,x4",
                "--case", "only-1", "--simplify"]
        assert main(argv) == 0
        out = capsys.readouterr().out.splitlines()
        assert "abelianization: Z/2 + Z/2 + Z/2" in out
        assert out[-1] == "Z2*Z2*Z2"

    def test_case_is_detected_without_flag(self, graph_file, one_separating, capsys):
        argv = ["presentation", "--input", graph_file(one_separating), "--stil", "x1,x2,x3,x4", "--simplify"]
        assert main(argv) == 0
        out = capsys.readouterr().out.splitlines()
        assert "abelianization: Z/2 + Z/2 + Z/2" in out
        assert out[-1] == "(Z2xZ2)*Z2"

    def test_detected_fsil_is_an_input_error(self, graph_file, disc4):
        assert main(["presentation", "--input", graph_file(disc4), "--stil", "x1,x2,x3,x4"]) == 1

    def test_not_a_stil(self, graph_file, p3):
        assert main(["presentation", "--input", graph_file(p3), "--stil", "a,b,c,a"]) == 1

    def test_from_file(self, tmp_path, capsys):
        path = tmp_path / "p.txt"
        path.write_text("gen a\ngen b\nrel a b^-1\nrel b^3\n")
        assert main(["presentation", "--from", str(path), "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["abelianization"] == {"free_rank": 0, "torsion": [3]}


class TestVerifyCommand:
    def test_random_graph_is_deterministic(self, capsys):
        main(["random-graph", "--seed", "3", "--vertices", "5"])
        first = capsys.readouterr().out
        main(["random-graph", "--seed", "3", "--vertices", "5"])
        assert capsys.readouterr().out == first
        assert first.count("vertex ") == 5

    def test_verify_writes_report(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        argv = ["verify", "--suite", "detector", "--trials", "3", "--max-vertices", "4",
                "--report", str(report)]
        assert main(argv) == 0
        assert "passed" in capsys.readouterr().out
        data = json.loads(report.read_text())
        assert data["suite"] == "detector"
        assert data["graphs"] == 3
        assert data["failures"] == []

    def test_replay(self, tmp_path, g_va, capsys):
        failure = {
            "suite": "noncommute", "trial": 1, "graph": g_va.to_dict(), "message": "", "bound": 8,
            "instance": {"first": {"multiplier": "x", "support": ["z"]},
                         "second": {"multiplier": "y", "support": ["z"]}},
        }
        path = tmp_path / "failure.json"
        path.write_text(json.dumps(failure))
        assert main(["verify", "--replay", str(path)]) == 0
        assert capsys.readouterr().out.strip() == "pass"

    def test_unknown_suite(self):
        assert main(["verify", "--suite", "bogus"]) == 1
