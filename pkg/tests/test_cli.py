import json

import pytest

from synchro import cli, core


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGen:
    def test_stdout_is_canonical_json(self, capsys):
        code, out, err = run(capsys, "gen", "cerny", "--n", "4")
        assert code == 0
        d = core.dfa_loads(out)
        assert d.n == 4 and d.letters == ("a", "b")
        meta = json.loads(err)
        assert meta["expected_rt"] == 9

    def test_file_output_with_sidecar(self, capsys, tmp_path):
        target = tmp_path / "d.json"
        code, out, _ = run(capsys, "gen", "dnk", "--n", "5", "--k", "4",
                           "-o", str(target))
        assert code == 0
        d = core.load_dfa(target)
        assert d.n == 5
        meta = json.loads((tmp_path / "d.meta.json").read_text())
        assert meta["family"] == "dnk" and meta["params"] == {"n": 5, "k": 4}

    def test_bad_params_usage_error(self, capsys):
        code, _, err = run(capsys, "gen", "dnk", "--n", "6", "--k", "3")
        assert code == 2 and "coprime" in err


class TestSolveAndRt:
    @pytest.fixture
    def c4(self, tmp_path, capsys):
        path = tmp_path / "c4.json"
        run(capsys, "gen", "cerny", "--n", "4", "-o", str(path))
        return str(path)

    def test_rt(self, capsys, c4):
        code, out, _ = run(capsys, "rt", c4)
        assert code == 0
        assert json.loads(out) == {
            "rt": 9, "word": ["a", "b", "b", "b", "a", "b", "b", "b", "a"]}

    @pytest.mark.parametrize("method", ["bfs", "greedy", "extension",
                                        "eppstein", "a10"])
    def test_solvers_produce_reset_words(self, capsys, c4, method):
        code, out, _ = run(capsys, "solve", c4, "--method", method)
        assert code == 0
        res = json.loads(out)
        d = core.load_dfa(c4)
        word = core.word_from_names(d, res["word"])
        assert len(core.image(d, core.StateSet.full(4), word)) == 1
        assert res["length"] == len(word)

    def test_c7_rejected_on_cerny(self, capsys, c4):
        code, _, err = run(capsys, "solve", c4, "--method", "c7")
        assert code == 2 and "idempotent" in err

    def test_cap_exit_code(self, capsys, c4):
        code, _, err = run(capsys, "rt", c4, "--cap", "2")
        assert code == 3 and "cap" in err.lower()

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "rt", "/nonexistent.json")
        assert code == 2


class TestClassifyMonoidBound:
    def test_classify_selected(self, capsys, tmp_path):
        path = tmp_path / "c5.json"
        run(capsys, "gen", "cerny", "--n", "5", "-o", str(path))
        code, out, _ = run(capsys, "classify", str(path), "--classes", "a1,a6,d2")
        assert code == 0
        report = json.loads(out)
        assert set(report) == {"a1", "a6", "d2"}
        assert report["a1"]["status"] == "in"

    def test_classify_with_delta_graph(self, capsys, tmp_path):
        path = tmp_path / "c4.json"
        run(capsys, "gen", "cerny", "--n", "4", "-o", str(path))
        gpath = tmp_path / "g.json"
        gpath.write_text(json.dumps(
            {"n": 4, "edges": [[0, 1], [1, 2], [2, 3], [3, 0]]}))
        code, out, _ = run(capsys, "classify", str(path), "--classes", "a4",
                           "--delta-graph", str(gpath))
        assert code == 0
        assert json.loads(out)["a4"]["status"] == "in"

    def test_monoid_summary(self, capsys, tmp_path):
        path = tmp_path / "m4.json"
        run(capsys, "gen", "chain", "--n", "4", "-o", str(path))
        code, out, _ = run(capsys, "monoid", str(path))
        assert code == 0
        summary = json.loads(out)
        assert summary["size"] == 4
        assert summary["aperiodic"]["status"] == "in"

    def test_bound(self, capsys):
        code, out, _ = run(capsys, "bound", "--class", "kari_eulerian", "--n", "5")
        assert code == 0
        assert json.loads(out)["value"] == "13"

    def test_bound_unknown_class(self, capsys):
        code, _, err = run(capsys, "bound", "--class", "zz", "--n", "5")
        assert code == 2


class TestVerifyAndEnum:
    def test_verify_quick_small(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "quick", "--max-n", "4")
        # every case at this size passes (the known-red case needs n >= 5)
        assert code == 0
        assert "cases passed" in out

    def test_verify_reports_failure_exit(self, capsys):
        # at max-n 5 the recorded closed form for the two-letter one-cluster
        # series is refuted by search, so the campaign reports a failure
        code, out, _ = run(capsys, "verify", "--suite", "quick", "--max-n", "5")
        assert code == 1
        assert "FAIL" in out

    def test_enum_count(self, capsys):
        code, out, _ = run(capsys, "enum", "--letters", "2", "--states", "2")
        assert code == 0
        assert json.loads(out)["classes"] == 7

    def test_enum_max_rt_with_filter(self, capsys):
        code, out, _ = run(capsys, "enum", "--letters", "2", "--states", "3",
                           "--filter", "eulerian,synchronizing", "--report", "max-rt")
        assert code == 0
        report = json.loads(out)
        assert report["max_rt"] >= 1

    def test_enum_budget_exit(self, capsys):
        code, _, err = run(capsys, "enum", "--letters", "2", "--states", "7")
        assert code == 3

    def test_dot(self, capsys, tmp_path):
        path = tmp_path / "c3.json"
        run(capsys, "gen", "cerny", "--n", "3", "-o", str(path))
        code, out, _ = run(capsys, "dot", str(path))
        assert code == 0 and "digraph" in out and '0 -> 1 [label="a,b"];' in out
