import json

import pytest

from vwcideal.handlers import cli, suites
from vwcideal.handlers.cli import ExitCode
from vwcideal.handlers.suites import Suite


@pytest.fixture
def write_graph(tmp_path):
    def write(text: str, name: str = "graph.txt") -> str:
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


class TestParseRelation:
    def test_pairs_are_zero_based(self):
        assert cli.parse_relation("1<2, 2<3") == [(0, 1), (1, 2)]

    def test_empty(self):
        assert cli.parse_relation("") == []

    @pytest.mark.parametrize("text", ["1-2", "a<b"])
    def test_malformed(self, text):
        with pytest.raises(cli.GeneratorError):
            cli.parse_relation(text)


class TestClassify:
    def test_c4_is_unmixed_but_not_cohen_macaulay(self, write_graph, capsys):
        assert cli.main(["classify", write_graph("a b\nb c\nc d\nd a\n")]) == ExitCode.OK
        assert "classification_status: VwcUnmixedNotCM" in capsys.readouterr().out

    def test_c5_json(self, write_graph, capsys):
        assert cli.main(["classify", write_graph("a b\nb c\nc d\nd e\ne a\n"), "--format", "json"]) == ExitCode.OK
        result = json.loads(capsys.readouterr().out)
        assert result["schema"] == 1
        assert result["classification"]["status"] == "WellCoveredNotVwc"

    def test_empty_file_is_an_input_error(self, write_graph, capsys):
        assert cli.main(["classify", write_graph("# nothing\n")]) == ExitCode.INPUT_ERROR
        assert "no vertices" in capsys.readouterr().err

    def test_loop_is_an_input_error(self, write_graph):
        assert cli.main(["classify", write_graph("a a\n")]) == ExitCode.INPUT_ERROR


class TestInvariants:
    def test_p4(self, write_graph, capsys):
        code = cli.main(["invariants", write_graph("a b\nb c\nc d\n"), "--format", "json", "--field", "both"])
        assert code == ExitCode.OK
        result = json.loads(capsys.readouterr().out)
        assert result["a"] == 1
        assert result["classification"]["status"] == "VwcCohenMacaulay"
        assert result["homology"]["gf2"]["reg"] == result["homology"]["q"]["reg"] == 1
        assert result["theorems"]["terai"] == {"gf2": True, "q": True}
        assert "timing" not in result

    def test_small_cap_skips_homology(self, write_graph, capsys):
        assert cli.main(["invariants", write_graph("a b\nb c\nc d\n"), "--cap", "2"]) == ExitCode.OK
        out = capsys.readouterr().out
        assert "homology_gf2: skipped: oracle limit" in out

    def test_timing(self, write_graph, capsys):
        assert cli.main(["invariants", write_graph("a b\n"), "--format", "json", "--timing"]) == ExitCode.OK
        assert "seconds" in json.loads(capsys.readouterr().out)["timing"]


class TestVerify:
    def test_unmixed_passes(self, capsys):
        assert cli.main(["verify", "unmixed", "--exhaustive", "2", "--count", "0"]) == ExitCode.OK
        assert capsys.readouterr().out.startswith("unmixed: 9/9 passed")

    def test_failure_exit_code(self, monkeypatch, capsys):
        monkeypatch.setitem(suites.CHECKS, Suite.TERAI, lambda g, ctx: ["forced failure"])
        assert cli.main(["verify", "terai", "--n", "3", "--count", "2"]) == ExitCode.PROPERTY_FAILURE
        out = capsys.readouterr().out
        assert out.startswith("terai: 0/2 passed")
        assert "  forced failure" in out

    def test_cap_exceeded(self):
        argv = ["verify", "theorem-a", "--exhaustive", "1", "--count", "0", "--cap", "1"]
        assert cli.main(argv) == ExitCode.CAP_EXCEEDED

    def test_save(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setenv("VWCIDEAL_RESULT_DIR", str(tmp_path))
        argv = ["verify", "unmixed", "--exhaustive", "1", "--count", "0", "--save", "--format", "json"]
        assert cli.main(argv) == ExitCode.OK
        saved = json.loads((tmp_path / "unmixed_seed0.json").read_text())
        assert saved == json.loads(capsys.readouterr().out)
        assert saved["total"] == 1


class TestGenerate:
    def test_poset(self, capsys):
        assert cli.main(["generate", "--mode", "poset", "--n", "2", "--relation", "1<2"]) == ExitCode.OK
        assert set(capsys.readouterr().out.split("\n")) == {"x1 y1", "x1 y2", "x2 y2", ""}

    def test_whisker(self, write_graph, capsys):
        assert cli.main(["generate", "--mode", "whisker", "--input", write_graph("a b\n")]) == ExitCode.OK
        assert "a a'" in capsys.readouterr().out

    def test_random_count(self, capsys):
        assert cli.main(["generate", "--n", "2", "--count", "3", "--seed", "4"]) == ExitCode.OK
        assert capsys.readouterr().out.count("x1 y1") == 3

    def test_bad_relation(self):
        assert cli.main(["generate", "--mode", "poset", "--n", "2", "--relation", "2<2"]) == ExitCode.INPUT_ERROR
