import json

from tests.conftest import make_c4, make_k2
from vwcideal.core.graph import make_graph
from vwcideal.data import report
from vwcideal.service.homology import betti_table_hochster


class TestFlattenDict:
    def test_flatten_simple_dict(self):
        assert report.flatten_dict({"a": 1, "b": 2}) == {"a": 1, "b": 2}

    def test_flatten_multiple_nested_levels(self):
        assert report.flatten_dict({"level1": {"level2": {"level3": "value"}}}) == {"level1_level2_level3": "value"}

    def test_flatten_mixed_nested_dict(self):
        data = {"a": 1, "b": {"c": 2, "d": 3}, "e": 4}
        assert report.flatten_dict(data) == {"a": 1, "b_c": 2, "b_d": 3, "e": 4}

    def test_flatten_custom_separator(self):
        assert report.flatten_dict({"outer": {"inner": "value"}}, sep=".") == {"outer.inner": "value"}


class TestGraphDigest:
    def test_stable_under_edge_order(self):
        g = make_graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
        h = make_graph(["a", "b", "c"], [("c", "b"), ("b", "a")])
        assert report.graph_digest(g) == report.graph_digest(h)

    def test_distinguishes_graphs(self):
        assert report.graph_digest(make_k2()) != report.graph_digest(make_c4())
        assert len(report.graph_digest(make_k2())) == 64


class TestToJson:
    def test_sorted_keys_and_newline(self):
        text = report.to_json({"b": 1, "a": {"d": 2, "c": 3}})
        assert text.endswith("}\n")
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": {"c": 3, "d": 2}, "b": 1}


class TestToText:
    def test_flattened_lines(self):
        text = report.to_text({"schema": 1, "classification": {"status": "VwcCohenMacaulay"}, "ghat": "a b\nc d\n"})
        assert text.splitlines() == ["classification_status: VwcCohenMacaulay", "ghat: a b; c d", "schema: 1"]

    def test_betti_tables_follow(self):
        entry = betti_table_hochster(make_k2()).to_report()
        text = report.to_text({"homology": {"gf2": entry, "q": "skipped: oracle limit"}})
        assert "homology_q: skipped: oracle limit" in text
        assert "betti table over gf2:" in text
        assert "betti table over q:" not in text


class TestSuiteText:
    def test_counterexamples(self):
        summary = {
            "suite": "terai",
            "passed": 1,
            "total": 2,
            "counterexamples": [{"digest": "abc", "graph": "a b\n", "failures": ["reg 1 != pd 2"]}],
        }
        assert report.suite_text(summary) == "terai: 1/2 passed\ncounterexample abc:\na b\n  reg 1 != pd 2\n"

    def test_skip_count(self):
        summary = {"suite": "theorem-a", "passed": 3, "total": 5, "skipped": 2, "counterexamples": []}
        assert report.suite_text(summary) == "theorem-a: 3/5 passed, 2 skipped\n"


class TestRender:
    def test_dispatch(self):
        assert report.render({"a": 1}, "json") == report.to_json({"a": 1})
        assert report.render({"a": 1}, "text") == "a: 1\n"


class TestWriteSummary:
    def test_creates_parent_dirs(self, tmp_path):
        path = tmp_path / "results" / "terai_seed0.json"
        report.write_summary(path, {"suite": "terai"})
        assert json.loads(path.read_text()) == {"suite": "terai"}
