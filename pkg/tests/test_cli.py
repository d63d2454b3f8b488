"""Command-line interface: golden outputs, exit codes, determinism."""

import json

import pytest

from qgames.cli import main

STAGE1_GAME = {
    "state": [
        {"index": "i1", "weight": "1/2", "phase": "0"},
        {"index": "i2", "weight": "1/2", "phase": "0"},
    ],
    "observable": {"i1": "0", "i2": "1"},
    "payoff": {
        "0": {"label": "0", "value": "0"},
        "1": {"label": "1", "value": "1"},
    },
}

MET_IMAGE = {
    # the same game with the two basis labels swapped and relabeled
    "state": [
        {"index": "q1", "weight": "1/2", "phase": "1/4"},
        {"index": "q2", "weight": "1/2", "phase": "0"},
    ],
    "observable": {"q1": "1", "q2": "0"},
    "payoff": {
        "0": {"label": "0", "value": "0"},
        "1": {"label": "1", "value": "1"},
    },
}

OTHER_GAME = {
    "state": [
        {"index": "i1", "weight": "1/3", "phase": "0"},
        {"index": "i2", "weight": "2/3", "phase": "0"},
    ],
    "observable": {"i1": "0", "i2": "1"},
    "payoff": {
        "0": {"label": "0", "value": "0"},
        "1": {"label": "1", "value": "1"},
    },
}

MEASUREMENT = {
    "state": [
        {"index": "a", "weight": "1/2"},
        {"index": "b", "weight": "1/3"},
        {"index": "c", "weight": "1/6"},
    ],
    "observable": {"a": "1", "b": "2", "c": "3"},
}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, doc in (
        ("stage1", STAGE1_GAME),
        ("met_image", MET_IMAGE),
        ("other", OTHER_GAME),
        ("measurement", MEASUREMENT),
    ):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    paths["dir"] = tmp_path
    return paths


class TestCanonicalize:
    def test_stage1_golden(self, files, capsys):
        assert main(["canonicalize", files["stage1"]]) == 0
        out = capsys.readouterr().out
        parsed = json.loads(out)
        assert parsed == {
            "branches": [
                {"label": "0", "weight": "1/2", "value": "0"},
                {"label": "1", "weight": "1/2", "value": "1"},
            ]
        }

    def test_deterministic_output(self, files, capsys):
        main(["canonicalize", files["stage1"]])
        first = capsys.readouterr().out
        main(["canonicalize", files["stage1"]])
        second = capsys.readouterr().out
        assert first == second


class TestEquiv:
    def test_met_image_equivalent(self, files, capsys):
        assert main(["equiv", files["stage1"], files["met_image"]]) == 0
        assert capsys.readouterr().out.strip() == "EQUIVALENT"

    def test_different_weights_not_equivalent(self, files, capsys):
        assert main(["equiv", files["stage1"], files["other"]]) == 1
        assert capsys.readouterr().out.strip() == "NOT EQUIVALENT"


class TestDerive:
    def test_value_and_trace(self, files, capsys):
        trace_path = files["dir"] / "trace.json"
        code = main(
            ["derive", files["stage1"], "--epsilon", "1/1000", "--trace-out", str(trace_path)]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "value = 1/2" in out
        assert "interval = [1/2, 1/2]" in out
        trace = json.loads(trace_path.read_text())
        assert trace["conclusion"].startswith("V(G) = 1/2")
        kinds = {step["kind"] for step in trace["steps"]}
        assert kinds == {"axiom", "rewrite"}

    def test_rational_rendering_never_decimal(self, files, capsys):
        main(["derive", files["other"], "--epsilon", "1/8"])
        out = capsys.readouterr().out
        assert "value = 2/3" in out
        assert "0.6" not in out


class TestProbCheck:
    def test_unique_verdict(self, files, capsys):
        assert main(["prob-check", files["measurement"], "--bound", "12"]) == 0
        out = capsys.readouterr().out
        assert "UNIQUE" in out
        assert "qualitative order on singletons" in out

    def test_inconclusive_bound(self, files, capsys):
        doc = {
            "state": [
                {"index": "a", "weight": "1/7"},
                {"index": "b", "weight": "6/7"},
            ],
            "observable": {"a": "1", "b": "2"},
        }
        p = files["dir"] / "sevenths.json"
        p.write_text(json.dumps(doc))
        assert main(["prob-check", str(p), "--bound", "5"]) == 0
        assert "INCONCLUSIVE" in capsys.readouterr().out


class TestValueFn:
    def test_integer_oracle(self, capsys):
        assert main(["value-fn", "--oracle", "integers", "--target", "7", "--depth", "12"]) == 0
        out = capsys.readouterr().out
        assert "value ratio in [" in out
        assert "width = 1/2048" in out

    def test_money_oracle(self, capsys):
        assert main(
            ["value-fn", "--oracle", "money", "--target", "22/7", "--depth", "10"]
        ) == 0
        assert "value ratio in [" in capsys.readouterr().out


class TestInfer:
    def test_table_and_exact_eu(self, capsys):
        code = main(["infer", "--n", "4", "--p", "1/3", "--x", "1", "--y", "-1"])
        assert code == 0
        out = capsys.readouterr().out
        assert "0 16/81" in out
        assert "exact EU = -11/81" in out
        assert "(approx)" in out

    def test_sweep(self, capsys):
        code = main(
            ["infer", "--n", "1", "--p", "3/5", "--x", "1", "--y", "-1",
             "--epsilon", "1/10", "--sweep", "25,100"]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].startswith("n exact_eu approx")
        assert len(lines) == 3


class TestErrorHandling:
    def test_malformed_json_names_position(self, files, capsys):
        p = files["dir"] / "bad.json"
        p.write_text('{"state": [,]}')
        assert main(["canonicalize", str(p)]) == 2
        err = capsys.readouterr().err
        assert "line 1" in err and "column" in err

    def test_schema_violation_names_field(self, files, capsys):
        p = files["dir"] / "schema.json"
        p.write_text(json.dumps({"state": [{"index": "a"}], "observable": {}, "payoff": {}}))
        assert main(["canonicalize", str(p)]) == 2
        assert "weight" in capsys.readouterr().err

    def test_unnormalized_game_is_input_error(self, files, capsys):
        doc = json.loads(json.dumps(STAGE1_GAME))
        doc["state"][0]["weight"] = "1/3"
        p = files["dir"] / "unnorm.json"
        p.write_text(json.dumps(doc))
        assert main(["canonicalize", str(p)]) == 2

    def test_missing_file(self, capsys):
        assert main(["canonicalize", "/nonexistent/game.json"]) == 2

    def test_unknown_flag_rejected(self, files, capsys):
        assert main(["canonicalize", files["stage1"], "--bogus"]) == 2

    def test_unknown_command_rejected(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_float_rational_rejected(self, files, capsys):
        assert main(["infer", "--n", "4", "--p", "0.5", "--x", "1", "--y", "-1"]) == 2
