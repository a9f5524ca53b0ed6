"""End-to-end command line tests, run in process via main(argv)."""

import json
from pathlib import Path

import pytest

from superstrict.cli import main
from superstrict.syntax import formula_to_json, parse

DATA = Path(__file__).parent / "data"


@pytest.fixture
def model_file(tmp_path):
    """Normal world 0 sees only the looping non-normal world 1, where p holds."""
    path = tmp_path / "model.json"
    path.write_text(json.dumps({
        "worlds": 2,
        "rel": [[1], [1]],
        "normals": [0],
        "val": {"p": [1]},
    }))
    return str(path)


class TestParseCommand:
    def test_pretty_output(self, capsys):
        assert main(["parse", "--formula", "((p) |> (q |> r))"]) == 0
        assert capsys.readouterr().out == "p |> q |> r\n"

    def test_json_output(self, capsys):
        assert main(["parse", "--formula", "~p & bot", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data == formula_to_json(parse("~p & bot"))

    def test_parse_error(self, capsys):
        assert main(["parse", "--formula", "p |> "]) == 2
        err = capsys.readouterr().err
        assert err.startswith("parse error:")


class TestEvalCommand:
    def test_true(self, capsys, model_file):
        assert main(["eval", "--formula", "box p", "--model", model_file, "--world", "0"]) == 0
        assert capsys.readouterr().out == "true\n"

    def test_false_at_non_normal(self, capsys, model_file):
        assert main(["eval", "--formula", "box p", "--model", model_file, "--world", "1"]) == 0
        assert capsys.readouterr().out == "false\n"

    def test_world_out_of_range(self, capsys, model_file):
        assert main(["eval", "--formula", "p", "--model", model_file, "--world", "7"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_malformed_model(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{\"worlds\": 0}")
        assert main(["eval", "--formula", "p", "--model", str(bad), "--world", "0"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_unreadable_model(self, capsys, tmp_path):
        assert main(["eval", "--formula", "p", "--model", str(tmp_path / "nope.json"), "--world", "0"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_not_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("not json at all")
        assert main(["eval", "--formula", "p", "--model", str(bad), "--world", "0"]) == 2
        assert "error:" in capsys.readouterr().err


class TestValidCommand:
    def test_valid_formula(self, capsys):
        assert main(["valid", "--formula", "~(p |> ~p)", "--class", "s2_0", "--max-n", "3"]) == 0
        assert capsys.readouterr().out == "valid up to 3\n"

    def test_refuted_formula_prints_witness(self, capsys):
        assert main(["valid", "--formula", "p |> p", "--class", "s2", "--max-n", "3"]) == 1
        out = capsys.readouterr().out
        first, _, rest = out.partition("\n")
        assert first.startswith("countermodel at n=")
        model = json.loads(rest)
        assert set(model) == {"worlds", "rel", "normals", "val"}


class TestCountermodelCommand:
    def test_found(self, capsys):
        assert main(["countermodel", "--formula", "box box top", "--class", "s2_0", "--max-n", "2"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("countermodel at n=2, world ")

    def test_found_expect_valid(self, capsys):
        assert main(["countermodel", "--formula", "box box top", "--class", "s2_0",
                     "--max-n", "2", "--expect-valid"]) == 1

    def test_none_found(self, capsys):
        assert main(["countermodel", "--formula", "box top", "--class", "s2_0", "--max-n", "2"]) == 1
        assert capsys.readouterr().out == "no countermodel up to n=2\n"

    def test_none_found_expect_valid(self, capsys):
        assert main(["countermodel", "--formula", "box top", "--class", "s2_0",
                     "--max-n", "2", "--expect-valid"]) == 0


class TestTranslateCommand:
    def test_to_box(self, capsys):
        assert main(["translate", "--formula", "p |> q", "--to", "box"]) == 0
        assert capsys.readouterr().out == "dia p & box (p -> q)\n"

    def test_to_strict(self, capsys):
        assert main(["translate", "--formula", "box p", "--to", "strict"]) == 0
        assert capsys.readouterr().out == "top => p\n"

    def test_to_core(self, capsys):
        assert main(["translate", "--formula", "dia p", "--to", "core"]) == 0
        assert capsys.readouterr().out == "p |> top\n"


class TestProveCommand:
    def test_accepts(self, capsys):
        assert main(["prove", "--system", "lemmon-s2",
                     "--script", str(DATA / "lemmon_box_top.proof")]) == 0
        assert capsys.readouterr().out == "ok (2 steps)\n"

    def test_rejects_with_step_number(self, capsys):
        assert main(["prove", "--system", "lemmon-s2",
                     "--script", str(DATA / "lemmon_nrest_bad.proof")]) == 1
        assert capsys.readouterr().out.startswith("error at step 2:")

    def test_script_error(self, capsys, tmp_path):
        script = tmp_path / "bad.proof"
        script.write_text("1. p -> p\n")
        assert main(["prove", "--system", "lemmon-s2", "--script", str(script)]) == 2
        assert capsys.readouterr().err.startswith("line 1:")

    def test_missing_file(self, capsys, tmp_path):
        assert main(["prove", "--system", "lemmon-s2",
                     "--script", str(tmp_path / "nope.proof")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_lewis_tour(self, capsys):
        assert main(["prove", "--system", "lewis-s2",
                     "--script", str(DATA / "lewis_idempotence.proof")]) == 0
        assert capsys.readouterr().out == "ok (8 steps)\n"


class TestSuiteCommand:
    def test_clean_run(self, capsys):
        assert main(["suite", "--max-n", "2"]) == 0
        out = capsys.readouterr().out
        assert out.endswith("mismatches: 0\n")
        assert "guarded_s3_ax" in out

    def test_mismatch_exit(self, capsys):
        assert main(["suite", "--max-n", "1"]) == 1
        assert "MISMATCH" in capsys.readouterr().out

    def test_json_report_is_deterministic(self, capsys, tmp_path):
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["suite", "--max-n", "2", "--json", str(first)]) == 0
        assert main(["suite", "--max-n", "2", "--json", str(second)]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()
        data = json.loads(first.read_text())
        assert data["mismatches"] == 0


class TestUsageErrors:
    def test_unknown_class(self, capsys):
        assert main(["valid", "--formula", "p", "--class", "s9", "--max-n", "1"]) == 2

    def test_bad_bound(self, capsys):
        assert main(["valid", "--formula", "p", "--class", "s2", "--max-n", "0"]) == 2

    def test_no_command(self, capsys):
        assert main([]) == 2

    def test_unknown_system(self, capsys):
        assert main(["prove", "--system", "s6", "--script", "x"]) == 2
