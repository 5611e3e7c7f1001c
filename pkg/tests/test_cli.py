"""End-to-end checks of the command-line interface via main(argv)."""

from __future__ import annotations

import io
import json

import pytest

from dagscope import Dag, VariableStatus, modelcode
from dagscope.cli import main
from dagscope.render import dag_to_json

from diagrams import CLASSIC, CLASSIC_CODE, IV, IV_COND, MEDIATION, TRIANGLE

S = VariableStatus


@pytest.fixture
def classic_file(tmp_path):
    target = tmp_path / "classic.txt"
    target.write_text(CLASSIC_CODE, encoding="utf-8")
    return str(target)


def write(tmp_path, g: Dag) -> str:
    target = tmp_path / "model.txt"
    target.write_text(modelcode.serialize(g), encoding="utf-8")
    return str(target)


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv) -> tuple[int, dict]:
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


# -- validate ---------------------------------------------------------------


def test_validate_text(classic_file, capsys):
    code, out, err = run(capsys, "validate", classic_file)
    assert code == 0 and err == ""
    assert out == "OK: 5 variables, 7 edges\n"


def test_validate_json(classic_file, capsys):
    code, payload = run_json(capsys, "validate", "--json", classic_file)
    assert code == 0
    assert payload == {"command": "validate", "valid": True, "variables": 5, "edges": 7}


def test_validate_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(CLASSIC_CODE))
    code, out, _ = run(capsys, "validate", "-")
    assert code == 0 and out.startswith("OK:")


def test_missing_file_exits_3(capsys):
    code, out, err = run(capsys, "validate", "/no/such/file")
    assert code == 3 and out == "" and err.startswith("error:")


def test_parse_error_exits_3(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("X 9\n\n", encoding="utf-8")
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 3 and err.startswith("error:")


def test_unknown_command_exits_2(classic_file, capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate", classic_file])
    assert info.value.code == 2


def test_missing_required_option_exits_2(classic_file, capsys):
    with pytest.raises(SystemExit) as info:
        main(["dsep", classic_file])
    assert info.value.code == 2


# -- paths ----------------------------------------------------------------


def test_paths_text(classic_file, capsys):
    code, out, _ = run(capsys, "paths", classic_file)
    assert code == 0
    assert out.splitlines() == [
        "biasing: E <- A -> Z <- B -> D closed",
        "biasing: E <- A -> Z -> D open",
        "causal: E -> D open",
        "biasing: E <- Z <- B -> D open",
        "biasing: E <- Z -> D open",
    ]


def test_paths_limit(classic_file, capsys):
    code, out, _ = run(capsys, "paths", "--limit", "2", classic_file)
    assert code == 0 and len(out.splitlines()) == 2


def test_paths_json(classic_file, capsys):
    code, payload = run_json(capsys, "paths", "--json", classic_file)
    assert code == 0 and payload["command"] == "paths"
    first = payload["paths"][0]
    assert first["vertices"] == ["E", "A", "Z", "B", "D"]
    assert first["directions"] == ["backward", "forward", "backward", "forward"]
    assert first["class"] == "biasing" and first["open"] is False


def test_paths_without_roles_exits_4(tmp_path, capsys):
    code, _, err = run(capsys, "paths", write(tmp_path, TRIANGLE))
    assert code == 4 and err.startswith("error:")


# -- dsep ------------------------------------------------------------------


def test_dsep_separated(classic_file, capsys):
    code, out, _ = run(capsys, "dsep", "--x", "A", "--y", "B", classic_file)
    assert code == 0 and out == "d-separated\n"


def test_dsep_connected(classic_file, capsys):
    code, out, _ = run(capsys, "dsep", "--x", "A", "--y", "B", "--given", "Z", classic_file)
    assert code == 1 and out == "d-connected\n"


def test_dsep_json(classic_file, capsys):
    code, payload = run_json(
        capsys, "dsep", "--json", "--x", "E", "--y", "B", "--given", "Z,A", classic_file
    )
    assert code == 0
    assert payload == {
        "command": "dsep",
        "x": ["E"],
        "y": ["B"],
        "given": ["A", "Z"],
        "separated": True,
    }


def test_dsep_unknown_name_exits_4(classic_file, capsys):
    code, _, err = run(capsys, "dsep", "--x", "A", "--y", "Q", classic_file)
    assert code == 4 and err.startswith("error:")


# -- adjust -----------------------------------------------------------------


def test_adjust_text(classic_file, capsys):
    code, out, _ = run(capsys, "adjust", classic_file)
    assert code == 0
    assert out.splitlines() == ["A, Z", "B, Z"]


def test_adjust_json(classic_file, capsys):
    code, payload = run_json(capsys, "adjust", "--json", "--effect", "direct", classic_file)
    assert code == 0
    assert payload == {
        "command": "adjust",
        "effect": "direct",
        "feasible": True,
        "sets": [["A", "Z"], ["B", "Z"]],
    }


def test_adjust_infeasible(tmp_path, capsys):
    blocked = MEDIATION.set_status("M", S.ADJUSTED)
    code, out, _ = run(capsys, "adjust", write(tmp_path, blocked))
    assert code == 0 and out == "NO SUFFICIENT ADJUSTMENT SET\n"


def test_adjust_empty_set_renders_braces(tmp_path, capsys):
    pair = Dag.of([("X", S.EXPOSURE), ("Y", S.OUTCOME)], [("X", "Y")])
    code, out, _ = run(capsys, "adjust", write(tmp_path, pair))
    assert code == 0 and out == "{}\n"


# -- instruments -------------------------------------------------------------


def test_instruments_text(tmp_path, capsys):
    code, out, _ = run(capsys, "instruments", write(tmp_path, IV))
    assert code == 0 and out == "I\n"


def test_conditional_instrument_text(tmp_path, capsys):
    code, out, _ = run(capsys, "instruments", write(tmp_path, IV_COND))
    assert code == 0 and out == "I | W\n"


def test_instruments_json(tmp_path, capsys):
    code, payload = run_json(capsys, "instruments", "--json", write(tmp_path, IV_COND))
    assert code == 0
    assert payload == {
        "command": "instruments",
        "instruments": [{"instrument": "I", "conditioningSet": ["W"]}],
    }


# -- implications -------------------------------------------------------------


def test_implications_text(classic_file, capsys):
    code, out, _ = run(capsys, "implications", classic_file)
    assert code == 0
    assert out.splitlines() == ["A _||_ B", "A _||_ D | B, E, Z", "B _||_ E | A, Z"]


def test_implications_json(classic_file, capsys):
    code, payload = run_json(capsys, "implications", "--json", classic_file)
    assert code == 0
    assert payload["implications"][0] == {"x": "A", "y": "B", "given": []}


# -- transform ----------------------------------------------------------------


def test_transform_moral_text(classic_file, capsys):
    code, out, _ = run(capsys, "transform", "--kind", "moral", classic_file)
    assert code == 0
    assert out.startswith("graph {")
    assert '"A" -- "B";' in out


def test_transform_correlation_json(classic_file, capsys):
    code, payload = run_json(
        capsys, "transform", "--json", "--kind", "correlation", classic_file
    )
    assert code == 0
    assert payload["vertices"] == ["E", "D", "A", "B", "Z"]
    assert ["A", "B"] not in payload["lines"]
    assert len(payload["lines"]) == 9


def test_transform_moral_restricted(classic_file, capsys):
    code, payload = run_json(
        capsys, "transform", "--json", "--kind", "moral", "--restrict", classic_file
    )
    assert code == 0 and len(payload["lines"]) == 9


# -- atomic --------------------------------------------------------------------


def test_atomic_text(classic_file, capsys):
    code, out, _ = run(capsys, "atomic", classic_file)
    assert code == 0
    assert out.splitlines() == ["A -> Z", "B -> Z", "E -> D", "Z -> E"]


def test_atomic_json(tmp_path, capsys):
    code, payload = run_json(capsys, "atomic", "--json", write(tmp_path, TRIANGLE))
    assert code == 0
    assert payload == {"command": "atomic", "edges": [["M", "Y"], ["X", "M"]]}


# -- export ---------------------------------------------------------------------


def test_export_dot(classic_file, capsys):
    code, out, _ = run(capsys, "export", classic_file)
    assert code == 0
    assert out.startswith("digraph {")
    assert '"E" -> "D";' in out


def test_export_json_document(classic_file, capsys):
    code, out, _ = run(capsys, "export", "--format", "json", classic_file)
    assert code == 0
    assert json.loads(out) == dag_to_json(CLASSIC)


def test_export_svg(classic_file, capsys):
    code, out, _ = run(capsys, "export", "--format", "svg", "--style", "sem", classic_file)
    assert code == 0
    assert out.startswith("<svg") and "<ellipse" in out


def test_export_wrapped_in_json(classic_file, capsys):
    code, payload = run_json(capsys, "export", "--json", "--format", "dot", classic_file)
    assert code == 0
    assert payload["format"] == "dot" and payload["content"].startswith("digraph {")


# -- simulate -----------------------------------------------------------------


def test_simulate_csv(classic_file, capsys):
    code, out, _ = run(capsys, "simulate", "--n", "5", classic_file)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "E,D,A,B,Z"
    assert len(lines) == 6
    for line in lines[1:]:
        assert len([float(cell) for cell in line.split(",")]) == 5


def test_simulate_deterministic(classic_file, capsys):
    _, first, _ = run(capsys, "simulate", "--n", "3", "--seed", "9", classic_file)
    _, second, _ = run(capsys, "simulate", "--n", "3", "--seed", "9", classic_file)
    assert first == second


def test_simulate_json(classic_file, capsys):
    code, payload = run_json(capsys, "simulate", "--json", "--n", "4", classic_file)
    assert code == 0
    assert payload["columns"] == ["E", "D", "A", "B", "Z"]
    assert len(payload["rows"]) == 4
