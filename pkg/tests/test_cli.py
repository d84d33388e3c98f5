"""End-to-end tests of the command-line interface."""

import json
from pathlib import Path

from typer.testing import CliRunner

from sheafmod.cli import app

FREE2_ELEMENTS = ["(0,0)", "(1,0)", "(0,1)", "(1,1)"]


def run_json(runner: CliRunner, *args: str) -> tuple[int, dict]:
    result = runner.invoke(app, ["--format", "json", *args])
    return result.exit_code, json.loads(result.stdout)


def write(tmp_path: Path, name: str, doc: object) -> str:
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_frame_check_fails_on_m3(runner: CliRunner):
    code, report = run_json(runner, "frame", "check", "fixture:M3")
    assert code == 1
    assert report["passed"] is False


def test_frame_check_from_poset(runner: CliRunner, tmp_path: Path):
    doc = {"name": "V", "poset": {"elements": ["a", "b", "c"], "leq": [[0, 2], [1, 2]]}}
    code, report = run_json(runner, "frame", "check", write(tmp_path, "v.json", doc))
    assert code == 0
    assert report["instances"][0]["descriptor"]["elements"] == 5


def test_module_check_classifies_free2(runner: CliRunner):
    code, report = run_json(runner, "module", "check", "fixture:FREE2")
    assert code == 0
    descriptor = report["instances"][0]["descriptor"]
    assert descriptor["étale"] == "yes"
    assert descriptor["Hilbert basis"] == "yes"
    assert descriptor["sections"] == 3


def test_module_check_chain3_passes_as_non_etale(runner: CliRunner):
    code, report = run_json(runner, "module", "check", "fixture:CHAIN3")
    assert code == 0
    descriptor = report["instances"][0]["descriptor"]
    assert descriptor["open"] == "yes"
    assert descriptor["étale"] == "no"


def test_module_check_rejects_corrupt_action(runner: CliRunner):
    code, report = run_json(runner, "module", "check", "fixture:CORRUPT")
    assert code == 1
    assert report["passed"] is False


def test_poset_order_is_read_from_leq(runner: CliRunner, tmp_path: Path):
    doc = {"poset": {"elements": ["a", "b"], "leq": [[0, 1]]}}
    code, report = run_json(runner, "frame", "check", write(tmp_path, "c.json", doc))
    assert code == 0
    assert report["instances"][0]["descriptor"]["elements"] == 3


def test_unknown_key_exits_2(runner: CliRunner, tmp_path: Path):
    doc = {"poset": {"elements": ["a", "b"], "pairs": [[0, 1]]}}
    result = runner.invoke(app, ["frame", "check", write(tmp_path, "p.json", doc)])
    assert result.exit_code == 2


def test_malformed_json_exits_2(runner: CliRunner, tmp_path: Path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    result = runner.invoke(app, ["frame", "check", str(path)])
    assert result.exit_code == 2


def test_unknown_fixture_exits_2(runner: CliRunner):
    result = runner.invoke(app, ["module", "check", "fixture:NOPE"])
    assert result.exit_code == 2


def test_max_size_cannot_raise_guardrail(runner: CliRunner):
    result = runner.invoke(app, ["--max-size", "999999", "frame", "check", "fixture:M3"])
    assert result.exit_code == 2


def test_hilbert_check_reports_degeneracy(runner: CliRunner):
    code, report = run_json(runner, "hilbert", "check", "fixture:CHAIN3")
    assert code == 0
    descriptor = report["instances"][0]["descriptor"]
    assert descriptor["nondegenerate"].startswith("no")
    assert descriptor["weakly nondegenerate"] == "yes"


def test_hilbert_basis_accepts_unit_vectors(runner: CliRunner):
    code, _ = run_json(runner, "hilbert", "basis", "fixture:FREE2", "(1,0)", "(0,1)")
    assert code == 0
    code, _ = run_json(runner, "hilbert", "basis", "fixture:FREE2", "(1,0)")
    assert code == 1


def test_to_matrix_without_basis_exits_2(runner: CliRunner):
    result = runner.invoke(app, ["module", "to-matrix", "fixture:CHAIN3"])
    assert result.exit_code == 2


def test_identity_matrix_to_module(runner: CliRunner, tmp_path: Path):
    doc = {"base": {"named": "B2"}, "index": ["s", "t"], "entries": [["1", "0"], ["0", "1"]]}
    code, report = run_json(runner, "matrix", "to-module", write(tmp_path, "m.json", doc))
    assert code == 0
    descriptor = report["instances"][0]["descriptor"]
    assert descriptor["elements"] == 4
    assert descriptor["étale"] == "yes"


def test_identity_map_dagger_check(runner: CliRunner, tmp_path: Path):
    doc = {
        "source": {"fixture": "FREE2"},
        "target": {"fixture": "FREE2"},
        "inverse_image": FREE2_ELEMENTS,
    }
    code, report = run_json(runner, "map", "dagger-check", write(tmp_path, "f.json", doc))
    assert code == 0
    assert report["instances"][0]["name"] == "f"


def test_zero_hom_is_not_a_sheaf_hom(runner: CliRunner, tmp_path: Path):
    doc = {
        "source": {"fixture": "FREE2"},
        "target": {"fixture": "FREE2"},
        "table": ["(0,0)"] * 4,
        "name": "zero",
    }
    code, report = run_json(runner, "hom", "check", write(tmp_path, "h.json", doc))
    assert code == 0
    descriptor = report["instances"][0]["descriptor"]
    assert descriptor["module hom"] == "yes"
    assert descriptor["sheaf hom"].startswith("no")
    assert descriptor["adjointable"] == "yes"


def test_suite_run_is_deterministic(runner: CliRunner):
    first_code, first = run_json(runner, "suite", "run", "--seed", "5", "--count", "1")
    second_code, second = run_json(runner, "suite", "run", "--seed", "5", "--count", "1")
    assert first_code == second_code == 0
    assert first == second
    assert first["seed"] == 5


def test_suite_run_rejects_negative_count(runner: CliRunner):
    result = runner.invoke(app, ["suite", "run", "--count=-1"])
    assert result.exit_code == 2


def test_export_dot(runner: CliRunner):
    result = runner.invoke(app, ["export", "dot", "fixture:CHAIN3"])
    assert result.exit_code == 0
    assert "digraph" in result.stdout
