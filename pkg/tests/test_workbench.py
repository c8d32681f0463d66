"""
Tests for the command-line entry point: exit codes, outputs and determinism.
"""

import yaml

import config
from pipeline import workbench
from pipeline.workbench import EXIT_FAILURE, EXIT_PASS, EXIT_RESOURCE, EXIT_USAGE, run


def test_dump_model(capsys):
    assert run(["dump-model", "--ell", "1"]) == EXIT_PASS
    data = yaml.safe_load(capsys.readouterr().out)
    assert data["dimension"] == 3
    assert data["rank"] == 1


def test_enumerate_with_bruteforce_check(capsys):
    assert run(["enumerate", "--ell", "1", "--level", "1", "--max-degree", "4", "--check-bruteforce"]) == EXIT_PASS
    out = capsys.readouterr().out
    assert "degree 3: 7" in out
    assert "degree 4: 13" in out


def test_enumerate_is_deterministic(capsys):
    args = ["enumerate", "--ell", "1", "--level", "2", "--max-degree", "3", "--format", "csv"]
    run(args)
    first = capsys.readouterr().out
    run(args)
    assert capsys.readouterr().out == first


def test_verify_theorem_passes(capsys):
    assert run(["verify-theorem", "--ell", "1", "--level", "1", "--max-degree", "4", "--format", "csv"]) == EXIT_PASS
    lines = capsys.readouterr().out.splitlines()
    header = lines[0].split(",")
    last = dict(zip(header, lines[-1].split(",")))
    assert last["dim"] == last["admissible_count"] == last["monomial_rank"] == last["character_dim"] == "13"


def test_verify_theorem_fs_array():
    assert run(["verify-theorem", "--ell", "1", "--level", "1", "--max-degree", "3", "--array", "fs"]) == EXIT_PASS


def test_verify_shift_passes():
    assert run(["verify-shift", "--ell", "1", "--level", "1", "--max-degree", "3"]) == EXIT_PASS


def test_verify_algebra_passes():
    assert run(["verify-algebra", "--ell", "1", "--samples", "20", "--max-degree", "3"]) == EXIT_PASS


def test_verify_lemmas_and_negative_control():
    assert run(["verify-lemmas", "--ell", "1", "--max-multiplicity", "2"]) == EXIT_PASS
    assert run(["verify-lemmas", "--ell", "1", "--max-multiplicity", "2", "--corrupt-bracket"]) == EXIT_FAILURE


def test_usage_errors():
    assert run(["bogus"]) == EXIT_USAGE
    assert run(["enumerate", "--ell", "0"]) == EXIT_USAGE
    assert run(["enumerate", "--format", "xml"]) == EXIT_USAGE
    assert run(["enumerate", "--array", "diagonal"]) == EXIT_USAGE


def test_invalid_environment_cap(monkeypatch):
    monkeypatch.setattr(config, "MAX_SLICE_DIM", 0)
    assert run(["dump-model"]) == EXIT_USAGE


def test_resource_cap_exit_code():
    assert run(["verify-theorem", "--ell", "1", "--level", "1", "--max-degree", "2",
                "--cap-slice-dim", "5"]) == EXIT_RESOURCE


def test_output_file(tmp_path):
    target = tmp_path / "reports" / "model.yaml"
    assert run(["dump-model", "--ell", "2", "--output", str(target)]) == EXIT_PASS
    assert yaml.safe_load(target.read_text(encoding="utf-8"))["dimension"] == 10


def test_strict_mode_stops_on_failure(capsys):
    args = ["verify-lemmas", "--ell", "1", "--max-multiplicity", "1", "--corrupt-bracket", "--strict"]
    assert run(args) == EXIT_FAILURE
    captured = capsys.readouterr()
    assert "[FAIL] T_a checks" in captured.err
    assert captured.out == ""
    assert run(["verify-theorem", "--ell", "1", "--max-degree", "3", "--strict"]) == EXIT_PASS


def test_engine_value_error_is_a_usage_error(monkeypatch, capsys):
    def reject(run_config):
        raise ValueError("rank out of range")

    monkeypatch.setitem(workbench.HANDLERS, "dump-model", reject)
    assert run(["dump-model"]) == EXIT_USAGE
    assert "rank out of range" in capsys.readouterr().err


def test_enumerated_options_are_choices():
    actions = {action.dest: action for action in workbench.build_parser()._actions}
    assert tuple(actions["array"].choices) == ("full", "fs")
    assert tuple(actions["output_format"].choices) == ("csv", "text", "structured")
