"""CLI behavior: formats, determinism, seed precedence, exit codes."""

import csv
import io
import json
from pathlib import Path

import jsonschema
import pytest

import locklab.cli as cli
from locklab.attack import AttackStats

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[1] / "docs" / "output-schema.json").read_text()
)


def run(argv, tmp_path, name="out"):
    """Invoke main() writing to a temp file; return (exit_code, bytes)."""
    path = tmp_path / name
    code = cli.main(argv + ["--out", str(path)])
    data = path.read_bytes() if path.exists() else b""
    return code, data


def test_bounds_csv_exact_values(tmp_path):
    code, data = run(["bounds", "--m-range", "1:2"], tmp_path)
    assert code == 0
    text = data.decode("utf-8")
    assert "\r" not in text
    lines = text.splitlines()
    assert lines[0] == "m,n,locking_bound,epsilon_of_n,delta_lower,key_entropy_bits"
    assert lines[1] == "1,2,0.816497,1.000000,1.768466,2.584963"
    assert lines[2] == "2,4,0.666667,0.778801,3.503258,4.169925"
    assert text.endswith("\n")


def test_stdout_default(capsys):
    assert cli.main(["bounds", "--m", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("m,n,locking_bound")


@pytest.mark.parametrize(
    "argv",
    [
        ["bounds", "--m-range", "1:3", "--format", "json"],
        ["attack", "--m", "1", "--trials", "50", "--format", "json"],
        ["attack", "--m", "2", "--blind", "--trials", "50", "--format", "json"],
        ["iacc", "--m", "1", "--restarts", "3", "--format", "json"],
        ["security", "--m", "1", "--restarts", "3", "--format", "json"],
        ["security", "--m", "3", "--bound-only", "--format", "json"],
        ["bell", "--n", "1", "--trials", "3", "--format", "json"],
        ["proofchain", "--m", "1", "--samples", "3", "--format", "json"],
    ],
)
def test_json_outputs_validate_against_schema(argv, tmp_path):
    code, data = run(argv, tmp_path)
    assert code == 0
    jsonschema.validate(json.loads(data), SCHEMA)


def test_csv_float_formatting(tmp_path):
    code, data = run(["bell", "--n", "1", "--trials", "2"], tmp_path)
    assert code == 0
    rows = list(csv.reader(io.StringIO(data.decode())))
    assert rows[0] == ["trial", "fidelity", "epsilon_bound", "measured_distance", "pass"]
    for row in rows[1:]:
        for cell in row[1:4]:
            whole, frac = cell.split(".")
            assert len(frac) == 6
        assert row[4] in ("true", "false")


def test_security_csv_quotes_verdict(tmp_path):
    code, data = run(["security", "--m", "2", "--bound-only"], tmp_path)
    assert code == 0
    rows = list(csv.reader(io.StringIO(data.decode())))
    assert rows[0][-1] == "verdict_text"
    assert len(rows[1]) == len(rows[0])
    assert "," in rows[1][-1]  # the prose survives CSV round-tripping
    assert rows[1][3] == ""  # no search leg ran


def test_repeat_runs_are_byte_identical(tmp_path):
    argv = ["attack", "--m", "2", "--blind", "--trials", "500", "--seed", "42"]
    _, first = run(argv, tmp_path, "a")
    _, second = run(argv, tmp_path, "b")
    assert first == second
    argv = ["bell", "--n", "2", "--trials", "4", "--seed", "42", "--format", "json"]
    _, first = run(argv, tmp_path, "c")
    _, second = run(argv, tmp_path, "d")
    assert first == second


def test_seed_changes_blind_outcome(tmp_path):
    base = ["attack", "--m", "1", "--blind", "--trials", "2000"]
    _, a = run(base + ["--seed", "1"], tmp_path, "a")
    _, b = run(base + ["--seed", "2"], tmp_path, "b")
    assert a != b


def test_env_seed_and_flag_precedence(tmp_path, monkeypatch):
    base = ["attack", "--m", "1", "--blind", "--trials", "2000"]
    _, explicit = run(base + ["--seed", "7"], tmp_path, "a")
    monkeypatch.setenv("LOCKLAB_SEED", "7")
    _, via_env = run(base, tmp_path, "b")
    assert via_env == explicit
    # an explicit flag beats the environment
    _, flag_wins = run(base + ["--seed", "11"], tmp_path, "c")
    monkeypatch.delenv("LOCKLAB_SEED")
    _, plain = run(base + ["--seed", "11"], tmp_path, "d")
    assert flag_wins == plain


def test_env_seed_must_be_integer(tmp_path, monkeypatch):
    monkeypatch.setenv("LOCKLAB_SEED", "not-a-number")
    code, _ = run(["attack", "--m", "1", "--trials", "10"], tmp_path)
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["definitely-not-a-command"],
        ["bounds"],  # neither --m nor --m-range
        ["bounds", "--m", "0"],
        ["bounds", "--m", "1", "--m-range", "1:2"],
        ["bounds", "--m-range", "3:1"],
        ["bounds", "--m-range", "abc"],
        ["bounds", "--m", "1", "--format", "xml"],
        ["attack", "--m", "1", "--trials", "0"],
        ["iacc", "--m", "3", "--restarts", "2"],  # dense search is capped
        ["security", "--m-range", "1:2"],
        ["bell", "--n", "3"],
        ["bell", "--n", "1", "--perturbation", "1.5"],
        ["proofchain", "--m", "4"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert cli.main(argv) == 2
    capsys.readouterr()  # swallow argparse noise


def test_invariant_violation_exits_3(monkeypatch, capsys):
    def broken(m, trials, seed, known_head=None):
        return AttackStats(trials, trials - 1, (trials - 1) / trials, m, seed)

    monkeypatch.setattr(cli, "run_header_attack", broken)
    assert cli.main(["attack", "--m", "1", "--trials", "10"]) == 3
    assert "invariant" in capsys.readouterr().err


def test_unwritable_output_exits_1(tmp_path, capsys):
    target = tmp_path / "missing-dir" / "out.csv"
    assert cli.main(["bounds", "--m", "1", "--out", str(target)]) == 1
    capsys.readouterr()


def test_entry_point_installed():
    import shutil

    exe = shutil.which("locklab")
    assert exe is not None
