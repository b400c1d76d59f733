import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from bayesbias.cli import main, run_command
from conftest import FIXTURES

GOLDEN = Path(__file__).resolve().parent / "golden"

# (golden name, argv, expected exit code); paths are relative to the fixtures directory
CASES = [
    ("validate_example1", ["validate", "example1.json"], 0),
    ("validate_example2", ["validate", "example2.json"], 0),
    ("validate_beliefs_h_heavy", ["validate", "beliefs_h_heavy.json"], 0),
    ("validate_example4_utilities", ["validate", "example4_utilities.json"], 0),
    ("validate_example3_theta", ["validate", "example3_theta.json"], 0),
    ("posterior_heuristic", ["posterior", "example1.json", "--of", "e", "--given", "Empty"], 0),
    ("posterior_bias", ["posterior", "example1.json", "--of", "e", "--given", "Empty", "--sound", "example2.json"], 0),
    ("posterior_omega", ["posterior", "example6_uniform.json", "--of", "e,h", "--given", "OMEGA"], 0),
    ("balance_example1", ["balance", "example1.json"], 1),
    ("balance_example3", ["balance", "example3.json"], 0),
    ("balance_partition", ["balance", "partition.json"], 0),
    ("justify_example2", ["justify", "example2.json", "--against", "example1.json"], 1),
    ("justify_beliefs_h_heavy", ["justify", "beliefs_h_heavy.json", "--against", "example1.json"], 1),
    ("justify_example3", ["justify", "example3_beliefs.json", "--against", "example3.json"], 0),
    ("construct_conforming", ["construct", "conforming", "example1.json"], 0),
    ("construct_justifying", ["construct", "justifying", "example3.json", "--theta", "example3_theta.json"], 0),
    ("construct_justifying_unbalanced", ["construct", "justifying", "example1.json"], 1),
    ("construct_counterexample", ["construct", "counterexample", "example3.json"], 0),
    ("construct_counterexample_partition", ["construct", "counterexample", "partition.json"], 1),
    ("classify_full_example1", ["classify", "situation_full_example1.json"], 0),
    ("classify_full_partition", ["classify", "situation_full_partition.json"], 0),
    ("classify_full_example3", ["classify", "situation_full_example3.json"], 0),
    ("classify_explicit_example3", ["classify", "situation_explicit_example3.json"], 0),
    ("rationalize_win_beliefs", ["rationalize", "example4_plan.json", "--skeleton", "example4_skeleton.json", "--by", "beliefs"], 0),
    ("rationalize_win_evidence", ["rationalize", "example4_plan.json", "--skeleton", "example4_skeleton.json", "--by", "evidence"], 1),
    ("rationalize_tie_evidence", ["rationalize", "plan_tie.json", "--skeleton", "example1_skeleton.json", "--by", "evidence"], 0),
    ("rationalize_tie_beliefs", ["rationalize", "plan_tie.json", "--skeleton", "example1_skeleton.json", "--by", "beliefs"], 1),
    ("rationalize_h_fixed", ["rationalize", "example5_plan.json", "--skeleton", "example1.json", "--by", "evidence", "--fixed-prior"], 0),
    ("rationalize_h_beliefs", ["rationalize", "example5_plan.json", "--skeleton", "example1.json", "--by", "beliefs"], 0),
    ("plan_example4", ["plan", "example4_beliefs.json", "--utilities", "example4_utilities.json"], 0),
    ("plan_uniform", ["plan", "example6_uniform.json", "--utilities", "indicator_utilities.json"], 0),
    ("plan_beliefs_h_heavy", ["plan", "beliefs_h_heavy.json", "--utilities", "example5_dominant_utilities.json"], 0),
]


@pytest.fixture
def in_fixtures(monkeypatch):
    monkeypatch.chdir(FIXTURES)


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(in_fixtures, name, argv, code):
    report, got = run_command(argv)
    assert got == code
    text = json.dumps(report, indent=2) + "\n"
    path = GOLDEN / f"{name}.json"
    if os.environ.get("UPDATE_GOLDEN"):
        GOLDEN.mkdir(exist_ok=True)
        path.write_text(text)
    assert text == path.read_text()


def test_every_fixture_is_exercised():
    used = {a for _, argv, _ in CASES for a in argv if a.endswith(".json")}
    assert used == {p.name for p in FIXTURES.glob("*.json")}


def test_key_values(in_fixtures):
    report, _ = run_command(["posterior", "example1.json", "--of", "e", "--given", "Empty", "--sound", "example2.json"])
    assert (report["heuristic"], report["sound"], report["sound_vs_heuristic"]) == ("3/7", "3/5", "GREATER")
    report, _ = run_command(["classify", "situation_full_example3.json"])
    assert report["tag"] == "TYPE3"
    report, _ = run_command(["construct", "counterexample", "example3.json"])
    assert report["pair"] == ["B0", "B1"] and report["gap"] == {"sound": "1/4", "heuristic": "1/2"}


def test_validation_error_exit_2(tmp_path):
    doc = json.loads((FIXTURES / "example2.json").read_text())
    doc["worlds"][0]["q"] = "1/5"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    report, code = run_command(["validate", str(bad)])
    assert code == 2
    assert report["error"]["type"] == "validation"
    assert any(v.startswith("q-normalized") for v in report["error"]["violations"])


def test_parse_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  \"kind\": \"evidence\",\n")
    report, code = run_command(["validate", str(bad)])
    assert code == 2 and report["error"]["location"].startswith("line 3")


def test_wrong_kind_and_bad_theta_exit_2(in_fixtures):
    assert run_command(["balance", "example2.json"])[1] == 2
    assert run_command(["construct", "justifying", "example3.json", "--theta", "example3.json"])[1] == 2
    assert run_command(["posterior", "example1.json", "--of", "e", "--given", "Nope"])[1] == 2
    assert run_command(["rationalize", "plan_tie.json", "--skeleton", "example1_skeleton.json",
                        "--by", "evidence", "--fixed-prior"])[1] == 2


def test_missing_file_exit_3(tmp_path):
    report, code = run_command(["balance", str(tmp_path / "absent.json")])
    assert code == 3 and report["error"]["type"] == "io"


def test_json_flag_positions(in_fixtures, capsys):
    for argv in (["--json", "balance", "example3.json"], ["balance", "example3.json", "--json"]):
        assert main(argv) == 0
        assert json.loads(capsys.readouterr().out)["verdict"] == "balanced"


def test_text_output(in_fixtures, capsys):
    assert main(["balance", "example1.json"]) == 1
    assert capsys.readouterr().out == "command: balance\nverdict: unbalanced\n"


def test_console_script_runs_twice_identically():
    argv = [sys.executable, "-m", "bayesbias.cli", "--json", "classify", "situation_explicit_example3.json"]
    runs = [subprocess.run(argv, capture_output=True, cwd=FIXTURES) for _ in range(2)]
    assert runs[0].returncode == runs[1].returncode == 0
    assert runs[0].stdout == runs[1].stdout
