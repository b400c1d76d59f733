import subprocess
import sys
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run(*argv):
    return subprocess.run([sys.executable, *map(str, argv)], capture_output=True, text=True, check=True).stdout


def test_reproduce_examples():
    out = run(SCRIPTS / "reproduce_examples.py")
    assert "3/7" in out and "3/5" in out and "TYPE3" in out


def test_sweep():
    out = run(SCRIPTS / "sweep_random_models.py", "--n-models", "40", "--seed", "3")
    assert "equivalence-violations  0" in out
