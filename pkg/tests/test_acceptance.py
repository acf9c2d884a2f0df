"""Acceptance battery: criteria 1-7 in-process, criterion 8 through the CLI.

Each test prints a single ``criterion N: PASS|FAIL`` line that shows up even
without ``-s``.
"""
import json
import subprocess
import sys

import pytest

from latpos import battery

SEED = 42


def report(capsys, number: int, passed: bool, detail: str = "") -> None:
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if passed else 'FAIL'}{' ' + detail if detail else ''}")


def failing_checks(result: dict) -> list:
    return [c for c in result.get("checks", []) if not c.get("passed", True)]


@pytest.mark.parametrize("number", [1, 2, 3, 4, 5, 6, 7])
def test_criterion(number, capsys):
    result = battery.run_criterion(number, SEED)
    report(capsys, number, result["passed"], f"({len(result.get('checks', []))} checks)")
    assert result["passed"], failing_checks(result)


def verify_all() -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "latpos.cli", "verify-all", "--seed", str(SEED)],
                          capture_output=True, check=False)


def test_criterion_8_cli_determinism(capsys):
    first, second = verify_all(), verify_all()
    same = first.stdout == second.stdout
    ok = same and first.returncode == 0 and second.returncode == 0
    report(capsys, 8, ok, f"(exit {first.returncode}/{second.returncode}, identical={same})")
    assert first.returncode == 0, first.stderr.decode()
    assert second.returncode == 0
    assert same
    assert json.loads(first.stdout)["passed"] is True
