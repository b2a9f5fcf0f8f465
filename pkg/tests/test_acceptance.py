"""Acceptance criteria 1-16, one test each, all at exact equality (zero tolerance).

Each test prints a single ``[PASS]``/``[FAIL]`` line.  Run standalone with
``python tests/test_acceptance.py`` to get just those lines.
"""

from __future__ import annotations

import subprocess
import sys

import pytest

from orbitkit.verify import CHECKS, run_check

SEED = 1


def _report(capsys, label: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail}")


@pytest.mark.parametrize("index", range(1, 16), ids=[f"criterion_{i:02d}" for i in range(1, 16)])
def test_criterion(index, capsys):
    v = run_check(index, SEED)
    _report(capsys, v.check, v.status == "PASS", v.detail)
    assert v.status == "PASS", v.detail


def test_criterion_16_byte_identical_reports(capsys):
    cmd = [sys.executable, "-m", "orbitkit.cli", "verify-paper", "--seed", str(SEED)]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    ok = first.returncode == 0 and first.stdout == second.stdout and first.stdout.strip()
    v = run_check(16, SEED)
    _report(
        capsys,
        "16 deterministic report",
        bool(ok) and v.status == "PASS",
        f"two runs, {len(first.stdout)} bytes each, identical: {first.stdout == second.stdout}; "
        f"exit {first.returncode}; in-process: {v.detail}",
    )
    assert ok and v.status == "PASS"


if __name__ == "__main__":
    failed = 0
    for i in range(1, len(CHECKS) + 1):
        v = run_check(i, SEED)
        failed += v.status != "PASS"
        print(f"[{v.status}] {v.check}: {v.detail}")
    raise SystemExit(1 if failed else 0)
