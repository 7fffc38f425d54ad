"""Acceptance gate: every verification-suite check at full stated scale,
plus report determinism across worker counts.

Run with ``pytest -v tests/test_acceptance.py`` to get the one-line-per-
criterion view; the same checks back ``sawkit verify``.
"""

import subprocess
import sys

import pytest

from sawkit import verify as V


CRITERIA = [
    ("1-construction-formula", V.check_construction_formula),
    ("2-small-classification", V.check_small_classification),
    ("3-bb-symmetry-n5", V.check_bb_symmetry_n5),
    ("4-intersecting-odd", V.check_intersecting_odd),
    ("5-even-ground-k2", V.check_even_ground_k2),
    ("6-expected-weight", V.check_expected_weight),
    ("7-chain-bound", V.check_chain_bound_random),
    ("8-bubbling", V.check_bubbling),
    ("9-even-sunflowers", V.check_even_sunflowers),
    ("10-odd-sunflower-bridge", V.check_no_odd_sunflower_bridge),
    ("11-kernel-oracles", V.check_kernel_oracles),
    ("k3-probe", V.check_even_ground_k3_probe),
]


@pytest.mark.parametrize("label,check", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, check):
    result = check()
    print(f"{'PASS' if result.ok else 'FAIL'} {result.key}: {result.detail}")
    assert result.ok, f"{result.key}: {result.detail}"


def _run_verify(workers: int) -> bytes:
    proc = subprocess.run(
        [sys.executable, "-m", "sawkit.cli", "verify", "--level", "quick", "--workers", str(workers)],
        capture_output=True,
        check=False,
    )
    assert proc.returncode == 0, proc.stdout.decode() + proc.stderr.decode()
    return proc.stdout


def test_criterion_12_reports_are_worker_invariant():
    assert _run_verify(1) == _run_verify(8)
