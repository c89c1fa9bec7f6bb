"""Acceptance battery: one test per numbered criterion.

Each test prints a single CRITERION line, asserts the check passed, and
holds the run to its time budget.  The battery shares one coupling table
across criteria, so order matters for speed but not for correctness.
"""
from __future__ import annotations

import time

from loopeq import verify

_BUDGETS = {1: 30, 2: 1800, 3: 300, 4: 10, 5: 60, 6: 300, 7: 600, 8: 120, 9: 300}


def _run(number: int) -> None:
    fn = verify.ALL_CRITERIA[number - 1]
    start = time.time()
    ok, detail = fn()
    elapsed = time.time() - start
    print(f"CRITERION {number} {'PASS' if ok else 'FAIL'}  {detail}  [{elapsed:.1f}s]")
    assert ok, detail
    assert elapsed < _BUDGETS[number], f"criterion {number} took {elapsed:.1f}s"


def test_criterion_1_golden_couplings():
    _run(1)


def test_criterion_2_term_counts():
    _run(2)


def test_criterion_3_consistency_identity():
    _run(3)


def test_criterion_4_mset_counts():
    _run(4)


def test_criterion_5_frozen_catalogs():
    _run(5)


def test_criterion_6_dual_symmetry_routes():
    _run(6)


def test_criterion_7_recursion_cross_check():
    _run(7)


def test_criterion_8_numeric_curve():
    _run(8)


def test_criterion_9_property_sweeps():
    _run(9)
