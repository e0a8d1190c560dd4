"""Acceptance gate: the ten headline claims, one test and one printed line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS/FAIL lines
and per-check timings.  The heavy lifting lives in hermquot.verify; this
module pins the check list and the time budgets.
"""

import pytest

from hermquot import verify

EXPECTED_IDS = [
    "hermitian_baseline",
    "family_I_q8",
    "family_I_q27",
    "family_II",
    "family_III",
    "automorphism_groups",
    "unique_fixed_point",
    "isomorphism_classes",
    "factorization_lemmas",
    "oracle_suites",
]


@pytest.fixture(scope="module")
def results():
    return {r["id"]: r for r in verify.run_all()}


def test_check_list_is_pinned():
    assert [cid for cid, _ in verify.CHECKS] == EXPECTED_IDS
    assert set(verify.BUDGETS) == set(EXPECTED_IDS)


@pytest.mark.parametrize("cid", EXPECTED_IDS)
def test_criterion(cid, results):
    r = results[cid]
    print(f"{'PASS' if r['ok'] else 'FAIL'}  {cid}  ({r['seconds']}s)")
    assert r["ok"], f"{cid} failed: {r['details']}"
    assert r["seconds"] <= verify.BUDGETS[cid], f"{cid} blew its time budget"
