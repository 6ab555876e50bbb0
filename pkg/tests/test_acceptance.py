"""Acceptance gate: every registered verification check, one line apiece.

The suite in :mod:`trimodal.verification` carries three statuses.  Regular
checks must come back ``pass``.  Checks recording a documented divergence
between the implementation and a quoted target come back ``known-divergence``
and appear here as expected failures -- strictly: if the quoted target ever
starts to hold, the suite flips that row to ``FAIL`` (stale analysis) and the
test fails loudly instead of silently going green.
"""

import pytest

from trimodal.verification import (
    FAIL,
    KNOWN,
    PASS,
    CheckResult,
    render_table,
    run_suite,
)

ROWS = run_suite(seed=0)
IDS = [r.check_id for r in ROWS]


@pytest.mark.parametrize("row", ROWS, ids=IDS)
def test_criterion(row):
    if row.status == KNOWN:
        pytest.xfail(
            f"documented divergence (expected {row.expected}, "
            f"measured {row.measured}, tol {row.tolerance}): {row.detail}"
        )
    assert row.status == PASS, (
        f"{row.check_id}: expected {row.expected}, measured {row.measured}, "
        f"tolerance {row.tolerance} -- {row.detail}"
    )


def test_no_hard_failures():
    assert [r.check_id for r in ROWS if r.status == FAIL] == []
    assert not any(r.gate for r in ROWS)


def test_every_criterion_group_present():
    groups = {r.check_id.split(".")[0] for r in ROWS}
    assert groups == {f"c{k}" for k in range(1, 10)}


def test_check_ids_unique():
    assert len(set(IDS)) == len(IDS)


def test_suite_is_deterministic():
    # byte-for-byte: the rendered report is part of the CLI contract
    assert render_table(run_suite(seed=0)) == render_table(ROWS)


def test_render_table_summary_line():
    table = render_table(ROWS)
    lines = table.splitlines()
    assert len(lines) == len(ROWS) + 1
    n_pass = sum(r.status == PASS for r in ROWS)
    n_known = sum(r.status == KNOWN for r in ROWS)
    assert lines[-1] == (
        f"summary: {len(ROWS)} checks: {n_pass} pass, "
        f"{n_known} known-divergence, 0 fail"
    )


def test_gate_property_trips_only_on_fail():
    base = dict(check_id="x.y", criterion="c", expected="0", measured="0",
                tolerance="exact", detail="")
    assert not CheckResult(status=PASS, **base).gate
    assert not CheckResult(status=KNOWN, **base).gate
    assert CheckResult(status=FAIL, **base).gate


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        run_suite(suite="nonsense", seed=0)
