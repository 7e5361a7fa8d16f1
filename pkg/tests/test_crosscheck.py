from pretzel_delta.crosscheck import (check_vector, closed_form_for, crosscheck, lkcheck,
                                      reconcile_table)
from pretzel_delta.a2_engine import a2_skein
from pretzel_delta.table import parse_table, load_table


def test_odd_grid_n3():
    report = crosscheck(odd_n=[3], max_abs=5, jobs=1)
    s = report.summary()
    assert s == {"vectors": 216, "agree": 216, "disagree": 0, "alexanderChecked": 216}
    assert report.ok


def test_even_grid_n4():
    report = crosscheck(even_n=[4], max_abs=3, jobs=1)
    assert report.summary()["vectors"] == 4 * 3 * 4 ** 3
    assert report.ok


def test_empty_grid():
    report = crosscheck(odd_n=[3], max_abs=0)
    assert report.summary()["vectors"] == 0 and report.ok
    assert report.as_dict()["firstFailure"] is None


def test_parallel_matches_serial():
    a = crosscheck(odd_n=[3], even_n=[2], max_abs=3, jobs=1)
    b = crosscheck(odd_n=[3], even_n=[2], max_abs=3, jobs=2)
    assert a.as_dict() == b.as_dict()


def test_check_vector_respects_cap():
    assert "alexander" not in check_vector((7, 7, 7), cap=20).values
    assert check_vector((3, 5, 7)).agree


def test_closed_form_examples():
    steps = a2_skein((3, 5, 7)).trace
    form = closed_form_for(steps[0])
    assert form.signed_lk == 6
    # leading ones: smoothing band 3 of (1,1,3) gives ((3-1) + 0)/2
    assert closed_form_for(a2_skein((1, 1, 3)).trace[0]).signed_lk == 1


def test_lkcheck_small():
    report = lkcheck([3], 3)
    assert report.ok and report.compared > 0
    assert report.as_dict()["mismatches"] == 0


def test_table_reconciles():
    rows = reconcile_table(load_table())
    assert all(r.ok for r in rows)
    row = next(r for r in rows if r.name == "8_5")
    assert row.admissible == {3: True}


def test_tampered_table_is_flagged():
    rows = reconcile_table(parse_table("8_5,2;3;3,7,3\n"))
    assert not rows[0].a2_ok and not rows[0].ok
    rows = reconcile_table(parse_table("8_5,2;3;3,-1,2\n"))
    assert rows[0].a2_ok and not rows[0].u_ok
