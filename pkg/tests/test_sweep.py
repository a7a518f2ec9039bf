import numpy as np
import pytest

from bfc.sweep import (
    CHECK_NAMES,
    EXHAUSTIVE_MAX_N,
    SAMPLED_MAX_N,
    approx_degree_ratio,
    iter_csv_rows,
    npn_canonical_array,
    resolve_threads,
    run_sweep,
)


def _by_name(entries):
    return {e["name"]: e for e in entries}


def test_exhaustive_n2_clean():
    r = run_sweep(max_n=2)
    assert r.violation_count == 0
    assert r.universe == {"mode": "exhaustive", "arity": 2, "function_count": 16}
    checks = _by_name(r.checks)
    assert set(checks) == set(CHECK_NAMES)
    for entry in checks.values():
        assert entry["failures"] == 0
        assert entry["passes"] == 16
        assert entry["witness"].startswith("2:")


def test_exhaustive_n3_clean_and_ratios():
    r = run_sweep(max_n=3)
    assert r.violation_count == 0
    assert r.universe["function_count"] == 256
    ratios = _by_name(r.ratios)
    assert set(ratios) == {"lambda/deg", "D/bs^2", "D/lambda^4", "lambda/adeg"}
    assert ratios["lambda/deg"]["max_ratio"] >= 1.0
    assert ratios["lambda/adeg"]["max_ratio"] == pytest.approx(2.0)
    assert ratios["lambda/adeg"]["witness"] == "3:17"
    assert ratios["lambda/adeg"]["class_count"] == 14


def test_report_hash_stable_across_runs():
    a = run_sweep(max_n=3)
    b = run_sweep(max_n=3)
    assert a.report_hash == b.report_hash


def test_report_hash_thread_invariant():
    a = run_sweep(max_n=3, threads=1)
    b = run_sweep(max_n=3, threads=2)
    assert a.report_hash == b.report_hash


def test_hash_excludes_timing():
    r = run_sweep(max_n=2)
    d = r.to_dict()
    assert "elapsed_seconds" in d["timing"]
    assert d["report_hash"] == r.report_hash


def test_sampled_mode_deterministic():
    a = run_sweep(max_n=6, sample=40, seed=9)
    b = run_sweep(max_n=6, sample=40, seed=9)
    c = run_sweep(max_n=6, sample=40, seed=10)
    assert a.report_hash == b.report_hash
    assert a.report_hash != c.report_hash
    assert a.universe == {
        "mode": "sampled",
        "arity": 6,
        "function_count": 40,
        "seed": 9,
    }
    assert a.violation_count == 0


def test_sampled_counts():
    r = run_sweep(max_n=5, sample=25, seed=1)
    for entry in r.checks:
        assert entry["passes"] + entry["failures"] == 25


def test_caps_enforced():
    with pytest.raises(ValueError):
        run_sweep(max_n=EXHAUSTIVE_MAX_N + 1)
    with pytest.raises(ValueError):
        run_sweep(max_n=SAMPLED_MAX_N + 1, sample=10)
    with pytest.raises(ValueError):
        run_sweep(max_n=3, sample=0)


def test_npn_class_counts_frozen():
    for n, count in ((1, 2), (2, 4), (3, 14), (4, 222)):
        assert len(np.unique(npn_canonical_array(n))) == count


def test_npn_canonical_is_a_retraction():
    # every table maps to a representative, and representatives are fixed
    for n in (2, 3):
        canon = npn_canonical_array(n)
        assert len(canon) == 1 << (1 << n)
        reps = np.unique(canon)
        assert all(canon[int(r)] == r for r in reps)
        assert all(canon[int(canon[t])] == canon[t] for t in range(len(canon)))


def test_approx_degree_ratio_n3():
    rep = approx_degree_ratio(3)
    assert rep["name"] == "lambda/adeg"
    assert rep["class_count"] == 14
    assert abs(rep["max_ratio"] - 2.0) < 1e-9
    assert rep["witness"] == "3:17"
    assert abs(rep["numerator"] - 2.0) < 1e-9
    assert rep["denominator"] == 1.0


def test_approx_degree_ratio_cap():
    with pytest.raises(ValueError):
        approx_degree_ratio(5)


def test_csv_rows_shape():
    rows = list(iter_csv_rows(2))
    assert rows[0] == "n,table,check,lhs,rhs,margin,pass"
    assert len(rows) == 1 + 16 * 13
    assert all(row.endswith(",true") for row in rows[1:])
    # spot-check one row: OR_2 has deg=2, lambda=sqrt(2)
    or_rows = [r for r in rows if r.startswith("2,2:E,deg<=lambda^2,")]
    assert len(or_rows) == 1
    parts = or_rows[0].split(",")
    assert parts[3] == "2"
    assert abs(float(parts[4]) - 2.0) < 1e-9


def test_csv_rows_sampled():
    rows = list(iter_csv_rows(5, sample=10, seed=3))
    assert len(rows) == 1 + 10 * 13
    again = list(iter_csv_rows(5, sample=10, seed=3))
    assert rows == again


def test_resolve_threads(monkeypatch):
    monkeypatch.delenv("BFC_THREADS", raising=False)
    assert resolve_threads(3) == 3
    assert resolve_threads(None) >= 1
    assert resolve_threads(0) >= 1
    monkeypatch.setenv("BFC_THREADS", "5")
    assert resolve_threads(None) == 5
    assert resolve_threads(2) == 5  # env var wins over the flag
    monkeypatch.setenv("BFC_THREADS", "not-a-number")
    with pytest.raises(ValueError):
        resolve_threads(None)
