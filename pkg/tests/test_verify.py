import pytest

from nilgeo import catalog
from nilgeo.schema import dumps, parse_summary, summary_payload
from nilgeo.verify import CHECK_NAMES, check_sample, failing_checks, run_all, run_suite, summarize


def statuses(report):
    return {check.name: check.status for check in report.checks}


def test_every_report_lists_every_check():
    report = check_sample(catalog.get_entry("G3"), catalog.default_params("G3"))
    assert [check.name for check in report.checks] == list(CHECK_NAMES)
    assert len(CHECK_NAMES) == len(set(CHECK_NAMES))


@pytest.mark.parametrize("entry_id", ["G1", "G3", "G5.2", "G6", "G19"])
def test_entries_pass(entry_id):
    reports = run_suite(entry_id, samples=2, seed=42, threads=1)
    assert len(reports) == 2
    assert failing_checks(reports) == []


def test_g1_curvature_group_passes():
    report = check_sample(catalog.get_entry("G1"), catalog.complete_params("G1", {"t": "1/2", "psi11": "0", "psi12": "2"}))
    got = statuses(report)
    for name in ("splitting_hypotheses", "splitting_nabla", "splitting_curvature", "splitting_ricci"):
        assert got[name] == "pass"


def test_entries_without_splitting_skip_splitting_checks():
    got = statuses(check_sample(catalog.get_entry("G8"), catalog.default_params("G8")))
    assert got["splitting_hypotheses"] == "inconclusive"
    assert got["splitting_curvature"] == "inconclusive"


def test_riemannian_variant():
    report = check_sample(catalog.get_entry("G1.riem"), catalog.default_params("G1.riem"))
    got = statuses(report)
    signature = next(c for c in report.checks if c.name == "metric_signature")
    assert signature.status == "pass"
    assert "(6,0,0)" in signature.detail
    for name in ("scalar_curvature_zero", "curvature_square_zero", "ricci_matches_closed_form", "hermitian_ricci"):
        assert got[name] == "inconclusive"
    assert report.failures() == []


def test_broken_brackets_stop_the_suite():
    broken = catalog.get_entry("G3").model_copy(update={"brackets": {(1, 2): {3: 1}, (3, 4): {1: 1}}})
    report = check_sample(broken, catalog.default_params("G3"))
    got = statuses(report)
    assert got["jacobi"] == "fail"
    assert "first failing triple" in report.checks[0].detail
    assert all(status == "inconclusive" for name, status in got.items() if name != "jacobi")


def test_open_form_is_reported():
    form = {(1, 6): 1, (2, 5): -1, (3, 4): 1, (3, 6): 1}
    broken = catalog.get_entry("G3").model_copy(update={"form": lambda p: form})
    got = statuses(check_sample(broken, catalog.default_params("G3")))
    assert got["jacobi"] == "pass"
    assert got["omega_closed"] == "fail"
    assert got["metric_symmetric"] == "inconclusive"
    assert got["solver_fixed_point"] == "inconclusive"


def test_solver_fixed_point_is_float():
    report = check_sample(catalog.get_entry("G3"), catalog.default_params("G3"))
    check = next(c for c in report.checks if c.name == "solver_fixed_point")
    assert check.domain == "float"
    assert float(check.residual) < 1e-12


def test_summary_counts():
    reports = run_suite("G3", samples=3, seed=1, threads=1)
    summary = summarize(reports, 3, 1)
    assert summary.entries == ["G3"]
    assert summary.failures == 0
    assert sum(summary.counts["jacobi"].values()) == 3
    assert summary.counts["splitting_hypotheses"]["pass"] == 3


def test_threads_keep_order():
    serial = run_suite("G19", samples=4, seed=5, threads=1)
    pooled = run_suite("G19", samples=4, seed=5, threads=3)
    assert [r.sample for r in pooled] == [0, 1, 2, 3]
    assert [r.checks for r in pooled] == [r.checks for r in serial]


def test_run_all():
    seen = []
    summary = run_all(1, 0, threads=2, progress=seen.append)
    ids = [entry.id for entry in catalog.ENTRIES]
    assert seen == ids
    assert summary.entries == ids
    assert summary.failures == 0


def test_summary_json_is_deterministic():
    first = dumps(summary_payload(summarize(run_suite("G20", 2, 9, threads=1), 2, 9)))
    second = dumps(summary_payload(summarize(run_suite("G20", 2, 9, threads=1), 2, 9)))
    assert first == second
    assert "wall_time" not in first
    parsed = parse_summary(first)
    assert parsed.counts == summarize(run_suite("G20", 2, 9, threads=1), 2, 9).counts
    assert parsed.reports[0].wall_time is None


def test_timings_are_opt_in():
    payload = summary_payload(summarize(run_suite("G20", 1, 9, threads=1), 1, 9), timings=True)
    assert payload["reports"][0]["wall_time"] >= 0


def test_samples_must_be_positive():
    with pytest.raises(ValueError):
        run_suite("G3", samples=0, seed=1)
    with pytest.raises(ValueError):
        run_all(0, 1)


def full_catalog_json(samples, seed, threads):
    return dumps(summary_payload(run_all(samples, seed, threads=threads)))


def test_full_catalog_json_is_byte_identical():
    first = full_catalog_json(2, 42, threads=1)
    second = full_catalog_json(2, 42, threads=4)
    assert first == second
    assert parse_summary(first).entries == [entry.id for entry in catalog.ENTRIES]


@pytest.mark.slow
def test_full_catalog_at_twenty_samples():
    first = full_catalog_json(20, 42, threads=1)
    second = full_catalog_json(20, 42, threads=4)
    assert first == second
    summary = parse_summary(first)
    assert len(summary.reports) == 20 * len(catalog.ENTRIES)
    assert summary.failures == 0
