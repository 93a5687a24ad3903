"""Sweep harness: constancy classification, catalog runs, negative
controls, and deterministic report/CSV serialization."""

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from billiardlab.orbit import BilliardConfig, build_family
from billiardlab.catalog import make_anchor
from billiardlab.sweep import (
    HarnessIntegrityError,
    SweepPlan,
    classify,
    negative_control,
    plan_run_id,
    report_document,
    run_catalog,
    save_report,
    sweep_quantity,
    write_series_csv,
)

CFG4 = BilliardConfig(2.0, 1.0, 4)


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

class TestClassify:
    def test_constant_series(self):
        assert classify([3.0] * 10) == "invariant"

    def test_jittered_constant_within_tolerance(self):
        rng = np.random.default_rng(1)
        vals = 5.0 + 1e-11 * rng.standard_normal(50)
        assert classify(list(vals)) == "invariant"

    def test_varying_series(self):
        assert classify([1.0, 1.0001, 1.0]) == "not_invariant"

    def test_zero_series_is_invariant(self):
        assert classify([0.0, 1e-12, -1e-12]) == "invariant"

    def test_small_absolute_noise_near_zero_not_flagged(self):
        # fluctuations below tol_abs around zero are constancy, not signal
        assert classify([1e-11, -1e-11, 5e-12]) == "invariant"
        assert classify([1e-7, -1e-7, 5e-8]) == "not_invariant"

    def test_vector_series_component_wise(self):
        good = [[1.0, 2.0], [1.0, 2.0]]
        bad = [[1.0, 2.0], [1.0, 2.1]]
        assert classify(good) == "invariant"
        assert classify(bad) == "not_invariant"

    def test_empty_series_degenerate(self):
        assert classify([]) == "degenerate"

    @given(scale=st.floats(min_value=1e-6, max_value=1e6),
           offset=st.floats(min_value=-1e3, max_value=1e3))
    @settings(max_examples=50)
    def test_scale_invariance_of_relative_test(self, scale, offset):
        base = np.array([1.0, 1.0 + 5e-9, 1.0 - 5e-9])
        assert classify(list(scale * base)) == "invariant"
        drift = np.array([1.0, 1.001, 0.999])
        assert classify(list(scale * drift)) == "not_invariant"


# ---------------------------------------------------------------------------
# plans and run ids
# ---------------------------------------------------------------------------

class TestPlan:
    def test_validation(self):
        with pytest.raises(ValueError):
            SweepPlan(configs=(CFG4,), t_samples=4)
        with pytest.raises(ValueError):
            SweepPlan(configs=(CFG4,), tol_rel=0.0)

    def test_run_id_depends_on_plan(self):
        p1 = SweepPlan(configs=(CFG4,), t_samples=16)
        p2 = SweepPlan(configs=(CFG4,), t_samples=16)
        p3 = SweepPlan(configs=(CFG4,), t_samples=32)
        assert plan_run_id(p1) == plan_run_id(p2)
        assert plan_run_id(p1) != plan_run_id(p3)

    def test_t_grid(self):
        p = SweepPlan(configs=(CFG4,), t_samples=8, t_offset=0.5)
        g = p.t_grid()
        assert len(g) == 8
        assert g[0] == pytest.approx(0.5)
        assert g[1] - g[0] == pytest.approx(np.pi / 4)


# ---------------------------------------------------------------------------
# sweep_quantity
# ---------------------------------------------------------------------------

class TestSweepQuantity:
    def test_invariant_quantity_constant(self):
        fam = build_family(CFG4)
        series, skipped = sweep_quantity(fam, "k102", None, 16)
        assert not skipped
        vals = np.array([v for _, v in series])
        assert np.max(np.abs(vals - vals.mean())) < 1e-10

    def test_anchored_quantity(self):
        fam = build_family(CFG4)
        series, _ = sweep_quantity(fam, "k804b", make_anchor(fam, "f1"), 12)
        assert np.allclose([v for _, v in series], 4.0, atol=1e-9)


# ---------------------------------------------------------------------------
# run_catalog
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def small_run():
    plan = SweepPlan(configs=(CFG4,), t_samples=16)
    return plan, run_catalog(plan)


class TestRunCatalog:
    def test_all_acceptance_rows_admissible(self, small_run):
        plan, reports = small_run
        assert reports
        assert all(r.mode == "acceptance" for r in reports)

    def test_every_admissible_variant_present(self, small_run):
        plan, reports = small_run
        from billiardlab.catalog import list_variants
        from billiardlab.sweep import _anchor_roles_for, _variant_n_ok
        expected = 0
        for v in list_variants():
            if _variant_n_ok(v, 4):
                expected += len(_anchor_roles_for(v, plan.anchors))
        assert len(reports) == expected

    def test_reports_sorted(self, small_run):
        _, reports = small_run
        keys = [(r.sub_id, r.config.n, r.anchor or "") for r in reports]
        assert keys == sorted(keys)

    def test_rhombus_verdicts(self, small_run):
        _, reports = small_run
        for r in reports:
            if r.discrepancy:
                continue  # documented open questions, reported not asserted
            assert r.verdict == "invariant", (r.sub_id, r.anchor, r.max_rel_dev)
            if r.closed_form_residual is not None:
                assert r.closed_form_residual < 1e-8, (r.sub_id, r.anchor)

    def test_diagnostics_mode_includes_out_of_domain_rows(self):
        plan = SweepPlan(configs=(BilliardConfig(2.0, 1.0, 3),), t_samples=16)
        reports = run_catalog(plan, include_inadmissible=True)
        diag = [r for r in reports if r.mode == "diagnostics"]
        assert diag
        # even-N-only quantities vary on an odd family
        k106 = [r for r in diag if r.sub_id == "k106"]
        assert k106 and all(r.verdict == "not_invariant" for r in k106)

    def test_degenerate_family_row(self):
        # the focal antipedal area vanishes identically at (2, 1, 6), so
        # its ratio row degrades to a fully-skipped degenerate verdict
        plan = SweepPlan(configs=(BilliardConfig(2.0, 1.0, 6),), t_samples=16)
        reports = run_catalog(plan)
        k818 = [r for r in reports if r.sub_id == "k818"]
        assert k818 and all(r.verdict == "degenerate" for r in k818)
        assert all(r.n_skipped == 16 for r in k818)


# ---------------------------------------------------------------------------
# negative controls
# ---------------------------------------------------------------------------

class TestNegativeControl:
    def test_probes_vary_on_small_families(self):
        plan = SweepPlan(
            configs=(BilliardConfig(2.0, 1.0, 3), BilliardConfig(2.0, 1.0, 4)),
            t_samples=16)
        results = negative_control(plan)
        assert results
        assert all(v == "not_invariant" for v in results.values())

    def test_constant_probe_trips_integrity_error(self, monkeypatch):
        import billiardlab.sweep as sweep_mod
        monkeypatch.setitem(sweep_mod._PROBES, "orbit_area", lambda ctx: 1.0)
        plan = SweepPlan(configs=(BilliardConfig(2.0, 1.0, 3),), t_samples=16)
        with pytest.raises(HarnessIntegrityError):
            negative_control(plan)


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------

class TestPersistence:
    def test_report_document_shape(self, small_run):
        plan, reports = small_run
        doc = report_document(plan, reports)
        assert doc["schema_version"] == 1
        assert doc["run_id"] == plan_run_id(plan)
        assert len(doc["reports"]) == len(reports)
        row = doc["reports"][0]
        assert set(row) == {"id", "config", "anchor", "mean", "max_rel_dev",
                            "verdict", "closed_form_residual", "n_skipped",
                            "mode", "discrepancy"}

    def test_save_report_byte_identical(self, small_run, tmp_path):
        plan, reports = small_run
        p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
        save_report(p1, plan, reports)
        save_report(p2, plan, run_catalog(plan))
        assert p1.read_bytes() == p2.read_bytes()
        json.loads(p1.read_text())  # valid JSON

    def test_write_series_csv_scalar(self, tmp_path):
        path = tmp_path / "s.csv"
        write_series_csv(path, [(0.0, 1.5), (0.5, 2.5)])
        lines = path.read_text().splitlines()
        assert lines[0] == "t,value"
        assert lines[1] == "0,1.5"
        assert len(lines) == 3

    def test_write_series_csv_vector(self, tmp_path):
        path = tmp_path / "v.csv"
        write_series_csv(path, [(0.0, [1.0, 2.0])])
        lines = path.read_text().splitlines()
        assert lines[0] == "t,x,y"
        assert lines[1] == "0,1,2"

    def test_write_series_csv_wide_vector(self, tmp_path):
        path = tmp_path / "w.csv"
        write_series_csv(path, [(0.1, [1.0, 2.0, 3.0, 4.0])])
        lines = path.read_text().splitlines()
        assert lines[0] == "t,v1,v2,v3,v4"

    def test_write_series_csv_full_precision(self, tmp_path):
        path = tmp_path / "p.csv"
        value = 1.0 / 3.0
        write_series_csv(path, [(0.0, value)])
        recovered = float(path.read_text().splitlines()[1].split(",")[1])
        assert recovered == value

    def test_empty_series_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            write_series_csv(tmp_path / "e.csv", [])
