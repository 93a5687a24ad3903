"""Command-line interface: output formats, exit codes, and the
verify/report round trip."""

import json

import numpy as np
import pytest

from billiardlab.cli import main

SQ5 = np.sqrt(5.0)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestFamily:
    def test_rhombus_values(self, capsys):
        code, out, _ = run(capsys, "family", "--a", "2", "--b", "1", "--n", "4")
        assert code == 0
        values = {}
        for line in out.splitlines():
            key, _, val = line.partition("=")
            values[key.strip()] = float(val)
        assert values["a_c"] == pytest.approx(4.0 / SQ5, rel=1e-12)
        assert values["b_c"] == pytest.approx(1.0 / SQ5, rel=1e-12)
        assert values["J"] == pytest.approx(1.0 / SQ5, rel=1e-12)
        assert values["L"] == pytest.approx(4.0 * SQ5, rel=1e-12)

    def test_invalid_axes_usage_error(self, capsys):
        code, _, err = run(capsys, "family", "--a", "1", "--b", "2", "--n", "4")
        assert code == 2
        assert "a > b" in err


class TestOrbit:
    def test_json_payload(self, capsys):
        code, out, _ = run(capsys, "orbit", "--a", "2", "--b", "1", "--n", "4",
                           "--t", "0", "--layers", "outer,pedal:O")
        assert code == 0
        body = json.loads(out)
        assert np.array(body["vertices"]) == pytest.approx(
            np.array([[2.0, 0.0], [0.0, 1.0], [-2.0, 0.0], [0.0, -1.0]]),
            abs=1e-10)
        assert set(body["layers"]) == {"outer", "pedal:O"}
        assert np.array(body["layers"]["outer"]) == pytest.approx(
            np.array([[2.0, 1.0], [-2.0, 1.0], [-2.0, -1.0], [2.0, -1.0]]),
            abs=1e-10)

    def test_unknown_layer_usage_error(self, capsys):
        code, _, err = run(capsys, "orbit", "--a", "2", "--b", "1", "--n", "4",
                           "--layers", "bogus")
        assert code == 2
        assert "unknown layer" in err


class TestSweep:
    def test_scalar_csv(self, capsys, tmp_path):
        out_path = tmp_path / "series.csv"
        code, out, _ = run(capsys, "sweep", "--a", "2", "--b", "1", "--n", "4",
                           "--quantity", "k102", "--samples", "16",
                           "--out", str(out_path))
        assert code == 0
        lines = out_path.read_text().splitlines()
        assert lines[0] == "t,value"
        assert len(lines) == 17
        vals = np.array([float(l.split(",")[1]) for l in lines[1:]])
        assert np.max(np.abs(vals - vals.mean())) < 1e-9

    def test_anchored_quantity(self, capsys, tmp_path):
        out_path = tmp_path / "anch.csv"
        code, *_ = run(capsys, "sweep", "--a", "2", "--b", "1", "--n", "4",
                       "--quantity", "k804b", "--anchor", "f1",
                       "--samples", "12", "--out", str(out_path))
        assert code == 0
        vals = [float(l.split(",")[1])
                for l in out_path.read_text().splitlines()[1:]]
        assert vals == pytest.approx([4.0] * 12, rel=1e-9)

    def test_unknown_quantity_usage_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "--a", "2", "--b", "1", "--n", "4",
                           "--quantity", "k999",
                           "--out", str(tmp_path / "x.csv"))
        assert code == 2


class TestVerifyReport:
    def test_round_trip(self, capsys, tmp_path):
        report_path = tmp_path / "report.json"
        code, out, _ = run(capsys, "verify", "--a", "2", "--b", "1", "--n", "4",
                           "--samples", "16", "--out", str(report_path))
        assert code == 0
        assert "0 failed" in out
        doc = json.loads(report_path.read_text())
        assert doc["schema_version"] == 1
        assert doc["reports"]

        code, out, _ = run(capsys, "report", str(report_path))
        assert code == 0
        assert "k101" in out
        assert doc["run_id"][:12] in out

    def test_verify_deterministic(self, capsys, tmp_path):
        p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
        for p in (p1, p2):
            code, *_ = run(capsys, "verify", "--a", "2", "--b", "1", "--n", "5",
                           "--samples", "16", "--out", str(p))
            assert code == 0
        assert p1.read_bytes() == p2.read_bytes()

    def test_degenerate_rows_do_not_fail_verify(self, capsys, tmp_path):
        # (2, 1, 6) contains the identically-zero antipedal area family
        report_path = tmp_path / "r6.json"
        code, out, _ = run(capsys, "verify", "--a", "2", "--b", "1", "--n", "6",
                           "--samples", "16", "--out", str(report_path))
        assert code == 0
        doc = json.loads(report_path.read_text())
        k818 = [r for r in doc["reports"] if r["id"] == "k818"]
        assert k818 and all(r["verdict"] == "degenerate" for r in k818)

    def test_report_flags_discrepancies(self, capsys, tmp_path):
        report_path = tmp_path / "r4.json"
        run(capsys, "verify", "--a", "2", "--b", "1", "--n", "4",
            "--samples", "16", "--out", str(report_path))
        code, out, _ = run(capsys, "report", str(report_path))
        assert code == 0
        assert "*" in out  # k806b row carries the discrepancy marker

    def test_missing_report_usage_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "report", str(tmp_path / "nope.json"))
        assert code == 2


class TestUsage:
    def test_no_command(self, capsys):
        assert run(capsys, )[0] == 2

    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0
