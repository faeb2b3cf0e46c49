import json
import math

import pytest

from diskevac import bounds
from diskevac.cli import (EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, SWEEP_COLUMNS,
                          compute_sweep_row, main, parse_rows_csv)
from diskevac.geometry import TWO_PI

# cheap flags reused across tests: tiny range, coarse fast-chord settings
SWEEP_ARGS = ["sweep", "--s-min", "3.0", "--s-max", "3.1", "--s-step", "0.05",
              "--fc-s-step", "0.05", "--x3-step", "0.05", "--time-step", "0.05"]


class TestSweep:
    def test_csv_shape_and_formatting(self, capsys):
        assert main(SWEEP_ARGS) == EXIT_OK
        out = capsys.readouterr().out
        rows = parse_rows_csv(out)
        assert list(rows[0].keys()) == SWEEP_COLUMNS
        assert [r["s"] for r in rows] == ["3.000000", "3.050000", "3.100000"]
        for r in rows:
            assert r["ub_bsp"] == ""        # out of the BSP domain above 2
            assert r["lb_bes_antipodal"] == ""
            assert "." in r["ratio"] and len(r["ratio"].split(".")[1]) == 6

    def test_csv_values_match_library(self, capsys):
        assert main(SWEEP_ARGS) == EXIT_OK
        rows = parse_rows_csv(capsys.readouterr().out)
        assert float(rows[0]["ub_half_chord"]) == pytest.approx(
            bounds.ub_half_chord(3.0), abs=1e-6)
        assert float(rows[0]["lb_fes"]) == pytest.approx(
            bounds.lb_fes(3.0), abs=1e-6)
        assert rows[0]["best_strategy"] == "half-chord"

    def test_json_round_trip(self, capsys):
        assert main(SWEEP_ARGS + ["--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert len(payload["rows"]) == 3
        assert payload["rows"][0]["s"] == "3.000000"

    def test_deterministic_across_thread_counts(self, capsys, monkeypatch):
        outputs = []
        for threads in ("1", "3"):
            monkeypatch.setenv("EVAC_THREADS", threads)
            assert main(SWEEP_ARGS) == EXIT_OK
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "rows.csv"
        assert main(SWEEP_ARGS + ["--output", str(target)]) == EXIT_OK
        assert capsys.readouterr().out == ""
        assert parse_rows_csv(target.read_text())[0]["s"] == "3.000000"

    def test_ratio_is_one_at_s_equals_one(self, capsys):
        args = ["sweep", "--s-min", "1.0", "--s-max", "1.05", "--s-step",
                "0.05", "--fc-s-step", "0.05", "--x3-step", "0.05",
                "--time-step", "0.05"]
        assert main(args) == EXIT_OK
        rows = parse_rows_csv(capsys.readouterr().out)
        assert float(rows[0]["ratio"]) == pytest.approx(1.0, abs=1e-4)

    def test_bad_range_is_usage_error(self, capsys):
        assert main(["sweep", "--s-min", "2.0", "--s-max", "1.0"]) == EXIT_USAGE
        assert main(["sweep", "--s-min", "1.0", "--s-max", "2.0",
                     "--s-step", "-1"]) == EXIT_USAGE

    def test_bsp_column_present_in_domain(self, capsys):
        args = ["sweep", "--s-min", "1.8", "--s-max", "1.9", "--s-step", "0.1",
                "--fc-s-step", "0.1", "--x3-step", "0.1", "--time-step", "0.1"]
        assert main(args) == EXIT_OK
        rows = parse_rows_csv(capsys.readouterr().out)
        assert float(rows[0]["ub_bsp"]) == pytest.approx(
            bounds.ub_bsp(1.8), abs=1e-6)


class TestSimulate:
    def _parse(self, text):
        return dict(line.split(": ", 1) for line in text.strip().splitlines())

    def test_half_chord_output(self, capsys):
        assert main(["simulate", "half-chord", "--s", "4"]) == EXIT_OK
        rec = self._parse(capsys.readouterr().out)
        assert rec["strategy"] == "half-chord"
        assert rec["finder"] == "fast"
        assert float(rec["evac_time"]) == pytest.approx(
            bounds.ub_half_chord(4.0), abs=1e-4)

    def test_fixed_x3_fast_chord(self, capsys):
        assert main(["simulate", "fast-chord", "--s", "2",
                     "--x3", "0.5"]) == EXIT_OK
        rec = self._parse(capsys.readouterr().out)
        assert float(rec["evac_time"]) > 1.0

    def test_full_residual_arc_reduces_to_bsp(self, capsys):
        """With the whole boundary left as the joint arc, fast-chord at s = 1
        degenerates to the two-sided split from a single landing point."""
        assert main(["simulate", "fast-chord", "--s", "1",
                     "--x3", "6.28318"]) == EXIT_OK
        fc = float(self._parse(capsys.readouterr().out)["evac_time"])
        assert main(["simulate", "bsp", "--s", "1"]) == EXIT_OK
        bsp = float(self._parse(capsys.readouterr().out)["evac_time"])
        assert fc == pytest.approx(bsp, abs=2e-2)

    def test_trace_file(self, capsys, tmp_path):
        trace = tmp_path / "trace.csv"
        assert main(["simulate", "bsp", "--s", "1.5", "--trace", str(trace),
                     "--trace-step", "0.25"]) == EXIT_OK
        lines = trace.read_text().strip().splitlines()
        assert lines[0] == "t,fast_x,fast_y,slow_x,slow_y,explored_fraction"
        fracs = [float(line.split(",")[-1]) for line in lines[1:]]
        assert fracs == sorted(fracs)           # exploration only grows
        assert fracs[-1] == pytest.approx(1.0, abs=1e-6)
        t_final = float(lines[-1].split(",")[0])
        # final row lands on the meeting time (printed at 6 decimals)
        assert t_final == pytest.approx(1.0 + (TWO_PI - 0.5) / 2.5, abs=1e-6)

    def test_usage_error_for_bad_speed(self, capsys):
        assert main(["simulate", "bsp", "--s", "0.5"]) == EXIT_USAGE

    def test_numeric_failure_exit_code(self, capsys):
        # x3 equal to the full remaining span leaves no feasible solution
        span = TWO_PI - 1.5 + 1.0
        assert main(["simulate", "fast-chord", "--s", "1.5",
                     "--x3", str(span)]) == EXIT_NUMERIC
        assert "numerical failure" in capsys.readouterr().err

    def test_unknown_strategy_rejected_by_parser(self):
        with pytest.raises(SystemExit) as exc:
            main(["simulate", "zigzag", "--s", "2"])
        assert exc.value.code == 2


class TestConstantsCommand:
    COARSE = ["--fc-s-step", "0.05", "--x3-step", "0.05",
              "--time-step", "0.05"]

    def test_json_payload(self, capsys):
        assert main(["constants"] + self.COARSE) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert set(payload) == {"c_1.86", "c_4.84", "c_4.97", "c_2.75",
                                "c_1.71", "c_2.07"}
        assert float(payload["c_1.86"]["value"]) == pytest.approx(1.856,
                                                                  abs=1e-3)

    def test_csv_format(self, capsys):
        assert main(["constants", "--format", "csv"] + self.COARSE) == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "name,value,residual,bracket_lo,bracket_hi"
        assert len(lines) == 7


class TestParser:
    def test_missing_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_row_computation_matches_direct_call(self, fc_cache):
        row = compute_sweep_row(4.0, fc_cache)
        assert row.ub_overall == pytest.approx(bounds.ub_half_chord(4.0))
        assert row.ratio == pytest.approx(1.0)
        assert row.best_strategy == "half-chord"
