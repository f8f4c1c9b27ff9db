import csv
import math
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from pubtfp.cli import PLOT_COLUMNS, REPORT_COLUMNS, main

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"
PARADOX_FILE = SCENARIO_DIR / "paradoxes.yaml"
SIMULATION_FILE = SCENARIO_DIR / "simulate_tech_progress.yaml"

GOOD_P1 = """\
  - name: progress
    paradox: 1
    technology: {family: cobb-douglas, alpha_capital: 0.3, alpha_labor: 0.7}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1, wage: 1}
    shift_factor: 1.25
"""


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as handle:
        return list(csv.DictReader(handle))


class TestParadoxCommand:
    def test_shipped_scenarios_confirm_and_exit_zero(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        assert main(["paradox", "--input", str(PARADOX_FILE), "--output", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "5 scenario(s): 5 confirmed, 0 not confirmed, 0 failed" in stdout
        rows = read_rows(out)
        assert len(rows) == 5
        assert list(rows[0]) == list(REPORT_COLUMNS)
        assert all(row["confirmed"] == "true" and row["error"] == "" for row in rows)
        assert [row["scenario"] for row in rows] == [
            "technical-progress", "allocative-gain", "scale-to-best",
            "cheaper-inputs", "markup-cut",
        ]
        first = rows[0]
        assert float(first["measured_before"]) == 2.0
        assert float(first["measured_after"]) == pytest.approx(1.6, rel=1e-12)

    def test_precondition_failures_keep_their_row_and_exit_one(self, tmp_path, capsys):
        text = "scenarios:\n" + GOOD_P1 + """\
  - name: already-there
    paradox: 2
    technology: {family: cobb-douglas, alpha_capital: 0.5, alpha_labor: 0.5}
    bundle: {capital: 2, labor: 2}
    prices: {capital_price: 1, wage: 1}
"""
        scenario_file = tmp_path / "scenarios.yaml"
        scenario_file.write_text(text, encoding="utf-8")
        out = tmp_path / "report.csv"
        assert main(["paradox", "--input", str(scenario_file), "--output", str(out)]) == 1
        rows = read_rows(out)
        assert len(rows) == 2
        errors = {row["scenario"]: row["error"] for row in rows}
        assert errors["progress"] == ""
        assert "cost-minimizing" in errors["already-there"]
        assert "1 failed" in capsys.readouterr().out

    def test_solver_failures_exit_two(self, tmp_path, capsys):
        text = """\
scenarios:
  - name: unbracketable
    paradox: 2
    technology: {family: ces, capital_weight: 0.4, substitution: -1.0}
    bundle: {capital: 1, labor: 1}
    prices: {capital_price: 1.0e+40, wage: 1.0e-05}
"""
        scenario_file = tmp_path / "scenarios.yaml"
        scenario_file.write_text(text, encoding="utf-8")
        out = tmp_path / "report.csv"
        assert main(["paradox", "--input", str(scenario_file), "--output", str(out)]) == 2
        rows = read_rows(out)
        assert rows[0]["error"] != ""
        capsys.readouterr()

    def test_tolerance_override_changes_the_verdict(self, tmp_path, capsys):
        near_peak = math.e * 1.2
        text = f"""\
scenarios:
  - name: tiny-scale-move
    paradox: 3
    technology: {{family: homothetic-translog, inner_alpha_capital: 0.5, slope: 1.2, curvature: -0.1}}
    bundle: {{capital: {near_peak!r}, labor: {near_peak!r}}}
    prices: {{capital_price: 1, wage: 1}}
"""
        scenario_file = tmp_path / "scenarios.yaml"
        scenario_file.write_text(text, encoding="utf-8")
        out = tmp_path / "report.csv"

        assert main(["paradox", "--input", str(scenario_file), "--output", str(out)]) == 0
        assert read_rows(out)[0]["confirmed"] == "true"

        assert main([
            "paradox", "--input", str(scenario_file), "--output", str(out),
            "--tolerance", "mpss_log_scale=0.5",
        ]) == 0
        row = read_rows(out)[0]
        assert row["confirmed"] == "false"
        assert row["welfare_direction"] == "unchanged-productivity"
        capsys.readouterr()

    def test_unknown_tolerance_name_is_an_input_error(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        code = main([
            "paradox", "--input", str(PARADOX_FILE), "--output", str(out),
            "--tolerance", "spelling=0.5",
        ])
        assert code == 1
        assert "unknown tolerance" in capsys.readouterr().err

    def test_malformed_tolerance_flag_exits_one(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        with pytest.raises(SystemExit) as excinfo:
            main([
                "paradox", "--input", str(PARADOX_FILE), "--output", str(out),
                "--tolerance", "loose",
            ])
        assert excinfo.value.code == 1
        capsys.readouterr()

    def test_missing_input_file_exits_one(self, tmp_path, capsys):
        code = main([
            "paradox", "--input", str(tmp_path / "nope.yaml"),
            "--output", str(tmp_path / "report.csv"),
        ])
        assert code == 1
        capsys.readouterr()

    def test_runs_are_byte_identical(self, tmp_path, capsys):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        main(["paradox", "--input", str(PARADOX_FILE), "--output", str(first)])
        main(["paradox", "--input", str(PARADOX_FILE), "--output", str(second)])
        assert first.read_bytes() == second.read_bytes()
        capsys.readouterr()


class TestUsageErrors:
    def test_missing_required_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["paradox", "--input", "x.yaml"])
        assert excinfo.value.code == 1
        capsys.readouterr()

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 1
        capsys.readouterr()

    def test_no_subcommand(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main([])
        assert excinfo.value.code == 1
        capsys.readouterr()


class TestSimulateAndAccounting:
    def run_pipeline(self, tmp_path, extra=()):
        panel = tmp_path / "panel.csv"
        indices = tmp_path / "indices.csv"
        assert main(["simulate", "--input", str(SIMULATION_FILE), "--output", str(panel)]) == 0
        code = main(
            ["accounting", "--input", str(panel), "--output", str(indices), *extra]
        )
        assert code == 0
        return panel, indices

    def test_simulated_panel_feeds_the_accounting_pipeline(self, tmp_path, capsys):
        panel, indices = self.run_pipeline(tmp_path)
        panel_rows = read_rows(panel)
        assert len(panel_rows) == 26
        assert panel_rows[0]["va_nominal"] == "2.0"
        rows = read_rows(indices)
        assert len(rows) == 26
        by_year = {int(r["year"]): float(r["tfp_index"]) for r in rows}
        assert by_year[1995] == 100.0
        assert by_year[2020] == pytest.approx(100.0 * 1.01**-25, abs=1e-6)
        assert all(r["country"] == "SIM" and r["industry"] == "education" for r in rows)
        capsys.readouterr()

    def test_plot_file_lands_next_to_the_output(self, tmp_path, capsys):
        _, indices = self.run_pipeline(tmp_path)
        plot = tmp_path / "indices_plot.csv"
        assert plot.exists()
        rows = read_rows(plot)
        assert list(rows[0]) == list(PLOT_COLUMNS)
        assert rows[0]["series"] == "SIM:education"
        assert len(rows) == 26
        capsys.readouterr()

    def test_explicit_plot_output_is_honored(self, tmp_path, capsys):
        custom = tmp_path / "chart_data.csv"
        self.run_pipeline(tmp_path, extra=["--plot-output", str(custom)])
        assert custom.exists()
        assert not (tmp_path / "indices_plot.csv").exists()
        capsys.readouterr()

    def test_base_year_flag(self, tmp_path, capsys):
        panel = tmp_path / "panel.csv"
        indices = tmp_path / "indices.csv"
        main(["simulate", "--input", str(SIMULATION_FILE), "--output", str(panel)])
        assert main([
            "accounting", "--input", str(panel), "--output", str(indices),
            "--base-year", "2000",
        ]) == 0
        by_year = {int(r["year"]): float(r["tfp_index"]) for r in read_rows(indices)}
        assert by_year[2000] == 100.0
        assert by_year[1995] == pytest.approx(100.0 * 1.01**5, rel=1e-9)
        capsys.readouterr()

    def test_base_year_outside_the_panel_is_an_input_error(self, tmp_path, capsys):
        panel = tmp_path / "panel.csv"
        indices = tmp_path / "indices.csv"
        main(["simulate", "--input", str(SIMULATION_FILE), "--output", str(panel)])
        code = main([
            "accounting", "--input", str(panel), "--output", str(indices),
            "--base-year", "1888",
        ])
        assert code == 1
        assert "1888" in capsys.readouterr().err

    def test_malformed_panel_is_an_input_error(self, tmp_path, capsys):
        bad = tmp_path / "panel.csv"
        bad.write_text("year,country\n1995,AA\n", encoding="utf-8")
        code = main(["accounting", "--input", str(bad), "--output", str(tmp_path / "i.csv")])
        assert code == 1
        capsys.readouterr()

    def test_outputs_are_byte_identical_across_runs(self, tmp_path, capsys):
        a_panel, a_idx = self.run_pipeline(tmp_path / "a")
        b_panel, b_idx = self.run_pipeline(tmp_path / "b")
        assert a_panel.read_bytes() == b_panel.read_bytes()
        assert a_idx.read_bytes() == b_idx.read_bytes()
        capsys.readouterr()

    @pytest.fixture(autouse=True)
    def _mkdirs(self, tmp_path):
        (tmp_path / "a").mkdir(exist_ok=True)
        (tmp_path / "b").mkdir(exist_ok=True)


class TestReportCommand:
    def test_summarizes_a_report_file(self, tmp_path, capsys):
        out = tmp_path / "report.csv"
        main(["paradox", "--input", str(PARADOX_FILE), "--output", str(out)])
        capsys.readouterr()
        assert main(["report", "--input", str(out)]) == 0
        stdout = capsys.readouterr().out
        assert "5 scenario(s): 5 confirmed, 0 not confirmed, 0 failed" in stdout
        assert "paradox 1 technical-progress: confirmed" in stdout

    def test_rejects_files_with_the_wrong_columns(self, tmp_path, capsys):
        panel = tmp_path / "panel.csv"
        main(["simulate", "--input", str(SIMULATION_FILE), "--output", str(panel)])
        capsys.readouterr()
        assert main(["report", "--input", str(panel)]) == 1
        assert "not a paradox report" in capsys.readouterr().err


class TestEntryPoints:
    def test_module_execution(self, tmp_path):
        out = tmp_path / "report.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "pubtfp.cli", "paradox",
             "--input", str(PARADOX_FILE), "--output", str(out)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert "5 confirmed" in proc.stdout
        assert out.exists()

    @pytest.mark.skipif(shutil.which("pubtfp") is None, reason="console script not on PATH")
    def test_console_script(self, tmp_path):
        out = tmp_path / "report.csv"
        proc = subprocess.run(
            ["pubtfp", "paradox", "--input", str(PARADOX_FILE), "--output", str(out)],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        assert out.exists()
