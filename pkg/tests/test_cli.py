import subprocess
import sys

import pytest

from adcgap.cli import main
from adcgap.samples import sample_converters_text, sample_transceivers_text


def run_cli(*argv):
    return main(list(argv))


@pytest.fixture()
def data_files(tmp_path):
    conv = tmp_path / "converters.csv"
    conv.write_text(sample_converters_text(), encoding="utf-8")
    tx = tmp_path / "transceivers.csv"
    tx.write_text(sample_transceivers_text(), encoding="utf-8")
    return conv, tx


def test_gap_happy_path(tmp_path, data_files, capsys):
    conv, _ = data_files
    out = tmp_path / "report"
    code = run_cli("gap", "--data", str(conv), "--spec", "table2-adc",
                   "--osr", "1", "--out", str(out))
    assert code == 0
    captured = capsys.readouterr()
    assert "0/38 records pass overall" in captured.out
    assert "xu17" in captured.out
    assert (out / "gap.txt").exists()
    assert (out / "verdicts.csv").exists()


def test_missing_data_flag_is_usage_error(capsys):
    assert run_cli("gap") == 1
    assert "required" in capsys.readouterr().err


def test_unknown_subcommand_is_usage_error(capsys):
    assert run_cli("explode") == 1
    assert "invalid choice" in capsys.readouterr().err


def test_unknown_flag_is_usage_error(capsys):
    assert run_cli("gap", "--data", "x.csv", "--frobnicate") == 1


def test_nonexistent_data_file_is_data_error(tmp_path, capsys):
    code = run_cli("gap", "--data", str(tmp_path / "ghost.csv"),
                   "--out", str(tmp_path / "o"))
    assert code == 2
    assert "ghost.csv" in capsys.readouterr().err


def test_bad_csv_is_data_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("id,year\nr,2000\n", encoding="utf-8")
    code = run_cli("gap", "--data", str(bad), "--out", str(tmp_path / "o"))
    assert code == 2
    assert "missing required columns" in capsys.readouterr().err


def test_trend_prints_halving_time_and_projection(tmp_path, data_files, capsys):
    conv, _ = data_files
    code = run_cli("trend", "--data", str(conv), "--metric", "ebit",
                   "--selector", "yearly_best", "--threshold", "1e-13",
                   "--out", str(tmp_path / "o"))
    assert code == 0
    captured = capsys.readouterr().out
    assert "halving time: 1.902 years" in captured
    assert "projected around 2026.1" in captured


def test_budget_with_config(tmp_path, capsys):
    config = tmp_path / "platform.cfg"
    config.write_text(
        "platform.chip_area_mm2 = 450\n"
        "platform.tdp_w = 210\n"
        "platform.core_count = 100\n",
        encoding="utf-8")
    code = run_cli("budget", "--config", str(config), "--out", str(tmp_path / "o"))
    assert code == 0
    assert "0.075 mm2" in capsys.readouterr().out
    assert (tmp_path / "o" / "budget.txt").exists()


def test_gap_with_custom_requirement_config(tmp_path, data_files, capsys):
    conv, _ = data_files
    config = tmp_path / "req.cfg"
    config.write_text(
        "requirement.name = loose\n"
        "requirement.min_bandwidth_hz = 1e6\n"
        "requirement.min_nyquist_hz = 2e6\n"
        "requirement.max_osr = 16\n"
        "requirement.min_enob_bits = 1\n"
        "requirement.max_area_mm2 = 100\n"
        "requirement.max_energy_per_bit_j = 1\n",
        encoding="utf-8")
    code = run_cli("gap", "--data", str(conv), "--config", str(config),
                   "--out", str(tmp_path / "o"))
    assert code == 0
    assert "gap vs 'loose'" in capsys.readouterr().out


def test_ingest_bundled_sample_shortcut(tmp_path, capsys):
    code = run_cli("ingest", "--data", "@converters",
                   "--transceivers", "@transceivers", "--out", str(tmp_path / "o"))
    assert code == 0
    assert "converters: 38" in capsys.readouterr().out
    assert (tmp_path / "o" / "converters.csv").exists()
    assert (tmp_path / "o" / "transceivers.csv").exists()


def test_format_filter_limits_artifacts(tmp_path, data_files):
    conv, _ = data_files
    out = tmp_path / "csv_only"
    code = run_cli("plot", "--data", str(conv), "--x", "bandwidth", "--y", "ebit",
                   "--x-scale", "log10", "--y-scale", "log10",
                   "--format", "csv", "--out", str(out))
    assert code == 0
    assert (out / "series.csv").exists()
    assert not (out / "plot.svg").exists()


def test_plot_yearly_best_selector(tmp_path, data_files, capsys):
    conv, _ = data_files
    out = tmp_path / "env"
    code = run_cli("plot", "--data", str(conv), "--x", "year", "--y", "density",
                   "--y-scale", "log10", "--selector", "yearly_best",
                   "--ref-trend", "density-doubling", "--out", str(out))
    assert code == 0
    assert "plotted" in capsys.readouterr().out
    header = (out / "series.csv").read_text(encoding="utf-8").splitlines()[0]
    assert header == "year,sampling_density,id"


def test_frontier_objectives(tmp_path, data_files, capsys):
    conv, _ = data_files
    code = run_cli("frontier", "--data", str(conv),
                   "--objective", "density:maximize",
                   "--objective", "year:minimize",
                   "--out", str(tmp_path / "o"))
    assert code == 0
    assert "frontier:" in capsys.readouterr().out


def test_cli_entrypoint_via_subprocess(tmp_path):
    result = subprocess.run(
        [sys.executable, "-m", "adcgap", "metrics", "--data", "@converters",
         "--out", str(tmp_path / "o")],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert "38 records" in result.stdout
    assert (tmp_path / "o" / "metrics.csv").exists()
