"""
Tests for the Command-Line Surface

Sub-commands, exit codes and the self-test.

Author: Adryan R A
"""

import json
import logging
from types import SimpleNamespace

import pytest

import main as cli_main
from src.cli import commands
from src.cli.selftest import format_results, run_selftest
from src.core.exceptions import NumericalError
from src.utils.reporting import read_csv, read_report


class TestSelftest:
    """Test cases for the oracle self-test."""

    def test_all_checks_pass(self):
        """Test every check passes with the reference coefficients."""
        results = run_selftest()
        assert [r.name for r in results] == ["dft-oracle", "parseval", "cpofdm-loopback", "oqam-loopback",
                                             "prototype-spectrum", "psd-normalization"]
        failed = [f"{r.name}: {r.detail}" for r in results if not r.passed]
        assert failed == []

    def test_corrupted_coefficients_fail(self):
        """Test a wrong prototype design is caught."""
        results = {r.name: r for r in run_selftest(coefficients=(1.0, 0.9, 0.7071, 0.235147))}
        assert not results["prototype-spectrum"].passed
        assert "FAIL" in format_results(list(results.values()))

    def test_command_exit_status(self, capsys):
        """Test cmd_selftest returns 1 and names the failing check."""
        assert commands.cmd_selftest(coefficients=(1.0, 0.9, 0.7071, 0.235147)) == 1
        assert "prototype-spectrum" in capsys.readouterr().out
        assert commands.cmd_selftest() == 0


class TestCommands:
    """Test cases for the experiment commands on the small layout."""

    def test_interftable_outputs(self, small_conf_file, tmp_path):
        """Test tables and report are written with a provenance header."""
        out = tmp_path / "run"
        report = commands.cmd_interftable(str(small_conf_file), str(out))
        assert report.experiment == "interftable"
        assert sorted(report.files) == ["interftable.csv", "tables.csv"]
        header = (out / "interftable.csv").read_text(encoding="utf-8").splitlines()[0]
        assert header.startswith("# tool_version=") and f"seed={report.seed}" in header
        assert read_report(out / "interftable.json").config_hash == report.config_hash
        assert len(read_csv(out / "interftable.csv")) == 21

    def test_rerun_is_byte_identical(self, small_conf_file, tmp_path):
        """Test a fixed seed reproduces CSV files and the report payload."""
        first = commands.cmd_interftable(str(small_conf_file), str(tmp_path / "a"))
        second = commands.cmd_interftable(str(small_conf_file), str(tmp_path / "b"))
        for name in first.files:
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        assert first.payload == second.payload

    def test_seed_override(self, small_conf_file, tmp_path):
        """Test --seed replaces the file's seed and changes the hash."""
        default = commands.cmd_interftable(str(small_conf_file), str(tmp_path / "a"))
        other = commands.cmd_interftable(str(small_conf_file), str(tmp_path / "b"), seed=8)
        assert other.seed == 8
        assert other.config_hash != default.config_hash

    def test_sweeps_write_their_own_frame(self, small_conf_file, tmp_path):
        """Test the EVM and BER sweeps each write one table."""
        assert commands.cmd_evm_sweep(str(small_conf_file), str(tmp_path)).files == ["evm.csv"]
        assert commands.cmd_ber_sweep(str(small_conf_file), str(tmp_path)).files == ["ber.csv"]
        payload = json.loads((tmp_path / "ber-sweep.json").read_text(encoding="utf-8"))["payload"]
        assert "psd_crossing_dB" in payload

    def test_symbol_override(self, small_conf_file, tmp_path):
        """Test --symbols sets the symbols per estimate."""
        report = commands.cmd_ber_vs_tau(str(small_conf_file), str(tmp_path), symbols=100)
        assert report.config["n_symbols"] == 100
        assert report.files == ["ber_vs_tau.csv"]


class TestMain:
    """Test cases for main() exit codes."""

    def test_selftest_exit_code(self, capsys):
        """Test a passing self-test exits with 0 and prints the table."""
        assert cli_main.main(["selftest"]) == 0
        assert "oqam-loopback" in capsys.readouterr().out

    def test_missing_config(self, tmp_path):
        """Test a bad config path exits with 2."""
        assert cli_main.main(["interftable", "--config", str(tmp_path / "missing.conf")]) == 2

    def test_invalid_config(self, tmp_path):
        """Test an unknown key exits with 2."""
        path = tmp_path / "bad.conf"
        path.write_text("colour = blue\n", encoding="utf-8")
        assert cli_main.main(["stats", "--config", str(path), "--out", str(tmp_path)]) == 2

    def test_numerical_failure(self, monkeypatch, tmp_path):
        """Test a numerical failure exits with 3."""
        def broken(*args, **kwargs):
            raise NumericalError("non-finite integrand", abscissa=0.5)

        monkeypatch.setattr(commands, "cmd_stats", broken)
        assert cli_main.main(["stats", "--out", str(tmp_path)]) == 3

    def test_unexpected_failure(self, monkeypatch, tmp_path):
        """Test other errors exit with 1."""
        def broken(*args, **kwargs):
            raise RuntimeError("boom")

        monkeypatch.setattr(commands, "cmd_stats", broken)
        assert cli_main.main(["stats", "--out", str(tmp_path)]) == 1

    def test_run_writes_files(self, small_conf_file, tmp_path):
        """Test a full command run through main()."""
        out = tmp_path / "results"
        assert cli_main.main(["ber-vs-tau", "--config", str(small_conf_file), "--out", str(out),
                              "--threads", "2"]) == 0
        assert (out / "ber_vs_tau.csv").is_file()
        assert (out / "ber-vs-tau.json").is_file()

    def test_log_file(self, tmp_path):
        """Test --log-file writes simulator records with line numbers."""
        log_file = tmp_path / "logs" / "run.log"
        assert cli_main.main(["--log-file", str(log_file), "selftest"]) == 0
        logging.shutdown()
        text = log_file.read_text(encoding="utf-8")
        assert "src.cli.commands:" in text and "Self-test passed" in text

    def test_unknown_command(self):
        """Test argparse rejects unknown sub-commands."""
        with pytest.raises(SystemExit):
            cli_main.main(["plot"])

    def test_paper_scale_flag(self, monkeypatch, tmp_path):
        """Test --paper-scale (and its --full-scale alias) reaches the command as full_scale."""
        parser = cli_main.build_parser()
        assert parser.parse_args(["interftable", "--paper-scale"]).full_scale is True
        assert parser.parse_args(["interftable", "--full-scale"]).full_scale is True
        assert parser.parse_args(["interftable"]).full_scale is False

        seen = {}

        def capture(config, out, **kwargs):
            seen.update(kwargs)
            return SimpleNamespace(experiment="interftable", duration_s=0.0, files=[])

        monkeypatch.setattr(commands, "cmd_interftable", capture)
        assert cli_main.main(["interftable", "--paper-scale", "--out", str(tmp_path)]) == 0
        assert seen["full_scale"] is True
