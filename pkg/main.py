"""
Waveform Coexistence Simulator - Main Application Entry Point

Command-line entry point of the CP-OFDM / OFDM-OQAM coexistence simulator.
Each sub-command runs one experiment and writes CSV tables plus a JSON run
report into the output directory.

Author: Adryan R A
"""

import argparse
import os
import sys
from pathlib import Path

# Add src to Python path
sys.path.insert(0, str(Path(__file__).parent / "src"))

from src.core.exceptions import ArgumentError, ConfigurationError, NumericalError  # noqa: E402
from src.utils.logging_config import get_logger, setup_logging  # noqa: E402

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-command per experiment."""
    parser = argparse.ArgumentParser(
        description="Waveform Coexistence Simulator - CP-OFDM incumbent vs asynchronous secondary user",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py selftest
  python main.py interftable --config configs/lte.conf --out results/
  python main.py evm-sweep --seed 7 --threads 4
  python main.py ber-vs-tau --paper-scale --log-file logs/run.log
        """
    )
    parser.add_argument("--debug", action="store_true", help="Enable debug logging")
    parser.add_argument("--log-file", type=str, help="Path to log file (default: logs to console only)")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=str, help="Scenario config file (key = value)")
    common.add_argument("--out", type=str, help="Output directory (default: settings.OUTPUT_DIR)")
    common.add_argument("--seed", type=int, help="Master seed (unsigned 64-bit)")
    common.add_argument("--symbols", type=int, help="Symbols per estimate")
    common.add_argument("--paper-scale", "--full-scale", dest="full_scale", action="store_true",
                        help="Use the large symbol count (FULL_SYMBOLS)")
    common.add_argument("--threads", type=int, help="Worker threads (results do not depend on it)")

    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("interftable", "Interference tables: PSD model vs Monte-Carlo Het and Hom"),
        ("evm-sweep", "EVM of both users versus the secondary's power"),
        ("ber-sweep", "BER of both users versus the secondary's power"),
        ("ber-vs-tau", "Incumbent BER versus a fixed timing offset"),
        ("stats", "Distribution and covariance of interference on one subcarrier"),
    ):
        commands.add_parser(name, parents=[common], help=help_text)
    commands.add_parser("selftest", help="Run the fast oracle checks")
    return parser


def run_command(args: argparse.Namespace) -> int:
    """Dispatch a parsed command line and return the exit code."""
    from src.cli import commands

    if args.command == "selftest":
        return EXIT_OK if commands.cmd_selftest() == 0 else EXIT_FAILURE

    handlers = {
        "interftable": commands.cmd_interftable,
        "evm-sweep": commands.cmd_evm_sweep,
        "ber-sweep": commands.cmd_ber_sweep,
        "ber-vs-tau": commands.cmd_ber_vs_tau,
        "stats": commands.cmd_stats,
    }
    report = handlers[args.command](
        args.config,
        args.out,
        seed=args.seed,
        symbols=args.symbols,
        full_scale=args.full_scale,
        threads=args.threads,
    )
    logger.info(f"{report.experiment} finished in {report.duration_s:.1f}s: {', '.join(report.files)}")
    return EXIT_OK


def main(argv=None) -> int:
    """Main function with command line argument parsing."""
    args = build_parser().parse_args(argv)

    # Set debug mode if specified
    if args.debug:
        os.environ["DEBUG"] = "true"
        os.environ["LOG_LEVEL"] = "DEBUG"

    setup_logging(args.log_file, "DEBUG" if args.debug else None)

    try:
        return run_command(args)
    except (ConfigurationError, ArgumentError) as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except NumericalError as e:
        where = f" at {e.abscissa}" if e.abscissa is not None else ""
        logger.error(f"Numerical failure{where}: {e}")
        return EXIT_NUMERICAL
    except KeyboardInterrupt:
        logger.info("Stopped by user")
        return EXIT_FAILURE
    except Exception as e:
        logger.error(f"Run failed: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
