"""
Experiment Commands

One function per sub-command. Each resolves the configuration, runs its
recipe, writes CSV tables plus a JSON run report into the output directory
and returns the report.

Author: Adryan R A
"""

import logging
import time
from pathlib import Path
from typing import Callable, Optional, Sequence

from ..core.config import settings
from ..core.dsp import RngStream
from ..models.schemas import ExperimentConfig, RunReport, ScenarioConfig
from ..services.experiments import (
    ExperimentOutput,
    interference_table_experiment,
    power_sweep_experiment,
    statistics_experiment,
    symbol_count,
    tau_sweep_experiment,
)
from ..utils.reporting import config_hash, load_config_file, resolved_config, write_csv, write_report
from .selftest import format_results, run_selftest

logger = logging.getLogger(__name__)

Recipe = Callable[[ScenarioConfig, ExperimentConfig, RngStream, int], ExperimentOutput]


def _run(
    experiment_id: str,
    recipe: Recipe,
    config_path: Optional[str],
    out_dir: Optional[str],
    seed: Optional[int] = None,
    symbols: Optional[int] = None,
    full_scale: bool = False,
    threads: Optional[int] = None,
    frames: Optional[tuple] = None,
) -> RunReport:
    started = time.perf_counter()
    overrides = {"seed": seed}
    if symbols is not None or full_scale:
        overrides["n_symbols"] = symbol_count(full_scale, symbols)
    scenario, experiment = load_config_file(config_path, overrides)
    workers = threads or settings.MAX_THREADS
    config = resolved_config(scenario, experiment)
    digest = config_hash(config)

    logger.info(f"{experiment_id}: {scenario.n_symbols} symbols per estimate, seed={scenario.seed}, "
                f"{workers} thread(s)")
    output = recipe(scenario, experiment, RngStream(scenario.seed), workers)

    target = Path(out_dir or settings.OUTPUT_DIR)
    written = []
    for name, frame in output.frames.items():
        if frames is not None and name not in frames:
            continue
        path = write_csv(frame, target / f"{name}.csv", digest, scenario.seed)
        written.append(path.name)

    report = RunReport(
        experiment=experiment_id,
        config=config,
        seed=scenario.seed,
        payload=output.summary,
        tool_version=settings.TOOL_VERSION,
        config_hash=digest,
        duration_s=round(time.perf_counter() - started, 3),
        files=written,
    )
    write_report(report, target / f"{experiment_id}.json")
    return report


def cmd_interftable(config_path: Optional[str], out_dir: Optional[str], **flags) -> RunReport:
    """Interference tables onto the incumbent: PSD model, Monte-Carlo Het and Hom."""
    return _run("interftable", interference_table_experiment, config_path, out_dir, **flags)


def cmd_evm_sweep(config_path: Optional[str], out_dir: Optional[str], **flags) -> RunReport:
    """Normalised EVM of both users versus the secondary's power."""
    return _run("evm-sweep", power_sweep_experiment, config_path, out_dir, frames=("evm",), **flags)


def cmd_ber_sweep(config_path: Optional[str], out_dir: Optional[str], **flags) -> RunReport:
    """BER of both users versus the secondary's power."""
    return _run("ber-sweep", power_sweep_experiment, config_path, out_dir, frames=("ber",), **flags)


def cmd_ber_vs_tau(config_path: Optional[str], out_dir: Optional[str], **flags) -> RunReport:
    """Incumbent BER versus a fixed timing offset."""
    return _run("ber-vs-tau", tau_sweep_experiment, config_path, out_dir, **flags)


def cmd_stats(config_path: Optional[str], out_dir: Optional[str], **flags) -> RunReport:
    """Distribution and lag covariance of the interference on one incumbent subcarrier."""
    return _run("stats", statistics_experiment, config_path, out_dir, **flags)


def cmd_selftest(coefficients: Optional[Sequence[float]] = None) -> int:
    """
    Run the oracle checks and print their table.

    Args:
        coefficients (Optional[Sequence[float]]): Prototype frequency samples to check;
            defaults to the PHYDYAS set

    Returns:
        int: 0 if every check passed, 1 otherwise
    """
    results = run_selftest(coefficients=coefficients)
    print(format_results(results))
    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.error(f"Self-test failed: {', '.join(failed)}")
        return 1
    logger.info(f"Self-test passed: {len(results)} checks")
    return 0
