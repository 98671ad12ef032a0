"""
Result Reporting

Scenario config file loading, CSV tables with a provenance header line, and
the JSON run report.

Author: Adryan R A
"""

import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import pandas as pd
from dotenv import dotenv_values
from pydantic import ValidationError

from ..core.config import settings
from ..core.exceptions import ConfigurationError
from ..models.schemas import ExperimentConfig, RunReport, ScenarioConfig

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.10e"
SCENARIO_KEYS = frozenset(ScenarioConfig.model_fields)
EXPERIMENT_KEYS = frozenset(ExperimentConfig.model_fields)


def load_config_file(path: Optional[str], overrides: Optional[Dict[str, Any]] = None) -> Tuple[ScenarioConfig, ExperimentConfig]:
    """
    Read a `key = value` scenario file.

    Keys are the fields of ScenarioConfig and ExperimentConfig; anything else
    is rejected. Without a path, defaults are used.

    Args:
        path (Optional[str]): Config file path
        overrides (Optional[Dict[str, Any]]): Values replacing file entries (CLI flags)

    Returns:
        Tuple[ScenarioConfig, ExperimentConfig]: Validated configuration

    Raises:
        ConfigurationError: Missing file, unknown key or invalid value
    """
    values: Dict[str, Any] = {}
    if path is not None:
        config_path = Path(path)
        if not config_path.is_file():
            raise ConfigurationError(f"config file not found: {path}")
        values = {k: v for k, v in dotenv_values(config_path).items() if v is not None}
        unknown = sorted(set(values) - SCENARIO_KEYS - EXPERIMENT_KEYS)
        if unknown:
            raise ConfigurationError(f"unknown config keys in {path}: {', '.join(unknown)}")
    values.update({k: v for k, v in (overrides or {}).items() if v is not None})
    if "seed" not in values:
        values["seed"] = settings.DEFAULT_SEED

    try:
        scenario = ScenarioConfig(**{k: v for k, v in values.items() if k in SCENARIO_KEYS})
        experiment = ExperimentConfig(**{k: v for k, v in values.items() if k in EXPERIMENT_KEYS})
    except ValidationError as e:
        raise ConfigurationError(f"invalid configuration: {e}") from e

    logger.info(f"Loaded configuration ({'defaults' if path is None else path}), seed={scenario.seed}")
    return scenario, experiment


def resolved_config(scenario: ScenarioConfig, experiment: ExperimentConfig) -> Dict[str, Any]:
    """JSON-ready union of both configs."""
    return {**scenario.model_dump(mode="json"), **experiment.model_dump(mode="json")}


def config_hash(config: Dict[str, Any]) -> str:
    """SHA-256 of the canonical JSON form."""
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_csv(frame: pd.DataFrame, path: Path, digest: str, seed: int) -> Path:
    """
    Write a table preceded by a `#` provenance line.

    Floats use a fixed significant-digit format: reruns produce identical
    bytes and values down to BER floors near 1e-12 survive.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# tool_version={settings.TOOL_VERSION} config_hash={digest} seed={seed}\n")
        frame.to_csv(f, index=False, float_format=CSV_FLOAT_FORMAT, na_rep="nan", lineterminator="\n")
    logger.info(f"Wrote {path}")
    return path


def read_csv(path: Path) -> pd.DataFrame:
    """Read a table written by write_csv."""
    return pd.read_csv(path, comment="#")


def write_report(report: RunReport, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2), encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def read_report(path: Path) -> RunReport:
    return RunReport.model_validate_json(Path(path).read_text(encoding="utf-8"))
