"""
Experiment Recipes

Each recipe turns a scenario and its sweep knobs into result tables
(pandas DataFrames) and a summary dictionary. File handling stays in the
CLI layer.

Author: Adryan R A
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from ..core.config import settings
from ..core.dsp import RngStream
from ..core.exceptions import ConfigurationError
from ..models.schemas import ExperimentConfig, ScenarioConfig, ScenarioKind, WaveformKind
from ..utils.metrics import ber_from_evm, ber_homogeneity, noise_statistics, predicted_ber, predicted_evm, to_db
from .harness import LinkSummary, run_trial, sweep_power, sweep_tau
from .interference import (
    InterferenceTable,
    TableLabel,
    gaussian_approx,
    mc_interference_table,
    psd_table,
    total_injected,
)

logger = logging.getLogger(__name__)

HOMOGENEITY_ALPHA = 0.01


@dataclass
class ExperimentOutput:
    """Tables to write and values to report."""

    frames: Dict[str, pd.DataFrame] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)


def _aggregate_l_max(scenario: ScenarioConfig) -> int:
    """Largest distance between any two used subcarriers, within the estimator's range."""
    used = scenario.user1_subcarriers + scenario.user2_subcarriers
    return min(max(used) - min(used), scenario.fft_size // 2 - 1)


def build_tables(
    scenario: ScenarioConfig, experiment: ExperimentConfig, rng: RngStream, threads: int = 1, monte_carlo: bool = True
) -> Dict[TableLabel, InterferenceTable]:
    """
    PSD-model and Monte-Carlo tables for the scenario's geometry.

    Tables extend far enough to cover every (q, m) pair of the two bands and
    at least experiment.l_max.
    """
    l_max = max(_aggregate_l_max(scenario), experiment.l_max)
    M, n_cp, K = scenario.fft_size, scenario.cp_length, scenario.overlapping_factor
    tables = {
        TableLabel.PSD_PHYDYAS: psd_table(WaveformKind.OFDM_OQAM, l_max, M, n_cp, K),
        TableLabel.PSD_CP_OFDM: psd_table(WaveformKind.CP_OFDM, l_max, M, n_cp, K),
    }
    if not monte_carlo:
        return tables

    unit = scenario.with_updates(sigma1_db=0.0, sigma2_db=0.0)
    incumbent = unit.user1()
    oqam = unit.with_updates(scenario=ScenarioKind.HET).user2()
    cpofdm = unit.with_updates(scenario=ScenarioKind.HOM).user2()
    n, burst, mc_l_max = scenario.n_symbols, scenario.burst_symbols, min(l_max, M // 2 - 1)
    tables[TableLabel.MC_HET_21] = mc_interference_table(incumbent, oqam, n, rng.child(0), mc_l_max, burst, threads)
    tables[TableLabel.MC_HET_12] = mc_interference_table(oqam, incumbent, n, rng.child(1), mc_l_max, burst, threads)
    tables[TableLabel.MC_HOM] = mc_interference_table(incumbent, cpofdm, n, rng.child(2), mc_l_max, burst, threads)
    return tables


def psd_crossing_db(scenario: ScenarioConfig, tables: Dict[TableLabel, InterferenceTable]) -> float:
    """Secondary power (dB) at which the PSD model predicts equal EVM for both users."""
    l1, l2 = scenario.user1_subcarriers, scenario.user2_subcarriers
    onto_1 = total_injected(tables[TableLabel.PSD_PHYDYAS], l1, l2, 1.0) / len(l1)
    onto_2 = total_injected(tables[TableLabel.PSD_CP_OFDM], l2, l1, 1.0) / len(l2)
    return scenario.sigma1_db + 5.0 * math.log10(onto_2 / onto_1)


def aggregate_summary(scenario: ScenarioConfig, tables: Dict[TableLabel, InterferenceTable]) -> Dict[str, float]:
    """Total injected interference in dB at unit powers, plus derived gains and crossings."""
    l1, l2 = scenario.user1_subcarriers, scenario.user2_subcarriers
    summary = {
        "psd_1to2_dB": to_db(total_injected(tables[TableLabel.PSD_CP_OFDM], l2, l1, 1.0)),
        "psd_2to1_dB": to_db(total_injected(tables[TableLabel.PSD_PHYDYAS], l1, l2, 1.0)),
        "psd_crossing_dB": psd_crossing_db(scenario, tables),
    }
    if TableLabel.MC_HET_21 in tables:
        het_21 = total_injected(tables[TableLabel.MC_HET_21], l1, l2, 1.0)
        het_12 = total_injected(tables[TableLabel.MC_HET_12], l2, l1, 1.0)
        hom_21 = total_injected(tables[TableLabel.MC_HOM], l1, l2, 1.0)
        summary.update({
            "het_1to2_dB": to_db(het_12),
            "het_2to1_dB": to_db(het_21),
            "hom_2to1_dB": to_db(hom_21),
            "het_asymmetry_dB": to_db(het_12) - to_db(het_21),
            "hom_to_het_gain_dB": to_db(hom_21) - to_db(het_21),
        })
    return summary


def interference_table_experiment(
    scenario: ScenarioConfig, experiment: ExperimentConfig, rng: RngStream, threads: int = 1
) -> ExperimentOutput:
    """PSD-model PHYDYAS, Monte-Carlo Het and Monte-Carlo Hom tables onto the incumbent."""
    tables = build_tables(scenario, experiment, rng, threads)
    l_max = experiment.l_max
    psd = tables[TableLabel.PSD_PHYDYAS].truncate(l_max)
    het = tables[TableLabel.MC_HET_21].truncate(l_max)
    hom = tables[TableLabel.MC_HOM].truncate(l_max)

    comparison = pd.DataFrame({
        "l": psd.distances(),
        "psd_dB": to_db(psd.values()),
        "mc_het_dB": to_db(het.values()),
        "mc_het_stderr_dB": het.stderr_db(),
        "mc_hom_dB": to_db(hom.values()),
        "mc_hom_stderr_dB": hom.stderr_db(),
    })
    long_form = pd.concat([table.truncate(l_max).to_frame() for table in tables.values()], ignore_index=True)
    return ExperimentOutput(
        frames={"interftable": comparison, "tables": long_form},
        summary=aggregate_summary(scenario, tables),
    )


def _predicted(table: InterferenceTable, victim, interferer, power_ratio: float):
    isr = power_ratio * np.array([gaussian_approx(table, m, interferer).variance for m in victim])
    return predicted_evm(isr), predicted_ber(isr)


def _measured(summary: LinkSummary, index: int):
    user = summary.users[index]
    evm_db = user.evm.db if user.evm is not None else math.nan
    ber = user.ber.ber if user.ber is not None else math.nan
    ber_evm = ber_from_evm(user.evm.ratio) if user.evm is not None else math.nan
    return evm_db, ber, ber_evm


def power_sweep_experiment(
    scenario: ScenarioConfig, experiment: ExperimentConfig, rng: RngStream, threads: int = 1
) -> ExperimentOutput:
    """
    Measured EVM and BER of both users in Het and Hom versus the secondary's
    power, with the PSD-model and Hom-table Gaussian predictions.
    """
    grid_db = experiment.power_grid_db()
    tables = build_tables(scenario, experiment, rng.child(0), threads)
    curves = {
        kind: sweep_power(scenario.with_updates(scenario=kind), grid_db, rng.child(1 + i), threads)
        for i, kind in enumerate((ScenarioKind.HET, ScenarioKind.HOM))
    }

    l1, l2 = scenario.user1_subcarriers, scenario.user2_subcarriers
    rows: List[Dict[str, float]] = []
    for i, sigma2_db in enumerate(grid_db):
        ratio = 10.0 ** ((sigma2_db - scenario.sigma1_db) / 10.0)
        row = {"sigma2_dB": sigma2_db}
        for kind in (ScenarioKind.HET, ScenarioKind.HOM):
            for user in (1, 2):
                evm_db, ber, ber_evm = _measured(curves[kind][i], user - 1)
                row[f"evm{user}_{kind.value}_dB"] = evm_db
                row[f"ber{user}_{kind.value}"] = ber
                row[f"ber{user}_{kind.value}_fromevm"] = ber_evm
        for name, onto_1, onto_2 in (
            ("psdmodel", tables[TableLabel.PSD_PHYDYAS], tables[TableLabel.PSD_CP_OFDM]),
            ("homtable", tables[TableLabel.MC_HOM], tables[TableLabel.MC_HOM]),
        ):
            evm1, ber1 = _predicted(onto_1, l1, l2, ratio)
            evm2, ber2 = _predicted(onto_2, l2, l1, 1.0 / ratio)
            row[f"evm1_{name}_dB"], row[f"evm2_{name}_dB"] = to_db(evm1), to_db(evm2)
            row[f"ber1_{name}"], row[f"ber2_{name}"] = ber1, ber2
        rows.append(row)

    frame = pd.DataFrame(rows)
    evm_columns = ["sigma2_dB", "evm1_het_dB", "evm2_het_dB", "evm1_hom_dB", "evm2_hom_dB",
                   "evm1_psdmodel_dB", "evm2_psdmodel_dB", "evm1_homtable_dB", "evm2_homtable_dB"]
    ber_columns = ["sigma2_dB", "ber1_het", "ber2_het", "ber1_hom", "ber2_hom",
                   "ber1_psdmodel", "ber2_psdmodel", "ber1_homtable", "ber2_homtable",
                   "ber1_het_fromevm", "ber2_het_fromevm", "ber1_hom_fromevm", "ber2_hom_fromevm"]

    summary = aggregate_summary(scenario, tables)
    summary["evm_het_crossing_dB"] = _crossing(frame["sigma2_dB"], frame["evm1_het_dB"] - frame["evm2_het_dB"])
    summary["evm_psdmodel_crossing_dB"] = _crossing(
        frame["sigma2_dB"], frame["evm1_psdmodel_dB"] - frame["evm2_psdmodel_dB"])
    return ExperimentOutput(frames={"evm": frame[evm_columns], "ber": frame[ber_columns]}, summary=summary)


def _crossing(x: pd.Series, difference: pd.Series) -> float:
    """First zero of `difference` by linear interpolation, NaN if it never changes sign."""
    x, d = np.asarray(x, dtype=float), np.asarray(difference, dtype=float)
    for i in range(len(d) - 1):
        if d[i] == 0:
            return float(x[i])
        if np.sign(d[i]) != np.sign(d[i + 1]):
            return float(x[i] - d[i] * (x[i + 1] - x[i]) / (d[i + 1] - d[i]))
    return float(x[-1]) if len(d) and d[-1] == 0 else math.nan


def tau_grid(scenario: ScenarioConfig, experiment: ExperimentConfig) -> List[int]:
    """Every offset 0..N_CP plus the tau_step grid over one CP-OFDM symbol period."""
    inside_cp = range(0, scenario.cp_length + 1)
    stepped = range(0, scenario.cp_stride, experiment.tau_step)
    return sorted(set(inside_cp) | set(stepped))


def tau_sweep_experiment(
    scenario: ScenarioConfig, experiment: ExperimentConfig, rng: RngStream, threads: int = 1
) -> ExperimentOutput:
    """
    Incumbent BER versus a fixed timing offset over one CP-OFDM symbol period, Het and Hom.

    Het is reported flat when the chi-square homogeneity test of its error
    counts across offsets keeps p >= HOMOGENEITY_ALPHA.
    """
    taus = tau_grid(scenario, experiment)
    columns: Dict[str, List[float]] = {"tau": taus}
    het_p = math.nan
    for i, kind in enumerate((ScenarioKind.HET, ScenarioKind.HOM)):
        curve = sweep_tau(scenario.with_updates(scenario=kind), taus, rng.child(i), threads)
        results = [point.users[0].ber for point in curve]
        columns[f"ber1_{kind.value}"] = [r.ber for r in results]
        columns[f"ber1_{kind.value}_lo"] = [r.ci_low for r in results]
        columns[f"ber1_{kind.value}_hi"] = [r.ci_high for r in results]
        columns[f"bits1_{kind.value}"] = [r.n_bits for r in results]
        if kind == ScenarioKind.HET and len(results) > 1:
            het_p = ber_homogeneity(results)

    frame = pd.DataFrame(columns)
    within_cp = frame["tau"] <= scenario.cp_length
    summary = {
        "het_homogeneity_p": het_p,
        "het_flat": bool(het_p >= HOMOGENEITY_ALPHA) if math.isfinite(het_p) else True,
        "hom_zero_within_cp": bool((frame.loc[within_cp, "ber1_hom"] == 0).all()),
        "hom_bits_within_cp": int(frame.loc[within_cp, "bits1_hom"].min()),
        "n_points": len(taus),
    }
    return ExperimentOutput(frames={"ber_vs_tau": frame}, summary=summary)


def collect_eta(scenario: ScenarioConfig, victim_subcarrier: int, n_samples: int, rng: RngStream,
                threads: int = 1) -> np.ndarray:
    """
    Interference on one incumbent subcarrier, one row per trial.

    Raises:
        ConfigurationError: If the subcarrier is not one of U1's
    """
    if victim_subcarrier not in scenario.user1_subcarriers:
        raise ConfigurationError(f"subcarrier {victim_subcarrier} is not used by U1")
    column = scenario.user1_subcarriers.index(victim_subcarrier)
    per_trial = scenario.burst_symbols - 2 * scenario.edge_symbols
    n_trials = max(1, math.ceil(n_samples / per_trial))

    def one(t: int) -> np.ndarray:
        return run_trial(scenario, rng.child(t)).eta(1)[:, column]

    with ThreadPoolExecutor(max_workers=max(1, min(threads, n_trials))) as pool:
        rows = list(pool.map(one, range(n_trials)))
    return np.vstack(rows)


def statistics_experiment(
    scenario: ScenarioConfig, experiment: ExperimentConfig, rng: RngStream, threads: int = 1
) -> ExperimentOutput:
    """Histogram, Gaussian fit and lag covariance of Het interference on one incumbent subcarrier."""
    het = scenario.with_updates(scenario=ScenarioKind.HET)
    eta = collect_eta(het, experiment.victim_subcarrier, experiment.stats_samples, rng, threads)
    result = noise_statistics(eta, experiment.max_lag, min_samples=experiment.stats_samples)

    histogram_rows = []
    for component, (edges, counts) in result.histograms.items():
        width = np.diff(edges)
        centers = edges[:-1] + width / 2
        histogram_rows.append(pd.DataFrame({
            "component": component,
            "bin_left": edges[:-1],
            "bin_right": edges[1:],
            "count": counts,
            "density": counts / (counts.sum() * width),
            "gaussian_density": result.gaussian_density(centers),
        }))
    lags = np.arange(experiment.max_lag + 1)
    lag_i, lag_j = np.meshgrid(lags, lags, indexing="ij")
    covariance = pd.DataFrame({
        "lag_i": lag_i.reshape(-1),
        "lag_j": lag_j.reshape(-1),
        "cov_real": result.covariance.real.reshape(-1),
        "cov_imag": result.covariance.imag.reshape(-1),
    })
    summary = {
        "victim_subcarrier": experiment.victim_subcarrier,
        "n_samples": result.n_samples,
        "variance": result.variance,
        "whiteness": result.whiteness,
        "correlation_abs": [float(abs(c)) for c in result.correlation],
        "ks_statistic": result.ks_statistic,
        "ks_pvalue": result.ks_pvalue,
    }
    return ExperimentOutput(
        frames={"stats_histogram": pd.concat(histogram_rows, ignore_index=True), "stats_covariance": covariance},
        summary=summary,
    )


def symbol_count(full_scale: bool, override: Optional[int] = None) -> int:
    """Symbols per estimate: explicit override, else full or desk scale."""
    if override:
        return override
    return settings.FULL_SYMBOLS if full_scale else settings.DESK_SYMBOLS
