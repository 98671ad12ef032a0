"""
Interference Models

Two ways of quantifying the interference a subcarrier injects onto a
neighbour at spectral distance l:

- the PSD model, which integrates the interferer's power spectral density
  over the victim's band and ignores the victim's receiver;
- the Monte-Carlo estimator, which runs the victim's real demodulator on the
  interferer's signal and averages |eta|^2 over data and timing offset.

Tables are interference-to-signal ratios at unit symbol power on both sides.

Author: Adryan R A
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..core.config import settings
from ..core.dsp import RngStream, compensated_sum, draw_offset, integrate, superimpose
from ..core.exceptions import ArgumentError, ConfigurationError, NumericalError
from ..models.schemas import WaveformConfig, WaveformKind
from ..utils.metrics import to_db
from ..waveforms.prototype import PHYDYAS_COEFFICIENTS, SUPPORTED_OVERLAP
from .layout import make_chain, plan_pair, receive, silent_burst

logger = logging.getLogger(__name__)


class TableLabel(str, Enum):
    """Origin of an interference table."""

    PSD_CP_OFDM = "PSD-CP-OFDM"
    PSD_PHYDYAS = "PSD-PHYDYAS"
    MC_HOM = "MC-Hom"
    MC_HET_12 = "MC-Het-1->2"
    MC_HET_21 = "MC-Het-2->1"


@dataclass(frozen=True)
class InterferenceTable:
    """
    Mean interference power I(l) for spectral distances l in [-l_max, l_max].

    l = q - m, with q the interfering and m the victim subcarrier. Distances
    beyond the table use the value at the nearest end as a floor.
    """

    entries: Dict[int, float]
    label: TableLabel
    stderr: Dict[int, float] = field(default_factory=dict)
    n_trials: int = 0

    def __post_init__(self):
        for l, value in self.entries.items():
            if not math.isfinite(value):
                raise NumericalError(f"non-finite interference value at l={l}", abscissa=float(l))
            if value < 0:
                raise ArgumentError(f"negative interference value {value} at l={l}")
        if sorted(self.entries) != list(range(-self.l_max, self.l_max + 1)):
            raise ArgumentError("table must cover every distance in [-l_max, l_max]")

    @property
    def l_max(self) -> int:
        return max(abs(l) for l in self.entries)

    def value(self, l: int) -> float:
        """I(l), floored at the end value for out-of-range distances."""
        if abs(l) > self.l_max:
            l = self.l_max if l > 0 else -self.l_max
        return self.entries[l]

    def truncate(self, l_max: int) -> "InterferenceTable":
        """Same table restricted to |l| <= l_max."""
        if not 1 <= l_max <= self.l_max:
            raise ArgumentError(f"cannot truncate a table of l_max={self.l_max} to {l_max}")
        keep = range(-l_max, l_max + 1)
        return InterferenceTable(
            entries={l: self.entries[l] for l in keep},
            label=self.label,
            stderr={l: self.stderr[l] for l in keep if l in self.stderr},
            n_trials=self.n_trials,
        )

    def distances(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)

    def values(self) -> np.ndarray:
        return np.array([self.entries[int(l)] for l in self.distances()])

    def stderr_db(self) -> np.ndarray:
        """Standard error in dB (10/ln10 * se/mean); NaN when unavailable."""
        out = []
        for l in self.distances():
            se, mean = self.stderr.get(int(l), math.nan), self.entries[int(l)]
            out.append(10.0 / math.log(10.0) * se / mean if mean > 0 and math.isfinite(se) else math.nan)
        return np.array(out)

    def to_frame(self) -> pd.DataFrame:
        """Columns l, I_linear, I_dB, stderr_dB, label."""
        return pd.DataFrame({
            "l": self.distances(),
            "I_linear": self.values(),
            "I_dB": to_db(self.values()),
            "stderr_dB": self.stderr_db(),
            "label": self.label.value,
        })


@dataclass(frozen=True)
class GaussianApprox:
    """Gaussian model of the interference on one victim subcarrier."""

    victim_subcarrier: int
    variance: float
    label: TableLabel


# PSD model

def psd_cpofdm(nu, M: int = 256, n_cp: int = 18):
    """
    PSD of one CP-OFDM subcarrier, nu in subcarrier spacings.

    Squared transform of the (M + N_CP)-sample rectangular window, unit
    integral: a * sinc^2(a * nu) with a = (M + N_CP) / M.
    """
    a = (M + n_cp) / M
    return a * np.sinc(a * np.asarray(nu, dtype=np.float64)) ** 2


def phydyas_response(nu, K: int = SUPPORTED_OVERLAP, coefficients: Optional[Sequence[float]] = None):
    """Continuous frequency response G(nu) = sum_k G_|k| sinc(K nu - k), nu in subcarrier spacings."""
    design = PHYDYAS_COEFFICIENTS if coefficients is None else tuple(coefficients)
    nu = np.asarray(nu, dtype=np.float64)
    response = np.zeros_like(nu)
    for k in range(-(K - 1), K):
        response = response + design[abs(k)] * np.sinc(K * nu - k)
    return response


def psd_phydyas(nu, K: int = SUPPORTED_OVERLAP, coefficients: Optional[Sequence[float]] = None):
    """
    PSD of one PHYDYAS subcarrier, unit integral.

    Raises:
        ConfigurationError: If K is not the supported overlapping factor
    """
    if K != SUPPORTED_OVERLAP:
        raise ConfigurationError(f"PHYDYAS PSD is defined for K={SUPPORTED_OVERLAP} only")
    design = PHYDYAS_COEFFICIENTS if coefficients is None else tuple(coefficients)
    energy = design[0] ** 2 + 2.0 * sum(c * c for c in design[1:])
    return K * phydyas_response(nu, K, design) ** 2 / energy


def psd_table(
    kind: WaveformKind,
    l_max: int,
    M: int = 256,
    n_cp: int = 18,
    K: int = SUPPORTED_OVERLAP,
    rel_tol: Optional[float] = None,
) -> InterferenceTable:
    """
    I(l) = integral of the interferer's PSD over [l - 1/2, l + 1/2].

    Args:
        kind (WaveformKind): Interfering waveform
        l_max (int): Largest distance, >= 1
        M (int): Subcarriers per symbol (CP-OFDM window)
        n_cp (int): Cyclic prefix length (CP-OFDM window)
        K (int): Overlapping factor (PHYDYAS)
        rel_tol (Optional[float]): Quadrature tolerance

    Returns:
        InterferenceTable: PSD-model table

    Raises:
        ArgumentError: If l_max < 1
        NumericalError: If quadrature meets a non-finite value
    """
    if l_max < 1:
        raise ArgumentError(f"l_max must be at least 1, got {l_max}")
    if kind == WaveformKind.CP_OFDM:
        label = TableLabel.PSD_CP_OFDM

        def density(nu: float) -> float:
            return float(psd_cpofdm(nu, M, n_cp))
    else:
        label = TableLabel.PSD_PHYDYAS

        def density(nu: float) -> float:
            return float(psd_phydyas(nu, K))

    entries = {}
    for l in range(0, l_max + 1):
        value = max(0.0, integrate(density, l - 0.5, l + 0.5, rel_tol=rel_tol))
        entries[l] = value
        entries[-l] = value
    logger.debug(f"{label.value} table: I(1) = {to_db(entries[1]):.2f} dB")
    return InterferenceTable(entries=entries, label=label)


# Monte-Carlo estimator

def _mc_label(victim: WaveformConfig, interferer: WaveformConfig) -> TableLabel:
    if victim.is_cp_ofdm and interferer.is_cp_ofdm:
        return TableLabel.MC_HOM
    if victim.is_cp_ofdm:
        return TableLabel.MC_HET_21
    if interferer.is_cp_ofdm:
        return TableLabel.MC_HET_12
    raise ArgumentError("at least one of the two users must be CP-OFDM")


def mc_interference_table(
    victim: WaveformConfig,
    interferer: WaveformConfig,
    n_symbols: int,
    rng: RngStream,
    l_max: int,
    burst_symbols: Optional[int] = None,
    threads: int = 1,
) -> InterferenceTable:
    """
    Demodulator-aware interference table estimated by Monte-Carlo.

    A single interferer subcarrier q0 = M/2 carries random unit-power data;
    the victim's receiver runs on that signal alone (victim payload zero,
    which is exact by linearity) and |eta_m|^2 is averaged on bins
    m = q0 - l. Every trial draws its own timing offset, uniform over one
    CP-OFDM symbol period, before any payload.

    Args:
        victim (WaveformConfig): Victim receiver configuration
        interferer (WaveformConfig): Interferer configuration (active set ignored)
        n_symbols (int): CP-OFDM symbol periods to average over, >= MIN_MC_SYMBOLS
        rng (RngStream): Trial t uses rng.child(t)
        l_max (int): Largest distance, below M/2
        burst_symbols (Optional[int]): CP-OFDM symbols per trial
        threads (int): Worker threads; results do not depend on it

    Returns:
        InterferenceTable: Table with per-distance standard errors

    Raises:
        ArgumentError: If n_symbols is too small, the configurations differ in
            M or subcarrier spacing, or l_max is out of range
    """
    if n_symbols < settings.MIN_MC_SYMBOLS:
        raise ArgumentError(f"refusing Monte-Carlo estimate on {n_symbols} symbols "
                            f"(minimum {settings.MIN_MC_SYMBOLS})")
    if victim.M != interferer.M or victim.delta_f != interferer.delta_f:
        raise ArgumentError("victim and interferer must share M and the subcarrier spacing")
    label = _mc_label(victim, interferer)
    M = victim.M
    q0 = M // 2
    if not 1 <= l_max < q0:
        raise ArgumentError(f"l_max must lie in [1, {q0 - 1}], got {l_max}")

    burst = burst_symbols or settings.BURST_SYMBOLS
    source = interferer.model_copy(update={"active_set": (q0,), "symbol_power": 1.0})
    victim_chain, source_chain = make_chain(victim), make_chain(source)
    reference_chain = victim_chain if victim.is_cp_ofdm else source_chain
    stride = reference_chain.cfg.stride
    per_trial = burst - 2 * reference_chain.cfg.overlap
    n_trials = max(1, math.ceil(n_symbols / per_trial))
    distances = np.arange(-l_max, l_max + 1)
    bins = q0 - distances

    def one_trial(t: int) -> Tuple[np.ndarray, int]:
        gen = rng.child(t).generator()
        tau = draw_offset(gen, stride)
        if victim.is_cp_ofdm:
            victim_plan, source_plan = plan_pair(victim_chain, source_chain, burst, tau)
        else:
            source_plan, victim_plan = plan_pair(source_chain, victim_chain, burst, tau)
        grid, _ = source_chain.random_payload(gen, source_plan.n_symbols)
        composite, origin = superimpose([
            (source_chain.modulate(grid), source_plan.start),
            (silent_burst(victim_chain, victim_plan), victim_plan.start),
        ])
        eta = receive(victim_chain, composite, origin, victim_plan).data[:, bins]
        return np.sum(np.abs(eta) ** 2, axis=0) / victim_chain.real_variance, eta.shape[0]

    workers = max(1, min(threads, n_trials))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(one_trial, range(n_trials)))

    sums = np.array([s for s, _ in outcomes])
    counts = np.array([c for _, c in outcomes], dtype=np.float64)
    means = sums / counts[:, None]
    total = np.array([compensated_sum(sums[:, i]) for i in range(sums.shape[1])]) / counts.sum()
    if n_trials > 1:
        stderr = np.std(means, axis=0, ddof=1) / math.sqrt(n_trials)
    else:
        logger.warning(f"{label.value}: single Monte-Carlo trial, no standard error available")
        stderr = np.full(total.shape, math.nan)

    logger.info(f"{label.value} table estimated from {n_trials} trials ({int(counts.sum())} victim symbols)")
    return InterferenceTable(
        entries={int(l): float(v) for l, v in zip(distances, total)},
        label=label,
        stderr={int(l): float(s) for l, s in zip(distances, stderr)},
        n_trials=n_trials,
    )


# Aggregates

def _check_disjoint(victim_set: Sequence[int], interferer_set: Sequence[int]) -> None:
    overlap = set(victim_set) & set(interferer_set)
    if overlap:
        raise ArgumentError(f"victim and interferer sets overlap on {sorted(overlap)}")


def interference_profile(table: InterferenceTable, victim_set: Sequence[int], interferer_set: Sequence[int]) -> np.ndarray:
    """sum_q I(q - m) for every victim subcarrier m, at unit powers."""
    _check_disjoint(victim_set, interferer_set)
    return np.array([compensated_sum(table.value(q - m) for q in interferer_set) for m in victim_set])


def total_injected(
    table: InterferenceTable, victim_set: Sequence[int], interferer_set: Sequence[int], sigma2: float
) -> float:
    """
    Total interference sigma2 * sum_m sum_q I(q - m).

    Raises:
        ArgumentError: If the sets overlap or sigma2 is negative
    """
    if sigma2 < 0:
        raise ArgumentError(f"sigma2 must be non-negative, got {sigma2}")
    return sigma2 * compensated_sum(interference_profile(table, victim_set, interferer_set))


def gaussian_approx(table: InterferenceTable, victim_subcarrier: int, interferer_set: Sequence[int]) -> GaussianApprox:
    """Variance sum_q I(q - m) of the Gaussian interference model on subcarrier m."""
    interferer_set = list(interferer_set)
    variance = float(interference_profile(table, [victim_subcarrier], interferer_set)[0]) if interferer_set else 0.0
    return GaussianApprox(victim_subcarrier=victim_subcarrier, variance=variance, label=table.label)
