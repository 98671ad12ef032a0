"""
Link Metrics

Normalised EVM, empirical and AWGN-approximation bit error rates, and
statistics of interference samples (histogram, Gaussian fit, lag
covariance). Accumulators are mergeable so that trials can be reduced in any
grouping and still give the same totals.

Author: Adryan R A
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import stats

from ..core.config import settings
from ..core.exceptions import ArgumentError
from ..waveforms.constellation import PAM_LEVELS
from ..waveforms.grid import SymbolGrid

logger = logging.getLogger(__name__)

MIN_NOISE_SAMPLES = 10_000
_Z95 = float(stats.norm.ppf(0.975))


def to_db(value, floor: Optional[float] = None):
    """10*log10 of a power ratio, clipped from below at the reporting floor."""
    floor = settings.DB_FLOOR if floor is None else floor
    values = np.asarray(value, dtype=np.float64)
    with np.errstate(divide="ignore"):
        out = np.maximum(10.0 * np.log10(np.maximum(values, 0.0)), floor)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class EvmResult:
    """Normalised EVM of one user: error power over symbol power."""

    ratio: float
    per_subcarrier: np.ndarray
    active_set: Tuple[int, ...]
    n_symbols: int

    @property
    def db(self) -> float:
        return to_db(self.ratio)


@dataclass(frozen=True)
class BerResult:
    """Bit error rate with its Wilson 95% interval."""

    ber: float
    errors: int
    n_bits: int
    ci_low: float
    ci_high: float


@dataclass(frozen=True)
class NoiseStats:
    """
    Statistics of an interference sample stream.

    Attributes:
        n_samples: Complex (or real) samples analysed
        variance: Moment-matched Gaussian variance per real component
        histograms: Component name to (bin edges, counts)
        covariance: Hermitian lag covariance, shape (max_lag+1, max_lag+1)
        correlation: Normalised autocorrelation for lags 0 .. max_lag
        whiteness: Largest |correlation| over lags >= 1
        ks_statistic: Kolmogorov-Smirnov distance to the fitted Gaussian
        ks_pvalue: p-value of that test
    """

    n_samples: int
    variance: float
    histograms: Dict[str, Tuple[np.ndarray, np.ndarray]]
    covariance: np.ndarray
    correlation: np.ndarray
    whiteness: float
    ks_statistic: float
    ks_pvalue: float

    def gaussian_density(self, x: np.ndarray) -> np.ndarray:
        """Fitted zero-mean Gaussian PDF of one component."""
        return stats.norm.pdf(x, loc=0.0, scale=math.sqrt(self.variance))


def wilson_interval(errors: int, n: int, z: float = _Z95) -> Tuple[float, float]:
    """Wilson score interval of a binomial proportion."""
    if n <= 0:
        return 0.0, 1.0
    p = errors / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def ber_homogeneity(results: Sequence[BerResult]) -> float:
    """
    p-value of the chi-square test that every BER point shares one error rate.

    Returns 1.0 when the error/success table is degenerate (no errors, or
    no correct bits, anywhere).

    Raises:
        ArgumentError: If fewer than two points are given
    """
    if len(results) < 2:
        raise ArgumentError("homogeneity needs at least two BER points")
    table = np.array([[r.errors, r.n_bits - r.errors] for r in results], dtype=float)
    if np.any(table.sum(axis=0) == 0):
        return 1.0
    return float(stats.chi2_contingency(table, correction=False)[1])


@dataclass
class EvmAccumulator:
    """Per-subcarrier error and symbol energy sums."""

    active_set: Tuple[int, ...]
    error: Optional[np.ndarray] = None
    signal: Optional[np.ndarray] = None
    n_symbols: int = 0

    def __post_init__(self):
        size = len(self.active_set)
        if self.error is None:
            self.error = np.zeros(size)
        if self.signal is None:
            self.signal = np.zeros(size)

    def add(self, estimated: SymbolGrid, reference: SymbolGrid) -> None:
        if estimated.shape != reference.shape:
            raise ArgumentError(f"grid shapes differ: {estimated.shape} vs {reference.shape}")
        if tuple(estimated.active_set) != tuple(reference.active_set) or tuple(reference.active_set) != self.active_set:
            raise ArgumentError("estimated and reference grids must share the active set")
        est, ref = estimated.active(), reference.active()
        self.error += np.sum(np.abs(est - ref) ** 2, axis=0)
        self.signal += np.sum(np.abs(ref) ** 2, axis=0)
        self.n_symbols += reference.n_symbols

    def merge(self, other: "EvmAccumulator") -> "EvmAccumulator":
        if other.active_set != self.active_set:
            raise ArgumentError("cannot merge EVM accumulators over different subcarrier sets")
        return EvmAccumulator(self.active_set, self.error + other.error, self.signal + other.signal,
                              self.n_symbols + other.n_symbols)

    def result(self) -> EvmResult:
        total = float(np.sum(self.signal))
        if total <= 0:
            raise ArgumentError("reference symbols carry no power; EVM is undefined")
        with np.errstate(divide="ignore", invalid="ignore"):
            per = np.where(self.signal > 0, self.error / self.signal, np.nan)
        return EvmResult(float(np.sum(self.error)) / total, per, self.active_set, self.n_symbols)


@dataclass
class BerAccumulator:
    """Bit error and bit counts."""

    errors: int = 0
    n_bits: int = 0

    def add(self, tx_bits: np.ndarray, rx_bits: np.ndarray) -> None:
        tx, rx = np.asarray(tx_bits).reshape(-1), np.asarray(rx_bits).reshape(-1)
        if tx.shape != rx.shape:
            raise ArgumentError(f"bit streams differ in length: {tx.size} vs {rx.size}")
        self.errors += int(np.count_nonzero(tx != rx))
        self.n_bits += tx.size

    def merge(self, other: "BerAccumulator") -> "BerAccumulator":
        return BerAccumulator(self.errors + other.errors, self.n_bits + other.n_bits)

    def result(self) -> BerResult:
        ber = self.errors / self.n_bits if self.n_bits else 0.0
        low, high = wilson_interval(self.errors, self.n_bits)
        return BerResult(ber, self.errors, self.n_bits, low, high)


@dataclass
class PowerAccumulator:
    """Mean |eta|^2 per victim subcarrier."""

    active_set: Tuple[int, ...]
    energy: Optional[np.ndarray] = None
    count: int = 0

    def __post_init__(self):
        if self.energy is None:
            self.energy = np.zeros(len(self.active_set))

    def add(self, eta: np.ndarray) -> None:
        self.energy += np.sum(np.abs(eta) ** 2, axis=0)
        self.count += eta.shape[0]

    def merge(self, other: "PowerAccumulator") -> "PowerAccumulator":
        return PowerAccumulator(self.active_set, self.energy + other.energy, self.count + other.count)

    def mean(self) -> np.ndarray:
        return self.energy / self.count if self.count else np.zeros_like(self.energy)


def evm(estimated: SymbolGrid, reference: SymbolGrid) -> EvmResult:
    """
    Normalised EVM, E|d_hat - d|^2 / E|d|^2 over the active subcarriers.

    Raises:
        ArgumentError: On shape or active-set mismatch, or a powerless reference
    """
    acc = EvmAccumulator(tuple(reference.active_set))
    acc.add(estimated, reference)
    return acc.result()


def ber_empirical(tx_bits: np.ndarray, rx_bits: np.ndarray) -> BerResult:
    """
    Hamming distance over length, with a Wilson 95% interval.

    Raises:
        ArgumentError: If the streams differ in length
    """
    acc = BerAccumulator()
    acc.add(tx_bits, rx_bits)
    return acc.result()


def ber_awgn_8pam(snr_linear):
    """
    Exact bit error probability of Gray-coded 8-PAM in Gaussian noise.

    SNR is the symbol power over the noise variance of the same real
    dimension. Sums the per-bit-position error probabilities of a
    Gray-labelled L-level constellation.

    Args:
        snr_linear: Scalar or array, >= 0 (inf allowed)

    Returns:
        Bit error probability, same shape as the input
    """
    snr = np.asarray(snr_linear, dtype=np.float64)
    if np.any(snr < 0):
        raise ArgumentError("SNR must be non-negative")
    levels = PAM_LEVELS
    bits = int(math.log2(levels))
    scale = np.sqrt(3.0 * snr / (levels * levels - 1))
    total = np.zeros_like(snr)
    for k in range(1, bits + 1):
        half_weight = 2 ** (k - 1)
        for i in range(int((1 - 2.0 ** -k) * levels)):
            sign = (-1) ** math.floor(i * half_weight / levels)
            weight = half_weight - math.floor(i * half_weight / levels + 0.5)
            total = total + sign * weight * 2.0 / levels * stats.norm.sf((2 * i + 1) * scale)
    out = np.clip(total / bits, 0.0, 0.5)
    return float(out) if out.ndim == 0 else out


def ber_awgn_64qam(snr_linear):
    """
    Gray-coded 64-QAM bit error probability.

    SNR is the symbol power over the complex noise variance; each rail is an
    8-PAM with the same per-dimension SNR.
    """
    return ber_awgn_8pam(snr_linear)


def predicted_evm(isr: np.ndarray) -> float:
    """Mean interference-to-signal ratio over the victim's subcarriers."""
    return float(np.mean(isr))


def predicted_ber(isr: np.ndarray) -> float:
    """Mean Gaussian-approximation BER over the victim's subcarriers."""
    isr = np.asarray(isr, dtype=np.float64)
    with np.errstate(divide="ignore"):
        snr = np.where(isr > 0, 1.0 / isr, np.inf)
    return float(np.mean(ber_awgn_64qam(snr)))


def ber_from_evm(evm_ratio: float) -> float:
    """AWGN BER predicted from a measured EVM (same formula as the table-based prediction)."""
    return predicted_ber(np.array([evm_ratio]))


def noise_statistics(eta, max_lag: int, min_samples: int = MIN_NOISE_SAMPLES) -> NoiseStats:
    """
    Histogram, Gaussian fit and lag covariance of interference samples.

    Args:
        eta: Samples, either one sequence or a 2-D array whose rows are
            independent contiguous sequences (lags never cross rows)
        max_lag (int): Largest lag of the covariance matrix
        min_samples (int): Smallest accepted sample count

    Returns:
        NoiseStats: Statistics of the stream

    Raises:
        ArgumentError: If there are too few samples or all samples are zero
    """
    segments = np.asarray(eta)
    if segments.ndim == 1:
        segments = segments[None, :]
    if segments.ndim != 2:
        raise ArgumentError(f"expected one or two dimensions, got shape {segments.shape}")
    if segments.size < min_samples:
        raise ArgumentError(f"need at least {min_samples} samples, got {segments.size}")
    if max_lag < 1 or segments.shape[1] <= max_lag:
        raise ArgumentError(f"max_lag must lie in [1, {segments.shape[1] - 1}], got {max_lag}")

    flat = segments.reshape(-1)
    is_complex = np.iscomplexobj(flat)
    components = {"real": flat.real.astype(np.float64)}
    if is_complex:
        components["imag"] = flat.imag.astype(np.float64)
    variance = float(np.mean(np.abs(flat) ** 2)) / len(components)
    if variance <= 0:
        raise ArgumentError("interference samples are identically zero")

    histograms = {}
    for name, values in components.items():
        counts, edges = np.histogram(values, bins="fd")
        histograms[name] = (edges, counts)

    standardized = np.concatenate(list(components.values())) / math.sqrt(variance)
    ks = stats.kstest(standardized, "norm")

    windows = np.concatenate([sliding_window_view(row, max_lag + 1) for row in segments])
    covariance = windows.T @ windows.conj() / windows.shape[0]
    diagonal = float(np.mean(np.real(np.diag(covariance))))
    correlation = np.array([np.mean(np.diagonal(covariance, offset=lag)) for lag in range(max_lag + 1)]) / diagonal
    whiteness = float(np.max(np.abs(correlation[1:])))

    logger.debug(f"noise statistics: n={flat.size}, variance={variance:.3e}, whiteness={whiteness:.3f}, "
                 f"KS={ks.statistic:.4f}")
    return NoiseStats(
        n_samples=int(flat.size),
        variance=variance,
        histograms=histograms,
        covariance=covariance,
        correlation=correlation,
        whiteness=whiteness,
        ks_statistic=float(ks.statistic),
        ks_pvalue=float(ks.pvalue),
    )
