"""
OFDM/OQAM Transmit and Receive Chains

Filter-bank synthesis of real PAM symbols staggered by M/2 samples and
shaped by the PHYDYAS prototype. Each symbol is an M-point IFFT repeated K
times, weighted by the prototype and overlap-added; the receiver runs the
matched filter, folds the K blocks, takes an M-point DFT and keeps the real
part after removing the phase factor.

Author: Adryan R A
"""

import logging

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from ..core.dsp import ComplexSignal, dft, idft
from ..core.exceptions import ArgumentError
from ..models.schemas import WaveformConfig
from .grid import SymbolGrid
from .prototype import PrototypeFilter

logger = logging.getLogger(__name__)

# Symbols demodulated per vectorised batch
_CHUNK = 512

_QUARTER_TURNS = np.array([1.0, 1.0j, -1.0, -1.0j])


def phase_factors(n_symbols: int, M: int, first_symbol: int = 0) -> np.ndarray:
    """theta_n[m] = j^(n + m) for n = first_symbol .. first_symbol+n_symbols-1."""
    n = np.arange(first_symbol, first_symbol + n_symbols)[:, None]
    m = np.arange(M)[None, :]
    return _QUARTER_TURNS[(n + m) % 4]


def _center_phase(M: int, length: int) -> np.ndarray:
    """exp(-j 2 pi m (KM - 1) / (2M)), the phase reference at the filter midpoint."""
    m = np.arange(M)
    return np.exp(-1j * np.pi * m * (length - 1) / M)


def _check(cfg: WaveformConfig, proto: PrototypeFilter) -> None:
    if cfg.is_cp_ofdm:
        raise ArgumentError("OFDM/OQAM chain called with a CP-OFDM configuration")
    if proto.M != cfg.M or proto.K != cfg.overlap:
        raise ArgumentError(
            f"prototype (M={proto.M}, K={proto.K}) does not match configuration (M={cfg.M}, K={cfg.overlap})"
        )


def oqam_burst_length(n_symbols: int, M: int, K: int) -> int:
    """Samples spanned by n_symbols staggered pulses."""
    return (n_symbols - 1) * (M // 2) + K * M


def oqam_modulate(grid: SymbolGrid, cfg: WaveformConfig, proto: PrototypeFilter) -> ComplexSignal:
    """
    Synthesize an OFDM/OQAM burst.

    x[k] = sum_n sum_m d_n[m] theta_n[m] g[k - nM/2] exp(j 2 pi m (k - nM/2 - (KM-1)/2) / M),
    with symbol n supported on nM/2 .. nM/2 + KM - 1.

    Args:
        grid (SymbolGrid): Real PAM symbols, shape (n_symbols, M)
        cfg (WaveformConfig): OFDM/OQAM configuration
        proto (PrototypeFilter): Prototype filter of length K*M

    Returns:
        ComplexSignal: Burst of (n_symbols - 1) * M/2 + K*M samples

    Raises:
        ArgumentError: If the grid is complex or does not match the configuration
    """
    _check(cfg, proto)
    if not grid.is_real:
        raise ArgumentError("OFDM/OQAM carries real symbols, got a complex grid")
    if grid.M != cfg.M:
        raise ArgumentError(f"grid has {grid.M} subcarriers, configuration has {cfg.M}")

    M, K, hop = cfg.M, proto.K, cfg.M // 2
    n_symbols = grid.n_symbols
    weights = grid.data * phase_factors(n_symbols, M) * _center_phase(M, proto.length)

    # One period of every symbol, repeated K times and shaped by g
    periods = idft(weights, M) * M
    blocks = np.tile(periods, (1, K)) * proto.coefficients

    hops = np.zeros((n_symbols + 2 * K - 1, hop), dtype=np.complex128)
    blocks = blocks.reshape(n_symbols, 2 * K, hop)
    for j in range(2 * K):
        hops[j:j + n_symbols] += blocks[:, j, :]

    samples = hops.reshape(-1)
    return ComplexSignal(samples, M=M, delta_f=cfg.delta_f)


def oqam_demodulate(y: ComplexSignal, cfg: WaveformConfig, proto: PrototypeFilter, n_symbols: int) -> SymbolGrid:
    """
    Matched-filter demodulation of n_symbols symbols whose pulses start at
    samples 0, M/2, M, ... of `y`.

    d_hat_n[m] = Re{ conj(theta_n[m]) / M * sum_s y[nM/2 + s] g[s] exp(-j 2 pi m (s - (KM-1)/2) / M) }

    Raises:
        ArgumentError: If `y` does not cover the analysis support
    """
    _check(cfg, proto)
    M, K, hop = cfg.M, proto.K, cfg.M // 2
    needed = oqam_burst_length(n_symbols, M, K)
    if n_symbols < 1 or len(y) < needed:
        raise ArgumentError(f"need {needed} samples for {n_symbols} symbols, got {len(y)}")

    segments = sliding_window_view(y.samples[:needed], K * M)[::hop]
    derotate = np.conj(_center_phase(M, proto.length))
    estimates = np.empty((n_symbols, M), dtype=np.float64)
    for start in range(0, n_symbols, _CHUNK):
        stop = min(start + _CHUNK, n_symbols)
        shaped = segments[start:stop] * proto.coefficients
        folded = shaped.reshape(stop - start, K, M).sum(axis=1)
        analysed = dft(folded, M) * derotate / M
        estimates[start:stop] = np.real(analysed * np.conj(phase_factors(stop - start, M, start)))

    return SymbolGrid(estimates, tuple(range(M)), is_real=True, bits_per_symbol=3)


def oqam_stagger(symbols: np.ndarray) -> np.ndarray:
    """
    Split complex symbols into two real slots per symbol period.

    Row n of a (n, M_a) complex array becomes rows 2n (real part) and 2n+1
    (imaginary part) of a (2n, M_a) real array.
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.ndim != 2:
        raise ArgumentError(f"expected a two-dimensional symbol array, got shape {symbols.shape}")
    staggered = np.empty((2 * symbols.shape[0], symbols.shape[1]), dtype=np.float64)
    staggered[0::2] = symbols.real
    staggered[1::2] = symbols.imag
    return staggered


def oqam_destagger(symbols: np.ndarray) -> np.ndarray:
    """Inverse of oqam_stagger; the number of rows must be even."""
    symbols = np.asarray(symbols, dtype=np.float64)
    if symbols.ndim != 2 or symbols.shape[0] % 2:
        raise ArgumentError(f"expected an even number of real rows, got shape {symbols.shape}")
    return symbols[0::2] + 1j * symbols[1::2]
