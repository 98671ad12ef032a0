"""
CP-OFDM Transmit and Receive Chains

Unnormalised inverse-DFT synthesis with a cyclic prefix in front of every
symbol; the receiver drops the prefix and applies a 1/M scaled DFT so that a
perfect channel returns the transmitted grid.

Author: Adryan R A
"""

import logging

import numpy as np

from ..core.dsp import ComplexSignal, dft, idft
from ..core.exceptions import ArgumentError
from ..models.schemas import WaveformConfig
from .grid import SymbolGrid

logger = logging.getLogger(__name__)


def _check_config(cfg: WaveformConfig) -> None:
    if not cfg.is_cp_ofdm:
        raise ArgumentError(f"CP-OFDM chain called with a {cfg.kind.value} configuration")


def cpofdm_modulate(grid: SymbolGrid, cfg: WaveformConfig) -> ComplexSignal:
    """
    Synthesize a CP-OFDM burst.

    Symbol n occupies samples n*(M+N_CP) .. (n+1)*(M+N_CP)-1, its first N_CP
    samples repeating its last N_CP.

    Args:
        grid (SymbolGrid): Complex symbols, shape (n_symbols, M)
        cfg (WaveformConfig): CP-OFDM configuration

    Returns:
        ComplexSignal: Burst of n_symbols * (M + N_CP) samples

    Raises:
        ArgumentError: If the grid does not match the configuration
    """
    _check_config(cfg)
    if grid.is_real:
        raise ArgumentError("CP-OFDM carries complex symbols, got a real grid")
    if grid.M != cfg.M:
        raise ArgumentError(f"grid has {grid.M} subcarriers, configuration has {cfg.M}")

    body = idft(grid.data, cfg.M) * cfg.M
    symbols = np.hstack([body[:, cfg.M - cfg.n_cp:], body]) if cfg.n_cp else body
    return ComplexSignal(symbols.reshape(-1), M=cfg.M, delta_f=cfg.delta_f)


def cpofdm_demodulate(y: ComplexSignal, cfg: WaveformConfig, n_symbols: int) -> SymbolGrid:
    """
    Demodulate n_symbols CP-OFDM symbols starting at the first sample of `y`.

    Every subcarrier is returned; callers restrict the grid to the bins they
    own.

    Raises:
        ArgumentError: If `y` is shorter than n_symbols strides
    """
    _check_config(cfg)
    stride = cfg.stride
    needed = n_symbols * stride
    if n_symbols < 1 or len(y) < needed:
        raise ArgumentError(f"need {needed} samples for {n_symbols} symbols, got {len(y)}")

    windows = y.samples[:needed].reshape(n_symbols, stride)[:, cfg.n_cp:]
    estimates = dft(windows, cfg.M) / cfg.M
    return SymbolGrid(estimates, tuple(range(cfg.M)), is_real=False, bits_per_symbol=6)
