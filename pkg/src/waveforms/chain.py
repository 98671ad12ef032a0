"""
Waveform Chains

A single object per user that hides whether the user runs CP-OFDM or
OFDM/OQAM: payload generation, modulation, demodulation, demapping and burst
geometry.

Author: Adryan R A
"""

import logging
import math
from typing import Optional, Tuple

import numpy as np

from ..core.dsp import ComplexSignal
from ..core.exceptions import ArgumentError
from ..models.schemas import WaveformConfig
from .constellation import PAM_BITS, QAM_BITS, pam_demap, pam_map, qam_demap, qam_map
from .cpofdm import cpofdm_demodulate, cpofdm_modulate
from .grid import SymbolGrid
from .oqam import oqam_burst_length, oqam_demodulate, oqam_modulate, oqam_stagger
from .prototype import PrototypeFilter, build_phydyas

logger = logging.getLogger(__name__)


class WaveformChain:
    """
    Transmit/receive chain of one user.

    OFDM/OQAM users carry two real 8-PAM symbols of variance sigma^2/2 per
    QAM period, so a symbol_power of sigma^2 gives both waveforms the same
    per-sample power.
    """

    def __init__(self, cfg: WaveformConfig, proto: Optional[PrototypeFilter] = None):
        """
        Initialize the chain.

        Args:
            cfg (WaveformConfig): User configuration
            proto (Optional[PrototypeFilter]): Prototype for OFDM/OQAM, built on demand
        """
        self.cfg = cfg
        self.proto = None
        if not cfg.is_cp_ofdm:
            self.proto = proto if proto is not None else build_phydyas(cfg.M, cfg.overlap)

    @property
    def is_cp_ofdm(self) -> bool:
        return self.cfg.is_cp_ofdm

    @property
    def bits_per_symbol(self) -> int:
        return QAM_BITS if self.is_cp_ofdm else PAM_BITS

    @property
    def real_variance(self) -> float:
        """Variance of one transmitted symbol (complex for CP-OFDM, real for OQAM) at unit power."""
        return 1.0 if self.is_cp_ofdm else 0.5

    @property
    def lead_in(self) -> int:
        """Samples a burst starts ahead of its nominal position."""
        return 0 if self.is_cp_ofdm else self.cfg.overlap * self.cfg.M

    def burst_length(self, n_symbols: int) -> int:
        if self.is_cp_ofdm:
            return n_symbols * self.cfg.stride
        return oqam_burst_length(n_symbols, self.cfg.M, self.cfg.overlap)

    def symbols_to_cover(self, span: int) -> int:
        """Symbols needed for a burst extending `span` samples past its lead-in on both sides."""
        if self.is_cp_ofdm:
            return math.ceil(span / self.cfg.stride)
        return 2 * math.ceil((span + 2 * self.lead_in) / self.cfg.M)

    def usable_symbols(self, start: int, n_symbols: int, lo: int, hi: int) -> np.ndarray:
        """
        Indices of symbols whose receive window lies inside [lo, hi).

        Args:
            start (int): Axis position of the burst's first sample
            n_symbols (int): Symbols in the burst
            lo (int): First usable sample
            hi (int): End of the usable region

        Returns:
            np.ndarray: Sorted symbol indices
        """
        n = np.arange(n_symbols)
        if self.is_cp_ofdm:
            first = start + n * self.cfg.stride + self.cfg.n_cp
            last = first + self.cfg.M
        else:
            first = start + n * (self.cfg.M // 2)
            last = first + self.proto.length
        return n[(first >= lo) & (last <= hi)]

    def random_payload(self, gen: np.random.Generator, n_symbols: int) -> Tuple[SymbolGrid, np.ndarray]:
        """
        Draw random bits and map them onto the active subcarriers.

        Bits are drawn before scaling, so the same generator state gives the
        same bits at every symbol power. OFDM/OQAM payloads are complex
        symbols staggered into real and imaginary slots, so n_symbols must
        be even for them.

        Returns:
            Tuple[SymbolGrid, np.ndarray]: Grid and bits in row-major symbol order

        Raises:
            ArgumentError: If an OFDM/OQAM payload has an odd number of slots
        """
        if not self.is_cp_ofdm and n_symbols % 2:
            raise ArgumentError(f"OFDM/OQAM payload needs an even number of slots, got {n_symbols}")
        n_bits = n_symbols * self.cfg.n_active * self.bits_per_symbol
        bits = gen.integers(0, 2, size=n_bits, dtype=np.int8)
        power = self.cfg.symbol_power
        if self.is_cp_ofdm:
            values = qam_map(bits, power).reshape(n_symbols, self.cfg.n_active)
        else:
            rails = pam_map(bits, power / 2.0).reshape(n_symbols // 2, 2, self.cfg.n_active)
            values = oqam_stagger(rails[:, 0] + 1j * rails[:, 1])
        return SymbolGrid.from_active(values, self.cfg), bits

    def modulate(self, grid: SymbolGrid) -> ComplexSignal:
        if self.is_cp_ofdm:
            return cpofdm_modulate(grid, self.cfg)
        return oqam_modulate(grid, self.cfg, self.proto)

    def demodulate(self, y: ComplexSignal, n_symbols: int) -> SymbolGrid:
        """Demodulate n_symbols starting at the first sample of `y`; all bins returned."""
        if self.is_cp_ofdm:
            return cpofdm_demodulate(y, self.cfg, n_symbols)
        return oqam_demodulate(y, self.cfg, self.proto, n_symbols)

    def demap(self, grid: SymbolGrid) -> np.ndarray:
        """Hard decisions on the active subcarriers, in the order random_payload drew them."""
        symbols = grid.active().reshape(-1)
        power = self.cfg.symbol_power
        if self.is_cp_ofdm:
            return qam_demap(symbols, power)
        return pam_demap(symbols, power / 2.0)
