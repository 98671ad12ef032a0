"""
Symbol Grids

Time x subcarrier matrices of transmitted or estimated symbols.

Author: Adryan R A
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..core.exceptions import ArgumentError, NumericalError
from ..models.schemas import WaveformConfig


@dataclass(frozen=True)
class SymbolGrid:
    """
    Symbols of one user, shape (n_symbols, M).

    Rows are symbol periods and columns subcarriers. Inactive columns are
    exactly zero. Real grids carry PAM symbols (OFDM/OQAM), complex grids
    carry QAM symbols (CP-OFDM).
    """

    data: np.ndarray
    active_set: Tuple[int, ...]
    is_real: bool = False
    bits_per_symbol: int = 6

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64 if self.is_real else np.complex128)
        if data.ndim != 2:
            raise ArgumentError(f"grid must be two-dimensional, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise NumericalError("grid contains non-finite entries")
        bad = [k for k in self.active_set if not 0 <= k < data.shape[1]]
        if bad:
            raise ArgumentError(f"active subcarriers {bad} outside 0..{data.shape[1] - 1}")
        inactive = np.ones(data.shape[1], dtype=bool)
        inactive[list(self.active_set)] = False
        if np.any(data[:, inactive] != 0):
            raise ArgumentError("inactive subcarriers must carry zeros")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "active_set", tuple(self.active_set))

    @property
    def n_symbols(self) -> int:
        return self.data.shape[0]

    @property
    def M(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.data.shape

    def active(self) -> np.ndarray:
        """Active columns only, shape (n_symbols, n_active)."""
        return self.data[:, list(self.active_set)]

    def rows(self, index: Sequence[int]) -> "SymbolGrid":
        """Sub-grid made of the selected symbol rows."""
        return SymbolGrid(self.data[np.asarray(index, dtype=int)], self.active_set, self.is_real, self.bits_per_symbol)

    def restrict(self, active_set: Sequence[int]) -> "SymbolGrid":
        """Copy keeping only `active_set` columns, others zeroed."""
        keep = list(active_set)
        data = np.zeros_like(self.data)
        data[:, keep] = self.data[:, keep]
        return SymbolGrid(data, tuple(keep), self.is_real, self.bits_per_symbol)

    @classmethod
    def from_active(cls, values: np.ndarray, cfg: WaveformConfig) -> "SymbolGrid":
        """
        Place (n_symbols, n_active) values on the active columns of a full grid.

        Args:
            values (np.ndarray): Symbols per active subcarrier
            cfg (WaveformConfig): Owner configuration

        Returns:
            SymbolGrid: Grid with zeros on inactive subcarriers
        """
        values = np.asarray(values)
        if values.ndim != 2 or values.shape[1] != cfg.n_active:
            raise ArgumentError(f"expected (n, {cfg.n_active}) active symbols, got {values.shape}")
        is_real = not cfg.is_cp_ofdm
        data = np.zeros((values.shape[0], cfg.M), dtype=np.float64 if is_real else np.complex128)
        data[:, list(cfg.active_set)] = values.real if is_real else values
        return cls(data, cfg.active_set, is_real, 3 if is_real else 6)

    @classmethod
    def zeros(cls, n_symbols: int, cfg: WaveformConfig) -> "SymbolGrid":
        """All-zero grid for `cfg`."""
        return cls.from_active(np.zeros((n_symbols, cfg.n_active)), cfg)
