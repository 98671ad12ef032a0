"""
Waveforms package: constellations, symbol grids, the PHYDYAS prototype and
the CP-OFDM and OFDM/OQAM chains.
"""

from .chain import WaveformChain
from .grid import SymbolGrid
from .prototype import PHYDYAS_COEFFICIENTS, PrototypeFilter, build_phydyas

__all__ = ["WaveformChain", "SymbolGrid", "PrototypeFilter", "PHYDYAS_COEFFICIENTS", "build_phydyas"]
