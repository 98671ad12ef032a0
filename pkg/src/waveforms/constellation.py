"""
Gray-Mapped Constellations

64-QAM for CP-OFDM users and 8-PAM for OFDM/OQAM users. 64-QAM is built as
two independent Gray-coded 8-PAM rails, so both users share one per-rail
mapping and the AWGN error expressions apply to both.

Author: Adryan R A
"""

import logging

import numpy as np

from ..core.exceptions import ArgumentError

logger = logging.getLogger(__name__)

PAM_LEVELS = 8
PAM_BITS = 3
QAM_ORDER = 64
QAM_BITS = 6

# Mean of (2i - 7)^2 over i = 0..7
_PAM_ENERGY = 21.0


def _binary2gray(values: np.ndarray) -> np.ndarray:
    return values ^ (values >> 1)


def _gray2binary(values: np.ndarray) -> np.ndarray:
    out = values.copy()
    shift = values >> 1
    while np.any(shift):
        out ^= shift
        shift >>= 1
    return out


def _bits_to_ints(bits: np.ndarray, width: int) -> np.ndarray:
    bits = np.asarray(bits, dtype=np.int64).reshape(-1)
    if bits.size % width:
        raise ArgumentError(f"bit count {bits.size} is not a multiple of {width}")
    if np.any((bits != 0) & (bits != 1)):
        raise ArgumentError("bits must be 0 or 1")
    powers = 1 << np.arange(width - 1, -1, -1)
    return bits.reshape(-1, width) @ powers


def _ints_to_bits(values: np.ndarray, width: int) -> np.ndarray:
    shifts = np.arange(width - 1, -1, -1)
    return ((values[:, None] >> shifts) & 1).astype(np.int8).reshape(-1)


def _pam_amplitudes(bits: np.ndarray) -> np.ndarray:
    """Unnormalised levels 2i-7 for Gray-coded 3-bit groups."""
    index = _gray2binary(_bits_to_ints(bits, PAM_BITS))
    return (2 * index - (PAM_LEVELS - 1)).astype(np.float64)


def _pam_decisions(values: np.ndarray) -> np.ndarray:
    """Nearest-level hard decision on unnormalised amplitudes, back to bits."""
    index = np.clip(np.rint((values + (PAM_LEVELS - 1)) / 2.0), 0, PAM_LEVELS - 1).astype(np.int64)
    return _ints_to_bits(_binary2gray(index), PAM_BITS)


def pam_map(bits: np.ndarray, sigma2: float = 1.0) -> np.ndarray:
    """
    Map bits to Gray-coded 8-PAM symbols of variance sigma2.

    Args:
        bits (np.ndarray): Bits, length a multiple of 3
        sigma2 (float): Symbol variance

    Returns:
        np.ndarray: Real symbols, levels {±1, ±3, ±5, ±7} * sqrt(sigma2 / 21)

    Raises:
        ArgumentError: If the bit count is not a multiple of 3
    """
    return _pam_amplitudes(bits) * np.sqrt(sigma2 / _PAM_ENERGY)


def pam_demap(symbols: np.ndarray, sigma2: float = 1.0) -> np.ndarray:
    """Hard-decision demapping of 8-PAM symbols back to bits."""
    if sigma2 <= 0:
        raise ArgumentError("sigma2 must be positive to demap")
    scaled = np.asarray(symbols, dtype=np.float64).reshape(-1) / np.sqrt(sigma2 / _PAM_ENERGY)
    return _pam_decisions(scaled)


def qam_map(bits: np.ndarray, sigma2: float = 1.0) -> np.ndarray:
    """
    Map bits to Gray-coded 64-QAM symbols of mean power sigma2.

    The first three bits of each group select the in-phase rail, the last
    three the quadrature rail.

    Raises:
        ArgumentError: If the bit count is not a multiple of 6
    """
    groups = np.asarray(bits).reshape(-1)
    if groups.size % QAM_BITS:
        raise ArgumentError(f"bit count {groups.size} is not a multiple of {QAM_BITS}")
    groups = groups.reshape(-1, QAM_BITS)
    in_phase = _pam_amplitudes(groups[:, :PAM_BITS])
    quadrature = _pam_amplitudes(groups[:, PAM_BITS:])
    return (in_phase + 1j * quadrature) * np.sqrt(sigma2 / (2.0 * _PAM_ENERGY))


def qam_demap(symbols: np.ndarray, sigma2: float = 1.0) -> np.ndarray:
    """Hard-decision demapping of 64-QAM symbols back to bits."""
    if sigma2 <= 0:
        raise ArgumentError("sigma2 must be positive to demap")
    scaled = np.asarray(symbols, dtype=np.complex128).reshape(-1) / np.sqrt(sigma2 / (2.0 * _PAM_ENERGY))
    in_phase = _pam_decisions(scaled.real).reshape(-1, PAM_BITS)
    quadrature = _pam_decisions(scaled.imag).reshape(-1, PAM_BITS)
    return np.hstack([in_phase, quadrature]).reshape(-1)


def qam_constellation() -> np.ndarray:
    """All 64 unit-power points, indexed by their 6-bit label."""
    labels = np.arange(QAM_ORDER)
    return qam_map(_ints_to_bits(labels, QAM_BITS))


def pam_constellation() -> np.ndarray:
    """All 8 unit-power levels, indexed by their 3-bit label."""
    labels = np.arange(PAM_LEVELS)
    return pam_map(_ints_to_bits(labels, PAM_BITS))
