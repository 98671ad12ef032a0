"""
PHYDYAS Prototype Filter

Frequency-sampling design of the OFDM/OQAM prototype filter for overlapping
factor K = 4. The filter is sampled at half-integer offsets so that it has
exactly K*M taps and is symmetric about (KM - 1) / 2.

Author: Adryan R A
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..core.dsp import dft
from ..core.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

# Frequency samples G_0 .. G_3 of the K = 4 design
PHYDYAS_COEFFICIENTS: Tuple[float, ...] = (1.0, 0.971960, 1.0 / np.sqrt(2.0), 0.235147)
SUPPORTED_OVERLAP = 4


@dataclass(frozen=True)
class PrototypeFilter:
    """
    Real prototype filter g[k], k = 0 .. KM-1.

    Attributes:
        coefficients: Time-domain taps
        K: Overlapping factor
        M: Subcarriers per symbol
        normalization: How the taps were scaled
        design: Frequency samples the taps were built from
    """

    coefficients: np.ndarray
    K: int
    M: int
    normalization: str = "energy=M"
    design: Tuple[float, ...] = PHYDYAS_COEFFICIENTS

    @property
    def length(self) -> int:
        return self.coefficients.shape[0]

    def energy(self) -> float:
        return float(np.dot(self.coefficients, self.coefficients))

    def frequency_samples(self, n_bins: Optional[int] = None) -> np.ndarray:
        """
        Magnitudes of the KM-point DFT relative to bin 0.

        Args:
            n_bins (Optional[int]): Leading bins to return, all by default

        Returns:
            np.ndarray: |G[k]| / |G[0]| for k = 0 .. n_bins-1
        """
        spectrum = np.abs(dft(self.coefficients.astype(np.complex128), self.length))
        samples = spectrum / spectrum[0]
        return samples if n_bins is None else samples[:n_bins]


def build_phydyas(M: int, K: int = SUPPORTED_OVERLAP, coefficients: Optional[Sequence[float]] = None) -> PrototypeFilter:
    """
    Build the PHYDYAS prototype filter.

    g[k] = G_0 + 2 * sum_l (-1)^l G_l cos(2 pi l (k + 1/2) / (KM)), scaled so
    that sum g^2 = M. With the 1/M receiver this gives unity loopback gain and
    the same per-sample power as an unnormalised CP-OFDM synthesis.

    Args:
        M (int): Subcarriers per symbol, a power of two
        K (int): Overlapping factor, only 4 is supported
        coefficients (Optional[Sequence[float]]): Override of G_0 .. G_{K-1}

    Returns:
        PrototypeFilter: Length K*M energy-normalised filter

    Raises:
        ConfigurationError: If K is unsupported, M is not a power of two or
            the coefficient list has the wrong length
    """
    if K != SUPPORTED_OVERLAP:
        raise ConfigurationError(f"PHYDYAS coefficients are defined for K={SUPPORTED_OVERLAP} only, got K={K}")
    if M < 2 or (M & (M - 1)) != 0:
        raise ConfigurationError(f"M must be a power of two >= 2, got {M}")
    design = tuple(float(c) for c in (PHYDYAS_COEFFICIENTS if coefficients is None else coefficients))
    if len(design) != K:
        raise ConfigurationError(f"expected {K} frequency samples, got {len(design)}")

    length = K * M
    k = np.arange(length) + 0.5
    taps = np.full(length, design[0])
    for l in range(1, K):
        taps += 2.0 * (-1) ** l * design[l] * np.cos(2.0 * np.pi * l * k / length)
    taps *= np.sqrt(M / np.dot(taps, taps))

    logger.debug(f"PHYDYAS filter built: M={M}, K={K}, peak={taps.max():.4f}")
    return PrototypeFilter(coefficients=taps, K=K, M=M, design=design)
