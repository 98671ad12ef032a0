"""
DSP Foundation

Complex baseband signals, discrete Fourier transforms, adaptive quadrature
and deterministic seeded random streams used by every other module.

Author: Adryan R A
"""

import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft as sp_fft
from scipy import integrate as sp_integrate

from .config import settings
from .exceptions import ArgumentError, NumericalError

logger = logging.getLogger(__name__)

ArrayOrSignal = Union["ComplexSignal", np.ndarray]


@dataclass(frozen=True)
class ComplexSignal:
    """
    Finite sequence of complex baseband samples.

    The sample rate is implied by the FFT size M and the subcarrier spacing
    delta_f (M * delta_f samples per second).
    """

    samples: np.ndarray
    M: int = 256
    delta_f: float = 15e3

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.ndim != 1:
            raise ArgumentError(f"signal must be one-dimensional, got shape {samples.shape}")
        if not np.all(np.isfinite(samples)):
            bad = int(np.flatnonzero(~np.isfinite(samples))[0])
            raise NumericalError(f"non-finite sample at index {bad}", abscissa=float(bad))
        object.__setattr__(self, "samples", samples)

    def __len__(self) -> int:
        return self.samples.shape[0]

    @property
    def sample_rate(self) -> float:
        """Samples per second."""
        return self.M * self.delta_f

    def energy(self) -> float:
        """Sum of squared magnitudes."""
        return float(np.vdot(self.samples, self.samples).real)

    def power(self) -> float:
        """Mean squared magnitude per sample (0 for an empty signal)."""
        if len(self) == 0:
            return 0.0
        return self.energy() / len(self)

    def with_samples(self, samples: np.ndarray) -> "ComplexSignal":
        """Return a signal with the same rate context and new samples."""
        return ComplexSignal(samples, M=self.M, delta_f=self.delta_f)


@dataclass(frozen=True)
class RngStream:
    """
    Seeded random substream.

    Identical (seed, stream_id, lineage) always yields the same sequence,
    independently of the order in which streams are consumed.
    """

    seed: int
    stream_id: int = 0
    lineage: Tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ArgumentError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.stream_id < 0:
            raise ArgumentError(f"stream_id must be non-negative, got {self.stream_id}")

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this substream."""
        sequence = np.random.SeedSequence(self.seed, spawn_key=self.lineage + (self.stream_id,))
        return np.random.Generator(np.random.PCG64(sequence))

    def child(self, index: int) -> "RngStream":
        """Substream `index` nested under this stream."""
        return RngStream(self.seed, index, self.lineage + (self.stream_id,))


def _as_array(x: ArrayOrSignal) -> np.ndarray:
    if isinstance(x, ComplexSignal):
        return x.samples
    return np.asarray(x, dtype=np.complex128)


def _check_size(values: np.ndarray, size: int) -> None:
    if size < 1:
        raise ArgumentError(f"transform size must be positive, got {size}")
    if values.shape[-1] != size:
        raise ArgumentError(f"expected {size} samples on the last axis, got {values.shape[-1]}")


def dft(x: ArrayOrSignal, size: int) -> ArrayOrSignal:
    """
    Forward DFT X[m] = sum_k x[k] exp(-j 2 pi k m / size).

    Arrays are transformed along their last axis, which lets callers run
    one transform per symbol on a (n_symbols, size) matrix.

    Args:
        x (ArrayOrSignal): Input samples, exactly `size` on the last axis
        size (int): Transform length

    Returns:
        ArrayOrSignal: Same kind as the input

    Raises:
        ArgumentError: If the input length does not match `size`
    """
    values = _as_array(x)
    _check_size(values, size)
    out = sp_fft.fft(values, n=size, axis=-1)
    if isinstance(x, ComplexSignal):
        return x.with_samples(out)
    return out


def idft(X: ArrayOrSignal, size: int) -> ArrayOrSignal:
    """
    Inverse DFT with the 1/size factor, so that idft(dft(x)) == x.

    Raises:
        ArgumentError: If the input length does not match `size`
    """
    values = _as_array(X)
    _check_size(values, size)
    out = sp_fft.ifft(values, n=size, axis=-1)
    if isinstance(X, ComplexSignal):
        return X.with_samples(out)
    return out


def integrate(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    rel_tol: Optional[float] = None,
    abs_tol: float = 1e-16,
) -> float:
    """
    Adaptive Gauss-Kronrod quadrature of a real function over [lo, hi].

    Args:
        f (Callable[[float], float]): Integrand
        lo (float): Lower bound
        hi (float): Upper bound, strictly above `lo`
        rel_tol (Optional[float]): Relative tolerance, defaults to settings.QUAD_REL_TOL
        abs_tol (float): Absolute floor for integrals that vanish numerically

    Returns:
        float: Integral value

    Raises:
        ArgumentError: If lo >= hi
        NumericalError: If the integrand is not finite somewhere on the band
    """
    if not lo < hi:
        raise ArgumentError(f"integration bounds must satisfy lo < hi, got [{lo}, {hi}]")
    tol = settings.QUAD_REL_TOL if rel_tol is None else rel_tol

    def checked(x: float) -> float:
        value = float(f(x))
        if not math.isfinite(value):
            raise NumericalError(f"non-finite integrand value {value} at x={x}", abscissa=x)
        return value

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", sp_integrate.IntegrationWarning)
        value, error = sp_integrate.quad(checked, lo, hi, epsabs=abs_tol, epsrel=tol, limit=200)
    for warning in caught:
        if not issubclass(warning.category, sp_integrate.IntegrationWarning):
            warnings.warn(warning.message, warning.category, stacklevel=2)
            continue
        first_line = str(warning.message).strip().splitlines()[0]
        # Round-off limited bands (deep side lobes) trip quad while their
        # error estimate stays under the absolute floor.
        level = logging.WARNING if error > tol * abs(value) + abs_tol else logging.DEBUG
        logger.log(level, f"quad [{lo:.3f}, {hi:.3f}] missed its tolerance (error {error:.1e}): {first_line}")
    logger.debug(f"quad [{lo:.3f}, {hi:.3f}] -> {value:.6e} (+/- {error:.1e})")
    return float(value)


def draw_uniform(rng: RngStream, lo: float, hi: float, size: Optional[int] = None):
    """
    Uniform draw(s) on [lo, hi) from a fresh generator of `rng`.

    Raises:
        ArgumentError: If lo >= hi
    """
    if not lo < hi:
        raise ArgumentError(f"uniform bounds must satisfy lo < hi, got [{lo}, {hi})")
    return rng.generator().uniform(lo, hi, size=size)


def draw_offset(gen: np.random.Generator, stride: int) -> int:
    """Integer timing offset uniform on [-stride/2, stride/2)."""
    half = stride // 2
    return int(gen.integers(-half, stride - half))


def superimpose(parts: Iterable[Tuple[ComplexSignal, int]]) -> Tuple[ComplexSignal, int]:
    """
    Add signals placed at integer sample offsets on a common time axis.

    Args:
        parts (Iterable[Tuple[ComplexSignal, int]]): (signal, start offset) pairs

    Returns:
        Tuple[ComplexSignal, int]: Sum of the parts and the axis position of its first sample
    """
    parts = list(parts)
    if not parts:
        raise ArgumentError("nothing to superimpose")
    origin = min(offset for _, offset in parts)
    end = max(offset + len(signal) for signal, offset in parts)
    buffer = np.zeros(end - origin, dtype=np.complex128)
    for signal, offset in parts:
        start = offset - origin
        buffer[start:start + len(signal)] += signal.samples
    reference = parts[0][0]
    return reference.with_samples(buffer), origin


def compensated_sum(values: Sequence[float]) -> float:
    """Order-robust floating point sum (Shewchuk, via math.fsum)."""
    return math.fsum(float(v) for v in values)
