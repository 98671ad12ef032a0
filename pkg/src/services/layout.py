"""
Burst Layout

Placement of two users' bursts on a common sample axis. The CP-OFDM burst
used as frame reference starts at sample 0; the other burst is delayed by
tau and, for OFDM/OQAM, starts its K*M-sample lead-in earlier so that its
pulses cover the reference burst completely. Only symbols whose receive
window falls inside the reference burst minus K symbols at each end are
analysed.

Author: Adryan R A
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from ..core.dsp import ComplexSignal
from ..core.exceptions import ArgumentError
from ..models.schemas import WaveformConfig
from ..waveforms.chain import WaveformChain
from ..waveforms.grid import SymbolGrid
from ..waveforms.prototype import PrototypeFilter, build_phydyas

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BurstPlan:
    """Where one user's burst sits on the common axis and which symbols are analysed."""

    start: int
    n_symbols: int
    usable: np.ndarray


@lru_cache(maxsize=8)
def cached_prototype(M: int, K: int) -> PrototypeFilter:
    return build_phydyas(M, K)


def make_chain(cfg: WaveformConfig) -> WaveformChain:
    """Chain for `cfg`, sharing one prototype per (M, K)."""
    if cfg.is_cp_ofdm:
        return WaveformChain(cfg)
    return WaveformChain(cfg, cached_prototype(cfg.M, cfg.overlap))


def plan_pair(
    reference: WaveformChain, other: WaveformChain, n_reference: int, tau: int
) -> Tuple[BurstPlan, BurstPlan]:
    """
    Lay out a reference CP-OFDM burst and a second burst delayed by tau.

    Args:
        reference (WaveformChain): CP-OFDM chain anchored at sample 0
        other (WaveformChain): Second user's chain
        n_reference (int): Symbols in the reference burst
        tau (int): Delay of the second burst in samples

    Returns:
        Tuple[BurstPlan, BurstPlan]: Plans of the reference and the other burst

    Raises:
        ArgumentError: If the reference is not CP-OFDM or the burst is too short
    """
    if not reference.is_cp_ofdm:
        raise ArgumentError("the reference burst must be CP-OFDM")
    edge = reference.cfg.overlap
    if n_reference <= 2 * edge:
        raise ArgumentError(f"burst of {n_reference} symbols leaves nothing after dropping {edge} at each end")

    span = n_reference * reference.cfg.stride
    lo, hi = edge * reference.cfg.stride, (n_reference - edge) * reference.cfg.stride

    n_other = n_reference if other.is_cp_ofdm else other.symbols_to_cover(span)
    start_other = tau - other.lead_in

    first = BurstPlan(0, n_reference, reference.usable_symbols(0, n_reference, lo, hi))
    second = BurstPlan(start_other, n_other, other.usable_symbols(start_other, n_other, lo, hi))
    return first, second


def receive(chain: WaveformChain, composite: ComplexSignal, origin: int, plan: BurstPlan) -> SymbolGrid:
    """Run `chain`'s receiver on the composite signal and keep the usable symbols."""
    offset = plan.start - origin
    needed = chain.burst_length(plan.n_symbols)
    window = composite.samples[offset:offset + needed]
    if offset < 0 or window.shape[0] < needed:
        raise ArgumentError("composite signal does not cover the receive window")
    grid = chain.demodulate(composite.with_samples(window), plan.n_symbols)
    return grid.rows(plan.usable)


def usable_bits(bits: np.ndarray, chain: WaveformChain, plan: BurstPlan) -> np.ndarray:
    """Bits carried by the usable symbols, in demapping order."""
    per_symbol = chain.cfg.n_active * chain.bits_per_symbol
    return bits.reshape(plan.n_symbols, per_symbol)[plan.usable].reshape(-1)


def silent_burst(chain: WaveformChain, plan: BurstPlan) -> ComplexSignal:
    """All-zero burst with the length of `plan`."""
    length = chain.burst_length(plan.n_symbols)
    return ComplexSignal(np.zeros(length, dtype=np.complex128), M=chain.cfg.M, delta_f=chain.cfg.delta_f)


def describe(plans: List[BurstPlan]) -> str:
    return ", ".join(f"[start={p.start}, n={p.n_symbols}, usable={p.usable.size}]" for p in plans)
