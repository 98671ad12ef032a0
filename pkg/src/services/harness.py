"""
Scenario Harness

Two-user coexistence trials: both users transmit random payloads, the
secondary's burst is delayed by tau, the bursts are superimposed over a
perfect channel and each user demodulates the composite with its own
receiver. Sweeps over the secondary's power or a fixed timing offset reduce
many trials with mergeable accumulators.

Author: Adryan R A
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.dsp import RngStream, draw_offset, superimpose
from ..core.exceptions import ArgumentError
from ..models.schemas import ScenarioConfig, TauMode
from ..utils.metrics import (
    BerAccumulator,
    BerResult,
    EvmAccumulator,
    EvmResult,
    PowerAccumulator,
)
from ..waveforms.grid import SymbolGrid
from .layout import describe, make_chain, plan_pair, receive, usable_bits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialResult:
    """
    Outcome of one trial. Index 0 is the incumbent U1, index 1 the secondary U2.

    Estimated and reference grids hold the usable symbols only and are
    restricted to each user's own subcarriers.
    """

    tau: int
    estimated: Tuple[SymbolGrid, SymbolGrid]
    reference: Tuple[SymbolGrid, SymbolGrid]
    tx_bits: Tuple[np.ndarray, np.ndarray]
    rx_bits: Tuple[Optional[np.ndarray], Optional[np.ndarray]]

    def eta(self, user: int) -> np.ndarray:
        """Interference d_hat - d on user 1 or 2, shape (usable symbols, active subcarriers)."""
        if user not in (1, 2):
            raise ArgumentError(f"user must be 1 or 2, got {user}")
        return self.estimated[user - 1].active() - self.reference[user - 1].active()


@dataclass(frozen=True)
class UserSummary:
    """Reduced metrics of one user over many trials."""

    evm: Optional[EvmResult]
    ber: Optional[BerResult]
    interference: np.ndarray


@dataclass(frozen=True)
class LinkSummary:
    """Both users' metrics at one operating point."""

    sigma2_db: float
    tau: Optional[int]
    users: Tuple[UserSummary, UserSummary]
    n_trials: int


def run_trial(cfg: ScenarioConfig, rng: RngStream) -> TrialResult:
    """
    Simulate one burst of the two-user scenario.

    The timing offset is the first draw of the trial's generator, followed
    by U1's and U2's bits.

    Args:
        cfg (ScenarioConfig): Scenario
        rng (RngStream): Stream of this trial

    Returns:
        TrialResult: Grids, bits and the offset used
    """
    gen = rng.generator()
    tau = draw_offset(gen, cfg.cp_stride) if cfg.tau_mode == TauMode.RANDOM else cfg.tau_samples

    chains = (make_chain(cfg.user1()), make_chain(cfg.user2()))
    plans = plan_pair(chains[0], chains[1], cfg.burst_symbols, tau)
    payloads = [chain.random_payload(gen, plan.n_symbols) for chain, plan in zip(chains, plans)]

    composite, origin = superimpose(
        (chain.modulate(grid), plan.start) for chain, plan, (grid, _) in zip(chains, plans, payloads)
    )
    logger.debug(f"trial tau={tau}: {describe(list(plans))}")

    estimated, reference, tx_bits, rx_bits = [], [], [], []
    for chain, plan, (grid, bits) in zip(chains, plans, payloads):
        estimate = receive(chain, composite, origin, plan).restrict(chain.cfg.active_set)
        estimated.append(estimate)
        reference.append(grid.rows(plan.usable))
        tx_bits.append(usable_bits(bits, chain, plan))
        rx_bits.append(chain.demap(estimate) if chain.cfg.symbol_power > 0 else None)

    return TrialResult(tau, tuple(estimated), tuple(reference), tuple(tx_bits), tuple(rx_bits))


def trials_needed(cfg: ScenarioConfig) -> int:
    """Trials whose usable incumbent symbols add up to at least cfg.n_symbols."""
    per_trial = cfg.burst_symbols - 2 * cfg.edge_symbols
    return max(1, math.ceil(cfg.n_symbols / per_trial))


def _reduce_trial(cfg: ScenarioConfig, rng: RngStream):
    trial = run_trial(cfg, rng)
    partials = []
    for index in range(2):
        active = tuple(trial.reference[index].active_set)
        evm_acc, ber_acc, power_acc = EvmAccumulator(active), BerAccumulator(), PowerAccumulator(active)
        evm_acc.add(trial.estimated[index], trial.reference[index])
        if trial.rx_bits[index] is not None:
            ber_acc.add(trial.tx_bits[index], trial.rx_bits[index])
        power_acc.add(trial.eta(index + 1))
        partials.append((evm_acc, ber_acc, power_acc))
    return partials


def simulate_link(cfg: ScenarioConfig, rng: RngStream, threads: int = 1) -> LinkSummary:
    """
    Run trials_needed(cfg) trials and merge their metrics.

    Trial t uses rng.child(t), so two calls with the same stream see the
    same bits and offsets whatever the symbol powers (common random
    numbers) and whatever the number of threads.
    """
    n_trials = trials_needed(cfg)
    workers = max(1, min(threads, n_trials))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        partials = list(pool.map(lambda t: _reduce_trial(cfg, rng.child(t)), range(n_trials)))

    users = []
    for index in range(2):
        evm_acc, ber_acc, power_acc = partials[0][index]
        for later in partials[1:]:
            evm_acc = evm_acc.merge(later[index][0])
            ber_acc = ber_acc.merge(later[index][1])
            power_acc = power_acc.merge(later[index][2])
        users.append(UserSummary(
            evm=evm_acc.result() if np.sum(evm_acc.signal) > 0 else None,
            ber=ber_acc.result() if ber_acc.n_bits else None,
            interference=power_acc.mean(),
        ))

    tau = cfg.tau_samples if cfg.tau_mode == TauMode.FIXED else None
    return LinkSummary(cfg.sigma2_db, tau, (users[0], users[1]), n_trials)


def sweep_power(
    cfg: ScenarioConfig, sigma2_list_db: Sequence[float], rng: RngStream, threads: int = 1
) -> List[LinkSummary]:
    """
    One full Monte-Carlo run per secondary power, with common random numbers.

    Raises:
        ArgumentError: If the power list is empty
    """
    if len(sigma2_list_db) == 0:
        raise ArgumentError("power sweep needs at least one point")
    curve = []
    for sigma2_db in sigma2_list_db:
        point = simulate_link(cfg.with_updates(sigma2_db=float(sigma2_db)), rng, threads)
        logger.info(f"{cfg.scenario.value} sigma2={sigma2_db:+.1f} dB done ({point.n_trials} trials)")
        curve.append(point)
    return curve


def sweep_tau(
    cfg: ScenarioConfig, tau_list_samples: Sequence[int], rng: RngStream, threads: int = 1
) -> List[LinkSummary]:
    """
    Fixed-offset runs, one per tau.

    Raises:
        ArgumentError: If the offset list is empty
    """
    if len(tau_list_samples) == 0:
        raise ArgumentError("offset sweep needs at least one point")
    curve = []
    for tau in tau_list_samples:
        fixed = cfg.with_updates(tau_mode=TauMode.FIXED, tau_samples=int(tau))
        point = simulate_link(fixed, rng, threads)
        logger.info(f"{cfg.scenario.value} tau={int(tau)} done ({point.n_trials} trials)")
        curve.append(point)
    return curve
