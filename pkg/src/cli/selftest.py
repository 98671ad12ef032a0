"""
Self-Test

Fast oracle checks of the numerical core, run by the `selftest` command.

Author: Adryan R A
"""

import logging
import time
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from ..core.dsp import RngStream, dft, idft, integrate
from ..models.schemas import WaveformConfig, WaveformKind
from ..services.interference import psd_phydyas
from ..waveforms.chain import WaveformChain
from ..waveforms.prototype import PHYDYAS_COEFFICIENTS, build_phydyas

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _dft_oracle(gen: np.random.Generator) -> Tuple[bool, str]:
    n = 16
    x = gen.standard_normal(n) + 1j * gen.standard_normal(n)
    k = np.arange(n)
    direct = np.exp(-2j * np.pi * np.outer(k, k) / n) @ x
    error = np.max(np.abs(dft(x, n) - direct)) / np.max(np.abs(direct))
    return error < 1e-10, f"relative error {error:.1e}"


def _parseval(gen: np.random.Generator) -> Tuple[bool, str]:
    n = 4096
    x = gen.standard_normal(n) + 1j * gen.standard_normal(n)
    X = dft(x, n)
    error = abs(np.sum(np.abs(x) ** 2) - np.sum(np.abs(X) ** 2) / n) / np.sum(np.abs(x) ** 2)
    inverse = np.max(np.abs(idft(X, n) - x))
    return error < 1e-9 and inverse < 1e-10, f"relative error {error:.1e}, inverse {inverse:.1e}"


def _loopback(kind: WaveformKind, coefficients: Optional[Sequence[float]], gen: np.random.Generator) -> Tuple[bool, str]:
    cfg = WaveformConfig(kind=kind, M=64, n_cp=4, overlap=4, active_set=tuple(range(8, 40)))
    proto = None if cfg.is_cp_ofdm else build_phydyas(cfg.M, cfg.overlap, coefficients)
    chain = WaveformChain(cfg, proto)
    grid, _ = chain.random_payload(gen, 64)
    estimate = chain.demodulate(chain.modulate(grid), grid.n_symbols).restrict(cfg.active_set)
    if cfg.is_cp_ofdm:
        error = np.max(np.abs(estimate.data - grid.data))
        return error < 1e-9, f"max error {error:.1e}"
    residual = np.mean((estimate.data - grid.data) ** 2) / np.mean(grid.data ** 2)
    residual_db = 10 * np.log10(residual)
    return residual_db < -55.0, f"residual {residual_db:.1f} dB"


def _prototype_spectrum(coefficients: Optional[Sequence[float]]) -> Tuple[bool, str]:
    proto = build_phydyas(64, 4, coefficients)
    samples = proto.frequency_samples()
    expected = np.zeros(proto.length)
    for k, value in enumerate(PHYDYAS_COEFFICIENTS):
        expected[k] = value
        if k:
            expected[-k] = value
    error = np.max(np.abs(samples - expected))
    return error < 1e-6, f"max deviation {error:.1e}"


def _psd_normalization() -> Tuple[bool, str]:
    total = sum(integrate(lambda nu: float(psd_phydyas(nu)), l - 0.5, l + 0.5) for l in range(-6, 7))
    return abs(total - 1.0) < 1e-4, f"integral {total:.6f}"


def run_selftest(coefficients: Optional[Sequence[float]] = None, seed: int = 1) -> List[CheckResult]:
    """
    Run every check and return their results.

    Args:
        coefficients (Optional[Sequence[float]]): Prototype frequency samples to build the
            filter from; defaults to the PHYDYAS set
        seed (int): Seed of the random test vectors
    """
    rng = RngStream(seed)
    checks: List[Tuple[str, Callable[[], Tuple[bool, str]]]] = [
        ("dft-oracle", lambda: _dft_oracle(rng.child(0).generator())),
        ("parseval", lambda: _parseval(rng.child(1).generator())),
        ("cpofdm-loopback", lambda: _loopback(WaveformKind.CP_OFDM, coefficients, rng.child(2).generator())),
        ("oqam-loopback", lambda: _loopback(WaveformKind.OFDM_OQAM, coefficients, rng.child(3).generator())),
        ("prototype-spectrum", lambda: _prototype_spectrum(coefficients)),
        ("psd-normalization", _psd_normalization),
    ]
    results = []
    for name, check in checks:
        started = time.perf_counter()
        try:
            passed, detail = check()
        except Exception as e:
            logger.error(f"check {name} raised: {e}")
            passed, detail = False, f"raised {type(e).__name__}: {e}"
        results.append(CheckResult(name, bool(passed), detail, time.perf_counter() - started))
    return results


def format_results(results: List[CheckResult]) -> str:
    """Fixed-width table of check outcomes."""
    width = max(len(r.name) for r in results)
    lines = [f"{'check'.ljust(width)}  status  time    detail"]
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{r.name.ljust(width)}  {status}    {r.seconds:5.2f}s  {r.detail}")
    return "\n".join(lines)
