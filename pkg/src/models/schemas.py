"""
Pydantic Models for Configuration and Results

This module defines the typed models exchanged between the simulator layers:
per-user waveform configuration, the two-user scenario, experiment sweep
knobs and the persisted run report.

Author: Adryan R A
"""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class WaveformKind(str, Enum):
    """Multicarrier waveform of one user."""

    CP_OFDM = "cp-ofdm"
    OFDM_OQAM = "ofdm-oqam"


class ScenarioKind(str, Enum):
    """Homogeneous (CP-OFDM secondary) or heterogeneous (OFDM/OQAM secondary) coexistence."""

    HOM = "hom"
    HET = "het"


class TauMode(str, Enum):
    """How the secondary's burst delay is chosen for each trial."""

    RANDOM = "random"
    FIXED = "fixed"


def parse_subcarriers(value: Any) -> Tuple[int, ...]:
    """
    Parse a subcarrier set written as `a..b`, a comma list, or a sequence.

    Args:
        value (Any): Text such as "37..72" or "1,2,5", or an iterable of integers

    Returns:
        Tuple[int, ...]: Sorted, de-duplicated subcarrier indices
    """
    if isinstance(value, str):
        items: List[int] = []
        for part in value.replace(" ", "").split(","):
            if not part:
                continue
            if ".." in part:
                lo, hi = part.split("..", 1)
                items.extend(range(int(lo), int(hi) + 1))
            else:
                items.append(int(part))
        value = items
    return tuple(sorted(set(int(v) for v in value)))


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


class WaveformConfig(BaseModel):
    """
    Modulation parameters of one user.

    CP-OFDM users advance by M + n_cp samples per symbol and carry complex
    64-QAM symbols; OFDM/OQAM users advance by M/2 samples and carry real
    8-PAM symbols.
    """

    model_config = ConfigDict(frozen=True)

    kind: WaveformKind = Field(..., description="Waveform of the user")
    M: int = Field(256, description="Subcarriers per symbol (FFT size)")
    n_cp: int = Field(18, ge=0, description="Cyclic prefix length in samples (CP-OFDM)")
    overlap: int = Field(4, ge=1, description="Overlapping factor K (OFDM/OQAM)")
    active_set: Tuple[int, ...] = Field(..., description="Active subcarrier indices")
    symbol_power: float = Field(1.0, ge=0.0, description="Linear variance of complex symbols")
    delta_f: float = Field(15e3, gt=0.0, description="Subcarrier spacing in Hz")

    @field_validator("M")
    @classmethod
    def validate_fft_size(cls, v: int) -> int:
        """Validate M is an even power of two."""
        if not _is_power_of_two(v) or v < 2:
            raise ValueError(f"M must be a power of two >= 2, got {v}")
        return v

    @field_validator("active_set", mode="before")
    @classmethod
    def validate_active_set(cls, v: Any) -> Tuple[int, ...]:
        """Accept range text or sequences."""
        return parse_subcarriers(v)

    @model_validator(mode="after")
    def validate_active_range(self) -> "WaveformConfig":
        """Validate the active set lies in [0, M)."""
        if any(m < 0 or m >= self.M for m in self.active_set):
            raise ValueError(f"active subcarriers must lie in [0, {self.M})")
        return self

    @property
    def is_cp_ofdm(self) -> bool:
        return self.kind == WaveformKind.CP_OFDM

    @property
    def stride(self) -> int:
        """Samples between consecutive symbols."""
        return self.M + self.n_cp if self.is_cp_ofdm else self.M // 2

    @property
    def n_active(self) -> int:
        return len(self.active_set)


class ScenarioConfig(BaseModel):
    """
    Two-user coexistence scenario.

    User 1 is always the CP-OFDM incumbent; user 2 uses CP-OFDM in the
    homogeneous scenario and OFDM/OQAM in the heterogeneous one. Defaults
    follow the LTE-like setup: M=256, N_CP=18, K=4, three resource blocks
    per user, directly adjacent bands.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    scenario: ScenarioKind = Field(ScenarioKind.HET, description="hom or het")
    fft_size: int = Field(256, description="M, shared by both users")
    cp_length: int = Field(18, ge=0, description="N_CP of the CP-OFDM users")
    overlapping_factor: int = Field(4, ge=1, description="K of the OFDM/OQAM user")
    delta_f: float = Field(15e3, gt=0.0, description="Subcarrier spacing in Hz")
    user1_subcarriers: Tuple[int, ...] = Field(tuple(range(37, 73)), description="L1")
    user2_subcarriers: Tuple[int, ...] = Field(tuple(range(73, 109)), description="L2")
    sigma1_db: float = Field(0.0, description="Symbol power of user 1 in dB")
    sigma2_db: float = Field(0.0, description="Symbol power of user 2 in dB")
    tau_mode: TauMode = Field(TauMode.RANDOM, description="random or fixed")
    tau_samples: int = Field(0, description="Delay of user 2 when tau_mode is fixed")
    n_symbols: int = Field(10_000, ge=1, description="Symbols per estimate")
    burst_symbols: int = Field(200, ge=1, description="CP-OFDM symbols per trial")
    seed: int = Field(20170101, ge=0, lt=2**64, description="Master seed")

    @field_validator("user1_subcarriers", "user2_subcarriers", mode="before")
    @classmethod
    def validate_sets(cls, v: Any) -> Tuple[int, ...]:
        """Accept range text or sequences."""
        return parse_subcarriers(v)

    @field_validator("fft_size")
    @classmethod
    def validate_fft_size(cls, v: int) -> int:
        """Validate M is a power of two."""
        if not _is_power_of_two(v) or v < 2:
            raise ValueError(f"fft_size must be a power of two >= 2, got {v}")
        return v

    @model_validator(mode="after")
    def validate_layout(self) -> "ScenarioConfig":
        """Validate disjoint in-range bands and a burst long enough to leave usable symbols."""
        l1, l2 = set(self.user1_subcarriers), set(self.user2_subcarriers)
        if not l1 or not l2:
            raise ValueError("both users need at least one subcarrier")
        if l1 & l2:
            raise ValueError(f"user bands overlap on {sorted(l1 & l2)}")
        if any(m < 0 or m >= self.fft_size for m in l1 | l2):
            raise ValueError(f"subcarriers must lie in [0, {self.fft_size})")
        if self.burst_symbols <= 4 * self.overlapping_factor:
            raise ValueError("burst_symbols must exceed four times the overlapping factor")
        if abs(self.tau_samples) > self.fft_size + self.cp_length:
            raise ValueError("tau_samples must not exceed one CP-OFDM symbol period")
        return self

    @property
    def sigma1(self) -> float:
        return 10.0 ** (self.sigma1_db / 10.0)

    @property
    def sigma2(self) -> float:
        return 10.0 ** (self.sigma2_db / 10.0)

    @property
    def cp_stride(self) -> int:
        """CP-OFDM symbol period M + N_CP."""
        return self.fft_size + self.cp_length

    @property
    def edge_symbols(self) -> int:
        """CP-OFDM symbols discarded at each end of a burst."""
        return self.overlapping_factor

    def user1(self) -> WaveformConfig:
        """Incumbent CP-OFDM configuration."""
        return WaveformConfig(
            kind=WaveformKind.CP_OFDM,
            M=self.fft_size,
            n_cp=self.cp_length,
            overlap=self.overlapping_factor,
            active_set=self.user1_subcarriers,
            symbol_power=self.sigma1,
            delta_f=self.delta_f,
        )

    def user2(self) -> WaveformConfig:
        """Secondary configuration (CP-OFDM in Hom, OFDM/OQAM in Het)."""
        kind = WaveformKind.CP_OFDM if self.scenario == ScenarioKind.HOM else WaveformKind.OFDM_OQAM
        return WaveformConfig(
            kind=kind,
            M=self.fft_size,
            n_cp=self.cp_length,
            overlap=self.overlapping_factor,
            active_set=self.user2_subcarriers,
            symbol_power=self.sigma2,
            delta_f=self.delta_f,
        )

    def with_updates(self, **changes: Any) -> "ScenarioConfig":
        """Validated copy with some fields replaced."""
        data = self.model_dump()
        data.update(changes)
        return ScenarioConfig(**data)


class ExperimentConfig(BaseModel):
    """Sweep and reporting knobs shared by the experiment commands."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    sigma2_min_db: float = Field(-20.0, description="First power point of the sweep")
    sigma2_max_db: float = Field(20.0, description="Last power point of the sweep")
    sigma2_step_db: float = Field(2.0, gt=0.0, description="Power sweep step")
    tau_step: int = Field(8, ge=1, description="Step of the fixed timing-offset grid")
    l_max: int = Field(20, ge=1, description="Largest spectral distance in interference tables")
    victim_subcarrier: int = Field(72, ge=0, description="User-1 subcarrier analysed by `stats`")
    max_lag: int = Field(8, ge=1, description="Largest lag of the covariance matrix")
    stats_samples: int = Field(10_000, ge=1, description="Interference samples collected by `stats`")

    @model_validator(mode="after")
    def validate_range(self) -> "ExperimentConfig":
        """Validate the power sweep bounds are ordered."""
        if self.sigma2_max_db < self.sigma2_min_db:
            raise ValueError("sigma2_max_db must not be below sigma2_min_db")
        return self

    def power_grid_db(self) -> List[float]:
        """Sweep points from min to max inclusive."""
        n = int(round((self.sigma2_max_db - self.sigma2_min_db) / self.sigma2_step_db))
        return [round(self.sigma2_min_db + i * self.sigma2_step_db, 9) for i in range(n + 1)]


class RunReport(BaseModel):
    """
    Persisted output of one experiment command.

    The embedded config and seed are sufficient to rerun the experiment and
    reproduce `payload` exactly.
    """

    experiment: str = Field(..., description="Experiment identifier (sub-command name)")
    config: Dict[str, Any] = Field(default_factory=dict, description="Resolved scenario and experiment config")
    seed: int = Field(..., description="Master seed of the run")
    payload: Dict[str, Any] = Field(default_factory=dict, description="Tables, curves and summary values")
    tool_version: str = Field(..., description="Simulator version")
    config_hash: str = Field(..., description="SHA-256 of the canonical config JSON")
    duration_s: Optional[float] = Field(None, ge=0.0, description="Wall-clock duration in seconds")
    files: List[str] = Field(default_factory=list, description="Result files written next to the report")
