"""
Shared Test Fixtures

Small configurations (M = 64) for unit tests and seeded random streams.

Author: Adryan R A
"""

import pytest

from src.core.dsp import RngStream
from src.models.schemas import ScenarioConfig, WaveformConfig, WaveformKind

SMALL_CONF = """\
# small two-user layout for fast runs
fft_size = 64
cp_length = 5
user1_subcarriers = 8..23
user2_subcarriers = 24..39
burst_symbols = 40
n_symbols = 200
seed = 7

sigma2_min_db = -2
sigma2_max_db = 2
sigma2_step_db = 2
tau_step = 23
l_max = 10
victim_subcarrier = 23
max_lag = 4
stats_samples = 1000
"""


@pytest.fixture
def cp_config() -> WaveformConfig:
    return WaveformConfig(kind=WaveformKind.CP_OFDM, M=64, n_cp=4, active_set="8..39")


@pytest.fixture
def oqam_config() -> WaveformConfig:
    return WaveformConfig(kind=WaveformKind.OFDM_OQAM, M=64, overlap=4, active_set="8..39")


@pytest.fixture
def small_scenario() -> ScenarioConfig:
    return ScenarioConfig(
        fft_size=64,
        cp_length=5,
        user1_subcarriers="8..23",
        user2_subcarriers="24..39",
        burst_symbols=40,
        n_symbols=200,
        seed=7,
    )


@pytest.fixture
def rng() -> RngStream:
    return RngStream(12345)


@pytest.fixture
def small_conf_file(tmp_path):
    path = tmp_path / "small.conf"
    path.write_text(SMALL_CONF, encoding="utf-8")
    return path
