"""
Tests for the Interference Models

PSD-model tables, the Monte-Carlo estimator and the aggregate helpers.
Monte-Carlo checks run the LTE-like layout (M = 256, N_CP = 18) at a
reduced symbol count.

Author: Adryan R A
"""

import math

import numpy as np
import pytest

from src.core.dsp import RngStream
from src.core.exceptions import ArgumentError, ConfigurationError, NumericalError
from src.models.schemas import ScenarioConfig, ScenarioKind, WaveformKind
from src.services.interference import (
    InterferenceTable,
    TableLabel,
    gaussian_approx,
    interference_profile,
    mc_interference_table,
    phydyas_response,
    psd_cpofdm,
    psd_phydyas,
    psd_table,
    total_injected,
)
from src.utils.metrics import to_db


def _synthetic(l_max: int = 5) -> InterferenceTable:
    entries = {l: 1.0 / (l * l) if l else 1.0 for l in range(-l_max, l_max + 1)}
    return InterferenceTable(entries=entries, label=TableLabel.MC_HOM)


class TestInterferenceTable:
    """Test cases for InterferenceTable."""

    def test_floor_beyond_range(self):
        """Test distances beyond l_max reuse the end values."""
        table = _synthetic()
        assert table.l_max == 5
        assert table.value(9) == table.value(5) == pytest.approx(0.04)
        assert table.value(-9) == table.value(-5)

    def test_truncate(self):
        """Test truncation keeps the inner distances."""
        table = _synthetic().truncate(2)
        assert table.l_max == 2
        np.testing.assert_array_equal(table.distances(), [-2, -1, 0, 1, 2])
        with pytest.raises(ArgumentError):
            _synthetic().truncate(6)

    def test_validation(self):
        """Test gaps, negative and non-finite values are rejected."""
        with pytest.raises(ArgumentError):
            InterferenceTable(entries={-1: 0.1, 1: 0.1}, label=TableLabel.MC_HOM)
        with pytest.raises(ArgumentError):
            InterferenceTable(entries={-1: 0.1, 0: 1.0, 1: -0.1}, label=TableLabel.MC_HOM)
        with pytest.raises(NumericalError):
            InterferenceTable(entries={-1: 0.1, 0: math.nan, 1: 0.1}, label=TableLabel.MC_HOM)

    def test_frame(self):
        """Test the table exports one row per distance."""
        frame = _synthetic().to_frame()
        assert list(frame.columns) == ["l", "I_linear", "I_dB", "stderr_dB", "label"]
        assert len(frame) == 11
        assert frame["label"].iloc[0] == "MC-Hom"
        assert frame["stderr_dB"].isna().all()


class TestPsdModel:
    """Test cases for PSD-model tables."""

    def setup_method(self):
        self.phydyas = psd_table(WaveformKind.OFDM_OQAM, 6)
        self.cpofdm = psd_table(WaveformKind.CP_OFDM, 20)

    def test_phydyas_normalisation(self):
        """Test the PHYDYAS PSD integrates to one."""
        assert sum(self.phydyas.values()) == pytest.approx(1.0, abs=1e-4)

    def test_cpofdm_normalisation(self):
        """Test the CP-OFDM PSD integrates to one apart from its slow tail."""
        wide = psd_table(WaveformKind.CP_OFDM, 50)
        assert sum(wide.values()) == pytest.approx(1.0, abs=5e-3)

    def test_phydyas_values(self):
        """Test the first neighbour leaks about -12 dB and the second less than -60 dB."""
        assert -14.0 < to_db(self.phydyas.value(1)) < -10.0
        assert to_db(self.phydyas.value(2)) < -60.0
        assert all(self.phydyas.value(l) < 1e-8 for l in range(4, 7))
        assert self.phydyas.value(3) < self.phydyas.value(2)

    def test_phydyas_first_sidelobe(self):
        """Test |G(1.125)|^2 / |G(0)|^2 is about -40.8 dB."""
        ratio = phydyas_response(1.125) ** 2 / phydyas_response(0.0) ** 2
        assert to_db(ratio) == pytest.approx(-40.8, abs=1.0)

    def test_cpofdm_values(self):
        """Test the first neighbour and the 1 / (2 pi^2 a l^2) tail."""
        a = 274 / 256
        assert -14.0 < to_db(self.cpofdm.value(1)) < -10.0
        for l in (5, 10, 20):
            assert self.cpofdm.value(l) == pytest.approx(1.0 / (2 * np.pi ** 2 * a * l * l), rel=0.15)

    def test_asymmetry_at_distance_two(self):
        """Test CP-OFDM leaks at least 30 dB more than PHYDYAS at l = 2."""
        assert to_db(self.cpofdm.value(2)) - to_db(self.phydyas.value(2)) >= 30.0

    def test_symmetric_in_l(self):
        """Test I(l) = I(-l)."""
        assert self.cpofdm.value(-3) == self.cpofdm.value(3)

    def test_densities(self):
        """Test the densities peak at the subcarrier center."""
        assert psd_phydyas(0.0) == pytest.approx(1.0)
        assert psd_cpofdm(0.0) == pytest.approx(274 / 256)

    def test_bad_arguments(self):
        """Test l_max and K are validated."""
        with pytest.raises(ArgumentError):
            psd_table(WaveformKind.CP_OFDM, 0)
        with pytest.raises(ConfigurationError):
            psd_phydyas(0.0, K=3)


class TestAggregates:
    """Test cases for interference_profile, total_injected and gaussian_approx."""

    def setup_method(self):
        self.table = _synthetic()

    def test_total_adjacent_bands(self):
        """Test the double sum over two adjacent two-subcarrier bands."""
        # pairs at distances 1, 2, 2, 3
        expected = 1.0 + 0.25 + 0.25 + 1.0 / 9.0
        assert total_injected(self.table, [0, 1], [2, 3], 1.0) == pytest.approx(expected)

    def test_linear_in_power(self):
        """Test total interference scales with the interferer's power."""
        unit = total_injected(self.table, [0, 1], [2, 3], 1.0)
        assert total_injected(self.table, [0, 1], [2, 3], 4.0) == pytest.approx(4.0 * unit)

    def test_floor_applies(self):
        """Test far pairs use the end value of the table."""
        assert total_injected(self.table, [0], [40], 1.0) == pytest.approx(0.04)

    def test_profile(self):
        """Test per-victim sums."""
        np.testing.assert_allclose(interference_profile(self.table, [0, 1], [2, 3]),
                                   [0.25 + 1.0 / 9.0, 1.0 + 0.25])

    def test_overlap_and_negative_power(self):
        """Test overlapping sets and negative power are rejected."""
        with pytest.raises(ArgumentError):
            total_injected(self.table, [0, 1], [1, 2], 1.0)
        with pytest.raises(ArgumentError):
            total_injected(self.table, [0], [1], -1.0)

    def test_gaussian_approx(self):
        """Test the Gaussian model variance equals the profile."""
        model = gaussian_approx(self.table, 0, range(1, 4))
        assert model.variance == pytest.approx(1.0 + 0.25 + 1.0 / 9.0)
        assert model.label == TableLabel.MC_HOM
        assert gaussian_approx(self.table, 0, []).variance == 0.0


class TestMonteCarloArguments:
    """Test cases for Monte-Carlo preconditions."""

    def setup_method(self):
        scenario = ScenarioConfig(fft_size=64, cp_length=5, user1_subcarriers="8..23",
                                  user2_subcarriers="24..39", burst_symbols=40)
        self.cp = scenario.user1()
        self.oqam = scenario.user2()

    def test_too_few_symbols(self):
        """Test estimates on fewer than MIN_MC_SYMBOLS symbols are refused."""
        with pytest.raises(ArgumentError):
            mc_interference_table(self.cp, self.oqam, 50, RngStream(1), 5, 40)

    def test_distance_range(self):
        """Test l_max must stay below M/2."""
        with pytest.raises(ArgumentError):
            mc_interference_table(self.cp, self.oqam, 200, RngStream(1), 32, 40)

    def test_mismatched_sizes(self):
        """Test both users must share M."""
        other = self.oqam.model_copy(update={"M": 128})
        with pytest.raises(ArgumentError):
            mc_interference_table(self.cp, other, 200, RngStream(1), 5, 40)

    def test_needs_a_cp_ofdm_user(self):
        """Test two OFDM/OQAM users have no reference frame."""
        with pytest.raises(ArgumentError):
            mc_interference_table(self.oqam, self.oqam, 200, RngStream(1), 5, 40)

    def test_single_trial_has_no_stderr(self):
        """Test one trial yields NaN standard errors."""
        table = mc_interference_table(self.cp, self.oqam, 100, RngStream(1), 5, 40)
        assert table.n_trials == 4
        single = mc_interference_table(self.cp, self.oqam, 100, RngStream(1), 5, 200)
        assert single.n_trials == 1
        assert all(math.isnan(v) for v in single.stderr.values())

    def test_threads_do_not_change_results(self):
        """Test the estimate is identical with one or several workers."""
        one = mc_interference_table(self.cp, self.oqam, 300, RngStream(9), 5, 40, threads=1)
        many = mc_interference_table(self.cp, self.oqam, 300, RngStream(9), 5, 40, threads=3)
        assert one.entries == many.entries

    def test_labels(self):
        """Test the label follows the victim and interferer waveforms."""
        assert mc_interference_table(self.oqam, self.cp, 100, RngStream(1), 3, 40).label == TableLabel.MC_HET_12
        assert mc_interference_table(self.cp, self.cp, 100, RngStream(1), 3, 40).label == TableLabel.MC_HOM


class TestMonteCarloLteLayout:
    """Monte-Carlo tables for M = 256, N_CP = 18, K = 4 at a reduced symbol count."""

    @classmethod
    def setup_class(cls):
        scenario = ScenarioConfig()
        incumbent = scenario.user1()
        oqam = scenario.with_updates(scenario=ScenarioKind.HET).user2()
        cpofdm = scenario.with_updates(scenario=ScenarioKind.HOM).user2()
        rng = RngStream(20170101)
        cls.scenario = scenario
        cls.het = mc_interference_table(incumbent, oqam, 4000, rng.child(0), 20)
        cls.het_12 = mc_interference_table(oqam, incumbent, 4000, rng.child(1), 20)
        cls.hom = mc_interference_table(incumbent, cpofdm, 8000, rng.child(2), 20)
        cls.psd = psd_table(WaveformKind.OFDM_OQAM, 20)

    def test_het_levels(self):
        """Test OFDM/OQAM onto CP-OFDM: about -18.5 dB at l = 2 and -40 dB at l = 20."""
        assert to_db(self.het.value(2)) == pytest.approx(-18.5, abs=1.5)
        assert to_db(self.het.value(20)) == pytest.approx(-40.0, abs=2.0)

    def test_gap_to_psd_model(self):
        """Test the PSD model underestimates the demodulated interference."""
        for l in range(2, 21):
            assert to_db(self.het.value(l)) - to_db(self.psd.value(l)) >= 20.0
        for l in range(3, 11):
            assert to_db(self.het.value(l)) - to_db(self.psd.value(l)) >= 45.0

    def test_hom_tail(self):
        """Test misaligned CP-OFDM leaks about M / (M + N_CP) / (pi^2 l^2)."""
        expected = 256 / 274 / np.pi ** 2
        measured = np.mean([self.hom.value(l) * l * l for l in range(2, 11)])
        assert measured == pytest.approx(expected, rel=0.25)

    def test_het_below_hom(self):
        """Test OFDM/OQAM leaks less than CP-OFDM beyond the first neighbour."""
        gaps = [to_db(self.hom.value(l)) - to_db(self.het.value(l)) for l in range(2, 11)]
        assert np.mean(gaps) >= 1.0

    def test_adjacent_direction_offset(self):
        """Test the adjacent subcarrier leaks more onto CP-OFDM than onto OFDM/OQAM, by under 1 dB."""
        gap = to_db(self.het.value(1)) - to_db(self.het_12.value(1))
        assert 0.0 < gap < 1.0

    def test_standard_errors(self):
        """Test standard errors are finite and small."""
        assert self.het.n_trials > 1
        assert np.all(self.het.stderr_db() < 0.5)

    def test_symmetric_in_l(self):
        """Test I(l) and I(-l) agree statistically."""
        for l in (2, 5):
            assert abs(to_db(self.het.value(l)) - to_db(self.het.value(-l))) < 1.0
