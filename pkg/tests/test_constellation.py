"""
Unit Tests for Gray-Mapped Constellations

Author: Adryan R A
"""

import numpy as np
import pytest

from src.core.dsp import RngStream
from src.core.exceptions import ArgumentError
from src.utils.metrics import ber_awgn_8pam, ber_awgn_64qam
from src.waveforms.constellation import (
    pam_constellation,
    pam_demap,
    pam_map,
    qam_constellation,
    qam_demap,
    qam_map,
)


def _labels(width: int, count: int) -> np.ndarray:
    return np.array([[(i >> s) & 1 for s in range(width - 1, -1, -1)] for i in range(count)])


class TestPam:
    """Test cases for 8-PAM mapping."""

    def test_levels_and_power(self):
        """Test the eight levels are odd integers scaled to unit variance."""
        levels = np.sort(pam_constellation())
        np.testing.assert_allclose(levels * np.sqrt(21.0), np.arange(-7, 8, 2), atol=1e-12)
        assert np.mean(levels ** 2) == pytest.approx(1.0)

    def test_gray_neighbours(self):
        """Test adjacent levels differ in exactly one bit."""
        points = pam_constellation()
        labels = _labels(3, 8)
        order = np.argsort(points)
        for a, b in zip(order[:-1], order[1:]):
            assert np.sum(labels[a] != labels[b]) == 1

    def test_variance_scaling(self):
        """Test sigma2 scales the symbol variance."""
        assert np.mean(pam_map(_labels(3, 8).reshape(-1), 0.5) ** 2) == pytest.approx(0.5)

    def test_round_trip(self):
        """Test demapping recovers the bits."""
        bits = RngStream(2).generator().integers(0, 2, size=3 * 500)
        np.testing.assert_array_equal(pam_demap(pam_map(bits, 2.0), 2.0), bits)

    def test_bad_input(self):
        """Test bit counts and values are checked."""
        with pytest.raises(ArgumentError):
            pam_map(np.array([0, 1]))
        with pytest.raises(ArgumentError):
            pam_map(np.array([0, 1, 2]))
        with pytest.raises(ArgumentError):
            pam_demap(np.zeros(3), 0.0)

    def test_awgn_error_rate(self):
        """Test simulated 8-PAM errors against the exact Gray-coded expression."""
        gen = RngStream(4).generator()
        bits = gen.integers(0, 2, size=3 * 200_000)
        snr = 10.0
        received = pam_map(bits) + gen.standard_normal(200_000) * np.sqrt(1.0 / snr)
        measured = np.mean(pam_demap(received) != bits)
        assert measured == pytest.approx(ber_awgn_8pam(snr), rel=0.03)


class TestQam:
    """Test cases for 64-QAM mapping."""

    def test_unit_power(self):
        """Test the constellation has unit mean power and 64 distinct points."""
        points = qam_constellation()
        assert np.mean(np.abs(points) ** 2) == pytest.approx(1.0)
        assert len(np.unique(np.round(points, 9))) == 64

    def test_rails_are_pam(self):
        """Test each rail carries the 8-PAM levels scaled by 1/sqrt(2)."""
        rails = np.unique(np.round(qam_constellation().real * np.sqrt(42.0), 9))
        np.testing.assert_allclose(rails, np.arange(-7, 8, 2), atol=1e-9)

    def test_round_trip_with_small_noise(self):
        """Test demapping tolerates noise below half the level spacing."""
        gen = RngStream(6).generator()
        bits = gen.integers(0, 2, size=6 * 1000)
        noise = 0.02 * (gen.standard_normal(1000) + 1j * gen.standard_normal(1000))
        np.testing.assert_array_equal(qam_demap(qam_map(bits) + noise), bits)

    def test_bit_count(self):
        """Test a bit count that is not a multiple of six is rejected."""
        with pytest.raises(ArgumentError):
            qam_map(np.zeros(7, dtype=int))

    def test_awgn_error_rate(self):
        """Test simulated 64-QAM errors against the per-rail expression."""
        gen = RngStream(8).generator()
        n = 100_000
        bits = gen.integers(0, 2, size=6 * n)
        snr = 10.0
        noise = (gen.standard_normal(n) + 1j * gen.standard_normal(n)) * np.sqrt(0.5 / snr)
        measured = np.mean(qam_demap(qam_map(bits) + noise) != bits)
        assert measured == pytest.approx(ber_awgn_64qam(snr), rel=0.03)
