"""
Unit Tests for the DSP Foundation

Author: Adryan R A
"""

import logging
import math

import numpy as np
import pytest

from src.core.dsp import (
    ComplexSignal,
    RngStream,
    compensated_sum,
    dft,
    draw_offset,
    draw_uniform,
    idft,
    integrate,
    superimpose,
)
from src.core.exceptions import ArgumentError, NumericalError


class TestTransforms:
    """Test cases for dft and idft."""

    def setup_method(self):
        gen = RngStream(1).generator()
        self.x = gen.standard_normal(32) + 1j * gen.standard_normal(32)

    def test_dft_matches_direct_sum(self):
        """Test the fast transform against the O(N^2) definition."""
        k = np.arange(32)
        direct = np.exp(-2j * np.pi * np.outer(k, k) / 32) @ self.x
        np.testing.assert_allclose(dft(self.x, 32), direct, rtol=0, atol=1e-10 * np.max(np.abs(direct)))

    def test_inverse_round_trip(self):
        """Test idft undoes dft."""
        np.testing.assert_allclose(idft(dft(self.x, 32), 32), self.x, atol=1e-12)

    def test_parseval(self):
        """Test energy is preserved up to the 1/N factor."""
        X = dft(self.x, 32)
        assert np.sum(np.abs(X) ** 2) / 32 == pytest.approx(np.sum(np.abs(self.x) ** 2), rel=1e-9)

    def test_transform_along_last_axis(self):
        """Test a matrix is transformed row by row."""
        rows = np.vstack([self.x, 2 * self.x])
        out = dft(rows, 32)
        np.testing.assert_allclose(out[1], 2 * dft(self.x, 32), atol=1e-10)

    def test_signal_in_signal_out(self):
        """Test ComplexSignal inputs keep their rate context."""
        signal = ComplexSignal(self.x, M=32, delta_f=30e3)
        out = dft(signal, 32)
        assert isinstance(out, ComplexSignal)
        assert out.M == 32 and out.delta_f == 30e3

    def test_size_mismatch(self):
        """Test a wrong length is rejected."""
        with pytest.raises(ArgumentError):
            dft(self.x, 16)
        with pytest.raises(ArgumentError):
            idft(self.x, 0)


class TestComplexSignal:
    """Test cases for ComplexSignal."""

    def test_power_and_energy(self):
        """Test energy and per-sample power."""
        signal = ComplexSignal(np.array([1, 1j, -1, 0]))
        assert signal.energy() == pytest.approx(3.0)
        assert signal.power() == pytest.approx(0.75)
        assert ComplexSignal(np.array([])).power() == 0.0

    def test_sample_rate(self):
        """Test the implied rate is M * delta_f."""
        assert ComplexSignal(np.zeros(4), M=256, delta_f=15e3).sample_rate == pytest.approx(3.84e6)

    def test_non_finite_sample(self):
        """Test a NaN sample raises NumericalError with its index."""
        with pytest.raises(NumericalError) as info:
            ComplexSignal(np.array([0, 1, np.nan]))
        assert info.value.abscissa == 2.0

    def test_two_dimensional_rejected(self):
        """Test matrices are not signals."""
        with pytest.raises(ArgumentError):
            ComplexSignal(np.zeros((2, 2)))


class TestIntegrate:
    """Test cases for adaptive quadrature."""

    def test_polynomial(self):
        """Test a closed-form integral."""
        assert integrate(lambda x: x * x, 0.0, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-9)

    def test_sinc_squared_total(self):
        """Test the unit integral of sinc^2 over a wide band."""
        total = sum(integrate(lambda x: float(np.sinc(x)) ** 2, l - 0.5, l + 0.5) for l in range(-200, 201))
        assert total == pytest.approx(1.0, abs=2e-3)

    def test_bounds_order(self):
        """Test empty or reversed bounds are rejected."""
        with pytest.raises(ArgumentError):
            integrate(lambda x: x, 1.0, 1.0)

    def test_non_finite_integrand(self):
        """Test a non-finite integrand reports the abscissa."""
        with pytest.raises(NumericalError) as info:
            integrate(lambda x: math.inf, 0.0, 1.0)
        assert info.value.abscissa is not None

    def test_missed_tolerance_is_logged(self, caplog):
        """Test a quadrature that cannot converge is reported at WARNING instead of passing silently."""
        dsp_logger = logging.getLogger("src.core.dsp")
        dsp_logger.addHandler(caplog.handler)
        try:
            with caplog.at_level(logging.WARNING, logger="src.core.dsp"):
                value = integrate(lambda x: math.sin(1.0 / x) / x, 1e-4, 1.0, rel_tol=1e-12)
        finally:
            dsp_logger.removeHandler(caplog.handler)
        assert math.isfinite(value)
        assert any("missed its tolerance" in r.getMessage() for r in caplog.records)

    def test_converged_quadrature_is_quiet(self, caplog):
        """Test a well-behaved integrand logs nothing above DEBUG."""
        with caplog.at_level(logging.WARNING, logger="src.core.dsp"):
            integrate(lambda x: x * x, 0.0, 1.0)
        assert not [r for r in caplog.records if r.levelno >= logging.WARNING]


class TestRandomStreams:
    """Test cases for RngStream and random helpers."""

    def test_same_seed_same_sequence(self):
        """Test identical streams produce identical draws."""
        a = RngStream(99).child(3).generator().integers(0, 2**32, size=10)
        b = RngStream(99).child(3).generator().integers(0, 2**32, size=10)
        np.testing.assert_array_equal(a, b)

    def test_children_independent_of_consumption_order(self):
        """Test a child stream does not depend on which siblings were used first."""
        root = RngStream(5)
        root.child(1).generator().standard_normal(1000)
        first = root.child(2).generator().standard_normal(4)
        second = RngStream(5).child(2).generator().standard_normal(4)
        np.testing.assert_array_equal(first, second)

    def test_children_differ(self):
        """Test sibling streams differ."""
        root = RngStream(5)
        assert root.child(0).generator().integers(0, 2**62) != root.child(1).generator().integers(0, 2**62)

    def test_seed_range(self):
        """Test seeds outside the unsigned 64-bit range are rejected."""
        with pytest.raises(ArgumentError):
            RngStream(-1)
        with pytest.raises(ArgumentError):
            RngStream(2**64)
        RngStream(2**64 - 1)

    def test_draw_offset_range(self):
        """Test offsets are uniform integers on [-S/2, S/2)."""
        gen = RngStream(3).generator()
        draws = np.array([draw_offset(gen, 274) for _ in range(5000)])
        assert draws.min() >= -137 and draws.max() < 137
        assert abs(draws.mean()) < 5

    def test_draw_uniform(self):
        """Test uniform draws respect their bounds."""
        values = draw_uniform(RngStream(3), -1.0, 2.0, size=1000)
        assert values.min() >= -1.0 and values.max() < 2.0
        with pytest.raises(ArgumentError):
            draw_uniform(RngStream(3), 1.0, 1.0)


class TestHelpers:
    """Test cases for superimpose and compensated_sum."""

    def test_superimpose_offsets(self):
        """Test signals are added at their axis positions."""
        a = ComplexSignal(np.ones(4))
        b = ComplexSignal(2 * np.ones(3))
        total, origin = superimpose([(a, 0), (b, -2)])
        assert origin == -2
        np.testing.assert_allclose(total.samples, [2, 2, 3, 1, 1, 1])

    def test_superimpose_empty(self):
        """Test there must be something to add."""
        with pytest.raises(ArgumentError):
            superimpose([])

    def test_compensated_sum(self):
        """Test cancellation does not lose small terms."""
        assert compensated_sum([1e16, 1.0, -1e16]) == 1.0
