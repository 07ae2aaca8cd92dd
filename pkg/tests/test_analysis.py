"""Harmonic decomposition, peak finding, and visibility extraction."""

import math

import numpy as np
import pytest

from sqramsey import InvalidParam
from sqramsey.analysis import (
    cosine_coefficients,
    extract_visibility,
    harmonic_residual,
    interior_maxima,
    interior_peak_locations,
    periodic_maxima,
    periodic_peak_locations,
    periodic_spacings,
    refine_peak,
)


def wrap_grid(points: int, period: float = 2.0 * math.pi) -> np.ndarray:
    return np.arange(points) * period / points


class TestCosineCoefficients:
    def test_recovers_a_planted_trig_polynomial(self):
        x = wrap_grid(64)
        signal = 1.5 + 2.0 * np.cos(x) + 0.5 * np.cos(2.0 * x) + 0.25 * np.sin(3.0 * x)
        mean, cos_c, sin_c = cosine_coefficients(signal, 4)
        assert mean == pytest.approx(1.5, abs=1e-13)
        assert cos_c == pytest.approx([2.0, 0.5, 0.0, 0.0], abs=1e-13)
        assert sin_c == pytest.approx([0.0, 0.0, 0.25, 0.0], abs=1e-13)

    def test_rejects_short_grids(self):
        with pytest.raises(InvalidParam):
            cosine_coefficients(np.ones(6), 3)


class TestHarmonicResidual:
    def test_pure_kept_harmonics_leave_nothing(self):
        x = wrap_grid(128)
        signal = 0.7 + 0.3 * np.cos(2.0 * x)
        assert harmonic_residual(signal, keep=(0, 2)) < 1e-13

    def test_unkept_harmonic_is_reported_at_its_amplitude(self):
        x = wrap_grid(128)
        signal = 0.2 * np.cos(x)
        assert harmonic_residual(signal, keep=(0,)) == pytest.approx(0.2, rel=1e-12)

    def test_rejects_out_of_range_harmonics(self):
        with pytest.raises(InvalidParam):
            harmonic_residual(np.ones(8), keep=(100,))


class TestMaxima:
    def test_interior_maxima_of_a_cosine(self):
        x = np.linspace(-3.0 * math.pi, 3.0 * math.pi, 601)
        idx = interior_maxima(np.cos(x))
        # peaks at -2 pi, 0, 2 pi; the endpoints at +-3 pi are excluded
        assert idx.size == 3

    def test_periodic_maxima_catch_the_edge_peak(self):
        x = wrap_grid(64)
        idx = periodic_maxima(np.cos(x))
        assert idx.tolist() == [0]

    def test_flat_signal_has_no_maxima(self):
        assert interior_maxima(np.ones(10)).size == 0
        assert periodic_maxima(np.ones(10)).size == 0


class TestRefinePeak:
    def test_exact_for_a_parabola(self):
        # y = 1 - (x - 0.3)^2 sampled off-vertex
        xs = np.array([0.0, 0.25, 0.5])
        ys = 1.0 - (xs - 0.3) ** 2
        assert refine_peak(*xs, *ys) == pytest.approx(0.3, abs=1e-14)

    def test_falls_back_on_degenerate_samples(self):
        assert refine_peak(0.0, 0.5, 1.0, 1.0, 1.0, 1.0) == 0.5

    def test_near_exact_for_a_cosine(self):
        step = 2.0 * math.pi / 256
        x0 = 0.7  # true peak of cos(x - 0.7)
        xs = np.array([x0 - 1.4 * step, x0 - 0.4 * step, x0 + 0.6 * step])
        ys = np.cos(xs - x0)
        found = refine_peak(*xs, *ys)
        assert found == pytest.approx(x0, abs=step ** 2)


class TestPeriodicPeaks:
    def test_two_harmonic_fringe_has_two_peaks_per_period(self):
        x = wrap_grid(1024)
        signal = 1.0 + np.cos(2.0 * x)
        locations = periodic_peak_locations(x, signal, 2.0 * math.pi)
        assert locations.size == 2
        assert locations == pytest.approx([0.0, math.pi], abs=1e-10)
        spacings = periodic_spacings(locations, 2.0 * math.pi)
        assert spacings == pytest.approx([math.pi, math.pi], abs=1e-10)

    def test_single_peak_spacing_is_empty(self):
        x = wrap_grid(256)
        locations = periodic_peak_locations(x, 1.0 + np.cos(x), 2.0 * math.pi)
        assert locations.size == 1
        assert periodic_spacings(locations, 2.0 * math.pi).size == 0

    def test_shifted_peak_is_refined_between_samples(self):
        x = wrap_grid(512)
        shift = 0.3 + 0.5 * (2.0 * math.pi / 512)  # deliberately off-grid
        locations = periodic_peak_locations(x, np.cos(x - shift), 2.0 * math.pi)
        assert locations.size == 1
        assert locations[0] == pytest.approx(shift, abs=1e-6)

    def test_rejects_mismatched_arrays(self):
        with pytest.raises(InvalidParam):
            periodic_peak_locations(np.arange(8), np.arange(7), 2.0 * math.pi)


class TestInteriorPeaks:
    def test_envelope_modulated_fringe(self):
        x = np.linspace(-2.0 * math.pi, 2.0 * math.pi, 2001)
        signal = np.sinc(x / (2.0 * math.pi)) ** 2 * (1.0 + np.cos(x))
        locations = interior_peak_locations(x, signal)
        # central peak dominates; side maxima exist beyond the first null
        assert np.any(np.abs(locations) < 1e-3)


class TestExtractVisibility:
    def test_full_contrast(self):
        x = wrap_grid(128)
        assert extract_visibility(1.0 + np.cos(x)) == pytest.approx(1.0, abs=1e-12)

    def test_partial_contrast(self):
        x = wrap_grid(128)
        assert extract_visibility(1.0 + 0.25 * np.cos(x)) == pytest.approx(0.25, abs=1e-12)

    def test_zero_signal_returns_none(self):
        assert extract_visibility(np.zeros(16)) is None
