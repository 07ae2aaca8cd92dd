"""Closed-form fringe laws against frozen constants and each other."""

import math

import numpy as np
import pytest

from helpers import (
    CROSS_R03,
    EIGHT_SINH4_R03,
    FOUR_SINH4_R03,
    PAIR_R03,
    SINH2_R03,
    SINH4_R03,
    TWO_SINH2_R03,
    VIS_R03,
    VIS_R5,
)
from sqramsey import (
    InvalidParam,
    coherent_pe,
    coherent_pee,
    coherent_pee_expanded,
    moment_closed_forms,
    squeezed_pe,
    squeezed_pee,
    squeezed_pee_factored,
    visibility,
)

PHASES = np.linspace(-3.0 * math.pi, 3.0 * math.pi, 97)


class TestSqueezedForms:
    def test_pe_value(self):
        assert squeezed_pe(0.3, 1.0) == pytest.approx(TWO_SINH2_R03, rel=1e-14)
        assert squeezed_pe(0.0, 1.0) == 0.0

    def test_pe_broadcasts_over_envelope(self):
        env = np.array([0.5, 1.0, 2.0])
        assert np.allclose(squeezed_pe(0.3, env), env * TWO_SINH2_R03, rtol=1e-14)

    def test_pee_extremes(self):
        # at phase 0: sinh^2(2r) + 8 sinh^4 r; at pi/2 the cosine flips
        half_sq = 0.5 * math.sinh(0.6) ** 2
        assert squeezed_pee(0.3, 0.0, 1.0) == pytest.approx(
            2.0 * half_sq + EIGHT_SINH4_R03, rel=1e-14
        )
        assert squeezed_pee(0.3, math.pi / 2.0, 1.0) == pytest.approx(
            EIGHT_SINH4_R03, rel=1e-13
        )

    def test_factored_form_agrees_everywhere(self):
        for r in (0.05, 0.3, 0.8, 1.5):
            raw = squeezed_pee(r, PHASES, 1.0)
            factored = squeezed_pee_factored(r, PHASES, 1.0)
            assert np.allclose(raw, factored, rtol=1e-12)

    def test_pee_is_pi_periodic(self):
        assert np.allclose(
            squeezed_pee(0.3, PHASES, 1.0),
            squeezed_pee(0.3, PHASES + math.pi, 1.0),
            rtol=1e-12,
        )

    def test_pee_nonnegative(self):
        for r in (0.01, 0.3, 2.0):
            assert np.all(squeezed_pee(r, PHASES, 1.0) >= 0.0)


class TestVisibility:
    def test_frozen_values(self):
        assert visibility(0.3) == pytest.approx(VIS_R03, rel=1e-14)
        assert visibility(5.0) == pytest.approx(VIS_R5, rel=1e-14)

    def test_limits(self):
        assert visibility(0.0) == 1.0
        # tanh -> 1, so the floor is 1/5
        assert visibility(50.0) == pytest.approx(0.2, rel=1e-12)

    def test_monotone_decreasing(self):
        grid = np.linspace(0.0, 4.0, 200)
        values = visibility(grid)
        assert np.all(np.diff(values) < 0.0)

    def test_matches_pee_peak_to_trough_ratio(self):
        # independent route: V = (max - min) / (max + min) of the factored fringe
        for r in (0.1, 0.3, 1.2):
            top = squeezed_pee(r, 0.0, 1.0)
            bottom = squeezed_pee(r, math.pi / 2.0, 1.0)
            contrast = (top - bottom) / (top + bottom)
            assert contrast == pytest.approx(float(visibility(r)), rel=1e-12)


class TestCoherentForms:
    def test_pe_extremes(self):
        assert coherent_pe(0.0, 1.0) == 2.0
        assert coherent_pe(math.pi, 1.0) == pytest.approx(0.0, abs=1e-16)

    def test_pee_is_pe_squared_at_unit_envelope(self):
        assert np.allclose(
            coherent_pee(PHASES, 1.0), coherent_pe(PHASES, 1.0) ** 2, rtol=1e-14
        )

    def test_expanded_form_agrees(self):
        assert np.allclose(
            coherent_pee(PHASES, 1.0), coherent_pee_expanded(PHASES, 1.0), rtol=0.0, atol=1e-14
        )

    def test_coherent_period_is_two_pi(self):
        assert np.allclose(
            coherent_pee(PHASES, 1.0),
            coherent_pee(PHASES + 2.0 * math.pi, 1.0),
            atol=1e-13,
        )
        # but NOT pi-periodic, unlike the squeezed fringe
        assert not np.allclose(
            coherent_pee(PHASES, 1.0), coherent_pee(PHASES + math.pi, 1.0), atol=1e-3
        )


class TestMomentClosedForms:
    def test_frozen_values_at_r03(self):
        forms = moment_closed_forms(0.3)
        assert forms.pair_correlation_a == pytest.approx(PAIR_R03, rel=1e-14)
        assert forms.pair_correlation_b == pytest.approx(PAIR_R03, rel=1e-14)
        assert forms.mean_photon_product == pytest.approx(SINH4_R03, rel=1e-14)
        assert forms.cross_pair_correlation == pytest.approx(CROSS_R03, rel=1e-14)
        assert forms.linear_cross_moment == 0.0

    def test_vacuum_moments_vanish(self):
        forms = moment_closed_forms(0.0)
        assert all(value == 0.0 for value in forms.as_dict().values())

    def test_internal_identity(self):
        # sinh^2 r cosh^2 r = sinh^2(2r)/4 ties the cross moment to the fringe amplitude
        forms = moment_closed_forms(0.3)
        assert forms.cross_pair_correlation == pytest.approx(
            0.25 * math.sinh(0.6) ** 2, rel=1e-14
        )
        assert forms.mean_photon_product == pytest.approx(SINH2_R03 ** 2, rel=1e-14)
        assert FOUR_SINH4_R03 == pytest.approx(4.0 * forms.mean_photon_product, rel=1e-14)

    def test_rejects_negative_r(self):
        with pytest.raises(InvalidParam):
            moment_closed_forms(-0.5)

    def test_dict_round_trip(self):
        forms = moment_closed_forms(0.7)
        assert set(forms.as_dict()) == {
            "pair_correlation_a",
            "pair_correlation_b",
            "mean_photon_product",
            "cross_pair_correlation",
            "linear_cross_moment",
        }
