"""Closed-form fringe and visibility laws.

Every function is a direct transcription of the second-order results for a
two-mode squeezed drive and for the matched coherent baseline (one photon on
average, split evenly between the modes).  All accept scalars or NumPy
arrays; ``phase`` always means the accumulated fringe phase ``delta * T``
and ``envelope`` the single-zone factor ``g^2 tau^2 sinc^2(delta tau / 2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParam


def squeezed_pe(r, envelope):
    """``p_e = 2 * envelope * sinh^2(r)``: flat in the fringe phase."""
    return 2.0 * envelope * np.sinh(r) ** 2


def squeezed_pee(r, phase, envelope):
    """``p_ee`` for the squeezed drive, raw moment form.

    ``envelope^2 * [ sinh^2(2r)/2 * cos(2*phase) + 8 sinh^4 r + sinh^2(2r)/2 ]``.
    """
    sinh2 = np.sinh(r) ** 2
    half_sq = 0.5 * np.sinh(2.0 * r) ** 2
    return envelope ** 2 * (half_sq * np.cos(2.0 * np.asarray(phase)) + 8.0 * sinh2 ** 2 + half_sq)


def squeezed_pee_factored(r, phase, envelope):
    """Same ``p_ee`` factored as ``(1 + V cos(2*phase)) * (offset)``."""
    sinh2 = np.sinh(r) ** 2
    offset = 8.0 * sinh2 ** 2 + 0.5 * np.sinh(2.0 * r) ** 2
    return envelope ** 2 * (1.0 + visibility(r) * np.cos(2.0 * np.asarray(phase))) * offset


def visibility(r):
    """Fringe visibility ``V = 1 / (1 + 4 tanh^2 r)`` of the squeezed drive."""
    return 1.0 / (1.0 + 4.0 * np.tanh(r) ** 2)


def coherent_pe(phase, envelope):
    """Baseline ``p_e = envelope * (1 + cos(phase))``."""
    return envelope * (np.cos(phase) + 1.0)


def coherent_pee(phase, envelope):
    """Baseline ``p_ee = envelope^2 * (1 + cos(phase))^2``."""
    return envelope ** 2 * (np.cos(phase) + 1.0) ** 2


def coherent_pee_expanded(phase, envelope):
    """Baseline ``p_ee`` expanded into its harmonics: mean 3/2, cos 2, cos2 1/2."""
    phase = np.asarray(phase)
    return envelope ** 2 * (0.5 * np.cos(2.0 * phase) + 2.0 * np.cos(phase) + 1.5)


@dataclass(frozen=True)
class MomentClosedForms:
    """Closed forms of the second-order field moments after the 50/50 splitter."""

    pair_correlation_a: float
    pair_correlation_b: float
    mean_photon_product: float
    cross_pair_correlation: float
    linear_cross_moment: float

    def as_dict(self) -> dict[str, float]:
        return {
            "pair_correlation_a": self.pair_correlation_a,
            "pair_correlation_b": self.pair_correlation_b,
            "mean_photon_product": self.mean_photon_product,
            "cross_pair_correlation": self.cross_pair_correlation,
            "linear_cross_moment": self.linear_cross_moment,
        }


# Grid-sum counterpart of each closed form: ladder powers (p, q, u, v) plus
# an optional second factor for the product-of-means entry.
MOMENT_LADDER_POWERS: dict[str, tuple[tuple[int, int, int, int], ...]] = {
    "pair_correlation_a": ((2, 2, 0, 0),),
    "pair_correlation_b": ((0, 0, 2, 2),),
    "mean_photon_product": ((1, 1, 0, 0), (0, 0, 1, 1)),
    "cross_pair_correlation": ((2, 0, 0, 2),),
    "linear_cross_moment": ((1, 0, 0, 1),),
}


def moment_closed_forms(r: float) -> MomentClosedForms:
    """Second-order moments of each balanced-splitter output of the squeezed drive.

    ``<a^dag^2 a^2> = <b^dag^2 b^2> = sinh^2 r + 3 sinh^4 r``,
    ``<a^dag a><b^dag b> = sinh^4 r``, ``<a^dag^2 b^2> = sinh^2 r cosh^2 r``
    and every first-order cross moment vanishes.
    """
    if r < 0.0:
        raise InvalidParam(f"squeeze magnitude must be >= 0, got {r}")
    sinh2 = float(np.sinh(r) ** 2)
    cosh2 = float(np.cosh(r) ** 2)
    pair = sinh2 + 3.0 * sinh2 ** 2
    return MomentClosedForms(
        pair_correlation_a=pair,
        pair_correlation_b=pair,
        mean_photon_product=sinh2 ** 2,
        cross_pair_correlation=sinh2 * cosh2,
        linear_cross_moment=0.0,
    )
