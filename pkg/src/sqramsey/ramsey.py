"""Perturbative Ramsey excitation probabilities for two-mode field states.

Both interaction zones couple the atom to the joint mode
``J = a + b * exp(i * delta * T)``; to lowest nonvanishing order the
single- and double-excitation probabilities are the normally ordered
moments ``<J^dag J>`` and ``<J^dag^2 J^2>`` scaled by the single-zone
envelope ``g^2 tau^2 sinc^2(delta tau / 2)`` and its square.
"""

from __future__ import annotations

import math
import threading
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import AccuracyError, InvalidParam
from .fock import TwoModeState, normally_ordered_moment

# Beyond this pulse area the dropped higher orders reach the percent scale.
PERTURBATIVE_PULSE_AREA = 0.3

# Probabilities more negative than this cannot be explained by rounding.
NEGATIVE_PROB_FLOOR = -1e-12


class PerturbativeRegimeWarning(UserWarning):
    """The pulse area is large enough that higher orders are not negligible."""


@dataclass(frozen=True)
class RamseyConfig:
    """Drive and timing parameters of the two-zone sequence.

    ``g``: atom-field coupling (> 0), ``tau``: zone duration (> 0),
    ``T``: free-evolution time between zones (>= 0), ``delta``: detuning.
    """

    g: float
    tau: float
    T: float
    delta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.g) or self.g <= 0.0:
            raise InvalidParam(f"coupling g must be finite and > 0, got {self.g}")
        if not math.isfinite(self.tau) or self.tau <= 0.0:
            raise InvalidParam(f"zone duration tau must be finite and > 0, got {self.tau}")
        if not math.isfinite(self.T) or self.T < 0.0:
            raise InvalidParam(f"free-evolution time T must be finite and >= 0, got {self.T}")
        if not math.isfinite(self.delta):
            raise InvalidParam(f"detuning delta must be finite, got {self.delta}")
        if self.g * self.tau > PERTURBATIVE_PULSE_AREA:
            warnings.warn(
                f"pulse area g*tau = {self.g * self.tau:.3g} exceeds "
                f"{PERTURBATIVE_PULSE_AREA}; second-order results lose accuracy",
                PerturbativeRegimeWarning,
                stacklevel=3,
            )

    @property
    def fringe_phase(self) -> float:
        """Accumulated phase ``delta * T`` between the two zones."""
        return self.delta * self.T


@dataclass(frozen=True)
class ExcitationResult:
    """Excitation probabilities and their supporting quantities."""

    p_e: float
    p_ee: float
    fluctuation: float
    envelope: float


class ClampDiagnostics:
    """Counts tiny negative probabilities clamped to zero (float noise only)."""

    def __init__(self) -> None:
        self._lock = threading.Lock()
        self._count = 0

    @property
    def count(self) -> int:
        return self._count

    def record(self) -> None:
        with self._lock:
            self._count += 1

    def reset(self) -> None:
        with self._lock:
            self._count = 0


clamp_diagnostics = ClampDiagnostics()


def envelope(config: RamseyConfig) -> float:
    """Single-zone excitation envelope ``g^2 tau^2 sinc^2(delta tau / 2)``."""
    # np.sinc(x) = sin(pi x)/(pi x), so pass delta*tau/(2*pi).
    card = float(np.sinc(config.delta * config.tau / (2.0 * math.pi)))
    return (config.g * config.tau) ** 2 * card ** 2


def joint_excitation_moments(state: TwoModeState, order: int) -> np.ndarray:
    """Table ``M[l, j] = <a^dag^(k-l) a^(k-j) b^dag^l b^j>`` for ``k = order``.

    Expanding ``J = a + beta b`` with ``beta = exp(i delta T)`` makes
    ``<J^dag^k J^k>`` a polynomial in ``beta``; the table carries every
    state-dependent coefficient, so a detuning scan reuses one table.
    """
    if order < 1:
        raise InvalidParam(f"moment order must be >= 1, got {order}")
    size = order + 1
    table = np.zeros((size, size), dtype=np.complex128)
    for l in range(size):
        for j in range(size):
            table[l, j] = normally_ordered_moment(state, order - l, order - j, l, j)
    return table


def joint_moment_value(table: np.ndarray, beta: complex | np.ndarray) -> np.ndarray:
    """Evaluate ``<J^dag^k J^k>`` from a moment table at ``beta = e^{i delta T}``.

    Accepts a scalar or an array of phases; returns the matching real array.
    """
    order = table.shape[0] - 1
    binom = np.array([math.comb(order, l) for l in range(order + 1)], dtype=np.float64)
    weights = np.outer(binom, binom) * table
    beta_arr = np.asarray(beta, dtype=np.complex128)
    powers = beta_arr[..., None] ** np.arange(order + 1)
    value = np.einsum("...l,...j,lj->...", np.conjugate(powers), powers, weights)
    return np.real(value)


def single_excitation_prob(state: TwoModeState, config: RamseyConfig) -> float:
    """``p_e`` after both zones, to lowest order in the coupling."""
    table = joint_excitation_moments(state, 1)
    return _scaled_probability(table, config, power=1)


def double_excitation_prob(state: TwoModeState, config: RamseyConfig) -> float:
    """``p_ee`` (both atoms excited), to lowest order in the coupling."""
    table = joint_excitation_moments(state, 2)
    return _scaled_probability(table, config, power=2)


def excitation_fluctuation(state: TwoModeState, config: RamseyConfig) -> float:
    """Correlation measure ``p_ee - p_e^2``."""
    result = excitation_result(state, config)
    return result.fluctuation


def excitation_result(state: TwoModeState, config: RamseyConfig) -> ExcitationResult:
    """Bundle ``p_e``, ``p_ee``, their fluctuation and the envelope."""
    table_1 = joint_excitation_moments(state, 1)
    table_2 = joint_excitation_moments(state, 2)
    p_e = _scaled_probability(table_1, config, power=1)
    p_ee = _scaled_probability(table_2, config, power=2)
    return ExcitationResult(
        p_e=p_e,
        p_ee=p_ee,
        fluctuation=p_ee - p_e ** 2,
        envelope=envelope(config),
    )


def _scaled_probability(table: np.ndarray, config: RamseyConfig, *, power: int) -> float:
    beta = complex(math.cos(config.fringe_phase), math.sin(config.fringe_phase))
    raw = float(joint_moment_value(table, beta)) * envelope(config) ** power
    return clamp_probability(raw)


def clamp_probability(value: float) -> float:
    """Clamp float-noise negatives to zero; reject anything more negative.

    Raises
    ------
    AccuracyError
        If ``value < -1e-12``, which indicates a real defect upstream.
    """
    if value < NEGATIVE_PROB_FLOOR:
        raise AccuracyError(
            f"probability {value:.3e} is below the rounding floor {NEGATIVE_PROB_FLOOR:.1e}"
        )
    if value < 0.0:
        clamp_diagnostics.record()
        return 0.0
    return value


def clamp_probabilities(values: np.ndarray) -> np.ndarray:
    """Vectorized :func:`clamp_probability` for scan tables."""
    arr = np.asarray(values, dtype=np.float64)
    smallest = float(arr.min()) if arr.size else 0.0
    if smallest < NEGATIVE_PROB_FLOOR:
        raise AccuracyError(
            f"probability {smallest:.3e} is below the rounding floor {NEGATIVE_PROB_FLOOR:.1e}"
        )
    if smallest < 0.0:
        clamp_diagnostics.record()
    return np.maximum(arr, 0.0)
