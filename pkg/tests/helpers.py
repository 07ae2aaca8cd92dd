"""Shared test utilities and frozen reference values.

Frozen constants were produced by evaluating the closed forms / independent
oracles named next to each value; tests compare the package against these
literals so a silent formula regression cannot hide.
"""

import numpy as np

from sqramsey import TwoModeState

# tanh(0.3)/cosh(0.3): leading off-vacuum amplitude of the r=0.3 pair state.
C11_R03 = 0.2786777761597717
# tanh(0.3)^2/cosh(0.3)
C22_R03 = 0.08118235100530276
# sinh(0.3)^2
SINH2_R03 = 0.09273260912113383
# sinh(0.3)^2 + 3 sinh(0.3)^4
PAIR_R03 = 0.11853061950437283
# sinh(0.3)^4
SINH4_R03 = 0.008599336794412995
# sinh(0.3)^2 cosh(0.3)^2
CROSS_R03 = 0.10133194591554683
# 2 sinh(0.3)^2
TWO_SINH2_R03 = 0.18546521824226767
# 8 sinh(0.3)^4 + sinh(0.6)^2 / 2
PEE_OFFSET_R03 = 0.2714585861863976
# 8 sinh(0.3)^4
EIGHT_SINH4_R03 = 0.06879469435530396
# 4 sinh(0.3)^4
FOUR_SINH4_R03 = 0.03439734717765198
# 1 / (1 + 4 tanh(0.3)^2)
VIS_R03 = 0.7465738869351292
# 1 / (1 + 4 tanh(5)^2): the deep-squeezing floor is 1/5
VIS_R5 = 0.20002905753804034
# sinh(0.8)^4
SINH4_R08 = 0.6220985394705397
# 2 sinh(0.8)^2
TWO_SINH2_R08 = 1.5774644711948853
# sinh(0.8)^2 + 3 sinh(0.8)^4
PAIR_R08 = 2.655027854009062
# (2/pi)^2: envelope at delta = pi with g = tau = 1
ENVELOPE_AT_PI = 0.40528473456935116
# exp(-2): parity of a coherent state with |alpha|^2 = 1
COHERENT_PARITY = 0.1353352832366127


def decayed_random_state(cutoff: int, seed: int = 7, rate: float = 0.5) -> TwoModeState:
    """Random state whose amplitudes decay exponentially away from the origin.

    Keeps the grid-corner mass small (but not zero) so the blockwise splitter
    and the truncated-generator oracle agree at fidelity level.
    """
    rng = np.random.default_rng(seed)
    raw = rng.normal(size=(cutoff, cutoff)) + 1j * rng.normal(size=(cutoff, cutoff))
    weights = np.exp(-rate * (np.arange(cutoff)[:, None] + np.arange(cutoff)[None, :]))
    amplitudes = raw * weights
    amplitudes /= np.linalg.norm(amplitudes)
    return TwoModeState(cutoff, amplitudes)


def corner_free_random_state(cutoff: int, seed: int = 7, rate: float = 0.2) -> TwoModeState:
    """Random state with zero weight at total photon number >= cutoff.

    On such states every total-number block fits inside the grid, so the
    blockwise splitter is exactly unitary and matches the dense oracle to
    rounding.
    """
    base = decayed_random_state(cutoff, seed=seed, rate=rate)
    m, n = np.meshgrid(np.arange(cutoff), np.arange(cutoff), indexing="ij")
    amplitudes = np.where(m + n < cutoff, base.amplitudes, 0.0)
    amplitudes = amplitudes / np.linalg.norm(amplitudes)
    return TwoModeState(cutoff, amplitudes)


def embed_state(state: TwoModeState, cutoff: int) -> TwoModeState:
    """Zero-pad a state onto a larger grid (total photon support unchanged)."""
    if cutoff < state.cutoff:
        raise ValueError("can only embed into a larger grid")
    amplitudes = np.zeros((cutoff, cutoff), dtype=np.complex128)
    amplitudes[: state.cutoff, : state.cutoff] = state.amplitudes
    return TwoModeState(cutoff, amplitudes)
