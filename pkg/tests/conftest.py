import pytest

from sqramsey import BALANCED, SqueezeParams, apply_beam_splitter, two_mode_squeezed_vacuum


@pytest.fixture(scope="session")
def split_r03():
    """Balanced-splitter output of the r=0.3 pair state at cutoff 32."""
    state = two_mode_squeezed_vacuum(SqueezeParams(0.3), 32)
    return apply_beam_splitter(state, BALANCED)
