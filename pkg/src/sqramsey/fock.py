"""Truncated two-mode Fock-space engine.

States live on an ``N x N`` amplitude grid ``c[n, m]`` for photon numbers
``n, m < N`` (``N`` is the per-mode cutoff).  Constructions use closed-form
amplitude series evaluated in log space; the beam splitter is applied exactly
within each total-photon-number block; normally ordered moments are direct
grid sums.  A dense matrix-exponential oracle (:func:`oracle_unitary`)
provides an independent route to the same unitaries for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.linalg import eigh_tridiagonal, expm
from scipy.special import gammaln
from scipy.stats import poisson

from .errors import BudgetExceeded, CutoffTooSmall, InvalidParam

TWO_PI = 2.0 * math.pi

# Default tolerances: norm defects beyond EPS_NORM are treated as bugs,
# truncation deficits beyond EPS_TRUNC as inadequate cutoffs.
EPS_NORM = 1e-10
EPS_TRUNC = 1e-10

# Default workspace ceiling for the dense oracle (a few hundred MB keeps the
# N*N x N*N exponential usable up to roughly N = 45 on commodity hardware).
DEFAULT_ORACLE_BUDGET_BYTES = 512 * 1024 ** 2

MIN_CUTOFF = 2


@dataclass(frozen=True)
class SqueezeParams:
    """Two-mode squeeze parameter ``xi = r * exp(i * phi)``.

    ``r`` must be non-negative; ``phi`` is stored reduced into ``[0, 2*pi)``.
    """

    r: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.r) or self.r < 0.0:
            raise InvalidParam(f"squeeze magnitude must be finite and >= 0, got {self.r}")
        if not math.isfinite(self.phi):
            raise InvalidParam(f"squeeze phase must be finite, got {self.phi}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)

    @property
    def xi(self) -> complex:
        return self.r * complex(math.cos(self.phi), math.sin(self.phi))


@dataclass(frozen=True)
class BeamSplitterAngle:
    """Mixing angle of ``U = exp[i * theta * (a^dag b + b^dag a)]``."""

    theta: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.theta):
            raise InvalidParam(f"beam splitter angle must be finite, got {self.theta}")


# 50/50 splitter used throughout the Ramsey chain.
BALANCED = BeamSplitterAngle(math.pi / 4.0)


@dataclass(frozen=True)
class TwoModeState:
    """Immutable amplitude grid of a (possibly truncated) two-mode state."""

    cutoff: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if self.cutoff < MIN_CUTOFF:
            raise InvalidParam(f"cutoff must be >= {MIN_CUTOFF}, got {self.cutoff}")
        arr = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if arr.shape != (self.cutoff, self.cutoff):
            raise InvalidParam(
                f"amplitude grid must have shape {(self.cutoff, self.cutoff)}, got {arr.shape}"
            )
        if not np.all(np.isfinite(arr.view(np.float64))):
            raise InvalidParam("amplitude grid contains non-finite entries")
        arr.setflags(write=False)
        object.__setattr__(self, "amplitudes", arr)

    @property
    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def probabilities(self) -> np.ndarray:
        """Joint photon-number distribution ``P(n, m) = |c[n, m]|^2``."""
        return np.abs(self.amplitudes) ** 2


Generator = Union[SqueezeParams, BeamSplitterAngle]


def vacuum_state(cutoff: int) -> TwoModeState:
    """``|0, 0>`` on an ``cutoff x cutoff`` grid."""
    _check_cutoff(cutoff)
    amp = np.zeros((cutoff, cutoff), dtype=np.complex128)
    amp[0, 0] = 1.0
    return TwoModeState(cutoff, amp)


def two_mode_squeezed_vacuum(
    params: SqueezeParams, cutoff: int, *, eps_trunc: float = EPS_TRUNC
) -> TwoModeState:
    """Two-mode squeezed vacuum ``exp(xi a^dag b^dag - xi* a b)|0,0>``.

    Amplitudes follow the Schmidt series ``c[n, n] = (e^{i phi} tanh r)^n / cosh r``.
    The truncated norm deficit is exactly ``tanh(r)^(2 * cutoff)``; if it
    exceeds ``eps_trunc`` the cutoff is rejected.

    Raises
    ------
    CutoffTooSmall
        If ``tanh(r)^(2 * cutoff) >= eps_trunc``.
    """
    _check_cutoff(cutoff)
    require_squeeze_cutoff(params, cutoff, eps_trunc=eps_trunc)
    t = math.tanh(params.r)
    n = np.arange(cutoff)
    ratio = t * np.exp(1j * params.phi)
    amp = np.zeros((cutoff, cutoff), dtype=np.complex128)
    amp[n, n] = ratio ** n / math.cosh(params.r)
    return TwoModeState(cutoff, amp)


def require_squeeze_cutoff(
    params: SqueezeParams, cutoff: int, *, eps_trunc: float = EPS_TRUNC
) -> None:
    """Reject cutoffs whose squeezed-state deficit ``tanh(r)^(2N)`` is too large."""
    deficit = math.tanh(params.r) ** (2 * cutoff)
    if deficit >= eps_trunc:
        raise CutoffTooSmall(
            f"cutoff {cutoff} leaves truncation deficit {deficit:.3e} >= {eps_trunc:.1e} "
            f"for r={params.r}"
        )


def coherent_product_state(
    alpha_a: complex, alpha_b: complex, cutoff: int, *, eps_trunc: float = EPS_TRUNC
) -> TwoModeState:
    """Product of coherent states ``|alpha_a> (x) |alpha_b>``.

    Amplitudes are evaluated in log space so large ``|alpha|`` does not
    overflow the factorials.  The retained probability mass is checked
    against ``eps_trunc`` via the exact Poisson tail per mode.
    """
    _check_cutoff(cutoff)
    alpha_a = complex(alpha_a)
    alpha_b = complex(alpha_b)
    for label, alpha in (("alpha_a", alpha_a), ("alpha_b", alpha_b)):
        if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
            raise InvalidParam(f"{label} must be finite, got {alpha}")
    tail = _coherent_tail(alpha_a, cutoff) + _coherent_tail(alpha_b, cutoff)
    if tail >= eps_trunc:
        raise CutoffTooSmall(
            f"cutoff {cutoff} leaves coherent tail mass {tail:.3e} >= {eps_trunc:.1e} "
            f"for alphas ({alpha_a}, {alpha_b})"
        )
    col_a = _coherent_column(alpha_a, cutoff)
    col_b = _coherent_column(alpha_b, cutoff)
    return TwoModeState(cutoff, np.outer(col_a, col_b))


def _coherent_column(alpha: complex, cutoff: int) -> np.ndarray:
    n = np.arange(cutoff)
    mag2 = abs(alpha) ** 2
    if mag2 == 0.0:
        col = np.zeros(cutoff, dtype=np.complex128)
        col[0] = 1.0
        return col
    log_mod = -0.5 * mag2 + 0.5 * n * math.log(mag2) - 0.5 * gammaln(n + 1.0)
    phase = n * np.angle(alpha)
    return np.exp(log_mod + 1j * phase)


def _coherent_tail(alpha: complex, cutoff: int) -> float:
    mu = abs(alpha) ** 2
    if mu == 0.0:
        return 0.0
    # P(n >= cutoff) for Poisson(mu).
    return float(poisson.sf(cutoff - 1, mu))


def squeezed_vacuum_product(
    params_a: SqueezeParams, params_b: SqueezeParams, cutoff: int
) -> TwoModeState:
    """Product of two single-mode squeezed vacua (even Fock series per mode)."""
    _check_cutoff(cutoff)
    col_a = _single_mode_squeezed_column(params_a, cutoff)
    col_b = _single_mode_squeezed_column(params_b, cutoff)
    return TwoModeState(cutoff, np.outer(col_a, col_b))


def balanced_split_factorization(params: SqueezeParams) -> tuple[SqueezeParams, SqueezeParams]:
    """Per-mode squeeze parameters of the 50/50 beam splitter output.

    Sending a two-mode squeezed vacuum with parameter ``xi`` through the
    balanced splitter produces a product of single-mode squeezed vacua; each
    factor carries parameter ``i * xi`` (phase advanced by pi/2, same
    magnitude).  Confirmed against the dense oracle in the tests.
    """
    shifted = SqueezeParams(params.r, params.phi + math.pi / 2.0)
    return shifted, shifted


def _single_mode_squeezed_column(params: SqueezeParams, cutoff: int) -> np.ndarray:
    """Amplitudes of ``exp[(zeta/2) a^dag^2 - (zeta*/2) a^2]|0>`` up to the cutoff.

    ``c[2k] = (e^{i delta} tanh s / 2)^k * sqrt((2k)!) / (k! sqrt(cosh s))``;
    evaluated in log space to keep large ``k`` exact to float precision.
    """
    s = params.r
    col = np.zeros(cutoff, dtype=np.complex128)
    k = np.arange((cutoff + 1) // 2)
    t = math.tanh(s)
    if t == 0.0:
        col[0] = 1.0
        return col
    log_mod = (
        k * math.log(t / 2.0)
        + 0.5 * gammaln(2.0 * k + 1.0)
        - gammaln(k + 1.0)
        - 0.5 * math.log(math.cosh(s))
    )
    phase = k * params.phi
    col[2 * k] = np.exp(log_mod + 1j * phase)
    return col


def apply_beam_splitter(state: TwoModeState, angle: BeamSplitterAngle) -> TwoModeState:
    """Apply ``exp[i theta (a^dag b + b^dag a)]`` exactly per total-number block.

    The generator conserves ``n + m``, so the unitary is block diagonal over
    anti-diagonals of the grid.  Each block is the full ``(n+1)``-dimensional
    rotation of the untruncated operator (real symmetric tridiagonal, solved
    by ``eigh_tridiagonal``); components rotated past the grid corner are
    dropped, so states with mass near ``n + m = 2*(cutoff-1)`` lose norm.
    Callers should size the cutoff so that corner mass is negligible.
    """
    n_max = state.cutoff - 1
    amp = np.asarray(state.amplitudes)
    out = np.zeros_like(amp)
    for total in range(2 * n_max + 1):
        k_lo = max(0, total - n_max)
        k_hi = min(total, n_max)
        ks = np.arange(k_lo, k_hi + 1)
        vec = amp[ks, total - ks]
        if not np.any(vec):
            out[ks, total - ks] = 0.0
            continue
        block = _block_unitary(total, angle.theta)
        out[ks, total - ks] = block[np.ix_(ks, ks)] @ vec
    return TwoModeState(state.cutoff, out)


def _block_unitary(total: int, theta: float) -> np.ndarray:
    """Full unitary of the beam splitter on the ``n + m = total`` block."""
    if total == 0:
        return np.ones((1, 1), dtype=np.complex128)
    k = np.arange(total)
    # Generator matrix element <k+1, total-k-1| (a^dag b + b^dag a) |k, total-k>.
    off = np.sqrt((k + 1.0) * (total - k))
    eigvals, eigvecs = eigh_tridiagonal(np.zeros(total + 1), off)
    return (eigvecs * np.exp(1j * theta * eigvals)) @ eigvecs.T


def normally_ordered_moment(state: TwoModeState, p: int, q: int, u: int, v: int) -> complex:
    """``<a^dag^p a^q b^dag^u b^v>`` as an exact sum over the truncated grid.

    The matrix element connects ket index ``(n, m)`` to bra index
    ``(n - q + p, m - v + u)`` with weight
    ``sqrt(ff(n, q) * ff(n - q + p, p)) * sqrt(ff(m, v) * ff(m - v + u, u))``
    where ``ff`` is the falling factorial.  Terms whose bra index falls
    outside the grid are genuinely absent from the truncated state.
    """
    for label, k in (("p", p), ("q", q), ("u", u), ("v", v)):
        if not isinstance(k, (int, np.integer)) or k < 0:
            raise InvalidParam(f"ladder power {label} must be a non-negative integer, got {k}")
    cutoff = state.cutoff
    n_lo, n_hi = _index_window(cutoff, p, q)
    m_lo, m_hi = _index_window(cutoff, u, v)
    if n_hi < n_lo or m_hi < m_lo:
        return 0j
    n = np.arange(n_lo, n_hi + 1)
    m = np.arange(m_lo, m_hi + 1)
    w_a = np.sqrt(_falling(n, q) * _falling(n - q + p, p))
    w_b = np.sqrt(_falling(m, v) * _falling(m - v + u, u))
    ket = state.amplitudes[n_lo : n_hi + 1, m_lo : m_hi + 1]
    bra = state.amplitudes[n_lo - q + p : n_hi - q + p + 1, m_lo - v + u : m_hi - v + u + 1]
    return complex(np.einsum("nm,nm,n,m->", np.conjugate(bra), ket, w_a, w_b))


def _index_window(cutoff: int, raise_by: int, lower_by: int) -> tuple[int, int]:
    """Ket index range for which both ket and shifted bra index stay on-grid."""
    lo = lower_by
    hi = min(cutoff - 1, cutoff - 1 - raise_by + lower_by)
    return lo, hi


def _falling(values: np.ndarray, k: int) -> np.ndarray:
    out = np.ones(values.shape, dtype=np.float64)
    for i in range(k):
        out = out * (values - i)
    return out


def photon_number_marginal(state: TwoModeState, mode: str) -> np.ndarray:
    """Marginal photon-number distribution of one mode (``"a"`` or ``"b"``)."""
    probs = state.probabilities()
    key = mode.lower()
    if key == "a":
        return probs.sum(axis=1)
    if key == "b":
        return probs.sum(axis=0)
    raise InvalidParam(f"mode must be 'a' or 'b', got {mode!r}")


def photon_parity(state: TwoModeState, mode: str) -> float:
    """``<(-1)^n>`` of one mode's marginal distribution."""
    marginal = photon_number_marginal(state, mode)
    signs = np.where(np.arange(marginal.size) % 2 == 0, 1.0, -1.0)
    return float(signs @ marginal)


def total_number_distribution(state: TwoModeState) -> np.ndarray:
    """Distribution of ``n + m`` over ``0 .. 2*(cutoff-1)``."""
    probs = state.probabilities()
    out = np.zeros(2 * state.cutoff - 1)
    flipped = probs[:, ::-1]
    for total in range(out.size):
        out[total] = np.trace(flipped, offset=state.cutoff - 1 - total)
    return out


def fidelity(first: TwoModeState, second: TwoModeState) -> float:
    """Normalized overlap ``|<u|v>|^2 / (|u|^2 |v|^2)``."""
    if first.cutoff != second.cutoff:
        raise InvalidParam(
            f"states live on different grids (cutoffs {first.cutoff} and {second.cutoff})"
        )
    denom = first.norm_squared * second.norm_squared
    if denom == 0.0:
        raise InvalidParam("fidelity of a zero-norm state is undefined")
    overlap = np.vdot(first.amplitudes, second.amplitudes)
    return float(abs(overlap) ** 2 / denom)


def oracle_unitary(
    state: TwoModeState,
    generator: Generator,
    *,
    memory_budget_bytes: int = DEFAULT_ORACLE_BUDGET_BYTES,
) -> TwoModeState:
    """Apply a squeeze or beam-splitter unitary via a dense matrix exponential.

    The generator is built from Kronecker-product ladder operators on the
    truncated ``N^2``-dimensional grid and exponentiated with
    ``scipy.linalg.expm``.  This is deliberately independent of the
    closed-form constructions and the blockwise splitter; agreement is only
    expected for states whose support stays clear of the grid boundary,
    because truncating the generator (rather than the state) distorts the
    topmost Fock levels.

    Raises
    ------
    BudgetExceeded
        If the dense workspace would exceed ``memory_budget_bytes``.
    """
    dim = state.cutoff * state.cutoff
    # expm needs several dense dim x dim temporaries; 6 is a safe multiplier.
    workspace = 16 * dim * dim * 6
    if workspace > memory_budget_bytes:
        raise BudgetExceeded(
            f"dense oracle at cutoff {state.cutoff} needs ~{workspace / 1e6:.0f} MB "
            f"> budget {memory_budget_bytes / 1e6:.0f} MB"
        )
    ladder = np.diag(np.sqrt(np.arange(1, state.cutoff)), 1).astype(np.complex128)
    eye = np.eye(state.cutoff, dtype=np.complex128)
    op_a = np.kron(ladder, eye)
    op_b = np.kron(eye, ladder)
    if isinstance(generator, SqueezeParams):
        xi = generator.xi
        pair = op_a.conj().T @ op_b.conj().T
        gen = xi * pair - np.conjugate(xi) * (op_b @ op_a)
    elif isinstance(generator, BeamSplitterAngle):
        cross = op_a.conj().T @ op_b
        gen = 1j * generator.theta * (cross + cross.conj().T)
    else:
        raise InvalidParam(f"unsupported generator {generator!r}")
    unitary = expm(gen)
    flat = unitary @ state.amplitudes.reshape(-1)
    return TwoModeState(state.cutoff, flat.reshape(state.cutoff, state.cutoff))


def tmsv_min_cutoff(r: float, *, eps: float = 1e-12) -> int:
    """Smallest cutoff whose truncation deficit ``tanh(r)^(2N)`` is below ``eps``."""
    if r < 0.0:
        raise InvalidParam(f"squeeze magnitude must be >= 0, got {r}")
    t = math.tanh(r)
    if t == 0.0:
        return MIN_CUTOFF
    # smallest integer N with t^(2N) < eps, i.e. N > log(eps) / (2 log t)
    needed = math.floor(math.log(eps) / (2.0 * math.log(t))) + 1
    return max(MIN_CUTOFF, int(needed))


def moment_adequate_cutoff(
    r: float, *, eps: float = 1e-10, weight_power: int = 2, floor: int = 8
) -> int:
    """Cutoff sized so truncated tails cannot bias low-order moments.

    Moment sums weight the tail by polynomial factors, so the criterion is
    ``tanh(r)^N * N^weight_power < eps`` rather than the bare state deficit.
    """
    if r < 0.0:
        raise InvalidParam(f"squeeze magnitude must be >= 0, got {r}")
    t = math.tanh(r)
    cutoff = max(floor, MIN_CUTOFF)
    if t == 0.0:
        return cutoff
    while t ** cutoff * cutoff ** weight_power >= eps:
        cutoff += 1
        if cutoff > 10_000:
            raise InvalidParam(f"no practical cutoff reaches eps={eps} for r={r}")
    return cutoff


def coherent_min_cutoff(alpha_a: complex, alpha_b: complex, *, eps: float = 1e-12) -> int:
    """Smallest cutoff keeping both coherent Poisson tails below ``eps/2``."""
    cutoff = MIN_CUTOFF
    while _coherent_tail(alpha_a, cutoff) + _coherent_tail(alpha_b, cutoff) >= eps:
        cutoff += 1
        if cutoff > 10_000:
            raise InvalidParam(f"no practical cutoff reaches eps={eps} for {alpha_a}, {alpha_b}")
    return cutoff


def _check_cutoff(cutoff: int) -> None:
    if not isinstance(cutoff, (int, np.integer)) or cutoff < MIN_CUTOFF:
        raise InvalidParam(f"cutoff must be an integer >= {MIN_CUTOFF}, got {cutoff!r}")
