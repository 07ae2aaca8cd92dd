"""Scan orchestration: fringe tables, visibility sweeps, moment tables.

This is the layer the service endpoints and the CLI share.  It resolves a
request into concrete states and grids, runs the analytic and numeric routes
and packs the results into the response models.
"""

from __future__ import annotations

import math

import numpy as np

from . import analytic
from .analysis import extract_visibility
from .errors import CutoffTooSmall, InvalidParam
from .fock import (
    BALANCED,
    BeamSplitterAngle,
    SqueezeParams,
    TwoModeState,
    apply_beam_splitter,
    balanced_split_factorization,
    coherent_min_cutoff,
    coherent_product_state,
    moment_adequate_cutoff,
    normally_ordered_moment,
    require_squeeze_cutoff,
    squeezed_vacuum_product,
    two_mode_squeezed_vacuum,
    vacuum_state,
)
from .models import (
    BALANCED_THETA,
    FringeCurve,
    FringeSample,
    FringeScanResponse,
    MomentRow,
    MomentsRequest,
    MomentsResponse,
    ScanRequest,
    VisibilityRequest,
    VisibilityResponse,
    VisibilityRow,
)
from .ramsey import clamp_probabilities, joint_excitation_moments, joint_moment_value

# The factored closed form covers the balanced angle at any cutoff; away from
# it the blockwise splitter runs, whose cost grows like cutoff^4, so automatic
# cutoff selection refuses to push it past this size.
BLOCKWISE_CUTOFF_CAP = 192

# Auto-selected grids never exceed this (memory ceiling for product states).
AUTO_CUTOFF_CAP = 4096

COHERENT_ALPHA = math.sqrt(0.5)

FIG3_REQUEST = ScanRequest(
    state_kind="squeezed",
    r=0.3,
    phi=0.0,
    theta=BALANCED_THETA,
    g=0.05,
    tau=1.0,
    t_ratio=4.0,
    scan_variable="delta",
    scan_range=(-3.0 * math.pi, 3.0 * math.pi),
    points=481,
    method="both",
    preset="fig3",
)

FIG4_REQUEST = VisibilityRequest(r_lo=0.0, r_hi=2.0, points=41)


def resolve_preset(request: ScanRequest) -> ScanRequest:
    """Replace the request with its preset's canonical parameters."""
    if request.preset is None:
        return request
    if request.preset == "fig3":
        return FIG3_REQUEST
    raise InvalidParam(f"unknown preset {request.preset!r}")


def squeezed_drive_state(r: float, phi: float, theta: float, cutoff: int) -> TwoModeState:
    """The two-mode state entering the Ramsey zones for a squeezed drive.

    At the balanced angle the splitter output is built in its factored closed
    form (exactly the blockwise result, at any cutoff); other angles run the
    blockwise splitter.
    """
    params = SqueezeParams(r, phi)
    if theta == BALANCED_THETA:
        require_squeeze_cutoff(params, cutoff)
        factor_a, factor_b = balanced_split_factorization(params)
        return squeezed_vacuum_product(factor_a, factor_b, cutoff)
    state = two_mode_squeezed_vacuum(params, cutoff)
    return apply_beam_splitter(state, BeamSplitterAngle(theta))


def auto_cutoff(request: ScanRequest) -> int:
    """Grid size keeping truncation bias below the scan tolerances."""
    if request.state_kind == "squeezed":
        needed = moment_adequate_cutoff(request.r, eps=1e-10, weight_power=2, floor=16)
        if needed > AUTO_CUTOFF_CAP:
            raise CutoffTooSmall(
                f"r={request.r} needs cutoff {needed} > cap {AUTO_CUTOFF_CAP}"
            )
        if request.theta != BALANCED_THETA and needed > BLOCKWISE_CUTOFF_CAP:
            raise CutoffTooSmall(
                f"blockwise splitter at r={request.r} needs cutoff {needed} "
                f"> cap {BLOCKWISE_CUTOFF_CAP}; pass an explicit cutoff to override"
            )
        return needed
    if request.state_kind == "coherent-paper":
        return max(16, coherent_min_cutoff(COHERENT_ALPHA, COHERENT_ALPHA, eps=1e-13) + 8)
    return 4


def build_drive_state(request: ScanRequest) -> TwoModeState:
    """Materialize the state that drives the two zones."""
    if request.state_kind == "squeezed":
        cutoff = request.cutoff if request.cutoff is not None else auto_cutoff(request)
        return squeezed_drive_state(request.r, request.phi, request.theta, cutoff)
    if request.state_kind == "coherent-paper":
        cutoff = request.cutoff if request.cutoff is not None else auto_cutoff(request)
        return coherent_product_state(COHERENT_ALPHA, COHERENT_ALPHA, cutoff)
    if request.state_kind == "vacuum":
        return vacuum_state(request.cutoff if request.cutoff is not None else 4)
    if request.state_kind == "custom-file":
        return load_state_file(request.state_file, request.cutoff)
    raise InvalidParam(f"unknown state kind {request.state_kind!r}")


def load_state_file(path: str | None, cutoff: int | None) -> TwoModeState:
    """Load a two-mode amplitude grid from a ``.npy`` file.

    The array must be square, 2-d and normalized to ``1`` within ``1e-6``;
    it is renormalized exactly after the check.  ``cutoff``, when given,
    must match the stored grid.
    """
    if not path:
        raise InvalidParam("custom-file state needs a path")
    try:
        raw = np.load(path)
    except (OSError, ValueError) as exc:
        raise InvalidParam(f"cannot load state file {path!r}: {exc}") from exc
    arr = np.asarray(raw, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise InvalidParam(f"state file must hold a square 2-d grid, got shape {arr.shape}")
    if cutoff is not None and cutoff != arr.shape[0]:
        raise InvalidParam(
            f"requested cutoff {cutoff} does not match the stored grid size {arr.shape[0]}"
        )
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > 1e-6:
        raise InvalidParam(f"state file norm {norm:.8f} deviates from 1 by more than 1e-6")
    return TwoModeState(arr.shape[0], arr / norm)


def scan_grid(request: ScanRequest) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return ``(x, fringe_phase, envelope)`` arrays for the scan.

    A ``delta`` scan varies both the envelope and the phase ``delta * T``;
    a ``deltaT`` scan varies the phase alone with the envelope held at its
    resonant value ``g^2 tau^2``.
    """
    lo, hi = request.scan_range
    x = np.linspace(lo, hi, request.points)
    pulse = (request.g * request.tau) ** 2
    if request.scan_variable == "delta":
        phases = x * request.t_ratio * request.tau
        envelopes = pulse * np.sinc(x * request.tau / (2.0 * math.pi)) ** 2
    else:
        phases = x.copy()
        envelopes = np.full_like(x, pulse)
    return x, phases, envelopes


def _analytic_series(request: ScanRequest, phases: np.ndarray, envelopes: np.ndarray):
    if request.state_kind == "squeezed":
        if request.theta != BALANCED_THETA:
            raise InvalidParam(
                "closed forms hold at the balanced angle only; "
                "use method='numeric' for other theta"
            )
        p_e = analytic.squeezed_pe(request.r, envelopes)
        p_ee = analytic.squeezed_pee(request.r, phases, envelopes)
        return p_e, p_ee
    if request.state_kind == "coherent-paper":
        return (
            analytic.coherent_pe(phases, envelopes),
            analytic.coherent_pee(phases, envelopes),
        )
    if request.state_kind == "vacuum":
        return np.zeros_like(phases), np.zeros_like(phases)
    raise InvalidParam(f"no closed form for state kind {request.state_kind!r}")


def _numeric_series(state: TwoModeState, phases: np.ndarray, envelopes: np.ndarray):
    beta = np.exp(1j * phases)
    table_1 = joint_excitation_moments(state, 1)
    table_2 = joint_excitation_moments(state, 2)
    p_e = clamp_probabilities(envelopes * joint_moment_value(table_1, beta))
    p_ee = clamp_probabilities(envelopes ** 2 * joint_moment_value(table_2, beta))
    return p_e, p_ee


def _normalized(p_ee: np.ndarray) -> tuple[np.ndarray, bool]:
    peak = float(p_ee.max()) if p_ee.size else 0.0
    if peak == 0.0:
        return np.zeros_like(p_ee), True
    return p_ee / peak, False


def _curve(label: str, request: ScanRequest, x, phases, envelopes) -> FringeCurve:
    methods: list[str] = []
    if request.method in ("analytic", "both"):
        methods.append("analytic")
    if request.method in ("numeric", "both"):
        methods.append("numeric")
    series: dict[str, tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
    zero_amplitude = False
    for method in methods:
        if method == "analytic":
            p_e, p_ee = _analytic_series(request, phases, envelopes)
        else:
            state = build_drive_state(request)
            p_e, p_ee = _numeric_series(state, phases, envelopes)
        p_ee_norm, is_zero = _normalized(np.asarray(p_ee, dtype=np.float64))
        zero_amplitude = zero_amplitude or is_zero
        series[method] = (np.asarray(p_e, dtype=np.float64), p_ee, p_ee_norm)
    samples = []
    for i in range(x.size):
        for method in methods:
            p_e, p_ee, p_ee_norm = series[method]
            samples.append(
                FringeSample(
                    x=float(x[i]),
                    p_e=float(p_e[i]),
                    p_ee=float(p_ee[i]),
                    p_ee_norm=float(p_ee_norm[i]),
                    method=method,
                )
            )
    return FringeCurve(label=label, zero_amplitude=zero_amplitude, samples=samples)


def _envelope_curve(x: np.ndarray, envelopes: np.ndarray) -> FringeCurve:
    # The reference curve carries the single-zone quantities: first-order
    # p_e and the second-order pair probability envelope^2.
    p_ee = envelopes ** 2
    p_ee_norm, zero = _normalized(p_ee)
    samples = [
        FringeSample(
            x=float(x[i]),
            p_e=float(envelopes[i]),
            p_ee=float(p_ee[i]),
            p_ee_norm=float(p_ee_norm[i]),
            method="analytic",
        )
        for i in range(x.size)
    ]
    return FringeCurve(label="envelope", zero_amplitude=zero, samples=samples)


def fringe_scan(request: ScanRequest) -> FringeScanResponse:
    """Run a fringe scan; the fig3 preset emits both drives plus the envelope."""
    request = resolve_preset(request)
    x, phases, envelopes = scan_grid(request)
    if request.preset == "fig3":
        squeezed = _curve("squeezed", request, x, phases, envelopes)
        coherent_req = request.model_copy(update={"state_kind": "coherent-paper"})
        coherent = _curve("coherent", coherent_req, x, phases, envelopes)
        curves = [squeezed, coherent, _envelope_curve(x, envelopes)]
    else:
        curves = [_curve(request.state_kind, request, x, phases, envelopes)]
    return FringeScanResponse(
        request=request, scan_variable=request.scan_variable, curves=curves
    )


# Dense enough to land exactly on the extrema of cos(2 * phase) and at worst
# a half-step off for any custom state, and cheap to evaluate from tables.
VISIBILITY_PHASES = np.linspace(0.0, math.pi, 129)


def visibility_sweep(request: VisibilityRequest) -> VisibilityResponse:
    """Closed-form and fringe-extracted visibility on a squeeze-magnitude grid."""
    rows = []
    for r in np.linspace(request.r_lo, request.r_hi, request.points):
        r = float(r)
        v_analytic = float(analytic.visibility(r))
        cutoff = moment_adequate_cutoff(r, eps=1e-10, weight_power=2, floor=16)
        if cutoff > AUTO_CUTOFF_CAP:
            raise CutoffTooSmall(f"r={r} needs cutoff {cutoff} > cap {AUTO_CUTOFF_CAP}")
        state = squeezed_drive_state(r, 0.0, BALANCED_THETA, cutoff)
        table_2 = joint_excitation_moments(state, 2)
        fringe = joint_moment_value(table_2, np.exp(1j * VISIBILITY_PHASES))
        v_fringe = extract_visibility(clamp_probabilities(fringe))
        rows.append(VisibilityRow(r=r, v_analytic=v_analytic, v_fringe=v_fringe))
    return VisibilityResponse(request=request, rows=rows)


def moments_table(request: MomentsRequest) -> MomentsResponse:
    """Closed forms versus engine grid sums for the five splitter-output moments.

    The numeric column always runs the blockwise splitter (this table is an
    engine check, not a scan), so the automatic cutoff refuses squeeze
    magnitudes that would push the blockwise cost past its cap.
    """
    rows = []
    for r in request.r_values:
        r = float(r)
        if request.cutoff is not None:
            cutoff = request.cutoff
        else:
            cutoff = moment_adequate_cutoff(r, eps=1e-10, weight_power=2, floor=16)
            if cutoff > BLOCKWISE_CUTOFF_CAP:
                raise CutoffTooSmall(
                    f"r={r} needs cutoff {cutoff} > blockwise cap {BLOCKWISE_CUTOFF_CAP}; "
                    f"pass an explicit cutoff to override"
                )
        state = two_mode_squeezed_vacuum(SqueezeParams(r), cutoff)
        split = apply_beam_splitter(state, BALANCED)
        forms = analytic.moment_closed_forms(r).as_dict()
        for name, value in forms.items():
            numeric = _moment_entry(split, name)
            rows.append(
                MomentRow(
                    r=r,
                    name=name,
                    analytic=value,
                    numeric_real=numeric.real,
                    numeric_imag=numeric.imag,
                    abs_error=abs(numeric - value),
                )
            )
    return MomentsResponse(request=request, rows=rows)


def _moment_entry(state: TwoModeState, name: str) -> complex:
    factors = analytic.MOMENT_LADDER_POWERS[name]
    value = 1.0 + 0.0j
    for powers in factors:
        value *= normally_ordered_moment(state, *powers)
    return value
