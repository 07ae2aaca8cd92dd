"""Deterministic text rendering of scan responses.

Floats are written with ``repr`` (shortest round-trip form), so identical
requests produce byte-identical files whether rendered locally or from a
service response.
"""

from __future__ import annotations

from .models import (
    FringeScanResponse,
    MomentsResponse,
    VisibilityResponse,
)

FRINGE_HEADER = "x,p_e,p_ee,p_ee_norm,method"
VISIBILITY_HEADER = "r,v_analytic,v_fringe"
MOMENTS_HEADER = "r,moment,analytic,numeric_real,numeric_imag,abs_error"


def _fmt(value) -> str:
    if value is None:
        return "nan"
    return repr(float(value))


def render_fringe_csv(response: FringeScanResponse) -> str:
    request = response.request
    lines = [
        "# sqramsey fringe scan",
        f"# scan_variable: {response.scan_variable}",
        f"# state: {request.state_kind} r={_fmt(request.r)} phi={_fmt(request.phi)} "
        f"theta={_fmt(request.theta)}",
        f"# drive: g={_fmt(request.g)} tau={_fmt(request.tau)} t_ratio={_fmt(request.t_ratio)}",
        f"# cutoff: {'auto' if request.cutoff is None else request.cutoff}",
        FRINGE_HEADER,
    ]
    for curve in response.curves:
        lines.append(f"# curve: {curve.label}")
        if curve.zero_amplitude:
            lines.append("# p_ee_norm undefined (zero amplitude); emitted as 0")
        for sample in curve.samples:
            lines.append(
                f"{_fmt(sample.x)},{_fmt(sample.p_e)},{_fmt(sample.p_ee)},"
                f"{_fmt(sample.p_ee_norm)},{sample.method}"
            )
    return "\n".join(lines) + "\n"


def render_visibility_csv(response: VisibilityResponse) -> str:
    lines = ["# sqramsey visibility sweep", VISIBILITY_HEADER]
    for row in response.rows:
        lines.append(f"{_fmt(row.r)},{_fmt(row.v_analytic)},{_fmt(row.v_fringe)}")
    return "\n".join(lines) + "\n"


def render_moments_csv(response: MomentsResponse) -> str:
    lines = ["# sqramsey moment identities", MOMENTS_HEADER]
    for row in response.rows:
        lines.append(
            f"{_fmt(row.r)},{row.name},{_fmt(row.analytic)},{_fmt(row.numeric_real)},"
            f"{_fmt(row.numeric_imag)},{_fmt(row.abs_error)}"
        )
    return "\n".join(lines) + "\n"
