"""Request and response schemas shared by the service, the CLI and the scans."""

from __future__ import annotations

import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

StateKind = Literal["squeezed", "coherent-paper", "vacuum", "custom-file"]
ScanVariable = Literal["delta", "deltaT"]
Method = Literal["analytic", "numeric", "both"]

BALANCED_THETA = math.pi / 4.0


class ScanRequest(BaseModel):
    """Parameters of a fringe scan.

    ``scan_variable="delta"`` sweeps the detuning (the envelope varies and
    the fringe phase is ``delta * T`` with ``T = t_ratio * tau``);
    ``"deltaT"`` sweeps the accumulated fringe phase directly with the
    envelope frozen at its resonant value ``g^2 tau^2``.

    ``preset="fig3"`` replaces every field with the canonical comparison
    scan: squeezed drive at ``r=0.3`` and the matched coherent baseline over
    ``delta in [-3 pi, 3 pi]`` with ``T = 4 tau``, plus the single-zone
    envelope curve.
    """

    model_config = ConfigDict(populate_by_name=True)

    state_kind: StateKind = "squeezed"
    r: float = 0.3
    phi: float = 0.0
    theta: float = BALANCED_THETA
    g: float = 0.05
    tau: float = 1.0
    t_ratio: float = 4.0
    scan_variable: ScanVariable = "delta"
    scan_range: tuple[float, float] = Field(default=(-3.0 * math.pi, 3.0 * math.pi), alias="range")
    points: int = 481
    cutoff: Optional[int] = None
    method: Method = "both"
    state_file: Optional[str] = None
    preset: Optional[Literal["fig3"]] = None

    @field_validator("r")
    @classmethod
    def _r_nonnegative(cls, value: float) -> float:
        if not math.isfinite(value) or value < 0.0:
            raise ValueError(f"r must be finite and >= 0, got {value}")
        return value

    @field_validator("g", "tau")
    @classmethod
    def _positive(cls, value: float) -> float:
        if not math.isfinite(value) or value <= 0.0:
            raise ValueError(f"value must be finite and > 0, got {value}")
        return value

    @field_validator("t_ratio")
    @classmethod
    def _t_ratio_nonnegative(cls, value: float) -> float:
        if not math.isfinite(value) or value < 0.0:
            raise ValueError(f"t_ratio must be finite and >= 0, got {value}")
        return value

    @field_validator("points")
    @classmethod
    def _enough_points(cls, value: int) -> int:
        if value < 2:
            raise ValueError(f"points must be >= 2, got {value}")
        return value

    @field_validator("cutoff")
    @classmethod
    def _cutoff_floor(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 2:
            raise ValueError(f"cutoff must be >= 2, got {value}")
        return value

    @model_validator(mode="after")
    def _range_ordered(self) -> "ScanRequest":
        lo, hi = self.scan_range
        if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
            raise ValueError(f"range must satisfy lo < hi, got ({lo}, {hi})")
        if self.state_kind == "custom-file" and not self.state_file and self.preset is None:
            raise ValueError("state_kind 'custom-file' requires state_file")
        return self


class FringeSample(BaseModel):
    """One scan point of one curve."""

    x: float
    p_e: float
    p_ee: float
    p_ee_norm: float
    method: Literal["analytic", "numeric"]


class FringeCurve(BaseModel):
    """A labelled series of samples; ``p_ee_norm`` is per curve and method."""

    label: str
    zero_amplitude: bool = False
    samples: list[FringeSample]


class FringeScanResponse(BaseModel):
    request: ScanRequest
    scan_variable: ScanVariable
    curves: list[FringeCurve]


class VisibilityRequest(BaseModel):
    """Sweep bounds for the visibility-versus-squeezing table."""

    r_lo: float = 0.0
    r_hi: float = 2.0
    points: int = 41

    @model_validator(mode="after")
    def _ordered(self) -> "VisibilityRequest":
        if not (math.isfinite(self.r_lo) and math.isfinite(self.r_hi)):
            raise ValueError("r bounds must be finite")
        if self.r_lo < 0.0 or self.r_lo >= self.r_hi:
            raise ValueError(f"need 0 <= r_lo < r_hi, got ({self.r_lo}, {self.r_hi})")
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        return self


class VisibilityRow(BaseModel):
    """``v_fringe`` is extracted from the simulated fringe; ``None`` when the
    fringe has zero amplitude (``r = 0``)."""

    r: float
    v_analytic: float
    v_fringe: Optional[float] = None


class VisibilityResponse(BaseModel):
    request: VisibilityRequest
    rows: list[VisibilityRow]


class MomentsRequest(BaseModel):
    r_values: list[float] = Field(default_factory=lambda: [0.1, 0.3, 0.8])
    cutoff: Optional[int] = None

    @field_validator("r_values")
    @classmethod
    def _r_ok(cls, values: list[float]) -> list[float]:
        if not values:
            raise ValueError("r_values must not be empty")
        for value in values:
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"r values must be finite and >= 0, got {value}")
        return values

    @field_validator("cutoff")
    @classmethod
    def _cutoff_floor(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 2:
            raise ValueError(f"cutoff must be >= 2, got {value}")
        return value


class MomentRow(BaseModel):
    r: float
    name: str
    analytic: float
    numeric_real: float
    numeric_imag: float
    abs_error: float


class MomentsResponse(BaseModel):
    request: MomentsRequest
    rows: list[MomentRow]


class ValidateRequest(BaseModel):
    """Configuration of the self-check suite.

    ``cutoff`` is the baseline grid used by the state-level checks; accuracy
    checks escalate to their own adequate cutoff internally and report it.
    ``tolerances`` overrides individual check tolerances by check name
    (exact name first, then the bracket-free base name).
    """

    r_values: list[float] = Field(default_factory=lambda: [0.1, 0.3, 0.8])
    cutoff: int = 32
    tolerances: dict[str, float] = Field(default_factory=dict)

    @field_validator("r_values")
    @classmethod
    def _r_ok(cls, values: list[float]) -> list[float]:
        if not values:
            raise ValueError("r_values must not be empty")
        for value in values:
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"r values must be finite and >= 0, got {value}")
        return values

    @field_validator("cutoff")
    @classmethod
    def _cutoff_floor(cls, value: int) -> int:
        if value < 2:
            raise ValueError(f"cutoff must be >= 2, got {value}")
        return value


CheckResult = Literal["PASS", "FAIL", "SKIP"]


class ValidationCheck(BaseModel):
    """A single named invariant; PASS means ``measured < tolerance``."""

    name: str
    measured: Optional[float] = None
    tolerance: Optional[float] = None
    result: CheckResult
    reason: Optional[str] = None


class ValidationResponse(BaseModel):
    request: ValidateRequest
    checks: list[ValidationCheck]
    passed: bool
    n_passed: int
    n_failed: int
    n_skipped: int
