"""HTTP facade over the scan and validation layer.

Every endpoint is a stateless wrapper around one function in
:mod:`sqramsey.scans` or :mod:`sqramsey.validation`; the CLI calls the same
functions in-process, so both routes return identical payloads.  Domain
errors map onto 400 responses with a machine-readable ``kind``:
``invalid-param`` for bad inputs, ``numeric-inadequacy`` for cutoffs or
budgets the engine cannot honor.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, PlainTextResponse

from . import __version__
from .csvio import render_fringe_csv, render_moments_csv, render_visibility_csv
from .errors import AccuracyError, BudgetExceeded, CutoffTooSmall, InvalidParam
from .models import (
    FringeScanResponse,
    MomentsRequest,
    MomentsResponse,
    ScanRequest,
    ValidateRequest,
    ValidationResponse,
    VisibilityRequest,
    VisibilityResponse,
)
from .scans import fringe_scan, moments_table, visibility_sweep
from .validation import render_report, run_validation

app = FastAPI(
    title="sqramsey",
    version=__version__,
    description="Ramsey fringe simulator for squeezed-light drives",
)


@app.exception_handler(InvalidParam)
async def _invalid_param(_: Request, exc: InvalidParam) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"kind": "invalid-param", "message": str(exc)}},
    )


@app.exception_handler(CutoffTooSmall)
@app.exception_handler(BudgetExceeded)
@app.exception_handler(AccuracyError)
async def _numeric_inadequacy(_: Request, exc: Exception) -> JSONResponse:
    return JSONResponse(
        status_code=400,
        content={"detail": {"kind": "numeric-inadequacy", "message": str(exc)}},
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/fringe", response_model=FringeScanResponse)
def fringe(
    request: ScanRequest, format: Literal["json", "csv"] = Query("json")
):
    response = fringe_scan(request)
    if format == "csv":
        return PlainTextResponse(render_fringe_csv(response), media_type="text/csv")
    return response


@app.post("/visibility", response_model=VisibilityResponse)
def visibility(
    request: VisibilityRequest, format: Literal["json", "csv"] = Query("json")
):
    response = visibility_sweep(request)
    if format == "csv":
        return PlainTextResponse(render_visibility_csv(response), media_type="text/csv")
    return response


@app.post("/moments", response_model=MomentsResponse)
def moments(
    request: MomentsRequest, format: Literal["json", "csv"] = Query("json")
):
    response = moments_table(request)
    if format == "csv":
        return PlainTextResponse(render_moments_csv(response), media_type="text/csv")
    return response


@app.post("/validate", response_model=ValidationResponse)
def validate(
    request: ValidateRequest, format: Literal["json", "report"] = Query("json")
):
    response = run_validation(request)
    if format == "report":
        return PlainTextResponse(render_report(response), media_type="text/plain")
    return response
