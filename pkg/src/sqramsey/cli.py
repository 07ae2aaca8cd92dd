"""Command line client for the scan and validation layer.

Subcommands execute in-process by default; ``--server URL`` sends the same
request to a running service instead.  Either way the rendered output is
byte-identical.  A ``--config FILE`` supplies a partial request as JSON
(same field names as the HTTP API); explicit flags win over the file.

Exit codes: 0 success, 1 validation suite failed, 2 invalid arguments or
request, 3 numeric inadequacy (cutoff, budget or accuracy).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Any, Optional

import httpx
from pydantic import ValidationError

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

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_BAD_REQUEST = 2
EXIT_NUMERIC = 3

REQUEST_TIMEOUT_SECONDS = 300.0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sqramsey",
        description="Ramsey fringe scans and self checks for squeezed-light drives",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    fringe = commands.add_parser("fringe", help="scan p_e and p_ee over detuning or phase")
    fringe.add_argument("--preset", choices=["fig3"], help="canonical comparison scan")
    fringe.add_argument(
        "--state",
        choices=["squeezed", "coherent-paper", "vacuum", "custom-file"],
        help="drive state kind",
    )
    fringe.add_argument("--r", type=float, help="squeeze magnitude")
    fringe.add_argument("--phi", type=float, help="squeeze phase")
    fringe.add_argument("--theta", type=float, help="splitter mixing angle")
    fringe.add_argument("--g", type=float, help="atom-field coupling")
    fringe.add_argument("--tau", type=float, help="zone duration")
    fringe.add_argument("--t-ratio", type=float, dest="t_ratio", help="T / tau")
    fringe.add_argument("--scan", choices=["delta", "deltaT"], help="scan variable")
    fringe.add_argument("--lo", type=float, help="scan range lower edge")
    fringe.add_argument("--hi", type=float, help="scan range upper edge")
    fringe.add_argument("--points", type=int, help="number of scan points")
    fringe.add_argument("--cutoff", type=int, help="Fock cutoff (default: auto)")
    fringe.add_argument("--method", choices=["analytic", "numeric", "both"], help="route")
    fringe.add_argument("--state-file", dest="state_file", help=".npy amplitude grid")
    _common_flags(fringe)

    visibility = commands.add_parser("visibility", help="visibility vs squeeze magnitude")
    visibility.add_argument("--preset", choices=["fig4"], help="canonical sweep bounds")
    visibility.add_argument("--r-lo", type=float, dest="r_lo", help="lowest r")
    visibility.add_argument("--r-hi", type=float, dest="r_hi", help="highest r")
    visibility.add_argument("--points", type=int, help="number of sweep points")
    _common_flags(visibility)

    moments = commands.add_parser("moments", help="closed forms vs engine grid sums")
    moments.add_argument(
        "--r", type=float, action="append", dest="r_values", help="repeatable squeeze magnitude"
    )
    moments.add_argument("--cutoff", type=int, help="Fock cutoff (default: auto)")
    _common_flags(moments)

    validate = commands.add_parser("validate", help="run the invariant suite")
    validate.add_argument(
        "--r", type=float, action="append", dest="r_values", help="repeatable squeeze magnitude"
    )
    validate.add_argument("--cutoff", type=int, help="baseline Fock cutoff")
    validate.add_argument(
        "--tolerance",
        action="append",
        dest="tolerances",
        metavar="NAME=VALUE",
        help="override one check tolerance (repeatable)",
    )
    _common_flags(validate)

    serve = commands.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _common_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", help="JSON file with partial request fields")
    sub.add_argument("--output", help="write to this path instead of stdout")
    sub.add_argument("--server", help="base URL of a running service")


def make_client(server: str) -> httpx.Client:
    return httpx.Client(base_url=server, timeout=REQUEST_TIMEOUT_SECONDS)


def _load_config(path: Optional[str]) -> dict[str, Any]:
    if not path:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidParam(f"cannot read config {path!r}: {exc}") from exc
    if not isinstance(data, dict):
        raise InvalidParam(f"config {path!r} must hold a JSON object")
    return data


def _put(payload: dict[str, Any], key: str, value: Any) -> None:
    if value is not None:
        payload[key] = value


def _fringe_payload(args: argparse.Namespace, config: dict[str, Any]) -> dict[str, Any]:
    payload = dict(config)
    _put(payload, "preset", args.preset)
    _put(payload, "state_kind", args.state)
    for key in ("r", "phi", "theta", "g", "tau", "t_ratio", "points", "cutoff", "method"):
        _put(payload, key, getattr(args, key))
    _put(payload, "scan_variable", args.scan)
    _put(payload, "state_file", args.state_file)
    if args.lo is not None or args.hi is not None:
        base = payload.get("range", (-3.0 * math.pi, 3.0 * math.pi))
        lo = args.lo if args.lo is not None else base[0]
        hi = args.hi if args.hi is not None else base[1]
        payload["range"] = (lo, hi)
    return payload


def _visibility_payload(args: argparse.Namespace, config: dict[str, Any]) -> dict[str, Any]:
    payload = dict(config)
    if args.preset == "fig4":
        payload.update({"r_lo": 0.0, "r_hi": 2.0, "points": 41})
    for key in ("r_lo", "r_hi", "points"):
        _put(payload, key, getattr(args, key))
    return payload


def _moments_payload(args: argparse.Namespace, config: dict[str, Any]) -> dict[str, Any]:
    payload = dict(config)
    _put(payload, "r_values", args.r_values)
    _put(payload, "cutoff", args.cutoff)
    return payload


def _validate_payload(args: argparse.Namespace, config: dict[str, Any]) -> dict[str, Any]:
    payload = dict(config)
    _put(payload, "r_values", args.r_values)
    _put(payload, "cutoff", args.cutoff)
    if args.tolerances:
        overrides = dict(payload.get("tolerances", {}))
        for item in args.tolerances:
            # check names may contain '=' inside brackets; the value is last
            name, _, raw = item.rpartition("=")
            if not name or not raw:
                raise InvalidParam(f"tolerance override must be NAME=VALUE, got {item!r}")
            try:
                overrides[name] = float(raw)
            except ValueError as exc:
                raise InvalidParam(f"tolerance value in {item!r} is not a number") from exc
        payload["tolerances"] = overrides
    return payload


def _post(server: str, path: str, payload: dict[str, Any]) -> dict[str, Any]:
    with make_client(server) as client:
        response = client.post(path, json=payload)
    if response.status_code == 200:
        return response.json()
    if response.status_code == 422:
        raise InvalidParam(f"service rejected the request: {response.text}")
    try:
        detail = response.json().get("detail", {})
    except ValueError:
        detail = {}
    kind = detail.get("kind") if isinstance(detail, dict) else None
    message = detail.get("message") if isinstance(detail, dict) else response.text
    if kind == "numeric-inadequacy":
        raise CutoffTooSmall(message or "numeric inadequacy")
    raise InvalidParam(message or f"service error {response.status_code}")


def _write(path: Optional[str], text: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _run_fringe(args: argparse.Namespace) -> int:
    payload = _fringe_payload(args, _load_config(args.config))
    request = ScanRequest.model_validate(payload)
    if args.server:
        data = _post(args.server, "/fringe", request.model_dump(mode="json", by_alias=True))
        response = FringeScanResponse.model_validate(data)
    else:
        from .scans import fringe_scan

        response = fringe_scan(request)
    _write(args.output, render_fringe_csv(response))
    return EXIT_OK


def _run_visibility(args: argparse.Namespace) -> int:
    payload = _visibility_payload(args, _load_config(args.config))
    request = VisibilityRequest.model_validate(payload)
    if args.server:
        data = _post(args.server, "/visibility", request.model_dump(mode="json"))
        response = VisibilityResponse.model_validate(data)
    else:
        from .scans import visibility_sweep

        response = visibility_sweep(request)
    _write(args.output, render_visibility_csv(response))
    return EXIT_OK


def _run_moments(args: argparse.Namespace) -> int:
    payload = _moments_payload(args, _load_config(args.config))
    request = MomentsRequest.model_validate(payload)
    if args.server:
        data = _post(args.server, "/moments", request.model_dump(mode="json"))
        response = MomentsResponse.model_validate(data)
    else:
        from .scans import moments_table

        response = moments_table(request)
    _write(args.output, render_moments_csv(response))
    return EXIT_OK


def _run_validate(args: argparse.Namespace) -> int:
    payload = _validate_payload(args, _load_config(args.config))
    request = ValidateRequest.model_validate(payload)
    if args.server:
        data = _post(args.server, "/validate", request.model_dump(mode="json"))
        response = ValidationResponse.model_validate(data)
    else:
        from .validation import run_validation

        response = run_validation(request)
    from .validation import render_report

    _write(args.output, render_report(response))
    return EXIT_OK if response.passed else EXIT_SUITE_FAILED


def _run_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags and 0 on --help; pass both through.
        return int(exc.code or 0)
    handlers = {
        "fringe": _run_fringe,
        "visibility": _run_visibility,
        "moments": _run_moments,
        "validate": _run_validate,
        "serve": _run_serve,
    }
    try:
        return handlers[args.command](args)
    except ValidationError as exc:
        print(f"error: invalid request: {exc}", file=sys.stderr)
        return EXIT_BAD_REQUEST
    except InvalidParam as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_REQUEST
    except (CutoffTooSmall, BudgetExceeded, AccuracyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except httpx.HTTPError as exc:
        print(f"error: cannot reach server: {exc}", file=sys.stderr)
        return EXIT_BAD_REQUEST
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_REQUEST


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
