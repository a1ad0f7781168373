"""Command-line interface: ``spdcmodes {pump,spectrum,sweep,validate}``.

Exit codes: 0 ok, 1 validation failure, 2 configuration error,
3 degenerate pump projection, 4 I/O error.

Relative output paths are resolved against ``$SPDCMODES_OUTPUT_DIR`` when
that variable is set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import warnings
from pathlib import Path

import numpy as np

from . import export, validation
from .errors import DegenerateStateError
from .modes import WaistConfig
from .pump import prepare_pump, pump_in_hg
from .spectra import NORMALIZATIONS, hg_spectrum, lg_spectrum, sweep_theta1

OUTPUT_DIR_ENV = "SPDCMODES_OUTPUT_DIR"

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_DEGENERATE, EXIT_IO = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    pass


def _add_angle(parser, name: str, required: bool, default_deg: float | None = None):
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument(f"--{name}-deg", type=float, dest=f"{name}_deg", metavar="DEG")
    group.add_argument(f"--{name}-rad", type=float, dest=f"{name}_rad", metavar="RAD")
    parser.set_defaults(**{f"{name}_default_deg": default_deg})


def _angle(args, name: str) -> float:
    deg = getattr(args, f"{name}_deg")
    rad = getattr(args, f"{name}_rad")
    if rad is not None:
        value = rad
    elif deg is not None:
        value = math.radians(deg)
    else:
        value = math.radians(getattr(args, f"{name}_default_deg"))
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite")
    return value


def _out_path(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _complex_json(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


def cmd_pump(args) -> int:
    theta1, theta2 = _angle(args, "theta1"), _angle(args, "theta2")
    pump = prepare_pump(theta1, theta2, args.axis)
    doc = {"theta1": theta1, "theta2": theta2, "axis": args.axis,
           "success_probability": pump.success_probability}
    if args.basis in ("lg", "both"):
        doc["lg"] = [{"l": l, **_complex_json(a)} for l, a in pump.lg_terms]
    if args.basis in ("hg", "both"):
        doc["hg"] = [{"m": idx.m, "n": idx.n, **_complex_json(c)} for idx, c in pump_in_hg(pump)]
    print(json.dumps(doc, indent=1))
    return EXIT_OK


def _waists(args) -> WaistConfig:
    if args.wp <= 0:
        raise ConfigError("--wp must be positive")
    return WaistConfig.lg(args.wp) if args.basis == "lg" else WaistConfig.hg(args.wp)


def cmd_spectrum(args) -> int:
    theta1 = _angle(args, "theta1")
    waists = _waists(args)
    if args.basis == "lg":
        if not 1 <= args.lmax <= 64:
            raise ConfigError("--lmax must be in [1, 64]")
        spectrum = lg_spectrum(theta1, args.lmax, waists, normalization=args.normalization)
    else:
        caps = args.caps or [args.cap, args.cap]
        if min(caps) < 0 or max(caps) > 32:
            raise ConfigError("HG caps must be in [0, 32]")
        spectrum = hg_spectrum(theta1, tuple(caps), waists, normalization=args.normalization)
    outputs = [(args.csv, export.spectrum_csv), (args.json, export.spectrum_json), (args.svg, export.spectrum_svg)]
    if not any(path for path, _ in outputs):
        sys.stdout.write(export.spectrum_csv(spectrum))
    for path, render in outputs:
        if path:
            _out_path(path).write_text(render(spectrum), encoding="utf-8")
    return EXIT_OK


def _parse_pair(text: str) -> tuple[int, int]:
    try:
        a, b = (int(v) for v in text.replace(" ", "").split(","))
    except ValueError:
        raise ConfigError(f"pair must look like 'l_s,l_i', got {text!r}") from None
    return a, b


def cmd_sweep(args) -> int:
    if not args.pair:
        raise ConfigError("at least one --pair is required")
    pairs = [_parse_pair(p) for p in args.pair]
    if args.step_deg <= 0 or args.stop_deg < args.start_deg:
        raise ConfigError("invalid theta grid")
    count = int(round((args.stop_deg - args.start_deg) / args.step_deg)) + 1
    degrees = args.start_deg + args.step_deg * np.arange(count)
    sweep = sweep_theta1(pairs, np.radians(degrees), args.wp)
    if args.csv:
        _out_path(args.csv).write_text(export.sweep_csv(sweep), encoding="utf-8")
    else:
        sys.stdout.write(export.sweep_csv(sweep))
    if args.svg:
        _out_path(args.svg).write_text(export.sweep_svg(sweep), encoding="utf-8")
    return EXIT_OK


def cmd_validate(args) -> int:
    report = validation.run(args.suite)
    text = json.dumps(report, indent=1, default=float) + "\n"
    if args.report:
        _out_path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spdcmodes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pump", help="pump coefficients after the Sagnac preparation")
    _add_angle(p, "theta1", required=True)
    _add_angle(p, "theta2", required=False, default_deg=22.5)
    p.add_argument("--axis", choices=["H", "V"], default="H")
    p.add_argument("--basis", choices=["lg", "hg", "both"], default="both")
    p.set_defaults(func=cmd_pump)

    p = sub.add_parser("spectrum", help="closed-form two-photon spectrum")
    p.add_argument("--basis", choices=["lg", "hg"], default="lg")
    _add_angle(p, "theta1", required=True)
    p.add_argument("--lmax", type=int, default=4)
    p.add_argument("--cap", type=int, default=3, help="HG cap for all of m, n")
    p.add_argument("--caps", type=int, nargs=2, metavar=("M_MAX", "N_MAX"))
    p.add_argument("--wp", type=float, default=1.0, help="pump waist")
    p.add_argument("--normalization", choices=NORMALIZATIONS, default="overlap")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("sweep", help="|C|^2 of LG pairs versus HWP1 angle")
    p.add_argument("--pair", action="append", help="l_s,l_i (use --pair=-1,0 for negatives)")
    p.add_argument("--start-deg", type=float, default=0.0)
    p.add_argument("--stop-deg", type=float, default=180.0)
    p.add_argument("--step-deg", type=float, default=5.0)
    p.add_argument("--wp", type=float, default=1.0)
    p.add_argument("--csv")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("validate", help="oracle and identity checks")
    p.add_argument("--suite", action="append", choices=["all", *validation.SUITES], default=None)
    p.add_argument("--report")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "validate" and not args.suite:
        args.suite = ["all"]
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
