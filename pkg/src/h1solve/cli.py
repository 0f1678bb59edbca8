"""``h1solve`` command line: spectra, sampled wavefunctions and verification.

Usage:
    h1solve spectrum oscillator --omega 5.477225575051661 --radius 1 --k 1
    h1solve spectrum coulomb --mu 6 --radius 1 --p 0.5 --format json
    h1solve wavefunction coulomb --mu 6 --radius 1 --p 0.5 --n 1 --parity odd \\
        --tau-min -5 --tau-max 5 --points 201
    h1solve verify all --preset paper-demo

Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
1 model error or failed verification, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import traceback

import numpy as np

from . import __version__, coulomb, oscillator, verify
from .coulomb import CoulombModel
from .errors import H1SolveError
from .grid import uniform_points
from .oscillator import OscillatorModel

SCHEMA_VERSION = "1"
TOL_SCALE_ENV = "H1SOLVE_TOL_SCALE"

EXIT_OK, EXIT_FAILURE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def _json_value(value):
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else _fmt(value)
    if isinstance(value, np.integer):
        return int(value)
    return value


def render(record: dict, fmt: str) -> str:
    """Serialize an output record as CSV (with ``#`` metadata) or JSON."""
    columns = record["columns"]
    if len(set(columns)) != len(columns):
        raise ValueError("column labels must be unique")
    if fmt == "json":
        payload = {
            "schema_version": record["schema_version"],
            "command": record["command"],
            "parameters": record["parameters"],
            "rows": [{c: _json_value(v) for c, v in zip(columns, row)} for row in record["rows"]],
        }
        return json.dumps(payload, sort_keys=False, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# schema_version: {record['schema_version']}\n")
    buf.write(f"# command: {record['command']}\n")
    buf.write(f"# parameters: {json.dumps(record['parameters'], sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in record["rows"]:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _record(command: str, parameters: dict, columns: list[str], rows: list) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "parameters": parameters,
        "columns": columns,
        "rows": rows,
    }


# --------------------------------------------------------------------------
# model construction

_REQUIRED = {"oscillator": ("omega", "radius", "k"), "coulomb": ("mu", "radius", "p")}


def build_model(system: str, args) -> OscillatorModel | CoulombModel:
    missing = [f"--{name}" for name in _REQUIRED[system] if getattr(args, name) is None]
    if missing:
        raise UsageError(f"{system} needs {', '.join(missing)}")
    if system == "oscillator":
        return OscillatorModel(args.omega, args.radius, args.k, args.branch)
    return CoulombModel(args.mu, args.radius, args.p, args.branch)


def _model_parameters(system: str, args) -> dict:
    out = {"system": system}
    for name in _REQUIRED[system]:
        out[name] = getattr(args, name)
    out["branch"] = args.branch
    return out


# --------------------------------------------------------------------------
# commands

def cmd_spectrum(args) -> tuple[dict, int]:
    model = build_model(args.system, args)
    params = _model_parameters(args.system, args)
    if args.system == "oscillator":
        columns = ["n", "epsilon", "energy", "norm_constant"]
        rows = [[s.n, s.epsilon, s.energy, s.norm_constant] for s in oscillator.bound_states(model)]
    else:
        columns = ["n", "sigma", "energy", "norm_constant"]
        rows = [[s.n, s.sigma, s.energy, s.norm_constant] for s in coulomb.bound_states(model)]
    return _record(f"spectrum {args.system}", params, columns, rows), EXIT_OK


def cmd_wavefunction(args) -> tuple[dict, int]:
    model = build_model(args.system, args)
    if args.points < 1:
        raise UsageError("--points must be >= 1")
    if args.tau_max < args.tau_min or (args.points > 1 and args.tau_max == args.tau_min):
        raise UsageError("--tau-max must exceed --tau-min")
    parity = args.parity.replace("-", "_")
    points = uniform_points(args.tau_min, args.tau_max, args.points)
    params = _model_parameters(args.system, args)
    params.update(
        n=args.n, parity=parity, form=args.form,
        tau_min=args.tau_min, tau_max=args.tau_max, points=args.points,
    )
    if args.form == "psi":
        mod = oscillator if args.system == "oscillator" else coulomb
        values = mod.wavefunction(model, args.n, points, parity)
        columns = ["tau", "psi"]
    elif args.form == "w":
        if args.system != "coulomb":
            raise UsageError("--form w is only defined for the coulomb system")
        if parity != "half_line":
            raise UsageError("--form w is a half-line function")
        values = coulomb.w_values(model, args.n, points)
        columns = ["alpha", "w"]
    else:
        if args.system == "oscillator":
            values = oscillator.flat_wavefunction_values(
                model.omega, model.k, model.branch, args.n, points, parity
            )
        else:
            values = coulomb.flat_wavefunction_values(model.mu, model.nu, args.n, points, parity)
        columns = ["x", "psi_flat"]
    rows = [[float(c), float(v)] for c, v in zip(points, values)]
    return _record(f"wavefunction {args.system}", params, columns, rows), EXIT_OK


def _tol_scale() -> float:
    raw = os.environ.get(TOL_SCALE_ENV)
    if raw is None or raw == "":
        return 1.0
    try:
        value = float(raw)
    except ValueError:
        raise UsageError(f"{TOL_SCALE_ENV} must be a positive number, got {raw!r}") from None
    if not (math.isfinite(value) and value > 0):
        raise UsageError(f"{TOL_SCALE_ENV} must be a positive number, got {raw!r}")
    return value


def cmd_verify(args) -> tuple[dict, int]:
    tol_scale = _tol_scale()
    params: dict = {"suite": args.suite, "tol_scale": tol_scale}
    if args.inject_defect:
        params["inject_defect"] = args.inject_defect
    if args.system is None:
        preset = args.preset or "paper-demo"
        params["preset"] = preset
        reports = verify.run_suite(args.suite, preset=preset, tol_scale=tol_scale, defect=args.inject_defect)
    else:
        if args.preset:
            raise UsageError("--preset and --system are mutually exclusive")
        model = build_model(args.system, args)
        params.update(_model_parameters(args.system, args))
        contraction = []
        if args.radii:
            flat = {k: v for k, v in model.params().items() if k != "radius"}
            contraction.append((args.system, flat, args.n, args.radii))
            params.update(n=args.n, radii=args.radii)
        reports = verify.run_suite(
            args.suite, models=[model], contraction=contraction, tol_scale=tol_scale, defect=args.inject_defect
        )
    columns = ["check_name", "parameters", "measured", "tolerance", "passed", "oracle"]
    rows = [
        [r.check_name, json.dumps(r.parameters, sort_keys=True), r.measured, r.tolerance, r.passed, r.oracle]
        for r in reports
    ]
    failed = sum(not r.passed for r in reports)
    if failed:
        print(f"h1solve: {failed} of {len(reports)} checks failed", file=sys.stderr)
    return _record(f"verify {args.suite}", params, columns, rows), EXIT_FAILURE if failed else EXIT_OK


# --------------------------------------------------------------------------
# argument parsing

def _radii(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"radii must be comma-separated numbers, got {text!r}") from None


def _model_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("model parameters")
    g.add_argument("--omega", type=float, help="oscillator frequency")
    g.add_argument("--radius", type=float, help="curvature radius R")
    g.add_argument("--k", type=float, help="oscillator singularity strength")
    g.add_argument("--mu", type=float, help="Coulomb coupling")
    g.add_argument("--p", type=float, help="Coulomb singularity strength")
    g.add_argument("--branch", choices=("plus", "minus"), default="plus")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="h1solve", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _model_flags()

    sp = sub.add_parser("spectrum", parents=[common], help="bound-state spectrum")
    sp.add_argument("system", choices=("oscillator", "coulomb"))
    sp.set_defaults(handler=cmd_spectrum)

    wf = sub.add_parser("wavefunction", parents=[common], help="sample a bound state")
    wf.add_argument("system", choices=("oscillator", "coulomb"))
    wf.add_argument("--n", type=int, required=True)
    wf.add_argument("--parity", choices=("even", "odd", "half-line"), default="half-line")
    wf.add_argument("--form", choices=("psi", "w", "flat"), default="psi",
                    help="psi(tau); W(alpha) for coulomb; flat-space limit in x")
    wf.add_argument("--tau-min", "--x-min", dest="tau_min", type=float, default=0.0)
    wf.add_argument("--tau-max", "--x-max", dest="tau_max", type=float, default=10.0)
    wf.add_argument("--points", type=int, default=201)
    wf.set_defaults(handler=cmd_wavefunction)

    vf = sub.add_parser("verify", parents=[common], help="run verification checks")
    vf.add_argument("suite", choices=verify.SUITES)
    vf.add_argument("--preset", choices=sorted(verify.PRESETS))
    vf.add_argument("--system", choices=("oscillator", "coulomb"))
    vf.add_argument("--n", type=int, default=0, help="level for contraction checks")
    vf.add_argument("--radii", type=_radii, help="comma-separated radii for contraction checks")
    vf.add_argument("--inject-defect", metavar="PARAM:DELTA",
                    help="negative control, e.g. epsilon:1e-6 or k0:1e-6")
    vf.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        record, code = args.handler(args)
    except UsageError as exc:
        print(f"h1solve: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (H1SolveError, IndexError, ValueError) as exc:
        print(f"h1solve: error: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except Exception:
        traceback.print_exc()
        return EXIT_FAILURE
    sys.stdout.write(render(record, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
