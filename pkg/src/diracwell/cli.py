"""Command-line front end emitting plot-ready CSV/JSON data.

Subcommands map one-to-one onto the artifacts of the analysis:

    functionals  potential functionals as JSON
    energy       perturbative energy rows (pt4 or the 2D second-order formula)
    pade         resummed energy and decay constant vs lambda
    region       pole-free-region grid for the Gaussian family
    shoot        exact Dirac ground state (energy, decay fit, wavefunction CSV)
    scan         cross-method m - E comparison over a lambda range
    fit          exponential-tail fit of a wavefunction CSV

Configuration comes from flags and/or a JSON/TOML config file (flags win).
Every output carries a metadata header; outputs are deterministic apart from
the timestamp field.  Exit codes: 0 success, 1 partial failure, 2 bad config.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .dirac_solver import NoBoundStateError, SolverConfig, fit_decay, solve_dirac_ground
from .functionals import compute_functionals
from .nr_solver import solve_schrodinger_ground
from .perturbation import energy_2d_pt2, energy_series_1d, eval_pt4
from .potentials import from_config
from .resummation import (decay_constant_model, gaussian_region,
                          pade_nonrelativistic, pade_relativistic)

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_CONFIG = 2

OUTDIR_ENV = "DIRACWELL_OUTDIR"


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# config and argument plumbing

def _parse_lambda_range(text: str):
    """Parse 'start:stop:step' (stop exclusive, up to rounding) or a single
    value or a comma list."""
    text = str(text)
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(f"lambda: expected start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ConfigError("lambda: step must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        values = [start + i * step for i in range(max(n, 0)) if start + i * step < stop - 1e-12 * step]
        if not values:
            raise ConfigError(f"lambda: empty range {text!r}")
        return values
    values = [float(p) for p in text.split(",") if p.strip()]
    if not values:
        raise ConfigError("lambda: no values given")
    return values


def _load_config_file(path: str) -> dict:
    try:
        if path.endswith(".toml"):
            with open(path, "rb") as fh:
                return tomllib.load(fh)
        with open(path, "r") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc}") from exc
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"config: cannot parse {path}: {exc}") from exc


def _potential_from_args(args) -> tuple:
    cfg = dict(getattr(args, "potential", None) or {})
    for key in ("family", "alpha", "gamma", "depth", "half_width"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if "family" not in cfg:
        raise ConfigError("potential.family: required (gaussian | square | delta)")
    try:
        spec = from_config(cfg)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return spec, cfg


def _add_potential_flags(p: argparse.ArgumentParser):
    p.add_argument("--family", choices=["gaussian", "square", "delta"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--depth", type=float)
    p.add_argument("--half-width", dest="half_width", type=float)


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--config", help="JSON or TOML config file; flags override it")
    p.add_argument("--format", choices=["csv", "json"], default=None)
    p.add_argument("-o", "--output", help="output path (default: stdout, or $%s)" % OUTDIR_ENV)


def _resolve_output(args, default_name: str):
    if args.output:
        return args.output
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir:
        return os.path.join(outdir, default_name)
    return None  # stdout


def _metadata(command: str, config_echo: dict) -> dict:
    return {
        "version": __version__,
        "command": command,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "config": config_echo,
    }


def _write_csv(path, metadata, columns, rows):
    buf = io.StringIO()
    for key in ("version", "command", "timestamp"):
        buf.write(f"# {key} = {metadata[key]}\n")
    buf.write("# config = %s\n" % json.dumps(metadata["config"], sort_keys=True))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    _emit(path, buf.getvalue())


def _write_json(path, metadata, payload: dict):
    doc = {"metadata": metadata, **payload}
    _emit(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _emit(path, text):
    if path is None:
        sys.stdout.write(text)
    else:
        os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
        with open(path, "w") as fh:
            fh.write(text)


def _fmt(value):
    if value is None:
        return None
    return float(f"{value:.12g}")


# ---------------------------------------------------------------------------
# subcommands

def _cmd_functionals(args):
    spec, pot_cfg = _potential_from_args(args)
    fs = compute_functionals(spec)
    fk = []
    if args.m is not None:
        ks = [float(k) for k in (args.k or [args.m])]
        for k in ks:
            fk.append({"k": k, "value": fs.f_of_k(args.m, k)})
    payload = {
        "f1": fs.f1, "f21": fs.f21, "f22": fs.f22,
        "f31": fs.f31, "f32": fs.f32,
        "fk": fk,
        "errors": fs.errors,
    }
    meta = _metadata("functionals", {"potential": pot_cfg, "m": args.m})
    _write_json(_resolve_output(args, "functionals.json"), meta, payload)
    return EXIT_OK


def _cmd_energy(args):
    spec, pot_cfg = _potential_from_args(args)
    lambdas = _parse_lambda_range(args.lam)
    fs = compute_functionals(spec)
    series = energy_series_1d(fs, args.m)
    rows = []
    for lam in lambdas:
        if args.method == "pt4":
            e = eval_pt4(series, lam)
        else:
            e = energy_2d_pt2(spec, args.m, args.q, lam, fs=fs)
        rows.append([_fmt(lam), _fmt(e), _fmt(series.c2), _fmt(series.c3),
                     _fmt(series.c4_nr), _fmt(series.c4_rel)])
    meta = _metadata("energy", {"potential": pot_cfg, "m": args.m, "q": args.q,
                                "method": args.method, "lambda": args.lam})
    columns = ["lambda", "E", "c2", "c3", "c4_nr", "c4_rel"]
    out = _resolve_output(args, "energy." + (args.format or "csv"))
    if (args.format or "csv") == "json":
        _write_json(out, meta, {"columns": columns,
                                "rows": [dict(zip(columns, r)) for r in rows]})
    else:
        _write_csv(out, meta, columns, rows)
    return EXIT_OK


def _cmd_pade(args):
    spec, pot_cfg = _potential_from_args(args)
    lambdas = _parse_lambda_range(args.lam)
    fs = compute_functionals(spec)
    if args.kind == "rel":
        model = pade_relativistic(fs, args.m)
    else:
        model = pade_nonrelativistic(fs, args.m, kind=args.kind.removeprefix("nr"))
    rows = []
    for lam in lambdas:
        e = model.energy(lam)
        g = decay_constant_model(model, args.m, lam)
        rows.append([_fmt(lam), _fmt(e), _fmt(g) if g is not None else float("nan")])
    meta = _metadata("pade", {"potential": pot_cfg, "m": args.m,
                              "kind": args.kind, "lambda": args.lam,
                              "poles": list(model.poles)})
    _write_csv(_resolve_output(args, "pade.csv"), meta,
               ["lambda", "E", "gamma"], rows)
    return EXIT_OK


def _cmd_region(args):
    alphas = args.alpha or [0.5, 1.0, 2.0]
    if args.gamma_steps < 2 or args.m_steps < 2:
        raise ConfigError("region: gamma-steps and m-steps must be >= 2")
    if args.m_max <= 0:
        raise ConfigError("region: m-max must be positive")
    gammas = np.linspace(-1.0, 1.0, args.gamma_steps)
    ms = np.linspace(args.m_max / args.m_steps, args.m_max, args.m_steps)
    rows = []
    for alpha in alphas:
        for g in gammas:
            for m in ms:
                rows.append([_fmt(alpha), _fmt(g), _fmt(m),
                             int(gaussian_region(alpha, g, m))])
    meta = _metadata("region", {"alpha": list(alphas), "gamma_steps": args.gamma_steps,
                                "m_steps": args.m_steps, "m_max": args.m_max})
    _write_csv(_resolve_output(args, "region.csv"), meta,
               ["alpha", "gamma", "m", "pole_free"], rows)
    return EXIT_OK


def _cmd_shoot(args):
    spec, pot_cfg = _potential_from_args(args)
    lambdas = _parse_lambda_range(args.lam)
    if len(lambdas) != 1:
        raise ConfigError("shoot: exactly one lambda value expected")
    cfg = SolverConfig(fit_window=tuple(args.fit_window) if args.fit_window else None)
    sol = solve_dirac_ground(spec, args.m, lambdas[0], cfg)
    meta = _metadata("shoot", {"potential": pot_cfg, "m": args.m,
                               "lambda": lambdas[0],
                               "fit_window": list(sol.fit_window)})
    payload = {
        "E": sol.energy,
        "gamma_fit": sol.gamma_fit,
        "fit_amplitude": sol.fit_amplitude,
        "residual": sol.residual,
        "singular_points": list(sol.singular_points),
    }
    _write_json(_resolve_output(args, "shoot.json"), meta, payload)
    if args.wavefunction:
        rows = [[_fmt(x), _fmt(p1), _fmt(p2), _fmt(r)]
                for x, p1, p2, r in zip(sol.grid, sol.psi1, sol.psi2, sol.rho)]
        _write_csv(args.wavefunction, meta, ["x", "psi1", "psi2", "rho"], rows)
    return EXIT_OK


def _scan_point(task):
    pot_cfg, m, lam = task
    spec = from_config(pot_cfg)
    fs = compute_functionals(spec)
    out = {"lambda": lam}
    try:
        out["E_shoot"] = solve_dirac_ground(spec, m, lam, fs=fs).energy
    except (NoBoundStateError, RuntimeError, ValueError) as exc:
        out["error_shoot"] = str(exc)
    try:
        out["B_nr"] = solve_schrodinger_ground(spec, m, lam, fs=fs).binding
    except (NoBoundStateError, RuntimeError, ValueError) as exc:
        out["error_nr"] = str(exc)
    return out


def _cmd_scan(args):
    spec, pot_cfg = _potential_from_args(args)
    lambdas = _parse_lambda_range(args.lam)
    m = args.m
    fs = compute_functionals(spec)
    rel = pade_relativistic(fs, m)
    nr22 = pade_nonrelativistic(fs, m, kind="22")
    nr21 = pade_nonrelativistic(fs, m, kind="21")

    tasks = [(pot_cfg, m, lam) for lam in lambdas]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            numeric = list(pool.map(_scan_point, tasks))
    else:
        numeric = [_scan_point(t) for t in tasks]

    rows, errors = [], []
    for point in numeric:
        lam = point["lambda"]
        e_shoot = point.get("E_shoot")
        b_nr = point.get("B_nr")
        for key in ("error_shoot", "error_nr"):
            if key in point:
                errors.append(f"lambda={lam}: {point[key]}")
        rows.append([
            _fmt(lam),
            _fmt(m - e_shoot) if e_shoot is not None else None,
            _fmt(m - rel.energy(lam)),
            _fmt(m - nr22.energy(lam)),
            _fmt(m - nr21.energy(lam)),
            _fmt(b_nr) if b_nr is not None else None,
        ])
    meta = _metadata("scan", {"potential": pot_cfg, "m": m, "lambda": args.lam,
                              "jobs": args.jobs, "errors": errors})
    columns = ["lambda", "m_minus_E_shoot", "m_minus_E_pade",
               "m_minus_E_pade_nr22", "m_minus_E_pade_nr21", "m_minus_E_nr"]
    _write_csv(_resolve_output(args, "scan.csv"), meta, columns, rows)
    return EXIT_PARTIAL if errors else EXIT_OK


def _cmd_fit(args):
    xs, psi1 = [], []
    with open(args.input) as fh:
        reader = csv.reader(line for line in fh if not line.startswith("#"))
        header = next(reader)
        ix, ip = header.index("x"), header.index("psi1")
        for row in reader:
            xs.append(float(row[ix]))
            psi1.append(float(row[ip]))
    amplitude, gamma = fit_decay(np.array(xs), np.array(psi1),
                                 (args.window[0], args.window[1]))
    meta = _metadata("fit", {"input": args.input, "window": list(args.window)})
    _write_json(_resolve_output(args, "fit.json"), meta,
                {"amplitude": amplitude, "gamma": gamma})
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracwell",
        description="Bound states of a 1D Dirac particle in short-range wells",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("functionals", help="potential functionals as JSON")
    _add_common_flags(p)
    _add_potential_flags(p)
    p.add_argument("--m", type=float)
    p.add_argument("--k", type=float, action="append")
    p.set_defaults(func=_cmd_functionals, required_fields=())

    p = sub.add_parser("energy", help="perturbative energy rows")
    _add_common_flags(p)
    _add_potential_flags(p)
    p.add_argument("--m", type=float, required=False)
    p.add_argument("--q", type=float, default=0.0)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--method", choices=["pt4", "pt2-2d"], default="pt4")
    p.set_defaults(func=_cmd_energy, required_fields=("m", "lam"))

    p = sub.add_parser("pade", help="resummed energy vs lambda")
    _add_common_flags(p)
    _add_potential_flags(p)
    p.add_argument("--m", type=float)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--kind", choices=["rel", "nr21", "nr22"], default="rel")
    p.set_defaults(func=_cmd_pade, required_fields=("m", "lam"))

    p = sub.add_parser("region", help="pole-free-region grid (Gaussian family)")
    _add_common_flags(p)
    p.add_argument("--alpha", type=float, action="append")
    p.add_argument("--gamma-steps", dest="gamma_steps", type=int, default=41)
    p.add_argument("--m-steps", dest="m_steps", type=int, default=40)
    p.add_argument("--m-max", dest="m_max", type=float, default=1.0)
    p.set_defaults(func=_cmd_region, required_fields=())

    p = sub.add_parser("shoot", help="exact Dirac ground state")
    _add_common_flags(p)
    _add_potential_flags(p)
    p.add_argument("--m", type=float)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--fit-window", dest="fit_window", type=float, nargs=2)
    p.add_argument("--wavefunction", help="also write (x, psi1, psi2, rho) CSV here")
    p.set_defaults(func=_cmd_shoot, required_fields=("m", "lam"))

    p = sub.add_parser("scan", help="cross-method m - E comparison")
    _add_common_flags(p)
    _add_potential_flags(p)
    p.add_argument("--m", type=float)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_scan, required_fields=("m", "lam"))

    p = sub.add_parser("fit", help="exponential-tail fit of a wavefunction CSV")
    _add_common_flags(p)
    p.add_argument("--input", required=True)
    p.add_argument("--window", type=float, nargs=2, required=True)
    p.set_defaults(func=_cmd_fit, required_fields=())

    return parser


def _apply_config_file(args):
    if not getattr(args, "config", None):
        return
    cfg = _load_config_file(args.config)
    pot = cfg.get("potential")
    if pot is not None:
        args.potential = pot
    flat = {}
    for key, value in cfg.items():
        if isinstance(value, dict):
            flat.update(value)
        else:
            flat[key] = value
    aliases = {"lambda": "lam"}
    for key, value in flat.items():
        dest = aliases.get(key, key)
        if hasattr(args, dest) and getattr(args, dest) in (None, [], {}):
            setattr(args, dest, value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config_file(args)
        for field in getattr(args, "required_fields", ()):
            if getattr(args, field, None) is None:
                raise ConfigError(f"{'lambda' if field == 'lam' else field}: required")
        if getattr(args, "m", None) is not None and args.m <= 0:
            raise ConfigError("m: must be positive")
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (NoBoundStateError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARTIAL


if __name__ == "__main__":
    sys.exit(main())
