"""Command-line front end.

Subcommands
-----------
speed      compute the spreading speed and dump the two exponent curves
sweep      recompute the speed while stretching the exchange ranges
threshold  report the closed-form regime quantities for the parameters
simulate   time-step the coupled system and compare the front speed
validate   run the built-in invariant suite

All commands read one JSON config file and write their outputs into a
directory. Exit codes: 0 success, 2 bad config or parameters, 3 numerical
failure, 4 validation suite failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import __version__
from .asymptotics import classify_regime, sweep_R
from .bvp import GridConfig, default_domain, solve_phi
from .dispersion import (
    c_kpp,
    c_min_crossing,
    lambda1_pm,
    lambda2_pm,
    psi1,
    threshold_D,
    upper_bound_speed,
)
from .checks import run_validation
from .errors import NumericalError, ParameterError
from .model import ExchangeSpec, KernelShape, ModelParams
from .pdesim import InitialBump, SimConfig, run_front_speed, stable_dt
from .speedfinder import find_cstar

__all__ = ["main", "RunConfig", "load_config"]

_CURVE_POINTS = 257


@dataclass(frozen=True)
class RunConfig:
    """Fully validated run description assembled from the JSON config."""

    params: ModelParams
    mu: ExchangeSpec
    nu: ExchangeSpec
    grid: GridConfig = field(default_factory=GridConfig)
    sweep_scales: tuple[float, ...] = (1.0, 4.0, 16.0, 64.0)
    sweep_which: str = "both"
    sweep_limit_tol: float = 0.05
    sim: SimConfig | None = None
    sim_track: str = "road"
    sim_growth: bool = True
    bump: InitialBump = field(default_factory=InitialBump)


def _require_mapping(obj: Any, name: str) -> dict:
    if not isinstance(obj, dict):
        raise ParameterError(f"config section '{name}' must be a JSON object")
    return obj


def _pop_number(section: dict, key: str, name: str, default: float | None = None) -> float:
    if key not in section:
        if default is None:
            raise ParameterError(f"config section '{name}' is missing required key '{key}'")
        return default
    value = section.pop(key)
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParameterError(f"'{name}.{key}' must be a number, got {value!r}")
    return float(value)


def _reject_unknown(section: dict, name: str) -> None:
    if section:
        raise ParameterError(f"unknown keys in config section '{name}': {sorted(section)}")


def _parse_kernel(raw: Any, name: str) -> ExchangeSpec:
    section = dict(_require_mapping(raw, name))
    shape_name = section.pop("shape", None)
    if not isinstance(shape_name, str):
        raise ParameterError(f"'{name}.shape' must be one of {[s.value for s in KernelShape]}")
    try:
        shape = KernelShape(shape_name)
    except ValueError:
        raise ParameterError(
            f"'{name}.shape' must be one of {[s.value for s in KernelShape]}, got {shape_name!r}"
        ) from None
    spec = ExchangeSpec(
        shape=shape,
        half_width=_pop_number(section, "half_width", name),
        mass=_pop_number(section, "mass", name),
        range_scale=_pop_number(section, "range_scale", name, default=1.0),
    )
    _reject_unknown(section, name)
    return spec


def load_config(path: str) -> RunConfig:
    """Parse and validate a JSON config file into a RunConfig."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ParameterError(f"cannot read config file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParameterError(f"config file {path!r} is not valid JSON: {exc}") from exc

    top = dict(_require_mapping(raw, "<top level>"))

    params_raw = dict(_require_mapping(top.pop("params", None), "params"))
    mu = _parse_kernel(top.pop("mu", None), "mu")
    nu = _parse_kernel(top.pop("nu", None), "nu")
    params = ModelParams(
        d=_pop_number(params_raw, "d", "params"),
        D=_pop_number(params_raw, "D", "params"),
        a=_pop_number(params_raw, "a", "params"),
        mu_bar=mu.mass,
        nu_bar=nu.mass,
    )
    _reject_unknown(params_raw, "params")

    grid = GridConfig()
    if "grid" in top:
        section = dict(_require_mapping(top.pop("grid"), "grid"))
        grid = GridConfig(
            nodes_per_scale=int(_pop_number(section, "nodes_per_scale", "grid", grid.nodes_per_scale)),
            decay_lengths=_pop_number(section, "decay_lengths", "grid", grid.decay_lengths),
            max_nodes=int(_pop_number(section, "max_nodes", "grid", grid.max_nodes)),
        )
        _reject_unknown(section, "grid")

    scales: tuple[float, ...] = (1.0, 4.0, 16.0, 64.0)
    which = "both"
    limit_tol = 0.05
    if "sweep" in top:
        section = dict(_require_mapping(top.pop("sweep"), "sweep"))
        raw_scales = section.pop("scales", list(scales))
        if not isinstance(raw_scales, list) or not all(
            isinstance(s, (int, float)) and not isinstance(s, bool) for s in raw_scales
        ):
            raise ParameterError("'sweep.scales' must be a list of numbers")
        scales = tuple(float(s) for s in raw_scales)
        which = section.pop("which", which)
        if which not in ("mu", "nu", "both"):
            raise ParameterError(f"'sweep.which' must be 'mu', 'nu' or 'both', got {which!r}")
        limit_tol = _pop_number(section, "limit_tol", "sweep", limit_tol)
        _reject_unknown(section, "sweep")

    sim = None
    track = "road"
    growth = True
    bump = InitialBump()
    if "sim" in top:
        section = dict(_require_mapping(top.pop("sim"), "sim"))
        track = section.pop("track", track)
        if track not in ("road", "field_center"):
            raise ParameterError(f"'sim.track' must be 'road' or 'field_center', got {track!r}")
        growth = section.pop("growth", True)
        if not isinstance(growth, bool):
            raise ParameterError("'sim.growth' must be a boolean")
        if "bump" in section:
            bump_raw = dict(_require_mapping(section.pop("bump"), "sim.bump"))
            bump = InitialBump(
                amplitude=_pop_number(bump_raw, "amplitude", "sim.bump", 1.0),
                half_width=_pop_number(bump_raw, "half_width", "sim.bump", 2.0),
            )
            _reject_unknown(bump_raw, "sim.bump")
        dt = section.pop("dt", None)
        if dt is not None and (isinstance(dt, bool) or not isinstance(dt, (int, float))):
            raise ParameterError("'sim.dt' must be a number")
        defaults = SimConfig(Lx=1.0, Ly=1.0, nx=16, ny=16, t_end=1.0)
        sim = SimConfig(
            Lx=_pop_number(section, "Lx", "sim"),
            Ly=_pop_number(section, "Ly", "sim"),
            nx=int(_pop_number(section, "nx", "sim")),
            ny=int(_pop_number(section, "ny", "sim")),
            t_end=_pop_number(section, "t_end", "sim"),
            dt=None if dt is None else float(dt),
            theta=_pop_number(section, "theta", "sim", defaults.theta),
            fit_window=_pop_number(section, "fit_window", "sim", defaults.fit_window),
            max_snapshots=int(_pop_number(section, "max_snapshots", "sim", defaults.max_snapshots)),
        )
        _reject_unknown(section, "sim")

    _reject_unknown(top, "<top level>")
    return RunConfig(
        params=params,
        mu=mu,
        nu=nu,
        grid=grid,
        sweep_scales=scales,
        sweep_which=which,
        sweep_limit_tol=limit_tol,
        sim=sim,
        sim_track=track,
        sim_growth=growth,
        bump=bump,
    )


def _write_atomic(out_dir: str, name: str, text: str) -> str:
    """Write text to out_dir/name via a temp file and rename."""
    os.makedirs(out_dir, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=f".{name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        target = os.path.join(out_dir, name)
        os.replace(tmp, target)
        return target
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _csv_text(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _cmd_speed(cfg: RunConfig, out_dir: str) -> int:
    result = find_cstar(cfg.params, cfg.mu, cfg.nu, cfg.grid)
    subcritical = result.lambda_star is None
    curve_c = result.c_star * (1.0 + 1e-3) if subcritical else result.c_star

    lam_lo, lam_hi = lambda2_pm(curve_c, cfg.params)
    lam_road_hi = lambda1_pm(curve_c, cfg.params)[1]
    hi = min(lam_hi, lam_road_hi)
    pad = 1e-4 * (hi - lam_lo)
    lams = np.linspace(lam_lo + pad, hi - pad, _CURVE_POINTS)
    rows = []
    for lam in lams:
        L, n = default_domain(float(lam), curve_c, cfg.params, cfg.mu, cfg.nu, cfg.grid)
        sol = solve_phi(float(lam), curve_c, cfg.params, cfg.mu, cfg.nu, L, n)
        rows.append([float(lam), float(psi1(float(lam), curve_c, cfg.params)), sol.psi2])

    payload = {
        "c_star": result.c_star,
        "lambda_star": result.lambda_star,
        "regime": result.regime.value,
        "gap_at_c_star": result.gap_at_cstar,
        "bisection_iterations": result.iterations,
        "bracket": list(result.bracket),
        "c_kpp": c_kpp(cfg.params),
        "c_upper": upper_bound_speed(cfg.params) if cfg.params.D > cfg.params.d else None,
        "curves_at_c": curve_c,
        "note": (
            "speed equals the in-plane invasion speed; curves sampled slightly above it"
            if subcritical
            else "curves sampled at c_star"
        ),
    }
    _write_atomic(out_dir, "speed.json", _json_text(payload))
    _write_atomic(out_dir, "gamma-curves.csv", _csv_text(["lambda", "psi1", "psi2"], rows))
    print(f"c_star = {result.c_star:.12g}  ({result.regime.value})")
    return 0


def _cmd_sweep(cfg: RunConfig, out_dir: str) -> int:
    result = sweep_R(
        cfg.params,
        cfg.mu,
        cfg.nu,
        which=cfg.sweep_which,
        scales=cfg.sweep_scales,
        cfg=cfg.grid,
        limit_tol=cfg.sweep_limit_tol,
    )
    rows = [[float(R), float(c), result.predicted_limit] for R, c in zip(result.scales, result.speeds)]
    _write_atomic(out_dir, "sweep.csv", _csv_text(["R", "c_star", "predicted_limit"], rows))
    payload = {
        "scales": list(result.scales),
        "speeds": list(result.speeds),
        "which": cfg.sweep_which,
        "predicted_limit": result.predicted_limit,
        "regime": result.regime.value,
        "converged": result.converged,
    }
    _write_atomic(out_dir, "sweep.json", _json_text(payload))
    status = "converged" if result.converged else "not yet within tolerance"
    print(
        f"swept {len(result.scales)} scales: c_star {result.speeds[0]:.6g} -> "
        f"{result.speeds[-1]:.6g}, limit {result.predicted_limit:.6g} ({status})"
    )
    return 0


def _cmd_threshold(cfg: RunConfig, out_dir: str) -> int:
    p = cfg.params
    info = classify_regime(p)
    payload: dict[str, Any] = {
        "c_kpp": c_kpp(p),
        "threshold_D": threshold_D(p),
        "regime": info.regime.value,
        "predicted_infimum": info.predicted_infimum,
        "c_upper": upper_bound_speed(p) if p.D > p.d else None,
        "c_min": None,
    }
    if p.D > threshold_D(p):
        payload["c_min"] = c_min_crossing(p)
    _write_atomic(out_dir, "threshold.json", _json_text(payload))
    print(
        f"regime = {info.regime.value}; c_kpp = {payload['c_kpp']:.12g}; "
        f"threshold D = {payload['threshold_D']:.12g}"
    )
    return 0


def _cmd_simulate(cfg: RunConfig, out_dir: str) -> int:
    if cfg.sim is None:
        raise ParameterError("the 'simulate' command needs a 'sim' section in the config")
    trace = run_front_speed(
        cfg.sim,
        cfg.params,
        cfg.mu,
        cfg.nu,
        bump=cfg.bump,
        track=cfg.sim_track,
        growth=cfg.sim_growth,
    )
    rows = [[float(t), float(x)] for t, x in zip(trace.times, trace.positions)]
    _write_atomic(out_dir, "front.csv", _csv_text(["t", "x_front"], rows))

    dispersion_speed = find_cstar(cfg.params, cfg.mu, cfg.nu, cfg.grid).c_star
    rel = abs(trace.fitted_speed - dispersion_speed) / dispersion_speed
    payload = {
        "fitted_speed": trace.fitted_speed,
        "dispersion_speed": dispersion_speed,
        "relative_difference": rel,
        "plateau": trace.plateau,
        "track": cfg.sim_track,
        "growth": cfg.sim_growth,
        "dt": cfg.sim.dt
        if cfg.sim.dt is not None
        else stable_dt(cfg.sim, cfg.params, cfg.mu, cfg.nu),
    }
    _write_atomic(out_dir, "speed-compare.json", _json_text(payload))
    print(
        f"fitted front speed {trace.fitted_speed:.6g} vs dispersion {dispersion_speed:.6g} "
        f"({rel:.2%} apart)"
    )
    return 0


def _cmd_validate(cfg: RunConfig | None, out_dir: str, seed: int) -> int:
    results = run_validation(seed=seed)
    payload = {
        "seed": seed,
        "passed": bool(all(r.passed for r in results)),
        "checks": [{"name": r.name, "passed": bool(r.passed), "detail": r.detail} for r in results],
    }
    _write_atomic(out_dir, "validation-report.json", _json_text(payload))
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.name}: {r.detail}")
    return 0 if payload["passed"] else 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roadspeed",
        description="Spreading speeds for a reaction-diffusion plane coupled to a fast line.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, needs_config, help_text in (
        ("speed", True, "compute the spreading speed from the exponent curves"),
        ("sweep", True, "track the speed while stretching the exchange ranges"),
        ("threshold", True, "report closed-form regime quantities"),
        ("simulate", True, "time-step the coupled system and fit the front speed"),
        ("validate", False, "run the built-in invariant suite"),
    ):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument(
            "--config",
            required=needs_config,
            default=None,
            help="path to the JSON run configuration",
        )
        cmd.add_argument("--out", default=".", help="directory for output files (default: cwd)")
        cmd.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config is not None else None
        if args.command == "validate":
            return _cmd_validate(cfg, args.out, args.seed)
        assert cfg is not None
        if args.command == "speed":
            return _cmd_speed(cfg, args.out)
        if args.command == "sweep":
            return _cmd_sweep(cfg, args.out)
        if args.command == "threshold":
            return _cmd_threshold(cfg, args.out)
        if args.command == "simulate":
            return _cmd_simulate(cfg, args.out)
        raise AssertionError(f"unhandled command {args.command!r}")
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
