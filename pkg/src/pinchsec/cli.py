"""Command-line front end.

Subcommands: `sop` (single-point breakdown), `sweep` (CSV over an axis),
`optimize` (minimum-SOP lengths), `table1` (optimal-length table, 17-23 dB),
`mc` (Monte Carlo estimate), `fig8` (SOP versus l1 landscape).  CSV output is
plot-ready; `--plot` additionally renders a PNG of the same rows.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import replace

import numpy as np

from . import plots
from .config import (ConfigError, SystemConfig, apply_overrides, load_config,
                     validate)
from .coupling import CouplingLengths, coefficients
from .montecarlo import McSettings, estimate_sop, estimate_sop_fixed_antenna
from .optimizer import CASE1, OptimizerResult, solve_p1
from .secrecy import security_distances, sop_closed_form, sop_surface

CSV_COLUMNS = (
    "axis_value", "l1", "l2", "eps1", "eps2",
    "omega1", "omega2", "omega3", "omega4",
    "prob_omega1", "prob_omega2",
    "sop_cf", "sop_mc", "mc_stderr", "sop_fixed_mc", "case_tag",
)

TABLE1_COLUMNS = (
    "rho_t_db", "case_tag", "l1_theory_low", "l1_theory_high",
    "l1_sim_low", "l1_sim_high", "min_sop",
)

AXES = ("rho_t_db", "l1", "l2", "cell_side_c1", "cell_side_c2", "alpha2")
MODES = ("closed_form", "monte_carlo", "fixed_antenna_mc", "optimize")

TABLE1_SIM_STEP = 1e-4
FIG8_STEP = 1e-5


class CliError(ValueError):
    pass


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return f"{value:.8e}"


def _write_csv(columns, rows, out_path: str | None) -> None:
    def dump(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt(row.get(c)) for c in columns])

    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            dump(fh)
    else:
        dump(sys.stdout)


def _print_kv(pairs) -> None:
    for key, value in pairs:
        if isinstance(value, float):
            print(f"{key} = {value:.9g}")
        else:
            print(f"{key} = {value}")


def _build_config(args) -> SystemConfig:
    config = SystemConfig()
    if getattr(args, "config", None):
        config = load_config(args.config, base=config)
    overrides = {}
    for item in getattr(args, "set", None) or []:
        if "=" not in item:
            raise CliError(f"--set expects key=value, got {item!r}")
        key, _, value = item.partition("=")
        try:
            overrides[key.strip()] = float(value)
        except ValueError:
            raise CliError(f"--set {key.strip()}: non-numeric value {value!r}")
    if overrides:
        config = apply_overrides(config, overrides)
    if getattr(args, "rho_db", None) is not None:
        config = apply_overrides(config, {"link.rho_t_db": args.rho_db})
    return config.validated()


def _lengths(args, config: SystemConfig) -> CouplingLengths:
    lmax = config.constants.max_coupling_length_m
    kappa = config.constants.coupling_coefficient_per_m
    l1 = args.l1 if getattr(args, "l1", None) is not None else math.pi / (14.0 * kappa)
    l2 = args.l2 if getattr(args, "l2", None) is not None else lmax
    if not (0 < l1 <= lmax) or not (0 < l2 <= lmax):
        raise CliError(f"l1/l2 must lie in (0, {lmax:.6g}]: got l1={l1}, l2={l2}")
    return CouplingLengths(l1, l2)


def _mc_settings(args) -> McSettings:
    return McSettings(samples=args.samples, seed=args.seed, chunks=args.chunks)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_sop(args) -> int:
    config = _build_config(args)
    lengths = _lengths(args, config)
    bd = sop_closed_form(config, lengths)
    dist = security_distances(bd.omega_set)
    _print_kv([
        ("l1", lengths.l1), ("l2", lengths.l2),
        ("omega1", bd.omega_set.omega1), ("omega2", bd.omega_set.omega2),
        ("omega3", bd.omega_set.omega3), ("omega4", bd.omega_set.omega4),
        ("prob_omega1", bd.prob_omega1), ("branch1", bd.branch1),
        ("prob_omega2", bd.prob_omega2), ("branch2", bd.branch2),
        ("sop", bd.sop),
        ("max_eavesdrop_m", dist.max_eavesdrop_m),
        ("max_reliable_u1_m", dist.max_reliable_u1_m),
        ("max_reliable_u2_m", dist.max_reliable_u2_m),
    ])
    for issue in validate(config):
        print(f"warning: {issue.code}: {issue.message}", file=sys.stderr)
    return 0


def _axis_values(start: float, stop: float, step: float) -> list[float]:
    if not step > 0:
        raise CliError(f"sweep step must be positive, got {step}")
    if not start < stop:
        raise CliError(f"sweep start must be below stop, got {start} >= {stop}")
    n = int(math.floor((stop - start) / step + 1e-9))
    return [start + k * step for k in range(n + 1)]


def _sweep_point(config, axis, value, lengths):
    """Per-point (config, lengths, cell side overrides) for one axis value."""
    cell1 = cell2 = None
    if axis == "rho_t_db":
        config = replace(config, link=replace(config.link, rho_t_db=value))
    elif axis == "l1":
        lengths = CouplingLengths(value, lengths.l2)
    elif axis == "l2":
        lengths = CouplingLengths(lengths.l1, value)
    elif axis == "cell_side_c1":
        cell1 = value
    elif axis == "cell_side_c2":
        cell2 = value
    elif axis == "alpha2":
        config = replace(config, allocation=replace(
            config.allocation, alpha1=1.0 - value, alpha2=value))
    else:
        raise CliError(f"unknown sweep axis {axis!r}")
    return config, lengths, cell1, cell2


def sweep_rows(config: SystemConfig, axis: str, values, modes,
               lengths: CouplingLengths, settings: McSettings) -> list[dict]:
    rows = []
    for value in values:
        cfg, lng, cell1, cell2 = _sweep_point(config, axis, value, lengths)
        row: dict = {"axis_value": value}
        if "optimize" in modes:
            result = solve_p1(cfg)
            row["case_tag"] = result.case_tag
            if result.l1_point is not None:
                lng = CouplingLengths(result.l1_point, result.l2_point)
        c = cfg.constants
        eps = coefficients(lng, c.coupling_efficiency, c.coupling_coefficient_per_m)
        row.update(l1=lng.l1, l2=lng.l2, eps1=eps.eps1, eps2=eps.eps2)
        if "closed_form" in modes:
            bd = sop_closed_form(cfg, lng, cell1, cell2)
            row.update(omega1=bd.omega_set.omega1, omega2=bd.omega_set.omega2,
                       omega3=bd.omega_set.omega3, omega4=bd.omega_set.omega4,
                       prob_omega1=bd.prob_omega1, prob_omega2=bd.prob_omega2,
                       sop_cf=bd.sop)
        if "monte_carlo" in modes:
            est = estimate_sop(cfg, lng, settings, cell1, cell2)
            row.update(sop_mc=est.sop_hat, mc_stderr=est.std_err)
        if "fixed_antenna_mc" in modes:
            est = estimate_sop_fixed_antenna(cfg, settings, cell1, cell2)
            row.update(sop_fixed_mc=est.sop_hat)
        rows.append(row)
    return rows


def cmd_sweep(args) -> int:
    config = _build_config(args)
    modes = [m.strip() for m in args.modes.split(",") if m.strip()]
    if not modes:
        raise CliError("at least one sweep mode is required (--modes)")
    for m in modes:
        if m not in MODES:
            raise CliError(f"unknown sweep mode {m!r}; choose from {', '.join(MODES)}")
    if args.axis not in AXES:
        raise CliError(f"unknown sweep axis {args.axis!r}; choose from {', '.join(AXES)}")
    if "optimize" in modes and args.axis in ("l1", "l2", "cell_side_c1", "cell_side_c2"):
        raise CliError(f"optimize mode is not supported with axis {args.axis!r}")
    lengths = _lengths(args, config)
    values = _axis_values(args.start, args.stop, args.step)
    rows = sweep_rows(config, args.axis, values, modes, lengths, _mc_settings(args))
    _write_csv(CSV_COLUMNS, rows, args.out)
    if args.plot:
        plots.render_sweep_plot(rows, args.axis, args.plot)
    return 0


def _format_length(value) -> str:
    if value is None:
        return "n/a"
    if isinstance(value, tuple):
        return f"({value[0]:.9g}, {value[1]:.9g})"
    return f"{value:.9g}"


def cmd_optimize(args) -> int:
    config = _build_config(args)
    result = solve_p1(config)
    _print_kv([
        ("case_tag", result.case_tag),
        ("l1", _format_length(result.l1)),
        ("l2", _format_length(result.l2)),
        ("min_sop", result.min_sop),
    ])
    if result.certificate is not None:
        _print_kv([
            ("certified_prob_omega1", result.certificate.prob_omega1),
            ("certified_prob_omega2", result.certificate.prob_omega2),
            ("certified_sop", result.certificate.sop),
        ])
    if args.landscape_out:
        lmax = config.constants.max_coupling_length_m
        grid = np.arange(FIG8_STEP, lmax, FIG8_STEP)
        grid = np.append(grid, lmax)
        rows = _landscape_rows(config, grid, lmax)
        _write_csv(CSV_COLUMNS, rows, args.landscape_out)
    return 0


def _landscape_rows(config: SystemConfig, l1_grid, l2_fixed: float) -> list[dict]:
    c = config.constants
    rows = []
    for l1 in l1_grid:
        lng = CouplingLengths(float(l1), l2_fixed)
        eps = coefficients(lng, c.coupling_efficiency, c.coupling_coefficient_per_m)
        bd = sop_closed_form(config, lng)
        rows.append({
            "axis_value": float(l1), "l1": float(l1), "l2": l2_fixed,
            "eps1": eps.eps1, "eps2": eps.eps2,
            "omega1": bd.omega_set.omega1, "omega2": bd.omega_set.omega2,
            "omega3": bd.omega_set.omega3, "omega4": bd.omega_set.omega4,
            "prob_omega1": bd.prob_omega1, "prob_omega2": bd.prob_omega2,
            "sop_cf": bd.sop,
        })
    return rows


def table1_rows(config: SystemConfig, rho_db_values=range(17, 24)) -> list[dict]:
    """Optimal coupling lengths per transmit-SNR row.

    Theoretical columns come from the closed-form optimizer; the simulated
    columns scan l1 on a 1e-4 m grid with l2 at its upper bound (the zero-SOP
    sub-grid for interval rows, the grid argmin otherwise).
    """
    lmax = config.constants.max_coupling_length_m
    n_sim = int(lmax / TABLE1_SIM_STEP)
    sim_grid = TABLE1_SIM_STEP * np.arange(1, n_sim + 1)
    rows = []
    for rho_db in rho_db_values:
        cfg = replace(config, link=replace(config.link, rho_t_db=float(rho_db)))
        result = solve_p1(cfg)
        sops = sop_surface(cfg, sim_grid, lmax)
        if result.case_tag == CASE1:
            zero = sim_grid[sops == 0.0]
            sim_low, sim_high = (float(zero[0]), float(zero[-1])) if zero.size \
                else (float(sim_grid[np.argmin(sops)]),) * 2
        else:
            best = float(sim_grid[np.argmin(sops)])
            sim_low = sim_high = best
        l1 = result.l1 if isinstance(result.l1, tuple) else (result.l1, result.l1)
        rows.append({
            "rho_t_db": float(rho_db), "case_tag": result.case_tag,
            "l1_theory_low": l1[0], "l1_theory_high": l1[1],
            "l1_sim_low": sim_low, "l1_sim_high": sim_high,
            "min_sop": result.min_sop,
        })
    return rows


def cmd_table1(args) -> int:
    config = _build_config(args)
    rows = table1_rows(config)
    _write_csv(TABLE1_COLUMNS, rows, args.out)
    if args.plot:
        plots.render_table1_plot(rows, args.plot)
    return 0


def cmd_mc(args) -> int:
    config = _build_config(args)
    settings = _mc_settings(args)
    if args.fixed_antenna:
        est = estimate_sop_fixed_antenna(config, settings)
    else:
        est = estimate_sop(config, _lengths(args, config), settings)
    _print_kv([
        ("sop_hat", est.sop_hat),
        ("std_err", est.std_err),
        ("samples_used", est.samples_used),
        ("seed", args.seed),
        ("chunks", args.chunks),
    ])
    return 0


def cmd_fig8(args) -> int:
    config = _build_config(args)
    lmax = config.constants.max_coupling_length_m
    l2 = args.l2 if args.l2 is not None else lmax
    if not (0 < l2 <= lmax):
        raise CliError(f"l2 must lie in (0, {lmax:.6g}], got {l2}")
    grid = np.arange(FIG8_STEP, lmax, FIG8_STEP)
    grid = np.append(grid, lmax)
    rows = _landscape_rows(config, grid, l2)
    _write_csv(CSV_COLUMNS, rows, args.out)
    if args.plot:
        plots.render_sweep_plot(rows, "l1 (m)", args.plot)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, mc: bool = False, lengths: bool = False):
    p.add_argument("--config", help="path to a key = value config file")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a single dotted config key (repeatable)")
    p.add_argument("--rho-db", type=float, default=None,
                   help="transmit SNR axis value (dB)")
    if lengths:
        p.add_argument("--l1", type=float, default=None, help="coupling length of PA-1 (m)")
        p.add_argument("--l2", type=float, default=None, help="coupling length of PA-2 (m)")
    if mc:
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=1_000_000)
        p.add_argument("--chunks", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pinchsec",
        description="Secrecy outage analysis of a two-user pinching-antenna "
                    "NOMA downlink with an internal eavesdropper.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sop", help="single-point closed-form SOP breakdown")
    _add_common(p, lengths=True)
    p.set_defaults(func=cmd_sop)

    p = sub.add_parser("sweep", help="CSV sweep along one axis")
    _add_common(p, mc=True, lengths=True)
    p.add_argument("--axis", required=True, help=f"one of {', '.join(AXES)}")
    p.add_argument("--start", type=float, required=True)
    p.add_argument("--stop", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p.add_argument("--modes", default="closed_form",
                   help=f"comma-separated subset of {', '.join(MODES)}")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--plot", help="also render a PNG of the sweep")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="minimum-SOP coupling lengths")
    _add_common(p)
    p.add_argument("--landscape-out", help="CSV of the l1 objective landscape")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("table1", help="optimal lengths and minimum SOP, 17-23 dB")
    _add_common(p)
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--plot", help="also render a PNG of the table")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("mc", help="Monte Carlo SOP estimate")
    _add_common(p, mc=True, lengths=True)
    p.add_argument("--fixed-antenna", action="store_true",
                   help="estimate the fixed-antenna baseline instead")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("fig8", help="SOP versus l1 at fixed l2")
    _add_common(p)
    p.add_argument("--l2", type=float, default=None,
                   help="fixed coupling length of PA-2 (default pi/(2 kappa))")
    p.add_argument("--out", help="CSV output path (default stdout)")
    p.add_argument("--plot", help="also render a PNG of the landscape")
    p.set_defaults(func=cmd_fig8)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
