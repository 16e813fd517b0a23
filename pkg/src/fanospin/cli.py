"""Command-line entry point.

Subcommands: levels, sweep, iv, readout, oracle.  Each run writes
deterministic CSV/JSON data files plus a manifest.json carrying the run
metadata (the timestamp lives only in the manifest, so repeated runs on the
same config produce byte-identical data files).

Exit codes: 0 success, 1 validation error, 2 numerical failure,
64 usage error, 66 unreadable config.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .config import (ConfigError, DeviceConfig, apply_overrides,
                     default_config, dumps, load_file, validate)
from .dot_spectrum import eigenlevels, two_electron_hamiltonian
from .fano import SpinOrientation, mode_transmission
from .landauer import QuadratureError, iv_curve, model_from_config
from .lattice_oracle import (BandEdgeError, ExtractionError, OracleLattice,
                             compare_to_fano)
from .readout import nondemolition_summary, readout_report

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2
EXIT_USAGE = 64
EXIT_NOINPUT = 66

SUBCOMMANDS = ("levels", "sweep", "iv", "readout", "oracle")


def _fmt(x) -> str:
    """Full round-trip decimal representation, locale-independent."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


def _write_csv(path: Path, header: list[str], rows, comment: str | None = None):
    lines = []
    if comment is not None:
        lines.append("# " + comment)
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _write_json(path: Path, obj):
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n",
                    encoding="utf-8", newline="\n")


def _parse_grid(text: str) -> np.ndarray:
    try:
        start, stop, count = text.split(":")
        grid = np.linspace(float(start), float(stop), int(count))
    except (ValueError, TypeError) as exc:
        raise ConfigError([f"--grid: expected start:stop:count, got "
                           f"'{text}' ({exc})"]) from exc
    return grid


def _load_config(args) -> DeviceConfig:
    if args.config is not None:
        cfg = load_file(args.config)
    else:
        cfg = default_config()
    if args.set:
        cfg = apply_overrides(cfg, args.set)
    return validate(cfg)


def _run_levels(cfg: DeviceConfig, args, out: Path) -> list[Path]:
    diagram = eigenlevels(two_electron_hamiltonian(cfg), cfg)
    path = out / "levels.csv"
    _write_csv(path,
               ["energy_meV", "character", "sz_total", "l1z", "degeneracy",
                "parallel_accessible"],
               [(lv.energy, lv.character.value, lv.sz_total, lv.l1z,
                 lv.degeneracy, lv.parallel_accessible)
                for lv in diagram.levels])
    return [path]


def _run_sweep(cfg: DeviceConfig, args, out: Path) -> list[Path]:
    model_par = model_from_config(cfg, SpinOrientation.PARALLEL)
    model_anti = model_from_config(cfg, SpinOrientation.ANTIPARALLEL)
    res = model_par.resonance
    if args.grid:
        grid = _parse_grid(args.grid)
    else:
        grid = np.linspace(res.energy - 10 * res.Gamma,
                           res.energy + 10 * res.Gamma, 201)
    n = len(cfg.modes)
    header = ["E_meV"]
    for i in range(n):
        header += [f"T_parallel_mode{i}", f"T_antiparallel_mode{i}",
                   f"R_parallel_mode{i}", f"R_antiparallel_mode{i}"]
    header += ["T_parallel", "T_antiparallel", "R_parallel", "R_antiparallel"]
    rows = []
    for E in grid:
        row = [float(E)]
        tp_sum = ta_sum = rp_sum = ra_sum = 0.0
        for i, m in enumerate(cfg.modes):
            tp = mode_transmission(E, model_par, i)
            ta = mode_transmission(E, model_anti, i)
            rp = 1.0 - tp if E >= m.bottom_energy else 0.0
            ra = 1.0 - ta if E >= m.bottom_energy else 0.0
            row += [tp, ta, rp, ra]
            tp_sum += tp; ta_sum += ta; rp_sum += rp; ra_sum += ra
        row += [tp_sum, ta_sum, rp_sum, ra_sum]
        rows.append(row)
    path = out / "sweep.csv"
    _write_csv(path, header, rows)
    return [path]


def _run_iv(cfg: DeviceConfig, args, out: Path) -> list[Path]:
    if args.grid:
        grid = _parse_grid(args.grid)
    else:
        grid = np.linspace(-2 * cfg.Gamma, 2 * cfg.Gamma, 81)
    from dataclasses import replace
    from .config import Spin
    curve_par = iv_curve(replace(cfg, dot_spin=Spin.UP), grid)
    curve_anti = iv_curve(replace(cfg, dot_spin=Spin.DOWN), grid)
    path = out / "iv.csv"
    _write_csv(path,
               ["V_mV", "I_A_parallel", "I_A_antiparallel",
                "G_S_parallel", "G_S_antiparallel"],
               [(p.V_sd, p.I, a.I, p.G_diff, a.G_diff)
                for p, a in zip(curve_par.points, curve_anti.points)])
    return [path]


def _run_readout(cfg: DeviceConfig, args, out: Path) -> list[Path]:
    report = readout_report(cfg)
    summary = nondemolition_summary(cfg)
    obj = {
        "I_ballistic_A": report.I_ballistic,
        "I_parallel_A": report.I_parallel,
        "I_antiparallel_A": report.I_antiparallel,
        "delta_I_parallel_A": report.delta_I_parallel,
        "delta_I_antiparallel_A": report.delta_I_antiparallel,
        "contrast": report.contrast,
        "relative_decrease_parallel": report.relative_decrease_parallel,
        "relative_decrease_antiparallel":
            report.relative_decrease_antiparallel,
        "flip_blocked": report.flip_blocked,
        "levels_distinguishable": report.levels_distinguishable,
        "optimal_V_mV": report.optimal_V,
        "mean_reflection_dip_window": report.mean_reflection_dip_window,
        "conductance_at_resonance_S": report.conductance_at_resonance,
        "lineshape_note": report.lineshape_note,
        "qnd": summary.qnd,
        "qnd_reasons": list(summary.reasons),
        "spin_flip_time_s": (summary.spin_flip_time.seconds
                             if summary.spin_flip_time.finite else None),
        "spin_flip_time_finite": summary.spin_flip_time.finite,
        "beta_vs_zeeman": summary.beta_vs_zeeman,
    }
    path = out / "readout.json"
    _write_json(path, obj)
    return [path]


def _run_oracle(cfg: DeviceConfig, args, out: Path) -> list[Path]:
    lattice = OracleLattice(hopping_t=args.hopping_t,
                            site_energy_eps_d=args.eps_d,
                            coupling_tp=args.coupling_tp)
    dev, gamma, grid, t_oracle, t_fano = compare_to_fano(
        lattice, window_halfwidth=args.window, n_points=args.points)
    path = out / "oracle.csv"
    _write_csv(path,
               ["E_meV", "T_oracle", "T_fano", "abs_deviation"],
               [(float(e), float(o), float(f), float(abs(o - f)))
                for e, o, f in zip(grid, t_oracle, t_fano)],
               comment=f"Gamma_eff_meV={gamma!r} max_abs_deviation={dev!r}")
    return [path]


RUNNERS = {
    "levels": _run_levels,
    "sweep": _run_sweep,
    "iv": _run_iv,
    "readout": _run_readout,
    "oracle": _run_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanospin",
        description="Fano-antiresonance spin readout simulator")
    sub = parser.add_subparsers(dest="subcommand")
    for name, help_ in (
            ("levels", "two-electron dot level diagram (CSV)"),
            ("sweep", "energy-resolved transmission/reflection (CSV)"),
            ("iv", "current-voltage and differential conductance (CSV)"),
            ("readout", "readout figures of merit (JSON)"),
            ("oracle", "lattice oracle vs analytic lineshape (CSV)")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--config", default=None,
                       help="device config JSON (built-in defaults if omitted)")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--set", action="append", default=[],
                       metavar="KEY=VALUE", help="config override (dotted path)")
        if name in ("sweep", "iv"):
            p.add_argument("--grid", default=None, metavar="START:STOP:COUNT",
                           help="evaluation grid")
        if name == "oracle":
            p.add_argument("--hopping-t", type=float, default=1000.0,
                           dest="hopping_t", help="chain hopping, meV")
            p.add_argument("--coupling-tp", type=float, default=100.0,
                           dest="coupling_tp", help="wire-level coupling, meV")
            p.add_argument("--eps-d", type=float, default=0.0, dest="eps_d",
                           help="side-level energy, meV")
            p.add_argument("--window", type=float, default=5.0,
                           help="half-width of comparison window, in Gamma_eff")
            p.add_argument("--points", type=int, default=1001,
                           help="grid points")
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    if argv and not argv[0].startswith("-") and argv[0] not in SUBCOMMANDS:
        parser.print_usage(sys.stderr)
        print(f"fanospin: unknown subcommand '{argv[0]}'", file=sys.stderr)
        return EXIT_USAGE
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if args.subcommand is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    try:
        cfg = _load_config(args)
    except ConfigError as exc:
        print(f"fanospin: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (OSError, json.JSONDecodeError) as exc:
        print(f"fanospin: cannot read config: {exc}", file=sys.stderr)
        return EXIT_NOINPUT

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    try:
        outputs = RUNNERS[args.subcommand](cfg, args, out)
    except (ConfigError, ValueError) as exc:
        if isinstance(exc, (BandEdgeError,)):
            print(f"fanospin: numerical failure: {exc}", file=sys.stderr)
            return EXIT_NUMERICAL
        print(f"fanospin: invalid parameters: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (QuadratureError, ExtractionError, ArithmeticError) as exc:
        print(f"fanospin: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL

    manifest = {
        "subcommand": args.subcommand,
        "config_digest": hashlib.sha256(
            dumps(cfg).encode("utf-8")).hexdigest(),
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "overrides": list(args.set),
        "outputs": [str(p) for p in outputs],
    }
    _write_json(out / "manifest.json", manifest)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
