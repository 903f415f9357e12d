"""Command-line entry point: simulate, converge, and norms subcommands.

Options can come from a line-oriented key=value config file (--config);
explicit flags override file values.  Every run writes a manifest of the
fully resolved configuration to its output directory, and re-running with
``--config <manifest>`` reproduces the outputs bitwise.
"""

from __future__ import annotations

import argparse
import os
import sys

from .calming import CalmingKind, IDENTITY, VARIANTS
from .config import (
    DEFAULT_DT,
    DEFAULT_LAMBDA,
    DEFAULT_N,
    DEFAULT_SNAPSHOT_EVERY,
    DEFAULT_T,
    RunConfig,
)
from .dynamics import EquationForm
from .experiments import convergence_study, default_eps_sweep, initial_field
from .spectral import Field, build_grid, hs_norm, inverse_transform, l2_norm, linf_norm
from .stepping import BlowUpError, evolve
from .storage import load_snapshot, read_keyvalue, write_error_csv, write_keyvalue, write_snapshot

_DEFAULTS = {
    "form": "vector",
    "kind": "identity",
    "epsilon": 0.1,
    "lambda": DEFAULT_LAMBDA,
    "n": DEFAULT_N,
    "dt": DEFAULT_DT,
    "T": DEFAULT_T,
    "snapshot_every": DEFAULT_SNAPSHOT_EVERY,
    "init": "grad-sines",
    "init_file": "",
    "output_dir": "out",
    "eps_list": "",
    "jobs": 1,
}

_CASTS = {
    "epsilon": float,
    "lambda": float,
    "n": int,
    "dt": float,
    "T": float,
    "snapshot_every": float,
    "jobs": int,
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value config file; flags override its entries")
    p.add_argument("--form", choices=["vector", "scalar"])
    p.add_argument("--kind", choices=list(VARIANTS))
    p.add_argument("--epsilon", type=float, help="calming parameter")
    p.add_argument("--lambda", dest="lam", type=float, help="instability coefficient")
    p.add_argument("--n", type=int, help="grid size per dimension")
    p.add_argument("--dt", type=float, help="time step")
    p.add_argument("--T", type=float, help="final time")
    p.add_argument("--snapshot-every", type=float, help="snapshot cadence in time units")
    p.add_argument("--init", choices=["grad-sines", "high-osc", "custom"])
    p.add_argument("--init-file", help="snapshot path for --init custom")
    p.add_argument("--output-dir", help="directory for all outputs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="calmedkse", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run one simulation, writing snapshots and per-step norms")
    _add_common(p_sim)

    p_conv = sub.add_parser("converge", help="epsilon sweep against the uncalmed reference")
    _add_common(p_conv)
    p_conv.add_argument("--eps-list", help="comma-separated epsilon values (default: 7 log-spaced in [1e-3, 1e-1])")
    p_conv.add_argument("--jobs", type=int, help="worker processes for the sweep (default 1)")

    p_norms = sub.add_parser("norms", help="print l2, linf, and h2 norms of a stored snapshot")
    p_norms.add_argument("snapshot", help="snapshot payload path")
    return parser


def _resolve(args: argparse.Namespace) -> dict:
    """defaults < config file < explicit flags."""
    settings = dict(_DEFAULTS)
    if args.config:
        if not os.path.exists(args.config):
            raise FileNotFoundError(f"config file not found: {args.config}")
        for key, value in read_keyvalue(args.config).items():
            if key == "command":
                continue
            if key not in settings:
                raise ValueError(f"{args.config}: unknown config key {key!r}")
            settings[key] = value
    flag_map = {
        "form": args.form,
        "kind": args.kind,
        "epsilon": args.epsilon,
        "lambda": getattr(args, "lam", None),
        "n": args.n,
        "dt": args.dt,
        "T": args.T,
        "snapshot_every": args.snapshot_every,
        "init": args.init,
        "init_file": args.init_file,
        "output_dir": args.output_dir,
        "eps_list": getattr(args, "eps_list", None),
        "jobs": getattr(args, "jobs", None),
    }
    for key, value in flag_map.items():
        if value is not None:
            settings[key] = value
    for key, cast in _CASTS.items():
        settings[key] = cast(settings[key])
    return settings


def _to_run_config(settings: dict) -> RunConfig:
    kind = IDENTITY if settings["kind"] == "identity" else CalmingKind(settings["kind"], settings["epsilon"])
    form = EquationForm(shape=settings["form"], calming=kind, lam=settings["lambda"])
    return RunConfig(
        form=form,
        n=settings["n"],
        dt=settings["dt"],
        T=settings["T"],
        snapshot_every=settings["snapshot_every"],
        initial=settings["init"],
        initial_file=settings["init_file"] or None,
        output_dir=settings["output_dir"],
    )


def _write_manifest(settings: dict, command: str) -> str:
    path = os.path.join(settings["output_dir"], "manifest.txt")
    entries = {"command": command}
    entries.update(settings)
    write_keyvalue(path, entries)
    return path


def _snapshot_meta(settings: dict, t: float) -> dict:
    return {
        "form": settings["form"],
        "lambda": float(settings["lambda"]),
        "epsilon": float(settings["epsilon"]) if settings["kind"] != "identity" else 0.0,
        "kind": settings["kind"],
        "t": float(t),
        "dt": float(settings["dt"]),
    }


def cmd_simulate(args: argparse.Namespace) -> int:
    settings = _resolve(args)
    config = _to_run_config(settings)
    grid = build_grid(config.n)
    initial = initial_field(config, grid)
    os.makedirs(settings["output_dir"], exist_ok=True)
    _write_manifest(settings, "simulate")
    try:
        traj = evolve(config, initial)
    except BlowUpError as err:
        print(f"blow-up detected at t={err.t:.6g} (L2 norm {err.l2})", file=sys.stderr)
        return 1
    for t, snap in traj.snapshots:
        snap = inverse_transform(snap, grid)
        path = os.path.join(settings["output_dir"], f"snap_t{t:.6f}.bin")
        write_snapshot(path, snap, _snapshot_meta(settings, t))
    norms_path = os.path.join(settings["output_dir"], "norms.csv")
    with open(norms_path, "w", encoding="ascii") as fh:
        fh.write("t,l2,linf,h2\n")
        for i in range(len(traj.times)):
            fh.write(f"{traj.times[i]!r},{traj.l2[i]!r},{traj.linf[i]!r},{traj.h2[i]!r}\n")
    if traj.cfl_violations:
        print(f"warning: {traj.cfl_violations} step(s) exceeded the advective CFL limit", file=sys.stderr)
    print(f"wrote {len(traj.snapshots)} snapshot(s) and {norms_path}")
    return 0


def cmd_converge(args: argparse.Namespace) -> int:
    settings = _resolve(args)
    if settings["kind"] == "identity":
        print("converge needs --kind type1|type2|type3 (identity is the reference)", file=sys.stderr)
        return 2
    if settings["eps_list"]:
        eps_list = [float(tok) for tok in str(settings["eps_list"]).split(",") if tok.strip()]
    else:
        eps_list = default_eps_sweep()
        settings["eps_list"] = ",".join(repr(e) for e in eps_list)
    if len(eps_list) < 3:
        print(f"need at least 3 epsilon values, got {len(eps_list)}", file=sys.stderr)
        return 2
    config = _to_run_config(settings)
    kind = CalmingKind(settings["kind"], eps_list[0])
    os.makedirs(settings["output_dir"], exist_ok=True)
    _write_manifest(settings, "converge")
    report = convergence_study(config, kind, eps_list, jobs=settings["jobs"])
    csv_path = os.path.join(settings["output_dir"], "errors.csv")
    write_error_csv(csv_path, report)
    for name, fit in report.slopes.items():
        print(f"{name}: slope {fit.slope:.4f} (intercept {fit.intercept:.4f}, residual {fit.residual:.2e})")
    for eps, message in report.failures:
        print(f"epsilon={eps:g} failed: {message}", file=sys.stderr)
    print(f"wrote {csv_path} ({len(report.series)} rows)")
    return 1 if report.failures else 0


def cmd_norms(args: argparse.Namespace) -> int:
    field, meta = load_snapshot(args.snapshot)
    grid = build_grid(meta["n"])
    f = Field(field.components, physical=field.physical)
    print(f"l2   {l2_norm(f, grid)!r}")
    print(f"linf {linf_norm(f, grid)!r}")
    print(f"h2   {hs_norm(f, 2.0, grid)!r}")
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"simulate": cmd_simulate, "converge": cmd_converge, "norms": cmd_norms}
    try:
        return handlers[args.command](args)
    except (ValueError, FileNotFoundError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
