"""Command-line verification harness.

Subcommands drive the experiment runners and serialize results as
gnuplot-friendly CSV plus a JSON run summary.  Flags may also be given in
a flat key=value config file; command-line values win.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

from .experiments import (
    COLLISION_PRESETS,
    LONGTIME_PRESETS,
    RunPreset,
    consistency_residual,
    default_preset,
    run_collision,
    run_convergence,
    run_linear_conservation,
    run_longtime,
    run_simulation,
)
from .grid import Grid
from .identities import IDENTITY_NAMES, INEQUALITY_NAMES, run_identity_suite
from .params import AbcdParams
from .schemes import AdaptiveCFL, CFLViolation, FixedDt, SimState
from .waves import make_spec

_FAMILIES = ("A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "linear")


class _CliError(Exception):
    """Validation failure; maps to exit code 1 with a one-line message."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse API
        raise _CliError(message)


# --------------------------------------------------------------------------
# serialization
# --------------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def write_csv(header: list[str], rows, path: Path) -> None:
    """CSV with a header row, '.' decimals, 17 significant digits, LF ends."""
    try:
        with open(path, "w", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                fh.write(",".join(_fmt(v) for v in row) + "\n")
    except OSError as exc:
        raise _CliError(f"cannot write CSV to {path}: {exc}") from exc


def write_json_summary(payload: dict, path: Path) -> None:
    try:
        with open(path, "w", newline="\n") as fh:
            json.dump(payload, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise _CliError(f"cannot write JSON summary to {path}: {exc}") from exc


def _snapshot_rows(snapshots: tuple[SimState, ...], origin: float):
    for snap in snapshots:
        centers = snap.grid.cell_centers(origin)
        for x, e, u in zip(centers, snap.eta.values, snap.u.values):
            yield [snap.t, float(x), float(e), float(u)]


# --------------------------------------------------------------------------
# config file merging
# --------------------------------------------------------------------------


def _load_config_args(path: str) -> list[str]:
    """Turn a flat key=value file into a CLI-argument prefix.

    Later (actual command-line) occurrences override these, so the
    command line wins on conflicts.
    """
    args: list[str] = []
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _CliError(f"cannot read config file {path}: {exc}") from exc
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise _CliError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        flag = "--" + key.replace("_", "-")
        if value.lower() in ("true", "false"):
            if value.lower() == "true":
                args.append(flag)
        else:
            args.extend([flag, value])
    return args


def _extract_config(argv: list[str]) -> tuple[list[str], list[str]]:
    """Split off --config FILE and return (config args, remaining argv)."""
    remaining: list[str] = []
    config_args: list[str] = []
    i = 0
    while i < len(argv):
        if argv[i] == "--config":
            if i + 1 >= len(argv):
                raise _CliError("--config needs a file path")
            config_args = _load_config_args(argv[i + 1])
            i += 2
        elif argv[i].startswith("--config="):
            config_args = _load_config_args(argv[i].split("=", 1)[1])
            i += 1
        else:
            remaining.append(argv[i])
            i += 1
    return config_args, remaining


# --------------------------------------------------------------------------
# shared validation
# --------------------------------------------------------------------------


def _check_power_of_two(num_cells: int, what: str = "J") -> int:
    if num_cells < 4 or num_cells & (num_cells - 1):
        raise _CliError(
            f"{what}={num_cells} must be a power of two (>= 4); "
            f"try {1 << max(2, num_cells.bit_length())}"
        )
    return num_cells


def _parse_ladder(text: str) -> list[int]:
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError as exc:
        raise _CliError(f"ladder must look like 256:4096, got {text!r}") from exc
    _check_power_of_two(lo, "ladder start")
    _check_power_of_two(hi, "ladder end")
    if hi < lo:
        raise _CliError(f"ladder end {hi} below start {lo}")
    ladder = []
    j = lo
    while j <= hi:
        ladder.append(j)
        j *= 2
    return ladder


def _case(name: str) -> str:
    canonical = name.upper() if name.lower() != "linear" else "linear"
    if canonical not in _FAMILIES:
        raise _CliError(
            f"unknown case {name!r}; available cases: {', '.join(_FAMILIES)}"
        )
    return canonical


def _parse_abcd(text: str) -> AbcdParams:
    try:
        a, b, c, d = (float(part) for part in text.split(","))
    except ValueError as exc:
        raise _CliError(f"--abcd must be four comma-separated numbers, got {text!r}") from exc
    try:
        return AbcdParams(a, b, c, d).require_admissible()
    except ValueError as exc:
        raise _CliError(str(exc)) from exc


def _outdir(args) -> Path:
    path = Path(args.outdir or os.environ.get("ABCDFV_OUTDIR", "abcdfv-out"))
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise _CliError(f"cannot create output directory {path}: {exc}") from exc
    return path


def _custom_preset(base: RunPreset, args) -> RunPreset:
    preset = base
    if getattr(args, "num_cells", None) is not None:
        _check_power_of_two(args.num_cells)
        length = base.length or make_spec(base.family).length
        preset = replace(preset, dx=length / args.num_cells)
    if getattr(args, "dx", None) is not None:
        preset = replace(preset, dx=args.dx)
    if getattr(args, "dt", None) is not None:
        preset = replace(preset, dt_policy=FixedDt(args.dt))
    if getattr(args, "t_final", None) is not None:
        preset = replace(preset, t_final=args.t_final)
    if getattr(args, "theta", None) is not None:
        preset = replace(preset, theta=args.theta)
    return preset


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    family = _case(args.case)
    preset = _custom_preset(default_preset(family), args)
    outdir = _outdir(args)
    start = time.perf_counter()
    result = run_simulation(
        family,
        preset,
        num_snapshots=args.snapshots,
    )
    spec = make_spec(family)
    write_csv(
        ["t", "x", "eta", "u"],
        _snapshot_rows(result.snapshots, spec.origin),
        outdir / "snapshots.csv",
    )
    write_json_summary(
        {
            "config": _config_payload(args, preset),
            "wall_clock_seconds": time.perf_counter() - start,
            "blew_up": result.blew_up,
            "blowup_time": result.blowup_time,
            "final_time": result.final.t,
        },
        outdir / "summary.json",
    )
    print(f"wrote {outdir / 'snapshots.csv'}")
    if result.blew_up:
        print(f"blow-up at t={result.blowup_time:.6g}")
        return 2
    print(f"finished at t={result.final.t:.6g}")
    return 0


def _cmd_converge(args) -> int:
    family = _case(args.case)
    ladder = _parse_ladder(args.ladder)
    outdir = _outdir(args)
    start = time.perf_counter()
    report = run_convergence(
        family,
        ladder,
        dt_policy=args.dt_policy,
        t_final=args.t_final,
        theta=args.theta,
    )
    rows = [[r.dx, r.error, r.rate] for r in report.rows]
    write_csv(["dx", "error", "rate"], rows, outdir / "convergence.csv")
    write_json_summary(
        {
            "config": {
                "case": family,
                "ladder": ladder,
                "dt_policy": report.dt_policy,
                "theta": report.theta,
                "T": report.t_final,
            },
            "wall_clock_seconds": time.perf_counter() - start,
            "rows": [
                {"dx": r.dx, "error": r.error, "rate": r.rate, "blew_up": r.blew_up}
                for r in report.rows
            ],
        },
        outdir / "summary.json",
    )
    for r in report.rows:
        rate = "" if r.rate is None else f"  rate={r.rate:.5f}"
        print(f"dx={r.dx:.6g}  error={r.error:.6e}{rate}")
    print(f"wrote {outdir / 'convergence.csv'}")
    return 0


def _cmd_collide(args) -> int:
    family = _case(args.case)
    if family not in COLLISION_PRESETS:
        raise _CliError(
            f"case {family} has no collision preset; choose one of "
            + ", ".join(COLLISION_PRESETS)
        )
    preset = _custom_preset(COLLISION_PRESETS[family], args)
    outdir = _outdir(args)
    start = time.perf_counter()
    summary, (track_p, track_m), snapshots = run_collision(
        family,
        preset,
        with_phase_shift=not args.no_phase_shift,
        num_snapshots=args.snapshots,
    )
    spec = make_spec(family)
    rows = zip(
        track_p.times,
        track_p.positions,
        track_p.amplitudes,
        track_m.positions,
        track_m.amplitudes,
    )
    write_csv(
        ["t", "pos_plus", "amp_plus", "pos_minus", "amp_minus"],
        rows,
        outdir / "tracks.csv",
    )
    write_csv(
        ["t", "x", "eta", "u"],
        _snapshot_rows(snapshots, spec.origin),
        outdir / "snapshots.csv",
    )
    payload = {
        "config": _config_payload(args, preset),
        "wall_clock_seconds": time.perf_counter() - start,
        "collision_time": summary.collision_time,
        "peak_amplitude": summary.peak_amplitude,
        "pre_amplitudes": summary.pre_amplitudes,
        "peak_excess": summary.peak_excess,
        "phase_shifts": summary.phase_shifts,
        "velocity_errors": summary.velocity_errors,
        "blow_up": summary.blow_up,
    }
    write_json_summary(payload, outdir / "summary.json")
    if summary.blow_up is not None:
        print(f"blow-up at t={summary.blow_up[0]:.6g} ({summary.blow_up[1]})")
    else:
        print(
            f"collision at t={summary.collision_time:.6g}, "
            f"peak={summary.peak_amplitude:.6g}, "
            f"excess={100 * summary.peak_excess:.3f}%"
        )
    print(f"wrote {outdir / 'tracks.csv'}")
    return 0


def _cmd_longtime(args) -> int:
    family = _case(args.case)
    base = LONGTIME_PRESETS.get(family) or default_preset(family)
    preset = _custom_preset(base, args)
    outdir = _outdir(args)
    start = time.perf_counter()
    result = run_longtime(family, preset)
    rows = zip(
        result.track_eta.times,
        result.track_eta.positions,
        result.track_eta.amplitudes,
        result.track_u.positions,
        result.track_u.amplitudes,
    )
    write_csv(
        ["t", "eta_pos", "eta_amp", "u_pos", "u_amp"], rows, outdir / "track.csv"
    )
    payload = {
        "config": _config_payload(args, preset),
        "wall_clock_seconds": time.perf_counter() - start,
        "eta_position_error": result.eta_position_error,
        "eta_amplitude_error": result.eta_amplitude_error,
        "u_position_error": result.u_position_error,
        "u_amplitude_error": result.u_amplitude_error,
        "tail_amplitude": result.tail_amplitude,
    }
    write_json_summary(payload, outdir / "summary.json")
    for name in (
        "eta_position_error",
        "eta_amplitude_error",
        "u_position_error",
        "u_amplitude_error",
    ):
        value = getattr(result, name)
        shown = "n/a" if value is None else f"{100 * value:.4f}%"
        print(f"{name} = {shown}")
    print(f"wrote {outdir / 'track.csv'}")
    return 0


def _cmd_linear_energy(args) -> int:
    if args.abcd is None:
        params = AbcdParams(-7 / 30, 7 / 15, -2 / 5, 1 / 2)
    else:
        params = _parse_abcd(args.abcd)
    num_cells = _check_power_of_two(int(round(args.length / args.dx)))
    grid = Grid(args.length, num_cells)
    outdir = _outdir(args)
    start = time.perf_counter()
    drift = run_linear_conservation(params, args.theta, grid, args.dt, args.t_final)
    write_json_summary(
        {
            "config": {
                "abcd": [params.a, params.b, params.c, params.d],
                "theta": args.theta,
                "L": args.length,
                "dx": args.dx,
                "dt": args.dt,
                "T": args.t_final,
            },
            "wall_clock_seconds": time.perf_counter() - start,
            "max_relative_energy_drift": drift,
        },
        outdir / "summary.json",
    )
    print(f"max relative energy drift = {drift:.6e}")
    return 0


def _cmd_consistency(args) -> int:
    family = _case(args.case)
    spec = make_spec(family)
    _check_power_of_two(args.num_cells)
    grid = Grid(spec.length, args.num_cells)
    dt = args.dt if args.dt is not None else grid.dx
    eps1, eps2 = consistency_residual(family, grid, dt, theta=args.theta)
    outdir = _outdir(args)
    write_json_summary(
        {
            "config": {"case": family, "J": args.num_cells, "dt": dt, "theta": args.theta},
            "eps1_l2": eps1,
            "eps2_l2": eps2,
        },
        outdir / "summary.json",
    )
    print(f"eps1_l2 = {eps1:.6e}")
    print(f"eps2_l2 = {eps2:.6e}")
    return 0


def _cmd_identities(args) -> int:
    worst, ok = run_identity_suite(num_fields=args.fields, seed=args.seed)
    for name in IDENTITY_NAMES:
        status = "PASS" if worst[name] <= 1e-12 else "FAIL"
        print(f"{status}  {name:20s} worst relative defect {worst[name]:.3e}")
    for name in INEQUALITY_NAMES:
        status = "PASS" if worst[name] >= -1e-10 else "FAIL"
        print(f"{status}  {name:20s} worst slack {worst[name]:.3e}")
    print("all identities hold" if ok else "IDENTITY FAILURES DETECTED")
    return 0 if ok else 1


def _config_payload(args, preset: RunPreset) -> dict:
    policy = preset.dt_policy
    if isinstance(policy, FixedDt):
        policy_desc = {"kind": "fixed", "dt": policy.dt}
    else:
        policy_desc = {"kind": "adaptive", "safety": policy.safety, "max_dt": policy.max_dt}
    return {
        "case": preset.family,
        "dx": preset.dx,
        "dt_policy": policy_desc,
        "T": preset.t_final,
        "theta": preset.theta,
        "length": preset.length,
        "snapshots": getattr(args, "snapshots", None),
    }


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="abcdfv", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--outdir", help="output directory (default abcdfv-out)")
        p.add_argument(
            "--config", help="flat key=value config file; command line wins"
        )

    p = sub.add_parser("simulate", help="march a named case and dump snapshots")
    common(p)
    p.add_argument("--case", required=True)
    p.add_argument("--J", dest="num_cells", type=int, help="cells (power of two)")
    p.add_argument("--dx", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--T", dest="t_final", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--snapshots", type=int, default=50)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("converge", help="error ladder with experimental rates")
    common(p)
    p.add_argument("--case", required=True)
    p.add_argument("--ladder", default="256:4096", help="e.g. 256:4096")
    p.add_argument("--T", dest="t_final", type=float, default=2.0)
    p.add_argument("--dt-policy", choices=("adaptive", "dx2"), default="adaptive")
    p.add_argument("--theta", type=float)
    p.set_defaults(func=_cmd_converge)

    p = sub.add_parser("collide", help="head-on collision diagnostics")
    common(p)
    p.add_argument("--case", required=True)
    p.add_argument("--J", dest="num_cells", type=int)
    p.add_argument("--dx", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--T", dest="t_final", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--snapshots", type=int, default=50)
    p.add_argument("--no-phase-shift", action="store_true")
    p.set_defaults(func=_cmd_collide)

    p = sub.add_parser("longtime", help="long-time traveling-wave fidelity")
    common(p)
    p.add_argument("--case", required=True)
    p.add_argument("--dx", type=float)
    p.add_argument("--T", dest="t_final", type=float)
    p.add_argument("--theta", type=float)
    p.set_defaults(func=_cmd_longtime)

    p = sub.add_parser("linear-energy", help="energy drift of the linearized scheme")
    common(p)
    p.add_argument("--abcd", help="a,b,c,d (default the linear-test tuple)")
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--L", dest="length", type=float, default=40.0)
    p.add_argument("--dx", type=float, default=1.0 / 32.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--T", dest="t_final", type=float, default=2.0)
    p.set_defaults(func=_cmd_linear_energy)

    p = sub.add_parser("consistency", help="one-step defect norms on exact data")
    common(p)
    p.add_argument("--case", required=True)
    p.add_argument("--J", dest="num_cells", type=int, default=1024)
    p.add_argument("--dt", type=float)
    p.add_argument("--theta", type=float)
    p.set_defaults(func=_cmd_consistency)

    p = sub.add_parser("identities", help="operator identity property suite")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fields", type=int, default=200)
    p.set_defaults(func=_cmd_identities)

    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        config_args, user_args = _extract_config(argv)
        if config_args and user_args:
            # keep the subcommand first, then config defaults, then overrides
            merged = user_args[:1] + config_args + user_args[1:]
        else:
            merged = config_args + user_args
        args = _build_parser().parse_args(merged)
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, CFLViolation) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
