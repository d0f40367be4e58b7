"""Command-line surface emitting machine-readable datasets.

Four subcommands: ``integrate`` (one trajectory as CSV + JSON sidecar),
``portrait`` (a grid of forward/backward trajectories), ``classify``
(verdict table over a grid, optionally numerically verified) and
``elliptic`` (lemniscatic constants and tables).  All floats are written
with 17 significant digits so files round-trip exactly; identical
arguments produce byte-identical output.

Exit codes: 0 success, 1 verification or inconclusive-integration
failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .classify import classify, verify_verdict
from .diagnostics import energy, g_k
from .elliptic import K_agm, lemniscate_quarter_period, sl
from .errors import BlowupLabError, Inconclusive
from .integrate import IntegrateOptions, IntegratorKind, Trajectory, integrate
from .model import OdeParams, State, params_from_coeffs, params_from_dimension

__all__ = ["main"]


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _parse_grid(spec: str) -> np.ndarray:
    """Parse ``lo:hi:n`` into n equally spaced points, endpoints included."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"grid spec {spec!r} is not of the form lo:hi:n")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    if n < 1:
        raise ValueError(f"grid spec {spec!r}: need at least one point")
    return np.linspace(lo, hi, n)


def _load_config(path: str) -> dict[str, str]:
    """Read a key=value config file; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(args: argparse.Namespace, parser: "_TrackingParser") -> None:
    """Fill argparse defaults from --config; explicit flags win."""
    if not getattr(args, "config", None):
        return
    values = _load_config(args.config)
    converters = {
        a.dest: (bool if isinstance(a, argparse._StoreTrueAction) else a.type)
        for a in parser._subparser_actions()
    }
    for key, raw in values.items():
        if not hasattr(args, key):
            raise ValueError(f"unknown config key {key!r}")
        if key in args._explicit:
            continue
        convert = converters.get(key)
        if convert is bool:
            setattr(args, key, raw.lower() in ("1", "true", "yes", "on"))
        elif convert is not None:
            setattr(args, key, convert(raw))
        else:
            setattr(args, key, raw)


class _TrackingParser(argparse.ArgumentParser):
    """Records which destinations were explicitly given, for --config."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # let grid specs like -2:2:9 parse as option values, not flags
        self._negative_number_matcher = re.compile(r"^-[\d.:eE+-]+$")

    def parse_args(self, argv=None, namespace=None):  # type: ignore[override]
        args = super().parse_args(argv, namespace)
        explicit = set()
        seen = list(argv if argv is not None else sys.argv[1:])
        for action in self._subparser_actions():
            for opt in action.option_strings:
                if any(tok == opt or tok.startswith(opt + "=") for tok in seen):
                    explicit.add(action.dest)
        args._explicit = explicit
        return args

    def _subparser_actions(self):
        for action in self._actions:
            if isinstance(action, argparse._SubParsersAction):
                for sub in action.choices.values():
                    yield from sub._actions
            else:
                yield action


def _params_from_args(args: argparse.Namespace) -> OdeParams:
    has_m = args.m is not None
    has_ab = args.A is not None or args.B is not None
    if has_m == has_ab:
        raise ValueError("give exactly one of --m or the pair --A/--B")
    if has_m:
        return params_from_dimension(args.m)
    if args.A is None or args.B is None:
        raise ValueError("both --A and --B are required when --m is absent")
    return params_from_coeffs(args.A, args.B)


def _options_from_args(args: argparse.Namespace, t_end: float) -> IntegrateOptions:
    return IntegrateOptions(
        h0=args.h0,
        t_end=t_end,
        blowup_threshold=args.blowup_threshold,
        local_tol=args.local_tol,
        record_every=args.record_every,
    )


def _termination_dict(traj: Trajectory) -> dict:
    term = traj.termination
    return {
        "kind": term.kind,
        "t_estimate": term.t_estimate,
        "direction": term.direction,
        "t_last": term.t_last,
    }


def _params_dict(p: OdeParams) -> dict:
    return {"A": p.A, "B": p.B, "m": p.m, "disc": p.disc, "k_minus": p.k_minus, "k_plus": p.k_plus}


def _verdict_dict(v) -> dict:
    return {"kind": v.kind, "basis": v.basis, "detail": v.detail}


def _sidecar_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".json"


def _write_json(path: str, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# integrate


def cmd_integrate(args: argparse.Namespace) -> int:
    if args.t_end is None:
        raise ValueError("--t-end is required (flag or config file)")
    p = _params_from_args(args)
    kind = IntegratorKind(args.integrator)
    opts = _options_from_args(args, args.t_end)
    traj = integrate(p, State(args.t0, args.u0, args.v0), kind, opts)

    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("t,u,du,e,g_kminus,g_kplus\n")
        for s in traj.states:
            gm = _fmt(g_k(s, p.k_minus)) if p.k_minus is not None else ""
            gp = _fmt(g_k(s, p.k_plus)) if p.k_plus is not None else ""
            fh.write(f"{_fmt(s.t)},{_fmt(s.u)},{_fmt(s.v)},{_fmt(energy(p, s))},{gm},{gp}\n")

    verdict = classify(p, args.u0, args.v0)
    payload = {
        "params": _params_dict(p),
        "initial": {"t": args.t0, "u": args.u0, "du": args.v0},
        "integrator": kind.value,
        "termination": _termination_dict(traj),
        "blowup_estimate": traj.termination.t_estimate,
        "verdict": _verdict_dict(verdict),
        "n_steps": traj.n_steps,
    }
    _write_json(_sidecar_path(args.out), payload)
    if traj.termination.kind in ("step_underflow", "max_steps"):
        print(f"integration inconclusive: {traj.termination.kind}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# portrait


def _portrait_one(task) -> list[tuple]:
    (idx, u0, v0, A, B, m, horizon, threshold, record_every) = task
    p = params_from_coeffs(A, B) if m is None else params_from_dimension(m)
    rows = []
    for branch, t_end in (("fwd", horizon), ("bwd", -horizon)):
        opts = IntegrateOptions(
            h0=1e-3, t_end=t_end, blowup_threshold=threshold, record_every=record_every
        )
        traj = integrate(p, State(0.0, u0, v0), IntegratorKind.RK4, opts)
        for s in traj.states:
            rows.append((idx, branch, s.t, s.u, s.v, traj.termination.kind))
    return rows


def _thread_count() -> int:
    raw = os.environ.get("BLOWUPLAB_THREADS", "")
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def cmd_portrait(args: argparse.Namespace) -> int:
    p = _params_from_args(args)
    u_grid, v_grid = _parse_grid(args.grid[0]), _parse_grid(args.grid[1])
    tasks = []
    idx = 0
    for u0 in u_grid:
        for v0 in v_grid:
            tasks.append(
                (idx, float(u0), float(v0), p.A, p.B, p.m, args.horizon,
                 args.blowup_threshold, args.record_every)
            )
            idx += 1

    workers = _thread_count()
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            all_rows = list(pool.map(_portrait_one, tasks, chunksize=4))
    else:
        all_rows = [_portrait_one(t) for t in tasks]

    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("traj_id,branch,t,u,du,terminated\n")
        for rows in all_rows:
            for idx, branch, t, u, v, kind in rows:
                fh.write(f"{idx},{branch},{_fmt(t)},{_fmt(u)},{_fmt(v)},{kind}\n")

    manifest = {
        "params": _params_dict(p),
        "grid": {"u": [float(x) for x in u_grid], "du": [float(x) for x in v_grid]},
        "horizon": args.horizon,
        "n_trajectories": len(tasks),
    }
    if p.disc is not None and p.disc >= 0 and p.B >= 0:
        # separatrix parabolas du = -k u^2 organizing the blow-up portraits
        us = np.linspace(float(u_grid[0]), float(u_grid[-1]), 201)
        manifest["separatrices"] = {
            "u": [float(x) for x in us],
            "du_kplus": [float(-p.k_plus * x * x) for x in us],
            "du_kminus": [float(-p.k_minus * x * x) for x in us],
        }
    _write_json(_sidecar_path(args.out), manifest)
    return 0


# ---------------------------------------------------------------------------
# classify


def cmd_classify(args: argparse.Namespace) -> int:
    p = _params_from_args(args)
    u_grid, v_grid = _parse_grid(args.grid[0]), _parse_grid(args.grid[1])
    failures = 0
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("u0,v0,verdict,basis,verified\n")
        for u0 in u_grid:
            for v0 in v_grid:
                u0f, v0f = float(u0), float(v0)
                verdict = classify(p, u0f, v0f)
                verified = ""
                if args.verify:
                    try:
                        check = verify_verdict(p, u0f, v0f, verdict, args.horizon)
                        verified = "pass" if check.passed else "fail"
                    except Inconclusive:
                        verified = "inconclusive"
                    if verified != "pass":
                        failures += 1
                fh.write(f"{_fmt(u0f)},{_fmt(v0f)},{verdict.kind},{verdict.basis},{verified}\n")
    if failures:
        print(f"{failures} verified rows failed", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------------------
# elliptic


def cmd_elliptic(args: argparse.Namespace) -> int:
    did_something = False
    if args.quarter_period:
        print(_fmt(lemniscate_quarter_period()))
        did_something = True
    if args.K is not None:
        for k in args.K:
            print(_fmt(K_agm(k)))
        did_something = True
    if args.sl:
        if args.t is None:
            print("--sl requires --t", file=sys.stderr)
            return 2
        y, dy = sl(args.t)
        print(f"{_fmt(y)},{_fmt(dy)}")
        did_something = True
    if args.table:
        period = 4.0 * lemniscate_quarter_period()
        ts = np.linspace(0.0, period, args.n)
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("t,sl,dsl\n")
            for t in ts:
                y, dy = sl(float(t))
                fh.write(f"{_fmt(float(t))},{_fmt(y)},{_fmt(dy)}\n")
        did_something = True
    if not did_something:
        print("nothing to do: give --quarter-period, --K, --sl or --table", file=sys.stderr)
        return 2
    return 0


# ---------------------------------------------------------------------------
# parser


def _add_model_flags(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--m", type=float, default=None, help="source dimension (m > 2)")
    sp.add_argument("--A", type=float, default=None, help="coefficient of u u'")
    sp.add_argument("--B", type=float, default=None, help="coefficient of u^3")
    sp.add_argument("--config", type=str, default=None, help="key=value file of option defaults")


def _add_driver_flags(sp: argparse.ArgumentParser, record_every: int) -> None:
    sp.add_argument("--h0", type=float, default=1e-3)
    sp.add_argument("--local-tol", type=float, default=1e-10)
    sp.add_argument("--blowup-threshold", type=float, default=1e8)
    sp.add_argument("--record-every", type=int, default=record_every)


def build_parser() -> _TrackingParser:
    parser = _TrackingParser(prog="blowuplab")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("integrate", help="integrate one initial condition")
    _add_model_flags(sp)
    sp.add_argument("--u0", type=float, default=0.0)
    sp.add_argument("--v0", type=float, default=0.0)
    sp.add_argument("--t0", type=float, default=0.0)
    sp.add_argument("--t-end", type=float, default=None)
    sp.add_argument("--integrator", choices=["rk4", "gauss6"], default="rk4")
    _add_driver_flags(sp, record_every=1)
    sp.add_argument("--out", type=str, default="trajectory.csv")
    sp.set_defaults(func=cmd_integrate)

    sp = sub.add_parser("portrait", help="grid of forward/backward trajectories")
    _add_model_flags(sp)
    sp.add_argument("--grid", nargs=2, metavar=("U0_GRID", "V0_GRID"), required=True,
                    help="two lo:hi:n specs for u0 and du0")
    sp.add_argument("--horizon", type=float, default=20.0)
    _add_driver_flags(sp, record_every=10)
    sp.add_argument("--out", type=str, default="portrait.csv")
    sp.set_defaults(func=cmd_portrait)

    sp = sub.add_parser("classify", help="verdict table over a grid")
    _add_model_flags(sp)
    sp.add_argument("--grid", nargs=2, metavar=("U0_GRID", "V0_GRID"), required=True)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--horizon", type=float, default=50.0)
    sp.add_argument("--out", type=str, default="classify.csv")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("elliptic", help="lemniscatic constants and tables")
    sp.add_argument("--config", type=str, default=None)
    sp.add_argument("--quarter-period", action="store_true")
    sp.add_argument("--K", type=float, action="append", default=None,
                    help="modulus for the complete elliptic integral (repeatable)")
    sp.add_argument("--sl", action="store_true", help="evaluate the lemniscatic sine")
    sp.add_argument("--t", type=float, default=None)
    sp.add_argument("--table", action="store_true", help="write sl over one period as CSV")
    sp.add_argument("--n", type=int, default=512)
    sp.add_argument("--out", type=str, default="sl_table.csv")
    sp.set_defaults(func=cmd_elliptic)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args, parser)
        return args.func(args)
    except (BlowupLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
