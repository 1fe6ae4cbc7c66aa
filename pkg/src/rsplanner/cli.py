"""Command-line front end.

Commands: ``solve``, ``omega``, ``bench``, ``validate``, ``grid`` and
``partition-map``. Output goes to stdout or, with ``-o PATH``, to a file
written atomically. Exit codes: 0 success, 1 runtime failure, 2 usage error.
The ``RS_SEED`` environment variable overrides ``--seed``.
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
from typing import Callable, List, Optional, Sequence

from . import accelerated, baseline, bench, integrator, underspecified
from .errors import RsPlannerError
from .geometry import Pose, RsPath

SCHEMA_VERSION = 1
VALIDATE_LIMITS = {"max_rel_len_err": 1e-9, "max_pos_err": 1e-8, "max_head_err": 1e-9}
SWEEP_SLACK = 1e-6


class UsageError(Exception):
    """Bad flag values detected after argparse accepted them."""


# --- parsing helpers -------------------------------------------------------

def _floats(text: str, n: int, what: str) -> List[float]:
    parts = text.split(",")
    if len(parts) != n:
        raise argparse.ArgumentTypeError(f"{what} needs {n} comma-separated numbers, got {text!r}")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} has a non-numeric entry: {text!r}") from None
    if not all(math.isfinite(v) for v in vals):
        raise argparse.ArgumentTypeError(f"{what} must be finite: {text!r}")
    return vals


def _pose_arg(text: str) -> List[float]:
    return _floats(text, 3, "pose")


def _point_arg(text: str) -> List[float]:
    return _floats(text, 2, "point")


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0.0) or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite and > 0: {text!r}")
    return v


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return v


def _size(text: str):
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"size must look like WxH, got {text!r}")
    return _count(parts[0]), _count(parts[1])


def _to_pose(vals: Sequence[float], deg: bool) -> Pose:
    th = math.radians(vals[2]) if deg else vals[2]
    return Pose(vals[0], vals[1], th)


def _seed(args) -> int:
    env = os.environ.get("RS_SEED")
    if env is not None and env.strip() != "":
        try:
            return int(env, 0)
        except ValueError:
            raise UsageError(f"RS_SEED must be an integer, got {env!r}") from None
    return args.seed


# --- output ----------------------------------------------------------------

def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temp file and a rename."""
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=os.path.dirname(target) or ".")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        write_atomic(args.output, text)


def _json(obj) -> str:
    return json.dumps({"schema_version": SCHEMA_VERSION, **obj}, indent=2) + "\n"


def _segments(path: RsPath):
    return [{"kind": s.kind.value, "dir": s.direction, "len": s.length} for s in path.segments]


def _segments_csv(path: RsPath) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["kind", "dir", "len"])
    for s in path.segments:
        w.writerow([s.kind.value, s.direction, repr(s.length)])
    return buf.getvalue()


# --- commands --------------------------------------------------------------

def cmd_solve(args) -> int:
    p0 = _to_pose(args.p0, args.deg)
    pf = _to_pose(args.pf, args.deg)
    if args.solver == "exhaustive":
        path = baseline.solve_exhaustive(p0, pf, args.r)
    else:
        path = accelerated.solve(p0, pf, args.r)
    poses = None
    if args.polyline is not None:
        poses = integrator.sample_polyline(p0, path, args.r, args.polyline)
        arcs = integrator.polyline_arclengths(poses, path, args.polyline)
    if args.format == "csv":
        if poses is not None:
            _emit(args, integrator.polyline_csv(poses, arcs))
        else:
            _emit(args, _segments_csv(path))
        return 0
    out = {"type_id": path.type_id, "segments": _segments(path), "length": path.total_length}
    if args.check:
        err = integrator.endpoint_error(p0, path, pf, args.r)
        out["endpoint_error"] = {"position": err.position_error, "heading": err.heading_error}
    if poses is not None:
        out["polyline"] = [{"s": s, "x": p.x, "y": p.y, "theta": p.theta}
                           for s, p in zip(arcs, poses)]
    _emit(args, _json(out))
    return 0


def cmd_omega(args) -> int:
    p0 = _to_pose(args.p0, args.deg)
    goal = tuple(args.goal)
    sol = underspecified.solve_underspecified(p0, goal, args.r)
    out = {
        "region": sol.region.name,
        "omega_rad": sol.omega,
        "length": sol.length,
        "segments": _segments(sol.path),
        "type_id": sol.path.type_id,
        "fallback": sol.fallback,
    }
    status = 0
    if args.sweep is not None:
        sw_omega, sw_len = underspecified.sweep_omega(p0, goal, args.r, args.sweep)
        ok = sol.length <= sw_len + SWEEP_SLACK
        out["sweep"] = {"step_deg": args.sweep, "omega_rad": sw_omega, "length": sw_len, "ok": ok}
        status = 0 if ok else 1
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["region", "omega_rad", "length"])
        w.writerow([sol.region.name, repr(sol.omega), repr(sol.length)])
        _emit(args, buf.getvalue())
    else:
        _emit(args, _json(out))
    return status


def _spec(args, **extra) -> bench.SampleSpec:
    return bench.SampleSpec(n=args.n, seed=_seed(args), mode=args.mode, **extra).validated()


def cmd_bench(args) -> int:
    report = bench.run_benchmark(_spec(args))
    out = report.to_dict()
    out["mode"] = args.mode
    _emit(args, _json(out))
    return 0


def cmd_validate(args) -> int:
    summary = bench.validate(_spec(args))
    out = summary.to_dict()
    out["mode"] = args.mode
    out["limits"] = VALIDATE_LIMITS
    ok = summary.inconsistencies == 0 and all(out[k] <= v for k, v in VALIDATE_LIMITS.items())
    out["ok"] = ok
    _emit(args, _json(out))
    return 0 if ok else 1


def cmd_grid(args) -> int:
    w, h = args.size
    if args.p0:
        p0 = _to_pose(args.p0, args.deg)
    else:
        p0 = Pose((w // 2) * args.cell, (h // 2) * args.cell, math.pi / 2)
    grid = underspecified.omega_grid(p0, w, h, args.cell, args.r)
    if args.format == "json":
        _emit(args, _json({
            "width": w, "height": h, "cell_size": args.cell, "r": args.r,
            "p0": list(p0.as_tuple()),
            "omega_rad": grid.omega.tolist(), "length": grid.length.tolist(),
        }))
    else:
        buf = io.StringIO()
        grid.write_csv(buf)
        _emit(args, buf.getvalue())
    return 0


def cmd_partition_map(args) -> int:
    p0 = _to_pose(args.p0, args.deg)
    half = args.extent
    spec = bench.SampleSpec(n=args.n, x_range=(p0.x - half, p0.x + half),
                            y_range=(p0.y - half, p0.y + half), r_range=args.r,
                            seed=_seed(args), p0=p0).validated()
    pm = bench.partition_map(p0, spec)
    if args.format == "json":
        _emit(args, _json({"n": len(pm), "seed": spec.seed, "r": args.r,
                           "counts": {f"P{k}": v for k, v in pm.counts().items()}}))
    else:
        buf = io.StringIO()
        pm.write_csv(buf)
        _emit(args, buf.getvalue())
    return 0


# --- parser ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsplanner", description="Reeds-Shepp shortest paths.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt="json", formats=("json", "csv")):
        p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
        p.add_argument("--format", choices=formats, default=fmt)

    def angles(p):
        p.add_argument("--deg", action="store_true", help="pose headings are in degrees")

    p = sub.add_parser("solve", help="shortest path between two poses")
    p.add_argument("--p0", type=_pose_arg, required=True, metavar="X,Y,TH")
    p.add_argument("--pf", type=_pose_arg, required=True, metavar="X,Y,TH")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--polyline", type=_positive, metavar="DS", help="add poses every DS")
    p.add_argument("--check", action="store_true", help="report the endpoint error")
    p.add_argument("--solver", choices=("accelerated", "exhaustive"), default="accelerated")
    angles(p)
    common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("omega", help="shortest path with a free final heading")
    p.add_argument("--p0", type=_pose_arg, required=True, metavar="X,Y,TH")
    p.add_argument("--goal", type=_point_arg, required=True, metavar="X,Y")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--sweep", type=_positive, metavar="STEP_DEG",
                   help="cross-check against a heading sweep with this step in degrees")
    angles(p)
    common(p)
    p.set_defaults(func=cmd_omega)

    for name, func, helptext in (("bench", cmd_bench, "time both solvers"),
                                 ("validate", cmd_validate, "check lengths and endpoints")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--n", type=_count, default=100_000)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--mode", choices=bench.MODES, default="full")
        common(p, formats=("json",))
        p.set_defaults(func=func)

    p = sub.add_parser("grid", help="free-heading distance transform over a grid")
    p.add_argument("--size", type=_size, required=True, metavar="WxH")
    p.add_argument("--r", type=_positive, required=True)
    p.add_argument("--p0", type=_pose_arg, metavar="X,Y,TH",
                   help="start pose (default: grid center facing +y)")
    p.add_argument("--cell", type=_positive, default=1.0, help="cell pitch")
    angles(p)
    common(p, fmt="csv")
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("partition-map", help="dispatched type of random goals")
    p.add_argument("--n", type=_count, default=1_000_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--r", type=_positive, default=20.0)
    p.add_argument("--p0", type=_pose_arg, default=[0.0, 0.0, 0.0], metavar="X,Y,TH")
    p.add_argument("--extent", type=_positive, default=100.0,
                   help="goals are drawn within +-EXTENT of p0 in x and y")
    angles(p)
    common(p, fmt="csv")
    p.set_defaults(func=cmd_partition_map)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    func: Callable = args.func
    try:
        return func(args)
    except UsageError as exc:
        print(f"rsplanner: error: {exc}", file=sys.stderr)
        return 2
    except (RsPlannerError, OSError, ValueError) as exc:
        print(f"rsplanner: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
