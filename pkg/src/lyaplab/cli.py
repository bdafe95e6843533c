"""Command-line front end: run registry cases, sweep the Silnikov damping
parameter, and dump trajectories or detected cycles as plot-ready CSV.

Exit codes are a stable scripting contract: 0 pass, 1 numeric or detection
failure, 2 usage error.  CSV goes to stdout unless --out is given; JSON is
opt-in via --format json.  A flat key=value config file can preset any flag
default (flags always win), and LYAPLAB_OUTDIR supplies a default output
directory for bare --out filenames.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from . import cases
from .cycles import (NotPeriodicError, cycle_sidecar_json, find_attractor_orbit,
                     write_cycle_csv)
from .integrate import IntegrationError, integrate, write_trajectory_csv
from .systems import CubedRing, LinearSystem, Silnikov, TwoRingTorus

__all__ = ["main", "RunConfig"]

ENV_OUTDIR = "LYAPLAB_OUTDIR"


@dataclass
class RunConfig:
    """Documented defaults for every tunable the CLI exposes."""

    rtol: float = 1e-10
    atol: float = 1e-12
    transient: float = 500.0       # attractor relaxation before detection
    zero_tol: float = 0.0          # 0 means the magnitude-scaled default
    format: str = "text"           # case-report format: text | json
    out: str = ""                  # output path; empty means stdout
    outdir: str = ""               # default directory for bare filenames

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        cfg = cls()
        casts = {f.name: f.type for f in fields(cls)}
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise ValueError(f"{path}:{lineno}: expected key=value")
                key, val = (s.strip() for s in line.split("=", 1))
                key = key.replace("-", "_")
                if key not in casts:
                    raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
                cast = float if casts[key] == "float" else str
                setattr(cfg, key, cast(val))
        return cfg

    def show(self) -> str:
        return "\n".join(f"{f.name}={getattr(self, f.name)}" for f in fields(self))


def _open_out(cfg: RunConfig, path: str):
    if not path:
        return sys.stdout, False
    outdir = cfg.outdir or os.environ.get(ENV_OUTDIR, "")
    if outdir and not os.path.dirname(path):
        path = os.path.join(outdir, path)
    return open(path, "w"), True


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lyaplab",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--config", help="flat key=value file presetting defaults")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("case", help="run or list registry cases")
    pcs = pc.add_subparsers(dest="case_command", required=True)
    pcl = pcs.add_parser("list", help="print case ids with their sources")
    pcl.add_argument("--format", choices=("text", "json"), default=None)
    pcr = pcs.add_parser("run", help="recompute a case and compare")
    pcr.add_argument("id")
    pcr.add_argument("--format", choices=("text", "json"), default=None)
    pcr.add_argument("--out", default=None, help="write the report here")

    ps = sub.add_parser("sweep", help="sweep the Silnikov damping parameter b")
    ps.add_argument("--a", type=float, required=True)
    ps.add_argument("--b-from", type=float, required=True)
    ps.add_argument("--b-to", type=float, required=True)
    ps.add_argument("--steps", type=int, required=True)
    ps.add_argument("--out", default=None, help="CSV path (default stdout)")

    pt = sub.add_parser("traj", help="integrate and dump a trajectory CSV")
    pt.add_argument("--system", required=True,
                    choices=("silnikov", "tworing", "cubedring", "linear"))
    pt.add_argument("--a", type=float, help="silnikov a > 0")
    pt.add_argument("--b", type=float, help="silnikov b > 0")
    pt.add_argument("--alpha", type=float, help="tworing alpha (alpha^2 < 1)")
    pt.add_argument("--beta", type=float, help="tworing/cubedring beta")
    pt.add_argument("--A", help="linear system matrix, 9 comma-separated entries")
    pt.add_argument("--x0", required=True, help="initial state x,y,z")
    pt.add_argument("--t", type=float, required=True, help="horizon")
    pt.add_argument("--cycle", action="store_true",
                    help="emit one detected period instead of the raw run")
    pt.add_argument("--transient", type=float, default=None,
                    help="relaxation before cycle detection")
    pt.add_argument("--rtol", type=float, default=None)
    pt.add_argument("--atol", type=float, default=None)
    pt.add_argument("--out", default=None, help="CSV path (default stdout)")

    pg = sub.add_parser("config", help="inspect configuration")
    pgs = pg.add_subparsers(dest="config_command", required=True)
    pgs.add_parser("show", help="dump the effective defaults")
    return p


def _make_system(ns) -> object:
    kind = ns.system
    try:
        if kind == "silnikov":
            if ns.a is None or ns.b is None:
                raise ValueError("silnikov needs --a and --b")
            return Silnikov(ns.a, ns.b)
        if kind == "tworing":
            if ns.alpha is None or ns.beta is None:
                raise ValueError("tworing needs --alpha and --beta")
            return TwoRingTorus(ns.alpha, ns.beta)
        if kind == "cubedring":
            if ns.beta is None:
                raise ValueError("cubedring needs --beta")
            return CubedRing(ns.beta)
        if ns.A is None:
            raise ValueError("linear needs --A with 9 entries")
        entries = [float(v) for v in ns.A.split(",")]
        if len(entries) != 9:
            raise ValueError("--A needs exactly 9 comma-separated entries")
        return LinearSystem(np.array(entries).reshape(3, 3))
    except ValueError as err:
        raise _UsageError(str(err)) from err


class _UsageError(Exception):
    pass


def _cmd_case(ns, cfg: RunConfig) -> int:
    fmt = ns.format or cfg.format
    if ns.case_command == "list":
        recs = cases.list_cases()
        if fmt == "json":
            import json
            print(json.dumps([{"id": r.id, "source": r.source} for r in recs]))
        else:
            width = max(len(r.id) for r in recs)
            for r in recs:
                print(f"{r.id:<{width}}  {r.source}")
        return 0
    try:
        report = cases.run_case(ns.id)
    except KeyError as err:
        print(f"error: {err.args[0]}", file=sys.stderr)
        return 2
    text = report.to_json() if fmt == "json" else report.to_text()
    stream, close = _open_out(cfg, ns.out or cfg.out)
    try:
        stream.write(text + "\n")
    finally:
        if close:
            stream.close()
    return 0 if report.passed else 1


def _cmd_sweep(ns, cfg: RunConfig) -> int:
    if ns.steps < 1 or (ns.steps >= 2 and ns.b_from == ns.b_to):
        print("error: need steps >= 2 with distinct endpoints, or steps == 1",
              file=sys.stderr)
        return 2
    try:
        rows = cases.sweep_silnikov(ns.a, ns.b_from, ns.b_to, ns.steps)
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    stream, close = _open_out(cfg, ns.out or cfg.out)
    try:
        cases.write_sweep_csv(rows, stream)
    finally:
        if close:
            stream.close()
    return 0 if any(not r.sign_class.startswith("error:") for r in rows) else 1


def _cmd_traj(ns, cfg: RunConfig) -> int:
    system = _make_system(ns)
    try:
        x0 = tuple(float(v) for v in ns.x0.split(","))
        if len(x0) != 3:
            raise ValueError
    except ValueError:
        raise _UsageError("--x0 needs three comma-separated numbers")
    rtol = ns.rtol if ns.rtol is not None else cfg.rtol
    atol = ns.atol if ns.atol is not None else cfg.atol
    stream, close = _open_out(cfg, ns.out or cfg.out)
    try:
        if ns.cycle:
            transient = ns.transient
            if transient is None:
                transient = cfg.transient if isinstance(system, Silnikov) else 100.0
            try:
                cyc = find_attractor_orbit(system, x0, transient=transient,
                                           rtol=rtol, atol=atol,
                                           max_horizon=max(2000.0, ns.t))
            except NotPeriodicError as err:
                print(f"error: {err}", file=sys.stderr)
                return 1
            write_cycle_csv(cyc, stream)
            if close:
                with open(stream.name + ".json", "w") as side:
                    side.write(cycle_sidecar_json(cyc) + "\n")
            else:
                print(cycle_sidecar_json(cyc), file=sys.stderr)
            return 0
        try:
            traj = integrate(system, x0, 0.0, ns.t, rtol=rtol, atol=atol)
        except IntegrationError as err:
            if err.partial is not None:
                write_trajectory_csv(err.partial, stream)
            print(f"warning: integration stopped early: {err}", file=sys.stderr)
            return 1
        write_trajectory_csv(traj, stream)
        return 0
    finally:
        if close:
            stream.close()


def main(argv=None) -> int:
    parser = _build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_file(ns.config) if ns.config else RunConfig()
    except (OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    try:
        if ns.command == "case":
            return _cmd_case(ns, cfg)
        if ns.command == "sweep":
            return _cmd_sweep(ns, cfg)
        if ns.command == "traj":
            return _cmd_traj(ns, cfg)
        if ns.command == "config":
            print(cfg.show())
            return 0
    except _UsageError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
