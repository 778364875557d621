"""Command-line front end.

Four subcommands:

``solve-ermakov``
    Integrate the auxiliary equation and write ``ermakov.csv``
    (t, rho, rho_dot, omega_rho) plus a run manifest.
``trajectory``
    Write the phase-space centre path twice: ``centre.csv`` through the
    operator route and ``centre_oracle.csv`` through the independent
    characteristics integrator; the manifest records their maximum
    discrepancy.
``evolve``
    Write one density grid per snapshot time (``density_t<stamp>.csv``
    with columns x, p, gamma) plus grid metadata JSON.
``verify``
    Run the identity suite (quick or full) and write a JSON report.

Every table carries the scenario hash; identical scenario + seed gives
byte-identical CSV bytes.  Exit codes: 0 success, 1 verification failure,
2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

import numpy as np

from . import ermakov, oracle, propagator, verification
from .errors import ConfigError, KvnoscError
from .propagator import GaussianState
from .scenario import Scenario, build_scenarios
from .tables import write_json, write_table_csv, write_table_json

_PRESETS = ("fig1", "fig2", "constant")


def _scenario_dir(scenario: Scenario, out_root) -> Path:
    path = Path(out_root) / scenario.label
    path.mkdir(parents=True, exist_ok=True)
    return path


def _write_table(directory: Path, stem: str, header, rows, scenario: Scenario,
                 fmt: str) -> str:
    if fmt == "json":
        name = f"{stem}.json"
        write_table_json(directory / name, header, rows, scenario.hash)
    else:
        name = f"{stem}.csv"
        write_table_csv(directory / name, header, rows, scenario.hash)
    return name


def _manifest(directory: Path, command: str, scenario: Scenario, outputs,
              wall: float, **extra) -> dict:
    payload = {
        "command": command,
        "scenario": dict(scenario.canonical_items()),
        "scenario_hash": scenario.hash,
        "solver": {"method": scenario.method, "step": scenario.step},
        "wall_time_seconds": round(wall, 4),
        "outputs": list(outputs),
    }
    payload.update(extra)
    write_json(directory / f"manifest_{command.replace('-', '_')}.json", payload)
    return payload


def _solve(scenario: Scenario):
    return ermakov.solve(
        scenario.profile,
        scenario.rho0,
        scenario.rho_dot0,
        scenario.t_end,
        scenario.step,
        method=scenario.method,
    )


def run_solve_ermakov(scenario: Scenario, out_root, fmt: str = "csv") -> dict:
    start = time.perf_counter()
    directory = _scenario_dir(scenario, out_root)
    if scenario.t_end == 0.0:
        rows = [(0.0, scenario.rho0, scenario.rho_dot0, 0.0)]
    else:
        sol = _solve(scenario)
        rows = np.column_stack([sol.t, sol.rho, sol.rho_dot, sol.omega_rho])
    name = _write_table(
        directory, "ermakov", ("t", "rho", "rho_dot", "omega_rho"),
        rows, scenario, fmt,
    )
    return _manifest(
        directory, "solve-ermakov", scenario, [name],
        time.perf_counter() - start,
    )


def run_trajectory(scenario: Scenario, out_root, fmt: str = "csv") -> dict:
    start = time.perf_counter()
    directory = _scenario_dir(scenario, out_root)
    if scenario.t_end == 0.0:
        centre_rows = [(0.0, scenario.xc0, scenario.pc0)]
        oracle_rows = [(0.0, scenario.xc0, scenario.pc0)]
        discrepancy = 0.0
    else:
        sol = _solve(scenario)
        traj = oracle.integrate_characteristics(
            scenario.profile, scenario.xc0, scenario.pc0,
            scenario.t_end, scenario.step,
        )
        centre = propagator.centre_trajectory(
            sol, scenario.xc0, scenario.pc0, traj.times
        )
        discrepancy = float(
            np.max(np.hypot(centre.x_c - traj.x, centre.p_c - traj.p))
        )
        centre_rows = np.column_stack([traj.times, centre.x_c, centre.p_c])
        oracle_rows = np.column_stack([traj.times, traj.x, traj.p])
    outputs = [
        _write_table(directory, "centre", ("t", "x_c", "p_c"),
                     centre_rows, scenario, fmt),
        _write_table(directory, "centre_oracle", ("t", "x_c", "p_c"),
                     oracle_rows, scenario, fmt),
    ]
    return _manifest(
        directory, "trajectory", scenario, outputs,
        time.perf_counter() - start, max_discrepancy=discrepancy,
    )


def _stamp(t: float) -> str:
    return format(t, "g").replace("-", "m").replace(".", "p")


def run_evolve(scenario: Scenario, out_root, fmt: str = "csv",
               n: int = 256) -> dict:
    start = time.perf_counter()
    bad = [t for t in scenario.snapshots if t < 0 or t > scenario.t_end]
    if bad:
        raise ConfigError(
            f"snapshots {bad} outside [0, t_end={scenario.t_end}]"
        )
    directory = _scenario_dir(scenario, out_root)
    state = GaussianState(
        scenario.xc0, scenario.pc0, scenario.sigma_x, scenario.sigma_p
    )
    sol = _solve(scenario) if scenario.t_end > 0 else ermakov.solve(
        scenario.profile, scenario.rho0, scenario.rho_dot0,
        scenario.step, scenario.step, method=scenario.method,
    )
    outputs = []
    snapshots = []
    for t in scenario.snapshots:
        grid = propagator.density_grid(state, sol, float(t), n=n)
        xs = np.repeat(grid.x, grid.p.size)
        ps = np.tile(grid.p, grid.x.size)
        rows = np.column_stack([xs, ps, grid.values.ravel()])
        stem = f"density_t{_stamp(float(t))}"
        name = _write_table(directory, stem, ("x", "p", "gamma"),
                            rows, scenario, fmt)
        meta = {
            "scenario_hash": scenario.hash,
            "t": float(t),
            "mass": grid.mass,
            "n_x": int(grid.x.size),
            "n_p": int(grid.p.size),
            "x_range": [float(grid.x[0]), float(grid.x[-1])],
            "p_range": [float(grid.p[0]), float(grid.p[-1])],
            "eta": [list(row) for row in grid.eta.matrix.tolist()],
        }
        write_json(directory / f"{stem}.json", meta)
        outputs += [name, f"{stem}.json"]
        snapshots.append({"t": float(t), "mass": grid.mass, "file": name})
    return _manifest(
        directory, "evolve", scenario, outputs,
        time.perf_counter() - start, snapshots=snapshots,
    )


def run_verify(depth: str, out_root) -> int:
    results = verification.run_checks(depth)
    print(verification.format_report(results))
    out = Path(out_root)
    out.mkdir(parents=True, exist_ok=True)
    write_json(out / "verify_report.json", {
        "depth": depth,
        "checks": [r.to_dict() for r in results],
        "all_passed": all(r.passed for r in results),
    })
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kvnosc",
        description="Time-dependent oscillator toolkit: auxiliary-equation "
        "solver, phase-space propagator and verification suite.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_scenario_flags(p):
        p.add_argument("--scenario", type=Path, metavar="FILE",
                       help="key=value scenario file")
        p.add_argument("--preset", choices=_PRESETS,
                       help="named scenario preset")
        p.add_argument("--out", type=Path, default=Path("out"),
                       help="output root directory (default: out)")
        p.add_argument("--step", type=float, help="integrator step override")
        p.add_argument("--t-end", dest="t_end", type=float,
                       help="end time override")
        p.add_argument("--seed", type=int, help="RNG seed override")
        p.add_argument("--format", choices=("csv", "json"), default="csv",
                       help="table format (default: csv)")

    p_solve = sub.add_parser(
        "solve-ermakov", help="integrate the auxiliary equation to CSV"
    )
    add_scenario_flags(p_solve)

    p_traj = sub.add_parser(
        "trajectory", help="phase-space centre path, operator vs oracle"
    )
    add_scenario_flags(p_traj)

    p_evolve = sub.add_parser(
        "evolve", help="density grids at the scenario's snapshot times"
    )
    add_scenario_flags(p_evolve)
    p_evolve.add_argument(
        "--snapshots", metavar="T1,T2,...",
        help="comma-separated snapshot times (overrides the scenario)",
    )

    p_verify = sub.add_parser("verify", help="run the identity suite")
    p_verify.add_argument("--depth", choices=("quick", "full"),
                          default="quick")
    p_verify.add_argument("--out", type=Path, default=Path("out"),
                          help="directory for verify_report.json")
    return parser


def _collect_overrides(args) -> "dict[str, str]":
    overrides = {}
    for key in ("step", "t_end", "seed"):
        value = getattr(args, key, None)
        if value is not None:
            overrides[key] = repr(value)
    if getattr(args, "snapshots", None):
        overrides["snapshots"] = args.snapshots
    return overrides


def _dispatch(args) -> int:
    if args.command == "verify":
        return run_verify(args.depth, args.out)
    scenarios = build_scenarios(
        preset=args.preset,
        scenario_file=args.scenario,
        overrides=_collect_overrides(args),
    )
    runner = {
        "solve-ermakov": run_solve_ermakov,
        "trajectory": run_trajectory,
        "evolve": run_evolve,
    }[args.command]
    for scenario in scenarios:
        manifest = runner(scenario, args.out, fmt=args.format)
        print(
            f"{args.command} {scenario.label} -> "
            f"{Path(args.out) / scenario.label} "
            f"[hash {scenario.hash}] ({manifest['wall_time_seconds']}s)"
        )
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except KvnoscError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
