"""Command-line entry point.

Subcommands
-----------
simulate      run one simulation, write sim.csv
verify-dirac  sample the structure pairing, write dirac_report.json
power-audit   run one simulation, write power.csv
converge      mesh-refinement study, write convergence.csv
demo-paper    the full built-in demo: all four artifacts

Validation failures exit with status 1, numeric aborts with status 2;
both print a machine-readable JSON object on stderr.
"""

import argparse
import json
import sys
from pathlib import Path

from . import config as config_mod
from .dirac import verify_dirac
from .errors import (
    AssumptionViolation,
    CflViolation,
    ConfigError,
    MBPHError,
    NonFiniteState,
)
from .timeloop import SimRecord, convergence_study, simulate

_NUMERIC_ABORTS = (NonFiniteState, AssumptionViolation)


def _fmt(v: float) -> str:
    return f"{v:.17g}"


def write_sim_csv(path: Path, records: list[SimRecord]) -> None:
    """Schema: t,a,b,da,db,H,dH_dt,port_power,residual,max_err followed by
    the element states x_1..x_{nN} (element-major) and the nodal efforts
    e_1..e_{n(N+1)} (node-major)."""
    n_state = records[0].x.size
    n_eff = records[0].e.size
    header = (
        ["t", "a", "b", "da", "db", "H", "dH_dt", "port_power", "residual", "max_err"]
        + [f"x_{i + 1}" for i in range(n_state)]
        + [f"e_{i + 1}" for i in range(n_eff)]
    )
    lines = [",".join(header)]
    for r in records:
        scalars = [r.t, r.a, r.b, r.da, r.db, r.H, r.dH_dt, r.port_power, r.residual, r.max_err]
        row = [_fmt(v) for v in scalars]
        row += [_fmt(v) for v in r.x.ravel()]
        row += [_fmt(v) for v in r.e.ravel()]
        lines.append(",".join(row))
    path.write_text("\n".join(lines) + "\n")


def write_power_csv(path: Path, records: list[SimRecord]) -> None:
    lines = ["t,dH_dt,port_power,residual"]
    for r in records:
        lines.append(",".join(_fmt(v) for v in (r.t, r.dH_dt, r.port_power, r.residual)))
    path.write_text("\n".join(lines) + "\n")


def write_convergence_csv(path: Path, rows: list[dict]) -> None:
    lines = ["N,max_error,power_residual_peak"]
    for row in rows:
        lines.append(
            ",".join([str(row["N"]), _fmt(row["max_error"]), _fmt(row["power_residual_peak"])])
        )
    path.write_text("\n".join(lines) + "\n")


def run_verify_dirac(cfg: dict, out_dir: Path, quiet: bool) -> Path:
    system = config_mod.system_from_spec(cfg["system"])
    trajectory = config_mod.trajectory_from_spec(cfg["trajectory"])
    section = cfg["dirac"]
    per_t = [
        verify_dirac(
            system,
            trajectory,
            t=float(t),
            n_samples=int(section["n_samples"]),
            degree=int(section["degree"]),
            seed=int(cfg["seed"]),
            order=int(cfg["quad_order"]),
            panels=int(cfg["quad_panels"]),
        )
        for t in section["times"]
    ]
    report = {
        "max_abs_pairing": max(r["max_abs_pairing"] for r in per_t),
        "n_samples": sum(r["n_samples"] for r in per_t),
        "seed": int(cfg["seed"]),
        "pass": all(r["pass"] for r in per_t),
        "scale": max(r["scale"] for r in per_t),
        "per_t": per_t,
    }
    out = out_dir / "dirac_report.json"
    out.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    if not quiet:
        print(f"wrote {out} (pass={report['pass']})")
    return out


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mbph", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("simulate", "verify-dirac", "power-audit", "converge", "demo-paper"):
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, default=None, help="JSON configuration file")
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        p.add_argument("--n-elements", type=int, default=None)
        p.add_argument("--dt", type=float, default=None)
        p.add_argument("--t-end", type=float, default=None)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--quiet", action="store_true")
    return parser


def _load(args) -> dict:
    if args.config is not None:
        cfg = config_mod.load_config(args.config)
    else:
        cfg = config_mod.demo_config()
    for key, value in (
        ("n_elements", args.n_elements),
        ("dt", args.dt),
        ("t_end", args.t_end),
        ("seed", args.seed),
    ):
        if value is not None:
            cfg[key] = value
    return config_mod.normalize_config(cfg)


def run(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _load(args)
        out_dir = args.out
        out_dir.mkdir(parents=True, exist_ok=True)
        sim_cfg = config_mod.build_sim_config(cfg)

        if args.command == "simulate":
            records = simulate(sim_cfg)
            write_sim_csv(out_dir / "sim.csv", records)
            if not args.quiet:
                print(f"wrote {out_dir / 'sim.csv'} ({len(records)} rows)")
        elif args.command == "power-audit":
            records = simulate(sim_cfg)
            write_power_csv(out_dir / "power.csv", records)
            if not args.quiet:
                print(f"wrote {out_dir / 'power.csv'} ({len(records)} rows)")
        elif args.command == "verify-dirac":
            run_verify_dirac(cfg, out_dir, args.quiet)
        elif args.command == "converge":
            rows = convergence_study(sim_cfg, cfg["converge"]["n_list"])
            write_convergence_csv(out_dir / "convergence.csv", rows)
            if not args.quiet:
                print(f"wrote {out_dir / 'convergence.csv'}")
        elif args.command == "demo-paper":
            records = simulate(sim_cfg)
            write_sim_csv(out_dir / "sim.csv", records)
            write_power_csv(out_dir / "power.csv", records)
            run_verify_dirac(cfg, out_dir, args.quiet)
            rows = convergence_study(sim_cfg, cfg["converge"]["n_list"])
            write_convergence_csv(out_dir / "convergence.csv", rows)
            if not args.quiet:
                print(f"wrote demo artifacts to {out_dir}")
    except _NUMERIC_ABORTS as exc:
        _emit_error(exc)
        return 2
    except (ConfigError, CflViolation, MBPHError, OSError) as exc:
        _emit_error(exc)
        return 1
    return 0


def _emit_error(exc: Exception) -> None:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    print(json.dumps(payload), file=sys.stderr)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
