"""Command-line front end: run scenarios, compare schedulers, replay traces.

Exit codes: 0 success, 1 configuration/input error, 2 simulation error.
"""

import argparse
import hashlib
import statistics
import sys
from dataclasses import replace
from pathlib import Path

from .errors import InvalidConfig, InvalidIdleRate, MalformedRecord, NoServerAvailable, UnknownServer
from .metrics import (
    format_real,
    summarize,
    write_comparison_csv,
    write_per_server_csv,
    write_plot_series_csv,
    write_summary_csv,
)
from .schedulers import SchedulerKind
from .simulator import build_fleet, generate_workload, load_config, run_scenario
from .telemetry import apply_telemetry, iter_telemetry

COMPARED = (SchedulerKind.LC, SchedulerKind.WLC, SchedulerKind.AWLC)


def _rep_configs(cfg, n_reps):
    return [replace(cfg, seed=cfg.seed + k) for k in range(n_reps)]


def _print_summary_table(rows):
    print(f"{'scheduler':>9} {'n_tasks':>8} {'seed':>6} {'mean':>12} {'stddev':>12} {'cv':>8}")
    for r in rows:
        print(
            f"{r.scheduler.value:>9} {r.n_tasks:>8} {r.seed:>6} "
            f"{format_real(r.mean):>12} {format_real(r.stddev):>12} {format_real(r.cv):>8}"
        )


def _workload_digest(cfg):
    h = hashlib.sha256()
    for t in generate_workload(cfg):
        h.update(repr((t.id, int(t.task_class), t.service_demand, t.arrival_time)).encode())
    return h.hexdigest()


def cmd_run(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.scheduler:
            cfg = replace(cfg, scheduler=SchedulerKind(args.scheduler))
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    configs = _rep_configs(cfg, args.replications)
    try:
        results = [run_scenario(c) for c in configs]
    except NoServerAvailable as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return 2

    rows = [summarize(res, c) for c, res in zip(configs, results)]
    write_per_server_csv(out / "per_server.csv", zip(configs, results))
    write_summary_csv(out / "summary.csv", rows)
    _print_summary_table(rows)
    if args.verbose:
        print(f"wrote {out / 'per_server.csv'} and {out / 'summary.csv'}")
    return 0


def cmd_compare(args) -> int:
    try:
        cfg = load_config(args.config)
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    all_rows = []
    per_kind = {}
    first_run = []
    digests = None
    try:
        for kind in COMPARED:
            configs = _rep_configs(replace(cfg, scheduler=kind), args.replications)
            # identical workloads per seed across schedulers, verified by hash
            kind_digests = [_workload_digest(c) for c in configs]
            if digests is None:
                digests = kind_digests
            elif kind_digests != digests:
                print("internal error: compared schedulers saw different workloads", file=sys.stderr)
                return 2
            results = [run_scenario(c) for c in configs]
            rows = [summarize(res, c) for c, res in zip(configs, results)]
            all_rows.extend(rows)
            per_kind[kind] = rows
            first_run.append((kind, results[0]))
    except NoServerAvailable as exc:
        print(f"simulation error: {exc}", file=sys.stderr)
        return 2

    write_comparison_csv(out / "comparison.csv", all_rows)
    write_plot_series_csv(out / "plot_series.csv", first_run)

    med_stddev = {k: statistics.median(r.stddev for r in rows) for k, rows in per_kind.items()}
    med_mean = {k: statistics.median(r.mean for r in rows) for k, rows in per_kind.items()}
    print(f"n_tasks={cfg.n_tasks} servers={cfg.n_servers} replications={args.replications} base seed={cfg.seed}")
    print(f"{'scheduler':>9} {'median mean':>14} {'median stddev':>14}")
    for kind in COMPARED:
        print(f"{kind.value:>9} {format_real(med_mean[kind]):>14} {format_real(med_stddev[kind]):>14}")
    best_sd = min(COMPARED, key=lambda k: med_stddev[k])
    best_mean = min(COMPARED, key=lambda k: med_mean[k])
    print(f"lowest median stddev (best load balance): {best_sd.value}")
    print(f"lowest median mean (best efficiency): {best_mean.value}")
    return 0


def cmd_replay(args) -> int:
    try:
        cfg = load_config(args.config)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fleet = build_fleet(cfg)
    try:
        with open(args.telemetry, encoding="utf-8") as fh:
            for lineno, rec in iter_telemetry(fh):
                try:
                    apply_telemetry(fleet, rec, cfg.weight_params)
                except UnknownServer as exc:
                    print(f"error: line {lineno}: {exc}", file=sys.stderr)
                    return 1
                print(
                    f"t={rec.time:.3f} server={rec.server} vc={rec.cpu_idle_rate:.4f} "
                    f"vm={rec.mem_idle_rate:.4f} weight={fleet[rec.server].dynamic_weight:.6f}"
                )
    except OSError as exc:
        print(f"error: cannot read telemetry file {args.telemetry}: {exc}", file=sys.stderr)
        return 1
    except (MalformedRecord, InvalidIdleRate) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lbsim",
        description="Load-balancing schedulers and a deterministic scenario simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario (optionally replicated)")
    run.add_argument("--config", required=True, help="scenario config file (JSON)")
    run.add_argument("--scheduler", choices=[k.value for k in SchedulerKind], help="override the configured scheduler")
    run.add_argument("--seed", type=int, help="override the configured seed")
    run.add_argument("--replications", type=int, default=1, help="number of replications (seeds seed..seed+n-1)")
    run.add_argument("--out", default="results", help="output directory for CSV files")
    run.add_argument("-v", "--verbose", action="store_true")

    comp = sub.add_parser("compare", help="run lc/wlc/awlc on identical workloads")
    comp.add_argument("--config", required=True)
    comp.add_argument("--seed", type=int, help="override the configured seed")
    comp.add_argument("--replications", type=int, default=30)
    comp.add_argument("--out", default="results")

    rep = sub.add_parser("replay", help="replay a telemetry trace against a fleet")
    rep.add_argument("--config", required=True)
    rep.add_argument("--telemetry", required=True, help="telemetry file (one JSON record per line)")

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args)
    if args.command == "compare":
        return cmd_compare(args)
    return cmd_replay(args)


if __name__ == "__main__":
    sys.exit(main())
