#!/usr/bin/env python3
"""Benchmark the pure-Python batch loop against the compiled kernel.

Times the assignment loop itself (fleet and workload prebuilt) and the
end-to-end scenario run, checks both backends return identical results, and
reports wall times.  The AWLC rows are the interesting ones: its
per-assignment weight refresh makes the batch loop O(n_tasks * n_servers).

Usage: python benchmarks/bench_backends.py [--n-tasks N] [--repeat K]
"""

import argparse
import time

from lbsim import ScenarioConfig, SchedulerKind, build_fleet, generate_workload, run_scenario
from lbsim.backends import assign_batch, compiled_available


def time_assign(cfg, backend, repeat):
    tasks = generate_workload(cfg)
    model = cfg.resolved_resource_model()
    best = float("inf")
    out = None
    for _ in range(repeat):
        fleet = build_fleet(cfg)
        t0 = time.perf_counter()
        out = assign_batch(fleet, tasks, cfg.scheduler, cfg.weight_params, model, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, out


def time_scenario(cfg, backend, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = run_scenario(cfg, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-tasks", type=int, default=15000)
    ap.add_argument("--n-servers", type=int, default=15)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument(
        "--schedulers",
        default="lc,wlc,awlc",
        help="comma-separated subset of rr,wrr,lc,wlc,awlc",
    )
    args = ap.parse_args()

    if not compiled_available():
        print("compiled backend not built; nothing to compare")
        return 1

    kinds = [SchedulerKind(k.strip()) for k in args.schedulers.split(",")]
    print(
        f"n_servers={args.n_servers} n_tasks={args.n_tasks} seed={args.seed} "
        f"(best of {args.repeat})"
    )
    header = f"{'scheduler':>9} {'python':>10} {'compiled':>10} {'speedup':>8}"

    print("\nassignment loop only:")
    print(header)
    for kind in kinds:
        cfg = ScenarioConfig(
            n_servers=args.n_servers, n_tasks=args.n_tasks, scheduler=kind, seed=args.seed
        )
        t_py, a_py = time_assign(cfg, "python", args.repeat)
        t_c, a_c = time_assign(cfg, "compiled", args.repeat)
        assert a_py == a_c, f"{kind.value}: backends disagree"
        print(f"{kind.value:>9} {t_py * 1e3:>9.1f}ms {t_c * 1e3:>9.1f}ms {t_py / t_c:>7.1f}x")

    print("\nend-to-end run_scenario (includes workload generation):")
    print(header)
    for kind in kinds:
        cfg = ScenarioConfig(
            n_servers=args.n_servers, n_tasks=args.n_tasks, scheduler=kind, seed=args.seed
        )
        t_py, r_py = time_scenario(cfg, "python", args.repeat)
        t_c, r_c = time_scenario(cfg, "compiled", args.repeat)
        assert r_py == r_c, f"{kind.value}: backends disagree"
        print(f"{kind.value:>9} {t_py * 1e3:>9.1f}ms {t_c * 1e3:>9.1f}ms {t_py / t_c:>7.1f}x")

    print("\nresults identical across backends")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
