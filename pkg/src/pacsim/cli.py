"""Command-line front end.

Subcommands:

* run      -- simulate one engine over a workload; write trace/stats files
* schedule -- print the fixed-width schedule table (defaults to the p=3 demo)
* verify   -- run and check every result and engine invariant; exit 0 iff clean
* sweep    -- simulate a (p, L) grid at minimum-length workloads; emit CSV
* compare  -- run both engines on one workload and report stalls/latency

Exit codes: 0 success, 1 verification or engine invariant failure,
2 configuration/workload errors.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .arith import EXACT, IEEE
from .errors import ConfigError, EngineError, WorkloadError
from .jugglepac import (
    EngineConfig,
    drain_residency_bound,
    min_dataset_length,
    ramp_cycles,
)
from .oracle import verify_result
from .runner import run_jugglepac, run_simplepac
from .trace import render_schedule, write_stats_csv, write_trace_csv, write_trace_jsonl
from .workload import WorkloadSpec, expand, load_workload

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _add_engine_args(sub, default_p=14, default_l=2):
    sub.add_argument("--engine", choices=["jugglepac", "simplepac"], default="jugglepac")
    sub.add_argument("-p", "--latency", type=int, default=default_p, metavar="P",
                     help=f"adder pipeline latency in cycles (default {default_p})")
    sub.add_argument("-L", "--label-width", type=int, default=default_l, metavar="L",
                     help=f"label width in bits (default {default_l})")
    sub.add_argument("--mode", choices=[EXACT, IEEE], default=EXACT)
    sub.add_argument("--no-enforce", action="store_true",
                     help="disable the minimum-dataset-length constraint")


def _add_workload_args(sub, default_datasets=None):
    sub.add_argument("--workload", metavar="FILE", help="JSON workload file")
    sub.add_argument("--datasets", metavar="N,N,...", default=default_datasets,
                     help="comma-separated dataset lengths, back to back")
    sub.add_argument("--random", type=int, metavar="COUNT",
                     help="number of seeded random datasets")
    sub.add_argument("--len-range", metavar="LO:HI",
                     help="random dataset length range (default min:2*min)")
    sub.add_argument("--values", choices=["uniform", "indexed"], default=None,
                     help="value policy (default: indexed for explicit lengths, uniform for random)")
    sub.add_argument("--gap-prob", type=float, default=None, metavar="P",
                     help="per-cycle gap probability")
    sub.add_argument("--gap-between", type=int, default=None, metavar="N",
                     help="fixed gap cycles between datasets")
    sub.add_argument("--seed", type=int, default=None)


def _build_spec(args, minimum: int) -> WorkloadSpec:
    """Assemble the workload spec; flags override file fields with a warning."""
    if args.workload:
        spec = load_workload(args.workload)
        for flag, field_name in (
            ("seed", "seed"),
            ("gap_prob", "gap_probability"),
            ("gap_between", "gap_between"),
        ):
            value = getattr(args, flag)
            if value is not None and getattr(spec, field_name) != value:
                print(
                    f"warning: --{flag.replace('_', '-')} {value} overrides workload file "
                    f"{field_name}={getattr(spec, field_name)}",
                    file=sys.stderr,
                )
                setattr(spec, field_name, value)
        if spec.mode != args.mode:
            spec.mode = args.mode
        return spec
    if args.datasets:
        lengths = [int(x) for x in args.datasets.split(",") if x]
        return WorkloadSpec(
            seed=args.seed or 0,
            count=len(lengths),
            lengths=lengths,
            value_policy=args.values or "indexed",
            gap_probability=args.gap_prob or 0.0,
            gap_between=args.gap_between or 0,
            mode=args.mode,
        )
    if args.random is not None:
        lo, hi = minimum, 2 * minimum
        if args.len_range:
            lo, hi = (int(x) for x in args.len_range.split(":"))
        return WorkloadSpec(
            seed=args.seed or 0,
            count=args.random,
            length_range=(lo, hi),
            value_policy=args.values or "uniform",
            gap_probability=args.gap_prob or 0.0,
            gap_between=args.gap_between or 0,
            mode=args.mode,
        )
    raise WorkloadError("no workload given: use --workload, --datasets, or --random")


def _run_engine(args, events):
    if args.engine == "jugglepac":
        config = EngineConfig(
            adder_latency_p=args.latency,
            label_width_L=args.label_width,
            mode=args.mode,
            enforce_min_length=not args.no_enforce,
        )
        return run_jugglepac(config, events)
    return run_simplepac(args.latency, events, mode=args.mode)


def cmd_run(args) -> int:
    minimum = min_dataset_length(args.latency, args.label_width)
    spec = _build_spec(args, minimum)
    enforce = not args.no_enforce and args.engine == "jugglepac"
    events, datasets = expand(spec, minimum_length=minimum, enforce=enforce)
    result = _run_engine(args, events)
    if args.schedule:
        records = result.records
        if args.cycles is not None:
            records = records[: args.cycles]
        print(render_schedule(records), end="")
    if args.trace_csv:
        with open(args.trace_csv, "w", encoding="utf-8") as fp:
            write_trace_csv(result.records, fp)
    if args.trace_jsonl:
        with open(args.trace_jsonl, "w", encoding="utf-8") as fp:
            write_trace_jsonl(result.records, fp)
    if args.stats_csv:
        with open(args.stats_csv, "w", encoding="utf-8") as fp:
            write_stats_csv(result.stats, fp)
    if not args.schedule:
        s = result.stats
        print(
            f"engine={args.engine} p={args.latency} L={args.label_width} seed={spec.seed} "
            f"datasets={len(result.results)} cycles={s.total_cycles} stalls={s.stall_cycles} "
            f"max_fifo={s.max_fifo} max_counter={s.max_counter}"
        )
    return EXIT_OK


def cmd_schedule(args) -> int:
    args.schedule = True
    args.trace_csv = args.trace_jsonl = args.stats_csv = None
    if not hasattr(args, "cycles"):
        args.cycles = None
    return cmd_run(args)


def cmd_verify(args) -> int:
    if args.mode != EXACT:
        raise ConfigError("verify requires exact mode")
    p, width = args.latency, args.label_width
    minimum = min_dataset_length(p, width)
    spec = _build_spec(args, minimum)
    enforce = not args.no_enforce
    events, datasets = expand(spec, minimum_length=minimum, enforce=enforce)
    valid_events = sum(1 for e in events if e.valid)

    config = EngineConfig(
        adder_latency_p=p, label_width_L=width, mode=EXACT, enforce_min_length=enforce,
    )
    try:
        result = run_jugglepac(config, events, trace=False)
    except EngineError as exc:
        print(f"FAIL: engine fault: {exc}")
        return EXIT_FAIL

    failures = []
    engine = result.engine
    for res in result.results:
        verdict = verify_result(res, datasets[res.ordinal])
        if not verdict.passed:
            failures.append(verdict.message())
    if len(result.results) != len(datasets):
        failures.append(f"{len(datasets)} datasets in, {len(result.results)} results out")
    if engine.accepted != valid_events:
        failures.append(f"accepted {engine.accepted} of {valid_events} valid inputs")
    if result.stats.stall_cycles != 0:
        failures.append(f"{result.stats.stall_cycles} stall cycles")
    if engine.max_fifo > engine.fifo_capacity:
        failures.append(f"FIFO occupancy {engine.max_fifo} exceeded capacity {engine.fifo_capacity}")
    if engine.max_counter > p + 2:
        failures.append(f"counter peaked at {engine.max_counter} > p+2 = {p + 2}")
    bound = drain_residency_bound(p)
    for ordinal, latency in result.stats.drain_latency.items():
        if latency > bound:
            failures.append(f"dataset {ordinal} drain latency {latency} > bound {bound}")
    if engine.first_state0_cycle is not None and engine.first_state0_cycle < ramp_cycles(p):
        failures.append(
            f"subsum addition issued at cycle {engine.first_state0_cycle}, "
            f"before the ramp bound {ramp_cycles(p)}"
        )
    if width <= 2 and not result.stats.in_order():
        failures.append(f"results out of order: {result.stats.output_order}")
    if engine.diagnostics:
        for diag in engine.diagnostics:
            failures.append(f"mixing diagnostic: cycle {diag.cycle} label {diag.label} ({diag.kind})")

    if failures:
        print(f"FAIL: {len(failures)} problem(s)")
        for line in failures:
            print(f"  {line}")
        return EXIT_FAIL
    print(
        f"PASS: {len(result.results)} datasets verified "
        f"(p={p}, L={width}, seed={spec.seed}, cycles={result.stats.total_cycles})"
    )
    return EXIT_OK


def cmd_sweep(args) -> int:
    p_values = [int(x) for x in args.p_list.split(",")]
    l_values = [int(x) for x in args.L_list.split(",")]
    rows = []
    for p in p_values:
        for width in l_values:
            minimum = min_dataset_length(p, width)
            spec = WorkloadSpec(
                seed=args.seed or 0,
                count=args.datasets_per_cell,
                lengths=[minimum] * args.datasets_per_cell,
                value_policy="uniform",
            )
            events, _ = expand(spec)
            config = EngineConfig(adder_latency_p=p, label_width_L=width)
            result = run_jugglepac(config, events, trace=False)
            worst = max(result.stats.drain_latency.values(), default=0)
            rows.append([p, width, minimum, result.stats.max_fifo,
                         result.stats.max_counter, worst])
    writer = csv.writer(
        open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout,
        lineterminator="\n",
    )
    writer.writerow(["p", "L", "min_length", "max_fifo", "max_counter", "worst_drain_latency"])
    writer.writerows(rows)
    return EXIT_OK


def cmd_compare(args) -> int:
    minimum = min_dataset_length(args.latency, args.label_width)
    spec = _build_spec(args, minimum)
    events, datasets = expand(spec, minimum_length=minimum, enforce=not args.no_enforce)
    config = EngineConfig(
        adder_latency_p=args.latency,
        label_width_L=args.label_width,
        mode=args.mode,
        enforce_min_length=not args.no_enforce,
    )
    juggle = run_jugglepac(config, list(events))
    simple = run_simplepac(args.latency, list(events), mode=args.mode)
    ws = 12
    print(f"{'':<24}{'jugglepac':>{ws}}{'simplepac':>{ws}}")
    print(f"{'stall cycles':<24}{juggle.stats.stall_cycles:>{ws}}{simple.stats.stall_cycles:>{ws}}")
    print(f"{'total cycles':<24}{juggle.stats.total_cycles:>{ws}}{simple.stats.total_cycles:>{ws}}")
    for ordinal in sorted(juggle.stats.drain_latency):
        jl = juggle.stats.drain_latency[ordinal]
        sl = simple.stats.drain_latency.get(ordinal, "-")
        print(f"{f'dataset {ordinal} latency':<24}{jl:>{ws}}{sl:>{ws}}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pacsim",
        description="Cycle-accurate simulation of pipelined accumulation circuits",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run = subs.add_parser("run", help="simulate and write trace/stats files")
    _add_engine_args(run)
    _add_workload_args(run)
    run.add_argument("--schedule", action="store_true", help="print the schedule table")
    run.add_argument("--cycles", type=int, default=None, metavar="N",
                     help="limit the printed schedule to the first N cycles")
    run.add_argument("--trace-csv", metavar="PATH")
    run.add_argument("--trace-jsonl", metavar="PATH")
    run.add_argument("--stats-csv", metavar="PATH")
    run.set_defaults(func=cmd_run)

    sched = subs.add_parser("schedule", help="print a schedule table (p=3 demo by default)")
    _add_engine_args(sched, default_p=3, default_l=2)
    _add_workload_args(sched, default_datasets="6,8")
    sched.add_argument("--cycles", type=int, default=None, metavar="N",
                       help="limit the printed schedule to the first N cycles")
    sched.set_defaults(func=cmd_schedule)

    verify = subs.add_parser("verify", help="check results and invariants; exit 0 iff clean")
    _add_engine_args(verify)
    _add_workload_args(verify)
    verify.set_defaults(func=cmd_verify)

    sweep = subs.add_parser("sweep", help="grid of (p, L) cells at minimum-length workloads")
    sweep.add_argument("--p-list", default="1,2,3,5,14", metavar="P,P,...")
    sweep.add_argument("--L-list", default="1,2,3,4", metavar="L,L,...")
    sweep.add_argument("--datasets-per-cell", type=int, default=6)
    sweep.add_argument("--seed", type=int, default=None)
    sweep.add_argument("--out", metavar="PATH", help="CSV output (default stdout)")
    sweep.set_defaults(func=cmd_sweep)

    compare = subs.add_parser("compare", help="run both engines on one workload")
    _add_engine_args(compare)
    _add_workload_args(compare)
    compare.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, WorkloadError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EngineError as exc:
        print(f"engine fault: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
