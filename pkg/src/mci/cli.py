"""Command-line front end.

Subcommands: gen (write instance files), solve (constraint generation),
flow (baseline), enum (collect all optimal solutions), bench (scenario
sweeps to CSV), export (LP files for external solvers). Exit codes:
0 success, 1 usage error, 2 instance error, 3 time-out in
single-instance mode.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench as bench_mod
from . import cga, enumeration, flow, ilp
from .generator import Scenario, generate_instance, instance_filename
from .instance_io import InstanceFormatError, parse_instance, write_instance

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INSTANCE = 2
EXIT_TIMEOUT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _load_instance(path: str):
    return parse_instance(Path(path).read_text())


def _print_solution(g, st) -> None:
    print(f"cost {g.cost()}")
    print("edges " + " ".join(f"{u}-{v}" for u, v in g.canonical_edges()))
    print(
        f"iterations {st.iterations} constraints {st.final_constraint_count} "
        f"solver-calls {st.solver_calls} wall-time {st.wall_time:.3f} "
        f"timed-out {'true' if st.timed_out else 'false'}"
    )


def cmd_gen(args) -> int:
    scenario = Scenario(
        n=args.n, density=args.density, htype=args.type, count=args.count, seed=args.seed
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for index in range(scenario.count):
        h = generate_instance(scenario, index)
        path = outdir / instance_filename(scenario, index)
        path.write_text(write_instance(h))
        print(path)
    return EXIT_OK


def cmd_solve(args) -> int:
    h = _load_instance(args.input)
    strategy = cga.Strategy.from_number(args.strategy)
    g, st = cga.solve_mci(h, strategy, args.time_limit)
    _print_solution(g, st)
    return EXIT_TIMEOUT if st.timed_out else EXIT_OK


def cmd_flow(args) -> int:
    h = _load_instance(args.input)
    g, st = flow.solve_flow_baseline(h, args.time_limit)
    _print_solution(g, st)
    return EXIT_TIMEOUT if st.timed_out else EXIT_OK


def cmd_enum(args) -> int:
    h = _load_instance(args.input)
    fn = (
        enumeration.enumerate_naive
        if args.method == "naive"
        else enumeration.enumerate_chunked
    )
    sols = fn(h, args.time_limit)
    sys.stdout.write(sols.serialize())
    return EXIT_OK if sols.complete else EXIT_TIMEOUT


def cmd_export(args) -> int:
    h = _load_instance(args.input)
    if args.kind == "flow":
        model = flow.build_flow_model(h).model
    else:
        model = cga.build_model(h, cga.singleton_cuts(h))
    Path(args.out).write_text(ilp.export_lp(model))
    print(args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    scenarios = bench_mod.parse_scenarios(Path(args.scenarios).read_text())
    algorithms = [a.strip() for a in args.algos.split(",") if a.strip()]
    for algo in algorithms:
        if algo not in bench_mod.ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}")
    records = bench_mod.run_benchmark(
        scenarios, algorithms, time_limit=args.time_limit, workers=args.workers
    )
    out = Path(args.out)
    out.write_text(bench_mod.records_to_csv(records))
    summary = bench_mod.summarize(records)
    summary_path = out.with_name(out.stem + "_summary" + (out.suffix or ".csv"))
    summary_path.write_text(bench_mod.summary_to_csv(summary))
    print(out)
    print(summary_path)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="mci", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate seeded instance files")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--density", type=int, required=True)
    p.add_argument("--type", type=int, required=True, choices=(1, 2, 3, 4, 5))
    p.add_argument("--count", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="solve one instance by constraint generation")
    p.add_argument("--strategy", type=int, default=4, choices=(1, 2, 3, 4, 5, 6))
    p.add_argument("--time-limit", type=float, default=900.0)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("flow", help="solve one instance with the flow baseline")
    p.add_argument("--time-limit", type=float, default=900.0)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("enum", help="enumerate all optimal solutions")
    p.add_argument("--method", required=True, choices=("naive", "chunked"))
    p.add_argument("--time-limit", type=float, default=900.0)
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("bench", help="run a scenario sweep and write CSV tables")
    p.add_argument("--scenarios", required=True, help="scenario file")
    p.add_argument("--algos", required=True, help="comma-separated algorithm list")
    p.add_argument("--time-limit", type=float, default=900.0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default="results.csv")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("export", help="write a model as an LP file")
    p.add_argument("--kind", required=True, choices=("cut-initial", "flow"))
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InstanceFormatError as exc:
        print(f"instance error: {exc}", file=sys.stderr)
        return EXIT_INSTANCE
    except OSError as exc:
        print(f"instance error: {exc}", file=sys.stderr)
        return EXIT_INSTANCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
