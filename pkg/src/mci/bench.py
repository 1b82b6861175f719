"""Benchmark harness: run solvers and enumerators over generated
scenarios under a per-instance time limit, collect one record per
(instance, algorithm) pair, and summarize per scenario.

Mean times and mean constraint counts in summaries are taken over the
instances solved within the limit only. Enumeration records carry
(solution count, wall time) pairs, which is the scatter data for
comparing the two enumeration methods.
"""

from __future__ import annotations

import csv
import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import cga, enumeration, flow
from .generator import Scenario, generate_instance
from .hypergraph import Hypergraph

ALGORITHMS = (
    "cga-s1",
    "cga-s2",
    "cga-s3",
    "cga-s4",
    "cga-s5",
    "cga-s6",
    "flow",
    "enum-naive",
    "enum-chunked",
    "oracle",
)

CSV_COLUMNS = (
    "n",
    "density",
    "htype",
    "seed",
    "index",
    "algorithm",
    "solved",
    "wall_time",
    "cost",
    "constraints",
    "iterations",
    "solution_count",
)

SUMMARY_COLUMNS = (
    "n",
    "density",
    "htype",
    "seed",
    "algorithm",
    "instances",
    "solved",
    "mean_wall_time",
    "mean_cost",
    "mean_constraints",
    "mean_iterations",
    "mean_solution_count",
)


@dataclass
class BenchRecord:
    """One (instance, algorithm) result row.

    `solved` is False exactly when the run hit the time limit (failed
    runs are clamped to the limit so the invariant solved=False =>
    wall_time >= limit holds); cost is present iff solved.
    """

    n: int
    density: int
    htype: int
    seed: int
    index: int
    algorithm: str
    solved: bool
    wall_time: float
    cost: int | None
    constraints: int
    iterations: int
    solution_count: int | None

    def to_row(self) -> list[str]:
        def fmt(v):
            if v is None:
                return ""
            if isinstance(v, bool):
                return "true" if v else "false"
            if isinstance(v, float):
                return f"{v:.3f}"
            return str(v)

        return [fmt(getattr(self, col)) for col in CSV_COLUMNS]

    @classmethod
    def from_row(cls, row: Sequence[str]) -> "BenchRecord":
        vals = dict(zip(CSV_COLUMNS, row))
        return cls(
            n=int(vals["n"]),
            density=int(vals["density"]),
            htype=int(vals["htype"]),
            seed=int(vals["seed"]),
            index=int(vals["index"]),
            algorithm=vals["algorithm"],
            solved=vals["solved"] == "true",
            wall_time=float(vals["wall_time"]),
            cost=int(vals["cost"]) if vals["cost"] else None,
            constraints=int(vals["constraints"]),
            iterations=int(vals["iterations"]),
            solution_count=int(vals["solution_count"]) if vals["solution_count"] else None,
        )


def run_algorithm(h: Hypergraph, algorithm: str, time_limit: float) -> dict:
    """Solve one instance with one algorithm; wall time covers the solve
    call only, never instance construction."""
    if algorithm.startswith("cga-s"):
        strategy = cga.Strategy.from_number(int(algorithm[-1]))
        g, st = cga.solve_mci(h, strategy, time_limit)
        return {
            "solved": not st.timed_out,
            "wall_time": st.wall_time,
            "cost": None if st.timed_out else g.cost(),
            "constraints": st.final_constraint_count,
            "iterations": st.iterations,
            "solution_count": None,
        }
    if algorithm == "flow":
        g, st = flow.solve_flow_baseline(h, time_limit)
        return {
            "solved": not st.timed_out,
            "wall_time": st.wall_time,
            "cost": None if st.timed_out else g.cost(),
            "constraints": st.final_constraint_count,
            "iterations": st.iterations,
            "solution_count": None,
        }
    if algorithm in ("enum-naive", "enum-chunked"):
        fn = (
            enumeration.enumerate_naive
            if algorithm == "enum-naive"
            else enumeration.enumerate_chunked
        )
        st = cga.RunStats()
        sols = fn(h, time_limit, stats=st)
        return {
            "solved": sols.complete,
            "wall_time": st.wall_time,
            "cost": sols.optimal_cost if sols.complete else None,
            "constraints": st.final_constraint_count,
            "iterations": st.iterations,
            "solution_count": sols.count,
        }
    if algorithm == "oracle":
        t0 = time.perf_counter()
        g = cga.full_bipartition_oracle(h, time_limit=time_limit)
        constraints = cga.bipartition_cut_count(h) + sum(
            1 for s in h.hyperedges if len(s) >= 2
        )
        return {
            "solved": True,
            "wall_time": time.perf_counter() - t0,
            "cost": g.cost(),
            "constraints": constraints,
            "iterations": 1,
            "solution_count": None,
        }
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _run_job(args) -> tuple[int, dict]:
    pos, scenario, index, algorithm, time_limit = args
    h = generate_instance(scenario, index)
    try:
        fields = run_algorithm(h, algorithm, time_limit)
    except Exception:  # a failed job consumes its budget, never the batch
        fields = {
            "solved": False,
            "wall_time": time_limit,
            "cost": None,
            "constraints": 0,
            "iterations": 0,
            "solution_count": None,
        }
    if not fields["solved"]:
        fields["wall_time"] = max(fields["wall_time"], time_limit)
    return pos, fields


def run_benchmark(
    scenarios: Iterable[Scenario],
    algorithms: Sequence[str],
    time_limit: float = 900.0,
    workers: int = 1,
) -> list[BenchRecord]:
    """One record per (instance, algorithm), in scenario/index/algorithm
    order. workers > 1 dispatches jobs to a process pool; each job owns
    its solver state and results are merged by this single writer."""
    for algo in algorithms:
        if algo not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {algo!r}")
    jobs = []
    meta = []
    for scenario in scenarios:
        for index in range(scenario.count):
            for algo in algorithms:
                jobs.append((len(jobs), scenario, index, algo, time_limit))
                meta.append((scenario, index, algo))
    results: dict[int, dict] = {}
    if workers <= 1:
        for job in jobs:
            pos, fields = _run_job(job)
            results[pos] = fields
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for pos, fields in pool.map(_run_job, jobs):
                results[pos] = fields
    records = []
    for pos, (scenario, index, algo) in enumerate(meta):
        records.append(
            BenchRecord(
                n=scenario.n,
                density=scenario.density,
                htype=scenario.htype,
                seed=scenario.seed,
                index=index,
                algorithm=algo,
                **results[pos],
            )
        )
    return records


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for record in records:
        writer.writerow(record.to_row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[BenchRecord]:
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {header}")
    return [BenchRecord.from_row(row) for row in reader if row]


def summarize(records: Iterable[BenchRecord]) -> list[dict]:
    """Per-(scenario, algorithm) summary: solved counts plus means over
    the solved instances, mirroring the comparison-table layout."""
    groups: dict[tuple, list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.n, r.density, r.htype, r.seed, r.algorithm), []).append(r)

    def mean(vals):
        vals = [v for v in vals if v is not None]
        return round(sum(vals) / len(vals), 3) if vals else None

    rows = []
    for (n, density, htype, seed, algo), group in groups.items():
        solved = [r for r in group if r.solved]
        rows.append(
            {
                "n": n,
                "density": density,
                "htype": htype,
                "seed": seed,
                "algorithm": algo,
                "instances": len(group),
                "solved": len(solved),
                "mean_wall_time": mean([r.wall_time for r in solved]),
                "mean_cost": mean([r.cost for r in solved]),
                "mean_constraints": mean([r.constraints for r in solved]),
                "mean_iterations": mean([r.iterations for r in solved]),
                "mean_solution_count": mean([r.solution_count for r in solved]),
            }
        )
    return rows


def summary_to_csv(rows: Iterable[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SUMMARY_COLUMNS)
    for row in rows:
        writer.writerow(["" if row[c] is None else row[c] for c in SUMMARY_COLUMNS])
    return buf.getvalue()


def parse_scenarios(text: str) -> list[Scenario]:
    """Scenario files: one `n density type count seed` line per scenario,
    `#` comments and blank lines allowed."""
    scenarios = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 5:
            raise ValueError(f"line {lineno}: expected 'n density type count seed'")
        n, density, htype, count, seed = (int(p) for p in parts)
        scenarios.append(Scenario(n=n, density=density, htype=htype, count=count, seed=seed))
    return scenarios
