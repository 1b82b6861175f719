"""Enumeration of all optimal solutions.

Both methods drive the constraint-generation solver with a cost-fixing
row that pins the objective to the optimal value c*, so every re-solve
either produces a fresh optimal solution or proves exhaustion by
infeasibility. The naive method forbids every found solution with one
row each; the chunked method walks a neighborhood chain from each found
solution (forcing one of its edges to zero per step, constraints scoped
to the chain and retracted afterwards) and then forbids the whole batch
at once. The cut pool persists across all re-solves.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import ilp
from .cga import (
    DEFAULT_STRATEGY,
    ConstraintGenerationSolver,
    RunStats,
    Strategy,
    edge_var,
)
from .hypergraph import Edge, Hypergraph, SolutionGraph

COST_GROUP = "cost"
FORBID_GROUP = "forbid"


@dataclass(frozen=True)
class SolutionSet:
    """All optimal solutions found, sorted lexicographically by their
    canonical edge lists. `complete` is False when a time limit cut the
    collection short; `optimal_cost` is None only if not even one
    solution was found in time."""

    solutions: tuple[SolutionGraph, ...]
    optimal_cost: int | None
    complete: bool

    @property
    def count(self) -> int:
        return len(self.solutions)

    def serialize(self) -> str:
        lines = [f"c* {self.optimal_cost} count {self.count}"]
        for g in self.solutions:
            lines.append(" ".join(f"{u}-{v}" for u, v in g.canonical_edges()))
        return "\n".join(lines) + "\n"


class EnumerationContext:
    """Shared state of one enumeration run: the persistent solver (model
    plus cut pool), the deadline, the accumulated stats, and the
    solutions registered so far."""

    def __init__(
        self,
        h: Hypergraph,
        strategy: Strategy = DEFAULT_STRATEGY,
        deadline: float | None = None,
    ):
        self.h = h
        self.solver = ConstraintGenerationSolver(h, strategy)
        self.deadline = deadline
        self.stats = RunStats()
        self.found: dict[tuple[Edge, ...], SolutionGraph] = {}
        self.optimal_cost: int | None = None
        self.outer_iterations = 0
        self._chains = 0

    def bootstrap(self) -> tuple[str, SolutionGraph | None]:
        """First optimization; on success pins the objective to c*."""
        status, g = self.solver.solve_to_feasible(self.deadline, self.stats)
        if status == ilp.OPTIMAL:
            self.optimal_cost = g.cost()
            coeffs = {edge_var(u, v): 1 for u, v in self.solver.edge_list}
            self.solver.model.add_constraint(coeffs, "=", self.optimal_cost, COST_GROUP)
        return status, g

    def register(self, g: SolutionGraph) -> bool:
        key = g.canonical_edges()
        if key in self.found:
            return False
        self.found[key] = g
        return True

    def forbid(self, g: SolutionGraph) -> None:
        coeffs = {edge_var(u, v): 1 for u, v in g.edges}
        self.solver.model.add_constraint(coeffs, "<=", g.cost() - 1, FORBID_GROUP)

    def result(self, complete: bool) -> SolutionSet:
        ordered = tuple(self.found[k] for k in sorted(self.found))
        return SolutionSet(ordered, self.optimal_cost, complete)


def explore_neighborhood(start: SolutionGraph, ctx: EnumerationContext) -> list[SolutionGraph]:
    """Chain of optimal solutions reached from `start` by edge forbidding.

    Each step forces the lexicographically smallest not-yet-forced edge
    of the current solution to zero and re-solves at cost c*; the chain
    ends when no such solution remains. Forcing rows accumulate within
    the chain and are retracted before returning. The start solution is
    always part of the result; rediscoveries of already-registered
    solutions are filtered out, not errors.
    """
    group = f"chain-{ctx._chains}"
    ctx._chains += 1
    neighborhood = [start]
    keys = {start.canonical_edges()}
    forced: set[Edge] = set()
    current = start
    try:
        while True:
            eligible = [e for e in current.canonical_edges() if e not in forced]
            if not eligible:
                break
            e = eligible[0]
            forced.add(e)
            ctx.solver.model.add_constraint({edge_var(*e): 1}, "=", 0, group)
            status, g = ctx.solver.solve_to_feasible(ctx.deadline, ctx.stats)
            if status != ilp.OPTIMAL:
                break
            current = g
            key = g.canonical_edges()
            if key not in keys and key not in ctx.found:
                neighborhood.append(g)
                keys.add(key)
    finally:
        ctx.solver.model.retract_group(group)
    return neighborhood


def enumerate_naive(
    h: Hypergraph,
    time_limit: float | None = 900.0,
    strategy: Strategy = DEFAULT_STRATEGY,
    stats: RunStats | None = None,
) -> SolutionSet:
    """All optimal solutions by forbidding each found one individually."""
    t0 = time.perf_counter()
    deadline = None if time_limit is None else t0 + time_limit
    ctx = EnumerationContext(h, strategy, deadline)
    status, g = ctx.bootstrap()
    complete = False
    while status == ilp.OPTIMAL:
        ctx.register(g)
        ctx.forbid(g)
        status, g = ctx.solver.solve_to_feasible(deadline, ctx.stats)
    if status == ilp.INFEASIBLE:
        complete = True
    ctx.stats.wall_time = time.perf_counter() - t0
    ctx.stats.final_constraint_count = ctx.solver.model.constraint_count
    if stats is not None:
        stats.__dict__.update(ctx.stats.__dict__)
    return ctx.result(complete)


def enumerate_chunked(
    h: Hypergraph,
    time_limit: float | None = 900.0,
    strategy: Strategy = DEFAULT_STRATEGY,
    stats: RunStats | None = None,
) -> SolutionSet:
    """All optimal solutions, collected chunk by chunk.

    Every outer round explores the neighborhood of a not-yet-registered
    optimal solution and then forbids the whole batch with one row per
    member, so the model grows once per chunk instead of once per
    solution.
    """
    t0 = time.perf_counter()
    deadline = None if time_limit is None else t0 + time_limit
    ctx = EnumerationContext(h, strategy, deadline)
    status, g = ctx.bootstrap()
    complete = False
    while status == ilp.OPTIMAL:
        ctx.outer_iterations += 1
        batch = explore_neighborhood(g, ctx)
        for sol in batch:
            ctx.register(sol)
            ctx.forbid(sol)
        if ctx.stats.timed_out:
            break
        status, g = ctx.solver.solve_to_feasible(deadline, ctx.stats)
        if status == ilp.INFEASIBLE:
            ctx.outer_iterations += 1  # the exhaustion-confirming round
            complete = True
    ctx.stats.wall_time = time.perf_counter() - t0
    ctx.stats.final_constraint_count = ctx.solver.model.constraint_count
    if stats is not None:
        stats.__dict__.update(ctx.stats.__dict__)
    return ctx.result(complete)
