"""Constraint generation for minimum connectivity inference.

The solver keeps a pool of cut constraints over the support graph's
edge variables, solves the current relaxed model exactly, separates new
cuts from every hyperedge the incumbent leaves disconnected, and
repeats until the incumbent is feasible. Each (initial cuts, separation
routine) combination is one of the six selectable strategies; strategy
4 (singleton initial cuts + single balanced-bipartition cut per
violated hyperedge) is the default.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import ilp
from .hypergraph import (
    Edge,
    Hypergraph,
    SolutionGraph,
    induced_components,
    is_feasible,
    support_graph,
)

CUT_GROUP = "cuts"
COVER_GROUP = "cover"


def edge_var(u: int, v: int) -> str:
    """Model variable name of the edge {u, v}."""
    if u > v:
        u, v = v, u
    return f"x_{u}_{v}"


@dataclass(frozen=True)
class Cut:
    """An ordered family of disjoint vertex sets inside one hyperedge.

    Parts are canonicalized (each part sorted, parts ordered by smallest
    member) so cuts deduplicate across hyperedges and iterations; the
    induced constraint demands at least r-1 edges crossing the parts.
    """

    hyperedge_index: int
    parts: tuple[tuple[int, ...], ...]

    def __init__(self, hyperedge_index: int, parts: Iterable[Iterable[int]]):
        canon = tuple(sorted((tuple(sorted(p)) for p in parts), key=lambda p: p[0]))
        object.__setattr__(self, "hyperedge_index", int(hyperedge_index))
        object.__setattr__(self, "parts", canon)
        if len(canon) < 2:
            raise ValueError("a cut needs at least 2 parts")
        seen: set[int] = set()
        for part in canon:
            if not part:
                raise ValueError("cut parts must be nonempty")
            if seen.intersection(part):
                raise ValueError("cut parts must be pairwise disjoint")
            seen.update(part)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def key(self) -> tuple[tuple[int, ...], ...]:
        return self.parts


def crossing_pairs(cut: Cut) -> frozenset[Edge]:
    """All unordered pairs with endpoints in two distinct parts of the cut."""
    pairs: set[Edge] = set()
    for pa, pb in itertools.combinations(cut.parts, 2):
        for u in pa:
            for v in pb:
                pairs.add((u, v) if u < v else (v, u))
    return frozenset(pairs)


def cut_constraint(cut: Cut) -> tuple[dict[str, int], str, int]:
    coeffs = {edge_var(u, v): 1 for u, v in crossing_pairs(cut)}
    return coeffs, ">=", cut.r - 1


def singleton_cuts(h: Hypergraph) -> list[Cut]:
    """The initial cuts ({v}, S \\ {v}) for every hyperedge S and v in S.

    They forbid isolated vertices inside every hyperedge. Cuts are
    deduplicated in canonical form, so a size-2 hyperedge contributes a
    single cut and repeated hyperedges contribute nothing new.
    """
    pool: dict[tuple, Cut] = {}
    for idx, s in enumerate(h.hyperedges):
        if len(s) < 2:
            continue
        for v in sorted(s):
            cut = Cut(idx, ({v}, s - {v}))
            pool.setdefault(cut.key, cut)
    return list(pool.values())


def greedy_balanced_bipartition(
    components: Sequence[Iterable[int]],
) -> tuple[frozenset[int], frozenset[int]]:
    """Greedy near-balanced split of whole components into two sides.

    Components are taken in decreasing size (ties by smallest member)
    and each goes to A when |A| < |B|, to B otherwise, so the very first
    and every tie lands in B. The larger side is within 7/6 of the best
    achievable larger side.
    """
    comps = [frozenset(c) for c in components]
    if len(comps) < 2:
        raise ValueError("need at least 2 components to bipartition")
    comps.sort(key=lambda c: (-len(c), min(c)))
    a: set[int] = set()
    b: set[int] = set()
    for comp in comps:
        if len(a) < len(b):
            a.update(comp)
        else:
            b.update(comp)
    return frozenset(a), frozenset(b)


def routine_cuts(
    routine: int,
    s: Iterable[int],
    components: Sequence[frozenset[int]],
    hyperedge_index: int = 0,
) -> list[Cut]:
    """Cuts separated from one violated hyperedge with components S_1..S_p.

    Routine 1 emits the single balanced-bipartition cut (A, B); routine 2
    one cut (S_i, rest) per component; routine 3 the single p-part cut
    (S_1, ..., S_p).
    """
    comps = list(components)
    if len(comps) < 2:
        raise ValueError("routine cuts need a disconnected hyperedge")
    s = frozenset(s)
    if routine == 1:
        a, b = greedy_balanced_bipartition(comps)
        return [Cut(hyperedge_index, (a, b))]
    if routine == 2:
        return [Cut(hyperedge_index, (comp, s - comp)) for comp in comps]
    if routine == 3:
        return [Cut(hyperedge_index, comps)]
    raise ValueError(f"unknown routine {routine}")


@dataclass(frozen=True)
class Strategy:
    """One of the six (initial cuts x separation routine) combinations."""

    use_singleton_init: bool
    routine: int

    def __post_init__(self):
        if self.routine not in (1, 2, 3):
            raise ValueError(f"routine must be 1, 2 or 3, got {self.routine}")

    @classmethod
    def from_number(cls, number: int) -> "Strategy":
        if number not in range(1, 7):
            raise ValueError(f"strategy number must be in 1..6, got {number}")
        return cls(use_singleton_init=number > 3, routine=(number - 1) % 3 + 1)

    @property
    def number(self) -> int:
        return self.routine + (3 if self.use_singleton_init else 0)


DEFAULT_STRATEGY = Strategy.from_number(4)


@dataclass
class RunStats:
    """Per-run metrics: model-solve rounds, rows in the last model solved,
    total engine calls, wall time and the time-out flag."""

    iterations: int = 0
    final_constraint_count: int = 0
    solver_calls: int = 0
    wall_time: float = 0.0
    timed_out: bool = False


def build_model(h: Hypergraph, cuts: Iterable[Cut] = ()) -> ilp.LinearModel:
    """Model with one binary variable per support-graph edge.

    Carries the per-hyperedge lower bounds (at least |S|-1 edges inside
    every hyperedge) plus one constraint per cut; the objective counts
    chosen edges.
    """
    model = ilp.LinearModel()
    for u, v in support_graph(h).canonical_edges():
        model.add_variable(edge_var(u, v), obj=1)
    cover = []
    for s in h.hyperedges:
        if len(s) < 2:
            continue
        coeffs = {
            edge_var(u, v): 1 for u, v in itertools.combinations(sorted(s), 2)
        }
        cover.append((coeffs, ">=", len(s) - 1))
    model.add_constraints(cover, COVER_GROUP)
    model.add_constraints([cut_constraint(c) for c in cuts], CUT_GROUP)
    return model


class ConstraintGenerationSolver:
    """Owns one model/cut-pool pair across solves.

    The enumeration routines reuse it so their cut pool persists across
    repeated re-solves; plain optimization goes through solve_mci.
    """

    def __init__(self, h: Hypergraph, strategy: Strategy = DEFAULT_STRATEGY):
        self.h = h
        self.strategy = strategy
        self.support = support_graph(h)
        self.edge_list = self.support.canonical_edges()
        self.pool: dict[tuple, Cut] = {}
        if strategy.use_singleton_init:
            for cut in singleton_cuts(h):
                self.pool[cut.key] = cut
        self.model = build_model(h, self.pool.values())

    def graph_of(self, assignment: dict[str, int]) -> SolutionGraph:
        edges = [e for e in self.edge_list if assignment.get(edge_var(*e)) == 1]
        return SolutionGraph(self.h.n, edges)

    def separate(self, g: SolutionGraph, violated: Iterable[int]) -> list[Cut]:
        """New cuts for every violated hyperedge, skipping pooled ones."""
        fresh: list[Cut] = []
        for idx in violated:
            s = self.h.hyperedges[idx]
            comps = induced_components(g, s)
            for cut in routine_cuts(self.strategy.routine, s, comps, hyperedge_index=idx):
                if cut.key not in self.pool:
                    self.pool[cut.key] = cut
                    fresh.append(cut)
        return fresh

    def solve_to_feasible(
        self, deadline: float | None, stats: RunStats
    ) -> tuple[str, SolutionGraph | None]:
        """Re-solve and separate until the incumbent induces connected
        subgraphs everywhere, the model becomes infeasible, or time runs
        out. Returns (status, graph)."""
        g = None
        while True:
            remaining = None if deadline is None else deadline - time.perf_counter()
            if remaining is not None and remaining <= 0:
                stats.timed_out = True
                return ilp.TIMED_OUT, g
            out = ilp.solve(self.model, remaining)
            stats.solver_calls += 1
            stats.iterations += 1
            if out.status == ilp.INFEASIBLE:
                return ilp.INFEASIBLE, None
            if out.assignment is not None:
                g = self.graph_of(out.assignment)
            if out.status == ilp.TIMED_OUT:
                stats.timed_out = True
                return ilp.TIMED_OUT, g
            ok, violated = is_feasible(g, self.h)
            if ok:
                return ilp.OPTIMAL, g
            fresh = self.separate(g, violated)
            if not fresh:
                raise RuntimeError(
                    "separation produced no new cut for an infeasible incumbent"
                )
            self.model.add_constraints([cut_constraint(c) for c in fresh], CUT_GROUP)

    def solve(self, time_limit: float | None = 900.0) -> tuple[SolutionGraph, RunStats]:
        t0 = time.perf_counter()
        deadline = None if time_limit is None else t0 + time_limit
        stats = RunStats()
        status, g = self.solve_to_feasible(deadline, stats)
        if status == ilp.INFEASIBLE:
            raise RuntimeError("the relaxed model can never be infeasible")
        if g is None:
            g = self.support  # timed out before any incumbent; K(H) is feasible
        stats.final_constraint_count = self.model.constraint_count
        stats.wall_time = time.perf_counter() - t0
        return g, stats


def solve_mci(
    h: Hypergraph,
    strategy: Strategy = DEFAULT_STRATEGY,
    time_limit: float | None = 900.0,
) -> tuple[SolutionGraph, RunStats]:
    """Minimum-cardinality graph whose induced subgraphs connect every
    hyperedge, found by constraint generation. On time-out the best
    incumbent (possibly still infeasible) is returned with the flag set.
    """
    return ConstraintGenerationSolver(h, strategy).solve(time_limit)


def bipartition_cut_count(h: Hypergraph) -> int:
    """Number of nontrivial bipartition cuts, counted per hyperedge."""
    return sum(2 ** (len(s) - 1) - 1 for s in h.hyperedges)


def full_bipartition_oracle(
    h: Hypergraph, guard: int = 100_000, time_limit: float | None = None
) -> SolutionGraph:
    """Optimal solution from the complete bipartition-cut model.

    Every nontrivial bipartition of every hyperedge enters the model at
    once, so no constraint generation is needed; the per-hyperedge count
    2^(|S|-1) is guarded because the model grows exponentially.
    """
    total = sum(2 ** (len(s) - 1) for s in h.hyperedges)
    if total > guard:
        raise ValueError(f"bipartition model too large ({total} > {guard} cuts)")
    pool: dict[tuple, Cut] = {}
    for idx, s in enumerate(h.hyperedges):
        if len(s) < 2:
            continue
        elems = sorted(s)
        first, rest = elems[0], elems[1:]
        for mask in range(2 ** len(rest)):
            side = {first, *(v for i, v in enumerate(rest) if mask >> i & 1)}
            if len(side) == len(elems):
                continue
            cut = Cut(idx, (side, s - side))
            pool.setdefault(cut.key, cut)
    model = build_model(h, pool.values())
    out = ilp.solve(model, time_limit)
    if out.status != ilp.OPTIMAL:
        raise RuntimeError(f"bipartition oracle did not finish: {out.status}")
    edges = [
        e
        for e in support_graph(h).canonical_edges()
        if out.assignment.get(edge_var(*e)) == 1
    ]
    return SolutionGraph(h.n, edges)
