"""Flow-based MILP baseline.

The printed formulation routes, for every hyperedge S, one unit of flow
from each non-root vertex of S to the root r_S over the complete
digraph on S, with arc capacities coupled to the edge variables. The
full model (binary edge variables plus continuous arc flows) is built
for export and constraint counting; the internal solve replaces the
flow block by its combinatorial equivalent -- an integral edge choice
extends to feasible flows exactly when every induced subgraph is
connected -- so branch and bound runs on the binary variables alone,
bounded by the relaxation of the per-hyperedge edge-count family.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass

import numpy as np

from . import ilp
from .cga import COVER_GROUP, RunStats, edge_var
from .hypergraph import Edge, Hypergraph, SolutionGraph, is_feasible, support_graph


def flow_var(hyperedge_index: int, u: int, v: int) -> str:
    """Variable name of the arc u->v in the digraph of hyperedge k."""
    return f"f_S{hyperedge_index}_{u}_{v}"


@dataclass
class FlowModel:
    """The exported formulation plus its per-hyperedge flow roots."""

    model: ilp.LinearModel
    roots: dict[int, int]


def build_flow_model(h: Hypergraph) -> FlowModel:
    """Literal flow formulation: one binary per support edge, one
    continuous variable per arc of every hyperedge's complete digraph.

    The root of each hyperedge is its smallest vertex (a fixed stand-in
    for an arbitrary choice, keeping exports reproducible). Conservation
    is written exactly as printed: net inflow minus outflow equals -1 at
    every non-root, i.e. flow accumulates at the root.
    """
    model = ilp.LinearModel()
    for u, v in support_graph(h).canonical_edges():
        model.add_variable(edge_var(u, v), obj=1)
    roots: dict[int, int] = {}
    for k, s in enumerate(h.hyperedges):
        roots[k] = min(s)
        for u in sorted(s):
            for v in sorted(s):
                if u != v:
                    model.add_variable(flow_var(k, u, v), kind=ilp.CONTINUOUS)
    cover = []
    for s in h.hyperedges:
        if len(s) < 2:
            continue
        coeffs = {edge_var(u, v): 1 for u, v in itertools.combinations(sorted(s), 2)}
        cover.append((coeffs, ">=", len(s) - 1))
    model.add_constraints(cover, COVER_GROUP)
    conservation = []
    for k, s in enumerate(h.hyperedges):
        for v in sorted(s):
            if v == roots[k]:
                continue
            coeffs = {flow_var(k, u, v): 1 for u in sorted(s) if u != v}
            for w in sorted(s):
                if w != v:
                    coeffs[flow_var(k, v, w)] = -1
            conservation.append((coeffs, "=", -1))
    model.add_constraints(conservation, "conservation")
    capacity = []
    for k, s in enumerate(h.hyperedges):
        cap = len(s) - 1
        for u, v in itertools.combinations(sorted(s), 2):
            coeffs = {flow_var(k, u, v): 1, flow_var(k, v, u): 1, edge_var(u, v): -cap}
            capacity.append((coeffs, "<=", 0))
    model.add_constraints(capacity, "capacity")
    return FlowModel(model, roots)


def flow_constraint_count(h: Hypergraph) -> int:
    """Rows of the printed model: per-hyperedge edge bounds, conservation
    at non-roots, and one capacity row per vertex pair of each hyperedge;
    nonnegativity bounds are not rows."""
    return sum(1 + (len(s) - 1) + len(s) * (len(s) - 1) // 2 for s in h.hyperedges)


def flow_witness(
    g: SolutionGraph, s: frozenset[int] | set[int], root: int
) -> dict[tuple[int, int], int] | None:
    """Feasible arc flows for one hyperedge, or None when G[s] is
    disconnected.

    Orients a spanning tree of G[s] toward the root; the arc from each
    child to its parent carries the child's subtree size and every other
    arc carries 0, which meets conservation, capacity and nonnegativity.
    """
    s = frozenset(s)
    if root not in s:
        raise ValueError(f"root {root} is not in the hyperedge")
    adj: dict[int, list[int]] = {v: [] for v in s}
    for u, v in g.edges:
        if u in s and v in s:
            adj[u].append(v)
            adj[v].append(u)
    order = [root]
    parent = {root: None}
    for v in order:
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                order.append(w)
    if len(order) < len(s):
        return None
    subtree = {v: 1 for v in s}
    flows = {(u, v): 0 for u in s for v in s if u != v}
    for v in reversed(order):
        if parent[v] is not None:
            flows[(v, parent[v])] = subtree[v]
            subtree[parent[v]] += subtree[v]
    return flows


def solve_flow_baseline(
    h: Hypergraph, time_limit: float | None = 900.0
) -> tuple[SolutionGraph, RunStats]:
    """Optimal solution via the baseline model, solved internally.

    Branch and bound runs on the binary edge variables with the
    edge-count family as relaxation; an integral node is accepted only
    if every hyperedge induces a connected subgraph, which is equivalent
    to the existence of feasible flows (see flow_witness). Reported
    constraint counts refer to the printed flow model.
    """
    t0 = time.perf_counter()
    model = ilp.LinearModel()
    edges = support_graph(h).canonical_edges()
    for u, v in edges:
        model.add_variable(edge_var(u, v), obj=1)
    cover = []
    for s in h.hyperedges:
        if len(s) < 2:
            continue
        coeffs = {edge_var(u, v): 1 for u, v in itertools.combinations(sorted(s), 2)}
        cover.append((coeffs, ">=", len(s) - 1))
    model.add_constraints(cover, COVER_GROUP)

    def leaf_ok(x: np.ndarray) -> bool:
        g = SolutionGraph(h.n, [e for e, v in zip(edges, x) if v])
        return is_feasible(g, h)[0]

    out = ilp.branch_and_bound(model, time_limit, leaf_check=leaf_ok)
    stats = RunStats(
        iterations=1,
        final_constraint_count=flow_constraint_count(h),
        solver_calls=1,
        wall_time=time.perf_counter() - t0,
        timed_out=out.status == ilp.TIMED_OUT,
    )
    if out.assignment is None:
        return support_graph(h), stats
    g = SolutionGraph(
        h.n, [e for e in edges if out.assignment.get(edge_var(*e)) == 1]
    )
    return g, stats
