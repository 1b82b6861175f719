"""Independent brute-force oracles used across the test suite.

These never touch the solver path they check: optima come from
exhaustive enumeration of support-graph edge subsets by increasing
cardinality. Two provably-lossless reductions keep that tractable on
test sizes: edges demanded by size-2 hyperedges are pinned into every
candidate (a feasible graph must contain them), and enumeration starts
at the spanning-forest bound n - #components(K(H)) (vertices sharing a
support component must be connected in any feasible solution).
"""

from __future__ import annotations

import itertools

from mci.hypergraph import Hypergraph, SolutionGraph, UnionFind, is_feasible, support_graph


class BruteForce:
    def __init__(self, h: Hypergraph):
        self.h = h
        self.edges = support_graph(h).canonical_edges()
        self.forced = sorted(
            {tuple(sorted(s)) for s in h.hyperedges if len(s) == 2}
        )
        self.free = [e for e in self.edges if e not in set(self.forced)]
        # per-edge list of hyperedges it can help connect, for fast count
        # rejection before the union-find pass
        self.members = [
            [i for i, s in enumerate(h.hyperedges) if e[0] in s and e[1] in s]
            for e in self.edges
        ]
        self.edge_pos = {e: i for i, e in enumerate(self.edges)}
        self.need = [max(len(s) - 1, 0) for s in h.hyperedges]
        self.hyp_sorted = [sorted(s) for s in h.hyperedges]
        uf = UnionFind(h.n + 1)
        for u, v in self.edges:
            uf.union(u, v)
        comps = len({uf.find(v) for v in range(1, h.n + 1)})
        self.lower_bound = h.n - comps

    def feasible(self, edges: tuple) -> bool:
        counts = [0] * self.h.m
        for e in edges:
            for i in self.members[self.edge_pos[e]]:
                counts[i] += 1
        for i, need in enumerate(self.need):
            if counts[i] < need:
                return False
        for i, verts in enumerate(self.hyp_sorted):
            if self.need[i] < 2:  # sizes <= 2 already decided by the count
                continue
            index = {v: j for j, v in enumerate(verts)}
            uf = UnionFind(len(verts))
            joins = 0
            for u, v in edges:
                if u in index and v in index:
                    if uf.union(index[u], index[v]):
                        joins += 1
            if joins != len(verts) - 1:
                return False
        return True

    def minimum(self) -> int:
        """Smallest feasible cardinality, scanning k = lb, lb+1, ..."""
        start = max(self.lower_bound, len(self.forced))
        for k in range(start, len(self.edges) + 1):
            for combo in itertools.combinations(self.free, k - len(self.forced)):
                if self.feasible(tuple(self.forced) + combo):
                    return k
        raise AssertionError("support graph itself must be feasible")

    def all_optimal(self, cstar: int) -> set[tuple]:
        """Canonical edge tuples of every feasible graph with cstar edges."""
        out = set()
        if cstar < len(self.forced):
            return out
        for combo in itertools.combinations(self.free, cstar - len(self.forced)):
            cand = tuple(sorted(tuple(self.forced) + combo))
            if self.feasible(cand):
                out.add(cand)
        return out


def brute_force_minimum(h: Hypergraph) -> int:
    return BruteForce(h).minimum()


def brute_force_all_optimal(h: Hypergraph) -> set[tuple]:
    bf = BruteForce(h)
    return bf.all_optimal(bf.minimum())


def check_solution(h: Hypergraph, g: SolutionGraph, expected_cost: int) -> bool:
    return is_feasible(g, h)[0] and g.cost() == expected_cost
