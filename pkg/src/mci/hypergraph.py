"""Hypergraphs, candidate solution graphs and per-hyperedge connectivity checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

Edge = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Normalize an unordered vertex pair to (min, max)."""
    if u == v:
        raise ValueError(f"self-loop on vertex {u}")
    return (u, v) if u < v else (v, u)


class UnionFind:
    """Disjoint sets over 0..size-1 with path compression and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


@dataclass(frozen=True)
class Hypergraph:
    """A hypergraph on vertices 1..n with an ordered sequence of hyperedges.

    Hyperedges are kept in input order and may repeat; deduplication is an
    instance-generator concern, never done here. Hyperedges of size 1 are
    accepted and treated as trivially connected everywhere.
    """

    n: int
    hyperedges: tuple[frozenset[int], ...]

    def __init__(self, n: int, hyperedges: Iterable[Iterable[int]]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(
            self, "hyperedges", tuple(frozenset(int(v) for v in s) for s in hyperedges)
        )
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        for i, s in enumerate(self.hyperedges):
            if not s:
                raise ValueError(f"hyperedge {i} is empty")
            if min(s) < 1 or max(s) > self.n:
                raise ValueError(f"hyperedge {i} has vertices outside 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    @property
    def density(self) -> float:
        return self.m / self.n


@dataclass(frozen=True)
class SolutionGraph:
    """An undirected simple graph over the same 1..n vertex universe.

    Edges are normalized (u < v); canonical serialization sorts them
    lexicographically so graphs compare and hash as plain edge sets.
    """

    n: int
    edges: frozenset[Edge]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(edge(u, v) for u, v in edges))
        for u, v in self.edges:
            if u < 1 or v > self.n:
                raise ValueError(f"edge {(u, v)} outside 1..{self.n}")

    def canonical_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    def cost(self) -> int:
        return len(self.edges)


def support_graph(h: Hypergraph) -> SolutionGraph:
    """The graph with an edge uv iff u and v share a hyperedge.

    Always a feasible solution, and the variable universe of every model
    built from h.
    """
    edges: set[Edge] = set()
    for s in h.hyperedges:
        edges.update(itertools.combinations(sorted(s), 2))
    return SolutionGraph(h.n, edges)


def induced_components(g: SolutionGraph, s: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the subgraph of g induced by the vertex set s.

    Components are returned sorted by smallest member so downstream cut
    routines are deterministic.
    """
    verts = sorted(set(s))
    index = {v: i for i, v in enumerate(verts)}
    uf = UnionFind(len(verts))
    for u, v in g.edges:
        if u in index and v in index:
            uf.union(index[u], index[v])
    groups: dict[int, list[int]] = {}
    for v in verts:
        groups.setdefault(uf.find(index[v]), []).append(v)
    return sorted((frozenset(vs) for vs in groups.values()), key=min)


def is_feasible(g: SolutionGraph, h: Hypergraph) -> tuple[bool, list[int]]:
    """Does every hyperedge induce a connected subgraph of g?

    Returns the flag plus the indices of violated hyperedges in input
    order. Hyperedges of size <= 1 are vacuously connected.
    """
    if g.n != h.n:
        raise ValueError(f"vertex counts differ: graph {g.n}, hypergraph {h.n}")
    violated = []
    for i, s in enumerate(h.hyperedges):
        if len(s) > 1 and len(induced_components(g, s)) > 1:
            violated.append(i)
    return (not violated, violated)
