"""Exact toolkit for minimum connectivity inference on hypergraphs.

Given a hypergraph, find a graph with the fewest edges in which every
hyperedge induces a connected subgraph. The package provides a
constraint-generation solver over cut constraints, a flow-based MILP
baseline, enumeration of all optimal solutions, a seeded random
instance generator, and a CLI/benchmark harness, all backed by a
self-contained exact 0-1 branch-and-bound engine.
"""

from .cga import Strategy, solve_mci
from .enumeration import enumerate_chunked, enumerate_naive
from .flow import solve_flow_baseline
from .generator import Scenario, generate_instance
from .hypergraph import Hypergraph, SolutionGraph, is_feasible, support_graph

__all__ = [
    "Hypergraph",
    "SolutionGraph",
    "Scenario",
    "Strategy",
    "enumerate_chunked",
    "enumerate_naive",
    "generate_instance",
    "is_feasible",
    "solve_flow_baseline",
    "solve_mci",
    "support_graph",
]

__version__ = "0.1.0"
