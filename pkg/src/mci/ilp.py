"""0-1 linear minimization models with an exact branch-and-bound solver.

Models carry named variables, integer-coefficient constraints organised
in retractable groups, and solver state that survives incremental edits:
the last optimal assignment is re-checked at the next solve and reused
as an upper bound when still feasible, and the last proven optimum is
kept as a lower bound while constraints are only being added (adding
rows can never decrease the minimum; retracting a group resets it).

The solver is depth-first branch and bound over the binary variables.
Every node is bounded by its linear relaxation, solved with the
deterministic Bland-rule simplex from :mod:`mci.simplex`; the branching
variable is the lowest-index fractional one and the value-1 child is
explored first. Ties between equal-objective leaves resolve to the
first one reached, so repeated solves of one model return identical
assignments.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .simplex import INFEASIBLE as LP_INFEASIBLE
from .simplex import OPTIMAL as LP_OPTIMAL
from .simplex import SimplexTableau

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
TIMED_OUT = "timed_out"

BINARY = "binary"
CONTINUOUS = "continuous"

COEF_LIMIT = 2**31
_INT_TOL = 1e-6
_CEIL_MARGIN = 1e-4
_SENSES = ("<=", ">=", "=")


@dataclass
class Constraint:
    coeffs: dict[str, int]
    sense: str
    rhs: int
    group: str


@dataclass
class SolveOutcome:
    """Verdict of one exact solve.

    ``objective`` is the proven minimum when optimal; ``best_bound`` is
    the strongest proven lower bound (equal to the objective on optimal
    outcomes, the best bound found so far on time-outs).
    """

    status: str
    assignment: dict[str, int] | None
    objective: int | None
    nodes: int
    best_bound: float


class LinearModel:
    """A 0-1 minimization model with grouped, retractable constraints."""

    def __init__(self):
        self.variables: list[str] = []
        self.kinds: dict[str, str] = {}
        self.objective: dict[str, int] = {}
        self.constraints: list[Constraint] = []
        self._index: dict[str, int] = {}
        self._incumbent: dict[str, int] | None = None
        self._lower_bound: float = float("-inf")

    def add_variable(self, name: str, obj: int = 0, kind: str = BINARY) -> None:
        if name in self._index:
            raise ValueError(f"duplicate variable {name!r}")
        if kind not in (BINARY, CONTINUOUS):
            raise ValueError(f"unknown variable kind {kind!r}")
        obj = int(obj)
        if abs(obj) >= COEF_LIMIT:
            raise ValueError(f"objective coefficient for {name!r} exceeds 2^31")
        self._index[name] = len(self.variables)
        self.variables.append(name)
        self.kinds[name] = kind
        self.objective[name] = obj

    def add_constraint(self, coeffs, sense: str, rhs: int, group: str) -> None:
        self.add_constraints([(coeffs, sense, rhs)], group)

    def add_constraints(self, cs, group: str) -> None:
        """Append constraints tagged with `group`; invalidates incumbents.

        Each item is a (coeffs, sense, rhs) triple. The stored incumbent
        is only re-verified at the next solve; the proven lower bound
        stays valid because adding rows cannot decrease the optimum.
        """
        checked = []
        for coeffs, sense, rhs in cs:
            coeffs = dict(coeffs)
            for name, coef in coeffs.items():
                if name not in self._index:
                    raise ValueError(f"unknown variable {name!r}")
                if abs(int(coef)) >= COEF_LIMIT:
                    raise ValueError(f"coefficient for {name!r} exceeds 2^31")
            if sense not in _SENSES:
                raise ValueError(f"unknown sense {sense!r}")
            rhs = int(rhs)
            if abs(rhs) >= COEF_LIMIT:
                raise ValueError("right-hand side exceeds 2^31")
            checked.append(
                Constraint({n: int(v) for n, v in coeffs.items()}, sense, rhs, group)
            )
        self.constraints.extend(checked)

    def retract_group(self, group: str) -> None:
        """Remove exactly the constraints tagged with `group`.

        Relaxing the model may lower the optimum, so the carried lower
        bound is dropped; the incumbent assignment stays feasible and is
        kept as a warm start.
        """
        self.constraints = [c for c in self.constraints if c.group != group]
        self._lower_bound = float("-inf")

    @property
    def constraint_count(self) -> int:
        return len(self.constraints)

    def group_count(self, group: str) -> int:
        return sum(1 for c in self.constraints if c.group == group)

    def assignment_satisfies(self, assignment: dict[str, int]) -> bool:
        """Exact integer check of every active constraint."""
        for c in self.constraints:
            lhs = sum(coef * assignment.get(name, 0) for name, coef in c.coeffs.items())
            if c.sense == "<=" and lhs > c.rhs:
                return False
            if c.sense == ">=" and lhs < c.rhs:
                return False
            if c.sense == "=" and lhs != c.rhs:
                return False
        return True

    def assignment_objective(self, assignment: dict[str, int]) -> int:
        return sum(self.objective.get(n, 0) * v for n, v in assignment.items())


def solve(model: LinearModel, time_limit: float | None = None) -> SolveOutcome:
    """Exact minimum of a pure-binary model, or Infeasible / TimedOut.

    Models holding continuous variables are export-only and rejected
    here; the flow baseline solves them through its own combinatorial
    leaf check instead.
    """
    if any(model.kinds[n] == CONTINUOUS for n in model.variables):
        raise ValueError("internal solver handles pure binary models only")
    return branch_and_bound(model, time_limit)


def branch_and_bound(
    model: LinearModel, time_limit: float | None = None, leaf_check=None
) -> SolveOutcome:
    """DFS branch and bound; `leaf_check` may veto integral assignments.

    When a leaf check is supplied the model acts as a relaxation: nodes
    whose LP optimum is integral but vetoed keep branching on the free
    variables, so the search stays exact for the checked problem. Warm
    starts are disabled in that mode because model state alone no longer
    certifies feasibility.
    """
    names = model.variables
    k = len(names)
    c_int = np.array([model.objective.get(n, 0) for n in names], dtype=np.int64)
    deadline = None if time_limit is None else time.perf_counter() + time_limit

    rows = model.constraints
    A_int = np.zeros((len(rows), k), dtype=np.int64)
    b_int = np.zeros(len(rows), dtype=np.int64)
    senses = []
    for i, con in enumerate(rows):
        for name, coef in con.coeffs.items():
            A_int[i, model._index[name]] = coef
        b_int[i] = con.rhs
        senses.append(con.sense)

    def int_feasible(x: np.ndarray) -> bool:
        lhs = A_int @ x
        for i, s in enumerate(senses):
            if s == "<=" and lhs[i] > b_int[i]:
                return False
            if s == ">=" and lhs[i] < b_int[i]:
                return False
            if s == "=" and lhs[i] != b_int[i]:
                return False
        return True

    best: np.ndarray | None = None
    ub = float("inf")
    known_lb = float("-inf")
    if leaf_check is None:
        known_lb = model._lower_bound
        if model._incumbent is not None:
            seed = np.array([model._incumbent.get(n, 0) for n in names], dtype=np.int64)
            if int_feasible(seed):
                best = seed
                ub = float(c_int @ seed)

    def outcome(status: str, bound: float) -> SolveOutcome:
        if best is None:
            assign, obj = None, None
        else:
            assign = {n: int(v) for n, v in zip(names, best)}
            obj = int(c_int @ best)
        if status == OPTIMAL and leaf_check is None:
            model._incumbent = assign
            model._lower_bound = float(obj)
        return SolveOutcome(status, assign, obj, nodes, bound)

    nodes = 0
    if k == 0:
        feasible = int_feasible(np.zeros(0, dtype=np.int64))
        if feasible:
            best = np.zeros(0, dtype=np.int64)
            return outcome(OPTIMAL, 0.0)
        return outcome(INFEASIBLE, float("inf"))

    if best is not None and ub <= known_lb:
        return outcome(OPTIMAL, ub)

    tab = SimplexTableau(
        A_int.astype(float), senses, b_int.astype(float), c_int.astype(float),
        np.zeros(k), np.ones(k),
    )

    # stack entries: (shared parent snapshot, variable, value, parent LP bound)
    stack: list[tuple[object, int, int, float]] = []
    timed_out = False

    def process(lp_status: str) -> None:
        """Update incumbent or push the two children of the current node."""
        nonlocal best, ub
        if lp_status == LP_INFEASIBLE:
            return
        if lp_status == LP_OPTIMAL:
            lp_obj = tab.objective()
            if best is not None and lp_obj >= ub - 1 + _CEIL_MARGIN:
                return  # integer objective: nothing strictly better down here
            x = tab.structural_values()
            frac = np.nonzero(np.abs(x - np.rint(x)) > _INT_TOL)[0]
            if frac.size == 0:
                xi = np.rint(x).astype(np.int64)
                if int_feasible(xi) and (leaf_check is None or leaf_check(xi)):
                    val = float(c_int @ xi)
                    if val < ub:
                        best, ub = xi, val
                    return
                branch = _lowest_free(tab, k)
                if branch is None:
                    return
            else:
                branch = int(frac[0])
        else:  # stalled or unbounded relaxation: branch blindly, never prune
            lp_obj = float("-inf")
            branch = _lowest_free(tab, k)
            if branch is None:
                x = tab.values()[:k]
                xi = np.rint(x).astype(np.int64)
                if int_feasible(xi) and (leaf_check is None or leaf_check(xi)):
                    val = float(c_int @ xi)
                    if val < ub:
                        best, ub = xi, val
                return
        snap = tab.snapshot()
        stack.append((snap, branch, 0, lp_obj))
        stack.append((snap, branch, 1, lp_obj))

    status = tab.solve_from_scratch()
    nodes += 1
    if status == LP_INFEASIBLE:
        return outcome(INFEASIBLE, float("inf"))
    process(status)

    while stack:
        if best is not None and ub <= known_lb:
            stack.clear()
            break
        if deadline is not None and time.perf_counter() > deadline:
            timed_out = True
            break
        snap, var, val, parent_obj = stack.pop()
        if parent_obj >= ub - 1 + _CEIL_MARGIN:
            continue
        tab.restore(snap)
        tab.set_bound(var, float(val), float(val))
        status = tab.reoptimize_dual()
        if status not in (LP_OPTIMAL, LP_INFEASIBLE):
            status = tab.solve_from_scratch()
        nodes += 1
        process(status)

    if timed_out:
        cands = [entry[3] for entry in stack]
        if best is not None:
            cands.append(ub)
        bound = max(known_lb, min(cands)) if cands else known_lb
        return outcome(TIMED_OUT, bound)
    if best is None:
        return outcome(INFEASIBLE, float("inf"))
    return outcome(OPTIMAL, ub)


def _lowest_free(tab: SimplexTableau, k: int) -> int | None:
    free = np.nonzero(tab.ub[:k] - tab.lb[:k] > 0.5)[0]
    return int(free[0]) if free.size else None


def export_lp(model: LinearModel) -> str:
    """Render the model in the standard LP text dialect, byte-stable.

    Sections appear in the fixed order Minimize / Subject To / Bounds /
    Binary / End; Bounds is emitted only when continuous variables
    exist (binaries get their bounds from the Binary section).
    """
    if not model.variables:
        raise ValueError("cannot export a model without variables")
    lines = ["Minimize"]
    obj_terms = [(n, model.objective[n]) for n in model.variables if model.objective[n]]
    if not obj_terms:
        obj_terms = [(model.variables[0], 0)]
    lines.append(" obj: " + _expr(obj_terms))
    lines.append("Subject To")
    for i, con in enumerate(model.constraints):
        terms = [(n, con.coeffs[n]) for n in model.variables if n in con.coeffs]
        if not terms:
            terms = [(model.variables[0], 0)]
        lines.append(f" c{i}: " + _expr(terms) + f" {con.sense} {con.rhs}")
    continuous = [n for n in model.variables if model.kinds[n] == CONTINUOUS]
    if continuous:
        lines.append("Bounds")
        lines.extend(f" {n} >= 0" for n in continuous)
    binaries = [n for n in model.variables if model.kinds[n] == BINARY]
    if binaries:
        lines.append("Binary")
        lines.extend(f" {n}" for n in binaries)
    lines.append("End")
    return "\n".join(lines) + "\n"


def _expr(terms) -> str:
    parts: list[str] = []
    for name, coef in terms:
        mag = abs(coef)
        body = name if mag == 1 else f"{mag} {name}"
        if not parts:
            parts.append(body if coef >= 0 else f"- {body}")
        else:
            parts.append(("+ " if coef >= 0 else "- ") + body)
    return " ".join(parts)
