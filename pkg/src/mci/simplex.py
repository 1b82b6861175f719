"""Bounded-variable tableau simplex used for linear relaxations.

Pivot selection follows Bland's rule in every phase: the entering column
is the lowest-index eligible one and ratio-test ties are broken by the
lowest column index (a nonbasic bound flip competes under the entering
column's own index). That makes every pivot sequence deterministic and,
in exact arithmetic, cycle-free; an iteration cap guards against
float-degeneracy stalls, which callers treat as "no usable bound".

The tableau supports two entry points:

* ``solve_from_scratch`` -- slack starting basis (structural variables
  parked at their upper bounds when finite), phase I with artificials
  only for rows the start point violates, then phase II.
* ``set_bound`` + ``reoptimize_dual`` -- tighten one variable's bounds
  and re-optimize with the dual simplex from the previous optimal basis,
  which is what the branch-and-bound search does at every node.
"""

from __future__ import annotations

import numpy as np

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
STALLED = "stalled"

AT_LB, AT_UB, BASIC = 0, 1, 2

FEAS_TOL = 1e-7
EPS_RC = 1e-7
PIV_TOL = 1e-9
TIE_TOL = 1e-9


class SimplexTableau:
    """Dense tableau for min c.x s.t. Ax (<=,=,>=) b, lb <= x <= ub."""

    def __init__(self, A, senses, b, c, lb, ub):
        A = np.asarray(A, dtype=float)
        if A.ndim != 2:
            raise ValueError("A must be a 2-d array")
        m, n = A.shape
        b = np.asarray(b, dtype=float).copy()
        c = np.asarray(c, dtype=float)
        senses = list(senses)
        if len(senses) != m or b.shape != (m,) or c.shape != (n,):
            raise ValueError("inconsistent model dimensions")
        # normalize every row to "<=" (equalities keep a zero-width slack)
        self.is_eq = np.array([s == "=" for s in senses], dtype=bool)
        rowsign = np.ones(m)
        for i, s in enumerate(senses):
            if s == ">=":
                rowsign[i] = -1.0
            elif s not in ("<=", "="):
                raise ValueError(f"unknown sense {s!r}")
        self.A = A * rowsign[:, None]
        self.b = b * rowsign
        self.m = m
        self.n_struct = n
        self.cost_struct = c.astype(float)
        self.lb = np.concatenate([np.asarray(lb, dtype=float), np.zeros(m)])
        slack_ub = np.where(self.is_eq, 0.0, np.inf)
        self.ub = np.concatenate([np.asarray(ub, dtype=float), slack_ub])
        # dynamic state, created by solve_from_scratch
        self.T = None
        self.bcol = None
        self.basis = None
        self.stat = None
        self.forbidden = None
        self.xB = None
        self.z = None
        self.pivots = 0

    # -- state handling ------------------------------------------------

    @property
    def ncols(self) -> int:
        return self.T.shape[1]

    def snapshot(self):
        return (
            self.T.copy(),
            self.bcol.copy(),
            self.basis.copy(),
            self.stat.copy(),
            self.forbidden.copy(),
            self.xB.copy(),
            self.lb.copy(),
            self.ub.copy(),
        )

    def restore(self, snap) -> None:
        (T, bcol, basis, stat, forbidden, xB, lb, ub) = snap
        self.T = T.copy()
        self.bcol = bcol.copy()
        self.basis = basis.copy()
        self.stat = stat.copy()
        self.forbidden = forbidden.copy()
        self.xB = xB.copy()
        self.lb = lb.copy()
        self.ub = ub.copy()

    def _nonbasic_values(self) -> np.ndarray:
        vals = np.where(self.stat == AT_UB, self.ub[: self.ncols], self.lb[: self.ncols])
        vals[self.basis] = 0.0
        return vals

    def values(self) -> np.ndarray:
        vals = np.where(self.stat == AT_UB, self.ub[: self.ncols], self.lb[: self.ncols])
        vals[self.basis] = self.xB
        return vals

    def structural_values(self) -> np.ndarray:
        return self.values()[: self.n_struct]

    def objective(self) -> float:
        vals = self.values()
        return float(np.dot(self.cost_struct, vals[: self.n_struct]))

    def _refresh_xB(self) -> None:
        # exact recomputation from statuses, containing float drift
        self.xB = self.bcol - self.T @ self._nonbasic_values()

    def _refresh_z(self, cost_ext: np.ndarray) -> np.ndarray:
        return cost_ext - cost_ext[self.basis] @ self.T

    def set_bound(self, j: int, lo: float, hi: float) -> None:
        """Tighten structural variable j to [lo, hi]; re-optimize afterwards."""
        if self.stat[j] == BASIC:
            self.lb[j], self.ub[j] = lo, hi
            return
        old = self.ub[j] if self.stat[j] == AT_UB else self.lb[j]
        self.lb[j], self.ub[j] = lo, hi
        if self.stat[j] == AT_UB and np.isfinite(hi):
            new = hi
        else:
            self.stat[j] = AT_LB
            new = lo
        if new != old:
            self.xB -= self.T[:, j] * (new - old)

    # -- solving -------------------------------------------------------

    def solve_from_scratch(self, max_iter: int | None = None) -> str:
        m, n = self.m, self.n_struct
        stat = np.full(n + m, AT_LB, dtype=np.int8)
        finite_ub = np.isfinite(self.ub[:n])
        wide = self.ub[:n] > self.lb[:n] + TIE_TOL
        stat[:n][finite_ub & wide] = AT_UB
        x0 = np.where(stat[:n] == AT_UB, self.ub[:n], self.lb[:n])
        resid = self.b - self.A @ x0  # start value of each slack
        bad = (resid < -FEAS_TOL) | (self.is_eq & (np.abs(resid) > FEAS_TOL))
        n_art = int(bad.sum())
        ncols = n + m + n_art
        T = np.zeros((m, ncols))
        T[:, :n] = self.A
        T[:, n : n + m] = np.eye(m)
        bcol = self.b.copy()
        basis = np.arange(n, n + m)
        lb = np.concatenate([self.lb[: n + m], np.zeros(n_art)])
        ub = np.concatenate([self.ub[: n + m], np.full(n_art, np.inf)])
        stat = np.concatenate([stat, np.full(n_art, AT_LB, dtype=np.int8)])
        forbidden = np.zeros(ncols, dtype=bool)
        xB = resid.copy()
        art_col = n + m
        for r in np.nonzero(bad)[0]:
            if resid[r] < 0:  # flip the row so the artificial starts >= 0
                T[r] *= -1.0
                bcol[r] *= -1.0
            T[r, art_col] = 1.0
            basis[r] = art_col
            stat[art_col] = BASIC
            xB[r] = abs(resid[r])
            art_col += 1
        self.T, self.bcol, self.basis = T, bcol, basis
        self.stat, self.forbidden, self.xB = stat, forbidden, xB
        self.lb = np.concatenate([self.lb[: n + m], lb[n + m :]])
        self.ub = np.concatenate([self.ub[: n + m], ub[n + m :]])
        self.stat[self.basis] = BASIC

        if max_iter is None:
            max_iter = 500 + 60 * m + 10 * ncols

        cost2 = np.zeros(ncols)
        cost2[:n] = self.cost_struct
        if n_art:
            cost1 = np.zeros(ncols)
            cost1[n + m :] = 1.0
            self.z = self._refresh_z(cost1)
            status = self._primal_iterate(max_iter)
            if status != OPTIMAL:
                return status
            if float(self.xB[np.nonzero(self.basis >= n + m)[0]].sum()) > 1e-6:
                return INFEASIBLE
            self._expel_artificials(n + m)
            self.forbidden[n + m :] = True
        self.z = self._refresh_z(cost2)
        status = self._primal_iterate(max_iter)
        return status

    def _expel_artificials(self, first_art: int) -> None:
        # pivot basic zero-valued artificials onto any real column; rows
        # with no eligible pivot are redundant and keep the artificial at 0
        for r in range(self.m):
            jb = self.basis[r]
            if jb < first_art:
                continue
            row = np.abs(self.T[r, :first_art])
            cand = [
                j
                for j in np.nonzero((row > 1e-8) & ~self.forbidden[:first_art])[0]
                if self.stat[j] != BASIC
            ]
            if not cand:
                continue
            j = int(cand[0])
            old = self.ub[j] if self.stat[j] == AT_UB else self.lb[j]
            delta = self.xB[r] / self.T[r, j]  # ~0: the artificial sits at zero
            self.xB -= self.T[:, j] * delta
            self._pivot(r, j, enter_val=old + delta, leave_to=AT_LB)

    def reoptimize_dual(self, max_iter: int | None = None) -> str:
        if self.T is None:
            raise RuntimeError("reoptimize_dual needs a prior solve")
        ncols = self.ncols
        cost2 = np.zeros(ncols)
        cost2[: self.n_struct] = self.cost_struct
        self._refresh_xB()
        self.z = self._refresh_z(cost2)
        if max_iter is None:
            max_iter = 200 + 30 * self.m
        for _ in range(max_iter):
            lb_b = self.lb[self.basis]
            ub_b = self.ub[self.basis]
            below = self.xB < lb_b - FEAS_TOL
            above = self.xB > ub_b + FEAS_TOL
            viol = np.nonzero(below | above)[0]
            if viol.size == 0:
                return OPTIMAL
            r = viol[np.argmin(self.basis[viol])]
            row = self.T[r]
            if below[r]:
                elig = ((self.stat == AT_LB) & (row < -PIV_TOL)) | (
                    (self.stat == AT_UB) & (row > PIV_TOL)
                )
                target = lb_b[r]
            else:
                elig = ((self.stat == AT_LB) & (row > PIV_TOL)) | (
                    (self.stat == AT_UB) & (row < -PIV_TOL)
                )
                target = ub_b[r]
            elig &= ~self.forbidden
            elig &= self.ub[:ncols] - self.lb[:ncols] > TIE_TOL
            elig[self.basis] = False
            cand = np.nonzero(elig)[0]
            if cand.size == 0:
                return INFEASIBLE
            ratios = np.abs(self.z[cand] / row[cand])
            best = ratios.min()
            j = int(cand[ratios <= best + TIE_TOL][0])
            delta = (self.xB[r] - target) / row[j]
            old = self.ub[j] if self.stat[j] == AT_UB else self.lb[j]
            self.xB -= self.T[:, j] * delta
            self._pivot(r, j, enter_val=old + delta, leave_to=AT_LB if below[r] else AT_UB)
        return STALLED

    # -- pivoting ------------------------------------------------------

    def _pivot(self, r: int, j: int, enter_val: float, leave_to: int | None = None) -> None:
        leaving = self.basis[r]
        if leave_to is None:
            lb_l, ub_l = self.lb[leaving], self.ub[leaving]
            leave_to = AT_LB if abs(self.xB[r] - lb_l) <= abs(ub_l - self.xB[r]) else AT_UB
        self.stat[leaving] = leave_to
        piv = self.T[r, j]
        self.T[r] /= piv
        self.bcol[r] /= piv
        colj = self.T[:, j].copy()
        colj[r] = 0.0
        nz = np.nonzero(np.abs(colj) > 1e-13)[0]
        if nz.size:
            self.T[nz] -= np.outer(colj[nz], self.T[r])
            self.bcol[nz] -= colj[nz] * self.bcol[r]
        zj = self.z[j]
        if abs(zj) > 1e-13:
            self.z = self.z - zj * self.T[r]
        self.xB[r] = enter_val
        self.basis[r] = j
        self.stat[j] = BASIC
        self.pivots += 1

    def _primal_iterate(self, max_iter: int) -> str:
        ncols = self.ncols
        for _ in range(max_iter):
            z = self.z
            movable = self.ub[:ncols] - self.lb[:ncols] > TIE_TOL
            elig = (
                ~self.forbidden
                & (self.stat != BASIC)
                & movable
                & (
                    ((self.stat == AT_LB) & (z < -EPS_RC))
                    | ((self.stat == AT_UB) & (z > EPS_RC))
                )
            )
            if not elig.any():
                return OPTIMAL
            j = int(np.argmax(elig))  # lowest eligible index (Bland)
            sigma = 1.0 if self.stat[j] == AT_LB else -1.0
            d = sigma * self.T[:, j]
            lb_b = self.lb[self.basis]
            ub_b = self.ub[self.basis]
            t = np.full(self.m, np.inf)
            inc = d > PIV_TOL
            dec = d < -PIV_TOL
            if inc.any():
                t[inc] = np.maximum(self.xB[inc] - lb_b[inc], 0.0) / d[inc]
            if dec.any():
                t[dec] = np.maximum(ub_b[dec] - self.xB[dec], 0.0) / (-d[dec])
            t_bound = self.ub[j] - self.lb[j]
            t_rows = t.min() if self.m else np.inf
            t_star = min(t_rows, t_bound)
            if not np.isfinite(t_star):
                return UNBOUNDED
            rows = np.nonzero(t <= t_star + TIE_TOL)[0]
            flip = np.isfinite(t_bound) and t_bound <= t_star + TIE_TOL
            if rows.size:
                r = int(rows[np.argmin(self.basis[rows])])
                if flip and j < self.basis[r]:
                    r = -1
            else:
                r = -1
            if r < 0:
                self.xB -= d * t_bound
                self.stat[j] = AT_UB if self.stat[j] == AT_LB else AT_LB
                self.pivots += 1
                continue
            old = self.ub[j] if self.stat[j] == AT_UB else self.lb[j]
            self.xB -= d * t_star
            self._pivot(
                r, j, enter_val=old + sigma * t_star, leave_to=AT_LB if d[r] > 0 else AT_UB
            )
        return STALLED
