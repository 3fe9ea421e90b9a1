"""Best-first branch and bound over binary variables.

Node relaxations are LPs for linear objectives and barrier solves for
convex quadratic/smooth objectives. Single-threaded; deterministic
objective values regardless of exploration order.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from ..errors import LpInfeasible, LpUnbounded, MilpInfeasible, NumericalBreakdown
from .simplex import LpProblem, solve_lp
from .smooth import SmoothConstraint, barrier_minimize, phase1_strict_point

INT_TOL = 1e-7
GAP_TOL = 1e-6


@dataclass
class QuadraticObjective:
    """f(x) = 0.5 x'Qx + c'x + const with Q positive semidefinite."""

    Q: np.ndarray
    c: np.ndarray
    const: float = 0.0

    def value(self, x):
        return float(0.5 * x @ self.Q @ x + self.c @ x + self.const)


@dataclass
class SmoothObjective:
    f: object
    grad: object
    hess: object

    def value(self, x):
        return float(self.f(x))


@dataclass
class MilpProblem:
    """Mixed-binary program: base LP rows/bounds plus an optional convex objective.

    When `objective` is None the linear objective lp.c is used. Big-M and
    epsilon are carried so model builders share one configuration point.
    """

    lp: LpProblem
    binaries: list
    objective: object = None
    smooth_constraints: list = field(default_factory=list)
    big_M: float = 1000.0
    epsilon: float = 1e-3
    objective_granularity: float = 0.0
    objective_constant: float = 0.0


@dataclass
class MilpSolution:
    status: str  # optimal | feasible | infeasible | time_limit
    x: np.ndarray | None
    objective: float
    gap: float
    nodes: int
    wall_time: float


@dataclass
class BnbOptions:
    node_limit: int = 2_000_000
    time_limit: float = math.inf
    initial_x: np.ndarray | None = None


def _solve_relaxation(p: MilpProblem, lb, ub):
    """Solve the continuous relaxation under the given variable bounds."""
    lp = LpProblem(p.lp.c, p.lp.A, p.lp.rel, p.lp.b, lb, ub)
    if p.objective is None and not p.smooth_constraints:
        try:
            sol = solve_lp(lp)
        except LpUnbounded:
            return None, -math.inf
        if sol.status != "optimal":
            return None, math.inf
        return sol.x, sol.objective + p.objective_constant
    x, obj = _solve_convex_relaxation(p, lp)
    return x, obj if x is None else obj + p.objective_constant


def _linear_rows_as_constraints(lp: LpProblem):
    cons = []
    A_eq_rows = []
    b_eq = []
    for i in range(lp.A.shape[0]):
        row, rhs, rel = lp.A[i], lp.b[i], lp.rel[i]
        if rel == "=":
            A_eq_rows.append(row)
            b_eq.append(rhs)
        elif rel == "<=":
            cons.append(SmoothConstraint.linear(row, rhs))
        else:
            cons.append(SmoothConstraint.linear(-row, -rhs))
    n = lp.n_vars
    for j in range(n):
        if lp.lb[j] == lp.ub[j]:
            # A pinned variable has no strict interior between its two
            # bound inequalities; carry it as an equality instead.
            e = np.zeros(n)
            e[j] = 1.0
            A_eq_rows.append(e)
            b_eq.append(lp.ub[j])
            continue
        if lp.ub[j] != math.inf:
            e = np.zeros(n)
            e[j] = 1.0
            cons.append(SmoothConstraint.linear(e, lp.ub[j]))
        if lp.lb[j] != -math.inf:
            e = np.zeros(n)
            e[j] = -1.0
            cons.append(SmoothConstraint.linear(e, -lp.lb[j]))
    A_eq = np.array(A_eq_rows) if A_eq_rows else None
    return cons, A_eq, (np.array(b_eq) if A_eq_rows else None)


def _solve_convex_relaxation(p: MilpProblem, lp: LpProblem):
    cons, A_eq, b_eq = _linear_rows_as_constraints(lp)
    cons = cons + list(p.smooth_constraints)
    n = lp.n_vars
    x0 = np.zeros(n)
    for j in range(n):
        lo = lp.lb[j] if lp.lb[j] != -math.inf else None
        hi = lp.ub[j] if lp.ub[j] != math.inf else None
        if lo is not None and hi is not None:
            x0[j] = 0.5 * (lo + hi)
        elif lo is not None:
            x0[j] = lo + 1.0
        elif hi is not None:
            x0[j] = hi - 1.0
    start = phase1_strict_point(cons, x0, A_eq, b_eq)
    if start is None:
        return None, math.inf
    obj = p.objective
    if isinstance(obj, QuadraticObjective):
        f = obj.value
        grad = lambda x: obj.Q @ x + obj.c
        hess = lambda x: obj.Q
    else:
        f, grad, hess = obj.f, obj.grad, obj.hess
    res = barrier_minimize(f, grad, hess, start, cons, A_eq, b_eq, tol=1e-9)
    return res.x, res.objective


def _objective_value(p: MilpProblem, x):
    if p.objective is None:
        return float(p.lp.c @ x) + p.objective_constant
    return p.objective.value(x) + p.objective_constant


def _round_binaries(p: MilpProblem, x):
    xr = x.copy()
    for j in p.binaries:
        xr[j] = round(xr[j])
    return xr


def _is_feasible(p: MilpProblem, x, tol=1e-6):
    lp = p.lp
    for i in range(lp.A.shape[0]):
        v = float(lp.A[i] @ x)
        if lp.rel[i] == "<=" and v > lp.b[i] + tol:
            return False
        if lp.rel[i] == ">=" and v < lp.b[i] - tol:
            return False
        if lp.rel[i] == "=" and abs(v - lp.b[i]) > tol:
            return False
    for c in p.smooth_constraints:
        if c.g(x) > tol:
            return False
    return bool(
        np.all(x >= lp.lb - tol) and np.all(x <= lp.ub + tol)
    )


def solve_milp(p: MilpProblem, opts: BnbOptions | None = None) -> MilpSolution:
    """Best-bound branch and bound on the binary variables of p."""
    opts = opts or BnbOptions()
    t0 = time.monotonic()
    lb0 = p.lp.lb.copy()
    ub0 = p.lp.ub.copy()
    for j in p.binaries:
        lb0[j] = max(lb0[j], 0.0)
        ub0[j] = min(ub0[j], 1.0)

    incumbent = None
    incumbent_obj = math.inf
    if opts.initial_x is not None and _is_feasible(p, opts.initial_x):
        incumbent = np.asarray(opts.initial_x, dtype=float)
        incumbent_obj = _objective_value(p, incumbent)

    def tighten(bound):
        if p.objective_granularity > 0:
            g = p.objective_granularity
            return math.ceil(bound / g - 1e-9) * g
        return bound

    heap = []
    counter = itertools.count()
    x_root, bound_root = _solve_relaxation(p, lb0, ub0)
    nodes = 1
    if x_root is None and bound_root == math.inf:
        if incumbent is not None:
            return MilpSolution("optimal", incumbent, incumbent_obj, 0.0, nodes, time.monotonic() - t0)
        return MilpSolution("infeasible", None, math.inf, math.inf, nodes, time.monotonic() - t0)
    heapq.heappush(heap, (tighten(bound_root), next(counter), lb0, ub0, x_root))
    best_bound = tighten(bound_root)

    def rel_gap():
        if incumbent is None:
            return math.inf
        denom = max(1.0, abs(incumbent_obj))
        return max(0.0, (incumbent_obj - best_bound) / denom)

    status = "optimal"
    while heap:
        best_bound = heap[0][0]
        if incumbent is not None and rel_gap() <= GAP_TOL:
            break
        if nodes >= opts.node_limit or (time.monotonic() - t0) > opts.time_limit:
            status = "time_limit"
            break
        bound, _, lb, ub, x_rel = heapq.heappop(heap)
        if incumbent is not None and bound >= incumbent_obj - GAP_TOL * max(1.0, abs(incumbent_obj)):
            continue
        # choose most fractional binary
        frac_j = None
        best_fr = INT_TOL
        for j in p.binaries:
            fr = abs(x_rel[j] - round(x_rel[j]))
            if fr > best_fr:
                best_fr = fr
                frac_j = j
        if frac_j is None:
            xi = _round_binaries(p, x_rel)
            if _is_feasible(p, xi):
                val = _objective_value(p, xi)
                if val < incumbent_obj:
                    incumbent, incumbent_obj = xi, val
            continue
        for v in (0.0, 1.0):
            lb2, ub2 = lb.copy(), ub.copy()
            lb2[frac_j] = v
            ub2[frac_j] = v
            x2, bound2 = _solve_relaxation(p, lb2, ub2)
            nodes += 1
            if x2 is None:
                continue
            b2 = tighten(max(bound2, bound))
            if incumbent is not None and b2 >= incumbent_obj - GAP_TOL * max(1.0, abs(incumbent_obj)):
                # integral solutions at this bound can still match the incumbent
                if b2 > incumbent_obj:
                    continue
            intg = all(abs(x2[j] - round(x2[j])) <= INT_TOL for j in p.binaries)
            if intg:
                xi = _round_binaries(p, x2)
                if _is_feasible(p, xi):
                    val = _objective_value(p, xi)
                    if val < incumbent_obj:
                        incumbent, incumbent_obj = xi, val
                continue
            heapq.heappush(heap, (b2, next(counter), lb2, ub2, x2))
        best_bound = heap[0][0] if heap else incumbent_obj

    if incumbent is None:
        if status == "time_limit":
            return MilpSolution("time_limit", None, math.inf, math.inf, nodes, time.monotonic() - t0)
        return MilpSolution("infeasible", None, math.inf, math.inf, nodes, time.monotonic() - t0)
    final_bound = heap[0][0] if heap else incumbent_obj
    gap = max(0.0, (incumbent_obj - final_bound) / max(1.0, abs(incumbent_obj))) if status == "time_limit" else 0.0
    st = "optimal" if status == "optimal" else ("feasible" if gap > GAP_TOL else "optimal")
    return MilpSolution(st, incumbent, incumbent_obj, gap, nodes, time.monotonic() - t0)


def solve_milp_by_enumeration(p: MilpProblem) -> MilpSolution:
    """Exhaustive oracle: try every binary assignment, relaxation per leaf."""
    k = len(p.binaries)
    if k > 20:
        raise ValueError("enumeration oracle limited to 20 binaries")
    best = None
    best_obj = math.inf
    t0 = time.monotonic()
    for bits in itertools.product((0.0, 1.0), repeat=k):
        lb = p.lp.lb.copy()
        ub = p.lp.ub.copy()
        for j, v in zip(p.binaries, bits):
            lb[j] = v
            ub[j] = v
        x, obj = _solve_relaxation(p, lb, ub)
        if x is not None and obj < best_obj - 1e-12:
            best, best_obj = x, obj
    if best is None:
        return MilpSolution("infeasible", None, math.inf, math.inf, 2 ** k, time.monotonic() - t0)
    return MilpSolution("optimal", best, best_obj, 0.0, 2 ** k, time.monotonic() - t0)
