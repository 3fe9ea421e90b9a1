"""Two-stage minimal-number-of-violations prioritization (MNVDM).

Stage 1 finds the smallest achievable violation count NV* over all
priority vectors. Stage 2 minimizes the chosen method's deviation measure
subject to NV = NV*.

Stage 1 is solved exactly by a conflict-driven search: start from the
relation pattern read off the matrix (cost 0), test realizability of the
current pattern with a small LP, and on infeasibility branch on the
quadruples named by the LP's infeasibility certificate. Nodes are explored
in increasing cost order, so the first realizable pattern found is optimal.
A literal big-M mixed-integer formulation is kept as a cross-checking
engine.
"""

from __future__ import annotations

import heapq
import itertools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import Stage1NotOptimal, TimeLimitReached
from .indices import RI_TABLE, gci_at
from .optim import (
    BnbOptions,
    LpProblem,
    MilpProblem,
    QuadraticObjective,
    SmoothConstraint,
    barrier_minimize,
    minimize_smooth,
    phase1_strict_point,
    solve_lp,
    solve_milp,
)
from .pcm import (
    ENTRY_EQ_RTOL,
    Pcm,
    PriorityVector,
    upper_pairs,
)
from .prioritize import MethodId, _lsdm_objective

BIG_M = 1000.0
EPSILON = 1e-3
#: Bound on distinct search states kept in memory by the stage-1 search;
#: beyond it the incumbent is returned without an optimality certificate.
_FRONTIER_CAP = 1_500_000


@dataclass(frozen=True)
class Stage1Result:
    twice_nv_star: int
    y: np.ndarray
    binaries: dict  # ordered (p_idx, q_idx) -> (l_w, e_w)
    optimal: bool = True
    nodes: int = 0
    wall_time: float = 0.0

    @property
    def nv_star(self) -> float:
        return self.twice_nv_star / 2.0


@dataclass(frozen=True)
class MnvdmResult:
    w: PriorityVector
    twice_nv: int
    deviation: float
    method: MethodId
    optimal: bool = True

    @property
    def nv(self) -> float:
        return self.twice_nv / 2.0


def _a_relations(pcm: Pcm):
    """Relation of a_p vs a_q for every unordered pair of upper pairs.

    Returns (pairs, quads, rel) where rel[t] is +1 / 0 / -1 for
    a_p > a_q / = / <, indexed like quads[t] = (p_idx, q_idx), p_idx < q_idx.
    """
    a = pcm.a
    pairs = upper_pairs(pcm.n)
    quads = []
    rel = []
    for pi in range(len(pairs)):
        for qi in range(pi + 1, len(pairs)):
            (i, j), (k, l) = pairs[pi], pairs[qi]
            if a[i, j] > a[k, l] * (1 + ENTRY_EQ_RTOL):
                r = 1
            elif a[k, l] > a[i, j] * (1 + ENTRY_EQ_RTOL):
                r = -1
            else:
                r = 0
            quads.append((pi, qi))
            rel.append(r)
    return pairs, quads, rel


def _flip_cost(rel_a: int, v: int) -> int:
    """Objective units (2*NV scale) of realizing relation v against rel_a."""
    if v == rel_a:
        return 0
    if rel_a != 0 and v == 0:
        return 1
    return 2


def _ratio_row(n: int, p, q) -> np.ndarray:
    """Coefficients of (y_i - y_j) - (y_k - y_l) for p=(i,j), q=(k,l)."""
    row = np.zeros(n)
    (i, j), (k, l) = p, q
    row[i] += 1.0
    row[j] -= 1.0
    row[k] -= 1.0
    row[l] += 1.0
    return row


def _realize(pcm: Pcm, pairs, quads, values, epsilon=EPSILON):
    """LP feasibility of a full relation assignment.

    Returns (y, None) on success or (None, conflict) where conflict is the
    list of quad indices in the infeasibility certificate.
    """
    n = pcm.n
    p = LpProblem.build(n)
    for t, (pi, qi) in enumerate(quads):
        row = _ratio_row(n, pairs[pi], pairs[qi])
        v = values[t]
        if v == 1:
            p.add_constraint(row, ">=", epsilon)
        elif v == -1:
            p.add_constraint(row, "<=", -epsilon)
        else:
            p.add_constraint(row, "=", 0.0)
    p.add_constraint(np.ones(n), "=", 0.0)
    sol = solve_lp(p)
    if sol.status == "optimal":
        return sol.x, None
    conflict = [r for r in sol.farkas_rows if r < len(quads)]
    return None, (conflict or list(range(len(quads))))


def _relations_of_y(y, pairs, quads, tol=1e-9):
    vals = []
    for (pi, qi) in quads:
        (i, j), (k, l) = pairs[pi], pairs[qi]
        d = (y[i] - y[j]) - (y[k] - y[l])
        vals.append(0 if abs(d) <= tol else (1 if d > 0 else -1))
    return vals


def _twice_nv_of_y(y, pairs, quads, rel_a) -> int:
    values = _relations_of_y(y, pairs, quads)
    return sum(_flip_cost(rel_a[t], values[t]) for t in range(len(quads)))


def _integer_incumbent(pcm: Pcm, pairs, quads, rel_a):
    """Strong incumbent: hill climb on integer log-weight vectors.

    Integer vectors realize difference orders (including ties) exactly, so
    the climb explores the violation count directly without LP calls.
    """
    n = pcm.n
    y_gm = np.log(pcm.a).mean(axis=1)
    best_y = np.zeros(n)
    best = _twice_nv_of_y(best_y, pairs, quads, rel_a)
    for scale in (1.0, 2.0, 3.0, 5.0):
        y = np.round(y_gm * scale)
        cost = _twice_nv_of_y(y, pairs, quads, rel_a)
        if cost < best:
            best, best_y = cost, y
    improved = True
    while improved and best > 0:
        improved = False
        for i in range(n):
            for step in (1.0, -1.0, 2.0, -2.0):
                y = best_y.copy()
                y[i] += step
                cost = _twice_nv_of_y(y, pairs, quads, rel_a)
                if cost < best:
                    best, best_y = cost, y
                    improved = True
    return best, best_y


def _grid_incumbent(pcm: Pcm, pairs, quads, rel_a, span: int = 12):
    """Exhaustive incumbent over integer log-weight vectors (small n).

    Fixes y_1 = 0 and sweeps the remaining coordinates over
    [-span, span]^(n-1); vectorized, so feasible for n <= 5.
    """
    n = pcm.n
    r = np.arange(-span, span + 1)
    grids = np.meshgrid(*([r] * (n - 1)), indexing="ij")
    m = grids[0].size
    ys = np.empty((m, n), dtype=np.int64)
    ys[:, 0] = 0
    for i, g in enumerate(grids):
        ys[:, i + 1] = g.ravel()
    diffs = np.empty((m, len(pairs)), dtype=np.int64)
    for pi, (i, j) in enumerate(pairs):
        diffs[:, pi] = ys[:, i] - ys[:, j]
    total = np.zeros(m, dtype=np.int64)
    for t, (pi, qi) in enumerate(quads):
        d = diffs[:, pi] - diffs[:, qi]
        if rel_a[t] == 0:
            total += 2 * (d != 0)
        else:
            total += 2 * (np.sign(d) == -rel_a[t]) + (d == 0)
    best = int(total.argmin())
    return int(total[best]), ys[best].astype(float)


def _subset_conflict(pcm: Pcm, pairs, quads, values, subset, epsilon=EPSILON):
    """Farkas conflict of the assignment restricted to `subset`, or None."""
    n = pcm.n
    p = LpProblem.build(n)
    idx = list(subset)
    for t in idx:
        pi, qi = quads[t]
        row = _ratio_row(n, pairs[pi], pairs[qi])
        v = values[t]
        if v == 1:
            p.add_constraint(row, ">=", epsilon)
        elif v == -1:
            p.add_constraint(row, "<=", -epsilon)
        else:
            p.add_constraint(row, "=", 0.0)
    p.add_constraint(np.ones(n), "=", 0.0)
    sol = solve_lp(p)
    if sol.status == "optimal":
        return None
    rows = [idx[r] for r in sol.farkas_rows if r < len(idx)]
    return rows or idx


def _minimize_core(pcm: Pcm, pairs, quads, values, conflict):
    """Shrink a conflict to an irreducible core by the deletion filter."""
    core = list(conflict)
    i = 0
    while i < len(core):
        trial = core[:i] + core[i + 1:]
        sub = _subset_conflict(pcm, pairs, quads, values, trial)
        if sub is None:
            i += 1
        else:
            core = sub
            i = 0
    return core


def _binaries_from(quads, values) -> dict:
    out = {}
    for t, (pi, qi) in enumerate(quads):
        v = values[t]
        out[(pi, qi)] = (1 if v == 1 else 0, 1 if v == 0 else 0)
        out[(qi, pi)] = (1 if v == -1 else 0, 1 if v == 0 else 0)
    return out


def min_violations(
    pcm: Pcm,
    engine: str = "conflict",
    time_limit: float = 60.0,
    node_limit: int = 200_000,
) -> Stage1Result:
    """Stage 1: minimize the violation count over all priority vectors."""
    if engine == "milp":
        return _min_violations_milp(pcm, time_limit)
    t0 = time.monotonic()
    pairs, quads, rel_a = _a_relations(pcm)
    nq = len(quads)

    # Feasible incumbent: the better of the geometric-mean relations and an
    # integer hill climb. A tight incumbent lets the cost-ordered search
    # stop as soon as the frontier reaches its cost.
    y_gm = np.log(pcm.a).mean(axis=1)
    inc_y = y_gm
    inc_cost = _twice_nv_of_y(y_gm, pairs, quads, rel_a)
    if pcm.n <= 5:
        cand_cost, cand_y = _grid_incumbent(pcm, pairs, quads, rel_a)
    else:
        cand_cost, cand_y = _integer_incumbent(pcm, pairs, quads, rel_a)
    if cand_cost < inc_cost:
        inc_cost, inc_y = cand_cost, cand_y
    inc_values = _relations_of_y(inc_y, pairs, quads)

    # Core-guided A*. Each LP infeasibility certificate yields a core: a set
    # of (quad, relation) literals that cannot all hold, so any realizable
    # assignment changes at least one literal of every core. Nodes are
    # partial reassignments ordered by g + h, where h counts disjoint unhit
    # cores (each costs at least one extra unit); the LP runs only at nodes
    # that already hit every known core, and the first realizable node
    # popped is optimal.
    deadline = t0 + time_limit

    # A core splits into literals that differ from the judgment relations
    # ("need": the node must flip exactly these) and literals equal to them
    # ("avoid": the node must not flip these). Only cores whose first needed
    # literal appears among a node's flips can be unhit, which makes the
    # lookup proportional to the flip count instead of the core count.
    core_info = []      # (literals, need, avoid_quads, weight)
    by_need = {}        # representative needed literal -> core ids
    defaults = []       # ids of cores with no needed literal

    def hit_weight(core):
        # Cheapest way any single literal of the core can be changed; a
        # tied judgment can only move to a strict relation (2 units) while
        # a strict one can move to a tie (1 unit).
        w = min(
            min(
                _flip_cost(rel_a[t], nv) - _flip_cost(rel_a[t], v)
                for nv in (1, 0, -1)
                if nv != v
            )
            for (t, v) in core
        )
        return max(w, 0)

    def add_core(core):
        need = tuple((t, v) for (t, v) in core if v != rel_a[t])
        avoid = tuple(t for (t, v) in core if v == rel_a[t])
        cid = len(core_info)
        core_info.append((core, need, avoid, hit_weight(core)))
        if need:
            by_need.setdefault(need[0], []).append(cid)
        else:
            defaults.append(cid)

    def unhit_cores(flips):
        out = []
        for cid in defaults:
            core, _need, avoid, w = core_info[cid]
            if all(t not in flips for t in avoid):
                out.append((core, w))
        for lit in flips.items():
            for cid in by_need.get(lit, ()):
                core, need, avoid, w = core_info[cid]
                if all(flips.get(t) == v for (t, v) in need) and all(
                    t not in flips for t in avoid
                ):
                    out.append((core, w))
        return out

    def h_of(flips, budget):
        used = set()
        h = 0
        for core, w in unhit_cores(flips):
            if h >= budget:
                break
            if not w or any(t in used for (t, _v) in core):
                continue
            h += w
            used.update(t for (t, _v) in core)
        return h

    # Seed cores from small substructures: judgment relations restricted to
    # the pairs within each triple (and quadruple, for n > 4) of
    # alternatives are often already unrealizable, and their minimized
    # cores inform the heuristic from the first iteration.
    if inc_cost > 0:
        seen_cores = set()
        for size in (3, 4):
            if size >= pcm.n:
                break
            for combo in itertools.combinations(range(pcm.n), size):
                members = set(combo)
                sub = [
                    t for t, (pi, qi) in enumerate(quads)
                    if members.issuperset(pairs[pi])
                    and members.issuperset(pairs[qi])
                ]
                conflict = _subset_conflict(pcm, pairs, quads, rel_a, sub)
                if conflict is None:
                    continue
                minimal = _minimize_core(pcm, pairs, quads, rel_a, conflict)
                core = tuple((t, rel_a[t]) for t in minimal)
                if core not in seen_cores:
                    seen_cores.add(core)
                    add_core(core)

    counter = itertools.count()
    heap = [(0, 0, next(counter), {})]
    visited = {frozenset()}
    nodes = 0
    while heap:
        if (
            time.monotonic() > deadline
            or nodes >= node_limit
            or len(visited) > _FRONTIER_CAP
        ):
            y, _ = _realize(pcm, pairs, quads, inc_values)
            return Stage1Result(
                inc_cost, y, _binaries_from(quads, inc_values),
                optimal=False, nodes=nodes, wall_time=time.monotonic() - t0,
            )
        f, g, _, flips = heapq.heappop(heap)
        if f >= inc_cost:
            break
        unhit = None
        for core, _w in unhit_cores(flips):
            if unhit is None or len(core) < len(unhit):
                unhit = core
        if unhit is None:
            values = rel_a.copy()
            for t, v in flips.items():
                values[t] = v
            nodes += 1
            y, conflict = _realize(pcm, pairs, quads, values)
            if y is not None:
                return Stage1Result(
                    g, y, _binaries_from(quads, values),
                    optimal=True, nodes=nodes, wall_time=time.monotonic() - t0,
                )
            minimal = _minimize_core(pcm, pairs, quads, values, conflict)
            core = tuple((t, values[t]) for t in minimal)
            add_core(core)
            unhit = core
            # fall through: expand this node on its fresh core
        for (t, v) in unhit:
            for nv in (1, 0, -1):
                if nv == v:
                    continue
                new_flips = dict(flips)
                if nv == rel_a[t]:
                    new_flips.pop(t, None)
                else:
                    new_flips[t] = nv
                key = frozenset(new_flips.items())
                if key in visited:
                    continue
                visited.add(key)
                new_g = sum(
                    _flip_cost(rel_a[s], w) for s, w in new_flips.items()
                )
                if new_g >= inc_cost:
                    continue
                new_h = h_of(new_flips, inc_cost - new_g)
                if new_g + new_h < inc_cost:
                    heapq.heappush(
                        heap, (new_g + new_h, new_g, next(counter), new_flips)
                    )
    # Frontier exhausted below the incumbent: the incumbent is optimal.
    y, _ = _realize(pcm, pairs, quads, inc_values)
    return Stage1Result(
        inc_cost, y, _binaries_from(quads, inc_values),
        optimal=True, nodes=nodes, wall_time=time.monotonic() - t0,
    )


def build_stage1(pcm: Pcm) -> MilpProblem:
    """Literal big-M mixed-integer formulation of stage 1.

    Variables: y (n, free), then (l, e) per ordered quadruple of upper
    pairs. The objective is scaled to integer units (2*NV).
    """
    n = pcm.n
    a = pcm.a
    pairs = upper_pairs(n)
    P = len(pairs)
    ordered = [(pi, qi) for pi in range(P) for qi in range(P)]
    nv_vars = n + 2 * len(ordered)
    p = LpProblem.build(nv_vars)
    # Keep y small so big-M stays valid.
    p.lb[:n] = -10.0
    p.ub[:n] = 10.0
    const = 0.0
    binaries = []
    for t, (pi, qi) in enumerate(ordered):
        (i, j), (k, l) = pairs[pi], pairs[qi]
        la = 1 if a[i, j] > a[k, l] * (1 + ENTRY_EQ_RTOL) else 0
        ea = 1 if not la and not (a[k, l] > a[i, j] * (1 + ENTRY_EQ_RTOL)) else 0
        lv, ev = n + 2 * t, n + 2 * t + 1
        binaries += [lv, ev]
        row = _ratio_row(n, pairs[pi], pairs[qi])

        def add(coeffs_y, extra, rel, rhs):
            c = {m: row[m] * coeffs_y for m in range(n) if row[m] != 0.0}
            c.update(extra)
            p.add_constraint(c, rel, rhs)
        add(-1.0, {lv: BIG_M}, "<=", BIG_M - EPSILON)   # (1)
        add(1.0, {lv: -BIG_M}, "<=", 0.0)               # (2)
        add(-1.0, {ev: BIG_M}, "<=", BIG_M)             # (3)
        add(1.0, {ev: BIG_M}, "<=", BIG_M)              # (4)
        add(1.0, {lv: -BIG_M, ev: -BIG_M}, "<=", -EPSILON)  # (5)
        p.add_constraint({lv: 1.0, ev: 1.0}, "<=", 1.0)  # (6)
        # objective: 2*la*(1 - l - e/2) + ea*(1 - e)
        p.c[lv] += -2.0 * la
        p.c[ev] += -(la + ea)
        const += 2.0 * la + ea
    p.add_constraint({m: 1.0 for m in range(n)}, "=", 0.0)  # (7)
    return MilpProblem(p, binaries, big_M=BIG_M, epsilon=EPSILON,
                       objective_granularity=1.0, objective_constant=const)


def _stage1_initial_x(pcm: Pcm) -> np.ndarray:
    """Warm-start vector for the big-M formulation.

    Uses the integer-grid incumbent: integer log-weights make the tie
    pattern exact, so the induced binaries satisfy the big-M rows.
    """
    n = pcm.n
    pairs, quads, rel_a = _a_relations(pcm)
    if n <= 5:
        _, y = _grid_incumbent(pcm, pairs, quads, rel_a)
    else:
        _, y = _integer_incumbent(pcm, pairs, quads, rel_a)
    y = y - y.mean()
    top = np.max(np.abs(y))
    if top > 0:
        y = y * min(1.0, 9.5 / top)
    P = len(pairs)
    ordered = [(pi, qi) for pi in range(P) for qi in range(P)]
    x = np.zeros(n + 2 * len(ordered))
    x[:n] = y
    for t, (pi, qi) in enumerate(ordered):
        (i, j), (k, l) = pairs[pi], pairs[qi]
        d = (y[i] - y[j]) - (y[k] - y[l])
        if d >= EPSILON:
            x[n + 2 * t] = 1.0
        elif d == 0.0:
            x[n + 2 * t + 1] = 1.0
    return x


def _min_violations_milp(pcm: Pcm, time_limit: float) -> Stage1Result:
    t0 = time.monotonic()
    prob = build_stage1(pcm)
    n = pcm.n
    sol = solve_milp(
        prob,
        BnbOptions(time_limit=time_limit, initial_x=_stage1_initial_x(pcm)),
    )
    if sol.x is None:
        raise Stage1NotOptimal("stage-1 search returned no solution")
    pairs = upper_pairs(n)
    P = len(pairs)
    y = sol.x[:n] - sol.x[:n].mean()
    bins = {}
    for t, (pi, qi) in enumerate([(pi, qi) for pi in range(P) for qi in range(P)]):
        if pi == qi:
            continue
        bins[(pi, qi)] = (int(round(sol.x[n + 2 * t])), int(round(sol.x[n + 2 * t + 1])))
    return Stage1Result(
        int(round(sol.objective)), y, bins,
        optimal=sol.status == "optimal", nodes=sol.nodes,
        wall_time=time.monotonic() - t0,
    )


# ---------------------------------------------------------------------------
# Stage 2: minimize the method deviation at fixed NV*.


def deviation(pcm: Pcm, w: PriorityVector, method: MethodId) -> float:
    """The deviation measure D(A, W) each method minimizes."""
    a = pcm.a
    n = pcm.n
    wv = w.w
    if method is MethodId.EM:
        lam = float(np.max(np.sum(a * wv[None, :] / wv[:, None], axis=1)))
        return (lam - n) / ((n - 1) * RI_TABLE[n])
    if method is MethodId.LLSM:
        return gci_at(pcm, wv)
    if method is MethodId.LSDM:
        s = a @ wv / (n * wv)
        return float(np.sum(np.log(s) ** 2))
    if method is MethodId.MEM:
        return float(np.max(a * wv[None, :] / wv[:, None] - 1.0))
    if method is MethodId.ARDI:
        total = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                total += abs(a[i, j] * wv[j] - wv[i]) / max(a[i, j], 1.0)
        return total
    raise ValueError(method)


def _relation_constraints(pcm, pairs, quads, values, epsilon=EPSILON):
    """Split a relation assignment into inequality rows and equality rows on y."""
    n = pcm.n
    ineq = []  # (row, rhs) meaning row.y >= rhs
    eq = []
    for t, (pi, qi) in enumerate(quads):
        row = _ratio_row(n, pairs[pi], pairs[qi])
        v = values[t]
        if v == 1:
            ineq.append((row, epsilon))
        elif v == -1:
            ineq.append((-row, epsilon))
        else:
            eq.append(row)
    return ineq, eq


def _stage2_interior_point(n, ineq, A_eq, b_eq):
    """A point satisfying eq rows exactly and ineq rows with max margin."""
    p = LpProblem.build(n + 1)
    p.c[n] = -1.0
    p.ub[n] = 1.0
    for row, rhs in ineq:
        p.add_constraint({**{m: row[m] for m in range(n) if row[m]}, n: -1.0}, ">=", rhs)
    for r in range(A_eq.shape[0]):
        p.add_constraint({m: A_eq[r, m] for m in range(n) if A_eq[r, m]}, "=", b_eq[r])
    p.lb[:n] = -20.0
    p.ub[:n] = 20.0
    sol = solve_lp(p)
    if sol.status != "optimal" or sol.x[n] <= 1e-9:
        return None
    return sol.x[:n]


def _stage2_continuous(pcm: Pcm, method: MethodId, pairs, quads, values):
    """Minimize the method deviation over y subject to a fixed relation pattern."""
    n = pcm.n
    a = pcm.a
    ineq, eq_rows = _relation_constraints(pcm, pairs, quads, values)
    A_eq = np.vstack([np.ones((1, n))] + [r[None, :] for r in eq_rows])
    b_eq = np.zeros(A_eq.shape[0])

    if method is MethodId.MEM:
        p = LpProblem.build(n + 1)
        p.c[n] = 1.0
        L = np.log(a)
        for i in range(n):
            for j in range(n):
                if i != j:
                    p.add_constraint({j: 1.0, i: -1.0, n: -1.0}, "<=", -L[i, j])
        for row, rhs in ineq:
            p.add_constraint({m: row[m] for m in range(n) if row[m]}, ">=", rhs)
        for r in range(A_eq.shape[0]):
            p.add_constraint({m: A_eq[r, m] for m in range(n) if A_eq[r, m]}, "=", 0.0)
        sol = solve_lp(p)
        return PriorityVector.from_logs(sol.x[:n])

    if method is MethodId.LLSM:
        # Quadratic objective: scale * sum_{i<j} (L_ij - y_i + y_j)^2
        L = np.log(a)
        scale = 2.0 / ((n - 1) * (n - 2))
        rows, d = [], []
        for i in range(n):
            for j in range(i + 1, n):
                r = np.zeros(n)
                r[i], r[j] = 1.0, -1.0
                rows.append(r)
                d.append(L[i, j])
        B = np.array(rows)
        dv = np.array(d)
        f = lambda y: scale * float(np.sum((B @ y - dv) ** 2))
        grad = lambda y: scale * 2.0 * B.T @ (B @ y - dv)
        hess = lambda y: scale * 2.0 * B.T @ B
    elif method is MethodId.LSDM:
        f, grad, hess = _lsdm_objective(a)
    elif method is MethodId.EM:
        return _stage2_em(pcm, ineq, A_eq, b_eq)
    elif method is MethodId.ARDI:
        f, grad, hess = _ardi_smooth_objective(a)
    else:
        raise ValueError(method)

    y0 = _stage2_interior_point(n, ineq, A_eq, b_eq)
    if method is not MethodId.ARDI:
        # Try the equality-constrained minimum first; it often already
        # satisfies the strict rows.
        try:
            res = minimize_smooth(f, grad, y0 if y0 is not None else np.zeros(n), A_eq, b_eq, hess=hess)
            if all(float(row @ res.x) >= rhs - 1e-12 for row, rhs in ineq):
                return PriorityVector.from_logs(res.x)
        except Exception:
            pass
    if y0 is None:
        # Degenerate pattern: fall back to epsilon-relaxed equalities.
        y0 = np.zeros(n)
    cons = [SmoothConstraint.linear(-row, -rhs) for row, rhs in ineq]
    if method is MethodId.ARDI:
        # The smoothed ARDI objective is flat far from the origin; keep the
        # iterates boxed so Newton steps cannot wander into underflow.
        for k in range(n):
            e = np.zeros(n)
            e[k] = 1.0
            cons.append(SmoothConstraint.linear(e, 25.0))
            cons.append(SmoothConstraint.linear(-e, 25.0))
    res = barrier_minimize(f, grad, hess, y0, cons, A_eq, b_eq, tol=1e-9)
    return PriorityVector.from_logs(res.x)


def _stage2_em(pcm: Pcm, ineq, A_eq, b_eq):
    """min lambda s.t. sum_j a_ij exp(y_j - y_i) <= lambda plus relation rows."""
    n = pcm.n
    a = pcm.a
    # variables: y (n), lam (1)
    def row_sum(i, y):
        return float(np.sum(a[i] * np.exp(y - y[i])))

    cons = []
    for i in range(n):
        def g(x, i=i):
            return row_sum(i, x[:n]) - x[n]

        def gr(x, i=i):
            y = x[:n]
            e = a[i] * np.exp(y - y[i])
            out = np.zeros(n + 1)
            out[:n] = e
            out[i] = -(np.sum(e) - e[i])
            out[n] = -1.0
            return out

        def hs(x, i=i, eps=1e-6):
            h = np.zeros((n + 1, n + 1))
            for k in range(n):
                d = np.zeros(n + 1)
                d[k] = eps
                h[:, k] = (gr(x + d, i) - gr(x - d, i)) / (2 * eps)
            return 0.5 * (h + h.T)

        cons.append(SmoothConstraint(g, gr, hs))
    for row, rhs in ineq:
        cons.append(SmoothConstraint.linear(np.append(-row, 0.0), -rhs))
    A = np.hstack([A_eq, np.zeros((A_eq.shape[0], 1))])
    x0 = np.zeros(n + 1)
    x0[n] = float(np.max(np.sum(a, axis=1))) + 1.0
    yint = _stage2_interior_point(n, ineq, A_eq, b_eq)
    if yint is not None:
        x0[:n] = yint
        x0[n] = max(row_sum(i, yint) for i in range(n)) + 1.0
    f = lambda x: x[n]
    grad = lambda x: np.append(np.zeros(n), 1.0)
    hess = lambda x: np.zeros((n + 1, n + 1))
    res = barrier_minimize(f, grad, hess, x0, cons, A, b_eq, tol=1e-9)
    return PriorityVector.from_logs(res.x[:n])


def _ardi_smooth_objective(a: np.ndarray, delta: float = 1e-6):
    """Smoothed ARDI deviation in log space (|.| ~ sqrt(.^2 + delta^2)).

    Evaluated at the unnormalized weights u = exp(y); the zero-sum
    constraint on y pins the scale, which keeps the minimum away from the
    degenerate all-weights-to-zero direction.
    """
    n = a.shape[0]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]

    def parts(y):
        u = np.exp(np.clip(y, -50, 50))
        total = 0.0
        dT = np.zeros(n)
        for i, j in pairs:
            m = max(a[i, j], 1.0)
            r = a[i, j] * u[j] - u[i]
            phi = math.sqrt(r * r + delta * delta)
            total += phi / m
            dphi = r / phi / m
            dT[j] += dphi * a[i, j]
            dT[i] -= dphi
        return u, total, dT

    def f(y):
        _, total, _ = parts(np.asarray(y, dtype=float))
        return total

    def grad(y):
        u, _, dT = parts(np.asarray(y, dtype=float))
        return dT * u

    def hess(y, eps=1e-5):
        h = np.zeros((n, n))
        for k in range(n):
            d = np.zeros(n)
            d[k] = eps
            h[:, k] = (grad(y + d) - grad(y - d)) / (2 * eps)
        return 0.5 * (h + h.T)

    return f, grad, hess


def mnvdm(
    pcm: Pcm,
    method: MethodId,
    engine: str = "conflict",
    time_limit: float = 60.0,
    stage1: Stage1Result | None = None,
) -> MnvdmResult:
    """Two-stage solve: NV* first, then the method deviation at NV = NV*."""
    s1 = stage1 if stage1 is not None else min_violations(pcm, engine=engine, time_limit=time_limit)
    pairs, quads, rel_a = _a_relations(pcm)
    if s1.twice_nv_star == 0:
        # NV = 0 forces every weight relation to match the judgment relation.
        values = rel_a
    else:
        values = []
        for (pi, qi) in quads:
            l, e = s1.binaries[(pi, qi)]
            values.append(0 if e else (1 if l else -1))
    w = _stage2_continuous(pcm, method, pairs, quads, values)
    return MnvdmResult(
        w=w,
        twice_nv=s1.twice_nv_star,
        deviation=deviation(pcm, w, method),
        method=method,
        optimal=s1.optimal,
    )
