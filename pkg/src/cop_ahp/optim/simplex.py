"""Dense-tableau two-phase primal simplex.

Problems at this project's scale are small and dense, so the classic
tableau with numpy row operations is fast enough and easy to certify:
duals are read off the artificial columns and the duality gap is
reported with every optimal solution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import LpInfeasible, LpUnbounded, NumericalBreakdown

INF = math.inf


@dataclass
class LpProblem:
    """min c.x subject to A x (<=,=,>=) b and lb <= x <= ub."""

    c: np.ndarray
    A: np.ndarray
    rel: list
    b: np.ndarray
    lb: np.ndarray
    ub: np.ndarray

    @classmethod
    def build(cls, n_vars: int):
        return cls(
            c=np.zeros(n_vars),
            A=np.zeros((0, n_vars)),
            rel=[],
            b=np.zeros(0),
            lb=np.full(n_vars, -INF),
            ub=np.full(n_vars, INF),
        )

    def add_constraint(self, coeffs, rel: str, rhs: float):
        row = np.zeros(self.A.shape[1])
        if isinstance(coeffs, dict):
            for k, v in coeffs.items():
                row[k] = v
        else:
            row[: len(coeffs)] = coeffs
        self.A = np.vstack([self.A, row])
        self.rel.append(rel)
        self.b = np.append(self.b, rhs)

    @property
    def n_vars(self) -> int:
        return self.A.shape[1] if self.A.size else len(self.c)


@dataclass
class LpSolution:
    status: str  # optimal | infeasible | unbounded
    x: np.ndarray | None = None
    objective: float = math.nan
    duality_gap: float = math.nan
    residual: float = math.nan
    iterations: int = 0
    farkas_rows: list = field(default_factory=list)


class _Standardizer:
    """Maps a general LP onto min c.x, A x = b, x >= 0."""

    def __init__(self, p: LpProblem):
        n = p.n_vars
        cols = []  # per original var: ('shift', idx, lo) | ('flip', idx, hi) | ('split', ip, im)
        std_c = []
        extra_rows = []  # (var_std_index, ub_minus_lb) for two-sided bounds
        k = 0
        for j in range(n):
            lo, hi = p.lb[j], p.ub[j]
            if lo == -INF and hi == INF:
                cols.append(("split", k, k + 1))
                std_c += [p.c[j], -p.c[j]]
                k += 2
            elif lo != -INF:
                cols.append(("shift", k, lo))
                std_c.append(p.c[j])
                if hi != INF:
                    extra_rows.append((k, hi - lo))
                k += 1
            else:  # lo == -inf, hi finite: x = hi - x'
                cols.append(("flip", k, hi))
                std_c.append(-p.c[j])
                k += 1
        m0 = p.A.shape[0]
        rows = []
        rhs = []
        rels = []
        for i in range(m0):
            row = np.zeros(k)
            shift = 0.0
            for j in range(n):
                aij = p.A[i, j]
                if aij == 0:
                    continue
                kind = cols[j]
                if kind[0] == "split":
                    row[kind[1]] += aij
                    row[kind[2]] -= aij
                elif kind[0] == "shift":
                    row[kind[1]] += aij
                    shift += aij * kind[2]
                else:
                    row[kind[1]] -= aij
                    shift += aij * kind[2]
            rows.append(row)
            rhs.append(p.b[i] - shift)
            rels.append(p.rel[i])
        for (idx, cap) in extra_rows:
            row = np.zeros(k)
            row[idx] = 1.0
            rows.append(row)
            rhs.append(cap)
            rels.append("<=")
        # slacks
        A = np.array(rows) if rows else np.zeros((0, k))
        b = np.array(rhs)
        n_slack = sum(1 for r in rels if r != "=")
        S = np.zeros((len(rels), n_slack))
        si = 0
        for i, r in enumerate(rels):
            if r == "<=":
                S[i, si] = 1.0
                si += 1
            elif r == ">=":
                S[i, si] = -1.0
                si += 1
        A = np.hstack([A, S]) if len(rels) else np.zeros((0, k))
        c = np.concatenate([np.array(std_c), np.zeros(n_slack)])
        # normalize rows to b >= 0
        for i in range(A.shape[0]):
            if b[i] < 0:
                A[i] *= -1
                b[i] = -b[i]
        self.p = p
        self.cols = cols
        self.A = A
        self.b = b
        self.c = c
        self.n_structural = k
        self.obj_shift = sum(
            p.c[j] * cols[j][2] for j in range(n) if cols[j][0] in ("shift", "flip")
        )

    def recover(self, x_std: np.ndarray) -> np.ndarray:
        x = np.zeros(self.p.n_vars)
        for j, kind in enumerate(self.cols):
            if kind[0] == "split":
                x[j] = x_std[kind[1]] - x_std[kind[2]]
            elif kind[0] == "shift":
                x[j] = kind[2] + x_std[kind[1]]
            else:
                x[j] = kind[2] - x_std[kind[1]]
        return x


def _pivot(T: np.ndarray, basis: list, row: int, col: int):
    T[row] /= T[row, col]
    piv = T[row]
    factors = T[:, col].copy()
    factors[row] = 0.0
    T -= np.outer(factors, piv)
    basis[row] = col


def _run_simplex(T, basis, n_price, max_iter=200_000, bland_after=None):
    """Minimize the last tableau row over columns [0, n_price). Returns iterations."""
    m = T.shape[0] - 1
    if bland_after is None:
        bland_after = max(30, 3 * n_price)
    degen = 0
    bland = False
    it = 0
    while True:
        it += 1
        if it > max_iter:
            raise NumericalBreakdown("simplex iteration limit exceeded")
        costs = T[-1, :n_price]
        if bland:
            elig = np.nonzero(costs < -1e-10)[0]
            if elig.size == 0:
                return it
            col = int(elig[0])
        else:
            col = int(np.argmin(costs))
            if costs[col] >= -1e-10:
                return it
        colvals = T[:m, col]
        mask = colvals > 1e-10
        if not mask.any():
            raise LpUnbounded("unbounded direction in simplex")
        ratios = np.full(m, np.inf)
        ratios[mask] = T[:m, -1][mask] / colvals[mask]
        row = int(np.argmin(ratios))
        if bland:
            # lowest basis index among ties, Bland-style
            best = ratios[row]
            cand = [i for i in range(m) if ratios[i] <= best + 1e-12]
            row = min(cand, key=lambda i: basis[i])
        if T[row, -1] < 1e-10:
            degen += 1
            if degen > bland_after:
                bland = True
        else:
            degen = 0
        _pivot(T, basis, row, col)


def solve_lp(p: LpProblem) -> LpSolution:
    """Solve a general-form LP; certify duality gap on optimal exit."""
    std = _Standardizer(p)
    A, b, c = std.A, std.b, std.c
    m, n = A.shape
    if m == 0:
        # bounds-only problem; pick lb-respecting minimizer per sign of c
        x = np.zeros(p.n_vars)
        for j in range(p.n_vars):
            if p.c[j] > 0:
                if p.lb[j] == -INF:
                    raise LpUnbounded("unbounded bounds-only LP")
                x[j] = p.lb[j]
            elif p.c[j] < 0:
                if p.ub[j] == INF:
                    raise LpUnbounded("unbounded bounds-only LP")
                x[j] = p.ub[j]
            else:
                x[j] = min(max(0.0, p.lb[j]), p.ub[j])
        return LpSolution("optimal", x, float(p.c @ x), 0.0, 0.0, 0)
    # phase 1 tableau with artificials
    T = np.zeros((m + 1, n + m + 1))
    T[:m, :n] = A
    T[:m, n : n + m] = np.eye(m)
    T[:m, -1] = b
    T[-1, :n] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = list(range(n, n + m))
    it1 = _run_simplex(T, basis, n)
    phase1_obj = -T[-1, -1]
    if phase1_obj > 1e-7:
        # Farkas-style certificate: rows with nonzero weight in the
        # infeasibility combination. Phase-1 artificials cost 1, so the
        # reduced cost in artificial column i is 1 - y_i.
        y = 1.0 - T[-1, n : n + m]
        rows = [i for i in range(m) if i < p.A.shape[0] and abs(y[i]) > 1e-9]
        return LpSolution("infeasible", farkas_rows=rows, iterations=it1)
    # drive leftover artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            piv_cols = [j for j in range(n) if abs(T[r, j]) > 1e-9]
            if piv_cols:
                _pivot(T, basis, r, piv_cols[0])
    # phase 2: replace cost row
    T[-1, :] = 0.0
    T[-1, :n] = c
    for r in range(m):
        if basis[r] < n:
            T[-1] -= c[basis[r]] * T[r]
    it2 = _run_simplex(T, basis, n)
    x_std = np.zeros(n)
    for r in range(m):
        if basis[r] < n:
            x_std[basis[r]] = T[r, -1]
    x = std.recover(x_std)
    obj = float(std.c @ x_std + std.obj_shift)
    # duals from the artificial columns of the final tableau
    y = T[-1, n : n + m].copy()
    dual_obj = float(-(y @ b) + std.obj_shift)
    gap = abs(obj - dual_obj)
    residual = float(np.max(np.abs(A @ x_std - b))) if m else 0.0
    return LpSolution("optimal", x, obj, gap, residual, it1 + it2)
