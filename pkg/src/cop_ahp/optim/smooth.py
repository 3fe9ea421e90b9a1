"""Equality-constrained Newton descent and a log-barrier method.

The Newton path handles smooth convex objectives restricted to an affine
set (used by the log-domain prioritization objectives); the barrier path
adds smooth convex inequality constraints (used by the second-stage
models and the revision feasibility subproblems).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import OptimizerNonConvergent


@dataclass
class SmoothResult:
    x: np.ndarray
    objective: float
    grad_norm: float
    iterations: int


def _nullspace(A: np.ndarray) -> np.ndarray:
    if A.size == 0:
        return None
    u, s, vt = np.linalg.svd(A)
    rank = int(np.sum(s > 1e-12 * (s[0] if s.size else 1.0)))
    return vt[rank:].T


def _affine_particular(A, b, x0):
    """Project x0 onto {x : A x = b}."""
    if A is None or A.size == 0:
        return np.asarray(x0, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    correction = np.linalg.lstsq(A, b - A @ x0, rcond=None)[0]
    return x0 + correction


def minimize_smooth(
    f,
    grad,
    x0,
    A_eq=None,
    b_eq=None,
    hess=None,
    tol: float = 1e-8,
    max_iter: int = 10_000,
) -> SmoothResult:
    """Minimize smooth convex f over {x : A_eq x = b_eq}.

    Damped Newton in the nullspace of A_eq with backtracking; falls back
    to gradient steps when the reduced Hessian is not positive definite
    or no Hessian is supplied.
    """
    A_eq = None if A_eq is None else np.atleast_2d(np.asarray(A_eq, dtype=float))
    x = _affine_particular(A_eq, np.atleast_1d(b_eq) if b_eq is not None else None, x0)
    Z = _nullspace(A_eq) if A_eq is not None else None
    dim = len(x)
    for it in range(1, max_iter + 1):
        g = np.asarray(grad(x), dtype=float)
        pg = Z @ (Z.T @ g) if Z is not None else g
        pg_norm = float(np.linalg.norm(pg, ord=np.inf))
        if pg_norm <= tol:
            return SmoothResult(x, float(f(x)), pg_norm, it)
        step = None
        if hess is not None:
            H = np.asarray(hess(x), dtype=float)
            Hr = Z.T @ H @ Z if Z is not None else H
            gr = Z.T @ g if Z is not None else g
            try:
                L = np.linalg.cholesky(Hr + 1e-12 * np.eye(Hr.shape[0]))
                dv = -np.linalg.solve(L.T, np.linalg.solve(L, gr))
                step = Z @ dv if Z is not None else dv
            except np.linalg.LinAlgError:
                step = None
        if step is None or float(step @ g) > -1e-14:
            step = -pg
        # backtracking line search on the Armijo condition
        t = 1.0
        fx = float(f(x))
        slope = float(g @ step)
        for _ in range(60):
            xn = x + t * step
            if float(f(xn)) <= fx + 1e-4 * t * slope:
                break
            t *= 0.5
        else:
            return SmoothResult(x, fx, pg_norm, it)
        x = x + t * step
    g = np.asarray(grad(x), dtype=float)
    pg = Z @ (Z.T @ g) if Z is not None else g
    pg_norm = float(np.linalg.norm(pg, ord=np.inf))
    if pg_norm > 100 * tol:
        raise OptimizerNonConvergent(
            f"projected gradient {pg_norm:.3e} after {max_iter} iterations"
        )
    return SmoothResult(x, float(f(x)), pg_norm, max_iter)


class SmoothConstraint:
    """A smooth convex inequality g(x) <= 0 with gradient and Hessian."""

    def __init__(self, g, grad, hess=None):
        self.g = g
        self.grad = grad
        self.hess = hess

    @classmethod
    def linear(cls, row, rhs):
        row = np.asarray(row, dtype=float)
        zero = np.zeros((len(row), len(row)))
        return cls(
            g=lambda x: float(row @ x - rhs),
            grad=lambda x: row,
            hess=lambda x: zero,
        )


def _barrier_newton(f, grad, hess, cons, x, Z, t, tol, max_iter=200):
    """Centering step: minimize t*f + phi over the affine set."""

    def val(xx):
        s = t * f(xx)
        for c in cons:
            gv = c.g(xx)
            if gv >= 0:
                return math.inf
            s -= math.log(-gv)
        return s

    for _ in range(max_iter):
        g = t * np.asarray(grad(x), dtype=float)
        H = t * np.asarray(hess(x), dtype=float)
        for c in cons:
            gv = c.g(x)
            cg = np.asarray(c.grad(x), dtype=float)
            g += cg / (-gv)
            H += np.outer(cg, cg) / (gv * gv)
            if c.hess is not None:
                H += np.asarray(c.hess(x), dtype=float) / (-gv)
        gr = Z.T @ g if Z is not None else g
        Hr = Z.T @ H @ Z if Z is not None else H
        try:
            L = np.linalg.cholesky(Hr + 1e-10 * np.eye(Hr.shape[0]))
            dv = -np.linalg.solve(L.T, np.linalg.solve(L, gr))
        except np.linalg.LinAlgError:
            dv = -gr
        step = Z @ dv if Z is not None else dv
        lam2 = float(-gr @ dv)
        if lam2 / 2.0 <= tol:
            return x
        # backtracking, staying strictly feasible
        tstep = 1.0
        v0 = val(x)
        slope = float(g @ step)
        for _ in range(80):
            xn = x + tstep * step
            if val(xn) <= v0 + 1e-4 * tstep * slope:
                x = xn
                break
            tstep *= 0.5
        else:
            return x
    return x


def barrier_minimize(
    f,
    grad,
    hess,
    x0,
    constraints,
    A_eq=None,
    b_eq=None,
    tol: float = 1e-8,
    mu: float = 20.0,
) -> SmoothResult:
    """Minimize smooth convex f s.t. smooth convex g_i(x) <= 0, A_eq x = b_eq.

    x0 must satisfy the equalities and be strictly feasible for the
    inequalities (see phase1_strict_point).
    """
    A_eq = None if A_eq is None else np.atleast_2d(np.asarray(A_eq, dtype=float))
    x = np.asarray(x0, dtype=float).copy()
    Z = _nullspace(A_eq) if A_eq is not None else None
    m = len(constraints)
    if m == 0:
        return minimize_smooth(f, grad, x, A_eq, b_eq, hess=hess, tol=tol)
    for c in constraints:
        if c.g(x) >= 0:
            raise OptimizerNonConvergent(
                f"barrier start not strictly feasible (g = {c.g(x):.3e})"
            )
    t = 1.0
    its = 0
    while m / t > tol:
        x = _barrier_newton(f, grad, hess, constraints, x, Z, t, tol=1e-10)
        t *= mu
        its += 1
        if its > 200:
            raise OptimizerNonConvergent("barrier outer loop stalled")
    x = _barrier_newton(f, grad, hess, constraints, x, Z, t, tol=1e-12)
    g = np.asarray(grad(x), dtype=float)
    pg = Z @ (Z.T @ g) if Z is not None else g
    return SmoothResult(x, float(f(x)), float(np.linalg.norm(pg, np.inf)), its)


def phase1_strict_point(constraints, x0, A_eq=None, b_eq=None, margin=1e-9):
    """Find x with g_i(x) < 0 for all i on the affine set, or None.

    Minimizes an auxiliary slack s with g_i(x) <= s via the barrier
    method on the lifted problem; succeeds when the optimum is < 0.
    """
    A_eq = None if A_eq is None else np.atleast_2d(np.asarray(A_eq, dtype=float))
    x = _affine_particular(A_eq, np.atleast_1d(b_eq) if b_eq is not None else None, x0)
    vals = [c.g(x) for c in constraints]
    if all(v < -margin for v in vals):
        return x
    n = len(x)
    s0 = max(vals) + 1.0
    z0 = np.append(x, s0)
    lifted = []
    for c in constraints:
        def g(z, c=c):
            return c.g(z[:n]) - z[n]

        def gr(z, c=c):
            out = np.append(np.asarray(c.grad(z[:n]), dtype=float), -1.0)
            return out

        def hs(z, c=c):
            H = np.zeros((n + 1, n + 1))
            if c.hess is not None:
                H[:n, :n] = c.hess(z[:n])
            return H

        lifted.append(SmoothConstraint(g, gr, hs))
    # cap the slack from below so the auxiliary problem stays bounded
    floor = np.zeros(n + 1)
    floor[n] = -1.0
    lifted.append(SmoothConstraint.linear(floor, 1.0))
    A_l = None
    b_l = None
    if A_eq is not None:
        A_l = np.hstack([A_eq, np.zeros((A_eq.shape[0], 1))])
        b_l = b_eq
    e = np.zeros(n + 1)
    e[n] = 1.0
    zero_h = np.zeros((n + 1, n + 1))
    res = barrier_minimize(
        f=lambda z: float(z[n]),
        grad=lambda z: e,
        hess=lambda z: zero_h,
        x0=z0,
        constraints=lifted,
        A_eq=A_l,
        b_eq=b_l,
        tol=1e-10,
    )
    if res.objective < -margin:
        return res.x[:n]
    return None
