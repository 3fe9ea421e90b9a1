"""Classical prioritization methods for pairwise comparison matrices.

Five methods: the eigenvector method (EM), the logarithmic least squares
method (LLSM, also known as the geometric mean method), the logarithmic
squared deviations method (LSDM), the minimal error method (MEM), and the
average relative deviation minimization method (ARDI).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import EigenSolveFailed
from .optim import LpProblem, minimize_smooth, solve_lp
from .pcm import Pcm, PriorityVector


class MethodId(enum.Enum):
    EM = "EM"
    LLSM = "LLSM"
    LSDM = "LSDM"
    MEM = "MEM"
    ARDI = "ARDI"


@dataclass(frozen=True)
class EigenResult:
    lambda_max: float
    w: PriorityVector


def em(pcm: Pcm, tol: float = 1e-12, max_iter: int = 10_000) -> EigenResult:
    """Principal eigenpair by power iteration on the positive matrix."""
    A = pcm.a
    n = pcm.n
    v = np.full(n, 1.0 / n)
    lam_prev = math.inf
    for _ in range(max_iter):
        u = A @ v
        lam = float(u @ v / (v @ v))
        v = u / np.linalg.norm(u)
        if abs(lam - lam_prev) < tol:
            w = v / v.sum()
            if float(np.max(np.abs(A @ w - lam * w))) <= 1e-9 * max(1.0, lam):
                return EigenResult(lam, PriorityVector(w))
        lam_prev = lam
    raise EigenSolveFailed("power iteration did not converge")


def llsm(pcm: Pcm) -> PriorityVector:
    """Geometric-mean closed form: w_i proportional to (prod_j a_ij)^(1/n)."""
    y = np.log(pcm.a).mean(axis=1)
    return PriorityVector.from_logs(y)


def _lsdm_objective(A: np.ndarray):
    n = A.shape[0]

    def parts(y):
        E = A * np.exp(y[None, :] - y[:, None])  # E[i,j] = a_ij e^{y_j - y_i}
        s = E.sum(axis=1)
        u = np.log(s / n)
        return E, s, u

    def f(y):
        _, _, u = parts(y)
        return float(u @ u)

    def grad(y):
        E, s, u = parts(y)
        # dS_i/dy_k = E[i,k] (k != i); dS_i/dy_i = -(S_i - 1)
        J = E.copy()
        np.fill_diagonal(J, -(s - 1.0))
        return 2.0 * (u / s) @ J

    def hess(y):
        h = np.zeros((n, n))
        eps = 1e-6
        for k in range(n):
            e = np.zeros(n)
            e[k] = eps
            h[:, k] = (grad(y + e) - grad(y - e)) / (2 * eps)
        return 0.5 * (h + h.T)

    return f, grad, hess


def lsdm(pcm: Pcm) -> PriorityVector:
    """Minimize sum_i ln^2(sum_j a_ij w_j / (n w_i)) over the simplex, in log space."""
    n = pcm.n
    f, grad, hess = _lsdm_objective(pcm.a)
    y0 = np.log(pcm.a).mean(axis=1)  # LLSM start
    y0 -= y0.mean()
    A_eq = np.ones((1, n))
    res = minimize_smooth(f, grad, y0, A_eq, np.zeros(1), hess=hess)
    return PriorityVector.from_logs(res.x)


def lsdm_objective_value(pcm: Pcm, w) -> float:
    """The LSDM objective evaluated at an arbitrary priority vector."""
    wv = np.asarray(w, dtype=float)
    s = pcm.a @ wv / (pcm.n * wv)
    return float(np.sum(np.log(s) ** 2))


def mem(pcm: Pcm) -> PriorityVector:
    """Minimize the worst relative error max a_ij w_j / w_i via an LP in log space."""
    n = pcm.n
    # variables: y_0..y_{n-1}, t
    p = LpProblem.build(n + 1)
    p.c[n] = 1.0
    L = np.log(pcm.a)
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            p.add_constraint({j: 1.0, i: -1.0, n: -1.0}, "<=", -L[i, j])
    p.add_constraint({k: 1.0 for k in range(n)}, "=", 0.0)
    sol = solve_lp(p)
    return PriorityVector.from_logs(sol.x[:n])


def ardi(pcm: Pcm) -> PriorityVector:
    """Minimize the summed per-pair absolute deviations via an LP.

    For each upper pair (i, j): a_ij (w_j + e_j) = w_i + e_i with
    |e_i| + |e_j| <= v_ij; absolute values are split into +/- parts.
    """
    n = pcm.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    m = len(pairs)
    # variables: w (n), then per pair: ei+, ei-, ej+, ej-, v (5m)
    nv = n + 5 * m
    p = LpProblem.build(nv)
    p.lb[:n] = 1e-6
    base = n
    for k, (i, j) in enumerate(pairs):
        eip, eim, ejp, ejm, v = range(base + 5 * k, base + 5 * k + 5)
        for idx in (eip, eim, ejp, ejm, v):
            p.lb[idx] = 0.0
        a = pcm.a[i, j]
        p.c[v] = 1.0
        p.add_constraint({i: 1.0, eip: 1.0, eim: -1.0, j: -a, ejp: -a, ejm: a}, "=", 0.0)
        p.add_constraint({eip: 1.0, eim: 1.0, ejp: 1.0, ejm: 1.0, v: -1.0}, "<=", 0.0)
    p.add_constraint({k: 1.0 for k in range(n)}, "=", 1.0)
    sol = solve_lp(p)
    return PriorityVector(sol.x[:n])


def prioritize(pcm: Pcm, method: MethodId) -> PriorityVector:
    if method is MethodId.EM:
        return em(pcm).w
    return {MethodId.LLSM: llsm, MethodId.LSDM: lsdm, MethodId.MEM: mem, MethodId.ARDI: ardi}[method](pcm)
