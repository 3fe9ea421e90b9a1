"""In-house optimization engine: simplex, branch-and-bound, smooth solver."""

import numpy as np
import pytest

from cop_ahp.errors import LpUnbounded
from cop_ahp.optim.bnb import (
    BnbOptions,
    MilpProblem,
    QuadraticObjective,
    solve_milp,
    solve_milp_by_enumeration,
)
from cop_ahp.optim.simplex import LpProblem, solve_lp
from cop_ahp.optim.smooth import minimize_smooth


def _random_lp(rng, n_vars=5, n_rows=6):
    p = LpProblem.build(n_vars)
    p.c = rng.normal(size=n_vars)
    p.lb = np.zeros(n_vars)
    p.ub = np.full(n_vars, 10.0)
    for _ in range(n_rows):
        coeffs = rng.normal(size=n_vars)
        rel = rng.choice(["<=", ">=", "="])
        # Anchor the rhs near a random feasible point to keep most
        # instances feasible.
        x0 = rng.uniform(0, 5, size=n_vars)
        rhs = float(coeffs @ x0)
        if rel == "<=":
            rhs += abs(rng.normal())
        elif rel == ">=":
            rhs -= abs(rng.normal())
        p.add_constraint(coeffs, rel, rhs)
    return p


class TestSimplex:
    def test_textbook_optimum(self):
        p = LpProblem.build(2)
        p.c = np.array([-3.0, -5.0])
        p.lb = np.zeros(2)
        p.add_constraint([1.0, 0.0], "<=", 4.0)
        p.add_constraint([0.0, 2.0], "<=", 12.0)
        p.add_constraint([3.0, 2.0], "<=", 18.0)
        sol = solve_lp(p)
        assert sol.status == "optimal"
        assert sol.x == pytest.approx([2.0, 6.0], abs=1e-9)
        assert sol.objective == pytest.approx(-36.0, abs=1e-9)

    def test_equality_and_free_variables(self):
        p = LpProblem.build(3)
        p.c = np.array([1.0, 1.0, 0.0])
        p.add_constraint([1.0, 1.0, 1.0], "=", 1.0)
        p.add_constraint([1.0, -1.0, 0.0], ">=", -2.0)
        p.lb = np.array([0.0, 0.0, -5.0])
        p.ub = np.array([np.inf, np.inf, 5.0])
        sol = solve_lp(p)
        assert sol.status == "optimal"
        assert sol.objective == pytest.approx(0.0, abs=1e-9)

    def test_infeasible_has_farkas_rows(self):
        p = LpProblem.build(2)
        p.c = np.array([1.0, 1.0])
        p.lb = np.zeros(2)
        p.add_constraint([1.0, 1.0], "<=", 1.0)
        p.add_constraint([1.0, 1.0], ">=", 3.0)
        sol = solve_lp(p)
        assert sol.status == "infeasible"
        assert sol.farkas_rows

    def test_unbounded_raises(self):
        p = LpProblem.build(2)
        p.c = np.array([-1.0, 0.0])
        p.lb = np.zeros(2)
        p.add_constraint([0.0, 1.0], "<=", 1.0)
        with pytest.raises(LpUnbounded):
            solve_lp(p)

    def test_random_lps_certify_duality_gap(self):
        rng = np.random.default_rng(42)
        solved = 0
        for _ in range(60):
            p = _random_lp(rng)
            try:
                sol = solve_lp(p)
            except LpUnbounded:
                continue
            if sol.status != "optimal":
                continue
            solved += 1
            assert abs(sol.duality_gap) <= 1e-9
            assert sol.residual <= 1e-8
            assert np.all(sol.x >= p.lb - 1e-9)
            assert np.all(sol.x <= p.ub + 1e-9)
        assert solved >= 30

    def test_optimality_against_vertex_enumeration(self):
        # 2-variable LPs can be checked against a dense grid of vertices.
        rng = np.random.default_rng(3)
        for _ in range(20):
            p = _random_lp(rng, n_vars=2, n_rows=4)
            try:
                sol = solve_lp(p)
            except LpUnbounded:
                continue
            if sol.status != "optimal":
                continue
            grid = np.linspace(0, 10, 41)
            best = np.inf
            for x0 in grid:
                for x1 in grid:
                    x = np.array([x0, x1])
                    res = p.A @ x - p.b
                    ok = all(
                        (r == "<=" and v <= 1e-9)
                        or (r == ">=" and v >= -1e-9)
                        or (r == "=" and abs(v) <= 1e-9)
                        for r, v in zip(p.rel, res)
                    )
                    if ok:
                        best = min(best, float(p.c @ x))
            assert sol.objective <= best + 1e-6


class TestBranchAndBound:
    def _random_milp(self, rng, n_binaries=6, n_cont=3):
        n = n_binaries + n_cont
        p = LpProblem.build(n)
        p.c = rng.normal(size=n)
        p.lb = np.zeros(n)
        p.ub = np.concatenate([np.ones(n_binaries), np.full(n_cont, 4.0)])
        for _ in range(4):
            coeffs = rng.normal(size=n)
            rhs = float(coeffs @ rng.uniform(0, 1, size=n)) + abs(rng.normal())
            p.add_constraint(coeffs, "<=", rhs)
        return MilpProblem(lp=p, binaries=list(range(n_binaries)))

    def test_matches_enumeration_on_random_instances(self):
        rng = np.random.default_rng(0)
        for _ in range(30):
            milp = self._random_milp(rng)
            bnb = solve_milp(milp, BnbOptions(time_limit=30.0))
            oracle = solve_milp_by_enumeration(milp)
            assert bnb.status == oracle.status
            if oracle.status == "optimal":
                assert bnb.objective == pytest.approx(oracle.objective, abs=1e-6)

    def test_detects_infeasibility(self):
        p = LpProblem.build(2)
        p.c = np.zeros(2)
        p.lb = np.zeros(2)
        p.ub = np.ones(2)
        p.add_constraint([1.0, 1.0], ">=", 3.0)
        milp = MilpProblem(lp=p, binaries=[0, 1])
        assert solve_milp(milp).status == "infeasible"

    def test_quadratic_objective_instance(self):
        # min (x0 - 0.3)^2 + (x1 - 0.8)^2 with x0, x1 binary.
        p = LpProblem.build(2)
        p.lb = np.zeros(2)
        p.ub = np.ones(2)
        p.add_constraint([1.0, 1.0], "<=", 2.0)
        obj = QuadraticObjective(
            Q=2.0 * np.eye(2), c=np.array([-0.6, -1.6]), const=0.73
        )
        milp = MilpProblem(lp=p, binaries=[0, 1], objective=obj)
        sol = solve_milp(milp)
        assert sol.status == "optimal"
        assert sol.x == pytest.approx([0.0, 1.0], abs=1e-6)
        assert sol.objective == pytest.approx(0.13, abs=1e-6)


class TestSmooth:
    def test_quadratic_gradient_vanishes(self):
        Q = np.array([[4.0, 1.0], [1.0, 3.0]])
        b = np.array([1.0, 2.0])

        def f(x):
            return 0.5 * x @ Q @ x - b @ x

        def grad(x):
            return Q @ x - b

        res = minimize_smooth(f, grad, np.zeros(2), hess=lambda x: Q)
        assert res.grad_norm <= 1e-8
        assert res.x == pytest.approx(np.linalg.solve(Q, b), abs=1e-7)

    def test_equality_constrained_projection(self):
        # min |x|^2 subject to sum x = 1 has solution x = 1/n.
        n = 4

        def f(x):
            return float(x @ x)

        def grad(x):
            return 2.0 * x

        res = minimize_smooth(
            f, grad, np.zeros(n), A_eq=np.ones((1, n)), b_eq=np.ones(1),
            hess=lambda x: 2.0 * np.eye(n),
        )
        assert res.x == pytest.approx(np.full(n, 0.25), abs=1e-8)
        assert np.sum(res.x) == pytest.approx(1.0, abs=1e-10)
