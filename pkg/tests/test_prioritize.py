"""Priority-vector derivation methods and their published reference values."""

import numpy as np
import pytest

from cop_ahp.prioritize import (
    MethodId,
    ardi,
    em,
    llsm,
    lsdm,
    lsdm_objective_value,
    mem,
    prioritize,
)

from fixtures import CONSISTENT_4, EXCHANGEABLE_4, VIOLATING_4

# Reference weights for EXCHANGEABLE_4 together with the derived ratios
# w1/w3 and w3/w4 that expose the order flip against a_13 < a_34.
REFERENCE_ROWS = {
    MethodId.EM: ((0.5048, 0.3122, 0.1414, 0.0416), 3.5696, 3.3985),
    MethodId.LLSM: ((0.5063, 0.3129, 0.1396, 0.0413), 3.6257, 3.3847),
    MethodId.LSDM: ((0.5048, 0.3123, 0.1413, 0.0416), 3.5718, 3.3983),
    MethodId.MEM: ((0.4849, 0.3276, 0.1476, 0.0399), 3.2863, 3.7004),
    MethodId.ARDI: ((0.5490, 0.2745, 0.1373, 0.0392), 4.0000, 3.5000),
}


@pytest.mark.parametrize("method", list(MethodId), ids=lambda m: m.value)
def test_reference_weights(method):
    w_ref, r13, r34 = REFERENCE_ROWS[method]
    w = prioritize(EXCHANGEABLE_4, method).w
    assert w == pytest.approx(w_ref, abs=1e-3)
    assert w[0] / w[2] == pytest.approx(r13, abs=1e-3)
    assert w[2] / w[3] == pytest.approx(r34, abs=1e-3)


@pytest.mark.parametrize("method", list(MethodId), ids=lambda m: m.value)
def test_consistent_matrix_recovers_generating_weights(method):
    w = prioritize(CONSISTENT_4, method).w
    expected = np.array([8, 4, 2, 1]) / 15.0
    assert w == pytest.approx(expected, abs=1e-6)


@pytest.mark.parametrize("method", list(MethodId), ids=lambda m: m.value)
def test_weights_are_normalized_and_positive(method):
    w = prioritize(VIOLATING_4, method).w
    assert np.all(w > 0)
    assert float(np.sum(w)) == pytest.approx(1.0, abs=1e-9)


def test_em_lambda_max_bounds():
    result = em(EXCHANGEABLE_4)
    assert result.lambda_max >= EXCHANGEABLE_4.n - 1e-12


def test_llsm_is_row_geometric_mean():
    w = llsm(EXCHANGEABLE_4).w
    gm = np.exp(np.log(EXCHANGEABLE_4.a).mean(axis=1))
    assert w == pytest.approx(gm / gm.sum(), abs=1e-12)


def test_mem_minimizes_max_ratio_error():
    w = mem(EXCHANGEABLE_4).w
    ratios = EXCHANGEABLE_4.a * w[None, :] / w[:, None]
    best = float(ratios.max())
    rng = np.random.default_rng(5)
    for _ in range(50):
        v = w * np.exp(rng.normal(scale=0.05, size=4))
        worst = float((EXCHANGEABLE_4.a * v[None, :] / v[:, None]).max())
        assert worst >= best - 1e-9


def test_lsdm_local_optimality():
    w = lsdm(EXCHANGEABLE_4).w
    base = lsdm_objective_value(EXCHANGEABLE_4, w)
    rng = np.random.default_rng(9)
    for _ in range(50):
        v = w * np.exp(rng.normal(scale=0.02, size=4))
        assert lsdm_objective_value(EXCHANGEABLE_4, v / v.sum()) >= base - 1e-9


def test_ardi_objective_dominates_perturbations():
    a = EXCHANGEABLE_4.a
    w = ardi(EXCHANGEABLE_4).w

    def objective(v):
        total = 0.0
        for i in range(4):
            for j in range(i + 1, 4):
                total += abs(a[i, j] * v[j] - v[i]) / max(a[i, j], 1.0)
        return total

    base = objective(w)
    rng = np.random.default_rng(13)
    for _ in range(50):
        v = w * np.exp(rng.normal(scale=0.05, size=4))
        assert objective(v / v.sum()) >= base - 1e-9
