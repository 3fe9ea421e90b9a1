"""Core matrix type: validation, scale, transitivity, order conditions."""

import itertools

import numpy as np
import pytest

from cop_ahp.errors import (
    NonPositiveEntry,
    NonSquare,
    NotTransitive,
    OrderOutOfRange,
    ReciprocityBroken,
)
from cop_ahp.pcm import (
    SAATY_SCALE_FLOATS,
    actual_ranking,
    check_index_exchangeability,
    count_violations,
    is_consistent,
    is_saaty_value,
    is_transitive,
    nearest_saaty,
    nv_closed_form,
    pcm_from_upper,
    upper_pairs,
    validate_pcm,
)
from cop_ahp.prioritize import MethodId, prioritize

from fixtures import (
    CONSISTENT_4,
    CYCLIC_8,
    EXCHANGEABLE_4,
    IDENTITY_4,
    VIOLATING_4,
    build,
)


class TestValidation:
    def test_rejects_non_square(self):
        with pytest.raises(NonSquare):
            validate_pcm(np.ones((3, 4)))

    def test_rejects_out_of_range_order(self):
        with pytest.raises(OrderOutOfRange):
            validate_pcm(np.ones((2, 2)))
        with pytest.raises(OrderOutOfRange):
            validate_pcm(np.ones((10, 10)))

    def test_rejects_non_positive_entries(self):
        a = np.ones((3, 3))
        a[0, 1] = -2.0
        with pytest.raises(NonPositiveEntry):
            validate_pcm(a)

    def test_rejects_broken_reciprocity(self):
        a = np.ones((3, 3))
        a[0, 1], a[1, 0] = 2.0, 3.0
        with pytest.raises(ReciprocityBroken):
            validate_pcm(a)

    def test_accepts_valid_matrix(self):
        pcm = validate_pcm(np.array([[1, 2, 4], [0.5, 1, 2], [0.25, 0.5, 1]]))
        assert pcm.n == 3
        assert pcm.on_scale


class TestScale:
    def test_scale_has_17_values_ascending(self):
        assert len(SAATY_SCALE_FLOATS) == 17
        assert list(SAATY_SCALE_FLOATS) == sorted(SAATY_SCALE_FLOATS)
        assert SAATY_SCALE_FLOATS[0] == pytest.approx(1 / 9)
        assert SAATY_SCALE_FLOATS[8] == 1.0
        assert SAATY_SCALE_FLOATS[-1] == 9.0

    def test_scale_membership(self):
        assert is_saaty_value(1 / 7)
        assert is_saaty_value(5.0)
        assert not is_saaty_value(4.35)

    def test_nearest_is_identity_on_scale(self):
        for v in SAATY_SCALE_FLOATS:
            assert nearest_saaty(v) == v

    def test_nearest_ties_resolve_to_smaller(self):
        # sqrt(12) is log-equidistant from 3 and 4.
        tie = float(np.sqrt(12.0))
        assert nearest_saaty(tie) == 3.0
        assert nearest_saaty(1.0 / tie) == pytest.approx(1 / 4)

    def test_nearest_rounds_in_log_domain(self):
        assert nearest_saaty(4.35) == 4.0
        assert nearest_saaty(8.05) == 8.0
        assert nearest_saaty(0.23) == pytest.approx(1 / 4)

    def test_off_scale_matrix_flagged(self):
        assert not build(4, [4.35, 6, 8.05, 4, 6, 3.48]).on_scale
        assert EXCHANGEABLE_4.on_scale


class TestTransitivity:
    def test_identity_is_transitive(self):
        assert is_transitive(IDENTITY_4).transitive

    def test_consistent_matrix_is_transitive(self):
        assert is_consistent(CONSISTENT_4)
        assert is_transitive(CONSISTENT_4).transitive

    def test_cycle_detected(self):
        report = is_transitive(CYCLIC_8)
        assert not report.transitive
        assert set(report.cycle) == {0, 2, 6}
        a = CYCLIC_8.a
        i, k, j = report.cycle
        assert a[i, k] >= 1.0 and a[k, j] > 1.0 and not a[i, j] > 1.0

    def test_actual_ranking_of_transitive_matrix(self):
        assert actual_ranking(EXCHANGEABLE_4).r == (1.0, 2.0, 3.0, 4.0)

    def test_actual_ranking_with_ties(self):
        pcm = build(3, [1, 3, 3])
        assert actual_ranking(pcm).r == (1.5, 1.5, 3.0)

    def test_actual_ranking_rejects_cycles(self):
        with pytest.raises(NotTransitive):
            actual_ranking(CYCLIC_8)


class TestIndexExchangeability:
    def test_satisfied_matrix_has_no_witnesses(self):
        report = check_index_exchangeability(EXCHANGEABLE_4)
        assert report.satisfied
        assert report.violations == ()

    def test_all_crossed_comparisons_hold_when_satisfied(self):
        # The full pairwise scan over the C(6,2)=15 pairs of upper
        # positions must agree with the crossed entries.
        a = EXCHANGEABLE_4.a
        pairs = upper_pairs(4)
        for (i, j), (k, l) in itertools.combinations(pairs, 2):
            lhs = np.sign(a[i, j] - a[k, l])
            rhs = np.sign(a[i, k] - a[j, l])
            assert lhs == rhs, ((i, j), (k, l))

    def test_violating_matrix_reports_witness(self):
        report = check_index_exchangeability(VIOLATING_4)
        assert not report.satisfied
        witnesses = {(i, j, k, l) for (i, j, k, l, *_r) in report.violations}
        # 1-based {(1,3),(2,4)} and {(1,2),(3,4)}: a_13 < a_24 but a_12 > a_34.
        assert (0, 2, 1, 3) in witnesses

    def test_consistent_matrix_is_exchangeable(self):
        assert check_index_exchangeability(CONSISTENT_4).satisfied

    def test_permutation_equivariance(self):
        rng = np.random.default_rng(7)
        scale = np.array(SAATY_SCALE_FLOATS)
        for _ in range(25):
            n = int(rng.integers(3, 6))
            vals = rng.choice(scale, size=n * (n - 1) // 2)
            pcm = build(n, list(vals))
            perm = rng.permutation(n)
            permuted = validate_pcm(pcm.a[np.ix_(perm, perm)])
            assert (
                check_index_exchangeability(pcm).satisfied
                == check_index_exchangeability(permuted).satisfied
            )


class TestCountViolations:
    def test_consistent_matrix_zero_violations(self):
        w = prioritize(CONSISTENT_4, MethodId.LLSM)
        assert count_violations(CONSISTENT_4, w).twice_nv == 0

    def test_violations_found_for_mismatched_vector(self):
        # EM weights on EXCHANGEABLE_4 order w1/w3 above w3/w4 although the
        # judgments order a_13 below a_34.
        w = prioritize(EXCHANGEABLE_4, MethodId.EM)
        report = count_violations(EXCHANGEABLE_4, w)
        assert report.twice_nv > 0

    def test_witnesses_account_for_count(self):
        w = prioritize(VIOLATING_4, MethodId.LLSM)
        report = count_violations(VIOLATING_4, w)
        # The dataclass invariant recomputes twice_nv from witness kinds.
        assert report.twice_nv >= 2
        assert len(report.witnesses) >= 1

    def test_agrees_with_closed_form(self):
        rng = np.random.default_rng(11)
        scale = np.array(SAATY_SCALE_FLOATS)
        for _ in range(25):
            n = int(rng.integers(3, 7))
            vals = rng.choice(scale, size=n * (n - 1) // 2)
            pcm = build(n, list(vals))
            w = prioritize(pcm, MethodId.LLSM)
            assert count_violations(pcm, w).twice_nv == nv_closed_form(pcm, w)


def test_pcm_from_upper_reciprocity_is_exact():
    pcm = pcm_from_upper(3, [(0, 1, 7.0), (0, 2, 3.0), (1, 2, 1 / 5)])
    assert pcm.a[1, 0] * pcm.a[0, 1] == 1.0
    assert pcm.a[2, 1] == 5.0
