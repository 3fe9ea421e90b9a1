"""Pairwise comparison matrices and ordinal diagnostics.

Everything here is a pure function on immutable inputs: validation,
consistency, transitivity, actual ranking, index-exchangeability, POP
checks, and the violation count used throughout the optimization models.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import (
    NonPositiveEntry,
    NonSquare,
    NotTransitive,
    OrderOutOfRange,
    ReciprocityBroken,
)

# The 17-value judgment scale: 1/9, 1/8, ..., 1/2, 1, 2, ..., 9.
SAATY_SCALE = tuple(
    [Fraction(1, k) for k in range(9, 1, -1)] + [Fraction(k) for k in range(1, 10)]
)
SAATY_SCALE_FLOATS = tuple(float(v) for v in SAATY_SCALE)
# Log-scale vector c = (-log 9, ..., 0, ..., log 9) used by the revision model.
SAATY_LOG_SCALE = tuple(math.log(v) for v in SAATY_SCALE_FLOATS)

ENTRY_EQ_RTOL = 1e-9  # relative tolerance for matrix-entry equality
RATIO_EQ_LOGTOL = 1e-6  # log-space tolerance for weight-ratio equality


def is_saaty_value(x: float, rtol: float = ENTRY_EQ_RTOL) -> bool:
    return any(abs(x - s) <= rtol * s for s in SAATY_SCALE_FLOATS)


def nearest_saaty(x: float) -> float:
    """Round a positive ratio to the scale value nearest in |log| distance.

    Ties go to the smaller scale value.
    """
    if x <= 0:
        raise NonPositiveEntry(f"cannot round non-positive value {x!r}")
    lx = math.log(x)
    best = None
    best_d = None
    for s, ls in zip(SAATY_SCALE_FLOATS, SAATY_LOG_SCALE):
        d = abs(lx - ls)
        if best_d is None or d < best_d - 1e-15:
            best, best_d = s, d
    return best


def _entries_equal(a: float, b: float, rtol: float = ENTRY_EQ_RTOL) -> bool:
    return abs(a - b) <= rtol * max(a, b)


@dataclass(frozen=True)
class Pcm:
    """A validated n-by-n positive reciprocal judgment matrix."""

    a: np.ndarray
    on_scale: bool

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __post_init__(self):
        self.a.setflags(write=False)

    def entry(self, i: int, j: int) -> float:
        return float(self.a[i, j])


def validate_pcm(raw, *, min_n: int = 3, max_n: int = 9) -> Pcm:
    """Validate a raw square matrix and wrap it as a Pcm.

    Raises NonSquare, OrderOutOfRange, NonPositiveEntry, or
    ReciprocityBroken when the input is not a usable judgment matrix.
    """
    a = np.asarray(raw, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n < min_n or n > max_n:
        raise OrderOutOfRange(f"matrix order {n} outside [{min_n}, {max_n}]")
    if not np.all(np.isfinite(a)):
        raise NonPositiveEntry("matrix contains non-finite entries")
    if np.any(a <= 0):
        raise NonPositiveEntry("all entries must be positive")
    prod = a * a.T
    if np.max(np.abs(prod - 1.0)) > 1e-9:
        bad = np.unravel_index(np.argmax(np.abs(prod - 1.0)), prod.shape)
        raise ReciprocityBroken(
            f"a[{bad[0]}][{bad[1]}] * a[{bad[1]}][{bad[0]}] = {prod[bad]:.12g} != 1"
        )
    on_scale = all(
        is_saaty_value(float(a[i, j])) for i in range(n) for j in range(i + 1, n)
    )
    return Pcm(a=a.copy(), on_scale=on_scale)


def pcm_from_upper(n: int, upper: dict | list) -> Pcm:
    """Build a Pcm from upper-triangle entries; reciprocals are exact."""
    a = np.ones((n, n))
    items = upper.items() if isinstance(upper, dict) else [((i, j), v) for i, j, v in upper]
    for (i, j), v in items:
        a[i, j] = v
        a[j, i] = 1.0 / v
    return validate_pcm(a)


@dataclass(frozen=True)
class PriorityVector:
    """A normalized positive weight vector and its zero-sum log form."""

    w: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        if np.any(w <= 0):
            raise NonPositiveEntry("weights must be positive")
        object.__setattr__(self, "w", w / w.sum())
        self.w.setflags(write=False)

    @property
    def y(self) -> np.ndarray:
        logs = np.log(self.w)
        return logs - logs.mean()

    @classmethod
    def from_logs(cls, y) -> "PriorityVector":
        y = np.asarray(y, dtype=float)
        e = np.exp(y - y.max())
        return cls(e / e.sum())


@dataclass(frozen=True)
class RankVector:
    r: tuple

    def __post_init__(self):
        n = len(self.r)
        total = sum(self.r)
        assert abs(total - n * (n + 1) / 2) < 1e-9, "ranks must sum to n(n+1)/2"


@dataclass(frozen=True)
class TransitivityReport:
    transitive: bool
    cycle: tuple | None = None


@dataclass(frozen=True)
class ExchangeabilityReport:
    satisfied: bool
    violations: tuple = ()


@dataclass(frozen=True)
class Witness:
    i: int
    j: int
    k: int
    l: int
    kind: str  # strict-reversed | strict-tied | equal-broken


@dataclass(frozen=True)
class ViolationReport:
    twice_nv: int
    witnesses: tuple = ()

    @property
    def nv(self) -> float:
        return self.twice_nv / 2.0

    def __post_init__(self):
        units = {"strict-reversed": 2, "strict-tied": 1, "equal-broken": 1}
        assert self.twice_nv == sum(units[w.kind] for w in self.witnesses)


def is_consistent(pcm: Pcm, tol: float = 1e-9) -> bool:
    """True iff a_ij = a_ik * a_kj for all triples, to relative tolerance."""
    a = pcm.a
    n = pcm.n
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if abs(a[i, j] - a[i, k] * a[k, j]) > tol * a[i, j]:
                    return False
    return True


def is_transitive(pcm: Pcm) -> TransitivityReport:
    """Check ordinal consistency over all ordered triples.

    The three conditions are evaluated for every ordered triple (i, k, j)
    of distinct indices, using reciprocity to cover both orientations.
    """
    a = pcm.a
    n = pcm.n

    def gt(x):
        return x > 1.0 + ENTRY_EQ_RTOL

    def ge(x):
        return x > 1.0 - ENTRY_EQ_RTOL

    def eq(x):
        return abs(x - 1.0) <= ENTRY_EQ_RTOL

    for i in range(n):
        for k in range(n):
            for j in range(n):
                if len({i, j, k}) < 3:
                    continue
                aik, akj, aij = a[i, k], a[k, j], a[i, j]
                if ge(aik) and gt(akj) and not gt(aij):
                    return TransitivityReport(False, (i, k, j))
                if gt(aik) and ge(akj) and not gt(aij):
                    return TransitivityReport(False, (i, k, j))
                if eq(aik) and eq(akj) and not eq(aij):
                    return TransitivityReport(False, (i, k, j))
    return TransitivityReport(True)


def actual_ranking(pcm: Pcm) -> RankVector:
    """Rank alternatives by dominance counts; defined only for transitive input."""
    rep = is_transitive(pcm)
    if not rep.transitive:
        raise NotTransitive(f"ranking undefined; preference cycle {rep.cycle}")
    a = pcm.a
    n = pcm.n
    ranks = []
    for i in range(n):
        wins = sum(
            1 for j in range(n) if j != i and a[i, j] > 1.0 + ENTRY_EQ_RTOL
        )
        ties = sum(
            1 for j in range(n) if j != i and abs(a[i, j] - 1.0) <= ENTRY_EQ_RTOL
        )
        ranks.append(n - wins - 0.5 * ties)
    return RankVector(tuple(ranks))


def upper_pairs(n: int) -> list:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def _judgment_relation(a: np.ndarray, p: tuple, q: tuple) -> int:
    """Sign of a_p - a_q with the standard entry tolerance."""
    x, y = a[p], a[q]
    if _entries_equal(x, y):
        return 0
    return 1 if x > y else -1


def _poip_realizable(pcm: Pcm):
    """Decide whether some weight vector preserves every judgment order.

    A vector w preserves the order of intensity of preference iff the log
    weights y realize, for every two upper-triangle positions (i,j) and
    (k,l), the same strict/tied relation between (y_i - y_j) and
    (y_k - y_l) that holds between a_ij and a_kl.  That is a pure LP
    feasibility question; on infeasibility the certificate rows name a
    conflicting set of quadruples.
    """
    from .optim.simplex import LpProblem, solve_lp

    a = pcm.a
    n = pcm.n
    pairs = upper_pairs(n)
    prob = LpProblem.build(n)
    quads = []
    for pi in range(len(pairs)):
        for qi in range(pi + 1, len(pairs)):
            (i, j), (k, l) = pairs[pi], pairs[qi]
            row = np.zeros(n)
            row[i] += 1.0
            row[j] -= 1.0
            row[k] -= 1.0
            row[l] += 1.0
            rel = _judgment_relation(a, (i, j), (k, l))
            quads.append((i, j, k, l, 1 if rel else 2))
            if rel == 1:
                prob.add_constraint(row, ">=", 1.0)
            elif rel == -1:
                prob.add_constraint(row, "<=", -1.0)
            else:
                prob.add_constraint(row, "=", 0.0)
    prob.add_constraint(np.ones(n), "=", 0.0)
    sol = solve_lp(prob)
    if sol.status == "optimal":
        return True, ()
    conflict = tuple(quads[r] for r in sol.farkas_rows if r < len(quads))
    return False, (conflict or tuple(quads))


def check_index_exchangeability(pcm: Pcm) -> ExchangeabilityReport:
    """Check a_ij > a_kl <=> a_ik > a_jl (and the equality analogue).

    The exchanged form is scanned over index quadruples with
    i < j, k < l, i < k and j < l, so that both the original pairs
    (i,j), (k,l) and the exchanged pairs (i,k), (j,l) are ordered the
    same way; each such quadruple yields a witness when condition (1)
    (strict order) or condition (2) (equality analogue) fails.

    The satisfied flag itself is decided by what the condition
    characterizes: the existence of a priority vector preserving the
    order of intensity of preference.  Tie chains can make the order
    pattern unrealizable without any single scanned quadruple failing,
    in which case the violations are taken from the infeasibility
    certificate instead.
    """
    a = pcm.a
    pairs = upper_pairs(pcm.n)
    violations = []
    for (i, j) in pairs:
        for (k, l) in pairs:
            if k <= i or l <= j:
                continue
            left_gt = a[i, j] > a[k, l] * (1 + ENTRY_EQ_RTOL)
            left_eq = _entries_equal(a[i, j], a[k, l])
            right_gt = a[i, k] > a[j, l] * (1 + ENTRY_EQ_RTOL)
            right_eq = _entries_equal(a[i, k], a[j, l])
            if left_gt != right_gt:
                violations.append((i, j, k, l, 1))
            if left_eq != right_eq:
                violations.append((i, j, k, l, 2))
    realizable, certificate = _poip_realizable(pcm)
    if realizable:
        return ExchangeabilityReport(True, ())
    return ExchangeabilityReport(False, tuple(violations) or certificate)


def check_pop(pcm: Pcm, w: PriorityVector) -> list:
    """All upper-triangle pairs where the weight order breaks the judgment order."""
    a = pcm.a
    wv = w.w
    out = []
    for (i, j) in upper_pairs(pcm.n):
        a_gt = a[i, j] > 1.0 + ENTRY_EQ_RTOL
        a_lt = a[i, j] < 1.0 - ENTRY_EQ_RTOL
        a_eq = not a_gt and not a_lt
        w_eq = abs(wv[i] - wv[j]) <= 1e-9 * max(wv[i], wv[j])
        w_gt = not w_eq and wv[i] > wv[j]
        if a_gt and not w_gt:
            out.append((i, j))
        elif a_lt and (w_gt or w_eq):
            out.append((i, j))
        elif a_eq and not w_eq:
            out.append((i, j))
    return out


def count_violations(
    pcm: Pcm, w: PriorityVector, tol: float = RATIO_EQ_LOGTOL
) -> ViolationReport:
    """Count POIP violations of w against the judgments.

    Sums the case-by-case kernel over all ordered combinations of
    upper-triangle pairs (including a pair against itself, which always
    contributes zero). A quadruple with tied judgments but distinct
    weight ratios fires in both orientations, once each.
    """
    a = pcm.a
    y = w.y
    pairs = upper_pairs(pcm.n)
    twice = 0
    witnesses = []
    for (i, j) in pairs:
        for (k, l) in pairs:
            d = (y[i] - y[j]) - (y[k] - y[l])
            ratios_eq = abs(d) <= tol
            if a[i, j] > a[k, l] * (1 + ENTRY_EQ_RTOL):
                if ratios_eq:
                    twice += 1
                    witnesses.append(Witness(i, j, k, l, "strict-tied"))
                elif d < 0:
                    twice += 2
                    witnesses.append(Witness(i, j, k, l, "strict-reversed"))
            elif _entries_equal(a[i, j], a[k, l]) and not ratios_eq:
                twice += 1
                witnesses.append(Witness(i, j, k, l, "equal-broken"))
    return ViolationReport(twice_nv=twice, witnesses=tuple(witnesses))


def nv_closed_form(pcm: Pcm, w: PriorityVector, tol: float = RATIO_EQ_LOGTOL) -> int:
    """Independent evaluation of NV via the indicator-product identity.

    Returns 2*NV as an integer; used as a cross-check against
    count_violations.
    """
    a = pcm.a
    y = w.y
    pairs = upper_pairs(pcm.n)
    total = 0.0
    for (i, j) in pairs:
        for (k, l) in pairs:
            la = 1 if a[i, j] > a[k, l] * (1 + ENTRY_EQ_RTOL) else 0
            ea = 1 if _entries_equal(a[i, j], a[k, l]) else 0
            d = (y[i] - y[j]) - (y[k] - y[l])
            ew = 1 if abs(d) <= tol else 0
            lw = 1 if (not ew and d > 0) else 0
            total += la * (1 - lw - 0.5 * ew) + 0.5 * ea * (1 - ew)
    twice = int(round(2 * total))
    assert abs(2 * total - twice) < 1e-9
    return twice
