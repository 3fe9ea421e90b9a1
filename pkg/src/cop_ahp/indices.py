"""Scalar inconsistency indices and their acceptance thresholds."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .pcm import Pcm, PriorityVector
from .prioritize import em

RI_TABLE = {3: 0.525, 4: 0.882, 5: 1.115, 6: 1.252, 7: 1.341, 8: 1.404, 9: 1.452}

CR_THRESHOLD = 0.1


class IndexKind(enum.Enum):
    CR = "CR"
    GCI = "GCI"
    MEI = "MEI"
    ILSDM = "ILSDM"


@dataclass(frozen=True)
class IndexValue:
    kind: IndexKind
    value: float
    threshold: float | None = None
    acceptable: bool | None = None

    @classmethod
    def of(cls, kind: IndexKind, value: float, threshold: float | None = None):
        acc = None if threshold is None else (value <= threshold)
        return cls(kind, value, threshold, acc)


def gci_threshold(n: int) -> float:
    if n == 3:
        return 0.31
    if n == 4:
        return 0.35
    return 0.37


def cr(pcm: Pcm) -> IndexValue:
    """Consistency ratio from the principal eigenvalue."""
    n = pcm.n
    lam = em(pcm).lambda_max
    value = (lam - n) / ((n - 1) * RI_TABLE[n])
    return IndexValue.of(IndexKind.CR, max(0.0, value), CR_THRESHOLD)


def gci_at(pcm: Pcm, w) -> float:
    """The GCI deviation sum evaluated at an arbitrary positive vector."""
    n = pcm.n
    y = np.log(np.asarray(w, dtype=float))
    L = np.log(pcm.a)
    s = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            e = L[i, j] - y[i] + y[j]
            s += e * e
    return 2.0 / ((n - 1) * (n - 2)) * s


def gci(pcm: Pcm) -> IndexValue:
    """Geometric consistency index with geometric-mean weights."""
    w = np.exp(np.log(pcm.a).mean(axis=1))
    return IndexValue.of(IndexKind.GCI, gci_at(pcm, w), gci_threshold(pcm.n))


def mei(pcm: Pcm, w: PriorityVector) -> IndexValue:
    """Minimal error index: worst relative error of A against w."""
    wv = w.w
    value = float(np.max(pcm.a * wv[None, :] / wv[:, None] - 1.0))
    return IndexValue.of(IndexKind.MEI, value)


def ilsdm(pcm: Pcm, w: PriorityVector) -> IndexValue:
    """Sum of squared log deviations of row aggregates from n."""
    wv = w.w
    s = pcm.a @ wv / (pcm.n * wv)
    return IndexValue.of(IndexKind.ILSDM, float(np.sum(np.log(s) ** 2)))
