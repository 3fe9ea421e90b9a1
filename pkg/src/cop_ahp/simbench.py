"""Monte Carlo PCM generation and the desk-scale experiment harness."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field

import numpy as np

from .errors import TimeLimitReached
from .indices import cr, gci_threshold
from .mnvdm import mnvdm
from .pcm import Pcm, count_violations, nearest_saaty, validate_pcm
from .prioritize import MethodId, prioritize
from .revise import RevisionConstraints, revise

#: Methods accepted by run_nv_experiment; "MNVDM" runs the two-stage model.
NV_METHODS = ("EM", "LLSM", "LSDM", "MEM", "ARDI", "MNVDM")


@dataclass(frozen=True)
class GenConfig:
    n: int
    weight_range: tuple = (1.0, 9.0)
    perturbation_range: tuple = (1.0, 1.2)
    count: int = 200
    seed: int = 0
    cr_filter: tuple | None = None

    def __post_init__(self):
        if self.n < 3 or self.n > 9:
            raise ValueError(f"order {self.n} outside supported range 3..9")
        if self.count < 1:
            raise ValueError("count must be at least 1")
        for lo, hi in (self.weight_range, self.perturbation_range):
            if lo <= 0 or hi < lo:
                raise ValueError("ranges must be positive and ordered")


@dataclass(frozen=True)
class ExperimentRow:
    n: int
    method: str
    mean_nv: float
    mean_time: float
    count: int
    skipped: int = 0


@dataclass(frozen=True)
class RevisionSummary:
    n: int
    mean_npr: float
    mean_aoc: float
    mean_nv: float
    count: int
    skipped: int = 0
    widened: bool = False


def _rng(cfg: GenConfig, index: int) -> np.random.Generator:
    # Stream splitting: one independent child stream per (seed, index).
    return np.random.default_rng([cfg.seed, index])


def generate_pcm(cfg: GenConfig, index: int) -> Pcm:
    """Draw one perturbed-consistent matrix, rounded onto the scale.

    Weights are uniform on the weight range; the consistent ratio matrix
    has every entry at least one multiplied by an independent uniform
    factor from the perturbation range; upper-triangle entries are rounded
    to the nearest scale value in log distance and the lower triangle is
    completed by reciprocity. Deterministic given (seed, index).
    """
    rng = _rng(cfg, index)
    n = cfg.n
    w = rng.uniform(cfg.weight_range[0], cfg.weight_range[1], n)
    a = w[:, None] / w[None, :]
    delta = rng.uniform(
        cfg.perturbation_range[0], cfg.perturbation_range[1], (n, n)
    )
    b = a.copy()
    for i in range(n):
        for j in range(n):
            if i != j and a[i, j] >= 1.0:
                b[i, j] = a[i, j] * delta[i, j]
                b[j, i] = 1.0 / b[i, j]
    m = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = nearest_saaty(b[i, j])
            m[j, i] = 1.0 / m[i, j]
    return validate_pcm(m)


def _passes_filter(pcm: Pcm, cr_filter) -> bool:
    if cr_filter is None:
        return True
    lo, hi = cr_filter
    value = cr(pcm).value
    return lo < value <= hi


def generate_batch(cfg: GenConfig, max_draws_per_matrix: int = 2000):
    """Yield cfg.count matrices honoring the CR acceptance band.

    Rejection-samples over sequential indices; when the band accepts too
    rarely under the configured perturbation range, the range is widened
    to [1, 1.5] and sampling restarts. Returns (matrices, widened).
    """
    out = []
    widened = False
    active = cfg
    index = 0
    misses = 0
    while len(out) < cfg.count:
        pcm = generate_pcm(active, index)
        index += 1
        if _passes_filter(pcm, cfg.cr_filter):
            out.append(pcm)
            misses = 0
            continue
        misses += 1
        if not widened and misses >= max_draws_per_matrix:
            widened = True
            active = GenConfig(
                n=cfg.n,
                weight_range=cfg.weight_range,
                perturbation_range=(1.0, 1.5),
                count=cfg.count,
                seed=cfg.seed,
                cr_filter=cfg.cr_filter,
            )
            out = []
            index = 0
            misses = 0
        elif widened and misses >= max_draws_per_matrix * 10:
            raise TimeLimitReached(
                "CR acceptance band too narrow for the generator"
            )
    return out, widened


def _nv_of(pcm: Pcm, method: str, time_limit: float):
    t0 = time.monotonic()
    if method == "MNVDM":
        result = mnvdm(pcm, MethodId.MEM, time_limit=time_limit)
        return result.nv, time.monotonic() - t0
    w = prioritize(pcm, MethodId[method])
    return count_violations(pcm, w).twice_nv / 2.0, time.monotonic() - t0


def run_nv_experiment(
    cfg: GenConfig, methods: list, time_limit: float = 60.0
) -> list:
    """Mean NV (and wall time) per method over one generated batch."""
    bad = [m for m in methods if m not in NV_METHODS]
    if bad:
        raise ValueError(f"unknown methods: {bad}")
    matrices, _ = generate_batch(cfg)
    rows = []
    for method in methods:
        total_nv = 0.0
        total_time = 0.0
        done = 0
        skipped = 0
        for pcm in matrices:
            try:
                nv, elapsed = _nv_of(pcm, method, time_limit)
            except TimeLimitReached:
                skipped += 1
                continue
            total_nv += nv
            total_time += elapsed
            done += 1
        rows.append(
            ExperimentRow(
                n=cfg.n,
                method=method,
                mean_nv=total_nv / done if done else float("nan"),
                mean_time=total_time / done if done else float("nan"),
                count=done,
                skipped=skipped,
            )
        )
    return rows


def run_revision_experiment(
    cfg: GenConfig, time_limit: float = 60.0, alpha: float = 1000.0
) -> RevisionSummary:
    """Revise each generated matrix and report mean NPR / AOC / residual NV."""
    matrices, widened = generate_batch(cfg)
    gci_bar = gci_threshold(cfg.n)
    total_npr = total_aoc = total_nv = 0.0
    done = 0
    skipped = 0
    for pcm in matrices:
        try:
            result = revise(
                pcm,
                RevisionConstraints(
                    gci_bar=gci_bar, alpha=alpha, time_limit=time_limit
                ),
            )
        except TimeLimitReached:
            skipped += 1
            continue
        total_npr += result.npr
        total_aoc += result.aoc
        total_nv += count_violations(result.revised, result.w).twice_nv / 2.0
        done += 1
    return RevisionSummary(
        n=cfg.n,
        mean_npr=total_npr / done if done else float("nan"),
        mean_aoc=total_aoc / done if done else float("nan"),
        mean_nv=total_nv / done if done else float("nan"),
        count=done,
        skipped=skipped,
        widened=widened,
    )


def rows_to_csv(rows, seed: int) -> str:
    """Render experiment rows as the CSV table consumed by the facade."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["n", "method", "mean_nv", "mean_time_s", "count", "seed"])
    for row in rows:
        writer.writerow(
            [row.n, row.method, f"{row.mean_nv:.6g}",
             f"{row.mean_time:.6g}", row.count, seed]
        )
    return buf.getvalue()
