"""Shared report payload builders for the CLI and the HTTP service."""

from __future__ import annotations

from ..indices import cr, gci, gci_threshold
from ..mnvdm import mnvdm
from ..pcm import (
    Pcm,
    actual_ranking,
    check_index_exchangeability,
    count_violations,
    is_transitive,
)
from ..prioritize import MethodId, prioritize


def analysis_payload(pcm: Pcm, labels=None) -> dict:
    transitivity = is_transitive(pcm)
    exchangeability = check_index_exchangeability(pcm)
    payload = {
        "n": pcm.n,
        "on_scale": pcm.on_scale,
        "cr": cr(pcm).value,
        "gci": gci(pcm).value,
        "gci_threshold": gci_threshold(pcm.n),
        "transitive": transitivity.transitive,
        "cycle": list(transitivity.cycle) if transitivity.cycle else None,
        "index_exchangeable": exchangeability.satisfied,
        "witnesses": [
            [i + 1, j + 1, k + 1, l + 1]
            for (i, j, k, l, *_rest) in exchangeability.violations
        ],
    }
    if transitivity.transitive:
        payload["actual_ranking"] = list(actual_ranking(pcm).r)
    else:
        payload["actual_ranking"] = None
    if labels is not None:
        payload["labels"] = list(labels)
    return payload


def prioritize_payload(
    pcm: Pcm, method: MethodId, mnv: bool, time_limit: float = 60.0
) -> dict:
    if mnv:
        result = mnvdm(pcm, method, time_limit=time_limit)
        w = result.w
        payload = {
            "method": f"MNV{method.value}",
            "w": [float(v) for v in w.w],
            "nv": result.nv,
            "deviation": result.deviation,
            "optimal": result.optimal,
        }
    else:
        w = prioritize(pcm, method)
        payload = {
            "method": method.value,
            "w": [float(v) for v in w.w],
            "nv": count_violations(pcm, w).twice_nv / 2.0,
        }
    return payload


def revision_payload(result) -> dict:
    return {
        "status": result.status,
        "npr": result.npr,
        "aoc": result.aoc,
        "j": result.j_value,
        "changes": [
            {"i": i + 1, "j": j + 1, "old": old, "new": new}
            for (i, j, old, new) in result.changes
        ],
        "w": [float(v) for v in result.w.w],
        "revised_upper": [
            [i + 1, j + 1, float(result.revised.a[i, j])]
            for i in range(result.revised.n)
            for j in range(i + 1, result.revised.n)
        ],
    }
