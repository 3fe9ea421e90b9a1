"""Shared fixture matrices used across the test suite.

All matrices are given by their upper triangles (row-major); the lower
triangle is completed by exact reciprocity.
"""

from __future__ import annotations

from cop_ahp.pcm import Pcm, pcm_from_upper, upper_pairs


def build(n: int, values: list) -> Pcm:
    """Build a Pcm from row-major upper-triangle values."""
    pairs = upper_pairs(n)
    if len(values) != len(pairs):
        raise ValueError(f"expected {len(pairs)} values, got {len(values)}")
    return pcm_from_upper(n, [(i, j, v) for (i, j), v in zip(pairs, values)])


# n=4, nearly consistent but with off-scale entries; transitive, ranking 1..4.
NEAR_CONSISTENT_4 = build(4, [4.35, 6, 8.05, 4, 6, 3.48])

# n=5, monotone "ladder" of strict judgments; index-exchangeable.
LADDER_5 = build(5, [6, 7, 8, 9, 6, 7, 8, 6, 7, 6])

# n=4, acceptable CR and exchangeable, yet EM/LLSM/LSDM/ARDI all violate the
# order conditions on it (w1/w3 > w3/w4 while a_13 < a_34).
EXCHANGEABLE_4 = build(4, [2, 4, 9, 3, 7, 5])

# n=4, transitive but NOT index-exchangeable: a_13=7 < a_24=8 while
# a_12=6 > a_34=5.
VIOLATING_4 = build(4, [6, 7, 9, 6, 8, 5])

# A compliant repair of VIOLATING_4 (two entries changed, GCI <= 0.35).
VIOLATING_4_REPAIRED = build(4, [4, 7, 9, 3, 8, 5])

# n=8, intransitive (preference cycle through alternatives 1, 3, 7) and far
# from exchangeable; the hard revision instance.
CYCLIC_8 = build(8, [
    5, 3, 7, 6, 6, 1 / 3, 1 / 4,
    1 / 3, 5, 3, 3, 1 / 5, 1 / 7,
    6, 3, 4, 6, 1 / 5,
    1 / 3, 1 / 4, 1 / 7, 1 / 8,
    1 / 2, 1 / 5, 1 / 6,
    1 / 5, 1 / 6,
    1 / 2,
])

# A compliant repair of CYCLIC_8 (13 entries changed, GCI <= 0.37); also the
# matrix on which the violation-free prioritization trade-off is measured.
CYCLIC_8_REPAIRED = build(8, [
    5, 3, 7, 6, 4, 1 / 3, 1 / 4,
    1 / 3, 4, 3, 1 / 2, 1 / 6, 1 / 7,
    6, 5, 3, 1 / 4, 1 / 5,
    1 / 2, 1 / 4, 1 / 8, 1 / 9,
    1 / 3, 1 / 7, 1 / 8,
    1 / 5, 1 / 6,
    1 / 2,
])

IDENTITY_4 = build(4, [1, 1, 1, 1, 1, 1])

# A perfectly consistent matrix generated by w = (8, 4, 2, 1).
CONSISTENT_4 = build(4, [2, 4, 8, 2, 4, 2])
