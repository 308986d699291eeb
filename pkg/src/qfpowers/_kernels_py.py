"""Pure-Python fallback for the enumeration kernels in ``_kernels.pyx``."""
from __future__ import annotations

from functools import reduce
from itertools import combinations, combinations_with_replacement
from operator import xor


def _count(groups, size: int) -> list[int]:
    counts = [0] * size
    for combo in groups:
        counts[reduce(xor, combo, 0)] += 1
    return counts


def count_subset_xors(masks, k: int, nbits: int) -> list[int]:
    size = 1 << nbits
    if k < 0 or k > len(masks):
        return [0] * size
    return _count(combinations(masks, k), size)


def count_multiset_xors(masks, k: int, nbits: int) -> list[int]:
    size = 1 << nbits
    if k < 0:
        return [0] * size
    return _count(combinations_with_replacement(masks, k), size)
