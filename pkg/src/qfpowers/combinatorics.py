"""Exact binomial coefficients and checks of the summation identities the
closed forms rely on.  Every left-hand side is a direct sum; every right-hand
side is the closed form.
"""
from __future__ import annotations

import math
from typing import NamedTuple

__all__ = [
    "binomial",
    "minus_transform",
    "IdentityCheck",
    "check_vandermonde_l2",
    "check_pascal",
    "check_absorb_r1",
    "gen_vandermonde",
]


class IdentityCheck(NamedTuple):
    lhs: int
    rhs: int
    equal: bool


def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0, zero outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("use minus_transform for negative upper index")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def minus_transform(q: int, i: int) -> int:
    """C(-q, i) = (-1)^i C(q+i-1, i)."""
    if q < 0 or i < 0:
        raise ValueError("minus_transform needs q, i >= 0")
    if i == 0:
        return 1
    return (-1) ** i * binomial(q + i - 1, i)


def _binom_any(top: int, k: int) -> int:
    # C(top, k) for any integer top via the falling factorial; k >= 0.
    if top >= 0:
        return binomial(top, k)
    num = 1
    for t in range(k):
        num *= top - t
    return num // math.factorial(k)


def check_vandermonde_l2(p: int, r: int) -> IdentityCheck:
    lhs = sum(
        (-1) ** j * _binom_any(2 * p + j - 1, j) * binomial(p, r - j)
        for j in range(r + 1)
    )
    rhs = (-1) ** r * _binom_any(p + r - 1, r)
    return IdentityCheck(lhs, rhs, lhs == rhs)


def check_pascal(r: int, s: int) -> bool:
    if r < 1 or not 1 <= s <= r:
        raise ValueError(f"Pascal's rule needs 1 <= s <= r, got r={r}, s={s}")
    return binomial(r - 1, s) + binomial(r - 1, s - 1) == binomial(r, s)


def check_absorb_r1(r: int, s: int) -> bool:
    """s * C(r, s) == r * C(r-1, s-1), the absorption identity with denominators cleared."""
    if r < 1 or s < 1:
        raise ValueError("absorption needs r, s >= 1")
    return s * binomial(r, s) == r * binomial(r - 1, s - 1)


def gen_vandermonde(p: int, q: int, r: int) -> IdentityCheck:
    """sum_j C(p+j-1, j) C(q+r-j, r-j) against C(p+q+r, r)."""
    lhs = 0
    for j in range(r + 1):
        lhs += _binom_any(p + j - 1, j) * binomial(q + r - j, r - j)
    rhs = binomial(p + q + r, r)
    return IdentityCheck(lhs, rhs, lhs == rhs)
