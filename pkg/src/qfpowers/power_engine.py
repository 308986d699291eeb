"""Exterior and symmetric powers of diagonal forms.

Two independent routes:

* class-grouped convolution (default).  Each distinct class ``c`` with
  multiplicity ``m`` contributes ``C(m, i) x <c^i>`` to the i-th exterior
  power and ``C(m+i-1, i) x <c^i>`` to the i-th symmetric power; groups are
  combined by ``P^k(A + B) = sum_{i+j=k} P^i A (x) P^j B``.  Cost depends on
  the number of distinct classes and on ``k``, never on multiplicities.
* naive enumeration over index subsets / multisets of the expanded entry
  list.  Only a test oracle; bounded by an enumeration cap.
"""
from __future__ import annotations

import os
from typing import Callable

from . import kernels
from .combinatorics import binomial
from .forms import UNIT, ZERO, DiagonalForm, perp, tensor
from .squareclass import ONE, SquareClass

__all__ = [
    "lambda_power",
    "sym_power",
    "sym_power_via_s3",
    "s3_terms",
    "naive_lambda",
    "naive_sym",
    "EnumerationTooLarge",
    "DEFAULT_ENUM_CAP",
    "enum_cap",
]

DEFAULT_ENUM_CAP = 10**7


class EnumerationTooLarge(ValueError):
    pass


def enum_cap() -> int:
    raw = os.environ.get("QF_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


def _convolve(phi: DiagonalForm, k: int, coeff: Callable[[int, int], int]) -> DiagonalForm:
    atoms = sorted({a for cls in phi for a in cls.atoms})
    bit = {a: 1 << i for i, a in enumerate(atoms)}
    # series[d] is the degree-d part of the running product, keyed by bitmask
    series: list[dict[int, int]] = [{0: 1}] + [{} for _ in range(k)]
    for cls, mult in phi.items():
        mask = sum(bit[a] for a in cls.atoms)
        group = [(coeff(mult, i), mask if i % 2 else 0) for i in range(k + 1)]
        new: list[dict[int, int]] = [{} for _ in range(k + 1)]
        for d in range(k + 1):
            acc = new[d]
            for i in range(d + 1):
                g, gmask = group[i]
                if not g:
                    continue
                for c, m in series[d - i].items():
                    key = c ^ gmask
                    acc[key] = acc.get(key, 0) + g * m
        series = new
    return _decode(atoms, series[k].items())


def lambda_power(phi: DiagonalForm, k: int) -> DiagonalForm:
    """k-th exterior power; zero form for k < 0 or k > dim."""
    if k < 0 or k > phi.dim:
        return ZERO
    if k == 0:
        return UNIT
    return _convolve(phi, k, binomial)


def sym_power(phi: DiagonalForm, k: int) -> DiagonalForm:
    """k-th (non-factorial) symmetric power."""
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        return UNIT
    if phi.is_zero:
        return ZERO
    return _convolve(phi, k, lambda m, i: binomial(m + i - 1, i) if i else 1)


def s3_terms(phi: DiagonalForm, k: int) -> list[tuple[int, int, DiagonalForm]]:
    """Terms ``(i, C(n+i-1, i), L^{k-2i} phi)`` for i = 0..ceil(k/2)."""
    if k < 0:
        raise ValueError("negative power")
    n = phi.dim
    terms = []
    for i in range((k + 1) // 2 + 1):
        coeff = 1 if i == 0 else binomial(n + i - 1, i)
        terms.append((i, coeff, lambda_power(phi, k - 2 * i)))
    return terms


def sym_power_via_s3(phi: DiagonalForm, k: int) -> DiagonalForm:
    """Symmetric power assembled from exterior powers."""
    out = ZERO
    for _, coeff, ext in s3_terms(phi, k):
        out = perp(out, ext.times(coeff))
    return out


def _encode(phi: DiagonalForm):
    atoms = sorted({a for cls in phi for a in cls.atoms})
    bit = {a: 1 << i for i, a in enumerate(atoms)}
    masks = []
    for cls in phi.classes():
        mask = 0
        for a in cls.atoms:
            mask |= bit[a]
        masks.append(mask)
    return atoms, masks


def _decode(atoms, counts) -> DiagonalForm:
    """``counts``: a list indexed by mask, or (mask, count) pairs."""
    items = enumerate(counts) if isinstance(counts, list) else counts
    out = {}
    for mask, count in items:
        if count:
            out[SquareClass(tuple(a for i, a in enumerate(atoms) if mask >> i & 1))] = count
    return DiagonalForm(out)


def _check_cap(size: int, cap: int | None) -> None:
    cap = enum_cap() if cap is None else cap
    if size > cap:
        raise EnumerationTooLarge("enumeration too large; use convolution route")


def naive_lambda(phi: DiagonalForm, k: int, cap: int | None = None) -> DiagonalForm:
    """Exterior power by listing every k-subset of diagonal entries."""
    if k < 0 or k > phi.dim:
        return ZERO
    _check_cap(binomial(phi.dim, k), cap)
    atoms, masks = _encode(phi)
    if len(atoms) > kernels.MAX_BITS:
        raise EnumerationTooLarge("too many atoms for the enumeration kernel")
    return _decode(atoms, kernels.count_subset_xors(masks, k, len(atoms)))


def naive_sym(phi: DiagonalForm, k: int, cap: int | None = None) -> DiagonalForm:
    """Symmetric power by listing every degree-k monomial in the diagonal entries."""
    if k < 0:
        raise ValueError("negative power")
    if k == 0:
        return UNIT
    _check_cap(binomial(phi.dim + k - 1, k) if phi.dim else 0, cap)
    atoms, masks = _encode(phi)
    if len(atoms) > kernels.MAX_BITS:
        raise EnumerationTooLarge("too many atoms for the enumeration kernel")
    return _decode(atoms, kernels.count_multiset_xors(masks, k, len(atoms)))
