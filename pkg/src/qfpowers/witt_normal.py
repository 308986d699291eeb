"""Canonical normal form and isometry test in the generic field models.

GENERIC: distinct atoms are independent and -1 is not a square, so the only
relation is ``<c, -c> = H``.  MINUS_ONE_SQUARE: -1 is a square, classes drop
the -1 atom and ``<c, c> = H``.  In both models the residue multiset plus the
hyperbolic count is a complete invariant.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .forms import DiagonalForm, hyperbolic, perp
from .squareclass import FieldMode, SquareClass, canonicalize, class_negate

__all__ = ["NormalForm", "normalize", "isometric", "hyp_fill", "render", "HypFillError"]


class HypFillError(ValueError):
    pass


@dataclass(frozen=True)
class NormalForm:
    residue: DiagonalForm
    hyp: int
    dim: int
    mode: FieldMode

    def __post_init__(self):
        if self.residue.dim + 2 * self.hyp != self.dim:
            raise ValueError("dim != residue dim + 2 * hyp")

    def __str__(self) -> str:
        parts = [] if self.residue.is_zero else [str(self.residue)]
        if self.hyp:
            parts.append("H" if self.hyp == 1 else f"{self.hyp} x H")
        return " + ".join(parts) if parts else "0form"

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "dim": str(self.dim),
            "hyp": str(self.hyp),
            "residue": self.residue.to_json()["entries"],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "NormalForm":
        residue = DiagonalForm.from_json({"entries": data["residue"]})
        return cls(residue, int(data["hyp"]), int(data["dim"]), FieldMode.parse(data["mode"]))


def normalize(phi: DiagonalForm, mode: FieldMode = FieldMode.GENERIC) -> NormalForm:
    residue: dict[SquareClass, int] = {}
    hyp = 0
    if mode is FieldMode.GENERIC:
        for cls, mult in phi.items():
            if cls.has_minus_one:
                continue  # handled from the positive side or as a lone class below
            opp = class_negate(cls)
            pairs = min(mult, phi.get(opp, 0))
            hyp += pairs
            if mult > pairs:
                residue[cls] = mult - pairs
            if phi.get(opp, 0) > pairs:
                residue[opp] = phi[opp] - pairs
        for cls, mult in phi.items():
            if cls.has_minus_one and class_negate(cls) not in phi:
                residue[cls] = mult
    else:
        merged: dict[SquareClass, int] = {}
        for cls, mult in phi.items():
            key = canonicalize(cls, mode)
            merged[key] = merged.get(key, 0) + mult
        for cls, mult in merged.items():
            hyp += mult // 2
            if mult % 2:
                residue[cls] = 1
    return NormalForm(DiagonalForm(residue), hyp, phi.dim, mode)


def render(nf: NormalForm) -> DiagonalForm:
    """Rebuild a diagonal representative of a normal form."""
    return perp(nf.residue, hyperbolic(nf.hyp))


def isometric(phi: DiagonalForm, psi: DiagonalForm, mode: FieldMode = FieldMode.GENERIC) -> bool:
    return normalize(phi, mode) == normalize(psi, mode)


def hyp_fill(residue: DiagonalForm, total_dim: int) -> DiagonalForm:
    """``residue + Hyp``: pad with hyperbolic planes up to ``total_dim``."""
    deficit = total_dim - residue.dim
    if deficit < 0 or deficit % 2:
        raise HypFillError(
            f"Hyp fill impossible: residue dim {residue.dim}, target dim {total_dim}"
        )
    return perp(residue, hyperbolic(deficit // 2))
