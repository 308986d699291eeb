"""Counted diagonal quadratic forms.

A form is a multiset of square classes: ``{class: multiplicity}`` with
multiplicities as Python ints, so counts never overflow.
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, Mapping

from .squareclass import NEG_ONE, ONE, SquareClass, class_mul

__all__ = [
    "DiagonalForm",
    "perp",
    "tensor",
    "scale",
    "hyperbolic",
    "diag",
    "ZERO",
    "UNIT",
]


class DiagonalForm(Mapping[SquareClass, int]):
    """Immutable ``SquareClass -> multiplicity`` map; the empty map is the zero form."""

    __slots__ = ("_entries", "_hash")

    def __init__(self, entries: Mapping[SquareClass, int] | Iterable[tuple[SquareClass, int]] = ()):
        items = entries.items() if isinstance(entries, Mapping) else entries
        acc: dict[SquareClass, int] = {}
        for cls, mult in items:
            if mult < 0:
                raise ValueError("negative count")
            if mult:
                acc[cls] = acc.get(cls, 0) + int(mult)
        self._entries = dict(sorted(acc.items()))
        self._hash = None

    @classmethod
    def from_classes(cls, classes: Iterable[SquareClass]) -> "DiagonalForm":
        return cls(Counter(classes))

    def __getitem__(self, key: SquareClass) -> int:
        return self._entries[key]

    def get(self, key, default=0):
        return self._entries.get(key, default)

    def __iter__(self) -> Iterator[SquareClass]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, DiagonalForm):
            return self._entries == other._entries
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._entries.items()))
        return self._hash

    @property
    def dim(self) -> int:
        return sum(self._entries.values())

    @property
    def is_zero(self) -> bool:
        return not self._entries

    def classes(self) -> Iterator[SquareClass]:
        """Expand into the full entry list (use only for small forms)."""
        for cls, mult in self._entries.items():
            for _ in range(mult):
                yield cls

    def __add__(self, other: "DiagonalForm") -> "DiagonalForm":
        return perp(self, other)

    def __mul__(self, other: "DiagonalForm") -> "DiagonalForm":
        return tensor(self, other)

    def __rmul__(self, count: int) -> "DiagonalForm":
        if not isinstance(count, int):
            return NotImplemented
        return self.times(count)

    def times(self, count: int) -> "DiagonalForm":
        """``count x self``."""
        if count < 0:
            raise ValueError("negative count")
        return DiagonalForm({c: m * count for c, m in self._entries.items()})

    def __str__(self) -> str:
        if not self._entries:
            return "0form"
        parts = []
        for cls, mult in self._entries.items():
            parts.append(f"<{cls}>" if mult == 1 else f"{mult} x <{cls}>")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiagonalForm({self})"

    def to_json(self) -> dict:
        return {
            "dim": str(self.dim),
            "entries": [
                {"class": cls.names(), "mult": str(mult)}
                for cls, mult in self._entries.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DiagonalForm":
        form = cls((SquareClass.of(e["class"]), int(e["mult"])) for e in data["entries"])
        if "dim" in data and int(data["dim"]) != form.dim:
            raise ValueError("dim field does not match entries")
        return form


ZERO = DiagonalForm()
UNIT = DiagonalForm({ONE: 1})


def diag(*entries: SquareClass) -> DiagonalForm:
    return DiagonalForm.from_classes(entries)


def perp(phi: DiagonalForm, psi: DiagonalForm) -> DiagonalForm:
    acc = Counter(dict(phi))
    acc.update(dict(psi))
    return DiagonalForm(acc)


def tensor(phi: DiagonalForm, psi: DiagonalForm) -> DiagonalForm:
    acc: dict[SquareClass, int] = {}
    for c1, m1 in phi.items():
        for c2, m2 in psi.items():
            c = class_mul(c1, c2)
            acc[c] = acc.get(c, 0) + m1 * m2
    return DiagonalForm(acc)


def scale(c: SquareClass, phi: DiagonalForm) -> DiagonalForm:
    return DiagonalForm({class_mul(c, cls): m for cls, m in phi.items()})


def hyperbolic(h: int) -> DiagonalForm:
    if h < 0:
        raise ValueError("negative count")
    return DiagonalForm({ONE: h, NEG_ONE: h})
