"""Square classes of a generic field model.

A square class is a finite set of atoms multiplied by symmetric difference,
so every class has order at most two.  ``MINUS_ONE`` is a distinguished atom
that no user identifier can produce.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Iterable

__all__ = [
    "Atom",
    "MINUS_ONE",
    "SquareClass",
    "ONE",
    "NEG_ONE",
    "FieldMode",
    "class_mul",
    "class_negate",
    "canonicalize",
    "atom",
    "sq",
    "rational_class",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_PRIME = re.compile(r"[1-9][0-9]*\Z")


class FieldMode(enum.Enum):
    GENERIC = "r"
    MINUS_ONE_SQUARE = "c"

    @classmethod
    def parse(cls, text: str | "FieldMode") -> "FieldMode":
        if isinstance(text, FieldMode):
            return text
        key = text.strip()
        for mode in cls:
            if key in (mode.value, mode.name, mode.name.lower()):
                return mode
        raise ValueError(f"unknown field mode {text!r} (expected 'r' or 'c')")


@total_ordering
@dataclass(frozen=True)
class Atom:
    name: str
    _minus_one: bool = False

    def __post_init__(self):
        if self._minus_one:
            return
        if not (_IDENT.match(self.name) or _is_prime_name(self.name)):
            raise ValueError(f"invalid atom name {self.name!r}")

    @property
    def is_minus_one(self) -> bool:
        return self._minus_one

    def _key(self):
        return (not self._minus_one, self.name)

    def __lt__(self, other: "Atom") -> bool:
        return self._key() < other._key()

    def __str__(self) -> str:
        return "-1" if self._minus_one else self.name

    def __repr__(self) -> str:
        return "MINUS_ONE" if self._minus_one else f"Atom({self.name!r})"


def _is_prime_name(name: str) -> bool:
    if not _PRIME.match(name):
        return False
    p = int(name)
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p**0.5) + 1))


MINUS_ONE = Atom("-1", _minus_one=True)


def atom(name: str) -> Atom:
    return Atom(name)


@total_ordering
@dataclass(frozen=True)
class SquareClass:
    """An element of the square-class group, stored as a sorted atom tuple."""

    atoms: tuple[Atom, ...] = ()

    @classmethod
    def of(cls, atoms: Iterable[Atom | str]) -> "SquareClass":
        parity: set[Atom] = set()
        for a in atoms:
            if isinstance(a, str):
                a = MINUS_ONE if a == "-1" else Atom(a)
            parity ^= {a}
        return cls(tuple(sorted(parity)))

    @property
    def is_identity(self) -> bool:
        return not self.atoms

    @property
    def has_minus_one(self) -> bool:
        return bool(self.atoms) and self.atoms[0].is_minus_one

    def __mul__(self, other: "SquareClass") -> "SquareClass":
        return class_mul(self, other)

    def __neg__(self) -> "SquareClass":
        return class_negate(self)

    def __pow__(self, k: int) -> "SquareClass":
        return self if k % 2 else ONE

    def __lt__(self, other: "SquareClass") -> bool:
        return (len(self.atoms), self.atoms) < (len(other.atoms), other.atoms)

    def names(self) -> list[str]:
        return [str(a) for a in self.atoms]

    def __str__(self) -> str:
        if not self.atoms:
            return "1"
        names = [a.name for a in self.atoms if not a.is_minus_one]
        body = "*".join(names) if names else "1"
        return "-" + body if self.has_minus_one else body

    def __repr__(self) -> str:
        return f"<{self}>"


ONE = SquareClass()
NEG_ONE = SquareClass((MINUS_ONE,))


def sq(*names: str) -> SquareClass:
    """Shorthand: ``sq("-1", "a")`` is the class of -a."""
    return SquareClass.of(names)


def class_mul(c1: SquareClass, c2: SquareClass) -> SquareClass:
    return SquareClass(tuple(sorted(set(c1.atoms) ^ set(c2.atoms))))


def class_negate(c: SquareClass) -> SquareClass:
    return class_mul(c, NEG_ONE)


def canonicalize(c: SquareClass, mode: FieldMode) -> SquareClass:
    if mode is FieldMode.MINUS_ONE_SQUARE and c.has_minus_one:
        return SquareClass(c.atoms[1:])
    return c


def rational_class(value: int) -> SquareClass:
    """Square class of a nonzero integer over the rationals.

    Odd prime powers survive as prime atoms, the sign as ``MINUS_ONE``:
    4 -> <1>, 2 -> <2>, -8 -> <-2>.
    """
    if value == 0:
        raise ValueError("zero has no square class")
    atoms: list[Atom] = [MINUS_ONE] if value < 0 else []
    rest = abs(value)
    p = 2
    while p * p <= rest:
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e % 2:
            atoms.append(Atom(str(p)))
        p += 1
    if rest > 1:
        atoms.append(Atom(str(rest)))
    return SquareClass.of(atoms)
