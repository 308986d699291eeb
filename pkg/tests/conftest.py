import itertools

import hypothesis.strategies as st
import pytest

from qfpowers.forms import DiagonalForm
from qfpowers.squareclass import SquareClass

ATOM_NAMES = ("-1", "a", "b", "c")
ALL_CLASSES = [
    SquareClass.of(combo)
    for r in range(len(ATOM_NAMES) + 1)
    for combo in itertools.combinations(ATOM_NAMES, r)
]

classes = st.sampled_from(ALL_CLASSES)


@st.composite
def forms(draw, max_classes=5, max_mult=6):
    chosen = draw(st.lists(classes, min_size=0, max_size=max_classes, unique=True))
    return DiagonalForm({c: draw(st.integers(1, max_mult)) for c in chosen})


@pytest.fixture
def cls():
    return SquareClass.of


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
