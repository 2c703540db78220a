from pathlib import Path

import pytest

from homomonoid.corpus import random_complete_presentations
from homomonoid.presentation import homogeneous, parse_presentation

FIXTURES = Path(__file__).parent / "fixtures"

# homogeneous presentations whose completion terminates
CORPUS_FILES = [
    "nil_xy", "free1", "free2", "commutative", "weighted", "monogenic_plus_finite",
    "finite", "powers_then_y", "commutative_nil", "squares",
]
RANDOM_SEED = 2024


def load(name):
    return parse_presentation((FIXTURES / f"{name}.pres").read_text())


def weighted(name):
    return homogeneous(load(name))


def corpus():
    """(label, weighted presentation) pairs: fixture files plus three seeded random ones."""
    items = [(name, weighted(name)) for name in CORPUS_FILES]
    for i, p in enumerate(random_complete_presentations(RANDOM_SEED, 3)):
        items.append((f"random{i}", homogeneous(p)))
    return items


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# acceptance criteria outcomes, filled by tests/test_acceptance.py
CRITERIA: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        title, ok, detail = CRITERIA[number]
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
