from importlib import resources

import pytest

from tckit.corpus import parse_corpus
from tckit.curve import invariants

CURVE_37A = (0, 0, 1, -1, 0)
CURVE_11A1 = (0, -1, 1, -10, -20)

# curves with additive reduction somewhere, for non-semi-stable paths
NON_SEMISTABLE = {
    "24a1": (0, -1, 0, -4, 4),
    "20a1": (0, 1, 0, 4, 4),
    "44a1": (0, 1, 0, 3, -1),
    "y2=x3+1": (0, 0, 0, 0, 1),
    "y2=x3-x": (0, 0, 0, -1, 0),
}


def load_semistable():
    text = resources.files("tckit.data").joinpath("semistable.txt").read_text("ascii")
    return parse_corpus(text)


@pytest.fixture(scope="session")
def semistable_corpus():
    return load_semistable()


@pytest.fixture(scope="session")
def e37a():
    return invariants(*CURVE_37A)


@pytest.fixture(scope="session")
def e11a1():
    return invariants(*CURVE_11A1)


def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
