import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from paperrank.citegraph import build_graph  # noqa: E402

CHAIN_EDGES = [(1, 0), (2, 0), (2, 1)]


@pytest.fixture
def chain():
    return build_graph(3, CHAIN_EDGES)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
