import json
from pathlib import Path

import pytest

from viransatz.ansatz import build
from viransatz.potential import make_quartic

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def baseline():
    return json.loads((DATA / "table_baseline.json").read_text())


@pytest.fixture(scope="session")
def ho():
    return build(make_quartic(1.0, 0.0))


@pytest.fixture(scope="session")
def quartic1():
    return build(make_quartic(1.0, 1.0))


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def record():
    """Collect one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def _record(criterion: str, passed: bool, detail: str) -> None:
        line = f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
