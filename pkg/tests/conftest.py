import sys
from pathlib import Path

import pytest

from bndecomp import parse_graph, parse_network, moral_graph

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
sys.path.insert(0, str(Path(__file__).resolve().parent))


def load_ug(name):
    return parse_graph((FIXTURES / f"{name}.ug").read_text())


def load_bn(name):
    return parse_network((FIXTURES / f"{name}.bn").read_text())


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def K3():
    return load_ug("K3")


@pytest.fixture(scope="session")
def PATH3():
    return load_ug("PATH3")


@pytest.fixture(scope="session")
def C4():
    return load_ug("C4")


@pytest.fixture(scope="session")
def DIAMOND():
    return load_ug("DIAMOND")


@pytest.fixture(scope="session")
def PAW():
    return load_ug("PAW")


@pytest.fixture(scope="session")
def LADDER12():
    return load_ug("LADDER12")


@pytest.fixture(scope="session")
def LADDER12_moral():
    return moral_graph(load_bn("LADDER12"))


# -- acceptance summary ---------------------------------------------------------

_acceptance: list[tuple[str, str]] = []
_notes: dict[str, list[str]] = {}


def note(criterion: str, text: str) -> None:
    """Attach a line to a criterion's entry in the acceptance summary."""
    _notes.setdefault(criterion, []).append(text)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))
    elif report.when == "setup" and report.failed and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], "error"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
        for text in _notes.get(name, []):
            terminalreporter.write_line(f"      {text}")
