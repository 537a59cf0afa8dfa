from pathlib import Path

import pytest

from controlgraph import quito_spec, two_qubit_spec

ROOT = Path(__file__).resolve().parents[1]
CONFIGS = ROOT / "configs"


@pytest.fixture(scope="session")
def configs_dir() -> Path:
    return CONFIGS


@pytest.fixture
def xx_pair():
    return two_qubit_spec("XX")


@pytest.fixture
def xxzz_pair():
    return two_qubit_spec("XX+ZZ", controls=(1,))


@pytest.fixture(scope="session")
def quito_a():
    return quito_spec("XX+YY")

ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
