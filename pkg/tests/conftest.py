import numpy as np
import pytest

from sphereapprox.coxeter import CoxeterSymbol, generate_group
from sphereapprox.domain import fundamental_triangle

POLYHEDRAL = [CoxeterSymbol(3, 3), CoxeterSymbol(3, 4), CoxeterSymbol(3, 5)]


@pytest.fixture(scope="session")
def groups():
    return {s: generate_group(s) for s in POLYHEDRAL}


@pytest.fixture(scope="session")
def triangles():
    return {s: fundamental_triangle(s) for s in POLYHEDRAL}


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
