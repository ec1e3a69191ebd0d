import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from varbounds.quantum import pauli  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def paulis():
    return pauli("sigma_x"), pauli("sigma_y"), pauli("sigma_z")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
