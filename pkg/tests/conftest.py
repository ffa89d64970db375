import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gyrokit import construct, double  # noqa: E402
from gyrokit.catalog import K1_TABLE, fixture  # noqa: E402


@pytest.fixture(scope="session")
def K1():
    return fixture("K1").gyrogroup


@pytest.fixture(scope="session")
def K2():
    return fixture("K2").gyrogroup


@pytest.fixture(scope="session")
def D1(K1):
    return double(K1)


@pytest.fixture(scope="session")
def trivial():
    return construct([[0]])


@pytest.fixture(scope="session")
def Z2():
    return construct([[0, 1], [1, 0]])


@pytest.fixture
def k1_rows():
    return [list(r) for r in K1_TABLE]


@pytest.fixture
def corrupted_k1_rows(k1_rows):
    assert k1_rows[6][5] == 2
    k1_rows[6][5] = 3
    return k1_rows


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in range(1, 11):
        # a criterion that raised before recording counts as failed
        terminalreporter.write_line(mod.RESULTS.get(number, f"criterion {number}: FAIL  (error, see above)"))
