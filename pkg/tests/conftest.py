import pytest

from bassline import fixtures
from bassline.depth import INF


@pytest.fixture
def C3():
    return fixtures.chain(3)


@pytest.fixture
def V():
    return fixtures.v_poset()


@pytest.fixture
def D():
    return fixtures.diamond()


@pytest.fixture
def inf():
    return INF


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS, key=lambda k: int(k[2:])):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"{key:<5} {'PASS' if ok else 'FAIL'}  {detail}")
