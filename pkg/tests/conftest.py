import pytest

from kleinfour import fq, standard_extension
from kleinfour.algebra import AlgebraSpec, Triple


@pytest.fixture(scope="session")
def F7():
    return fq(7)


@pytest.fixture(scope="session")
def l7(F7):
    return standard_extension(F7)


@pytest.fixture(scope="session")
def A514(l7, F7):
    return AlgebraSpec(l7, Triple.of(F7, 5, 1, 4))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
